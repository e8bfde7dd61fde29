#include "streetgen/kinematics/radius.hpp"

#include <algorithm>
#include <cmath>

#include "streetgen/errors.hpp"
#include "streetgen/junction/solver.hpp"

namespace streetgen::kin {

RadiusEstimate guess_radius(net::Importance importance, const RadiusSettings& s) {
  double r = s.residential;
  switch (importance) {
    case net::Importance::Major:
      r = s.major;
      break;
    case net::Importance::Medium:
      r = s.medium;
      break;
    case net::Importance::Residential:
      r = s.residential;
      break;
  }
  return {std::max(r, s.min_radius), RadiusSource::Guess};
}

RadiusEstimate setra_radius(double speed_kmh, double width_m, const RadiusSettings& s) {
  if (!(speed_kmh > 0) || !(width_m > 0))
    throw Error(ErrorCode::InvalidParameter, "speed and width must be positive");
  const double denom = 10.0 * width_m + 65.0 - speed_kmh;
  if (std::abs(denom) < 1e-9)
    throw Error(ErrorCode::SingularSpeed, "speed at the singular point 10*width + 65");
  if (denom < 0)
    throw Error(ErrorCode::SingularSpeed, "speed beyond the validity bound 10*width + 65");
  double r = 18.6 * std::sqrt(speed_kmh / denom);
  RadiusSource source = RadiusSource::Setra;
  if (r < s.min_radius) {
    r = s.min_radius;
    source = RadiusSource::ClampedMin;
  }
  r = std::min(r, s.max_radius);
  return {r, source};
}

namespace {

bool fits_network(double r, const geom::Polyline& a1, double w1, const geom::Polyline& a2,
                  double w2, const geom::Vec2& jc) {
  const auto sol = junc::corner_center(a1, w1, a2, w2, r, jc);
  if (sol.status != junc::CornerStatus::Ok) return false;
  const double margin = 1e-9;
  return geom::locate_along(a1, sol.center) <= a1.length() - margin &&
         geom::locate_along(a2, sol.center) <= a2.length() - margin;
}

}  // namespace

RadiusEstimate clamp_radius_to_network(RadiusEstimate estimate, const geom::Polyline& a1,
                                       double w1, const geom::Polyline& a2, double w2,
                                       const geom::Vec2& jc, const RadiusSettings& s) {
  if (!(estimate.radius > 0))
    throw Error(ErrorCode::InvalidParameter, "radius must be positive");
  if (fits_network(estimate.radius, a1, w1, a2, w2, jc)) return estimate;
  if (!fits_network(s.min_radius, a1, w1, a2, w2, jc))
    return {s.min_radius, RadiusSource::ClampedMin};
  double lo = s.min_radius, hi = estimate.radius;
  while (hi - lo > 0.01) {
    const double mid = (lo + hi) / 2;
    (fits_network(mid, a1, w1, a2, w2, jc) ? lo : hi) = mid;
  }
  return {lo, RadiusSource::ClampedMaxFeasible};
}

}  // namespace streetgen::kin
