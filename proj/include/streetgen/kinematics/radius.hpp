#pragma once

#include "streetgen/geom/types.hpp"
#include "streetgen/network/road_axis.hpp"

namespace streetgen::kin {

enum class RadiusSource { Guess, Setra, ClampedMin, ClampedMaxFeasible };

struct RadiusEstimate {
  double radius = 0;
  RadiusSource source = RadiusSource::Guess;
};

struct RadiusSettings {
  double major = 7.6;
  double medium = 4.9;
  double residential = 3.0;
  double min_radius = 0.15;  // Paris lane separator stone
  double max_radius = 30.0;
};

// Turning radius from road importance alone.
RadiusEstimate guess_radius(net::Importance importance, const RadiusSettings& s = {});

// SETRA rule of thumb linking average vehicle speed (km/h) and full roadway
// width (m) to a comfortable turning radius; only defined below the
// singularity at speed = 10*width + 65.
RadiusEstimate setra_radius(double speed_kmh, double width_m, const RadiusSettings& s = {});

// Shrinks the radius until the corner solution fits inside both axis extents
// (bisection, 0.01 m resolution). Falls back to the minimum radius when even
// that does not fit.
RadiusEstimate clamp_radius_to_network(RadiusEstimate estimate,
                                       const geom::Polyline& a1_from_jc, double w1,
                                       const geom::Polyline& a2_from_jc, double w2,
                                       const geom::Vec2& jc, const RadiusSettings& s = {});

}  // namespace streetgen::kin
