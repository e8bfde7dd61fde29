#pragma once

#include <string>

#include "streetgen/geom/types.hpp"

namespace streetgen::net {

enum class Importance { Major, Medium, Residential };
enum class Direction { Direct, Reverse, Both };

const char* to_string(Importance v);
const char* to_string(Direction v);
Importance importance_from_string(const std::string& s);
Direction direction_from_string(const std::string& s);

// Attributed centerline of a street; half_width is the distance from the
// axis to the roadway edge.
struct RoadAxis {
  std::string id;
  geom::Polyline geometry;
  double half_width = 3.5;
  Importance importance = Importance::Residential;
  double avg_speed = 30.0;  // km/h
  int lane_count = 2;
  Direction direction = Direction::Both;
  std::string name;

  // Empty string when valid, otherwise the violated constraint.
  std::string violation(double min_length) const;
};

}  // namespace streetgen::net
