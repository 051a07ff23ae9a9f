// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COVGAME_GEOMETRY_H_
#define COVGAME_GEOMETRY_H_

#include <cmath>
#include <numbers>

namespace covgame {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline double Distance(Point2 a, Point2 b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// Absolute difference of two angles, reduced into [0, pi].
inline double AngularDistance(double a, double b) {
  return std::fabs(std::remainder(a - b, 2.0 * std::numbers::pi));
}

}  // namespace covgame

#endif  // COVGAME_GEOMETRY_H_
