#pragma once

// Flat one-holed torus and its cut system.
//
// The surface is R^2 / Z^2 minus an open axis-aligned square hole of
// half-width `hole_halfwidth` centred at the lattice points. The circles
// {x = 0} and {y = 0} both run through the hole, so cutting along them leaves
// a disk. Reading the signed crossings of a path with the integer grid lines
// (a^{+-1} for x in Z, b^{+-1} for y in Z) therefore gives the exact class of
// a loop in pi_1 = F(a, b).

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "qmflow/word.hpp"

namespace qmflow {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point operator+(Point p, Point q) { return {p.x + q.x, p.y + q.y}; }
  friend constexpr Point operator-(Point p, Point q) { return {p.x - q.x, p.y - q.y}; }
  friend constexpr Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
  friend constexpr bool operator==(Point, Point) = default;
};

/// A straight segment in the plane cover (lifted coordinates).
struct Segment {
  Point from;
  Point to;
};

/// Points closer than this to a cut line count as lying on it.
inline constexpr double kCutTolerance = 1e-12;

/// Representative in [0, 1).
inline double wrap_unit(double v) {
  double r = v - std::floor(v);
  return r >= 1.0 ? 0.0 : r;
}
inline Point wrap(Point p) { return {wrap_unit(p.x), wrap_unit(p.y)}; }

/// Distance on R/Z between two coordinates.
inline double circle_distance(double u, double v) {
  const double d = wrap_unit(u - v);
  return std::min(d, 1.0 - d);
}
inline double torus_distance(Point p, Point q) {
  return std::hypot(circle_distance(p.x, q.x), circle_distance(p.y, q.y));
}

class HoledTorus {
 public:
  /// Throws std::invalid_argument unless 0 < hole_halfwidth < 0.1.
  explicit HoledTorus(double hole_halfwidth);

  double hole_halfwidth() const { return hole_halfwidth_; }

  /// True when `p` (any lift) lies in the open hole.
  bool in_hole(Point p) const;

  /// True when the lifted segment meets a lattice translate of the hole.
  bool segment_meets_hole(const Segment& s) const;

 private:
  double hole_halfwidth_;
};

/// Signed crossing word of a lifted segment. Throws DegenerateCrossing when an
/// endpoint lies on a cut line, the segment runs along one, or it passes
/// through a lattice point.
Word crossing_word(const Segment& s);

/// Appends the crossing letters of `s` to `out` (same rules as crossing_word).
void append_crossings(const Segment& s, WordBuilder& out);

/// Crossing word of a polygonal chain.
Word crossing_word(std::span<const Segment> chain);

struct ClosingPath {
  Word word;
  std::vector<Segment> chain;
};

/// Hole-avoiding path of at most two segments from `end` back to `start`
/// inside the fundamental square [0,1)^2 (both points are wrapped first): the
/// direct segment, or a detour through the centre when it clips the hole.
ClosingPath closing_word(const HoledTorus& surface, Point end, Point start);

}  // namespace qmflow
