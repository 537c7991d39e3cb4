#include "qmflow/surface.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qmflow/errors.hpp"

namespace qmflow {

HoledTorus::HoledTorus(double hole_halfwidth) : hole_halfwidth_(hole_halfwidth) {
  if (!(hole_halfwidth > 0.0 && hole_halfwidth < 0.1)) {
    throw std::invalid_argument("hole_halfwidth must lie in (0, 0.1), got " +
                                std::to_string(hole_halfwidth));
  }
}

bool HoledTorus::in_hole(Point p) const {
  const double dx = std::abs(p.x - std::round(p.x));
  const double dy = std::abs(p.y - std::round(p.y));
  return dx < hole_halfwidth_ && dy < hole_halfwidth_;
}

namespace {

// Open square of half-width h around `centre` met by the closed segment.
bool segment_meets_square(const Segment& s, Point centre, double h) {
  double lo = 0.0;
  double hi = 1.0;
  auto slab = [&](double c0, double d, double c) {
    if (d == 0.0) {
      if (std::abs(c0 - c) >= h) hi = -1.0;
      return;
    }
    double a = (c - h - c0) / d;
    double b = (c + h - c0) / d;
    if (a > b) std::swap(a, b);
    lo = std::max(lo, a);
    hi = std::min(hi, b);
  };
  slab(s.from.x, s.to.x - s.from.x, centre.x);
  slab(s.from.y, s.to.y - s.from.y, centre.y);
  return lo < hi;
}

}  // namespace

bool HoledTorus::segment_meets_hole(const Segment& s) const {
  const double h = hole_halfwidth_;
  const long i0 = static_cast<long>(std::floor(std::min(s.from.x, s.to.x) - h));
  const long i1 = static_cast<long>(std::ceil(std::max(s.from.x, s.to.x) + h));
  const long j0 = static_cast<long>(std::floor(std::min(s.from.y, s.to.y) - h));
  const long j1 = static_cast<long>(std::ceil(std::max(s.from.y, s.to.y) + h));
  for (long i = i0; i <= i1; ++i) {
    for (long j = j0; j <= j1; ++j) {
      if (segment_meets_square(s, {static_cast<double>(i), static_cast<double>(j)}, h)) {
        return true;
      }
    }
  }
  return false;
}

namespace {

struct Crossing {
  double t;
  Letter letter;
};

bool near_integer(double v) { return std::abs(v - std::round(v)) <= kCutTolerance; }

// Crossings of {coordinate = n} for integers n strictly between c0 and c1.
template <typename Sink>
void axis_crossings(double c0, double c1, Letter positive, Sink&& sink) {
  const double d = c1 - c0;
  if (d == 0.0) {
    if (near_integer(c0)) throw DegenerateCrossing("segment runs along a cut line");
    return;
  }
  if (near_integer(c0) || near_integer(c1)) {
    throw DegenerateCrossing("segment endpoint lies on a cut line");
  }
  const Letter l = d > 0 ? positive : positive.inverse();
  if (d > 0) {
    for (double n = std::floor(c0) + 1.0; n < c1; n += 1.0) sink(Crossing{(n - c0) / d, l});
  } else {
    for (double n = std::ceil(c0) - 1.0; n > c1; n -= 1.0) sink(Crossing{(n - c0) / d, l});
  }
}

}  // namespace

void append_crossings(const Segment& s, WordBuilder& out) {
  if (s.from == s.to) return;
  const double len = std::hypot(s.to.x - s.from.x, s.to.y - s.from.y);

  std::array<Crossing, 8> small;
  std::vector<Crossing> large;
  std::size_t count = 0;
  auto sink = [&](Crossing c) {
    if (count < small.size()) {
      small[count] = c;
    } else {
      if (large.empty()) large.assign(small.begin(), small.end());
      large.push_back(c);
    }
    ++count;
  };
  axis_crossings(s.from.x, s.to.x, Letter::a(), sink);
  axis_crossings(s.from.y, s.to.y, Letter::b(), sink);

  std::span<Crossing> events = count <= small.size()
                                   ? std::span<Crossing>(small.data(), count)
                                   : std::span<Crossing>(large);
  std::sort(events.begin(), events.end(),
            [](const Crossing& p, const Crossing& q) { return p.t < q.t; });
  for (std::size_t i = 0; i + 1 < events.size(); ++i) {
    if ((events[i + 1].t - events[i].t) * len <= kCutTolerance) {
      throw DegenerateCrossing("segment passes through a lattice point");
    }
  }
  for (const Crossing& c : events) out.push(c.letter);
}

Word crossing_word(const Segment& s) {
  WordBuilder builder;
  append_crossings(s, builder);
  return std::move(builder).build();
}

Word crossing_word(std::span<const Segment> chain) {
  WordBuilder builder;
  for (const Segment& s : chain) append_crossings(s, builder);
  return std::move(builder).build();
}

ClosingPath closing_word(const HoledTorus& surface, Point end, Point start) {
  const Point from = wrap(end);
  const Point to = wrap(start);
  ClosingPath path;
  if (from == to) return path;

  const Segment direct{from, to};
  if (!surface.segment_meets_hole(direct)) {
    path.chain.push_back(direct);
  } else {
    // The unit square minus the four corner pieces of the hole is star-shaped
    // about its centre: on the way to (1/2, 1/2) each coordinate moves
    // monotonically, so one that starts outside a corner piece stays outside.
    const Point waypoint{0.5, 0.5};
    path.chain.push_back({from, waypoint});
    path.chain.push_back({waypoint, to});
  }
  path.word = crossing_word(path.chain);
  return path;
}

}  // namespace qmflow
