#pragma once

// Strip shear flows and their composition.
//
// The time-t map of a strip translates each point along the strip direction
// by sigma * t * c'(h), where c is the piecewise-linear profile across the
// band. With X = (dH/dy, -dH/dx) the strip Hamiltonians lifted to the plane are
//
//   H:  sigma * S(y - o)     V: -sigma * S(x - o)     D: -sigma * S(x - y - o)
//
// with the staircase S(s) = floor(s) + c(frac(s)). Each one jumps by +-1 per
// period; for a zero-flux scenario the jumps cancel and the composition
// generator descends to the torus.

#include <vector>

#include "qmflow/scenario.hpp"
#include "qmflow/surface.hpp"

namespace qmflow {

struct Profile {
  double width = 0.0;
  double smoothing = 0.0;

  double ramp() const { return width - 2.0 * smoothing; }
};

inline Profile profile_of(const StripSpec& s) { return {s.width, s.smoothing}; }

/// c'(h): 1 / (width - 2 smoothing) on the open ramp, 0 elsewhere.
inline double profile_velocity(const Profile& pr, double h) {
  return h > pr.smoothing && h < pr.width - pr.smoothing ? 1.0 / pr.ramp() : 0.0;
}

/// c(h), clamped to [0, 1].
double profile_value(const Profile& pr, double h);

/// Lifted staircase S(s) = floor(s) + c(frac(s)).
double staircase(const Profile& pr, double s);

/// Strip Hamiltonian evaluated at a lifted point.
double strip_hamiltonian(const StripSpec& s, Point p);

struct StripMove {
  Point to;
  Segment segment;  // zero length when the point is not moved
};

/// Time-t map of one strip on a lifted point (t may be negative).
StripMove apply_strip(const StripSpec& strip, const Profile& pr, double t, Point p);
inline StripMove apply_strip(const StripSpec& strip, double t, Point p) {
  return apply_strip(strip, profile_of(strip), t, p);
}

/// Displacement of the strip map at p for time t, {0, 0} outside the ramp.
inline Point strip_displacement(const StripSpec& strip, double t, Point p) {
  const double v = strip.orientation * t * profile_velocity(profile_of(strip), strip.chart_h(p));
  return v * strip.loop_vector();
}

/// Applies the strips in reverse list order (the last listed acts first) to a
/// lifted point. `visit(strip_index, from, to)` is called for every strip that
/// displaces the point. Returns the lifted image.
template <class Visit>
Point apply_composed_visit(const Scenario& sc, double t, Point p, Visit&& visit) {
  const auto& strips = sc.strips();
  if (!sc.same_direction_disjoint()) {
    for (int i = static_cast<int>(strips.size()) - 1; i >= 0; --i) {
      const Point d = strip_displacement(strips[i], t, p);
      if (d.x != 0.0 || d.y != 0.0) {
        const Point q = p + d;
        visit(i, p, q);
        p = q;
      }
    }
    return p;
  }
  // At most one strip per direction contains a point, and moving along a
  // strip keeps its transverse coordinate, so only the containing strip with
  // the largest index below the last applied one can act next.
  int bound = static_cast<int>(strips.size());
  for (;;) {
    int next = -1;
    for (Direction d : {Direction::H, Direction::V, Direction::D}) {
      const int i = sc.strip_containing(d, p);
      if (i >= 0 && i < bound && i > next) next = i;
    }
    if (next < 0) return p;
    const Point d = strip_displacement(strips[next], t, p);
    if (d.x != 0.0 || d.y != 0.0) {
      const Point q = p + d;
      visit(next, p, q);
      p = q;
    }
    bound = next;
  }
}

struct ComposedMove {
  Point to;
  std::vector<Segment> path;
};

/// One step of the composed map on a lifted point, with the lifted path.
ComposedMove apply_composed(const Scenario& sc, double t, Point p);

/// Inverse of apply_composed: strips in list order with negated time.
Point apply_composed_inverse(const Scenario& sc, double t, Point p);

/// Composition generator G(t, p), normalized to 0 on the hole.
double generator_value(const Scenario& sc, double t, Point p);

/// Throws ValidityWindowExceeded unless every strip drifts less than the
/// minimal spacing between overlap regions during time tau.
void check_validity_window(const Scenario& sc, double tau);

/// Maximal oscillation of the potential of a single copy (sum of |sigma|).
double copy_oscillation_bound(const Scenario& sc);

struct HoferBound {
  double numeric = 0.0;   // Riemann sum of the sampled oscillation of G
  double analytic = 0.0;  // 2 K tau
  double K = 0.0;
};

/// Evaluation points used for oscillation and quadrature: a midpoint grid of
/// space_samples^2 points plus probes at the centres of strips and overlaps.
std::vector<Point> oscillation_probes(const Scenario& sc, int space_samples);

HoferBound hofer_upper_bound(const Scenario& sc, double tau, int time_samples, int space_samples);

/// Integral of G over [0, tau] x torus by product midpoint quadrature.
double calabi(const Scenario& sc, double tau, int time_samples, int space_samples);

struct Flux {
  double a = 0.0;  // across the cut circle {x = 0}
  double b = 0.0;  // across the cut circle {y = 0}
};

Flux flux_check(const Scenario& sc);
Flux copy_flux(const Scenario& sc, int copy_id);
/// Throws NonHamiltonian when the total flux is nonzero.
void require_zero_flux(const Scenario& sc);

}  // namespace qmflow
