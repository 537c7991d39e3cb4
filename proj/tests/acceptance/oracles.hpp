#pragma once

// Reference computations for the acceptance binary, written independently of
// the library code paths they check.

#include <optional>
#include <string>
#include <vector>

#include "qmflow/brooks.hpp"
#include "qmflow/scenario.hpp"

namespace qmflow::oracle {

/// Brooks value by scanning the text form of an already reduced word.
long long scan_brooks(const std::string& pattern, const std::string& reduced);

/// Reduced text of the lattice-line crossings along a polyline, or nullopt
/// when two crossings coincide or a vertex lies on a line.
std::optional<std::string> crossing_text(const std::vector<Point>& vertices);

/// Free reduction of a/A/b/B text.
std::string reduce_text(const std::string& s);

/// Winding number of a closed polygon around q.
int winding_number(const std::vector<Point>& polygon, Point q);

/// True when some edge passes within `halfwidth` (sup norm) of a lattice point.
bool polygon_meets_holes(const std::vector<Point>& polygon, double halfwidth, bool closed);

struct GridRho {
  double value = 0.0;
  double std_error = 0.0;
  long long moved = 0;
  long long skipped = 0;
};

/// Midpoint n x n enumeration of rho: every cell centre is iterated K times
/// with the composed step map, its path read off with `crossing_text` (the
/// closing segment stays in one cell and reads nothing), and the homogenized
/// value divided by K is averaged over the torus.
GridRho grid_rho(const Scenario& sc, const CountingQM& q, int K, int n);

/// Torus mean of G(0, .), from one-dimensional quadrature of each lifted
/// staircase (x - y has density 1 - |u| on the unit square).
double mean_static_potential(const Scenario& sc);

/// Sum over ordered strip pairs j < k of det(sigma_j v_j, sigma_k v_k).
double flux_pairing(const Scenario& sc);

}  // namespace qmflow::oracle
