#pragma once

// Trajectory words and the averaged quasimorphism rho(Phi^tau).
//
// A point is iterated under the composed step map; the crossing letters of
// its lifted path, closed up by a hole-avoiding chain back to the start, give
// a loop class in F(a, b). rho is the surface average of the homogenized
// quasimorphism of these classes, per iterate.

#include <cstdint>
#include <map>
#include <string>

#include "qmflow/brooks.hpp"
#include "qmflow/flow.hpp"
#include "qmflow/scenario.hpp"

namespace qmflow {

enum class Classification { stationary, periodic, bad };

const char* to_string(Classification c);

struct TrajectoryRecord {
  Point start;  // after any nudge
  Point end;    // lifted
  int iterates = 0;
  Word word;
  Classification classification = Classification::stationary;
  int period = 0;    // m for periodic points
  Word period_class; // class^sigma of the owning strip for periodic points
};

/// Periodicity tolerance on the torus.
inline constexpr double kReturnTolerance = 1e-9;
/// Deterministic nudge applied when a sample hits a cut line.
inline constexpr double kNudge = 1e-9;

/// Iterates the composed map K times with step tau and classifies the start.
/// A point is periodic when exactly one strip moves it, no other strip acts on
/// it during the first m steps, and it returns within kReturnTolerance.
/// Throws DegenerateCrossing after three nudges.
TrajectoryRecord iterate_word(const Scenario& sc, Point p, int K);

struct ClassTally {
  double area = 0.0;
  double contribution = 0.0;
};

struct RhoEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::map<std::string, ClassTally> per_class;  // keyed by class word text
  double bad_area = 0.0;
  double bad_contribution = 0.0;
  double bad_contribution_bound = 0.0;
  double periodic_area = 0.0;
  double sampled_area = 0.0;  // area of the union of strips
  long long samples = 0;
};

/// Stratified Monte Carlo over the strips; the complement is fixed and
/// contributes nothing. Requires K to be a multiple of m and at least 1000
/// samples per strip. Throws NonHamiltonian or ValidityWindowExceeded.
RhoEstimate rho_estimate(const Scenario& sc, const CountingQM& q, int K, int samples_per_strip,
                         std::uint64_t seed);

struct RhoPrediction {
  double value = 0.0;
  double error_radius = 0.0;
};

/// Upper bound on |r| per unit area and iterate for points of the bad set:
/// one step moves a point through at most two strips and each strip map
/// crosses at most two cut lines.
inline constexpr double kBadContributionPerArea = 4.0;

/// Sum over strips of sigma * rbar(class) * ramp / m, i.e. tau N d_r for the
/// standard system, with radius bad_area_budget * kBadContributionPerArea.
RhoPrediction rho_predicted(const Scenario& sc, const CountingQM& q);

/// rbar(a) + rbar(b) - rbar(ab).
double deficiency(const CountingQM& q);

/// Counter-based uniform draw in (0, 1) for (seed, stream, index, lane).
double sample_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index, int lane);

}  // namespace qmflow
