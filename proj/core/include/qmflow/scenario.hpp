#pragma once

// Strip systems on the holed torus.
//
// A copy consists of three straight strips: H along (1,0) in class a, V along
// (0,1) in class b, and D along (1,1) in class ab with reversed orientation.
// Each strip is a band {offset < s(p) < offset + width (mod 1)} in its
// transverse coordinate s = y, x, x - y respectively. These coordinates are
// area-preserving charts, so the band area equals its width.

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qmflow/keyvalue.hpp"
#include "qmflow/surface.hpp"
#include "qmflow/word.hpp"

namespace qmflow {

enum class Direction { H = 0, V = 1, D = 2 };

char to_char(Direction d);
Direction direction_from_char(char c);

struct StripSpec {
  Direction direction = Direction::H;
  double offset = 0.0;
  double width = 0.0;
  int orientation = 1;  // flux sign
  double smoothing = 0.0;
  int copy_id = 0;

  /// a, b or ab.
  Word class_word() const;

  /// Transverse coordinate s(p) of the band chart.
  double transverse(Point p) const {
    switch (direction) {
      case Direction::H: return p.y;
      case Direction::V: return p.x;
      case Direction::D: return p.x - p.y;
    }
    return 0.0;
  }
  /// Position along the core loop; one traversal advances it by 1.
  double along(Point p) const { return direction == Direction::H ? p.x : p.y; }
  /// Translation by one full loop.
  Point loop_vector() const {
    switch (direction) {
      case Direction::H: return {1.0, 0.0};
      case Direction::V: return {0.0, 1.0};
      case Direction::D: return {1.0, 1.0};
    }
    return {};
  }
  /// Transverse chart coordinate in [0, 1).
  double chart_h(Point p) const { return wrap_unit(transverse(p) - offset); }
  bool contains(Point p) const {
    const double h = chart_h(p);
    return h > 0.0 && h < width;
  }
};

struct PairOverlap {
  int first = 0;
  int second = 0;
  double area = 0.0;
};

struct OverlapReport {
  std::vector<PairOverlap> pairwise_overlaps;
  double max_overlap_area = 0.0;
  double bad_area_budget = 0.0;     // m * sum of overlap areas
  double min_overlap_spacing = 1.0;  // loop units
  int triple_overlaps = 0;
};

struct Membership {
  int strip = -1;
  double h = 0.0;
};

class Scenario {
 public:
  /// Assembles a scenario without enforcing the strip-system invariants; use
  /// `violations()` / `validate()` for that. Throws std::invalid_argument on
  /// malformed strips (nonpositive width, bad orientation, ...).
  static Scenario assemble(HoledTorus surface, std::vector<StripSpec> strips, int copies,
                           double T, int m);

  const HoledTorus& surface() const { return surface_; }
  const std::vector<StripSpec>& strips() const { return strips_; }
  int copies() const { return copies_; }
  double T() const { return T_; }
  int m() const { return m_; }
  double tau() const { return T_ / m_; }
  const OverlapReport& validation() const { return report_; }

  /// Invariant failures in a fixed order; empty for a valid scenario.
  std::vector<std::string> violations() const;
  bool valid() const { return violations().empty(); }
  /// Throws InfeasibleScenario naming the first violated constraint.
  void validate() const;

  /// Index of the strip of direction `d` containing `p`, or -1. Same-direction
  /// strips of a valid scenario are disjoint, so the answer is unique.
  int strip_containing(Direction d, Point p) const;
  bool same_direction_disjoint() const { return disjoint_; }

  /// Scenario with every orientation reversed.
  Scenario with_reversed_orientations() const;

 private:
  Scenario(HoledTorus surface) : surface_(surface) {}
  void index();

  HoledTorus surface_;
  std::vector<StripSpec> strips_;
  int copies_ = 0;
  double T_ = 1.0;
  int m_ = 1;
  OverlapReport report_;
  bool disjoint_ = true;
  // Per direction: strip indices sorted by offset, and the sorted offsets.
  std::array<std::vector<int>, 3> by_direction_;
  std::array<std::vector<double>, 3> offsets_;
};

struct GridOffsets {
  double phase_H = 0.3;
  double phase_V = 0.3;
  double phase_D = 0.42;
};

/// One (H, V, D) offset triple per copy.
struct ExplicitOffsets {
  std::vector<std::array<double, 3>> per_copy;
};

using OffsetRule = std::variant<GridOffsets, ExplicitOffsets>;

struct BuildParams {
  int N = 1;
  double T = 0.05;
  int m = 10;
  double hole_halfwidth = 0.02;
  OffsetRule offsets = GridOffsets{};
  double smoothing = 0.0;
  /// Shift steps tried in each search direction (step = 1/64 of a grid cell
  /// for grid offsets, 1/256 of the circle for explicit offsets).
  int search_radius = 32;
};

/// Builds a valid scenario: copy c's strips sit at (c + phase)/N for grid
/// offsets. Offsets are perturbed deterministically until every invariant
/// holds; throws InfeasibleScenario otherwise.
Scenario build_scenario(const BuildParams& params);

/// All strips containing `p` with their chart coordinate h in (0, width).
std::vector<Membership> membership(const Scenario& scenario, Point p);

/// Scenario document (see keyvalue.hpp for the grammar):
///   N, T, m, hole_halfwidth, and one `strip.<i>` entry per strip holding
///   "<H|V|D> <offset> <width> <orientation> <smoothing> <copy_id>".
KeyValueDocument to_document(const Scenario& scenario);
std::string serialize(const Scenario& scenario);
/// Throws ConfigError on malformed input. Does not validate invariants.
Scenario scenario_from_document(const KeyValueDocument& doc);
bool is_scenario_document(const KeyValueDocument& doc);

}  // namespace qmflow
