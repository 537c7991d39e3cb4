#include "qmflow/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qmflow/errors.hpp"

namespace qmflow {

char to_char(Direction d) {
  switch (d) {
    case Direction::H: return 'H';
    case Direction::V: return 'V';
    case Direction::D: return 'D';
  }
  return '?';
}

Direction direction_from_char(char c) {
  switch (c) {
    case 'H': return Direction::H;
    case 'V': return Direction::V;
    case 'D': return Direction::D;
  }
  throw ConfigError(std::string("unknown strip direction '") + c + "'");
}

Word StripSpec::class_word() const {
  switch (direction) {
    case Direction::H: return Word::parse("a");
    case Direction::V: return Word::parse("b");
    case Direction::D: return Word::parse("ab");
  }
  return {};
}

namespace {

struct Arc {
  double start;  // in [0, 1)
  double length;
};

// Open arcs (a, a+la), (b, b+lb) on R/Z intersect.
bool arcs_intersect(Arc p, Arc q) {
  if (p.length >= 1.0 || q.length >= 1.0) return p.length > 0.0 && q.length > 0.0;
  return wrap_unit(q.start - p.start) < p.length || wrap_unit(p.start - q.start) < q.length;
}

double arc_overlap_length(Arc p, Arc q) {
  // Lengths below 1, so at most two overlapping pieces.
  double total = 0.0;
  for (double shift : {-1.0, 0.0, 1.0}) {
    const double lo = std::max(p.start, q.start + shift);
    const double hi = std::min(p.start + p.length, q.start + shift + q.length);
    total += std::max(0.0, hi - lo);
  }
  return total;
}

Arc band(const StripSpec& s) { return {wrap_unit(s.offset), s.width}; }

// Transverse arc covered by the hole in the chart of direction d.
Arc hole_arc(Direction d, double hole) {
  const double half = d == Direction::D ? 2.0 * hole : hole;
  return {1.0 - half, 2.0 * half};
}

// x - y over (x in V band) x (y in H band).
Arc difference_arc(const StripSpec& h, const StripSpec& v) {
  return {wrap_unit(v.offset - h.offset - h.width), h.width + v.width};
}

const StripSpec* find(const std::vector<const StripSpec*>& s, Direction d) {
  for (const StripSpec* p : s) {
    if (p->direction == d) return p;
  }
  return nullptr;
}

bool triple_overlap(const StripSpec& a, const StripSpec& b, const StripSpec& c) {
  const std::vector<const StripSpec*> s{&a, &b, &c};
  const StripSpec* h = find(s, Direction::H);
  const StripSpec* v = find(s, Direction::V);
  const StripSpec* d = find(s, Direction::D);
  if (!h || !v || !d) return false;
  return arcs_intersect(difference_arc(*h, *v), band(*d));
}

// Along-loop arc of the region where strip `other` crosses strip `self`.
Arc crossing_arc(const StripSpec& self, const StripSpec& other) {
  const double ws = self.width;
  const double wo = other.width;
  switch (self.direction) {
    case Direction::H:
      if (other.direction == Direction::V) return {wrap_unit(other.offset), wo};
      return {wrap_unit(self.offset + other.offset), ws + wo};  // x = u + y
    case Direction::V:
    case Direction::D: {
      // Loop parameter is y for both.
      const StripSpec& vert = self.direction == Direction::V ? self : other;
      const StripSpec& diag = self.direction == Direction::D ? self : other;
      if (other.direction == Direction::H) return {wrap_unit(other.offset), wo};
      // y = x - u, x in the V band, u in the D band.
      return {wrap_unit(vert.offset - diag.offset - diag.width), vert.width + diag.width};
    }
  }
  return {0.0, 0.0};
}

double min_gap(std::vector<Arc> arcs) {
  if (arcs.empty()) return 1.0;
  std::sort(arcs.begin(), arcs.end(), [](Arc p, Arc q) { return p.start < q.start; });
  double gap = 1.0;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const Arc& cur = arcs[i];
    const Arc& next = arcs[(i + 1) % arcs.size()];
    const double end = cur.start + cur.length;
    double g = next.start - end;
    if (i + 1 == arcs.size()) g += 1.0;
    gap = std::min(gap, std::max(0.0, g));
  }
  // A later arc may start inside an earlier, longer one.
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    for (std::size_t j = i + 1; j < arcs.size(); ++j) {
      if (arcs_intersect(arcs[i], arcs[j])) return 0.0;
    }
  }
  return gap;
}

OverlapReport compute_report(const std::vector<StripSpec>& strips, int m) {
  OverlapReport r;
  const int n = static_cast<int>(strips.size());
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const StripSpec& a = strips[i];
      const StripSpec& b = strips[j];
      // Bands of distinct directions cross exactly once (intersection number
      // +-1) in a parallelogram whose area is the product of the widths.
      const double area = a.direction != b.direction
                              ? a.width * b.width
                              : arc_overlap_length(band(a), band(b));
      if (area > 0.0) {
        r.pairwise_overlaps.push_back({i, j, area});
        r.max_overlap_area = std::max(r.max_overlap_area, area);
        total += area;
      }
    }
  }
  r.bad_area_budget = m * total;

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        if (triple_overlap(strips[i], strips[j], strips[k])) ++r.triple_overlaps;
      }
    }
  }

  double spacing = 1.0;
  for (int i = 0; i < n; ++i) {
    std::vector<Arc> arcs;
    for (int j = 0; j < n; ++j) {
      if (strips[j].direction != strips[i].direction) arcs.push_back(crossing_arc(strips[i], strips[j]));
    }
    spacing = std::min(spacing, min_gap(std::move(arcs)));
  }
  r.min_overlap_spacing = spacing;
  return r;
}

std::string describe(int index, const StripSpec& s) {
  std::ostringstream os;
  os << "strip " << index << " (" << to_char(s.direction) << ", copy " << s.copy_id
     << ", offset " << s.offset << ")";
  return os.str();
}

// Violations restricted to strips[0 .. count). Structure (three strips per
// copy) is only checked when `complete` is set.
std::vector<std::string> collect_violations(const HoledTorus& surface,
                                            const std::vector<StripSpec>& strips, int copies,
                                            std::size_t count, bool complete,
                                            bool stop_at_first) {
  std::vector<std::string> out;
  auto add = [&](std::string msg) {
    out.push_back(std::move(msg));
    return stop_at_first;
  };

  if (complete) {
    if (static_cast<int>(count) != 3 * copies) {
      if (add("expected " + std::to_string(3 * copies) + " strips for " + std::to_string(copies) +
              " copies, found " + std::to_string(count))) {
        return out;
      }
    }
    std::vector<std::array<int, 3>> seen(std::max(copies, 0), {0, 0, 0});
    for (std::size_t i = 0; i < count; ++i) {
      const StripSpec& s = strips[i];
      if (s.copy_id < 0 || s.copy_id >= copies) {
        if (add(describe(static_cast<int>(i), s) + " has copy id outside [0, N)")) return out;
        continue;
      }
      ++seen[s.copy_id][static_cast<int>(s.direction)];
    }
    for (int c = 0; c < copies; ++c) {
      if (seen[c] != std::array<int, 3>{1, 1, 1}) {
        if (add("copy " + std::to_string(c) + " does not hold exactly one H, V and D strip")) {
          return out;
        }
      }
    }
  }

  for (std::size_t i = 0; i < count; ++i) {
    const StripSpec& s = strips[i];
    if (arcs_intersect(band(s), hole_arc(s.direction, surface.hole_halfwidth()))) {
      if (add(describe(static_cast<int>(i), s) + " meets the hole")) return out;
    }
  }
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      if (strips[i].direction == strips[j].direction &&
          arcs_intersect(band(strips[i]), band(strips[j]))) {
        if (add(describe(static_cast<int>(i), strips[i]) + " overlaps " +
                describe(static_cast<int>(j), strips[j]))) {
          return out;
        }
      }
    }
  }
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      for (std::size_t k = j + 1; k < count; ++k) {
        if (triple_overlap(strips[i], strips[j], strips[k])) {
          if (add("triple overlap of strips " + std::to_string(i) + ", " + std::to_string(j) +
                  ", " + std::to_string(k))) {
            return out;
          }
        }
      }
    }
  }
  if (complete) {
    long flux_a = 0;
    long flux_b = 0;
    for (std::size_t i = 0; i < count; ++i) {
      const StripSpec& s = strips[i];
      if (s.direction != Direction::V) flux_a += s.orientation;
      if (s.direction != Direction::H) flux_b += s.orientation;
    }
    if (flux_a != 0 || flux_b != 0) {
      add("total flux (" + std::to_string(flux_a) + ", " + std::to_string(flux_b) +
          ") does not vanish");
    }
  }
  return out;
}

void check_strip(const StripSpec& s) {
  if (!(s.width > 0.0 && s.width < 1.0)) throw std::invalid_argument("strip width must lie in (0, 1)");
  if (s.orientation != 1 && s.orientation != -1) {
    throw std::invalid_argument("strip orientation must be +1 or -1");
  }
  if (!(s.smoothing >= 0.0 && s.width > 2.0 * s.smoothing)) {
    throw std::invalid_argument("strip smoothing must satisfy 0 <= smoothing < width / 2");
  }
  if (!std::isfinite(s.offset)) throw std::invalid_argument("strip offset must be finite");
}

}  // namespace

Scenario Scenario::assemble(HoledTorus surface, std::vector<StripSpec> strips, int copies,
                            double T, int m) {
  if (copies < 0) throw std::invalid_argument("copies must be nonnegative");
  if (!(T > 0.0)) throw std::invalid_argument("T must be positive");
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  for (const StripSpec& s : strips) check_strip(s);

  Scenario sc(surface);
  sc.strips_ = std::move(strips);
  sc.copies_ = copies;
  sc.T_ = T;
  sc.m_ = m;
  sc.report_ = compute_report(sc.strips_, m);
  sc.index();
  return sc;
}

void Scenario::index() {
  for (auto& v : by_direction_) v.clear();
  for (auto& v : offsets_) v.clear();
  for (int i = 0; i < static_cast<int>(strips_.size()); ++i) {
    by_direction_[static_cast<int>(strips_[i].direction)].push_back(i);
  }
  disjoint_ = true;
  for (int d = 0; d < 3; ++d) {
    auto& idx = by_direction_[d];
    std::sort(idx.begin(), idx.end(), [&](int p, int q) {
      return wrap_unit(strips_[p].offset) < wrap_unit(strips_[q].offset);
    });
    for (int i : idx) offsets_[d].push_back(wrap_unit(strips_[i].offset));
    for (std::size_t i = 0; i < idx.size(); ++i) {
      for (std::size_t j = i + 1; j < idx.size(); ++j) {
        if (arcs_intersect(band(strips_[idx[i]]), band(strips_[idx[j]]))) disjoint_ = false;
      }
    }
  }
}

std::vector<std::string> Scenario::violations() const {
  return collect_violations(surface_, strips_, copies_, strips_.size(), true, false);
}

void Scenario::validate() const {
  const auto v = collect_violations(surface_, strips_, copies_, strips_.size(), true, true);
  if (!v.empty()) throw InfeasibleScenario(v.front());
}

int Scenario::strip_containing(Direction d, Point p) const {
  const auto& idx = by_direction_[static_cast<int>(d)];
  if (idx.empty()) return -1;
  if (!disjoint_) {
    for (int i : idx) {
      if (strips_[i].contains(p)) return i;
    }
    return -1;
  }
  const auto& offs = offsets_[static_cast<int>(d)];
  const double s = wrap_unit(strips_[idx.front()].transverse(p));
  auto it = std::upper_bound(offs.begin(), offs.end(), s);
  // The band starting just below s, or the last band wrapping past 1.
  const std::size_t k = it == offs.begin() ? offs.size() - 1 : static_cast<std::size_t>(it - offs.begin()) - 1;
  if (strips_[idx[k]].contains(p)) return idx[k];
  if (k != offs.size() - 1 && strips_[idx.back()].contains(p)) return idx.back();
  return -1;
}

Scenario Scenario::with_reversed_orientations() const {
  std::vector<StripSpec> flipped = strips_;
  for (StripSpec& s : flipped) s.orientation = -s.orientation;
  return assemble(surface_, std::move(flipped), copies_, T_, m_);
}

namespace {

std::vector<StripSpec> make_strips(int n, double width, double smoothing,
                                   const std::vector<std::array<double, 3>>& offsets) {
  std::vector<StripSpec> strips;
  strips.reserve(3 * n);
  for (int c = 0; c < n; ++c) {
    strips.push_back({Direction::H, wrap_unit(offsets[c][0]), width, +1, smoothing, c});
    strips.push_back({Direction::V, wrap_unit(offsets[c][1]), width, +1, smoothing, c});
    strips.push_back({Direction::D, wrap_unit(offsets[c][2]), width, -1, smoothing, c});
  }
  return strips;
}

std::vector<std::array<double, 3>> grid_offsets(int n, const GridOffsets& g) {
  std::vector<std::array<double, 3>> out(n);
  for (int c = 0; c < n; ++c) {
    out[c] = {(c + g.phase_H) / n, (c + g.phase_V) / n, (c + g.phase_D) / n};
  }
  return out;
}

// 0, +1, -1, +2, -2, ...
int signed_step(int k) { return k % 2 == 1 ? (k + 1) / 2 : -(k / 2); }

}  // namespace

Scenario build_scenario(const BuildParams& params) {
  if (params.N < 1) throw std::invalid_argument("N must be at least 1");
  if (!(params.T > 0.0 && params.T <= 1.0 / (4.0 * params.N))) {
    throw std::invalid_argument("T must lie in (0, 1/(4N)]");
  }
  if (params.m < 1) throw std::invalid_argument("m must be at least 1");
  const HoledTorus surface(params.hole_halfwidth);
  const int n = params.N;
  const double width = params.T + 2.0 * params.smoothing;
  const int tries = 2 * params.search_radius + 1;

  auto finish = [&](std::vector<StripSpec> strips) {
    return Scenario::assemble(surface, std::move(strips), n, params.T, params.m);
  };

  if (const auto* grid = std::get_if<GridOffsets>(&params.offsets)) {
    const auto initial = make_strips(n, width, params.smoothing, grid_offsets(n, *grid));
    const auto first = collect_violations(surface, initial, n, initial.size(), true, true);
    if (first.empty()) return finish(initial);
    // Shift whole phases so the copies stay on a common grid.
    const double step = 1.0 / 64.0;
    for (int i = 0; i < tries; ++i) {
      for (int j = 0; j < tries; ++j) {
        for (int k = 0; k < tries; ++k) {
          const GridOffsets g{grid->phase_H + step * signed_step(i),
                              grid->phase_V + step * signed_step(j),
                              grid->phase_D + step * signed_step(k)};
          auto strips = make_strips(n, width, params.smoothing, grid_offsets(n, g));
          if (collect_violations(surface, strips, n, strips.size(), true, true).empty()) {
            return finish(std::move(strips));
          }
        }
      }
    }
    throw InfeasibleScenario("no feasible grid phases within search budget; first violation: " +
                             first.front());
  }

  const auto& explicit_offsets = std::get<ExplicitOffsets>(params.offsets).per_copy;
  if (static_cast<int>(explicit_offsets.size()) != n) {
    throw std::invalid_argument("explicit offsets must list one triple per copy");
  }
  auto strips = make_strips(n, width, params.smoothing, explicit_offsets);
  const auto first = collect_violations(surface, strips, n, strips.size(), true, true);
  if (first.empty()) return finish(std::move(strips));
  // Greedy: place strips in order, nudging each until it is compatible with
  // the ones already placed.
  const double step = 1.0 / 256.0;
  for (std::size_t i = 0; i < strips.size(); ++i) {
    const double base = strips[i].offset;
    bool placed = false;
    for (int k = 0; k < 2 * tries && !placed; ++k) {
      strips[i].offset = wrap_unit(base + step * signed_step(k));
      placed = collect_violations(surface, strips, n, i + 1, false, true).empty();
    }
    if (!placed) {
      throw InfeasibleScenario("no feasible offsets within search budget; first violation: " +
                               first.front());
    }
  }
  return finish(std::move(strips));
}

std::vector<Membership> membership(const Scenario& scenario, Point p) {
  std::vector<Membership> out;
  const auto& strips = scenario.strips();
  for (int i = 0; i < static_cast<int>(strips.size()); ++i) {
    const double h = strips[i].chart_h(p);
    if (h > 0.0 && h < strips[i].width) out.push_back({i, h});
  }
  return out;
}

KeyValueDocument to_document(const Scenario& scenario) {
  KeyValueDocument doc;
  doc.set("N", std::to_string(scenario.copies()));
  doc.set("T", format_exact(scenario.T()));
  doc.set("m", std::to_string(scenario.m()));
  doc.set("hole_halfwidth", format_exact(scenario.surface().hole_halfwidth()));
  const auto& strips = scenario.strips();
  for (std::size_t i = 0; i < strips.size(); ++i) {
    const StripSpec& s = strips[i];
    std::string v;
    v += to_char(s.direction);
    v += " " + format_exact(s.offset) + " " + format_exact(s.width) + " " +
         std::to_string(s.orientation) + " " + format_exact(s.smoothing) + " " +
         std::to_string(s.copy_id);
    doc.set("strip." + std::to_string(i), v);
  }
  return doc;
}

std::string serialize(const Scenario& scenario) { return to_document(scenario).to_string(); }

bool is_scenario_document(const KeyValueDocument& doc) { return doc.contains("strip.0"); }

Scenario scenario_from_document(const KeyValueDocument& doc) {
  const long long n = doc.require_int("N");
  const double T = doc.require_double("T");
  const long long m = doc.require_int("m");
  const double hole = doc.require_double("hole_halfwidth");
  std::vector<StripSpec> strips;
  for (std::size_t i = 0;; ++i) {
    const auto entry = doc.get("strip." + std::to_string(i));
    if (!entry) break;
    std::istringstream in(*entry);
    std::string dir, offset, width, orientation, smoothing, copy;
    if (!(in >> dir >> offset >> width >> orientation >> smoothing >> copy) || dir.size() != 1) {
      throw ConfigError("strip." + std::to_string(i) +
                        ": expected '<H|V|D> offset width orientation smoothing copy_id'");
    }
    std::string rest;
    if (in >> rest) throw ConfigError("strip." + std::to_string(i) + ": trailing fields");
    const std::string key = "strip." + std::to_string(i);
    StripSpec s;
    s.direction = direction_from_char(dir[0]);
    s.offset = parse_double(offset, key);
    s.width = parse_double(width, key);
    s.orientation = static_cast<int>(parse_int(orientation, key));
    s.smoothing = parse_double(smoothing, key);
    s.copy_id = static_cast<int>(parse_int(copy, key));
    strips.push_back(s);
  }
  try {
    return Scenario::assemble(HoledTorus(hole), std::move(strips), static_cast<int>(n), T,
                              static_cast<int>(m));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("scenario document: ") + e.what());
  }
}

}  // namespace qmflow
