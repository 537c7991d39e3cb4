#include "qmflow/properties.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "qmflow/brooks.hpp"
#include "qmflow/errors.hpp"
#include "qmflow/flow.hpp"
#include "qmflow/rho.hpp"

namespace qmflow {

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  int below(int n) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(n)); }
  Letter letter() { return Letter(1 + below(2), below(2) ? 1 : -1); }
  std::vector<Letter> letters(int max_len) {
    std::vector<Letter> out(below(max_len + 1));
    for (Letter& l : out) l = letter();
    return out;
  }
  Word word(int max_len) { return reduce(letters(max_len)); }

 private:
  std::mt19937_64 engine_;
};

struct Check {
  bool ok = true;
  std::string detail;
  long long cases = 0;

  void fail(const std::string& msg) {
    if (ok) detail = msg;
    ok = false;
  }
};

std::string str(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

Scenario sweep_scenario(int N) {
  BuildParams p;
  p.N = N;
  p.T = 0.16 / N;
  p.m = 16 * N;
  return build_scenario(p);
}

Scenario small_scenario(int N, double T, int m) {
  BuildParams p;
  p.N = N;
  p.T = T;
  p.m = m;
  return build_scenario(p);
}

// ---- word_core ----

Check word_reduce_idempotent() {
  Check c;
  Rng rng(11);
  for (int i = 0; i < 1000; ++i, ++c.cases) {
    const auto raw = rng.letters(24);
    const Word r = reduce(raw);
    if (reduce(r.letters()) != r) c.fail("reduce not idempotent on " + r.to_string());
    if (r.size() > raw.size()) c.fail("reduce increased length");
  }
  return c;
}

Check word_multiply_concat() {
  Check c;
  Rng rng(12);
  for (int i = 0; i < 1000; ++i, ++c.cases) {
    auto x = rng.letters(16);
    const auto y = rng.letters(16);
    const Word product = multiply(reduce(x), reduce(y));
    x.insert(x.end(), y.begin(), y.end());
    if (product != reduce(x)) c.fail("multiply disagrees with reduce of concatenation");
  }
  return c;
}

Check word_power_additive() {
  Check c;
  Rng rng(13);
  for (int i = 0; i < 1000; ++i, ++c.cases) {
    const Word u = rng.word(10);
    const int j = rng.below(17) - 8;
    const int k = rng.below(17) - 8;
    if (power(u, j + k) != multiply(power(u, j), power(u, k))) {
      c.fail("power(u, j+k) != power(u, j) power(u, k) for u = " + u.to_string());
    }
    if (power(u, -k) != invert(power(u, k))) c.fail("power(u, -k) != power(u, k)^-1");
  }
  return c;
}

Check word_cyclic_roundtrip() {
  Check c;
  Rng rng(14);
  for (int i = 0; i < 1000; ++i, ++c.cases) {
    const Word x = rng.word(6);
    const Word w = multiply(multiply(x, rng.word(8)), invert(x));
    const auto d = cyclic_reduce(w);
    if (multiply(multiply(d.conjugator, d.core), invert(d.conjugator)) != w) {
      c.fail("round trip failed for " + w.to_string());
    }
    if (d.core.size() >= 2 && d.core[0].cancels(d.core[d.core.size() - 1])) {
      c.fail("core " + d.core.to_string() + " is not cyclically reduced");
    }
    if (d.core.empty() != w.empty()) c.fail("empty core for nontrivial word");
  }
  return c;
}

// ---- brooks_qm ----

const std::vector<std::string>& patterns() {
  static const std::vector<std::string> p{"ab", "abAB", "aab", "abaB"};
  return p;
}

Check qm_homogeneity() {
  Check c;
  Rng rng(21);
  for (const auto& pat : patterns()) {
    const CountingQM q(Word::parse(pat));
    for (int i = 0; i < 250; ++i, ++c.cases) {
      const Word g = rng.word(10);
      const int k = rng.below(17) - 8;
      const double lhs = homogenized(q, power(g, k));
      const double rhs = k * homogenized(q, g);
      if (lhs != rhs) c.fail(pat + ": rbar(g^k) != k rbar(g) for g = " + g.to_string());
    }
  }
  return c;
}

Check qm_conjugation() {
  Check c;
  Rng rng(22);
  for (const auto& pat : patterns()) {
    const CountingQM q(Word::parse(pat));
    for (int i = 0; i < 250; ++i, ++c.cases) {
      const Word g = rng.word(10);
      const Word u = rng.word(8);
      if (homogenized(q, multiply(multiply(u, g), invert(u))) != homogenized(q, g)) {
        c.fail(pat + ": not conjugation invariant at g = " + g.to_string());
      }
    }
  }
  return c;
}

Check qm_antisymmetry() {
  Check c;
  Rng rng(23);
  for (const auto& pat : patterns()) {
    const CountingQM q(Word::parse(pat));
    for (int i = 0; i < 250; ++i, ++c.cases) {
      const Word g = rng.word(12);
      if (homogenized(q, invert(g)) != -homogenized(q, g)) {
        c.fail(pat + ": rbar(g^-1) != -rbar(g) at g = " + g.to_string());
      }
    }
  }
  return c;
}

Check qm_oracle_agreement() {
  Check c;
  Rng rng(24);
  for (const auto& pat : {std::string("ab"), std::string("abAB")}) {
    const CountingQM q(Word::parse(pat));
    const double d_emp = estimate_defect(q, 5);
    for (int i = 0; i < 200; ++i) {
      const Word g = rng.word(10);
      for (int k : {10, 100}) {
        ++c.cases;
        const double err = std::abs(homogenized(q, g) - homogenize_oracle(q, g, k));
        if (err > d_emp / k + 1e-12) {
          c.fail(pat + ": |rbar - h(g^k)/k| = " + str(err) + " > D_emp/k at g = " + g.to_string());
        }
      }
    }
  }
  return c;
}

Check qm_reference_values() {
  Check c;
  auto expect = [&](const char* pat, const char* g, double v) {
    ++c.cases;
    const double got = homogenized(CountingQM(Word::parse(pat)), Word::parse(g));
    if (got != v) c.fail(std::string("rbar_") + pat + "(" + g + ") = " + str(got));
  };
  expect("ab", "a", 0);
  expect("ab", "b", 0);
  expect("ab", "ab", 1);
  expect("abAB", "a", 0);
  expect("abAB", "b", 0);
  expect("abAB", "abAB", 1);
  expect("abAB", "ab", 0);
  return c;
}

// ---- surface_model ----

bool point_in_polygon(const std::vector<Point>& poly, Point p) {
  bool inside = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const Point a = poly[i];
    const Point b = poly[j];
    if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) {
      inside = !inside;
    }
  }
  return inside;
}

std::vector<Segment> chain_of(const std::vector<Point>& v, bool closed) {
  std::vector<Segment> out;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) out.push_back({v[i], v[i + 1]});
  if (closed) out.push_back({v.back(), v.front()});
  return out;
}

Check surface_closed_loops() {
  Check c;
  const HoledTorus torus(0.02);
  // A loop around a single hole reads the commutator.
  const std::vector<Point> square{{0.5, 0.5}, {1.5, 0.5}, {1.5, 1.5}, {0.5, 1.5}};
  const auto around = chain_of(square, true);
  if (crossing_word(std::span<const Segment>(around)) != Word::parse("abAB")) {
    c.fail("loop around the hole does not read abAB");
  }
  Rng rng(31);
  int accepted = 0;
  for (int attempt = 0; accepted < 1000 && attempt < 200000; ++attempt) {
    const Point centre{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    const int n = 3 + rng.below(10);
    std::vector<double> angles(n);
    for (double& a : angles) a = rng.uniform(0.0, 2.0 * std::numbers::pi);
    std::sort(angles.begin(), angles.end());
    std::vector<Point> poly;
    for (double a : angles) {
      const double r = rng.uniform(0.05, 0.7);
      poly.push_back(centre + r * Point{std::cos(a), std::sin(a)});
    }
    const auto chain = chain_of(poly, true);
    bool ok = true;
    for (const Segment& s : chain) ok = ok && !torus.segment_meets_hole(s);
    for (int i = -4; i <= 4 && ok; ++i) {
      for (int j = -4; j <= 4 && ok; ++j) ok = !point_in_polygon(poly, {double(i), double(j)});
    }
    if (!ok) continue;
    try {
      const Word w = crossing_word(std::span<const Segment>(chain));
      ++accepted;
      ++c.cases;
      if (!w.empty()) c.fail("contractible loop reads " + w.to_string());
    } catch (const DegenerateCrossing&) {
    }
  }
  if (accepted < 1000) c.fail("only " + std::to_string(accepted) + " loops generated");
  return c;
}

Check surface_winding() {
  Check c;
  Rng rng(32);
  while (c.cases < 1000) {
    const int n = 2 + rng.below(6);
    std::vector<Point> v(n);
    for (Point& p : v) p = {rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
    const auto chain = chain_of(v, false);
    try {
      const auto [ea, eb] = abelianize(crossing_word(std::span<const Segment>(chain)));
      ++c.cases;
      const long long dx = static_cast<long long>(std::floor(v.back().x) - std::floor(v.front().x));
      const long long dy = static_cast<long long>(std::floor(v.back().y) - std::floor(v.front().y));
      if (ea != dx || eb != dy) c.fail("abelianized word does not match displacement");
    } catch (const DegenerateCrossing&) {
    }
  }
  return c;
}

Check surface_grid_validity() {
  Check c;
  std::vector<Scenario> scenarios;
  for (int N : {1, 2, 4, 8}) scenarios.push_back(sweep_scenario(N));
  scenarios.push_back(small_scenario(1, 0.05, 10));
  constexpr int kGrid = 2000;
  for (const Scenario& sc : scenarios) {
    ++c.cases;
    long long triples = 0;
    for (int i = 0; i < kGrid; ++i) {
      for (int j = 0; j < kGrid; ++j) {
        const Point p{(i + 0.5) / kGrid, (j + 0.5) / kGrid};
        if (sc.strip_containing(Direction::H, p) >= 0 && sc.strip_containing(Direction::V, p) >= 0 &&
            sc.strip_containing(Direction::D, p) >= 0) {
          ++triples;
        }
      }
    }
    if (triples > 0 || sc.validation().triple_overlaps != 0) {
      c.fail("N = " + std::to_string(sc.copies()) + ": " + std::to_string(triples) +
             " grid points in three strips");
    }
  }
  return c;
}

Check surface_determinism() {
  Check c;
  for (int N : {1, 3, 8}) {
    ++c.cases;
    const std::string first = serialize(sweep_scenario(N));
    if (serialize(sweep_scenario(N)) != first) c.fail("build_scenario is not deterministic");
    const Scenario back = scenario_from_document(KeyValueDocument::parse(first));
    if (serialize(back) != first) c.fail("scenario document does not round-trip");
  }
  return c;
}

// ---- flow_engine ----

Point random_in_strip(Rng& rng, const StripSpec& s) {
  const double h = s.offset + rng.uniform(0.0, s.width);
  const double a = rng.uniform(0.0, 1.0);
  switch (s.direction) {
    case Direction::H: return {a, h};
    case Direction::V: return {h, a};
    case Direction::D: return {h + a, a};
  }
  return {};
}

Check flow_shear_additivity() {
  Check c;
  Rng rng(41);
  const Scenario sc = sweep_scenario(2);
  for (int i = 0; i < 1000; ++i, ++c.cases) {
    const StripSpec& s = sc.strips()[rng.below(static_cast<int>(sc.strips().size()))];
    const Point p = random_in_strip(rng, s);
    const double t1 = rng.uniform(-0.05, 0.05);
    const double t2 = rng.uniform(-0.05, 0.05);
    const Point two = apply_strip(s, t2, apply_strip(s, t1, p).to).to;
    const Point one = apply_strip(s, t1 + t2, p).to;
    if (std::hypot(two.x - one.x, two.y - one.y) > 1e-12) c.fail("phi^t2 phi^t1 != phi^(t1+t2)");
  }
  return c;
}

Check flow_invertibility() {
  Check c;
  Rng rng(42);
  for (int N : {1, 2, 4, 8}) {
    const Scenario sc = sweep_scenario(N);
    for (int i = 0; i < 250; ++i, ++c.cases) {
      const Point p{rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0)};
      const Point back = apply_composed_inverse(sc, sc.tau(), apply_composed(sc, sc.tau(), p).to);
      if (std::hypot(back.x - p.x, back.y - p.y) > 1e-12) c.fail("inverse composition misses");
    }
  }
  return c;
}

// Strips acting on p, in application order; stencils mixing branches are
// discarded.
std::vector<int> branch(const Scenario& sc, Point p) {
  std::vector<int> out;
  apply_composed_visit(sc, sc.tau(), p, [&](int i, Point, Point) { out.push_back(i); });
  return out;
}

Check flow_area_preservation() {
  Check c;
  Rng rng(43);
  constexpr double eps = 1e-6;
  for (int N : {1, 2, 4, 8}) {
    const Scenario sc = sweep_scenario(N);
    int done = 0;
    while (done < 250) {
      // Half the probes inside strips, where the map is not the identity.
      Point p{rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0)};
      if (rng.below(2) == 0) p = random_in_strip(rng, sc.strips()[rng.below(3 * N)]);
      const auto b = branch(sc, p);
      const Point px{p.x + eps, p.y}, mx{p.x - eps, p.y}, py{p.x, p.y + eps}, my{p.x, p.y - eps};
      if (branch(sc, px) != b || branch(sc, mx) != b || branch(sc, py) != b || branch(sc, my) != b) {
        continue;
      }
      const double t = sc.tau();
      const Point fx = apply_composed(sc, t, px).to - apply_composed(sc, t, mx).to;
      const Point fy = apply_composed(sc, t, py).to - apply_composed(sc, t, my).to;
      const double jac = (fx.x * fy.y - fx.y * fy.x) / (4 * eps * eps);
      ++done;
      ++c.cases;
      if (std::abs(jac - 1.0) > 1e-8) c.fail("Jacobian " + str(jac) + " at N = " + std::to_string(N));
    }
  }
  return c;
}

// u(p) by integrating the 1-form -X_y dx + X_x dy of the summed unit-time
// velocity field along the straight path from the hole to p.
double potential_by_path_integral(const Scenario& sc, Point p, int steps) {
  double u = 0.0;
  const Point d = (1.0 / steps) * p;
  for (int k = 0; k < steps; ++k) {
    const Point q = ((k + 0.5) / steps) * p;
    Point v{0.0, 0.0};
    for (const StripSpec& s : sc.strips()) v = v + strip_displacement(s, 1.0, q);
    u += -v.y * d.x + v.x * d.y;
  }
  return u;
}

Check flow_static_potential() {
  Check c;
  Rng rng(44);
  for (int N : {1, 2}) {
    const Scenario sc = sweep_scenario(N);
    for (int i = 0; i < 100; ++i, ++c.cases) {
      const Point p{rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0)};
      const double g = generator_value(sc, 0.0, p);
      const double u = potential_by_path_integral(sc, p, 200000);
      if (std::abs(g - u) > 2e-3) {
        c.fail("G(0) = " + str(g) + " but path integral gives " + str(u));
      }
    }
    if (generator_value(sc, 0.0, {0.0, 0.0}) != 0.0) c.fail("G(0) nonzero on the hole");
  }
  return c;
}

Check flow_flux_zero(const PropertyFixtures& fx) {
  Check c;
  std::vector<Scenario> scenarios;
  for (int N : {1, 2, 4, 8}) scenarios.push_back(sweep_scenario(N));
  for (const Scenario& s : fx.extra_flux_scenarios) scenarios.push_back(s);
  for (const Scenario& sc : scenarios) {
    ++c.cases;
    const Flux f = flux_check(sc);
    if (std::abs(f.a) > 1e-12 || std::abs(f.b) > 1e-12) {
      c.fail("total flux (" + str(f.a) + ", " + str(f.b) + ") with " +
             std::to_string(sc.strips().size()) + " strips");
    }
    for (int k = 0; k < sc.copies(); ++k) {
      const Flux g = copy_flux(sc, k);
      if (g.a != 0.0 || g.b != 0.0) c.fail("copy " + std::to_string(k) + " has nonzero flux");
    }
  }
  return c;
}

Check flow_calabi_le_hofer() {
  Check c;
  std::vector<Scenario> scenarios;
  for (int N : {1, 2, 4}) scenarios.push_back(sweep_scenario(N));
  scenarios.push_back(small_scenario(1, 0.05, 10));
  scenarios.push_back(small_scenario(2, 0.02, 8));
  for (const Scenario& sc : scenarios) {
    ++c.cases;
    const double cal = calabi(sc, sc.tau(), 4, 128);
    const HoferBound h = hofer_upper_bound(sc, sc.tau(), 4, 128);
    if (std::abs(cal) > h.numeric) c.fail("|calabi| " + str(cal) + " > hofer " + str(h.numeric));
    if (h.numeric > h.analytic * 1.05) c.fail("numeric bound exceeds 2 K tau");
  }
  return c;
}

Check flow_hofer_N_invariance() {
  Check c;
  const double base = hofer_upper_bound(small_scenario(1, 0.02, 40), 0.0005, 4, 128).numeric;
  for (int N : {2, 4, 8}) {
    ++c.cases;
    const Scenario sc = small_scenario(N, 0.02, 40);
    const double h = hofer_upper_bound(sc, sc.tau(), 4, 128).numeric;
    if (std::abs(h / base - 1.0) > 0.05) {
      c.fail("hofer bound " + str(h) + " at N = " + std::to_string(N) + " vs " + str(base));
    }
  }
  return c;
}

// ---- rho_estimator ----

Check rho_stationary_dominance() {
  Check c;
  const CountingQM q(Word::parse("ab"));
  for (int N : {1, 2, 4}) {
    ++c.cases;
    const Scenario sc = small_scenario(N, 0.002, 16);
    const RhoEstimate e = rho_estimate(sc, q, 64, 2000, 5);
    double area = 0.0;
    for (const StripSpec& s : sc.strips()) area += s.width;
    const double need = 1.0 - 2.0 * sc.validation().bad_area_budget / area;
    const double got = e.periodic_area / e.sampled_area;
    if (got < need) c.fail("periodic fraction " + str(got) + " < " + str(need));
  }
  return c;
}

Check rho_antisymmetry(const PropertyFixtures& fx) {
  Check c;
  const CountingQM q(Word::parse("ab"));
  for (int N : {1, 2}) {
    ++c.cases;
    const Scenario sc = small_scenario(N, 0.004, 16);
    const Scenario rev = fx.reverse_orientations ? fx.reverse_orientations(sc)
                                                 : sc.with_reversed_orientations();
    const RhoEstimate e = rho_estimate(sc, q, 64, 2000, 6);
    const RhoEstimate r = rho_estimate(rev, q, 64, 2000, 7);
    const double tol = 2.0 * std::hypot(e.std_error, r.std_error);
    if (std::abs(e.value + r.value) > tol) {
      c.fail("rho " + str(e.value) + " vs reversed " + str(r.value) + " (tol " + str(tol) + ")");
    }
  }
  return c;
}

// Cyclically reduced cores agree up to rotation.
bool conjugate(const Word& u, const Word& v) {
  const std::string a = cyclic_reduce(u).core.to_string();
  const std::string b = cyclic_reduce(v).core.to_string();
  return a.size() == b.size() && (a + a).find(b) != std::string::npos;
}

Check rho_homogenization_consistency() {
  Check c;
  const CountingQM q(Word::parse("ab"));
  const double d_emp = estimate_defect(q, 5);
  const Scenario sc = small_scenario(1, 0.004, 16);
  const int K = 4 * sc.m();
  Rng rng(51);
  int periodic = 0;
  for (int i = 0; i < 600; ++i) {
    const StripSpec& s = sc.strips()[i % 3];
    const TrajectoryRecord rec = iterate_word(sc, wrap(random_in_strip(rng, s)), K);
    if (rec.classification != Classification::periodic) continue;
    ++periodic;
    ++c.cases;
    const double per_class = homogenized(q, rec.period_class) / rec.period;
    const double direct = brooks_value(q, rec.word) / K;
    if (std::abs(per_class - direct) > d_emp / K + 1e-12) {
      c.fail("class value " + str(per_class) + " vs word value " + str(direct));
    }
    if (!conjugate(rec.word, power(rec.period_class, K / sc.m()))) {
      c.fail("periodic word " + rec.word.to_string() + " is not conjugate to a power of its class");
    }
  }
  if (periodic < 300) c.fail("only " + std::to_string(periodic) + " periodic samples");
  return c;
}

// Every cell of a grid iterated K times; contribution rbar(word)/K.
double grid_rho(const Scenario& sc, const CountingQM& q, int K, int grid) {
  std::vector<double> rows(grid);
  for (int i = 0; i < grid; ++i) {
    double sum = 0.0;
    for (int j = 0; j < grid; ++j) {
      const Point p{(i + 0.5) / grid, (j + 0.5) / grid};
      sum += homogenized(q, iterate_word(sc, p, K).word) / K;
    }
    rows[i] = sum;
  }
  double total = 0.0;
  for (double r : rows) total += r;
  return total / (static_cast<double>(grid) * grid);
}

Check rho_grid_oracle() {
  Check c;
  ++c.cases;
  const CountingQM q(Word::parse("ab"));
  const Scenario sc = small_scenario(1, 0.04, 16);
  const RhoEstimate e = rho_estimate(sc, q, 64, 10000, 8);
  const double g = grid_rho(sc, q, 64, 400);
  if (std::abs(g - e.value) > 3.0 * e.std_error) {
    c.fail("grid " + str(g) + " vs Monte Carlo " + str(e.value) + " +- " + str(e.std_error));
  }
  return c;
}

Check rho_scaling_law() {
  Check c;
  const CountingQM q(Word::parse("ab"));
  const double d_r = deficiency(q);
  for (int N : {1, 2, 4, 8}) {
    ++c.cases;
    const Scenario sc = small_scenario(N, 0.0004 / N, 64);
    const RhoEstimate e = rho_estimate(sc, q, 4 * sc.m(), 2000, 9);
    const double ratio = e.value / (sc.tau() * d_r);
    if (ratio < 0.9 * N || ratio > 1.1 * N) {
      c.fail("rho/(tau d_r) = " + str(ratio) + " at N = " + std::to_string(N));
    }
  }
  return c;
}

Check rho_null_pattern() {
  Check c;
  const CountingQM q(Word::parse("abAB"));
  for (int N : {1, 2}) {
    ++c.cases;
    const Scenario sc = small_scenario(N, 0.004, 16);
    const RhoEstimate e = rho_estimate(sc, q, 64, 2000, 10);
    const double tol = 3.0 * e.std_error + sc.validation().bad_area_budget;
    if (std::abs(e.value) > tol) c.fail("null pattern gives " + str(e.value));
    if (rho_predicted(sc, q).value != 0.0) c.fail("nonzero prediction for d_r = 0");
  }
  return c;
}

struct Property {
  const char* name;
  std::function<Check(const PropertyFixtures&)> run;
};

template <class F>
std::function<Check(const PropertyFixtures&)> plain(F f) {
  return [f](const PropertyFixtures&) { return f(); };
}

const std::vector<Property>& registry() {
  static const std::vector<Property> all{
      {"word.reduce_idempotent", plain(word_reduce_idempotent)},
      {"word.multiply_concatenation", plain(word_multiply_concat)},
      {"word.power_additive", plain(word_power_additive)},
      {"word.cyclic_roundtrip", plain(word_cyclic_roundtrip)},
      {"qm.homogeneity", plain(qm_homogeneity)},
      {"qm.conjugation_invariance", plain(qm_conjugation)},
      {"qm.antisymmetry", plain(qm_antisymmetry)},
      {"qm.oracle_agreement", plain(qm_oracle_agreement)},
      {"qm.reference_values", plain(qm_reference_values)},
      {"surface.closed_loop_identity", plain(surface_closed_loops)},
      {"surface.winding_consistency", plain(surface_winding)},
      {"surface.grid_validity", plain(surface_grid_validity)},
      {"surface.build_determinism", plain(surface_determinism)},
      {"flow.shear_additivity", plain(flow_shear_additivity)},
      {"flow.invertibility", plain(flow_invertibility)},
      {"flow.area_preservation", plain(flow_area_preservation)},
      {"flow.static_potential", plain(flow_static_potential)},
      {"flow.flux_zero", flow_flux_zero},
      {"flow.calabi_le_hofer", plain(flow_calabi_le_hofer)},
      {"flow.hofer_N_invariance", plain(flow_hofer_N_invariance)},
      {"rho.stationary_dominance", plain(rho_stationary_dominance)},
      {"rho.antisymmetry", rho_antisymmetry},
      {"rho.homogenization_consistency", plain(rho_homogenization_consistency)},
      {"rho.grid_oracle", plain(rho_grid_oracle)},
      {"rho.scaling_law", plain(rho_scaling_law)},
      {"rho.null_pattern", plain(rho_null_pattern)},
  };
  return all;
}

}  // namespace

std::vector<std::string> property_names() {
  std::vector<std::string> out;
  for (const Property& p : registry()) out.emplace_back(p.name);
  return out;
}

std::vector<PropertyResult> run_property_suite(const std::string& filter,
                                               const PropertyFixtures& fixtures) {
  std::vector<PropertyResult> out;
  for (const Property& p : registry()) {
    if (!filter.empty() && std::string(p.name).find(filter) == std::string::npos) continue;
    PropertyResult r;
    r.name = p.name;
    try {
      const Check c = p.run(fixtures);
      r.passed = c.ok;
      r.detail = c.ok ? std::to_string(c.cases) + " cases" : c.detail;
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace qmflow
