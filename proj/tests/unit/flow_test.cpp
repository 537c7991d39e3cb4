#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qmflow/errors.hpp"
#include "qmflow/flow.hpp"

namespace qmflow {
namespace {

StripSpec strip(Direction d, double offset, double width, int orientation, int copy = 0,
                double smoothing = 0.0) {
  StripSpec s;
  s.direction = d;
  s.offset = offset;
  s.width = width;
  s.orientation = orientation;
  s.copy_id = copy;
  s.smoothing = smoothing;
  return s;
}

Scenario one_copy(double oH, double oV, double oD, double w, int m) {
  return Scenario::assemble(HoledTorus(0.02),
                            {strip(Direction::H, oH, w, 1), strip(Direction::V, oV, w, 1),
                             strip(Direction::D, oD, w, -1)},
                            1, w, m);
}

Scenario grid(int N, double T, int m) {
  BuildParams p;
  p.N = N;
  p.T = T;
  p.m = m;
  return build_scenario(p);
}

// Integrates X = (dH/dy, -dH/dx) with central-difference gradients of the
// lifted strip Hamiltonian.
Point integrate_hamiltonian(const StripSpec& s, double t, Point p, int steps) {
  const double e = 1e-7;
  const double dt = t / steps;
  for (int k = 0; k < steps; ++k) {
    const double hx = (strip_hamiltonian(s, {p.x + e, p.y}) - strip_hamiltonian(s, {p.x - e, p.y})) / (2 * e);
    const double hy = (strip_hamiltonian(s, {p.x, p.y + e}) - strip_hamiltonian(s, {p.x, p.y - e})) / (2 * e);
    p = p + dt * Point{hy, -hx};
  }
  return p;
}

// One-dimensional midpoint quadrature of f on (lo, hi).
template <class F>
double integrate(F f, double lo, double hi, int n) {
  double sum = 0.0;
  const double h = (hi - lo) / n;
  for (int i = 0; i < n; ++i) sum += f(lo + (i + 0.5) * h);
  return sum * h;
}

// Torus average of G(0, .) from the three staircases: H and V depend on one
// coordinate, x - y on the unit square has the triangular density 1 - |u|.
double mean_generator_oracle(const Scenario& sc) {
  double total = 0.0;
  for (const StripSpec& s : sc.strips()) {
    const double base = strip_hamiltonian(s, {0.0, 0.0});
    const int n = 400000;
    double mean = 0.0;
    switch (s.direction) {
      case Direction::H:
        mean = integrate([&](double y) { return strip_hamiltonian(s, {0.0, y}); }, 0.0, 1.0, n);
        break;
      case Direction::V:
        mean = integrate([&](double x) { return strip_hamiltonian(s, {x, 0.0}); }, 0.0, 1.0, n);
        break;
      case Direction::D:
        mean = integrate([&](double u) { return strip_hamiltonian(s, {u, 0.0}) * (1.0 - std::abs(u)); },
                         -1.0, 1.0, 2 * n);
        break;
    }
    total += mean - base;
  }
  return total;
}

// Sum over ordered strip pairs j < k of det(f_j, f_k), f = sigma * loop vector.
double flux_pairing(const Scenario& sc) {
  const auto& s = sc.strips();
  double sum = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    for (std::size_t k = j + 1; k < s.size(); ++k) {
      const Point a = s[j].orientation * s[j].loop_vector();
      const Point b = s[k].orientation * s[k].loop_vector();
      sum += a.x * b.y - a.y * b.x;
    }
  }
  return sum;
}

TEST(Flow, ProfileShape) {
  const Profile pr{0.1, 0.02};
  EXPECT_DOUBLE_EQ(pr.ramp(), 0.06);
  EXPECT_EQ(profile_velocity(pr, 0.01), 0.0);
  EXPECT_DOUBLE_EQ(profile_velocity(pr, 0.05), 1.0 / 0.06);
  EXPECT_EQ(profile_value(pr, 0.0), 0.0);
  EXPECT_EQ(profile_value(pr, 0.01), 0.0);
  EXPECT_NEAR(profile_value(pr, 0.05), 0.5, 1e-12);
  EXPECT_EQ(profile_value(pr, 0.09), 1.0);
  EXPECT_NEAR(staircase(pr, 2.05), 2.5, 1e-12);
  EXPECT_NEAR(staircase(pr, -0.95), -0.5, 1e-12);
}

TEST(Flow, FullLoopAtWidthTime) {
  const StripSpec h = strip(Direction::H, 0.3, 0.1, 1);
  const Point p{0.2, 0.35};
  const StripMove mv = apply_strip(h, 0.1, p);
  EXPECT_NEAR(mv.to.x, 1.2, 1e-12);
  EXPECT_DOUBLE_EQ(mv.to.y, 0.35);
  EXPECT_EQ(apply_strip(h, 0.1, {0.2, 0.5}).to, (Point{0.2, 0.5}));
}

TEST(Flow, StripMapsMatchHamiltonianFlow) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (Direction d : {Direction::H, Direction::V, Direction::D}) {
    for (int sigma : {1, -1}) {
      const StripSpec s = strip(d, 0.4, 0.1, sigma, 0, 0.01);
      for (int i = 0; i < 20; ++i) {
        // Stay clear of the profile kinks.
        Point p{u(rng), u(rng)};
        const double h = s.chart_h(p);
        if (std::abs(h - 0.01) < 1e-3 || std::abs(h - 0.09) < 1e-3 || std::abs(h - 0.1) < 1e-3 ||
            h < 1e-3) {
          continue;
        }
        const Point exact = apply_strip(s, 0.03, p).to;
        const Point num = integrate_hamiltonian(s, 0.03, p, 10000);
        EXPECT_NEAR(exact.x, num.x, 1e-6) << to_char(d) << sigma;
        EXPECT_NEAR(exact.y, num.y, 1e-6) << to_char(d) << sigma;
      }
    }
  }
}

TEST(Flow, DiagonalDirectionAndSign) {
  const StripSpec d = strip(Direction::D, 0.4, 0.1, -1);
  const Point p{0.95, 0.5};  // x - y = 0.45
  const Point q = apply_strip(d, 0.02, p).to;
  EXPECT_NEAR(q.x, 0.95 - 0.2, 1e-12);
  EXPECT_NEAR(q.y, 0.5 - 0.2, 1e-12);
}

TEST(Flow, ComposedAppliesLastStripFirst) {
  const Scenario sc = one_copy(0.3, 0.3, 0.15, 0.05, 10);
  const double t = sc.tau();
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    Point p{u(rng), u(rng)};
    if (i % 2 == 0) p = {0.3 + 0.05 * u(rng), 0.3 + 0.05 * u(rng)};
    Point manual = p;
    for (int k = 2; k >= 0; --k) manual = apply_strip(sc.strips()[k], t, manual).to;
    const ComposedMove mv = apply_composed(sc, t, p);
    EXPECT_EQ(mv.to, manual);
    if (!mv.path.empty()) {
      EXPECT_EQ(mv.path.front().from, p);
      EXPECT_EQ(mv.path.back().to, mv.to);
    }
  }
  EXPECT_EQ(apply_composed(sc, t, {0.6, 0.9}).to, (Point{0.6, 0.9}));
  EXPECT_TRUE(apply_composed(sc, t, {0.6, 0.9}).path.empty());
}

TEST(Flow, ComposedInverse) {
  const Scenario sc = grid(4, 0.04, 64);
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 5000; ++i) {
    const Point p{u(rng), u(rng)};
    const Point back = apply_composed_inverse(sc, sc.tau(), apply_composed(sc, sc.tau(), p).to);
    EXPECT_NEAR(back.x, p.x, 1e-12);
    EXPECT_NEAR(back.y, p.y, 1e-12);
  }
}

TEST(Flow, ComposedPreservesArea) {
  const Scenario sc = grid(2, 0.08, 32);
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double e = 1e-7;
  int unit = 0;
  const int n = 1000;
  for (int i = 0; i < n; ++i) {
    const Point p{u(rng), u(rng)};
    const Point f0 = apply_composed(sc, sc.tau(), p).to;
    const Point fx = apply_composed(sc, sc.tau(), {p.x + e, p.y}).to;
    const Point fy = apply_composed(sc, sc.tau(), {p.x, p.y + e}).to;
    const double det = ((fx.x - f0.x) * (fy.y - f0.y) - (fx.y - f0.y) * (fy.x - f0.x)) / (e * e);
    unit += std::abs(det - 1.0) < 1e-5;
  }
  // Only points within e of a profile kink may miss.
  EXPECT_GE(unit, n - 5);
}

TEST(Flow, GeneratorExamples) {
  const Scenario sc = one_copy(0.3, 0.3, 0.42, 0.16, 16);
  EXPECT_NEAR(generator_value(sc, 0.0, {0.5, 0.5}), 0.0, 1e-12);
  EXPECT_NEAR(generator_value(sc, 0.0, {0.38, 0.38}), 0.0, 1e-12);
  EXPECT_NEAR(generator_value(sc, 0.0, {0.38, 0.1}), -0.5, 1e-12);
  EXPECT_EQ(generator_value(sc, 0.0, {0.0, 0.0}), 0.0);
  // Periodic in both directions.
  for (double t : {0.0, 0.005}) {
    EXPECT_NEAR(generator_value(sc, t, {0.31, 0.77}), generator_value(sc, t, {2.31, -0.23}), 1e-12);
  }
}

TEST(Flow, GeneratorOscillationBound) {
  const Scenario sc = grid(2, 0.08, 32);
  EXPECT_EQ(copy_oscillation_bound(sc), 3.0);
  const auto probes = oscillation_probes(sc, 128);
  for (double t : {0.0, sc.tau() / 2, sc.tau()}) {
    double lo = 1e300, hi = -1e300;
    for (const Point& p : probes) {
      const double g = generator_value(sc, t, p);
      lo = std::min(lo, g);
      hi = std::max(hi, g);
    }
    EXPECT_LE(hi - lo, 2.0 * copy_oscillation_bound(sc) + 1e-12);
  }
}

TEST(Flow, HoferBound) {
  const Scenario sc = grid(1, 0.16, 16);
  const HoferBound b = hofer_upper_bound(sc, sc.tau(), 8, 128);
  EXPECT_EQ(b.K, 3.0);
  EXPECT_DOUBLE_EQ(b.analytic, 6.0 * sc.tau());
  EXPECT_GT(b.numeric, 0.0);
  EXPECT_LE(b.numeric, b.analytic * (1 + 1e-12));
  EXPECT_THROW(hofer_upper_bound(sc, sc.tau(), 0, 128), std::invalid_argument);
}

TEST(Flow, HoferBoundSameWidthAcrossN) {
  const double base = hofer_upper_bound(grid(1, 0.02, 40), 0.0005, 4, 128).numeric;
  for (int N : {2, 4}) {
    const Scenario sc = grid(N, 0.02, 40);
    EXPECT_NEAR(hofer_upper_bound(sc, sc.tau(), 4, 128).numeric / base, 1.0, 0.05) << N;
  }
}

TEST(Flow, EmptyScenarioIsIdentity) {
  const Scenario sc = Scenario::assemble(HoledTorus(0.02), {}, 0, 0.1, 4);
  EXPECT_EQ(hofer_upper_bound(sc, sc.tau(), 4, 16).numeric, 0.0);
  EXPECT_EQ(calabi(sc, sc.tau(), 4, 16), 0.0);
  EXPECT_EQ(apply_composed(sc, sc.tau(), {0.3, 0.4}).to, (Point{0.3, 0.4}));
}

TEST(Flow, ValidityWindow) {
  const Scenario sc = grid(1, 0.05, 1);
  EXPECT_THROW(check_validity_window(sc, sc.tau()), ValidityWindowExceeded);
  EXPECT_THROW(hofer_upper_bound(sc, sc.tau(), 4, 16), ValidityWindowExceeded);
  EXPECT_NO_THROW(check_validity_window(grid(1, 0.05, 20), 0.0025));
}

TEST(Flow, MeanGeneratorClosedForm) {
  // (oV - oH) + 1/2 - oD - w/2 for one copy with sigma = (+1, +1, -1).
  const Scenario sc = one_copy(0.3, 0.35, 0.12, 0.05, 10);
  EXPECT_NEAR(mean_generator_oracle(sc), 0.05 + 0.5 - 0.12 - 0.025, 1e-6);
  EXPECT_NEAR(mean_generator_oracle(one_copy(0.3, 0.3, 0.42, 0.16, 16)), 0.0, 1e-6);
}

TEST(Flow, CalabiMatchesFluxCorrectedOracle) {
  // Overlap spacing 0.08 here, so m >= 13 keeps the drift inside the window.
  for (int m : {20, 40, 80}) {
    const Scenario sc = one_copy(0.3, 0.6, 0.12, 0.05, m);
    const double tau = sc.tau();
    const double oracle = tau * mean_generator_oracle(sc) + 0.5 * tau * tau * flux_pairing(sc);
    EXPECT_NEAR(calabi(sc, tau, 8, 512), oracle, 1e-3 * std::abs(oracle)) << m;
  }
}

TEST(Flow, CalabiFirstOrderAtSmallTau) {
  const Scenario sc = one_copy(0.3, 0.6, 0.12, 0.05, 200);
  const double first = sc.tau() * mean_generator_oracle(sc);
  EXPECT_NEAR(calabi(sc, sc.tau(), 4, 512), first, 0.01 * std::abs(first));
}

TEST(Flow, CalabiBelowHofer) {
  for (int N : {1, 2, 4}) {
    const Scenario sc = grid(N, 0.16 / N, 16 * N);
    EXPECT_LE(std::abs(calabi(sc, sc.tau(), 4, 128)),
              hofer_upper_bound(sc, sc.tau(), 4, 128).numeric + 1e-15)
        << N;
  }
}

TEST(Flow, FluxChecks) {
  const Scenario sc = grid(3, 0.05, 10);
  EXPECT_EQ(flux_check(sc).a, 0.0);
  EXPECT_EQ(flux_check(sc).b, 0.0);
  for (int c = 0; c < 3; ++c) EXPECT_EQ(copy_flux(sc, c).a, 0.0);
  EXPECT_NO_THROW(require_zero_flux(sc));

  const Scenario flipped = Scenario::assemble(
      HoledTorus(0.02),
      {strip(Direction::H, 0.3, 0.05, 1), strip(Direction::V, 0.3, 0.05, 1),
       strip(Direction::D, 0.15, 0.05, 1)},
      1, 0.05, 10);
  EXPECT_EQ(flux_check(flipped).a, 2.0);
  EXPECT_EQ(flux_check(flipped).b, 2.0);
  EXPECT_THROW(require_zero_flux(flipped), NonHamiltonian);
}

}  // namespace
}  // namespace qmflow
