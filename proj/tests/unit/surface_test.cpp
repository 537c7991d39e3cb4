#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qmflow/errors.hpp"
#include "qmflow/surface.hpp"

namespace qmflow {
namespace {

Word W(const char* s) { return Word::parse(s); }

// Walks the segment in tiny steps and records a letter whenever floor(x) or
// floor(y) changes, ordering the two if they change within one step.
Word polyline_oracle(Segment s, int steps = 200000) {
  std::vector<Letter> out;
  Point prev = s.from;
  for (int k = 1; k <= steps; ++k) {
    const double t = static_cast<double>(k) / steps;
    const Point cur = s.from + t * (s.to - s.from);
    const double fx0 = std::floor(prev.x), fx1 = std::floor(cur.x);
    const double fy0 = std::floor(prev.y), fy1 = std::floor(cur.y);
    const bool cx = fx0 != fx1;
    const bool cy = fy0 != fy1;
    const Letter lx = cur.x > prev.x ? Letter::a() : Letter::a().inverse();
    const Letter ly = cur.y > prev.y ? Letter::b() : Letter::b().inverse();
    if (cx && cy) {
      const double line_x = std::max(fx0, fx1);
      const double line_y = std::max(fy0, fy1);
      const double tx = (line_x - prev.x) / (cur.x - prev.x);
      const double ty = (line_y - prev.y) / (cur.y - prev.y);
      if (tx < ty) {
        out.push_back(lx);
        out.push_back(ly);
      } else {
        out.push_back(ly);
        out.push_back(lx);
      }
    } else if (cx) {
      out.push_back(lx);
    } else if (cy) {
      out.push_back(ly);
    }
    prev = cur;
  }
  return reduce(out);
}

TEST(Surface, HoleBounds) {
  EXPECT_THROW(HoledTorus(0.0), std::invalid_argument);
  EXPECT_THROW(HoledTorus(0.1), std::invalid_argument);
  const HoledTorus t(0.02);
  EXPECT_TRUE(t.in_hole({0.01, -0.01}));
  EXPECT_TRUE(t.in_hole({3.99, 1.01}));
  EXPECT_FALSE(t.in_hole({0.5, 0.5}));
  EXPECT_TRUE(t.segment_meets_hole({{0.5, 0.01}, {1.5, 0.01}}));
  EXPECT_FALSE(t.segment_meets_hole({{0.5, 0.5}, {1.5, 0.5}}));
  EXPECT_TRUE(t.segment_meets_hole({{0.9, 0.9}, {1.1, 1.1}}));
}

TEST(Surface, CrossingExamples) {
  EXPECT_EQ(crossing_word({{0.5, 0.5}, {1.5, 0.5}}), W("a"));
  EXPECT_EQ(crossing_word({{0.5, 0.5}, {0.5, 0.5}}), Word::identity());
  const Segment diag{{0.9, 0.8}, {1.2, 1.3}};
  EXPECT_EQ(crossing_word(diag), polyline_oracle(diag));
  // x = 1 at t = 1/3, y = 1 at t = 0.4.
  EXPECT_EQ(crossing_word(diag), W("ab"));
  EXPECT_EQ(crossing_word({{0.5, 0.5}, {-1.5, 0.5}}), W("AA"));
}

TEST(Surface, CrossingMatchesPolylineOracle) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.5, 2.5);
  for (int i = 0; i < 200; ++i) {
    const Segment s{{u(rng), u(rng)}, {u(rng), u(rng)}};
    Word w;
    try {
      w = crossing_word(s);
    } catch (const DegenerateCrossing&) {
      continue;
    }
    EXPECT_EQ(w, polyline_oracle(s)) << s.from.x << "," << s.from.y << " -> " << s.to.x << ","
                                     << s.to.y;
  }
}

TEST(Surface, Degeneracies) {
  EXPECT_THROW(crossing_word({{1.0, 0.5}, {1.5, 0.5}}), DegenerateCrossing);
  EXPECT_THROW(crossing_word({{0.5, 0.5}, {1.0, 0.5}}), DegenerateCrossing);
  EXPECT_THROW(crossing_word({{0.5, 1.0}, {1.5, 1.0}}), DegenerateCrossing);
  EXPECT_THROW(crossing_word({{0.5, 0.5}, {1.5, 1.5}}), DegenerateCrossing);
  EXPECT_NO_THROW(crossing_word({{0.5, 1.0 + 1e-9}, {1.5, 1.0 + 1e-9}}));
}

TEST(Surface, ClosingExamples) {
  const HoledTorus t(0.02);
  const ClosingPath same = closing_word(t, {0.5, 0.25}, {2.5, -0.75});
  EXPECT_TRUE(same.word.empty());
  EXPECT_TRUE(same.chain.empty());

  const ClosingPath flat = closing_word(t, {0.7, 0.5}, {0.2, 0.5});
  EXPECT_TRUE(flat.word.empty());
  ASSERT_EQ(flat.chain.size(), 1u);
}

TEST(Surface, ClosingAvoidsHole) {
  const HoledTorus t(0.05);
  // The straight segment clips the corner piece of the hole at (1, 1).
  const Point end{0.99, 0.93};
  const Point start{0.93, 0.99};
  ASSERT_TRUE(t.segment_meets_hole({end, start}));
  const ClosingPath p = closing_word(t, end, start);
  ASSERT_EQ(p.chain.size(), 2u);
  Word oracle;
  for (const Segment& s : p.chain) {
    EXPECT_FALSE(t.segment_meets_hole(s));
    oracle = multiply(oracle, polyline_oracle(s));
  }
  EXPECT_EQ(p.word, oracle);
  EXPECT_EQ(p.chain.front().from, end);
  EXPECT_EQ(p.chain.back().to, start);
}

TEST(Surface, ClosingRandomPairsAvoidHole) {
  const HoledTorus t(0.08);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.001, 0.999);
  for (int i = 0; i < 5000; ++i) {
    const Point a{u(rng), u(rng)};
    const Point b{u(rng), u(rng)};
    if (t.in_hole(a) || t.in_hole(b)) continue;
    const ClosingPath p = closing_word(t, a, b);
    for (const Segment& s : p.chain) EXPECT_FALSE(t.segment_meets_hole(s));
    EXPECT_TRUE(p.word.empty());
  }
}

TEST(Surface, LoopAroundHoleIsCommutator) {
  const std::vector<Segment> loop{{{0.5, 0.5}, {1.5, 0.5}},
                                  {{1.5, 0.5}, {1.5, 1.5}},
                                  {{1.5, 1.5}, {0.5, 1.5}},
                                  {{0.5, 1.5}, {0.5, 0.5}}};
  EXPECT_EQ(crossing_word(std::span<const Segment>(loop)), W("abAB"));
}

TEST(Surface, WrapHelpers) {
  EXPECT_DOUBLE_EQ(wrap_unit(-0.25), 0.75);
  EXPECT_DOUBLE_EQ(wrap_unit(3.5), 0.5);
  EXPECT_GE(wrap_unit(-1e-18), 0.0);
  EXPECT_LT(wrap_unit(-1e-18), 1.0);
  EXPECT_NEAR(torus_distance({0.99, 0.5}, {0.01, 0.5}), 0.02, 1e-12);
}

}  // namespace
}  // namespace qmflow
