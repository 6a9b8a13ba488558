#include <gtest/gtest.h>

#include <random>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "teleop/gate.hpp"

using namespace teleop::mission;

namespace {

Gate circle_gate() {
  Gate g;
  g.id = 2;
  g.order = 1;
  g.center = {5.0, 4.0, 1.0};
  g.normal_x = 0.0;
  g.normal_y = -1.0;
  g.shape = Circle{0.375};
  return g;
}

Gate rect_gate() {
  Gate g;
  g.id = 3;
  g.order = 1;
  g.center = {7.0, 4.0, 1.65};
  g.normal_x = 0.6;
  g.normal_y = 0.8;
  g.shape = Rectangle{1.1, 0.9};
  return g;
}

Crossing to_crossing(oracle::Verdict v) {
  switch (v) {
    case oracle::Verdict::Pass: return Crossing::Pass;
    case oracle::Verdict::WrongSide: return Crossing::WrongSide;
    case oracle::Verdict::MissNear: return Crossing::MissNear;
    case oracle::Verdict::None: break;
  }
  return Crossing::None;
}

}  // namespace

TEST(Gate, StraightThroughCenter) {
  const Gate g = circle_gate();
  // Normal points to -y, so +normal travel is decreasing y.
  EXPECT_EQ(detect_crossing({5.0, 4.2, 1.0}, {5.0, 3.8, 1.0}, g), Crossing::Pass);
  EXPECT_EQ(detect_crossing({5.0, 3.8, 1.0}, {5.0, 4.2, 1.0}, g), Crossing::WrongSide);
}

TEST(Gate, OffsetPaths) {
  const Gate g = circle_gate();
  const double r = 0.375;
  EXPECT_EQ(detect_crossing({5.0 + r + 0.1, 4.2, 1.0}, {5.0 + r + 0.1, 3.8, 1.0}, g), Crossing::MissNear);
  EXPECT_EQ(detect_crossing({5.0 + 3 * r, 4.2, 1.0}, {5.0 + 3 * r, 3.8, 1.0}, g), Crossing::None);
  EXPECT_EQ(detect_crossing({5.0, 4.2, 1.0 + r + 0.1}, {5.0, 3.8, 1.0 + r + 0.1}, g), Crossing::MissNear);
}

TEST(Gate, NoSideChangeIsNone) {
  const Gate g = circle_gate();
  EXPECT_EQ(detect_crossing({5.0, 4.5, 1.0}, {5.0, 4.1, 1.0}, g), Crossing::None);
  // In-plane motion never counts.
  EXPECT_EQ(detect_crossing({4.0, 4.0, 1.0}, {6.0, 4.0, 1.0}, g), Crossing::None);
  EXPECT_EQ(detect_crossing({5.0, 4.0, 1.0}, {5.0, 4.0, 1.0}, g), Crossing::None);
}

TEST(Gate, LandingOnPlaneCountsOnceWhenLeaving) {
  const Gate g = circle_gate();
  EXPECT_EQ(detect_crossing({5.0, 4.1, 1.0}, {5.0, 4.0, 1.0}, g), Crossing::None);
  EXPECT_EQ(detect_crossing({5.0, 4.0, 1.0}, {5.0, 3.9, 1.0}, g), Crossing::Pass);
}

TEST(Gate, RectangleMissNearAndPass) {
  Gate g = rect_gate();
  g.normal_x = 1.0;
  g.normal_y = 0.0;
  EXPECT_EQ(detect_crossing({6.9, 4.5, 1.65}, {7.1, 4.5, 1.65}, g), Crossing::Pass);
  EXPECT_EQ(detect_crossing({6.9, 4.0, 2.2}, {7.1, 4.0, 2.2}, g), Crossing::MissNear);
  EXPECT_EQ(detect_crossing({6.9, 5.0, 1.65}, {7.1, 5.0, 1.65}, g), Crossing::MissNear);
  EXPECT_EQ(detect_crossing({6.9, 6.3, 1.65}, {7.1, 6.3, 1.65}, g), Crossing::None);
}

TEST(Gate, AgreesWithSubdivisionOracle) {
  std::mt19937_64 rng(17);
  for (const Gate& g : {circle_gate(), rect_gate()}) {
    int disagreements = 0;
    int crossings = 0;
    for (int i = 0; i < 10000; ++i) {
      const auto [a, b] = gen::segment_near(rng, g);
      const auto expected = to_crossing(oracle::crossing_by_subdivision(a, b, g));
      const auto got = detect_crossing(a, b, g);
      if (expected != got) ++disagreements;
      if (got != Crossing::None) ++crossings;
    }
    EXPECT_EQ(disagreements, 0);
    EXPECT_GT(crossings, 1000);
  }
}
