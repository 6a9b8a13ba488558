#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "teleop/angles.hpp"
#include "teleop/codec.hpp"
#include "teleop/errors.hpp"
#include "teleop/pilot.hpp"

using namespace teleop;
using namespace teleop::pilot;
using codec::DepthStep;
using codec::Thrust;
using mission::Gate;

namespace {

// Crossed westward (toward -y); heading index 12 is 270 degrees.
Gate westward_gate() {
  Gate g;
  g.id = 2;
  g.order = 2;
  g.center = {5.0, 4.0, 1.0};
  g.normal_x = 0.0;
  g.normal_y = -1.0;
  g.shape = mission::Circle{0.375};
  return g;
}

vehicle::VehicleState at(double x, double y, double z, double psi_deg) {
  vehicle::VehicleState s;
  s.x = x;
  s.y = y;
  s.z = z;
  s.psi = wrap_2pi(deg_to_rad(psi_deg));
  return s;
}

}  // namespace

TEST(Pilot, AlignedBehindGateGoesForward) {
  const auto c = decide(at(5.0, 6.0, 1.0, 270.0), westward_gate(), PilotConfig{});
  EXPECT_EQ(c.heading_idx, 12);
  EXPECT_EQ(c.thrust, Thrust::Forward);
  EXPECT_EQ(c.depth, DepthStep::Hold);
}

TEST(Pilot, TooDeepRaises) {
  EXPECT_EQ(decide(at(5.0, 6.0, 1.5, 270.0), westward_gate(), PilotConfig{}).depth, DepthStep::Raise);
  EXPECT_EQ(decide(at(5.0, 6.0, 0.5, 270.0), westward_gate(), PilotConfig{}).depth, DepthStep::Lower);
  EXPECT_EQ(decide(at(5.0, 6.0, 1.04, 270.0), westward_gate(), PilotConfig{}).depth, DepthStep::Hold);
}

TEST(Pilot, LargeHeadingErrorStops) {
  const auto c = decide(at(5.0, 6.0, 1.0, 210.0), westward_gate(), PilotConfig{});
  EXPECT_EQ(c.thrust, Thrust::Stop);
  EXPECT_EQ(c.heading_idx, 12);
}

TEST(Pilot, DecisionTable) {
  const PilotConfig cfg;
  const Gate g = westward_gate();
  struct Row {
    double y, z, psi;
    Thrust thrust;
  };
  const Row rows[] = {
      {6.0, 1.0, 270.0, Thrust::Forward},      // far, aligned
      {6.0, 1.0, 262.0, Thrust::Forward},      // within the alignment tolerance
      {6.0, 1.0, 250.0, Thrust::Stop},         // outside it
      {4.8, 1.0, 270.0, Thrust::SlowForward},  // near, depth ready
      {4.8, 1.4, 270.0, Thrust::Stop},         // near, depth not ready
      {6.0, 1.4, 270.0, Thrust::Forward},      // far: depth is fixed on the way
  };
  for (const auto& r : rows) EXPECT_EQ(decide(at(5.0, r.y, r.z, r.psi), g, cfg).thrust, r.thrust) << r.y << " " << r.psi;
}

TEST(Pilot, OffAxisCloseToPlaneBacksOut) {
  // Half a metre off the axis, 0.3 m before the plane: heading back out
  // toward the approach point, not sideways across the aperture.
  const AimPoint a = aim_point(at(5.5, 4.3, 1.0, 270.0), westward_gate(), PilotConfig{});
  EXPECT_FALSE(a.through);
  EXPECT_GT(a.y, 4.3);
}

TEST(Pilot, PastThePlaneGoesAround) {
  // On the exit side, right behind the aperture: the aim point must leave
  // the aperture's footprint laterally.
  const AimPoint a = aim_point(at(5.0, 3.5, 1.0, 90.0), westward_gate(), PilotConfig{});
  EXPECT_FALSE(a.through);
  EXPECT_GT(std::abs(a.x - 5.0), 0.375);
}

TEST(Pilot, CompassOffsetShiftsHeadingCommand) {
  PilotConfig cfg;
  cfg.compass_offset = deg_to_rad(45.0);  // sensor frame reads 45 degrees more
  const auto c = decide(at(5.0, 6.0, 1.0, 270.0), westward_gate(), cfg);
  EXPECT_EQ(c.heading_idx, 14);  // 315 degrees
}

TEST(Pilot, AlwaysValidCommand) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> x(0.0, 12.5), y(0.0, 8.0), z(0.0, 2.1), ang(-10.0, 10.0), r(0.1, 1.0);
  std::bernoulli_distribution circle(0.5);
  for (int i = 0; i < 20000; ++i) {
    Gate g;
    g.id = 1;
    g.order = 1;
    g.center = {x(rng), y(rng), z(rng)};
    const double a = ang(rng);
    g.normal_x = std::cos(a);
    g.normal_y = std::sin(a);
    if (circle(rng))
      g.shape = mission::Circle{r(rng)};
    else
      g.shape = mission::Rectangle{r(rng), r(rng)};
    auto s = at(x(rng), y(rng), z(rng), rad_to_deg(ang(rng)));
    if (i % 100 == 0) s.x = g.center.x, s.y = g.center.y;  // degenerate: on the gate
    const auto c = decide(s, g, PilotConfig{});
    EXPECT_NO_THROW(codec::validate(c));
  }
}

TEST(Pilot, ConfigValidation) {
  PilotConfig cfg;
  cfg.input_rate = 0.0;
  EXPECT_THROW(cfg.validate(), ContractViolation);
}
