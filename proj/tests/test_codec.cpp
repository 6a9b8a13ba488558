#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "teleop/codec.hpp"
#include "teleop/errors.hpp"

using namespace teleop;
using namespace teleop::codec;

namespace {

Command cmd(int h, int t, int d) { return {h, thrust_from_index(t), depth_from_index(d)}; }

}  // namespace

TEST(Codec, LayoutExamples) {
  EXPECT_EQ(encode(cmd(0, 2, 1)).value(), 7);
  EXPECT_EQ(encode(cmd(15, 4, 2)).value(), 239);
  EXPECT_EQ(encode(cmd(0, 0, 0)).value(), 0);
  EXPECT_EQ(decode(std::uint8_t{7}), cmd(0, 2, 1));
  EXPECT_EQ(decode(std::uint8_t{239}), cmd(15, 4, 2));
}

TEST(Codec, ReservedBytesRejected) {
  for (int b = 240; b <= 255; ++b) {
    EXPECT_THROW(decode(static_cast<std::uint8_t>(b)), InvalidByte) << b;
    EXPECT_THROW(EncodedByte::from_raw(static_cast<std::uint8_t>(b)), InvalidByte) << b;
  }
}

TEST(Codec, InvalidCommandRejected) {
  EXPECT_THROW(encode(Command{16, Thrust::Stop, DepthStep::Hold}), InvalidCommand);
  EXPECT_THROW(encode(Command{-1, Thrust::Stop, DepthStep::Hold}), InvalidCommand);
  EXPECT_THROW(encode(Command{0, static_cast<Thrust>(5), DepthStep::Hold}), InvalidCommand);
  EXPECT_THROW(encode(Command{0, Thrust::Stop, static_cast<DepthStep>(3)}), InvalidCommand);
  EXPECT_THROW(thrust_from_index(5), InvalidCommand);
  EXPECT_THROW(depth_from_index(-1), InvalidCommand);
}

TEST(Codec, ExhaustiveBijectionAgainstCountingOracle) {
  int prev = -1;
  for (int h = 0; h < 16; ++h)
    for (int t = 0; t < 5; ++t)
      for (int d = 0; d < 3; ++d) {
        const auto c = cmd(h, t, d);
        const int b = encode(c).value();
        EXPECT_EQ(b, oracle::ordinal_by_counting(h, t, d));
        EXPECT_GT(b, prev);  // strictly monotone in lexicographic order
        prev = b;
        EXPECT_EQ(decode(encode(c)), c);
      }
  for (int b = 0; b < 240; ++b) {
    const auto raw = static_cast<std::uint8_t>(b);
    EXPECT_EQ(encode(decode(raw)).value(), raw);
  }
}

TEST(Codec, HeadingOf) {
  EXPECT_DOUBLE_EQ(heading_of(0), 0.0);
  EXPECT_DOUBLE_EQ(heading_of(4), 90.0);
  EXPECT_DOUBLE_EQ(heading_of(15), 337.5);
  EXPECT_THROW(heading_of(16), InvalidCommand);
  EXPECT_THROW(heading_of(-1), InvalidCommand);
}

TEST(Codec, NearestHeading) {
  EXPECT_EQ(nearest_heading_idx(0.0), 0);
  EXPECT_EQ(nearest_heading_idx(11.0), 0);
  EXPECT_EQ(nearest_heading_idx(12.0), 1);
  EXPECT_EQ(nearest_heading_idx(-10.0), 0);
  EXPECT_EQ(nearest_heading_idx(-12.0), 15);
  EXPECT_EQ(nearest_heading_idx(359.0), 0);
  EXPECT_EQ(nearest_heading_idx(90.0 + 720.0), 4);
}
