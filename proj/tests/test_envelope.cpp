#include <gtest/gtest.h>

#include <random>

#include "growelim/envelope.hpp"
#include "oracles.hpp"

namespace growelim {
namespace {

using testing::close;

double min_by_scan(std::span<const EnvelopeSegment> segs, double t) {
  double best = kNever;
  for (const EnvelopeSegment& s : segs)
    if (t <= s.end) best = std::min(best, s.at(t));
  return best;
}

std::optional<RayHit> ray_by_scan(std::span<const EnvelopeSegment> segs, double origin,
                                  double rate) {
  std::optional<RayHit> best;
  for (const EnvelopeSegment& s : segs) {
    const double t = (s.intercept - origin) / (s.rate + rate);
    if (t > s.end) continue;
    if (!best || t < best->time || (t == best->time && s.owner < best->owner))
      best = RayHit{s.owner, t};
  }
  return best;
}

std::vector<EnvelopeSegment> random_segments(std::mt19937_64& rng, std::size_t m) {
  std::uniform_real_distribution<double> y(0.0, 10.0), v(0.1, 5.0), end(0.05, 4.0);
  std::vector<EnvelopeSegment> segs;
  for (std::size_t j = 0; j < m; ++j)
    segs.push_back({static_cast<Index>(j), y(rng), v(rng), rng() % 5 == 0 ? kNever : end(rng)});
  return segs;
}

TEST(Envelope, TwoSegments) {
  const std::vector<EnvelopeSegment> segs{{1, 4.0, 1.0, kNever}, {2, 3.0, 2.0, 1.0}};
  const LowerEnvelope env = LowerEnvelope::build(segs);
  ASSERT_EQ(env.size(), 2u);
  EXPECT_EQ(env.pieces()[0].owner, 2u);
  EXPECT_EQ(env.pieces()[0].begin, 0.0);
  EXPECT_EQ(env.pieces()[0].end, 1.0);
  EXPECT_EQ(env.pieces()[1].owner, 1u);
  EXPECT_EQ(env.pieces()[1].begin, 1.0);
  EXPECT_EQ(env.pieces()[1].end, kNever);
  for (int k = 0; k <= 40; ++k) {
    const double t = 0.1 * k;
    EXPECT_DOUBLE_EQ(env.value(t), min_by_scan(segs, t));
  }
  EXPECT_EQ(env.ray_shoot(0.0, 1.0), (RayHit{2, 1.0}));
}

TEST(Envelope, SingleSegment) {
  const std::vector<EnvelopeSegment> segs{{0, 1.0, 1.0, 3.0}};
  const LowerEnvelope env = LowerEnvelope::build(segs);
  ASSERT_EQ(env.size(), 1u);
  EXPECT_EQ(env.horizon(), 3.0);
  EXPECT_EQ(env.value(4.0), kNever);
  EXPECT_EQ(env.ray_shoot(0.0, 1.0), (RayHit{0, 0.5}));
}

TEST(Envelope, RayMissesEndedSegment) {
  const std::vector<EnvelopeSegment> segs{{0, 5.0, 1.0, 1.0}};
  EXPECT_EQ(LowerEnvelope::build(segs).ray_shoot(0.0, 1.0), std::nullopt);
}

TEST(Envelope, Errors) {
  EXPECT_THROW(LowerEnvelope::build({}), std::invalid_argument);
  const std::vector<EnvelopeSegment> bad_rate{{0, 1.0, 0.0, 1.0}};
  EXPECT_THROW(LowerEnvelope::build(bad_rate), std::invalid_argument);
  const std::vector<EnvelopeSegment> bad_end{{0, 1.0, 1.0, 0.0}};
  EXPECT_THROW(LowerEnvelope::build(bad_end), std::invalid_argument);
}

TEST(Envelope, RandomSetsMatchPointwiseMin) {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 50; ++round) {
    const std::size_t m = 1 + rng() % 80;
    const auto segs = random_segments(rng, m);
    const LowerEnvelope env = LowerEnvelope::build(segs);
    EXPECT_LE(env.size(), 2 * m - 1);
    double horizon = 0.0;
    for (const auto& s : segs) horizon = std::max(horizon, s.end);
    EXPECT_EQ(env.horizon(), horizon);
    for (std::size_t p = 1; p < env.size(); ++p)
      EXPECT_EQ(env.pieces()[p].begin, env.pieces()[p - 1].end);
    for (int k = 0; k < 1000; ++k) {
      const double t = 4.5 * k / 999.0;
      const double want = min_by_scan(segs, t);
      const double got = env.value(t);
      if (want == kNever) {
        EXPECT_EQ(got, kNever);
      } else {
        EXPECT_NEAR(got, want, 1e-12 * std::max(1.0, std::abs(want))) << "t " << t;
      }
    }
  }
}

TEST(Envelope, RayShootMatchesScan) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> rate(0.1, 5.0);
  for (int round = 0; round < 200; ++round) {
    const auto segs = random_segments(rng, 1 + rng() % 60);
    const LowerEnvelope env = LowerEnvelope::build(segs);
    for (int q = 0; q < 20; ++q) {
      const double origin = -std::uniform_real_distribution<double>(0.0, 5.0)(rng);
      const double v = rate(rng);
      const auto want = ray_by_scan(segs, origin, v);
      const auto got = env.ray_shoot(origin, v);
      ASSERT_EQ(got.has_value(), want.has_value());
      if (!want) continue;
      EXPECT_EQ(got->owner, want->owner);
      EXPECT_TRUE(close(got->time, want->time, 1e-12));
    }
  }
}

}  // namespace
}  // namespace growelim
