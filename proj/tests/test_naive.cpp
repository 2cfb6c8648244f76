#include <gtest/gtest.h>

#include "growelim/generate.hpp"
#include "growelim/naive.hpp"
#include "oracles.hpp"

namespace growelim {
namespace {

using testing::disks;

Instance three_disks() { return disks({0, 0, 4, 0, 1, 0}, {1, 1, 1}); }

TEST(Naive, ThreeDisks) {
  const EliminationSchedule s = solve_naive(three_disks());
  ASSERT_EQ(s.records.size(), 2u);
  EXPECT_EQ(s.records[0], (EliminationRecord{2, 0, 0.5}));
  EXPECT_EQ(s.records[1], (EliminationRecord{1, 0, 2.0}));
  EXPECT_EQ(s.survivor, 0u);
  EXPECT_EQ(s, solve_simulation(three_disks()));
}

TEST(Naive, SingleShape) {
  const EliminationSchedule s = solve_naive(disks({0.3, 0.7}, {2}));
  EXPECT_TRUE(s.records.empty());
  EXPECT_EQ(s.survivor, 0u);
  EXPECT_TRUE(solve_simulation(disks({0.3, 0.7}, {2})).records.empty());
}

TEST(Naive, SortingConstructionTwoColumns) {
  const Instance inst = disks({2, 0, 4, 0, 2, 1, 4, 1}, {1, 1, 2, 3});
  const EliminationSchedule s = solve_naive(inst);
  ASSERT_GE(s.records.size(), 2u);
  EXPECT_EQ(s.records[0].victim, 3u);
  EXPECT_EQ(s.records[0].eliminator, 1u);
  EXPECT_DOUBLE_EQ(s.records[0].time, 1.0 / 4.0);
  EXPECT_EQ(s.records[1].victim, 2u);
  EXPECT_EQ(s.records[1].eliminator, 0u);
  EXPECT_DOUBLE_EQ(s.records[1].time, 1.0 / 3.0);
}

TEST(Simulation, TwoDisks) {
  const EliminationSchedule s = solve_simulation(disks({0, 0, 3, 0}, {1, 2}));
  ASSERT_EQ(s.records.size(), 1u);
  EXPECT_EQ(s.records[0], (EliminationRecord{1, 0, 1.0}));
}

TEST(Simulation, MatchesNaiveOnUniformDisks) {
  const Instance inst = testing::uniform(200, 7);
  EXPECT_EQ(solve_simulation(inst), solve_naive(inst));
}

TEST(Naive, MatchesLemmaOneOracle) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    for (ShapeKind shape : {ShapeKind::disk, ShapeKind::square, ShapeKind::rect}) {
      const Instance inst = testing::uniform(60, seed, 16.0, shape);
      const EliminationSchedule want = testing::lemma1_schedule(inst);
      EXPECT_EQ(solve_naive(inst), want);
      EXPECT_EQ(solve_naive_serial(inst), want);
      EXPECT_EQ(solve_simulation(inst), want);
    }
  }
}

TEST(Naive, BallsAndBoxes) {
  GeneratorParams p;
  p.n = 80;
  p.seed = 4;
  p.rate_max = 4.0;
  p.dimension = 3;
  for (ShapeKind shape : {ShapeKind::ball, ShapeKind::box}) {
    p.shape = shape;
    const Instance inst = generate(p);
    EXPECT_EQ(solve_naive(inst), testing::lemma1_schedule(inst));
    EXPECT_EQ(solve_simulation(inst), solve_naive(inst));
  }
}

TEST(Naive, MonotoneProperty) {
  const Instance inst = testing::uniform(150, 9, 16.0);
  const EliminationSchedule s = solve_naive(inst);
  const std::vector<TouchTime> t = elimination_times(s, inst.size());
  for (const EliminationRecord& r : s.records) {
    for (Index j = 0; j < r.victim; ++j) {
      const TouchTime c = touch_time(inst, r.victim, j);
      if (c < r.time) EXPECT_LT(t[j], c) << "victim " << r.victim << " j " << j;
    }
  }
}

TEST(Naive, AppendingLowestPriorityShapeKeepsPrefix) {
  const Instance big = testing::uniform(120, 17, 8.0);
  const std::size_t n = 119;
  const Instance small(big.kind(), 2,
                       std::vector<double>(big.centers().begin(), big.centers().begin() + 2 * n),
                       std::vector<double>(big.rates().begin(), big.rates().begin() + n));
  const std::vector<TouchTime> a = elimination_times(solve_naive(small), n);
  const std::vector<TouchTime> b = elimination_times(solve_naive(big), n + 1);
  for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(a[i], b[i]);
}

TEST(Naive, RejectsInvalidInstances) {
  EXPECT_THROW(solve_naive(disks({0, 0, 0, 0}, {1, 1})), InstanceError);
  EXPECT_THROW(solve_simulation(disks({0, 0, 1, 0}, {1, -1})), InstanceError);
}

TEST(Simulation, RefusesHugeInputs) {
  GeneratorParams p;
  p.n = kSimulationLimit + 1;
  EXPECT_THROW(solve_simulation(generate(p)), InstanceError);
}

}  // namespace
}  // namespace growelim
