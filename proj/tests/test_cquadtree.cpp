#include <gtest/gtest.h>

#include <set>

#include "growelim/cquadtree.hpp"
#include "growelim/naive.hpp"
#include "oracles.hpp"

namespace growelim {
namespace {

using testing::disks;

struct Trees {
  Quadtree q;
  CompressedQuadtree qc;
};

Trees trees_of(const Instance& inst) {
  const std::vector<UnitPoint> pts = Normalization::fit(inst).unit_centers(inst);
  Quadtree q = Quadtree::build(pts);
  CompressedQuadtree qc = CompressedQuadtree::from_quadtree(q);
  return {std::move(q), std::move(qc)};
}

std::set<std::pair<int, int>> as_set(const CandidatePairs& p, std::size_t nodes) {
  std::set<std::pair<int, int>> out;
  for (std::size_t v = 0; v < nodes; ++v)
    for (const std::int32_t w : p.of(static_cast<std::int32_t>(v)))
      out.insert({static_cast<int>(v), w});
  return out;
}

// Deepest compressed node whose cell contains `cell`, by linear scan.
std::int32_t lowest_by_scan(const CompressedQuadtree& t, const Cell& cell) {
  std::int32_t best = -1;
  for (std::size_t v = 0; v < t.size(); ++v) {
    const auto& node = t.node(static_cast<std::int32_t>(v));
    if (node.is_zero() || !node.cell.contains(cell)) continue;
    if (best < 0 || node.cell.level > t.node(best).cell.level)
      best = static_cast<std::int32_t>(v);
  }
  return best;
}

TEST(Compressed, TwoCornerPoints) {
  const std::vector<UnitPoint> pts{{0.1, 0.1}, {0.9, 0.9}};
  const Quadtree q = Quadtree::build(pts);
  const CompressedQuadtree qc = CompressedQuadtree::from_quadtree(q);
  // Root, its four level-1 children, the two level-2 leaves reached through
  // compressed edges and two zero nodes.
  EXPECT_EQ(qc.size(), 9u);
  for (Index i = 0; i < 2; ++i) {
    const std::int32_t z = qc.zero_node_of(i);
    ASSERT_GE(z, 0);
    EXPECT_TRUE(qc.node(z).is_zero());
    EXPECT_TRUE(qc.compressed_edge(z));
    const std::int32_t leaf = qc.node(z).parent;
    EXPECT_EQ(qc.node(leaf).cell, q.node(q.leaf_of(i)).cell);
    EXPECT_TRUE(qc.compressed_edge(leaf));
  }
  EXPECT_EQ(qc.branching_cells(), (std::vector<Cell>{{0, 0, 0}}));
  const CompressedQuadtree direct = CompressedQuadtree::direct(pts);
  EXPECT_EQ(direct.structure(), qc.structure());
  EXPECT_EQ(direct.branching_cells(), qc.branching_cells());
}

TEST(Compressed, SinglePoint) {
  const std::vector<UnitPoint> pts{{0.4, 0.2}};
  const CompressedQuadtree qc = CompressedQuadtree::from_quadtree(Quadtree::build(pts));
  ASSERT_EQ(qc.size(), 2u);
  EXPECT_EQ(qc.node(qc.root()).child_count, 1);
  EXPECT_EQ(qc.node(qc.root()).cell, (Cell{0, 0, 0}));
  EXPECT_EQ(qc.zero_node_of(0), 1);
  EXPECT_TRUE(qc.compressed_edge(1));
  EXPECT_TRUE(qc.branching_cells().empty());
  EXPECT_EQ(CompressedQuadtree::direct(pts).structure(), qc.structure());
  EXPECT_TRUE(compute_cnp_c(qc, 1.0).partners.empty());
}

TEST(Compressed, InternalNodesHaveOneOrFourChildren) {
  const auto [q, qc] = trees_of(testing::uniform(64, 1));
  std::size_t zero = 0;
  for (std::size_t v = 0; v < qc.size(); ++v) {
    const auto& node = qc.node(static_cast<std::int32_t>(v));
    if (node.is_zero()) {
      ++zero;
      EXPECT_EQ(node.child_count, 0);
      EXPECT_TRUE(qc.node(node.parent).leaf_cell);
      continue;
    }
    if (node.child_count == 0) {
      EXPECT_TRUE(node.leaf_cell) << "node " << v;
      continue;
    }
    EXPECT_TRUE(node.child_count == 1 || node.child_count == 4) << "node " << v;
    for (int c = 0; c < node.child_count; ++c) {
      const auto& child = qc.node(node.children[c]);
      EXPECT_EQ(child.parent, static_cast<std::int32_t>(v));
      if (!child.is_zero()) EXPECT_TRUE(node.cell.contains(child.cell));
    }
  }
  EXPECT_EQ(zero, 64u);
  EXPECT_LE(qc.size(), 10 * 64 + 2u);
}

TEST(Compressed, SurvivingCellsAreQuadtreeCells) {
  const auto [q, qc] = trees_of(testing::uniform(300, 4, 1.0, ShapeKind::disk,
                                                 GeneratorKind::cluster));
  for (std::size_t v = 0; v < qc.size(); ++v) {
    const auto& node = qc.node(static_cast<std::int32_t>(v));
    if (node.is_zero()) continue;
    EXPECT_GE(q.find(node.cell), 0);
    EXPECT_EQ(qc.find(node.cell), static_cast<std::int32_t>(v));
  }
  for (std::size_t v = 0; v < q.size(); v += 7) {
    const Cell c = q.node(static_cast<std::int32_t>(v)).cell;
    EXPECT_EQ(qc.lowest_surviving(c), lowest_by_scan(qc, c));
  }
  EXPECT_LE(qc.depth(), q.depth() + 1);
}

TEST(Compressed, DirectBuildMatchesDerived) {
  for (const auto& [n, seed] : std::vector<std::pair<std::size_t, std::uint64_t>>{
           {1024, 3}, {2, 9}, {500, 10}}) {
    for (GeneratorKind kind :
         {GeneratorKind::uniform, GeneratorKind::cluster, GeneratorKind::grid}) {
      const Instance inst = testing::uniform(n, seed, 1.0, ShapeKind::disk, kind);
      const std::vector<UnitPoint> pts = Normalization::fit(inst).unit_centers(inst);
      const CompressedQuadtree a = CompressedQuadtree::from_quadtree(Quadtree::build(pts));
      const CompressedQuadtree b = CompressedQuadtree::direct(pts);
      EXPECT_EQ(a.branching_cells(), b.branching_cells());
      EXPECT_EQ(a.structure(), b.structure());
      EXPECT_EQ(a.size(), b.size());
    }
  }
}

TEST(Compressed, DirectRejectsDuplicates) {
  const std::vector<UnitPoint> pts{{0.5, 0.5}, {0.5, 0.5}};
  EXPECT_THROW(CompressedQuadtree::direct(pts), InstanceError);
}

// CNP_C(v) = { pi(v') : (v, v') in CNP(v), |v| <= |pi(v')| } with pi(v') not
// an ancestor of v, symmetrised; v ranges over surviving cells.
std::set<std::pair<int, int>> cnp_c_by_definition(const Trees& t, double delta) {
  std::set<std::pair<int, int>> want;
  const CandidatePairs cnp = compute_cnp(t.q, delta);
  for (std::size_t a = 0; a < t.q.size(); ++a) {
    const Cell ca = t.q.node(static_cast<std::int32_t>(a)).cell;
    const std::int32_t pa = t.qc.find(ca);
    if (pa < 0) continue;
    for (const std::int32_t b : cnp.of(static_cast<std::int32_t>(a))) {
      const std::int32_t pb = t.qc.lowest_surviving(t.q.node(b).cell);
      const Cell cpb = t.qc.node(pb).cell;
      if (cpb.level > ca.level || cpb.contains(ca)) continue;
      want.insert({pa, pb});
      want.insert({pb, pa});
    }
  }
  return want;
}

TEST(CnpC, MatchesDefinition) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const double delta = std::vector<double>{1, 2, 16, 256}[seed % 4];
    const Trees t = trees_of(testing::uniform(40 + 11 * seed, seed, 1.0, ShapeKind::disk,
                                              static_cast<GeneratorKind>(seed % 3)));
    EXPECT_EQ(as_set(compute_cnp_c(t.qc, delta), t.qc.size()), cnp_c_by_definition(t, delta))
        << "seed " << seed;
  }
}

TEST(CnpC, TwoCornerLeaves) {
  const std::vector<UnitPoint> pts{{0.1, 0.1}, {0.9, 0.9}};
  const CompressedQuadtree qc = CompressedQuadtree::from_quadtree(Quadtree::build(pts));
  const std::int32_t a = qc.node(qc.zero_node_of(0)).parent;
  const std::int32_t b = qc.node(qc.zero_node_of(1)).parent;
  // Level-2 cells (0,0) and (3,3): gap sqrt(2)/2 against 2 (|a| + |b|) = sqrt(2).
  const double gap = std::hypot(0.5, 0.5);
  const bool expected = gap <= 2 * (qc.node(a).cell.diameter() + qc.node(b).cell.diameter());
  EXPECT_TRUE(expected);
  const CandidatePairs p = compute_cnp_c(qc, 1.0);
  const auto partners = p.of(a);
  EXPECT_EQ(std::find(partners.begin(), partners.end(), b) != partners.end(), expected);
}

TEST(CnpC, CoversEveryUncompressedPair) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const double delta = seed % 2 ? 1.0 : 16.0;
    const Trees t = trees_of(testing::uniform(128, seed));
    const std::set<std::pair<int, int>> have =
        as_set(compute_cnp_c(t.qc, delta), t.qc.size());
    const CandidatePairs cnp = compute_cnp(t.q, delta);
    std::size_t checked = 0;
    for (std::size_t a = 0; a < t.q.size(); ++a) {
      const std::int32_t pa = t.qc.lowest_surviving(t.q.node(static_cast<std::int32_t>(a)).cell);
      for (const std::int32_t b : cnp.of(static_cast<std::int32_t>(a))) {
        const std::int32_t pb = t.qc.lowest_surviving(t.q.node(b).cell);
        const Cell ca = t.qc.node(pa).cell, cb = t.qc.node(pb).cell;
        // Pairs that collapse onto related nodes carry no witness.
        if (ca.contains(cb) || cb.contains(ca)) continue;
        ++checked;
        EXPECT_TRUE(have.count({pa, pb}) || have.count({pb, pa}))
            << "seed " << seed << " nodes " << pa << ", " << pb;
      }
    }
    EXPECT_GT(checked, 0u);
  }
}

TEST(ResolveOccupant, Rules) {
  const std::vector<UnitPoint> pts{{0.1, 0.1}, {0.9, 0.9}};
  const CompressedQuadtree qc = CompressedQuadtree::from_quadtree(Quadtree::build(pts));
  std::vector<Index> marks(qc.size(), kNoIndex);
  const std::int32_t z0 = qc.zero_node_of(0), z1 = qc.zero_node_of(1);
  const std::int32_t leaf0 = qc.node(z0).parent, leaf1 = qc.node(z1).parent;
  marks[leaf0] = 0;
  marks[z1] = 1;
  EXPECT_EQ(resolve_occupant(qc, marks, leaf0), Index{0});
  EXPECT_EQ(resolve_occupant(qc, marks, leaf1), Index{1});
  EXPECT_EQ(resolve_occupant(qc, marks, qc.root()), std::nullopt);
  marks[qc.root()] = 0;
  EXPECT_EQ(resolve_occupant(qc, marks, qc.root()), Index{0});
}

TEST(SolveCompressed, SmallExamples) {
  const Instance three = disks({0, 0, 4, 0, 1, 0}, {1, 1, 1});
  const EliminationSchedule two_want{{{1, 0, 1.0}}, 0};
  for (CompressedBuild build : {CompressedBuild::from_quadtree, CompressedBuild::direct}) {
    EXPECT_EQ(solve_cquadtree(three, build), solve_naive(three));
    EXPECT_EQ(solve_cquadtree(disks({0, 0, 3, 0}, {1, 2}), build), two_want);
    EXPECT_TRUE(solve_cquadtree(disks({2, 2}, {1}), build).records.empty());
  }
}

TEST(SolveCompressed, MatchesQuadtreeAndNaive) {
  const Instance inst = testing::uniform(512, 5, 256.0);
  const EliminationSchedule want = solve_naive(inst);
  EXPECT_EQ(solve_quadtree(inst), want);
  EXPECT_EQ(solve_cquadtree(inst, CompressedBuild::from_quadtree), want);
  EXPECT_EQ(solve_cquadtree(inst, CompressedBuild::direct), want);
}

TEST(SolveCompressed, MatchesNaiveOnClusters) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const Instance inst = testing::uniform(200, seed, seed % 2 ? 2.0 : 256.0,
                                           ShapeKind::disk, GeneratorKind::cluster);
    EXPECT_EQ(solve_cquadtree(inst), solve_naive(inst)) << "seed " << seed;
  }
}

TEST(SolveCompressed, CandidateDisksIncludeUncompressedOnes) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Instance inst = testing::uniform(20 + 10 * seed, seed, 16.0);
    SolveDiagnostics a, b;
    a.log_pairs = b.log_pairs = true;
    solve_quadtree(inst, &a);
    solve_cquadtree(inst, CompressedBuild::from_quadtree, &b);
    EXPECT_TRUE(std::includes(b.examined.begin(), b.examined.end(), a.examined.begin(),
                              a.examined.end()))
        << "seed " << seed;
  }
}

TEST(SolveCompressed, RejectsOtherShapes) {
  EXPECT_THROW(solve_cquadtree(testing::squares({0, 0, 1, 1}, {1, 1})), InstanceError);
}

}  // namespace
}  // namespace growelim
