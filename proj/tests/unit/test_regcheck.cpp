#include <gtest/gtest.h>

#include "hreg/errors.hpp"
#include "hreg/random.hpp"
#include "hreg/regcheck.hpp"
#include "oracle.hpp"

using namespace hreg;

namespace {

Rational r(std::int64_t p, std::int64_t q) { return make_rational(p, q); }

CheckParams exhaustive() {
  CheckParams p;
  p.mode = CheckMode::Exhaustive;
  return p;
}

BipartiteGraph block_diagonal(std::uint32_t n) {
  std::vector<Edge> e;
  for (std::uint32_t l = 0; l < n; ++l)
    for (std::uint32_t x = 0; x < n; ++x)
      if ((l < n / 2) == (x < n / 2)) e.push_back({l, x});
  return BipartiteGraph({0, n}, {1, n}, e);
}

BipartiteGraph random_graph(Rng& rng, std::uint32_t a, std::uint32_t b, std::uint64_t num,
                            std::uint64_t den) {
  std::vector<Edge> e;
  for (std::uint32_t l = 0; l < a; ++l)
    for (std::uint32_t x = 0; x < b; ++x)
      if (rng.chance(num, den)) e.push_back({l, x});
  return BipartiteGraph({0, a}, {1, b}, e);
}

bool is_half_split(const PairWitness& w, std::uint32_t n) {
  auto all_below = [&](const VertexSet& s) { return s.back() < n / 2; };
  auto all_above = [&](const VertexSet& s) { return s.front() >= n / 2; };
  return (all_below(w.aSub) && all_above(w.bSub)) || (all_above(w.aSub) && all_below(w.bSub));
}

}  // namespace

TEST(EpsRegular, CompleteIsCertified) {
  const auto g = BipartiteGraph::complete({0, 7}, {1, 9});
  EXPECT_TRUE(check_eps_regular(g, r(1, 10), exhaustive()).certified());
}

TEST(EpsRegular, BlockDiagonalHasCrossWitness) {
  const auto g = block_diagonal(8);
  const Verdict v = check_eps_regular(g, r(1, 4), exhaustive());
  ASSERT_TRUE(v.irregular());
  EXPECT_EQ(v.method, CheckMethod::Exhaustive);
  EXPECT_TRUE(witness_violates_eps(g, *v.witness, r(1, 4)));
}

TEST(EpsRegular, AgreesWithBruteForceAt10) {
  Rng rng(2024);
  for (int i = 0; i < 6; ++i) {
    const auto g = random_graph(rng, 10, 10, 1, 2);
    const Verdict v = check_eps_regular(g, r(1, 10), exhaustive());
    EXPECT_EQ(v.irregular(), oracle::eps_violation(g, r(1, 10)).has_value());
    if (v.irregular()) EXPECT_TRUE(witness_violates_eps(g, *v.witness, r(1, 10)));
  }
}

TEST(EpsRegular, BudgetExceededInExhaustiveMode) {
  Rng rng(1);
  const auto g = random_graph(rng, 13, 13, 1, 2);
  try {
    check_eps_regular(g, r(1, 4), exhaustive());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
  }
}

TEST(DeltaRegular, Examples) {
  EXPECT_TRUE(check_delta_regular(BipartiteGraph::complete({0, 5}, {1, 5}), r(1, 4), exhaustive())
                  .certified());
  EXPECT_TRUE(check_delta_regular(BipartiteGraph::empty({0, 5}, {1, 5}), r(1, 4), exhaustive())
                  .certified());
  const auto g = block_diagonal(8);
  const Verdict v = check_delta_regular(g, r(1, 2), exhaustive());
  ASSERT_TRUE(v.irregular());
  EXPECT_TRUE(is_half_split(*v.witness, 8));
  EXPECT_TRUE(witness_violates_delta(g, *v.witness, Level::of(r(1, 2))));
}

TEST(DeltaRegular, AgreesWithBruteForce) {
  Rng rng(7);
  int irregular = 0;
  for (int i = 0; i < 20; ++i) {
    const auto g = random_graph(rng, 3 + rng.below(7), 3 + rng.below(7), 1, 3);
    const Rational delta = r(1, 2 + static_cast<std::int64_t>(rng.below(4)));
    const Verdict v = check_delta_regular(g, delta, exhaustive());
    const bool bad = oracle::delta_violation(g, delta).has_value();
    EXPECT_EQ(v.irregular(), bad);
    irregular += bad;
  }
  EXPECT_GT(irregular, 0);
}

TEST(Level, IrrationalThresholdFloors) {
  // gamma = 2 sqrt(1/16) = 1/2 and gamma^2 = 1/3 (gamma ~ 0.577)
  EXPECT_EQ(Level::from_square(r(1, 4)).floor_of(8), 4u);
  EXPECT_EQ(Level::from_square(r(1, 3)).floor_of(8), oracle::size_floor_sq(r(1, 3), 8));
  EXPECT_EQ(Level::from_square(r(1, 3)).floor_of(8), 5u);
}

TEST(PerfectPartition, CompleteMultipartiteAndPlantedHalfGraph) {
  const auto left = VertexPartition::from_labels(std::vector<std::uint32_t>{0, 0, 0, 0, 1, 1, 1, 1}, 2);
  const auto right = left;
  EXPECT_EQ(check_perfect_delta_partition(BipartiteGraph::complete({0, 8}, {1, 8}), left, right,
                                          Level::of(r(1, 2)), exhaustive())
                .aggregate,
            VerdictStatus::CertifiedRegular);

  // pair (0,0) becomes a half graph on 4x4
  std::vector<Edge> e;
  for (std::uint32_t l = 0; l < 8; ++l)
    for (std::uint32_t x = 0; x < 8; ++x) {
      if (l < 4 && x < 4 && (l < 2) != (x < 2)) continue;
      e.push_back({l, x});
    }
  const BipartiteGraph g({0, 8}, {1, 8}, e);
  const auto rep = check_perfect_delta_partition(g, left, right, Level::of(r(1, 2)), exhaustive());
  EXPECT_EQ(rep.aggregate, VerdictStatus::IrregularWithWitness);
  for (const auto& p : rep.pairs)
    EXPECT_EQ(p.verdict.irregular(), p.leftBlock == 0 && p.rightBlock == 0);
}

TEST(PerfectPartition, AggregateIsConjunctionOfPairOracles) {
  Rng rng(31);
  std::vector<std::uint32_t> labels(24);
  for (std::uint32_t v = 0; v < 24; ++v) labels[v] = v / 8;
  const auto p = VertexPartition::from_labels(labels, 3);
  const auto g = random_graph(rng, 24, 24, 1, 3);
  const Rational delta = r(1, 3);
  const auto rep = check_perfect_delta_partition(g, p, p, Level::of(delta), exhaustive());
  bool anyBad = false;
  for (const auto& pr : rep.pairs) {
    const auto sub = g.induced(p.block(pr.leftBlock), p.block(pr.rightBlock));
    const bool bad = oracle::delta_violation(sub, delta).has_value();
    EXPECT_EQ(pr.verdict.irregular(), bad);
    anyBad = anyBad || bad;
  }
  EXPECT_EQ(rep.aggregate == VerdictStatus::IrregularWithWitness, anyBad);
}

TEST(Edits, PerfectSpuriousAndHopeless) {
  const auto p = VertexPartition::from_labels(std::vector<std::uint32_t>{0, 0, 0, 0, 1, 1, 1, 1}, 2);
  const auto full = BipartiteGraph::complete({0, 8}, {1, 8});
  const auto ok = check_delta_partition_with_edits(full, p, p, Level::of(r(1, 2)), exhaustive());
  EXPECT_EQ(ok.outcome, EditOutcome::PerfectlyRegular);
  EXPECT_TRUE(ok.deletions.empty());

  // complete on diagonal blocks plus one stray edge in an otherwise empty pair
  std::vector<Edge> e;
  for (std::uint32_t l = 0; l < 8; ++l)
    for (std::uint32_t x = 0; x < 8; ++x)
      if ((l < 4) == (x < 4)) e.push_back({l, x});
  e.push_back({0, 4});
  std::sort(e.begin(), e.end());
  const BipartiteGraph g({0, 8}, {1, 8}, e);
  const Level gamma = Level::of(r(1, 2));
  const auto rep = check_delta_partition_with_edits(g, p, p, gamma, exhaustive());
  ASSERT_EQ(rep.outcome, EditOutcome::RegularAfterEdits);
  EXPECT_TRUE(gamma.within_budget(rep.deletions.size(), g.edge_count()));
  ASSERT_TRUE(rep.after.has_value());
  EXPECT_EQ(rep.after->aggregate, VerdictStatus::CertifiedRegular);

  // half graphs in every pair and a tiny level
  std::vector<Edge> h;
  for (std::uint32_t l = 0; l < 8; ++l)
    for (std::uint32_t x = 0; x < 8; ++x)
      if ((l % 4 < 2) == (x % 4 < 2)) h.push_back({l, x});
  const auto bad = check_delta_partition_with_edits(BipartiteGraph({0, 8}, {1, 8}, h), p, p,
                                                    Level::of(r(1, 2)), exhaustive());
  EXPECT_EQ(bad.outcome, EditOutcome::NotCertified);
}

TEST(Greedy, CompleteAndBlockDiagonal) {
  EXPECT_FALSE(find_delta_witness_greedy(BipartiteGraph::complete({0, 8}, {1, 8}), Level::of(r(1, 2)), 1));
  const auto g = block_diagonal(8);
  const auto w = find_delta_witness_greedy(g, Level::of(r(1, 2)), 1);
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(witness_violates_delta(g, *w, Level::of(r(1, 2))));
}

TEST(Greedy, PlantedSparseBlockFoundMostly) {
  int found = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    std::vector<Edge> e;
    for (std::uint32_t l = 0; l < 16; ++l)
      for (std::uint32_t x = 0; x < 16; ++x) {
        const bool planted = l < 8 && x < 8;
        if (planted ? rng.chance(1, 20) : rng.chance(9, 10)) e.push_back({l, x});
      }
    const BipartiteGraph g({0, 16}, {1, 16}, e);
    const auto w = find_delta_witness_greedy(g, Level::of(r(1, 2)), seed);
    if (w && witness_violates_delta(g, *w, Level::of(r(1, 2)))) ++found;
  }
  EXPECT_GE(found, 90);
}

TEST(DegreeProfile, Examples) {
  EXPECT_EQ(degree_profile(BipartiteGraph::complete({0, 6}, {1, 6}), full_set(6), r(1, 10)).exceptional, 0u);
  std::vector<Edge> m;
  for (std::uint32_t i = 0; i < 5; ++i) m.push_back({i, i});
  EXPECT_EQ(degree_profile(BipartiteGraph({0, 5}, {1, 5}, m), full_set(5), r(1, 2)).exceptional, 0u);
}

TEST(DegreeProfile, CertifiedGraphHasFewExceptions) {
  Rng rng(12);
  const auto g = random_graph(rng, 12, 12, 1, 2);
  const Rational eps = smallest_certified_eps(g, 20, exhaustive());
  ASSERT_TRUE(check_eps_regular(g, eps, exhaustive()).certified());
  const auto prof = degree_profile(g, full_set(12), eps);
  EXPECT_LE(Rational(BigInt(prof.exceptional)), 2 * eps * 12);
}

TEST(SmallestCertifiedEps, IsTight) {
  Rng rng(8);
  const auto g = random_graph(rng, 8, 8, 1, 2);
  const Rational eps = smallest_certified_eps(g, 16, exhaustive());
  EXPECT_FALSE(oracle::eps_violation(g, eps).has_value());
  if (eps > r(1, 16)) EXPECT_TRUE(oracle::eps_violation(g, eps - r(1, 16)).has_value());
}

TEST(StarUnion, RandomSplitsAtThreeQuarters) {
  // At delta = 1/4 and sides <= 10 two nonempty regular members almost never
  // occur; at 3/4 the size floors are large and random splits qualify often.
  Rng rng(314);
  const Rational delta = r(3, 4);
  int families = 0;
  for (int trial = 0; trial < 200 && families < 40; ++trial) {
    const std::uint32_t a = 4 + rng.below(5), b = 4 + rng.below(5);
    std::vector<Edge> e1, e2;
    for (std::uint32_t l = 0; l < a; ++l)
      for (std::uint32_t x = 0; x < b; ++x) {
        if (rng.chance(1, 5)) continue;
        (rng.chance(1, 2) ? e1 : e2).push_back({l, x});
      }
    if (e1.empty() || e2.empty()) continue;
    const std::vector<BipartiteGraph> members{BipartiteGraph({0, a}, {1, b}, e1),
                                              BipartiteGraph({0, a}, {1, b}, e2)};
    if (!check_delta_regular(members[0], delta, exhaustive()).certified()) continue;
    if (!check_delta_regular(members[1], delta, exhaustive()).certified()) continue;
    ++families;
    const auto u = edge_disjoint_union(members);
    EXPECT_TRUE(check_delta_regular(u, delta, exhaustive()).certified());
    const VertexSet s = rng.subset(a, 2), t = rng.subset(b, 2);
    EXPECT_EQ(induced_density(u, s, t),
              induced_density(members[0], s, t) + induced_density(members[1], s, t));
  }
  EXPECT_GE(families, 20);
}
