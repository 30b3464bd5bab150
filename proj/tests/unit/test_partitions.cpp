#include <gtest/gtest.h>

#include "hreg/errors.hpp"
#include "hreg/partitions.hpp"
#include "hreg/random.hpp"

using namespace hreg;

namespace {

VertexPartition blocks(std::uint32_t n, std::vector<VertexSet> b) {
  return VertexPartition(n, std::move(b));
}

Rational r(std::int64_t p, std::int64_t q) { return make_rational(p, q); }

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::Format;
}

TwoPartition complete_tp(std::vector<std::uint32_t> frame, std::vector<std::uint32_t> labels,
                         std::uint32_t k) {
  auto z = VertexPartition::from_labels(labels, k);
  auto graphs = fill_missing_pairs(z, {});
  return TwoPartition(std::move(frame), std::move(z), std::move(graphs));
}

}  // namespace

TEST(VertexPartition, ConstructionErrors) {
  EXPECT_EQ(code_of([] { blocks(4, {{0, 1}, {1, 2, 3}}); }), ErrorCode::InvariantViolation);
  EXPECT_EQ(code_of([] { blocks(4, {{0, 1}, {2}}); }), ErrorCode::InvariantViolation);
  EXPECT_EQ(code_of([] { blocks(4, {{0, 1, 2, 3}, {}}); }), ErrorCode::DegenerateInput);
}

TEST(Refines, Examples) {
  const auto p = blocks(4, {{0, 1}, {2, 3}});
  EXPECT_TRUE(refines(p, p));
  EXPECT_TRUE(refines(VertexPartition::singletons(4), p));
  EXPECT_FALSE(refines(blocks(4, {{0, 2}, {1, 3}}), p));
  EXPECT_EQ(code_of([&] { refines(VertexPartition::singletons(5), p); }), ErrorCode::GroundMismatch);
}

TEST(ApproxSubset, Examples) {
  EXPECT_TRUE(approx_subset({1, 2}, {0, 1, 2}, r(1, 100)));
  EXPECT_FALSE(approx_subset({1, 2}, {3, 4}, r(1, 2)));
  const VertexSet s{0, 1, 2, 3}, t{0, 1, 2, 9};
  EXPECT_FALSE(approx_subset(s, t, r(1, 4)));
  EXPECT_TRUE(approx_subset(s, t, r(3, 10)));
  EXPECT_EQ(code_of([] { approx_subset({}, {1}, r(1, 4)); }), ErrorCode::DegenerateInput);
}

TEST(ApproxMember, Examples) {
  const auto p = blocks(10, {{0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}});
  EXPECT_EQ(approx_member({5, 6, 7, 8, 9}, p, r(1, 4)), 1u);
  EXPECT_FALSE(approx_member({3, 4, 5, 6}, p, r(1, 4)).has_value());
  EXPECT_EQ(approx_member({0, 1, 2, 3, 7}, p, r(1, 4)), 0u);
  EXPECT_EQ(code_of([&] { approx_member({0}, p, r(3, 5)); }), ErrorCode::ParameterOutOfContract);
}

TEST(ApproxRefines, Examples) {
  const auto p = blocks(8, {{0, 1, 2, 3}, {4, 5, 6, 7}});
  EXPECT_TRUE(approx_refines(VertexPartition::singletons(8), p, 0));
  EXPECT_TRUE(approx_refines(p, p, r(1, 10)));
  const auto q = blocks(8, {{0, 1, 2, 4}, {3, 5, 6, 7}});
  EXPECT_TRUE(approx_refines(q, p, r(3, 10)));
  EXPECT_FALSE(approx_refines(q, p, r(1, 4)));
  EXPECT_FALSE(approx_refines(VertexPartition::trivial(8), p, r(1, 4)));
}

TEST(CommonRefinement, Examples) {
  const auto p = blocks(4, {{0, 1}, {2, 3}});
  EXPECT_EQ(common_refinement(p, p).canonical(), p.canonical());
  EXPECT_EQ(common_refinement(VertexPartition::trivial(4), p).canonical(), p.canonical());
  EXPECT_EQ(common_refinement(p, blocks(4, {{0, 2}, {1, 3}})).canonical(),
            VertexPartition::singletons(4).canonical());
}

TEST(IsEquitable, Examples) {
  EXPECT_TRUE(is_equitable(blocks(12, {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {9, 10, 11}})));
  EXPECT_FALSE(is_equitable(blocks(7, {{0, 1, 2}, {3, 4, 5, 6}})));
  EXPECT_TRUE(is_equitable(VertexPartition::trivial(5)));
}

TEST(RefinementUnionExtract, Examples) {
  const auto p = blocks(8, {{0, 1, 2, 3}, {4, 5, 6, 7}});
  const auto exact = refinement_union_extract(VertexPartition::singletons(8), p, 0);
  EXPECT_EQ(exact.symmetricDifference, 0u);
  EXPECT_EQ(exact.p, exact.q);

  const auto q = blocks(8, {{0, 1, 2, 4}, {3, 5, 6, 7}});
  const auto u = refinement_union_extract(q, p, r(3, 10));
  EXPECT_LE(Rational(BigInt(u.symmetricDifference) * 10), Rational(9 * 4));

  EXPECT_EQ(code_of([&] { refinement_union_extract(VertexPartition::trivial(8), p, r(1, 4)); }),
            ErrorCode::PreconditionFailed);
}

TEST(RefinementUnionExtract, RandomBoundAtHalf) {
  Rng rng(99);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint32_t n = 4 + rng.below(9);
    std::vector<std::uint32_t> pl(n), ql(n);
    const std::uint32_t kp = 1 + rng.below(3);
    for (std::uint32_t v = 0; v < n; ++v) pl[v] = v % kp;
    for (std::uint32_t v = 0; v < n; ++v) ql[v] = v;
    // q: singletons merged pairwise within p-blocks, with a stray swap now and then
    for (std::uint32_t v = 0; v + kp < n; v += 2 * kp) ql[v + kp] = ql[v];
    std::vector<std::uint32_t> dense;
    std::vector<std::uint32_t> relabel(n, n);
    for (auto& l : ql) {
      if (relabel[l] == n) relabel[l] = static_cast<std::uint32_t>(dense.size()), dense.push_back(l);
      l = relabel[l];
    }
    const auto p = VertexPartition::from_labels(pl, kp);
    const auto q = VertexPartition::from_labels(ql, static_cast<std::uint32_t>(dense.size()));
    if (!approx_refines(q, p, r(1, 2))) continue;
    const auto u = refinement_union_extract(q, p, r(1, 2));
    EXPECT_LE(Rational(BigInt(u.symmetricDifference) * 2), Rational(BigInt(3 * u.p.size())));
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

TEST(RestrictVertexPartition, Examples) {
  const auto p = blocks(9, {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}});
  EXPECT_EQ(restrict_vertex_partition(p, full_set(9)), p);
  EXPECT_EQ(restrict_vertex_partition(p, {3, 5}).order(), 1u);
  EXPECT_EQ(restrict_vertex_partition(p, {0, 4, 5}).order(), 2u);
  EXPECT_EQ(code_of([&] { restrict_vertex_partition(p, {}); }), ErrorCode::DegenerateInput);
}

TEST(ValidateTwoPartition, CompleteSplitMissingAndDuplicate) {
  // frame (2,2), clusters {0},{1} | {2},{3}
  auto z = VertexPartition::from_labels(std::vector<std::uint32_t>{0, 1, 2, 3}, 4);
  std::vector<TaggedGraph> halves;
  for (std::uint32_t i = 0; i < 4; ++i)
    for (std::uint32_t j = i + 1; j < 4; ++j) halves.push_back({i, j, BipartiteGraph::complete({0, 1}, {1, 1})});
  EXPECT_TRUE(validate_two_partition(TwoPartition({2, 2}, z, halves)).empty());

  auto missing = halves;
  missing.erase(missing.begin() + 1);
  const auto v = validate_two_partition(TwoPartition({2, 2}, z, missing));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, TwoPartitionViolation::Kind::MissingEdges);
  EXPECT_EQ(v[0].first, 0u);
  EXPECT_EQ(v[0].second, 2u);

  auto dup = halves;
  dup.push_back(dup.front());
  const auto d = validate_two_partition(TwoPartition({2, 2}, z, dup));
  ASSERT_FALSE(d.empty());
  EXPECT_EQ(d[0].kind, TwoPartitionViolation::Kind::NotDisjoint);
}

TEST(RestrictTwoPartition, Examples) {
  const auto tp = complete_tp({2, 2, 2}, {0, 0, 1, 2, 3, 3}, 4);
  const auto same = restrict_two_partition(tp, {{0, 1}, {0, 1}, {0, 1}});
  EXPECT_EQ(same.z(), tp.z());
  EXPECT_EQ(same.graphs().size(), tp.graphs().size());

  // drop cluster 2 (vertex 3, class 1 index 1)
  const auto dropped = restrict_two_partition(tp, {{0, 1}, {0}, {0, 1}});
  EXPECT_EQ(dropped.z().order(), 3u);
  EXPECT_EQ(dropped.graphs().size(), 3u);
  EXPECT_TRUE(validate_two_partition(dropped).empty());
}

TEST(RestrictTwoPartition, HalvingMatchesNaiveFilter) {
  Rng rng(4);
  // one class of 8 with clusters {0..3},{4..7}; a random split of the pair's product
  auto z = VertexPartition::from_labels(std::vector<std::uint32_t>{0, 0, 0, 0, 1, 1, 1, 1}, 2);
  std::vector<Edge> a, b;
  for (std::uint32_t x = 0; x < 4; ++x)
    for (std::uint32_t y = 0; y < 4; ++y) (rng.chance(1, 2) ? a : b).push_back({x, y});
  const VertexClass L{0, 4}, R{1, 4};
  const TwoPartition tp({8}, z, {{0, 1, BipartiteGraph(L, R, a)}, {0, 1, BipartiteGraph(L, R, b)}});
  const VertexSet keep{0, 2, 5, 7};
  const auto half = restrict_two_partition(tp, {keep});
  ASSERT_EQ(half.graphs().size(), 2u);
  const VertexSet li{0, 2}, ri{1, 3};  // ranks inside clusters
  for (std::size_t k = 0; k < 2; ++k) {
    const auto& orig = tp.graphs()[k].graph;
    const auto& got = half.graphs()[k].graph;
    for (std::uint32_t x = 0; x < 2; ++x)
      for (std::uint32_t y = 0; y < 2; ++y) EXPECT_EQ(got.has_edge(x, y), orig.has_edge(li[x], ri[y]));
  }
}

TEST(SubPartitions, FrameItselfAndComplete) {
  const auto flat = complete_tp({2, 3, 2}, {0, 0, 1, 1, 1, 2, 2}, 3);
  const auto fp = sub_partitions(flat);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(fp.z[i].order(), 1u);

  const auto two = complete_tp({2, 2, 2}, {0, 1, 2, 3, 4, 5}, 6);
  const auto proj = sub_partitions(two);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(proj.e[i].order(), 4u);
    for (const auto& blk : proj.e[i].blocks()) EXPECT_EQ(density(blk) * BigInt(proj.e[i].carrier().size()), BigInt(1));
  }
}

TEST(SubPartitions, ZMustRefineFrame) {
  const auto tp = complete_tp({2, 2, 2}, {0, 1, 1, 2, 2, 3}, 4);
  EXPECT_EQ(code_of([&] { sub_partitions(tp); }), ErrorCode::FrameMismatch);
}
