#include <gtest/gtest.h>

#include "hreg/errors.hpp"
#include "hreg/hyperreg.hpp"
#include "hreg/random.hpp"
#include "oracle.hpp"

using namespace hreg;

namespace {

Rational r(std::int64_t p, std::int64_t q) { return make_rational(p, q); }

CheckParams exhaustive() {
  CheckParams p;
  p.mode = CheckMode::Exhaustive;
  return p;
}

std::array<VertexClass, 3> classes(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
  return {VertexClass{0, a}, VertexClass{1, b}, VertexClass{2, c}};
}

ThreeGraph random_h(Rng& rng, std::array<std::uint32_t, 3> n, std::uint64_t num, std::uint64_t den) {
  std::vector<Triple> ts;
  for (std::uint32_t x = 0; x < n[0]; ++x)
    for (std::uint32_t y = 0; y < n[1]; ++y)
      for (std::uint32_t z = 0; z < n[2]; ++z)
        if (rng.chance(num, den)) ts.push_back({x, y, z});
  return ThreeGraph(classes(n[0], n[1], n[2]), ts);
}

BipartiteGraph random_graph(Rng& rng, VertexClass a, VertexClass b, std::uint64_t num,
                            std::uint64_t den) {
  std::vector<Edge> e;
  for (std::uint32_t l = 0; l < a.size; ++l)
    for (std::uint32_t x = 0; x < b.size; ++x)
      if (rng.chance(num, den)) e.push_back({l, x});
  return BipartiteGraph(a, b, e);
}

Triad random_triad(Rng& rng, std::uint32_t n, std::uint64_t num, std::uint64_t den) {
  const VertexClass a{0, n}, b{1, n}, c{2, n};
  return Triad(random_graph(rng, a, b, num, den), random_graph(rng, a, c, num, den),
               random_graph(rng, b, c, num, den));
}

TwoPartition complete_tp(std::array<std::uint32_t, 3> frame, std::vector<std::uint32_t> labels,
                         std::uint32_t k) {
  auto z = VertexPartition::from_labels(labels, k);
  auto graphs = fill_missing_pairs(z, {});
  return TwoPartition({frame[0], frame[1], frame[2]}, std::move(z), std::move(graphs));
}

// Density of H on the triangles of the triad, straight from the definition.
Rational naive_density(const ThreeGraph& h, const Triad& t) {
  std::uint64_t tri = 0, in = 0;
  for (std::uint32_t a = 0; a < t.a().size; ++a)
    for (std::uint32_t b = 0; b < t.b().size; ++b)
      for (std::uint32_t c = 0; c < t.c().size; ++c)
        if (t.ab().has_edge(a, b) && t.ac().has_edge(a, c) && t.bc().has_edge(b, c)) {
          ++tri;
          in += h.contains(a, b, c);
        }
  return tri == 0 ? Rational(0) : Rational(BigInt(in), BigInt(tri));
}

// Every subtriad (edge subsets of the three sides), FR test by definition.
bool naive_fr_irregular(const ThreeGraph& h, const Triad& t, const Rational& eps) {
  std::vector<std::pair<int, Edge>> slots;
  for (const Edge& e : t.ab().edges()) slots.push_back({0, e});
  for (const Edge& e : t.ac().edges()) slots.push_back({1, e});
  for (const Edge& e : t.bc().edges()) slots.push_back({2, e});
  const Rational d = naive_density(h, t);
  const std::uint64_t total = oracle::naive_triangles(t);
  const std::size_t m = slots.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<Edge> s[3];
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1u) s[slots[i].first].push_back(slots[i].second);
    const Triad sub(BipartiteGraph(t.a(), t.b(), s[0]), BipartiteGraph(t.a(), t.c(), s[1]),
                    BipartiteGraph(t.b(), t.c(), s[2]));
    const std::uint64_t tri = oracle::naive_triangles(sub);
    if (tri == 0 || Rational(BigInt(tri)) < eps * BigInt(total)) continue;
    const Rational diff = naive_density(h, sub) - d;
    if ((diff < 0 ? Rational(-diff) : diff) > eps) return true;
  }
  return false;
}

// Sum over 2x2x2 boxes of prod f, by definition, for cross-checking.
Rational naive_octahedron(const ThreeGraph& h, const Triad& t) {
  const Rational d = naive_density(h, t);
  const std::uint32_t n = t.a().size;
  auto f = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) -> Rational {
    if (!(t.ab().has_edge(a, b) && t.ac().has_edge(a, c) && t.bc().has_edge(b, c))) return 0;
    return (h.contains(a, b, c) ? Rational(1) : Rational(0)) - d;
  };
  Rational sum = 0;
  for (std::uint32_t a0 = 0; a0 < n; ++a0)
    for (std::uint32_t a1 = 0; a1 < n; ++a1)
      for (std::uint32_t b0 = 0; b0 < n; ++b0)
        for (std::uint32_t b1 = 0; b1 < n; ++b1)
          for (std::uint32_t c0 = 0; c0 < n; ++c0)
            for (std::uint32_t c1 = 0; c1 < n; ++c1) {
              Rational p = 1;
              for (int m = 0; m < 8 && p != 0; ++m)
                p *= f(m & 1 ? a1 : a0, m & 2 ? b1 : b0, m & 4 ? c1 : c0);
              sum += p;
            }
  return sum;
}

}  // namespace

TEST(AuxiliaryGraph, EmptyCompleteAndRandom) {
  const ThreeGraph empty(classes(2, 3, 4), {});
  const auto e = auxiliary_graph(empty, 1);
  EXPECT_EQ(e.graph.edge_count(), 0u);
  EXPECT_EQ(e.graph.left().size, 12u);
  EXPECT_EQ(e.graph.right().size, 2u);
  const auto full = auxiliary_graph(ThreeGraph::complete(classes(2, 3, 4)), 2);
  EXPECT_EQ(full.graph.edge_count(), 24u);

  Rng rng(6);
  const ThreeGraph h = random_h(rng, {4, 4, 4}, 1, 2);
  for (std::uint32_t axis = 1; axis <= 3; ++axis) {
    const auto aux = auxiliary_graph(h, axis);
    EXPECT_EQ(aux.graph.edge_count(), h.edge_count());
    for (const Triple& t : h.triples()) {
      const std::uint32_t v[3] = {t.v1, t.v2, t.v3};
      const std::uint32_t i = axis - 1, j = (axis == 1) ? 1 : 0, k = (axis == 3) ? 1 : 2;
      EXPECT_TRUE(aux.graph.has_edge(static_cast<std::uint32_t>(aux.product.index(v[j], v[k])), v[i]));
    }
  }
}

TEST(TriangleSupport, Examples) {
  EXPECT_EQ(triangle_count(Triad::complete({0, 2}, {1, 3}, {2, 4})), 24u);
  const VertexClass a{0, 3}, b{1, 3}, c{2, 3};
  EXPECT_EQ(triangle_count(Triad(BipartiteGraph::empty(a, b), BipartiteGraph::complete(a, c),
                                 BipartiteGraph::complete(b, c))),
            0u);
  Rng rng(13);
  const Triad t = random_triad(rng, 6, 1, 2);
  EXPECT_EQ(triangle_count(t), oracle::naive_triangles(t));
  EXPECT_EQ(triangle_support(t).size(), triangle_count(t));
}

TEST(TriadDensity, Examples) {
  const Triad full = Triad::complete({0, 4}, {1, 4}, {2, 4});
  EXPECT_EQ(triad_density(ThreeGraph::complete(classes(4, 4, 4)), full).density, 1);
  const VertexClass a{0, 2}, b{1, 2}, c{2, 2};
  const Triad none(BipartiteGraph::empty(a, b), BipartiteGraph::complete(a, c), BipartiteGraph::complete(b, c));
  EXPECT_EQ(triad_density(ThreeGraph::complete(classes(2, 2, 2)), none).density, 0);
  Rng rng(14);
  const ThreeGraph h = random_h(rng, {4, 4, 4}, 1, 2);
  EXPECT_EQ(triad_density(h, full).density, Rational(BigInt(h.edge_count()), BigInt(64)));
}

TEST(DeltaGood, CompleteAndHalfMember) {
  const auto tp = complete_tp({2, 2, 2}, {0, 0, 1, 1, 2, 2}, 3);
  EXPECT_EQ(is_delta_good(tp, r(1, 2), exhaustive()).aggregate, VerdictStatus::CertifiedRegular);

  auto z = VertexPartition::from_labels(std::vector<std::uint32_t>{0, 0, 0, 0, 1, 1, 1, 1}, 2);
  std::vector<Edge> half, rest;
  for (std::uint32_t l = 0; l < 4; ++l)
    for (std::uint32_t x = 0; x < 4; ++x) ((l < 2) == (x < 2) ? half : rest).push_back({l, x});
  const VertexClass L{0, 4}, R{1, 4};
  const TwoPartition bad({4, 4}, z, {{0, 1, BipartiteGraph(L, R, half)}, {0, 1, BipartiteGraph(L, R, rest)}});
  const auto g = is_delta_good(bad, r(1, 2), exhaustive());
  EXPECT_EQ(g.aggregate, VerdictStatus::IrregularWithWitness);
  EXPECT_TRUE(g.graphs[0].verdict.irregular());
}

TEST(ThreePartition, EmptyHAndSingletons) {
  const auto tp = complete_tp({2, 2, 2}, {0, 0, 1, 1, 2, 2}, 3);
  EXPECT_TRUE(check_delta_regular_3partition(ThreeGraph(classes(2, 2, 2), {}), tp, r(1, 2), exhaustive()).passes);
  const auto single = complete_tp({2, 2, 2}, {0, 1, 2, 3, 4, 5}, 6);
  Rng rng(2);
  EXPECT_TRUE(check_delta_regular_3partition(random_h(rng, {2, 2, 2}, 1, 2), single, r(1, 2), exhaustive()).passes);
}

TEST(ThreePartition, AxesMatchDirectRuns) {
  Rng rng(21);
  const ThreeGraph h = random_h(rng, {6, 6, 6}, 1, 2);
  std::vector<std::uint32_t> labels(18);
  for (std::uint32_t v = 0; v < 18; ++v) labels[v] = v / 3;
  const auto tp = complete_tp({6, 6, 6}, labels, 6);
  const Rational delta = r(1, 3);
  const auto rep = check_delta_regular_3partition(h, tp, delta, exhaustive());
  const auto proj = sub_partitions(tp);
  ASSERT_EQ(rep.axes.size(), 3u);
  for (std::uint32_t i = 0; i < 3; ++i) {
    const auto aux = auxiliary_graph(h, i + 1);
    const auto direct = check_delta_partition_with_edits(aux.graph, proj.e[i].as_vertex_partition(),
                                                         proj.z[i], Level::of(delta), exhaustive());
    EXPECT_EQ(rep.axes[i].outcome, direct.outcome) << "axis " << i + 1;
  }
}

TEST(Equipartition, CompleteAndDensityViolation) {
  const auto tp = complete_tp({2, 2, 2}, {0, 0, 1, 1, 2, 2}, 3);
  EXPECT_TRUE(check_equipartition_params(tp, 1, 3, r(1, 10), exhaustive()).passes);
  const auto rep = check_equipartition_params(tp, 2, 3, r(1, 10), exhaustive());
  EXPECT_FALSE(rep.passes);
  EXPECT_EQ(rep.densityViolations.size(), tp.graphs().size());
}

TEST(FrTriad, CompleteAndEmptyH) {
  Rng rng(3);
  const Triad t = random_triad(rng, 3, 1, 2);
  EXPECT_TRUE(check_fr_triad(ThreeGraph::complete(classes(3, 3, 3)), t, TriadEmbedding::identity(t), r(1, 10), exhaustive()).certified());
  EXPECT_TRUE(check_fr_triad(ThreeGraph(classes(3, 3, 3), {}), t, TriadEmbedding::identity(t), r(1, 10), exhaustive()).certified());
}

TEST(FrTriad, AgreesWithFullSubtriadEnumeration) {
  Rng rng(41);
  int compared = 0;
  for (int i = 0; i < 12; ++i) {
    const Triad t = random_triad(rng, 3, 2, 3);
    if (t.total_edges() > 16) continue;
    const ThreeGraph h = random_h(rng, {3, 3, 3}, 1, 2);
    const Rational eps = r(1, 4);
    const auto v = check_fr_triad(h, t, TriadEmbedding::identity(t), eps, exhaustive());
    ASSERT_EQ(v.method, CheckMethod::Exhaustive);
    EXPECT_EQ(v.irregular(), naive_fr_irregular(h, t, eps));
    ++compared;
  }
  EXPECT_GT(compared, 3);
}

TEST(FrPartition, EmptyHPasses) {
  const auto tp = complete_tp({2, 2, 2}, {0, 0, 1, 1, 2, 2}, 3);
  const auto rep = check_fr_partition(ThreeGraph(classes(2, 2, 2), {}), tp, 1, 3, r(1, 10), r(1, 10), exhaustive());
  EXPECT_TRUE(rep.passes);
  EXPECT_EQ(rep.irregularMass, 0);
}

TEST(FrPartition, HeavyIrregularTriadFails) {
  // One triad of 2+2+2 clusters, H a "half" pattern that a subtriad separates.
  const auto tp = complete_tp({2, 2, 2}, {0, 0, 1, 1, 2, 2}, 3);
  std::vector<Triple> ts;
  for (std::uint32_t x = 0; x < 2; ++x)
    for (std::uint32_t y = 0; y < 2; ++y)
      for (std::uint32_t z = 0; z < 2; ++z)
        if (x == 0) ts.push_back({x, y, z});
  // all 8 triangles sit in the one triad; the mass bound is eps |V|^3 = 216 eps
  const ThreeGraph h(classes(2, 2, 2), ts);
  EXPECT_TRUE(check_fr_partition(h, tp, 1, 3, r(1, 10), r(1, 10), exhaustive()).passes);
  const auto rep = check_fr_partition(h, tp, 1, 3, r(1, 10), r(1, 30), exhaustive());
  EXPECT_FALSE(rep.passes);
  EXPECT_EQ(rep.irregularMass, 8);
}

TEST(Octahedron, ZeroCases) {
  const Triad t = Triad::complete({0, 3}, {1, 3}, {2, 3});
  const auto emb = TriadEmbedding::identity(t);
  const ThreeGraph full = ThreeGraph::complete(classes(3, 3, 3));
  const ThreeGraph empty(classes(3, 3, 3), {});
  EXPECT_EQ(octahedron_sum_naive(full, t, emb), 0);
  EXPECT_EQ(octahedron_sum_fast(full, t, emb), 0);
  EXPECT_EQ(octahedron_sum_naive(empty, t, emb), 0);
  EXPECT_EQ(octahedron_sum_fast(empty, t, emb), 0);
}

TEST(Octahedron, SingleTripleAtTwo) {
  const Triad t = Triad::complete({0, 2}, {1, 2}, {2, 2});
  const std::vector<Triple> one{{0, 0, 0}};
  const ThreeGraph h(classes(2, 2, 2), one);
  const auto emb = TriadEmbedding::identity(t);
  const Rational naive = octahedron_sum_naive(h, t, emb);
  EXPECT_EQ(naive, naive_octahedron(h, t));
  EXPECT_EQ(octahedron_sum_fast(h, t, emb), naive);
  EXPECT_GT(naive, 0);
}

TEST(Octahedron, FastEqualsNaiveOnRandomTriads) {
  Rng rng(77);
  for (int i = 0; i < 10; ++i) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(3));
    const Triad t = random_triad(rng, n, 2, 3);
    const ThreeGraph h = random_h(rng, {n, n, n}, 1, 2);
    const auto emb = TriadEmbedding::identity(t);
    const Rational fast = octahedron_sum_fast(h, t, emb);
    EXPECT_EQ(fast, octahedron_sum_naive(h, t, emb));
    EXPECT_EQ(fast, naive_octahedron(h, t));
    EXPECT_GE(fast, 0);
    EXPECT_EQ(balanced_sum(h, t, emb), 0);
  }
}

TEST(Octahedron, UnequalClassesRejected) {
  const Triad t = Triad::complete({0, 2}, {1, 3}, {2, 2});
  try {
    octahedron_sum_naive(ThreeGraph(classes(2, 3, 2), {}), t, TriadEmbedding::identity(t));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ClassSizeMismatch);
  }
}

TEST(Quasirandom, Examples) {
  const Triad full = Triad::complete({0, 3}, {1, 3}, {2, 3});
  const auto q = check_quasirandom_triad(ThreeGraph::complete(classes(3, 3, 3)), full,
                                         TriadEmbedding::identity(full), r(1, 1000));
  EXPECT_EQ(q.octahedronSum, 0);
  EXPECT_TRUE(q.verdict);

  const VertexClass a{0, 3}, b{1, 3}, c{2, 3};
  const Triad side(BipartiteGraph::empty(a, b), BipartiteGraph::complete(a, c), BipartiteGraph::complete(b, c));
  const auto z = check_quasirandom_triad(ThreeGraph::complete(classes(3, 3, 3)), side,
                                         TriadEmbedding::identity(side), r(1, 2));
  EXPECT_EQ(z.octahedronSum, 0);
  EXPECT_EQ(z.bound, 0);
  EXPECT_TRUE(z.verdict);
}

TEST(Quasirandom, VerdictMatchesNaiveComparison) {
  Rng rng(101);
  const Triad t = Triad::complete({0, 8}, {1, 8}, {2, 8});
  const auto emb = TriadEmbedding::identity(t);
  for (int i = 0; i < 3; ++i) {
    const ThreeGraph h = random_h(rng, {8, 8, 8}, 1, 2);
    const Rational alpha = r(1, 100);
    const auto q = check_quasirandom_triad(h, t, emb, alpha);
    // d = 1 on complete sides, so the bound is alpha n^6
    EXPECT_EQ(q.bound, alpha * BigInt(262144));
    EXPECT_EQ(q.verdict, octahedron_sum_naive(h, t, emb) <= q.bound);
  }
}

TEST(Schacht, CompleteAndEmpty) {
  const Triad t = Triad::complete({0, 3}, {1, 3}, {2, 3});
  const auto emb = TriadEmbedding::identity(t);
  const auto full = schacht_predicate(t, ThreeGraph::complete(classes(3, 3, 3)), emb, r(1, 4), 2, exhaustive());
  EXPECT_TRUE(full.hypothesis);
  const auto none = schacht_predicate(t, ThreeGraph(classes(3, 3, 3), {}), emb, r(1, 4), 2, exhaustive());
  EXPECT_TRUE(none.hypothesis);
}

TEST(TriangleBand, CompleteAndCertifiedRandom) {
  const Triad full = Triad::complete({0, 3}, {1, 4}, {2, 5});
  const auto b = triangle_count_bound(full, 0);
  EXPECT_EQ(b.count, 60u);
  EXPECT_TRUE(b.inBand);

  Rng rng(55);
  const VertexClass a{0, 12}, bb{1, 12}, c{2, 12};
  const Triad t(random_graph(rng, a, bb, 1, 2), random_graph(rng, a, c, 1, 2), random_graph(rng, bb, c, 1, 2));
  const Rational eps = std::max({smallest_certified_eps(t.ab(), 20, exhaustive()),
                                 smallest_certified_eps(t.ac(), 20, exhaustive()),
                                 smallest_certified_eps(t.bc(), 20, exhaustive())});
  EXPECT_TRUE(triangle_count_bound(t, eps).inBand);
}

TEST(SubtriadHypothesis, CompleteAndEmpty) {
  const auto tp = complete_tp({2, 2, 2}, {0, 0, 1, 1, 2, 2}, 3);
  EXPECT_EQ(subtriad_hypothesis_check(ThreeGraph::complete(classes(2, 2, 2)), tp, r(1, 4), exhaustive()).aggregate,
            VerdictStatus::CertifiedRegular);
  EXPECT_EQ(subtriad_hypothesis_check(ThreeGraph(classes(2, 2, 2), {}), tp, r(1, 4), exhaustive()).aggregate,
            VerdictStatus::CertifiedRegular);
}

TEST(Reduction, IdentityAndCompletePipeline) {
  Rng rng(9);
  const ThreeGraph h = random_h(rng, {4, 4, 4}, 1, 2);
  // E complete over A x B and C = {1, 3}
  const auto aux = auxiliary_graph(h, 3);
  const VertexSet c{1, 3};
  const Rational dG = induced_density(aux.graph, full_set(16), c);
  std::uint64_t in = 0;
  for (const Triple& t : h.triples()) in += t.v3 == 1 || t.v3 == 3;
  EXPECT_EQ(dG, Rational(BigInt(in), BigInt(32)));

  const auto tp = complete_tp({2, 2, 2}, {0, 0, 1, 1, 2, 2}, 3);
  const Rational delta = r(1, 16);
  const auto rep = reduction_check(ThreeGraph::complete(classes(2, 2, 2)), tp, delta, 1, 3,
                                   delta * delta / 88, exhaustive());
  EXPECT_TRUE(rep.passes);
  EXPECT_EQ(rep.identityFailures, 0u);
}
