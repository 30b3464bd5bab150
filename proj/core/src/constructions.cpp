#include "hreg/constructions.hpp"

#include <algorithm>
#include <numeric>

#include "hreg/errors.hpp"
#include "hreg/hyperreg.hpp"
#include "hreg/random.hpp"

namespace hreg {

namespace {

bool is_pow2(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

std::string level_text(const char* side, std::size_t i) {
  return std::string(side) + "_" + std::to_string(i);
}

void check_chain(const std::vector<VertexPartition>& chain, std::uint32_t ground,
                 const char* side, std::vector<AssumptionViolation>& out) {
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const auto& p = chain[i];
    if (p.ground_size() != ground) {
      out.push_back({0, i + 1, level_text(side, i + 1) + " has the wrong ground size"});
      continue;
    }
    if (!is_equitable(p)) out.push_back({0, i + 1, level_text(side, i + 1) + " is not equitable"});
    if (i > 0 && chain[i - 1].ground_size() == ground && !refines(p, chain[i - 1])) {
      out.push_back({0, i + 1, level_text(side, i + 1) + " does not refine the previous level"});
    }
  }
}

// E(H) = {(v1, v2, v3) : ((v1, v2), v3) in E(G)} for G on (V1 x V2, V3).
ThreeGraph pullback(const BipartiteGraph& g, const ProductSide& pairs, const VertexClass& third) {
  std::vector<Triple> triples;
  triples.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    auto [v1, v2] = pairs.split(e.left);
    triples.push_back({v1, v2, e.right});
  }
  return ThreeGraph({pairs.first, pairs.second, third}, triples);
}

ThreeGraph surrogate_part(std::uint32_t n, std::uint32_t level, std::uint64_t seed) {
  const VertexClass v1{0, n}, v2{1, n}, v3{2, n};
  if (level == 0) return ThreeGraph::complete({v1, v2, v3});
  const ProductSide pairs{v1, v2};
  const ProductSide carrier{pairs.as_class(3), v3};
  EdgeChain chain = random_edge_equipartition_chain(carrier, level, seed);
  return pullback(chain.levels.back().block(0), pairs, v3);
}

}  // namespace

std::vector<AssumptionViolation> validate_core_assumptions(const ChainPair& chains) {
  std::vector<AssumptionViolation> out;
  check_chain(chains.left, chains.leftSize, "L", out);
  check_chain(chains.right, chains.rightSize, "R", out);
  if (chains.left.size() != chains.right.size()) {
    out.push_back({0, std::min(chains.left.size(), chains.right.size()) + 1,
                   "chains have different lengths"});
  }

  const auto& r = chains.right;
  if (!r.empty()) {
    BigInt bound = 1;
    bound <<= 200;
    if (BigInt(r[0].order()) < bound) {
      out.push_back({1, 1, "|R_1| = " + std::to_string(r[0].order()) + " is below 2^200"});
    }
  }
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!is_pow2(r[i].order())) {
      out.push_back({1, i + 1, "|R_" + std::to_string(i + 1) + "| is not a power of 2"});
    }
  }
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (r[i].order() < 4 * r[i - 1].order()) {
      out.push_back({2, i + 1, "|R_" + std::to_string(i + 1) + "| < 4 |R_" + std::to_string(i) + "|"});
    }
  }
  const std::size_t common = std::min(chains.left.size(), r.size());
  for (std::size_t i = 0; i < common; ++i) {
    const std::uint64_t level = i + 1;
    const std::uint64_t rOrder = r[i].order();
    const std::uint64_t div = level + 10;
    const std::string tag = "|L_" + std::to_string(level) + "|";
    if (div >= 64 || rOrder % (std::uint64_t{1} << div) != 0) {
      out.push_back({3, level, tag + ": |R_i| / 2^(i+10) is not an integer"});
      continue;
    }
    const std::uint64_t exponent = rOrder >> div;
    if (exponent >= 64 || chains.left[i].order() != (std::uint64_t{1} << exponent)) {
      out.push_back({3, level, tag + " != 2^" + std::to_string(exponent)});
    }
  }
  return out;
}

std::vector<VertexPartition> random_refinement_chain(std::uint32_t n,
                                                     const std::vector<std::uint32_t>& orders,
                                                     std::uint64_t seed) {
  for (std::size_t j = 0; j < orders.size(); ++j) {
    const std::uint32_t o = orders[j];
    if (o == 0 || n % o != 0) {
      throw Error(ErrorCode::ParameterOutOfContract,
                  "order " + std::to_string(o) + " does not divide " + std::to_string(n));
    }
    if (j > 0 && (o <= orders[j - 1] || o % orders[j - 1] != 0)) {
      throw Error(ErrorCode::ParameterOutOfContract, "orders must strictly increase by divisors");
    }
  }
  Rng rng(seed);
  std::vector<VertexPartition> chain;
  std::vector<VertexSet> blocks{full_set(n)};
  std::uint32_t prev = 1;
  for (std::uint32_t o : orders) {
    const std::uint32_t split = o / prev;
    std::vector<VertexSet> next;
    next.reserve(o);
    for (VertexSet& b : blocks) {
      rng.shuffle(b);
      const std::size_t part = b.size() / split;
      for (std::uint32_t k = 0; k < split; ++k) {
        VertexSet piece(b.begin() + k * part, b.begin() + (k + 1) * part);
        std::sort(piece.begin(), piece.end());
        next.push_back(std::move(piece));
      }
    }
    blocks = std::move(next);
    chain.emplace_back(n, blocks);
    prev = o;
  }
  return chain;
}

EdgeChain random_edge_equipartition_chain(const ProductSide& carrier, std::uint32_t s,
                                          std::uint64_t seed) {
  const std::uint64_t cells = carrier.size();
  if (s >= 63 || cells % (std::uint64_t{1} << s) != 0 || cells == 0) {
    throw Error(ErrorCode::ParameterOutOfContract,
                "carrier of " + std::to_string(cells) + " slots is not divisible by 2^" +
                    std::to_string(s));
  }
  std::vector<std::uint64_t> perm(cells);
  std::iota(perm.begin(), perm.end(), std::uint64_t{0});
  Rng rng(seed);
  rng.shuffle(perm);

  EdgeChain chain{carrier, {}};
  for (std::uint32_t j = 1; j <= s; ++j) {
    const std::uint64_t parts = std::uint64_t{1} << j;
    const std::uint64_t size = cells / parts;
    std::vector<BipartiteGraph> blocks;
    blocks.reserve(parts);
    for (std::uint64_t b = 0; b < parts; ++b) {
      std::vector<Edge> edges;
      edges.reserve(size);
      for (std::uint64_t k = b * size; k < (b + 1) * size; ++k) {
        auto [l, r] = carrier.split(perm[k]);
        edges.push_back({l, r});
      }
      std::sort(edges.begin(), edges.end());
      blocks.emplace_back(carrier.first, carrier.second, edges);
    }
    chain.levels.emplace_back(carrier, std::move(blocks));
  }
  return chain;
}

SixCycle tight_six_cycle() {
  std::vector<std::array<std::uint32_t, 3>> edges;
  std::vector<Triple> triples;
  for (std::uint32_t x = 0; x < 6; ++x) {
    std::array<std::uint32_t, 3> e{x, (x + 1) % 6, (x + 2) % 6};
    std::sort(e.begin(), e.end());
    edges.push_back(e);
    std::array<std::uint32_t, 3> slot{};
    for (std::uint32_t v : e) slot[v % 3] = v / 3;
    triples.push_back({slot[0], slot[1], slot[2]});
  }
  std::sort(edges.begin(), edges.end());
  std::sort(triples.begin(), triples.end());
  std::array<VertexSet, 3> classes;
  for (std::uint32_t c = 0; c < 3; ++c) classes[c] = {c, c + 3};
  return SixCycle{std::move(edges), std::move(classes),
                  ThreeGraph({VertexClass{0, 2}, VertexClass{1, 2}, VertexClass{2, 2}}, triples)};
}

ThreeGraph six_cycle_paste(const std::vector<ThreeGraph>& parts) {
  if (parts.size() != 6) {
    throw Error(ErrorCode::ParameterOutOfContract, "need one part per edge of the 6-cycle");
  }
  const std::uint32_t n = parts[0].classes()[0].size;
  for (const auto& p : parts) {
    for (const auto& c : p.classes()) {
      if (c.size != n) throw Error(ErrorCode::ClassSizeMismatch, "parts must share one class size");
    }
  }
  std::vector<Triple> triples;
  for (std::uint32_t x = 0; x < 6; ++x) {
    for (const Triple& t : parts[x].triples()) {
      const std::array<std::uint32_t, 3> local{t.v1, t.v2, t.v3};
      std::array<std::uint32_t, 3> slot{};
      for (std::uint32_t k = 0; k < 3; ++k) {
        const std::uint32_t y = (x + k) % 6;
        slot[y % 3] = local[k] + (y >= 3 ? n : 0);
      }
      triples.push_back({slot[0], slot[1], slot[2]});
    }
  }
  std::sort(triples.begin(), triples.end());
  return ThreeGraph({VertexClass{0, 2 * n}, VertexClass{1, 2 * n}, VertexClass{2, 2 * n}},
                    triples);
}

std::uint64_t ToySchedule::t_at(std::uint64_t i) const {
  if (i == 0 || i > t.size()) {
    throw Error(ErrorCode::PreconditionFailed,
                "toy t(" + std::to_string(i) + ") is outside the table");
  }
  return t[i - 1];
}

std::uint64_t ToySchedule::e_at(std::uint64_t i) const {
  if (i == 0 || i > e.size()) {
    throw Error(ErrorCode::PreconditionFailed,
                "toy e(" + std::to_string(i) + ") is outside the table");
  }
  return e[i - 1];
}

std::vector<std::uint64_t> ToySchedule::w(std::size_t count) const {
  std::vector<std::uint64_t> out;
  if (count == 0) return out;
  out.push_back(1);
  for (std::size_t j = 1; j < count; ++j) {
    const std::uint64_t num = t_at(out.back());
    const std::uint64_t den = e_at(j);
    if (den == 0 || num % den != 0) {
      throw Error(ErrorCode::PreconditionFailed,
                  "toy t(w(" + std::to_string(j) + ")) is not divisible by e(" +
                      std::to_string(j) + ")");
    }
    if (num / den < out.back()) {
      throw Error(ErrorCode::PreconditionFailed, "toy w must not decrease");
    }
    out.push_back(num / den);
  }
  return out;
}

KeyScenario build_key_argument_scenario(const ToySchedule& schedule, std::uint32_t n,
                                        std::uint32_t s, std::uint64_t seed) {
  if (s == 0) throw Error(ErrorCode::ParameterOutOfContract, "s must be positive");
  KeyScenario sc{n, ThreeGraph::complete({VertexClass{0, 1}, VertexClass{1, 1}, VertexClass{2, 1}}),
                 BipartiteGraph::empty(VertexClass{0, 1}, VertexClass{1, 1}),
                 {}, {}, {}, {}, {}, {}, false, {}};
  sc.w = schedule.w(s + 1);

  std::uint64_t deepestVertex = 0;
  for (std::uint32_t j = 1; j <= s; ++j) {
    sc.selectedVertexLevels.push_back(sc.w[j - 1]);
    sc.selectedEdgeLevels.push_back(sc.w[j]);
    deepestVertex = std::max(deepestVertex, sc.w[j - 1]);
  }
  std::vector<std::uint32_t> orders;
  for (std::uint64_t i = 1; i <= deepestVertex; ++i) {
    orders.push_back(static_cast<std::uint32_t>(schedule.t_at(i)));
  }
  sc.v3Chain = random_refinement_chain(n, orders, derive_seed(seed, 0));

  const VertexClass v1{0, n}, v2{1, n}, v3{2, n};
  const ProductSide pairs{v1, v2};
  sc.firstChain = random_edge_equipartition_chain(pairs, s, derive_seed(seed, 1));
  const auto edgeDepth =
      static_cast<std::uint32_t>(std::max<std::uint64_t>(s, sc.selectedEdgeLevels.back()));
  sc.secondChain =
      random_edge_equipartition_chain(ProductSide{pairs.as_class(3), v3}, edgeDepth,
                                      derive_seed(seed, 2));

  sc.gPrime = sc.secondChain.levels[s - 1].block(0);
  sc.h = pullback(sc.gPrime, pairs, v3);

  const AuxGraph aux = auxiliary_graph(sc.h, 3);
  sc.auxIdentity = aux.graph.left().size == sc.gPrime.left().size &&
                   aux.graph.right().size == sc.gPrime.right().size &&
                   aux.graph.edges() == sc.gPrime.edges();
  if (!sc.auxIdentity) throw Error(ErrorCode::InvariantViolation, "G' differs from G_H^3");

  for (std::uint32_t j = 1; j <= s; ++j) {
    const VertexPartition& v3Level = sc.v3Chain[sc.selectedVertexLevels[j - 1] - 1];
    std::vector<VertexSet> blocks{full_set(n), full_set(n)};
    for (auto& v : blocks[1]) v += n;
    for (const VertexSet& b : v3Level.blocks()) {
      VertexSet shifted = b;
      for (auto& v : shifted) v += 2 * n;
      blocks.push_back(std::move(shifted));
    }
    VertexPartition z(3 * n, std::move(blocks));
    std::vector<TaggedGraph> graphs;
    for (const BipartiteGraph& g : sc.firstChain.levels[j - 1].blocks()) graphs.push_back({0, 1, g});
    graphs = fill_missing_pairs(z, std::move(graphs));
    sc.probes.emplace_back(std::vector<std::uint32_t>{n, n, n}, std::move(z), std::move(graphs));
  }
  return sc;
}

MainScenario build_theorem_main_scenario(std::uint32_t s, std::uint32_t n, std::uint32_t t1,
                                         std::uint64_t seed) {
  if (s == 0) throw Error(ErrorCode::ParameterOutOfContract, "s must be positive");
  if (t1 == 0 || n % t1 != 0) {
    throw Error(ErrorCode::ParameterOutOfContract, "toy t(1) must divide n");
  }
  MainScenario sc{n, {}, ThreeGraph::complete({VertexClass{0, 1}, VertexClass{1, 1}, VertexClass{2, 1}}),
                  VertexPartition::trivial(1)};
  for (std::uint32_t x = 0; x < 6; ++x) {
    sc.parts.push_back(surrogate_part(n, s - 1, derive_seed(seed, x)));
  }
  sc.h = six_cycle_paste(sc.parts);

  Rational expected = make_rational(6, 8);
  expected /= Rational(BigInt(1) << (s - 1));
  if (sc.h.density() != expected) {
    throw Error(ErrorCode::InvariantViolation, "pasted density differs from 6/8 2^-(s-1)");
  }

  std::vector<VertexSet> blocks;
  for (std::uint32_t x = 0; x < 6; ++x) {
    const auto level = random_refinement_chain(n, {t1}, derive_seed(seed, 100 + x));
    const std::uint32_t base = (x % 3) * 2 * n + (x >= 3 ? n : 0);
    for (const VertexSet& b : level[0].blocks()) {
      VertexSet shifted = b;
      for (auto& v : shifted) v += base;
      blocks.push_back(std::move(shifted));
    }
  }
  sc.v0 = VertexPartition(6 * n, std::move(blocks));
  return sc;
}

}  // namespace hreg
