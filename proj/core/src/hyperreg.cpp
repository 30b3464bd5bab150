#include "hreg/hyperreg.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "hreg/errors.hpp"
#include "hreg/random.hpp"

namespace hreg {

AuxGraph auxiliary_graph(const ThreeGraph& h, std::uint32_t axis) {
  if (axis < 1 || axis > 3)
    throw Error(ErrorCode::ParameterOutOfContract, "axis must be 1, 2 or 3");
  const auto& cls = h.classes();
  const auto [j, k] = other_classes(axis - 1);
  const ProductSide product{cls[j], cls[k]};
  std::vector<Edge> edges;
  edges.reserve(h.edge_count());
  for (const Triple& t : h.triples()) {
    const std::array<std::uint32_t, 3> v{t.v1, t.v2, t.v3};
    edges.push_back({static_cast<std::uint32_t>(product.index(v[j], v[k])), v[axis - 1]});
  }
  return AuxGraph{axis, product,
                  BipartiteGraph(product.as_class(static_cast<std::uint32_t>(3 + axis)),
                                 cls[axis - 1], edges)};
}

TriadEmbedding TriadEmbedding::identity(const Triad& t) {
  return {full_set(t.a().size), full_set(t.b().size), full_set(t.c().size)};
}

std::uint64_t triangle_count(const Triad& t) {
  std::uint64_t total = 0;
  for (const Edge& e : t.ab().edges()) total += codegree(t, e.left, e.right);
  return total;
}

std::vector<Triple> triangle_support(const Triad& t) {
  std::vector<Triple> out;
  for (const Edge& e : t.ab().edges()) {
    auto ra = t.ac().row(e.left);
    auto rb = t.bc().row(e.right);
    for (std::size_t w = 0; w < ra.size(); ++w) {
      Word common = ra[w] & rb[w];
      while (common) {
        out.push_back({e.left, e.right,
                       static_cast<std::uint32_t>(w * 64 + std::countr_zero(common))});
        common &= common - 1;
      }
    }
  }
  return out;
}

namespace {

void check_embedding(const ThreeGraph& h, const Triad& t, const TriadEmbedding& emb) {
  const auto& cls = h.classes();
  auto fits = [](const VertexSet& s, std::uint32_t local, std::uint32_t bound) {
    if (s.size() != local) return false;
    return std::all_of(s.begin(), s.end(), [&](std::uint32_t v) { return v < bound; });
  };
  if (!fits(emb.a, t.a().size, cls[0].size) || !fits(emb.b, t.b().size, cls[1].size) ||
      !fits(emb.c, t.c().size, cls[2].size))
    throw Error(ErrorCode::ClassMismatch, "triad does not embed into the 3-graph's classes");
}

bool in_h(const ThreeGraph& h, const TriadEmbedding& emb, const Triple& tr) {
  return h.contains(emb.a[tr.v1], emb.b[tr.v2], emb.c[tr.v3]);
}

// Triangle list with H-membership and edge ids: AB edges first, then AC, BC.
struct TriangleIndex {
  std::vector<Edge> ab, ac, bc;
  std::vector<std::array<std::uint32_t, 3>> triEdges;
  std::vector<char> triInH;
  std::vector<std::vector<std::uint32_t>> edgeTris;
  std::uint64_t t = 0;
  std::uint64_t eh = 0;

  std::size_t edge_total() const { return ab.size() + ac.size() + bc.size(); }
};

TriangleIndex index_triangles(const ThreeGraph& h, const Triad& t, const TriadEmbedding& emb) {
  TriangleIndex ix;
  ix.ab = t.ab().edges();
  ix.ac = t.ac().edges();
  ix.bc = t.bc().edges();
  std::map<Edge, std::uint32_t> idAb, idAc, idBc;
  std::uint32_t next = 0;
  for (const Edge& e : ix.ab) idAb[e] = next++;
  for (const Edge& e : ix.ac) idAc[e] = next++;
  for (const Edge& e : ix.bc) idBc[e] = next++;
  ix.edgeTris.resize(next);
  for (const Triple& tr : triangle_support(t)) {
    const auto id = static_cast<std::uint32_t>(ix.triEdges.size());
    const std::array<std::uint32_t, 3> es{idAb.at({tr.v1, tr.v2}), idAc.at({tr.v1, tr.v3}),
                                          idBc.at({tr.v2, tr.v3})};
    ix.triEdges.push_back(es);
    const bool member = in_h(h, emb, tr);
    ix.triInH.push_back(member ? 1 : 0);
    for (auto e : es) ix.edgeTris[e].push_back(id);
    ++ix.t;
    ix.eh += member ? 1 : 0;
  }
  return ix;
}

SubtriadWitness witness_from(const TriangleIndex& ix, const std::vector<char>& present,
                             std::uint64_t t, std::uint64_t eh) {
  SubtriadWitness w;
  std::size_t id = 0;
  for (const Edge& e : ix.ab) if (present[id++]) w.ab.push_back(e);
  for (const Edge& e : ix.ac) if (present[id++]) w.ac.push_back(e);
  for (const Edge& e : ix.bc) if (present[id++]) w.bc.push_back(e);
  w.triangles = t;
  w.hEdges = eh;
  return w;
}

// Decides one subtriad given (t', e_H') against the whole triad's (t, e_H).
struct FrTest {
  i128 num, den;
  bool qualifies(i128 ts, i128 t) const { return ts > 0 && ts * den >= num * t; }
  bool violates(i128 ts, i128 ehs, i128 t, i128 eh) const {
    i128 gap = ehs * t - eh * ts;
    if (gap < 0) gap = -gap;
    return gap * den > num * ts * t;
  }
};

struct HypothesisTest {
  i128 num, den;
  bool qualifies(i128 ts, i128 t) const { return ts > 0 && ts * den >= num * t; }
  bool violates(i128 ts, i128 ehs, i128 t, i128 eh) const { return 3 * ehs * t < 2 * eh * ts; }
};

template <typename Test>
TriadVerdict subtriad_search(const ThreeGraph& h, const Triad& tri, const TriadEmbedding& emb,
                             const Test& test, const CheckParams& params) {
  check_embedding(h, tri, emb);
  TriangleIndex ix = index_triangles(h, tri, emb);
  TriadVerdict v;
  const std::size_t m = ix.edge_total();
  // Constant 1_H on T(P) makes every subtriad density equal d_H(P).
  if (ix.t == 0 || ix.eh == 0 || ix.eh == ix.t) {
    v.status = VerdictStatus::CertifiedRegular;
    v.method = CheckMethod::Exhaustive;
    return v;
  }
  bool exhaustive = true;
  switch (params.mode) {
    case CheckMode::Exhaustive:
      if (m > params.maxSubtriadEdges)
        throw Error(ErrorCode::BudgetExceeded, "triad has " + std::to_string(m) +
                                                   " edges, exhaustive budget " +
                                                   std::to_string(params.maxSubtriadEdges));
      break;
    case CheckMode::Randomized: exhaustive = false; break;
    case CheckMode::Auto: exhaustive = m <= params.maxSubtriadEdges; break;
  }
  const i128 t = static_cast<i128>(ix.t), eh = static_cast<i128>(ix.eh);
  if (exhaustive) {
    if (m > 40) throw Error(ErrorCode::BudgetExceeded, "subtriad enumeration above 2^40");
    v.method = CheckMethod::Exhaustive;
    std::vector<char> present(m, 0);
    std::vector<std::uint8_t> have(ix.triEdges.size(), 0);
    i128 ts = 0, ehs = 0;
    const std::uint64_t last = (std::uint64_t{1} << m);
    for (std::uint64_t i = 1; i < last; ++i) {
      const auto bit = static_cast<std::size_t>(std::countr_zero(i));
      const bool adding = !present[bit];
      present[bit] = adding ? 1 : 0;
      for (auto tri_id : ix.edgeTris[bit]) {
        if (adding) {
          if (++have[tri_id] == 3) {
            ++ts;
            ehs += ix.triInH[tri_id];
          }
        } else {
          if (have[tri_id]-- == 3) {
            --ts;
            ehs -= ix.triInH[tri_id];
          }
        }
      }
      ++v.effort.candidates;
      if (test.qualifies(ts, t) && test.violates(ts, ehs, t, eh)) {
        v.status = VerdictStatus::IrregularWithWitness;
        v.witness = witness_from(ix, present, static_cast<std::uint64_t>(ts),
                                 static_cast<std::uint64_t>(ehs));
        return v;
      }
    }
    v.status = VerdictStatus::CertifiedRegular;
    return v;
  }
  v.method = CheckMethod::Randomized;
  Rng rng(params.seed);
  const std::uint32_t na = tri.a().size, nb = tri.b().size, nc = tri.c().size;
  for (std::uint32_t r = 0; r < params.randomTrials; ++r) {
    ++v.effort.restarts;
    // Vertex-induced subtriad, and on odd trials a random half of its edges.
    std::vector<char> keepA(na, 0), keepB(nb, 0), keepC(nc, 0);
    for (auto x : rng.subset(na, static_cast<std::uint32_t>(rng.between(1, na)))) keepA[x] = 1;
    for (auto x : rng.subset(nb, static_cast<std::uint32_t>(rng.between(1, nb)))) keepB[x] = 1;
    for (auto x : rng.subset(nc, static_cast<std::uint32_t>(rng.between(1, nc)))) keepC[x] = 1;
    const bool thin = (r % 2) == 1;
    std::vector<char> present(m, 0);
    std::size_t id = 0;
    for (const Edge& e : ix.ab) present[id++] = keepA[e.left] && keepB[e.right] && (!thin || rng.chance(1, 2));
    for (const Edge& e : ix.ac) present[id++] = keepA[e.left] && keepC[e.right] && (!thin || rng.chance(1, 2));
    for (const Edge& e : ix.bc) present[id++] = keepB[e.left] && keepC[e.right] && (!thin || rng.chance(1, 2));
    i128 ts = 0, ehs = 0;
    for (std::size_t k = 0; k < ix.triEdges.size(); ++k) {
      const auto& es = ix.triEdges[k];
      if (present[es[0]] && present[es[1]] && present[es[2]]) {
        ++ts;
        ehs += ix.triInH[k];
      }
    }
    ++v.effort.candidates;
    if (test.qualifies(ts, t) && test.violates(ts, ehs, t, eh)) {
      v.status = VerdictStatus::IrregularWithWitness;
      v.witness = witness_from(ix, present, static_cast<std::uint64_t>(ts),
                               static_cast<std::uint64_t>(ehs));
      return v;
    }
  }
  v.status = VerdictStatus::UnknownNoWitnessFound;
  return v;
}

VerdictStatus combine(bool irregular, bool unknown) {
  if (irregular) return VerdictStatus::IrregularWithWitness;
  if (unknown) return VerdictStatus::UnknownNoWitnessFound;
  return VerdictStatus::CertifiedRegular;
}

void require_frame(const ThreeGraph& h, const TwoPartition& tp) {
  const auto& cls = h.classes();
  if (tp.frame().size() != 3 || tp.frame()[0] != cls[0].size || tp.frame()[1] != cls[1].size ||
      tp.frame()[2] != cls[2].size)
    throw Error(ErrorCode::FrameMismatch, "2-partition frame differs from the 3-graph's classes");
}

// Per-cluster-triple scaled entries F = t(P) * f, laid out [x][y][z].
struct ScaledF {
  std::uint32_t n = 0;
  std::vector<i128> f;
  BigInt tau;
};

ScaledF scaled_entries(const ThreeGraph& h, const Triad& t, const TriadEmbedding& emb) {
  check_embedding(h, t, emb);
  const std::uint32_t n = t.a().size;
  if (t.b().size != n || t.c().size != n)
    throw Error(ErrorCode::ClassSizeMismatch, "octahedron sum needs |A| = |B| = |C|");
  const auto support = triangle_support(t);
  std::uint64_t eh = 0;
  for (const Triple& tr : support) eh += in_h(h, emb, tr) ? 1 : 0;
  const i128 tau = static_cast<i128>(support.size()), e = static_cast<i128>(eh);
  ScaledF out;
  out.n = n;
  out.tau = BigInt(support.size());
  out.f.assign(std::size_t{n} * n * n, 0);
  for (const Triple& tr : support)
    out.f[(std::size_t{tr.v1} * n + tr.v2) * n + tr.v3] = in_h(h, emb, tr) ? tau - e : -e;
  return out;
}

// True when n^6 tau^8 stays below 2^120, so every partial sum fits in i128.
bool fits_i128(const ScaledF& s) {
  BigInt bound = BigInt(s.n);
  bound = bound * bound * bound;
  bound = bound * bound;
  BigInt t8 = s.tau * s.tau;
  t8 = t8 * t8;
  t8 = t8 * t8;
  return bound * t8 < (BigInt(1) << 120);
}

template <typename Acc>
Acc naive_sum(const ScaledF& s) {
  const std::uint32_t n = s.n;
  auto F = [&](std::uint32_t x, std::uint32_t y, std::uint32_t z) -> Acc {
    return Acc(s.f[(std::size_t{x} * n + y) * n + z]);
  };
  Acc total = 0;
  for (std::uint32_t x0 = 0; x0 < n; ++x0)
    for (std::uint32_t x1 = 0; x1 < n; ++x1)
      for (std::uint32_t y0 = 0; y0 < n; ++y0)
        for (std::uint32_t y1 = 0; y1 < n; ++y1)
          for (std::uint32_t z0 = 0; z0 < n; ++z0) {
            Acc head = F(x0, y0, z0);
            if (head == 0) continue;
            head *= F(x0, y1, z0);
            if (head == 0) continue;
            head *= F(x1, y0, z0);
            if (head == 0) continue;
            head *= F(x1, y1, z0);
            if (head == 0) continue;
            for (std::uint32_t z1 = 0; z1 < n; ++z1) {
              Acc p = head * F(x0, y0, z1);
              if (p == 0) continue;
              p *= F(x0, y1, z1);
              p *= F(x1, y0, z1);
              p *= F(x1, y1, z1);
              total += p;
            }
          }
  return total;
}

template <typename Acc>
Acc fast_sum(const ScaledF& s) {
  const std::uint32_t n = s.n;
  std::vector<Acc> m(std::size_t{n} * n);
  Acc total = 0;
  for (std::uint32_t x0 = 0; x0 < n; ++x0) {
    for (std::uint32_t x1 = 0; x1 < n; ++x1) {
      for (std::uint32_t y = 0; y < n; ++y)
        for (std::uint32_t z = 0; z < n; ++z)
          m[std::size_t{y} * n + z] = Acc(s.f[(std::size_t{x0} * n + y) * n + z]) *
                                      Acc(s.f[(std::size_t{x1} * n + y) * n + z]);
      for (std::uint32_t y0 = 0; y0 < n; ++y0)
        for (std::uint32_t y1 = 0; y1 < n; ++y1) {
          Acc inner = 0;
          for (std::uint32_t z = 0; z < n; ++z)
            inner += m[std::size_t{y0} * n + z] * m[std::size_t{y1} * n + z];
          total += inner * inner;
        }
    }
  }
  return total;
}

BigInt to_big(i128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  BigInt out = BigInt(static_cast<std::uint64_t>(u >> 64));
  out <<= 64;
  out += BigInt(static_cast<std::uint64_t>(u));
  return neg ? BigInt(-out) : out;
}

Rational scaled_result(const BigInt& total, const BigInt& tau) {
  if (tau == 0) return Rational(0);
  BigInt t8 = tau * tau;
  t8 = t8 * t8;
  t8 = t8 * t8;
  return Rational(total, t8);
}

Rational power(const Rational& x, std::uint32_t k) {
  Rational r = 1;
  for (std::uint32_t i = 0; i < k; ++i) r *= x;
  return r;
}

}  // namespace

TriadStats triad_density(const ThreeGraph& h, const Triad& t, const TriadEmbedding& emb) {
  check_embedding(h, t, emb);
  TriadStats s;
  for (const Triple& tr : triangle_support(t)) {
    ++s.triangleCount;
    s.hEdgeCount += in_h(h, emb, tr) ? 1 : 0;
  }
  s.density = s.triangleCount == 0 ? Rational(0)
                                   : Rational(BigInt(s.hEdgeCount), BigInt(s.triangleCount));
  return s;
}

TriadStats triad_density(const ThreeGraph& h, const Triad& t) {
  return triad_density(h, t, TriadEmbedding::identity(t));
}

TriadVerdict check_fr_triad(const ThreeGraph& h, const Triad& t, const TriadEmbedding& emb,
                            const Rational& eps, const CheckParams& params) {
  if (eps <= 0 || eps > 1)
    throw Error(ErrorCode::ParameterOutOfContract, "epsilon must lie in (0,1]");
  const auto sm = to_small(eps);
  return subtriad_search(h, t, emb, FrTest{sm.num, sm.den}, params);
}

TriadVerdict check_subtriad_hypothesis(const ThreeGraph& h, const Triad& t,
                                       const TriadEmbedding& emb, const Rational& delta,
                                       const CheckParams& params) {
  if (delta <= 0 || delta > 1)
    throw Error(ErrorCode::ParameterOutOfContract, "delta must lie in (0,1]");
  const auto sm = to_small(delta);
  return subtriad_search(h, t, emb, HypothesisTest{sm.num, sm.den}, params);
}

namespace {

BipartiteGraph relabel(const BipartiteGraph& g, std::uint32_t leftId, std::uint32_t rightId,
                       bool transpose) {
  const BipartiteGraph src = transpose ? g.transposed() : g;
  return BipartiteGraph(VertexClass{leftId, src.left().size},
                        VertexClass{rightId, src.right().size}, src.edges());
}

}  // namespace

std::vector<TriadRef> triads_of(const TwoPartition& tp) {
  if (tp.frame().size() != 3) throw Error(ErrorCode::FrameMismatch, "expected a three-class frame");
  const auto proj = sub_partitions(tp);
  const auto& z = tp.z();
  // graphs touching each unordered cluster pair, in tp order
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::size_t>> byPair;
  for (std::size_t gi = 0; gi < tp.graphs().size(); ++gi) {
    const auto& tg = tp.graphs()[gi];
    byPair[{std::min(tg.first, tg.second), std::max(tg.first, tg.second)}].push_back(gi);
  }
  auto between = [&](std::uint32_t x, std::uint32_t y) -> const std::vector<std::size_t>& {
    static const std::vector<std::size_t> none;
    auto it = byPair.find({std::min(x, y), std::max(x, y)});
    return it == byPair.end() ? none : it->second;
  };
  auto local = [&](std::uint32_t cluster, std::size_t cls) {
    VertexSet s;
    for (auto v : z.block(cluster)) s.push_back(v - tp.offset(cls));
    return s;
  };
  std::vector<TriadRef> out;
  for (auto ca : proj.zClusters[0])
    for (auto cb : proj.zClusters[1])
      for (auto cc : proj.zClusters[2])
        for (auto gab : between(ca, cb))
          for (auto gac : between(ca, cc))
            for (auto gbc : between(cb, cc)) {
              const auto& tab = tp.graphs()[gab];
              const auto& tac = tp.graphs()[gac];
              const auto& tbc = tp.graphs()[gbc];
              Triad tri(relabel(tab.graph, 0, 1, tab.first != ca),
                        relabel(tac.graph, 0, 2, tac.first != ca),
                        relabel(tbc.graph, 1, 2, tbc.first != cb));
              out.push_back(TriadRef{{ca, cb, cc},
                                     {gab, gac, gbc},
                                     std::move(tri),
                                     {local(ca, 0), local(cb, 1), local(cc, 2)}});
            }
  return out;
}

GoodnessReport is_delta_good(const TwoPartition& tp, const Level& gamma,
                             const CheckParams& params) {
  GoodnessReport rep;
  bool irregular = false;
  for (std::size_t gi = 0; gi < tp.graphs().size(); ++gi) {
    CheckParams p = params;
    p.seed = derive_seed(params.seed, gi);
    GraphVerdict gv{gi, check_delta_regular(tp.graphs()[gi].graph, gamma, p)};
    irregular |= gv.verdict.irregular();
    rep.caveats += gv.verdict.unknown() ? 1 : 0;
    rep.graphs.push_back(std::move(gv));
  }
  rep.aggregate = combine(irregular, rep.caveats > 0);
  return rep;
}

GoodnessReport is_delta_good(const TwoPartition& tp, const Rational& delta,
                             const CheckParams& params) {
  if (delta <= 0 || delta > 1)
    throw Error(ErrorCode::ParameterOutOfContract, "delta must lie in (0,1]");
  return is_delta_good(tp, Level::of(delta), params);
}

ThreePartitionReport check_delta_regular_3partition(const ThreeGraph& h, const TwoPartition& tp,
                                                    const Rational& delta,
                                                    const CheckParams& params) {
  require_frame(h, tp);
  const Level gamma = Level::of(delta);
  ThreePartitionReport rep;
  rep.goodness = is_delta_good(tp, delta, params);
  rep.caveats = rep.goodness.caveats;
  const auto proj = sub_partitions(tp);
  bool ok = rep.goodness.aggregate != VerdictStatus::IrregularWithWitness;
  for (std::uint32_t axis = 1; axis <= 3; ++axis) {
    const auto aux = auxiliary_graph(h, axis);
    CheckParams p = params;
    p.seed = derive_seed(params.seed, 1000 + axis);
    auto er = check_delta_partition_with_edits(aux.graph, proj.e[axis - 1].as_vertex_partition(),
                                               proj.z[axis - 1], gamma, p);
    rep.caveats += er.after ? er.after->caveats : er.before.caveats;
    ok = ok && er.outcome != EditOutcome::NotCertified;
    rep.axes.push_back(std::move(er));
  }
  rep.passes = ok;
  return rep;
}

EquipartitionReport check_equipartition_params(const TwoPartition& tp, std::uint32_t ell,
                                               std::uint32_t t, const Rational& eps2,
                                               const CheckParams& params) {
  if (ell == 0) throw Error(ErrorCode::ParameterOutOfContract, "l must be positive");
  EquipartitionReport rep;
  rep.orderOk = tp.z().order() == t;
  rep.equitable = is_equitable(tp.z());
  const Rational target(1, ell);
  bool irregular = false;
  for (std::size_t gi = 0; gi < tp.graphs().size(); ++gi) {
    const auto& g = tp.graphs()[gi].graph;
    const Rational d = density(g);
    if (d < target - eps2 || d > target + eps2) rep.densityViolations.push_back(gi);
    CheckParams p = params;
    p.seed = derive_seed(params.seed, gi);
    GraphVerdict gv{gi, check_eps_regular(g, eps2, p)};
    irregular |= gv.verdict.irregular();
    rep.caveats += gv.verdict.unknown() ? 1 : 0;
    rep.regularity.push_back(std::move(gv));
  }
  rep.regularityAggregate = combine(irregular, rep.caveats > 0);
  rep.passes = rep.orderOk && rep.equitable && rep.densityViolations.empty() && !irregular;
  return rep;
}

TriadPartitionReport check_fr_partition(const ThreeGraph& h, const TwoPartition& tp,
                                        std::uint32_t ell, std::uint32_t t, const Rational& eps2,
                                        const Rational& eps, const CheckParams& params) {
  require_frame(h, tp);
  TriadPartitionReport rep;
  rep.equipartition = check_equipartition_params(tp, ell, t, eps2, params);
  const auto triads = triads_of(tp);
  for (std::size_t i = 0; i < triads.size(); ++i) {
    const auto& tr = triads[i];
    CheckParams p = params;
    p.seed = derive_seed(params.seed, i);
    const auto v = check_fr_triad(h, tr.triad, tr.embedding, eps, p);
    TriadJudgement j{tr.clusters, tr.graphs, triangle_count(tr.triad), v.status};
    if (v.irregular()) rep.irregularMass += j.triangles;
    rep.caveats += v.unknown() ? 1 : 0;
    rep.triads.push_back(j);
  }
  const BigInt nv = BigInt(tp.z().ground_size());
  rep.bound = eps * nv * nv * nv;
  rep.passes = rep.equipartition.passes && Rational(rep.irregularMass) <= rep.bound;
  return rep;
}

Rational octahedron_sum_naive(const ThreeGraph& h, const Triad& t, const TriadEmbedding& emb) {
  const ScaledF s = scaled_entries(h, t, emb);
  if (s.tau == 0) return Rational(0);
  const BigInt total = fits_i128(s) ? to_big(naive_sum<i128>(s)) : naive_sum<BigInt>(s);
  return scaled_result(total, s.tau);
}

Rational octahedron_sum_fast(const ThreeGraph& h, const Triad& t, const TriadEmbedding& emb) {
  const ScaledF s = scaled_entries(h, t, emb);
  if (s.tau == 0) return Rational(0);
  const BigInt total = fits_i128(s) ? to_big(fast_sum<i128>(s)) : fast_sum<BigInt>(s);
  return scaled_result(total, s.tau);
}

Rational balanced_sum(const ThreeGraph& h, const Triad& t, const TriadEmbedding& emb) {
  check_embedding(h, t, emb);
  const auto stats = triad_density(h, t, emb);
  if (stats.triangleCount == 0) return Rational(0);
  Rational sum = 0;
  for (const Triple& tr : triangle_support(t))
    sum += (in_h(h, emb, tr) ? Rational(1) : Rational(0)) - stats.density;
  return sum;
}

QuasirandomReport check_quasirandom_triad(const ThreeGraph& h, const Triad& t,
                                          const TriadEmbedding& emb, const Rational& alpha) {
  QuasirandomReport rep;
  rep.octahedronSum = octahedron_sum_fast(h, t, emb);
  rep.d0 = density(t.ab());
  rep.d1 = density(t.ac());
  rep.d2 = density(t.bc());
  rep.substituted = !(rep.d0 == rep.d1 && rep.d1 == rep.d2);
  const Rational dterm = rep.substituted ? power(rep.d0 * rep.d1 * rep.d2, 4) : power(rep.d0, 12);
  const BigInt n(t.a().size);
  rep.bound = alpha * dterm * power(Rational(n), 6);
  rep.verdict = rep.octahedronSum <= rep.bound;
  return rep;
}

TriadPartitionReport check_quasirandom_partition(const ThreeGraph& h, const TwoPartition& tp,
                                                 std::uint32_t ell, std::uint32_t t,
                                                 const Rational& eps2, const Rational& alpha) {
  require_frame(h, tp);
  TriadPartitionReport rep;
  rep.equipartition = check_equipartition_params(tp, ell, t, eps2, CheckParams{});
  for (const auto& tr : triads_of(tp)) {
    const auto q = check_quasirandom_triad(h, tr.triad, tr.embedding, alpha);
    TriadJudgement j{tr.clusters, tr.graphs, triangle_count(tr.triad),
                     q.verdict ? VerdictStatus::CertifiedRegular
                               : VerdictStatus::IrregularWithWitness};
    if (!q.verdict) rep.irregularMass += j.triangles;
    rep.caveats += q.substituted ? 1 : 0;
    rep.triads.push_back(j);
  }
  const BigInt nv = BigInt(tp.z().ground_size());
  rep.bound = alpha * nv * nv * nv;
  rep.passes = rep.equipartition.passes && Rational(rep.irregularMass) <= rep.bound;
  return rep;
}

SchachtReport schacht_predicate(const Triad& t, const ThreeGraph& h, const TriadEmbedding& emb,
                                const Rational& eps, std::uint32_t c, const CheckParams& params) {
  if (c < 1) throw Error(ErrorCode::ParameterOutOfContract, "C must be at least 1");
  if (eps <= 0 || eps > 1)
    throw Error(ErrorCode::ParameterOutOfContract, "epsilon must lie in (0,1]");
  SchachtReport rep;
  rep.quasirandom = check_quasirandom_triad(h, t, emb, power(eps, c));
  const std::array<const BipartiteGraph*, 3> sides{&t.ab(), &t.ac(), &t.bc()};
  bool regular = true;
  rep.certain = true;
  for (std::size_t i = 0; i < 3; ++i) {
    const Rational d = density(*sides[i]);
    if (d == 0) {
      rep.sides[i].status = VerdictStatus::CertifiedRegular;
      continue;
    }
    CheckParams p = params;
    p.seed = derive_seed(params.seed, i);
    rep.sides[i] = check_eps_regular(*sides[i], power(d, c), p);
    regular = regular && !rep.sides[i].irregular();
    rep.certain = rep.certain && !rep.sides[i].unknown();
  }
  rep.hypothesis = rep.quasirandom.verdict && regular;
  return rep;
}

TriangleBand triangle_count_bound(const Triad& t, const Rational& eps) {
  TriangleBand band;
  band.count = triangle_count(t);
  const Rational volume =
      Rational(BigInt(t.a().size) * BigInt(t.b().size) * BigInt(t.c().size));
  const Rational centre = density(t.ab()) * density(t.ac()) * density(t.bc()) * volume;
  band.lower = centre - 7 * eps * volume;
  band.upper = centre + 7 * eps * volume;
  const Rational count{BigInt(band.count)};
  band.inBand = band.lower <= count && count <= band.upper;
  return band;
}

HypothesisReport subtriad_hypothesis_check(const ThreeGraph& h, const TwoPartition& tp,
                                           const Rational& delta, const CheckParams& params) {
  require_frame(h, tp);
  HypothesisReport rep;
  bool irregular = false;
  const auto triads = triads_of(tp);
  for (std::size_t i = 0; i < triads.size(); ++i) {
    const auto& tr = triads[i];
    CheckParams p = params;
    p.seed = derive_seed(params.seed, i);
    const auto v = check_subtriad_hypothesis(h, tr.triad, tr.embedding, delta, p);
    irregular |= v.irregular();
    rep.caveats += v.unknown() ? 1 : 0;
    rep.fullyExhaustive = rep.fullyExhaustive && v.method == CheckMethod::Exhaustive;
    rep.triads.push_back({tr.clusters, tr.graphs, triangle_count(tr.triad), v.status});
  }
  rep.aggregate = combine(irregular, rep.caveats > 0);
  return rep;
}

ReductionReport reduction_check(const ThreeGraph& h, const TwoPartition& tp, const Rational& delta,
                                std::uint32_t ell, std::uint32_t t, const Rational& eps2,
                                const CheckParams& params) {
  require_frame(h, tp);
  if (delta <= 0 || delta > 1)
    throw Error(ErrorCode::ParameterOutOfContract, "delta must lie in (0,1]");
  ReductionReport rep;
  rep.equipartition = check_equipartition_params(tp, ell, t, eps2, params);
  rep.hypothesis = subtriad_hypothesis_check(h, tp, delta, params);
  const BigInt l3 = BigInt(ell) * ell * ell;
  rep.parameterOk = eps2 <= delta * delta / (88 * l3);
  rep.preconditionsOk = rep.equipartition.passes &&
                        rep.hypothesis.aggregate != VerdictStatus::IrregularWithWitness &&
                        rep.parameterOk;

  const auto proj = sub_partitions(tp);
  const auto aux = auxiliary_graph(h, 3);
  const auto& eparts = proj.e[2];
  rep.conclusion = check_perfect_delta_partition(aux.graph, eparts.as_vertex_partition(),
                                                 proj.z[2], Level::from_square(4 * delta), params);

  // d_G(E, C) = d_H(E, A x C, B x C) and t(P) = |E||C| for every E and C.
  const auto& z = tp.z();
  for (std::size_t bi = 0; bi < eparts.order(); ++bi) {
    const auto& lifted = eparts.block(bi);
    if (lifted.edge_count() == 0) continue;
    const auto& src = tp.graphs()[proj.eSource[2][bi]];
    const bool srcForward = tp.class_of(z.block(src.first).front()) == 0;
    const std::uint32_t ca = srcForward ? src.first : src.second;
    const std::uint32_t cb = srcForward ? src.second : src.first;
    VertexSet aLocal, bLocal, eIdx;
    for (auto v : z.block(ca)) aLocal.push_back(v - tp.offset(0));
    for (auto v : z.block(cb)) bLocal.push_back(v - tp.offset(1));
    for (const Edge& e : lifted.edges())
      eIdx.push_back(static_cast<std::uint32_t>(aux.product.index(e.left, e.right)));
    const BipartiteGraph eGraph = relabel(src.graph, 0, 1, !srcForward);
    for (auto cc : proj.zClusters[2]) {
      VertexSet cLocal;
      for (auto v : z.block(cc)) cLocal.push_back(v - tp.offset(2));
      const VertexClass A{0, static_cast<std::uint32_t>(aLocal.size())};
      const VertexClass B{1, static_cast<std::uint32_t>(bLocal.size())};
      const VertexClass C{2, static_cast<std::uint32_t>(cLocal.size())};
      const Triad p(BipartiteGraph(A, B, eGraph.edges()), BipartiteGraph::complete(A, C),
                    BipartiteGraph::complete(B, C));
      const auto stats = triad_density(h, p, TriadEmbedding{aLocal, bLocal, cLocal});
      const Rational dG = induced_density(aux.graph, eIdx, cLocal);
      ++rep.identityChecks;
      if (dG != stats.density || stats.triangleCount != lifted.edge_count() * cLocal.size())
        ++rep.identityFailures;
    }
  }
  rep.passes = rep.preconditionsOk &&
               rep.conclusion.aggregate != VerdictStatus::IrregularWithWitness &&
               rep.identityFailures == 0;
  return rep;
}

}  // namespace hreg
