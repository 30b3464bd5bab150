#include "hreg/suites.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "hreg/bigcount.hpp"
#include "hreg/constructions.hpp"
#include "hreg/errors.hpp"
#include "hreg/hyperreg.hpp"
#include "hreg/io.hpp"
#include "hreg/random.hpp"
#include "hreg/regcheck.hpp"

namespace hreg {

namespace {

struct Trial {
  std::uint32_t index;
  std::uint32_t scale;
  std::uint64_t seed;
  Rng rng;
  std::map<std::string, std::uint64_t>& counters;

  void count(const std::string& name, std::uint64_t k = 1) { counters[name] += k; }
  std::uint32_t between(std::uint32_t lo, std::uint32_t hi) {
    return static_cast<std::uint32_t>(rng.between(lo, hi));
  }
};

struct TrialResult {
  std::string instance;
  bool pass = true;
  bool unknown = false;
  std::string detail;
};

CheckParams exhaustive(std::uint64_t seed) {
  CheckParams p;
  p.mode = CheckMode::Exhaustive;
  p.seed = seed;
  return p;
}

// ceil(r * n) for r >= 0.
std::uint32_t ceil_mul(const Rational& r, std::uint32_t n) {
  const BigInt num = numerator(r) * n;
  const BigInt den = denominator(r);
  return static_cast<std::uint32_t>((num + den - 1) / den);
}

BipartiteGraph random_graph(Rng& rng, std::uint32_t a, std::uint32_t b, std::uint64_t num,
                            std::uint64_t den, std::uint32_t leftId = 0, std::uint32_t rightId = 1) {
  std::vector<Edge> edges;
  for (std::uint32_t l = 0; l < a; ++l)
    for (std::uint32_t r = 0; r < b; ++r)
      if (rng.chance(num, den)) edges.push_back({l, r});
  return BipartiteGraph(VertexClass{leftId, a}, VertexClass{rightId, b}, edges);
}

ThreeGraph random_threegraph(Rng& rng, std::array<std::uint32_t, 3> n, std::uint64_t num,
                             std::uint64_t den) {
  std::vector<Triple> triples;
  for (std::uint32_t x = 0; x < n[0]; ++x)
    for (std::uint32_t y = 0; y < n[1]; ++y)
      for (std::uint32_t z = 0; z < n[2]; ++z)
        if (rng.chance(num, den)) triples.push_back({x, y, z});
  return ThreeGraph({VertexClass{0, n[0]}, VertexClass{1, n[1]}, VertexClass{2, n[2]}}, triples);
}

Triad random_triad(Rng& rng, std::uint32_t a, std::uint32_t b, std::uint32_t c) {
  auto side = [&](std::uint32_t l, std::uint32_t r, std::uint32_t li, std::uint32_t ri) {
    return random_graph(rng, l, r, rng.between(1, 4), 4, li, ri);
  };
  BipartiteGraph ab = side(a, b, 0, 1);
  BipartiteGraph ac = side(a, c, 0, 2);
  BipartiteGraph bc = side(b, c, 1, 2);
  return Triad(std::move(ab), std::move(ac), std::move(bc));
}

// Labels in 0..k-1, each used at least once.
std::vector<std::uint32_t> random_labels(Rng& rng, std::uint32_t n, std::uint32_t k) {
  std::vector<std::uint32_t> labels(n);
  for (std::uint32_t v = 0; v < n; ++v) labels[v] = v < k ? v : static_cast<std::uint32_t>(rng.below(k));
  rng.shuffle(labels);
  return labels;
}

// Renumbers labels 0.. in order of first occurrence; returns the count.
std::uint32_t compress(std::vector<std::uint32_t>& labels) {
  std::map<std::uint32_t, std::uint32_t> ids;
  for (auto& l : labels) {
    auto [it, fresh] = ids.emplace(l, static_cast<std::uint32_t>(ids.size()));
    l = it->second;
  }
  return static_cast<std::uint32_t>(ids.size());
}

VertexPartition partition_of(std::vector<std::uint32_t> labels) {
  const std::uint32_t k = compress(labels);
  return VertexPartition::from_labels(labels, k);
}

VertexSet random_nonempty_subset(Rng& rng, std::uint32_t n) {
  return rng.subset(n, static_cast<std::uint32_t>(rng.between(1, n)));
}

std::uint64_t symmetric_difference(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out.size();
}

bool is_union_of_blocks(const VertexSet& s, const VertexPartition& q) {
  for (const auto& blk : q.blocks()) {
    const bool first = std::binary_search(s.begin(), s.end(), blk.front());
    for (auto v : blk)
      if (std::binary_search(s.begin(), s.end(), v) != first) return false;
  }
  return true;
}

ThreeGraph induced_threegraph(const ThreeGraph& h, const std::array<VertexSet, 3>& subs) {
  std::array<std::vector<std::int64_t>, 3> rank;
  for (std::size_t c = 0; c < 3; ++c) {
    rank[c].assign(h.classes()[c].size, -1);
    for (std::size_t i = 0; i < subs[c].size(); ++i) rank[c][subs[c][i]] = static_cast<std::int64_t>(i);
  }
  std::vector<Triple> triples;
  for (const Triple& t : h.triples()) {
    if (rank[0][t.v1] < 0 || rank[1][t.v2] < 0 || rank[2][t.v3] < 0) continue;
    triples.push_back({static_cast<std::uint32_t>(rank[0][t.v1]),
                       static_cast<std::uint32_t>(rank[1][t.v2]),
                       static_cast<std::uint32_t>(rank[2][t.v3])});
  }
  std::array<VertexClass, 3> classes;
  for (std::uint32_t c = 0; c < 3; ++c)
    classes[c] = VertexClass{c, static_cast<std::uint32_t>(subs[c].size())};
  return ThreeGraph(classes, triples);
}

std::string rat(const Rational& r) { return to_string(r); }

std::string set_text(const VertexSet& s) {
  std::string out = "set";
  for (auto v : s) out += " " + std::to_string(v);
  return out + "\n";
}

// ---------------------------------------------------------------------------

TrialResult star_union(Trial& tr) {
  const Rational delta = make_rational(1, 4);
  const CheckParams p = exhaustive(tr.seed);
  const std::uint32_t a = tr.between(2, tr.scale), b = tr.between(2, tr.scale);
  const std::uint32_t k = tr.between(2, 3);
  const VertexClass L{0, a}, R{1, b};

  auto all_certified = [&](const std::vector<BipartiteGraph>& fam) {
    return std::all_of(fam.begin(), fam.end(), [&](const BipartiteGraph& g) {
      return check_delta_regular(g, delta, p).certified();
    });
  };

  std::vector<BipartiteGraph> family;
  bool found = false;
  for (int attempt = 0; attempt < 40 && !found; ++attempt) {
    std::vector<std::vector<Edge>> parts(k);
    for (std::uint32_t l = 0; l < a; ++l)
      for (std::uint32_t r = 0; r < b; ++r) {
        const auto j = tr.rng.below(k + 1);
        if (j < k) parts[j].push_back({l, r});
      }
    family.clear();
    for (const auto& e : parts) family.emplace_back(L, R, e);
    found = all_certified(family);
  }
  for (int attempt = 0; attempt < 40 && !found; ++attempt) {
    std::vector<Edge> dense;
    for (std::uint32_t l = 0; l < a; ++l)
      for (std::uint32_t r = 0; r < b; ++r)
        if (!tr.rng.chance(1, 8)) dense.push_back({l, r});
    family.assign(1, BipartiteGraph(L, R, dense));
    for (std::uint32_t j = 1; j < k; ++j) family.push_back(BipartiteGraph::empty(L, R));
    found = all_certified(family);
  }
  if (!found) {
    family.assign(1, BipartiteGraph::complete(L, R));
    for (std::uint32_t j = 1; j < k; ++j) family.push_back(BipartiteGraph::empty(L, R));
  }
  const auto nonempty = std::count_if(family.begin(), family.end(),
                                      [](const BipartiteGraph& g) { return g.edge_count() > 0; });
  if (nonempty >= 2) tr.count("nontrivial");

  TrialResult res;
  for (const auto& g : family) res.instance += format_graph(g);
  const BipartiteGraph u = edge_disjoint_union(family);
  const Verdict v = check_delta_regular(u, delta, p);
  res.pass = v.certified();
  res.detail = std::to_string(nonempty) + " nonempty member(s); union " +
               std::string(to_string(v.status));
  return res;
}

TrialResult refinement_union(Trial& tr) {
  const std::uint32_t n = tr.between(4, tr.scale);
  const std::uint32_t k = tr.between(1, std::min<std::uint32_t>(n, 6));
  const VertexPartition p = VertexPartition::from_labels(random_labels(tr.rng, n, k), k);
  const Rational delta(tr.between(1, 10), 20);

  auto refine = [&](bool perturb) {
    std::vector<std::uint32_t> labels(n);
    for (std::uint32_t v = 0; v < n; ++v) labels[v] = p.label_of(v) * 3 + static_cast<std::uint32_t>(tr.rng.below(3));
    if (perturb) {
      const auto moves = tr.rng.below(n / 4 + 1);
      for (std::uint64_t m = 0; m < moves; ++m) {
        labels[tr.rng.below(n)] = labels[tr.rng.below(n)];
      }
    }
    return partition_of(labels);
  };
  std::optional<VertexPartition> q;
  for (int attempt = 0; attempt < 50 && !q; ++attempt) {
    VertexPartition cand = refine(true);
    if (approx_refines(cand, p, delta)) q = std::move(cand);
  }
  if (!q) q = refine(false);

  TrialResult res;
  res.instance = format_partition(p) + format_partition(*q) + rat(delta);
  const UnionExtract ue = refinement_union_extract(*q, p, delta);
  const std::uint64_t sd = symmetric_difference(ue.p, ue.q);
  res.pass = ue.p == p.block(ue.blockIndex) && is_union_of_blocks(ue.q, *q) &&
             sd == ue.symmetricDifference && Rational(sd) <= 3 * delta * Rational(ue.p.size());
  res.detail = "|P xor Q| = " + std::to_string(sd) + ", |P| = " + std::to_string(ue.p.size()) +
               ", delta = " + rat(delta);
  return res;
}

TrialResult uniform_refinement(Trial& tr) {
  const std::uint32_t n1 = tr.between(2, tr.scale), n2 = tr.between(2, tr.scale);
  const std::uint32_t k1 = tr.between(1, n1), k2 = tr.between(1, n2);
  const VertexPartition z1 = VertexPartition::from_labels(random_labels(tr.rng, n1, k1), k1);
  const VertexPartition z2 = VertexPartition::from_labels(random_labels(tr.rng, n2, k2), k2);
  const Rational delta(tr.between(1, 6), 18);
  const std::uint32_t cells = n1 * n2;
  const ProductSide prod{VertexClass{0, n1}, VertexClass{1, n2}};

  // E_3: one complete graph per cluster pair, seen as a partition of V1 x V2.
  std::vector<std::uint32_t> eLabels(cells);
  for (std::uint32_t c = 0; c < cells; ++c) {
    auto [v1, v2] = prod.split(c);
    eLabels[c] = z1.label_of(v1) * k2 + z2.label_of(v2);
  }
  const VertexPartition e3 = VertexPartition::from_labels(eLabels, k1 * k2);

  const std::uint32_t groups = tr.between(1, k1 * k2);
  const auto groupOf = random_labels(tr.rng, k1 * k2, groups);
  auto coarse = [&](bool perturb) {
    std::vector<std::uint32_t> g(cells);
    for (std::uint32_t c = 0; c < cells; ++c) g[c] = groupOf[eLabels[c]];
    if (perturb) {
      const auto moves = tr.rng.below(cells / 4 + 1);
      for (std::uint64_t m = 0; m < moves; ++m) g[tr.rng.below(cells)] = g[tr.rng.below(cells)];
    }
    return partition_of(g);
  };
  std::optional<VertexPartition> gp;
  for (int attempt = 0; attempt < 50 && !gp; ++attempt) {
    VertexPartition cand = coarse(true);
    if (approx_refines(e3, cand, delta)) gp = std::move(cand);
  }
  if (!gp) gp = coarse(false);

  TrialResult res;
  res.instance = format_partition(z1) + format_partition(z2) + format_partition(*gp) + rat(delta);
  const UnionExtract ue = refinement_union_extract(e3, *gp, delta);
  const std::uint64_t sd = symmetric_difference(ue.p, ue.q);
  std::vector<Edge> edges;
  for (auto c : ue.q) {
    auto [v1, v2] = prod.split(c);
    edges.push_back({v1, v2});
  }
  const BipartiteGraph ge(prod.first, prod.second, edges);
  const auto rep = check_perfect_delta_partition(ge, z1, z2, Level::of(delta), exhaustive(tr.seed));
  res.pass = Rational(sd) <= 3 * delta * Rational(ue.p.size()) && is_union_of_blocks(ue.q, e3) &&
             rep.aggregate == VerdictStatus::CertifiedRegular;
  res.detail = "|G xor G_E| = " + std::to_string(sd) + " of |G| = " + std::to_string(ue.p.size()) +
               "; G_E pairs " + std::string(to_string(rep.aggregate));
  return res;
}

TrialResult restriction(Trial& tr) {
  const Rational delta = make_rational(1, 8);
  const CheckParams params = exhaustive(tr.seed);
  std::array<std::uint32_t, 3> n{tr.between(2, tr.scale), tr.between(2, tr.scale),
                                 tr.between(2, tr.scale)};
  const std::vector<std::uint32_t> frame{n[0], n[1], n[2]};

  for (int attempt = 0; attempt < 30; ++attempt) {
    const bool singletons = attempt >= 15;
    std::array<VertexSet, 3> subs;
    std::vector<VertexSet> blocks;
    std::uint32_t offset = 0;
    for (std::size_t c = 0; c < 3; ++c) {
      subs[c] = random_nonempty_subset(tr.rng, n[c]);
      VertexSet inside = subs[c], outside;
      for (std::uint32_t v = 0; v < n[c]; ++v)
        if (!std::binary_search(inside.begin(), inside.end(), v)) outside.push_back(v);
      for (VertexSet* part : {&inside, &outside}) {
        tr.rng.shuffle(*part);
        for (std::size_t i = 0; i < part->size();) {
          const std::size_t len = singletons ? 1 : std::min<std::size_t>(tr.rng.between(1, 2), part->size() - i);
          VertexSet blk;
          for (std::size_t j = i; j < i + len; ++j) blk.push_back((*part)[j] + offset);
          std::sort(blk.begin(), blk.end());
          blocks.push_back(std::move(blk));
          i += len;
        }
      }
      offset += n[c];
    }
    VertexPartition z(offset, std::move(blocks));
    auto graphs = fill_missing_pairs(z, {});
    const TwoPartition tp(frame, z, std::move(graphs));
    const ThreeGraph h = random_threegraph(tr.rng, n, 1, 2);
    const ThreeGraph hs = induced_threegraph(h, subs);
    if (hs.edge_count() == 0) continue;

    const auto pre = check_delta_regular_3partition(h, tp, delta, params);
    const bool perfect = pre.passes && std::all_of(pre.axes.begin(), pre.axes.end(), [](const EditReport& e) {
      return e.outcome == EditOutcome::PerfectlyRegular;
    });
    if (!perfect) continue;

    TrialResult res;
    res.instance = format_threegraph(h) + format_twopartition(tp);
    for (const auto& s : subs) res.instance += set_text(s);
    const Rational alpha(BigInt(hs.edge_count()), BigInt(h.edge_count()));
    const Rational scaled = delta / alpha;
    if (scaled >= 1) {
      tr.count("vacuous");
      res.detail = "delta/alpha = " + rat(scaled) + " >= 1";
      return res;
    }
    const TwoPartition restricted = restrict_two_partition(tp, {subs[0], subs[1], subs[2]});
    const auto post = check_delta_regular_3partition(hs, restricted, scaled, params);
    res.pass = post.passes;
    res.detail = "alpha = " + rat(alpha) + ", restricted check at " + rat(scaled) +
                 (post.passes ? " passes" : " fails");
    return res;
  }
  TrialResult res;
  res.instance = "restriction:no-instance";
  res.unknown = true;
  res.detail = "no instance with a perfectly regular premise found";
  return res;
}

TrialResult refinement_size(Trial& tr) {
  const std::uint32_t k = tr.between(1, 16);
  const std::uint32_t m = tr.between(1, tr.scale);
  const std::uint32_t n = k * m;
  std::vector<std::uint32_t> pl(n);
  for (std::uint32_t v = 0; v < n; ++v) pl[v] = v % k;
  tr.rng.shuffle(pl);
  const VertexPartition p = VertexPartition::from_labels(pl, k);
  const Rational half = make_rational(1, 2);

  std::optional<VertexPartition> q;
  for (int attempt = 0; attempt < 50 && !q; ++attempt) {
    std::vector<std::uint32_t> ql(n);
    for (std::uint32_t v = 0; v < n; ++v) ql[v] = pl[v] * 2 + static_cast<std::uint32_t>(tr.rng.below(2));
    const auto merges = tr.rng.below(2 * k + 1);
    for (std::uint64_t j = 0; j < merges; ++j) {
      const auto from = ql[tr.rng.below(n)], to = ql[tr.rng.below(n)];
      for (auto& l : ql)
        if (l == from) l = to;
    }
    const auto moves = tr.rng.below(n / 3 + 1);
    for (std::uint64_t j = 0; j < moves; ++j) ql[tr.rng.below(n)] = ql[tr.rng.below(n)];
    VertexPartition cand = partition_of(ql);
    if (approx_refines(cand, p, half)) q = std::move(cand);
  }
  if (!q) q = p;

  TrialResult res;
  res.instance = format_partition(p) + format_partition(*q);
  res.pass = 4 * q->order() >= p.order();
  res.detail = "|Q| = " + std::to_string(q->order()) + ", |P| = " + std::to_string(p.order());
  return res;
}

TrialResult slicing(Trial& tr) {
  const CheckParams params = exhaustive(tr.seed);
  const std::uint32_t a = tr.between(4, tr.scale), b = tr.between(4, tr.scale);
  const BipartiteGraph g = random_graph(tr.rng, a, b, tr.rng.between(1, 3), 4);
  const Rational eps = smallest_certified_eps(g, 20, params);
  const Rational alpha = eps + (1 - eps) * Rational(tr.between(0, 10), 10);
  const VertexSet aSub = tr.rng.subset(a, tr.between(std::max(1u, ceil_mul(alpha, a)), a));
  const VertexSet bSub = tr.rng.subset(b, tr.between(std::max(1u, ceil_mul(alpha, b)), b));
  const BipartiteGraph sub = g.induced(aSub, bSub);
  const Rational d = density(g), ds = density(sub);
  const Rational target = std::min<Rational>(2 * eps / alpha, Rational(1));
  const Verdict v = check_eps_regular(sub, target, params);

  TrialResult res;
  res.instance = format_graph(g) + set_text(aSub) + set_text(bSub) + rat(alpha);
  res.pass = abs(ds - d) <= eps && v.certified();
  res.detail = "eps = " + rat(eps) + ", alpha = " + rat(alpha) + ", sub-pair at " + rat(target) +
               " " + std::string(to_string(v.status));
  return res;
}

TrialResult degrees(Trial& tr) {
  const CheckParams params = exhaustive(tr.seed);
  const std::uint32_t a = tr.between(4, tr.scale), b = tr.between(4, tr.scale);
  const BipartiteGraph g = random_graph(tr.rng, a, b, tr.rng.between(1, 3), 4);
  const Rational eps = smallest_certified_eps(g, 20, params);
  const VertexSet ySub = tr.rng.subset(b, tr.between(std::max(1u, ceil_mul(eps, b)), b));
  const DegreeProfile prof = degree_profile(g, ySub, eps);

  TrialResult res;
  res.instance = format_graph(g) + set_text(ySub);
  res.pass = Rational(prof.exceptional) <= 2 * eps * Rational(a);
  res.detail = std::to_string(prof.exceptional) + " exceptional of " + std::to_string(a) +
               " at eps = " + rat(eps);
  return res;
}

TrialResult triangle_counting(Trial& tr) {
  const CheckParams params = exhaustive(tr.seed);
  const std::uint32_t a = tr.between(3, tr.scale), b = tr.between(3, tr.scale),
                      c = tr.between(3, tr.scale);
  const VertexClass A{0, a}, B{1, b}, C{2, c};
  const BipartiteGraph ab = random_graph(tr.rng, a, b, tr.rng.between(1, 3), 4, 0, 1);

  const Triad full(ab, BipartiteGraph::complete(A, C), BipartiteGraph::complete(B, C));
  const std::uint64_t tFull = triangle_count(full);
  const bool exactOk = tFull == ab.edge_count() * c && triangle_count_bound(full, 0).inBand;

  const BipartiteGraph ac = random_graph(tr.rng, a, c, tr.rng.between(1, 3), 4, 0, 2);
  const BipartiteGraph bc = random_graph(tr.rng, b, c, tr.rng.between(1, 3), 4, 1, 2);
  const Rational eps = std::max(smallest_certified_eps(ac, 20, params),
                                smallest_certified_eps(bc, 20, params));
  const Triad t(ab, ac, bc);
  const TriangleBand band = triangle_count_bound(t, eps);

  TrialResult res;
  res.instance = format_triad(t);
  res.pass = exactOk && band.inBand;
  res.detail = "complete sides t = " + std::to_string(tFull) + "; t = " + std::to_string(band.count) +
               " in [" + rat(band.lower) + ", " + rat(band.upper) + "] at eps = " + rat(eps);
  return res;
}

TrialResult reduction_identity(Trial& tr) {
  const std::array<std::uint32_t, 3> n{tr.between(1, tr.scale), tr.between(1, tr.scale),
                                       tr.between(1, tr.scale)};
  const ThreeGraph h = random_threegraph(tr.rng, n, tr.rng.between(1, 3), 4);
  std::vector<Edge> eEdges;
  for (std::uint32_t x = 0; x < n[0]; ++x)
    for (std::uint32_t y = 0; y < n[1]; ++y)
      if (tr.rng.chance(1, 2)) eEdges.push_back({x, y});
  if (eEdges.empty()) eEdges.push_back({static_cast<std::uint32_t>(tr.rng.below(n[0])),
                                        static_cast<std::uint32_t>(tr.rng.below(n[1]))});
  const VertexSet cSub = random_nonempty_subset(tr.rng, n[2]);

  const AuxGraph aux = auxiliary_graph(h, 3);
  VertexSet eIdx;
  for (const Edge& e : eEdges) eIdx.push_back(static_cast<std::uint32_t>(aux.product.index(e.left, e.right)));
  std::sort(eIdx.begin(), eIdx.end());
  const Rational dG = induced_density(aux.graph, eIdx, cSub);

  const VertexClass A{0, n[0]}, B{1, n[1]}, C{2, static_cast<std::uint32_t>(cSub.size())};
  const Triad p(BipartiteGraph(A, B, eEdges), BipartiteGraph::complete(A, C),
                BipartiteGraph::complete(B, C));
  const TriadStats stats = triad_density(h, p, TriadEmbedding{full_set(n[0]), full_set(n[1]), cSub});

  TrialResult res;
  res.instance = format_threegraph(h) + format_graph(p.ab()) + set_text(cSub);
  res.pass = dG == stats.density && stats.triangleCount == eEdges.size() * cSub.size();
  res.detail = "d_G(E,C) = " + rat(dG) + ", d_H(P) = " + rat(stats.density) +
               ", t(P) = " + std::to_string(stats.triangleCount);
  return res;
}

TrialResult octahedron_equivalence(Trial& tr) {
  const std::uint32_t n = tr.between(2, tr.scale);
  const Triad t = random_triad(tr.rng, n, n, n);
  const ThreeGraph h = random_threegraph(tr.rng, {n, n, n}, 1, 2);
  const auto emb = TriadEmbedding::identity(t);
  const Rational fast = octahedron_sum_fast(h, t, emb);
  const Rational naive = octahedron_sum_naive(h, t, emb);
  const Rational bal = balanced_sum(h, t, emb);

  TrialResult res;
  res.instance = format_triad(t) + format_threegraph(h);
  res.pass = fast == naive && fast >= 0 && bal == 0;
  res.detail = "fast = " + rat(fast) + ", naive = " + rat(naive) + ", sum f = " + rat(bal);
  return res;
}

TrialResult octahedron_nonnegative(Trial& tr) {
  const std::uint32_t n = tr.between(2, tr.scale);
  const Triad t = random_triad(tr.rng, n, n, n);
  const ThreeGraph h = random_threegraph(tr.rng, {n, n, n}, tr.rng.between(1, 3), 4);
  const auto emb = TriadEmbedding::identity(t);
  const Rational s = octahedron_sum_fast(h, t, emb);
  const QuasirandomReport qr = check_quasirandom_triad(h, t, emb, make_rational(1, 100));

  TrialResult res;
  res.instance = format_triad(t) + format_threegraph(h);
  res.pass = s >= 0 && qr.octahedronSum == s && qr.verdict == (s <= qr.bound);
  res.detail = "sum = " + rat(s) + ", bound = " + rat(qr.bound);
  return res;
}

TrialResult reduction_pipeline(Trial& tr) {
  static const std::array<Rational, 3> deltas{make_rational(1, 16), make_rational(1, 8),
                                              make_rational(1, 5)};
  const Rational delta = deltas[tr.rng.below(deltas.size())];
  const Rational eps2 = delta * delta / 88;
  const CheckParams params = exhaustive(tr.seed);

  const std::uint32_t cluster = tr.between(1, 2);
  const std::uint32_t maxSize = std::max<std::uint32_t>(cluster, std::min<std::uint32_t>(tr.scale, 4));
  std::array<std::uint32_t, 3> n{};
  for (auto& s : n) s = cluster * tr.between(1, maxSize / cluster);
  const std::vector<std::uint32_t> frame{n[0], n[1], n[2]};

  std::vector<VertexSet> blocks;
  std::uint32_t offset = 0;
  for (std::size_t c = 0; c < 3; ++c) {
    VertexSet vs = full_set(n[c]);
    tr.rng.shuffle(vs);
    for (std::size_t i = 0; i < vs.size(); i += cluster) {
      VertexSet blk;
      for (std::size_t j = i; j < i + cluster; ++j) blk.push_back(vs[j] + offset);
      std::sort(blk.begin(), blk.end());
      blocks.push_back(std::move(blk));
    }
    offset += n[c];
  }
  VertexPartition z(offset, std::move(blocks));
  auto graphs = fill_missing_pairs(z, {});
  const TwoPartition tp(frame, z, std::move(graphs));
  const auto t = static_cast<std::uint32_t>(tp.z().order());

  auto constant_per_triad = [&] {
    std::vector<Triple> triples;
    for (const TriadRef& ref : triads_of(tp)) {
      if (!tr.rng.chance(1, 2)) continue;
      for (auto x : ref.embedding.a)
        for (auto y : ref.embedding.b)
          for (auto w : ref.embedding.c) triples.push_back({x, y, w});
    }
    return ThreeGraph({VertexClass{0, n[0]}, VertexClass{1, n[1]}, VertexClass{2, n[2]}}, triples);
  };

  std::optional<ThreeGraph> h;
  std::optional<ReductionReport> rep;
  for (int attempt = 0; attempt < 10 && !h; ++attempt) {
    ThreeGraph cand = random_threegraph(tr.rng, n, 1, 2);
    ReductionReport r = reduction_check(cand, tp, delta, 1, t, eps2, params);
    if (r.hypothesis.aggregate == VerdictStatus::CertifiedRegular) {
      h = std::move(cand);
      rep = std::move(r);
      tr.count("random_h");
    }
  }
  if (!h) {
    h = constant_per_triad();
    rep = reduction_check(*h, tp, delta, 1, t, eps2, params);
  }

  TrialResult res;
  res.instance = format_threegraph(*h) + format_twopartition(tp) + rat(delta);
  if (!rep->hypothesis.fullyExhaustive) {
    tr.count("not_exhaustive");
    res.unknown = true;
    res.detail = "hypothesis check was not exhaustive";
    return res;
  }
  res.pass = rep->passes && rep->hypothesis.aggregate == VerdictStatus::CertifiedRegular &&
             rep->conclusion.aggregate == VerdictStatus::CertifiedRegular &&
             rep->identityFailures == 0;
  res.detail = "delta = " + rat(delta) + ", " + std::to_string(rep->conclusion.pairs.size()) +
               " pairs " + std::string(to_string(rep->conclusion.aggregate)) + ", " +
               std::to_string(rep->identityChecks) + " identity checks";
  return res;
}

TrialResult schacht_consistency(Trial& tr) {
  const CheckParams params = exhaustive(tr.seed);
  const std::uint32_t n = tr.between(2, tr.scale);
  const Triad t = random_triad(tr.rng, n, n, n);
  const ThreeGraph h = random_threegraph(tr.rng, {n, n, n}, 1, 2);
  const auto emb = TriadEmbedding::identity(t);
  const Rational eps(tr.between(1, 4), 8);
  const std::uint32_t c = tr.between(1, 2);
  const SchachtReport rep = schacht_predicate(t, h, emb, eps, c, params);

  Rational epsC = 1;
  for (std::uint32_t i = 0; i < c; ++i) epsC *= eps;
  const QuasirandomReport qr = check_quasirandom_triad(h, t, emb, epsC);
  bool ok = rep.quasirandom.octahedronSum == qr.octahedronSum && rep.quasirandom.bound == qr.bound &&
            rep.quasirandom.verdict == qr.verdict && rep.certain;
  bool sidesRegular = true;
  const std::array<const BipartiteGraph*, 3> sides{&t.ab(), &t.ac(), &t.bc()};
  for (std::size_t i = 0; i < 3; ++i) {
    const Rational d = density(*sides[i]);
    VerdictStatus expected = VerdictStatus::CertifiedRegular;
    if (d != 0) {
      Rational dC = 1;
      for (std::uint32_t j = 0; j < c; ++j) dC *= d;
      expected = check_eps_regular(*sides[i], dC, params).status;
    }
    ok = ok && rep.sides[i].status == expected;
    sidesRegular = sidesRegular && expected == VerdictStatus::CertifiedRegular;
  }
  ok = ok && rep.hypothesis == (qr.verdict && sidesRegular);
  if (rep.hypothesis) tr.count("hypothesis_holds");

  TrialResult res;
  res.instance = format_triad(t) + format_threegraph(h) + rat(eps) + std::to_string(c);
  res.pass = ok;
  res.detail = std::string("hypothesis ") + (rep.hypothesis ? "holds" : "fails") +
               " at eps = " + rat(eps) + ", C = " + std::to_string(c);
  return res;
}

TrialResult paste_density(Trial& tr) {
  TrialResult res;
  bool ok = true;
  std::ostringstream detail;

  const std::uint32_t n = tr.between(1, tr.scale);
  const std::array<VertexClass, 3> cls{VertexClass{0, n}, VertexClass{1, n}, VertexClass{2, n}};
  const std::vector<ThreeGraph> complete(6, ThreeGraph::complete(cls));
  const ThreeGraph hc = six_cycle_paste(complete);
  ok = ok && hc.density() == make_rational(6, 8) && hc.edge_count() == 6ull * n * n * n;
  detail << "complete n=" << n << " density " << rat(hc.density());

  const std::uint32_t m = 2 * tr.between(1, std::max<std::uint32_t>(1, tr.scale / 2));
  const std::array<VertexClass, 3> half{VertexClass{0, m}, VertexClass{1, m}, VertexClass{2, m}};
  std::vector<ThreeGraph> parts;
  std::uint64_t total = 0;
  for (int x = 0; x < 6; ++x) {
    std::vector<std::uint32_t> slots(m * m * m);
    std::iota(slots.begin(), slots.end(), 0u);
    tr.rng.shuffle(slots);
    std::vector<Triple> triples;
    for (std::size_t i = 0; i < slots.size() / 2; ++i) {
      const std::uint32_t s = slots[i];
      triples.push_back({s / (m * m), (s / m) % m, s % m});
    }
    parts.emplace_back(half, triples);
    total += parts.back().edge_count();
    res.instance += format_threegraph(parts.back());
  }
  const ThreeGraph hh = six_cycle_paste(parts);
  ok = ok && hh.density() == make_rational(3, 8) && hh.edge_count() == total;
  detail << "; half n=" << m << " density " << rat(hh.density());

  const std::uint32_t s = tr.between(1, 2);
  std::vector<std::uint32_t> divisors;
  for (std::uint32_t d = 1; d <= m; ++d)
    if (m % d == 0) divisors.push_back(d);
  const std::uint32_t t1 = divisors[tr.rng.below(divisors.size())];
  const MainScenario sc = build_theorem_main_scenario(s, m, t1, derive_seed(tr.seed, 1));
  Rational expected = make_rational(6, 8) / Rational(BigInt(1) << (s - 1));
  ok = ok && sc.h.density() == expected && sc.v0.order() == 6ull * t1 &&
       sc.h.density() >= Rational(1, BigInt(1) << s);
  detail << "; scenario s=" << s << " density " << rat(sc.h.density()) << " |V0| " << sc.v0.order();

  const ToySchedule toy{{2, 4}, {2}};
  const KeyScenario key = build_key_argument_scenario(toy, 4, 1, derive_seed(tr.seed, 2));
  ok = ok && key.auxIdentity && key.h.density() == density(key.gPrime) &&
       key.h.density() == make_rational(1, 2);
  detail << "; key d(H) " << rat(key.h.density());

  res.pass = ok;
  res.detail = detail.str();
  return res;
}

struct ScheduleFact {
  std::string name;
  bool holds;
  std::string value;
};

std::vector<ScheduleFact> schedule_facts() {
  std::vector<ScheduleFact> out;
  auto pow2 = [](unsigned k) { return BigCount::exact(BigInt(1) << k); };
  auto same = [](const BigCount& a, const BigCount& b) {
    auto c = compare(a, b);
    return c && *c == std::strong_ordering::equal;
  };
  out.push_back({"e(3) = 8192", same(func_e(3), BigCount::exact(8192)), func_e(3).to_string()});
  out.push_back({"t(1) = 2^250", same(func_t(1), pow2(250)), func_t(1).to_string()});
  out.push_back({"w(1) = 1", same(func_w(1), BigCount::exact(1)), func_w(1).to_string()});
  out.push_back({"w(2) = 2^239", same(func_w(2), pow2(239)), func_w(2).to_string()});
  out.push_back({"t(2) = 2^(2^239)", same(func_t(2), BigCount::pow2(pow2(239))),
                 func_t(2).to_string()});
  for (std::uint64_t i = 2; i <= 4; ++i) {
    out.push_back({"t(" + std::to_string(i) + ") >= 4 t(" + std::to_string(i - 1) + ")",
                   provably_at_least(func_t(i), func_t(i - 1).mul_pow2(2)), func_t(i).to_string()});
  }
  for (std::uint64_t i = 1; i <= 4; ++i) {
    const auto p = func_t(i).is_power_of_two();
    out.push_back({"t(" + std::to_string(i) + ") is a power of 2", p.value_or(false),
                   func_t(i).to_string()});
  }
  for (std::uint64_t i = 1; i <= 4; ++i) {
    const BigCount fs = func_fstar([](std::uint64_t x) { return x; }, i);
    const bool ok = fs.is_power_of_two().value_or(false) &&
                    provably_at_least(fs, BigCount::exact(BigInt(i)));
    out.push_back({"f*(" + std::to_string(i) + ") >= f(" + std::to_string(i) +
                       ") and is a power of 2",
                   ok, fs.to_string()});
  }
  for (std::uint64_t i = 2; i <= 3; ++i) {
    out.push_back({"w(" + std::to_string(i) + ") >= wow(" + std::to_string(i) + ")",
                   provably_at_least(func_w(i), func_wow(i)), func_w(i).to_string()});
  }
  out.push_back({"twr(3) = 16", same(func_twr(3), BigCount::exact(16)), func_twr(3).to_string()});
  return out;
}

TrialResult schedule(Trial& tr) {
  static const std::vector<ScheduleFact> facts = schedule_facts();
  const ScheduleFact& f = facts[tr.index % facts.size()];
  TrialResult res;
  res.instance = f.name;
  res.pass = f.holds;
  res.detail = f.name + ": " + f.value;
  if (tr.index == 0 && !provably_at_least(func_w(1), func_wow(1))) tr.count("w1_below_wow1");
  return res;
}

struct SuiteDef {
  const char* id;
  std::uint32_t trials;
  std::uint32_t scale;
  TrialResult (*run)(Trial&);
};

const std::vector<SuiteDef>& registry() {
  static const std::vector<SuiteDef> defs{
      {"claim-3.1", 100, 10, star_union},
      {"claim-3.2", 100, 24, refinement_union},
      {"claim-3.3", 100, 6, uniform_refinement},
      {"claim-3.4", 50, 4, restriction},
      {"claim-3.5", 100, 4, refinement_size},
      {"lemma-a1", 50, 12, slicing},
      {"claim-a2", 50, 12, degrees},
      {"lemma-a3", 50, 12, triangle_counting},
      {"eq-red-d", 100, 6, reduction_identity},
      {"oct-equiv", 50, 8, octahedron_equivalence},
      {"def-4.3-nonneg", 50, 10, octahedron_nonnegative},
      {"claim-4.8", 25, 4, reduction_pipeline},
      {"schacht", 50, 5, schacht_consistency},
      {"paste-density", 20, 4, paste_density},
      {"schedule", 19, 0, schedule},
  };
  return defs;
}

}  // namespace

const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& d : registry()) out.emplace_back(d.id);
    return out;
  }();
  return ids;
}

Report run_suite(const SuiteSpec& spec) {
  const auto& defs = registry();
  const auto it = std::find_if(defs.begin(), defs.end(),
                               [&](const SuiteDef& d) { return spec.id == d.id; });
  if (it == defs.end()) throw Error(ErrorCode::UnknownSuite, "no suite named '" + spec.id + "'");

  const auto start = std::chrono::steady_clock::now();
  Report rep;
  rep.suite = spec.id;
  rep.seed = spec.seed;
  rep.scale = spec.scale == 0 ? it->scale : spec.scale;
  rep.trials = spec.trials == 0 ? it->trials : spec.trials;
  for (std::uint32_t i = 0; i < rep.trials; ++i) {
    const std::uint64_t seed = derive_seed(spec.seed, i);
    Trial tr{i, rep.scale, seed, Rng(seed), rep.counters};
    TrialResult r;
    try {
      r = it->run(tr);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BudgetExceeded) throw;
      r.instance = "budget";
      r.unknown = true;
      r.detail = e.what();
    }
    TrialRecord rec{i, fnv1a_hex(r.instance), r.unknown ? "unknown" : r.pass ? "pass" : "fail",
                    r.detail};
    if (r.unknown) rep.caveats.push_back("trial " + std::to_string(i) + ": " + r.detail);
    if (!r.unknown && !r.pass) rep.pass = false;
    rep.records.push_back(std::move(rec));
  }
  rep.wallSeconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::string report_json(const Report& report, bool withTiming) {
  nlohmann::json j;
  j["suite"] = report.suite;
  j["seed"] = report.seed;
  j["scale"] = report.scale;
  j["trials"] = report.trials;
  j["aggregate"] = report.pass ? "pass" : "fail";
  j["caveats"] = report.caveats;
  j["counters"] = report.counters;
  nlohmann::json recs = nlohmann::json::array();
  for (const auto& r : report.records) {
    recs.push_back({{"index", r.index}, {"digest", r.digest}, {"outcome", r.outcome},
                    {"detail", r.detail}});
  }
  j["records"] = std::move(recs);
  if (withTiming) j["wall_seconds"] = report.wallSeconds;
  return j.dump(2) + "\n";
}

}  // namespace hreg
