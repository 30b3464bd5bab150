#include "hreg/partitions.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "hreg/errors.hpp"

namespace hreg {

namespace {

constexpr std::uint32_t kNoLabel = ~std::uint32_t{0};

void require_same_ground(const VertexPartition& a, const VertexPartition& b) {
  if (a.ground_size() != b.ground_size())
    throw Error(ErrorCode::GroundMismatch, "partitions of " + std::to_string(a.ground_size()) +
                                               " and " + std::to_string(b.ground_size()) +
                                               " vertices");
}

void require_beta_contract(const Rational& beta) {
  if (beta < 0) throw Error(ErrorCode::ParameterOutOfContract, "beta must be nonnegative");
  if (beta > Rational(1, 2))
    throw Error(ErrorCode::ParameterOutOfContract,
                "beta " + to_string(beta) + " exceeds 1/2; block witness not unique");
}

// |s \ t| for sorted s, t.
std::uint64_t outside_count(const VertexSet& s, const VertexSet& t) {
  std::uint64_t out = 0;
  auto it = t.begin();
  for (auto v : s) {
    it = std::lower_bound(it, t.end(), v);
    if (it == t.end() || *it != v) ++out;
  }
  return out;
}

bool strictly_below(std::uint64_t astray, std::uint64_t size, const Rational& beta) {
  if (beta == 0) return astray == 0;
  return Rational(BigInt(astray)) < beta * BigInt(size);
}

}  // namespace

VertexPartition::VertexPartition(std::uint32_t groundSize, std::vector<VertexSet> blocks)
    : ground_(groundSize), blocks_(std::move(blocks)), labels_(groundSize, kNoLabel) {
  if (blocks_.empty()) throw Error(ErrorCode::DegenerateInput, "partition has no blocks");
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    auto& blk = blocks_[b];
    if (blk.empty())
      throw Error(ErrorCode::DegenerateInput, "block " + std::to_string(b) + " is empty");
    std::sort(blk.begin(), blk.end());
    for (auto v : blk) {
      if (v >= ground_)
        throw Error(ErrorCode::IndexOutOfRange, "vertex " + std::to_string(v) + " out of range");
      if (labels_[v] != kNoLabel)
        throw Error(ErrorCode::InvariantViolation,
                    "vertex " + std::to_string(v) + " in two blocks");
      labels_[v] = static_cast<std::uint32_t>(b);
    }
  }
  for (std::uint32_t v = 0; v < ground_; ++v)
    if (labels_[v] == kNoLabel)
      throw Error(ErrorCode::InvariantViolation,
                  "vertex " + std::to_string(v) + " not covered");
}

VertexPartition VertexPartition::from_labels(std::span<const std::uint32_t> labels,
                                             std::uint32_t k) {
  std::vector<VertexSet> blocks(k);
  for (std::uint32_t v = 0; v < labels.size(); ++v) {
    if (labels[v] >= k)
      throw Error(ErrorCode::IndexOutOfRange,
                  "label " + std::to_string(labels[v]) + " outside 0.." + std::to_string(k - 1));
    blocks[labels[v]].push_back(v);
  }
  return VertexPartition(static_cast<std::uint32_t>(labels.size()), std::move(blocks));
}

VertexPartition VertexPartition::trivial(std::uint32_t n) {
  return VertexPartition(n, {full_set(n)});
}

VertexPartition VertexPartition::singletons(std::uint32_t n) {
  std::vector<VertexSet> blocks;
  for (std::uint32_t v = 0; v < n; ++v) blocks.push_back({v});
  return VertexPartition(n, std::move(blocks));
}

VertexPartition VertexPartition::canonical() const {
  auto blocks = blocks_;
  std::sort(blocks.begin(), blocks.end(),
            [](const VertexSet& a, const VertexSet& b) { return a.front() < b.front(); });
  return VertexPartition(ground_, std::move(blocks));
}

EdgePartition::EdgePartition(ProductSide carrier, std::vector<BipartiteGraph> blocks)
    : carrier_(carrier), blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw Error(ErrorCode::DegenerateInput, "edge partition has no blocks");
  std::vector<Word> seen(words_for(carrier_.size()), 0);
  std::uint64_t total = 0;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const auto& g = blocks_[b];
    if (g.left().size != carrier_.first.size || g.right().size != carrier_.second.size)
      throw Error(ErrorCode::ClassMismatch, "edge block " + std::to_string(b) + " has wrong shape");
    for (const Edge& e : g.edges()) {
      const auto idx = carrier_.index(e.left, e.right);
      if (test_bit(seen, idx))
        throw Error(ErrorCode::NotDisjoint, "edge (" + std::to_string(e.left) + "," +
                                                std::to_string(e.right) + ") in two blocks");
      set_bit(seen, idx);
    }
    total += g.edge_count();
  }
  if (total != carrier_.size())
    throw Error(ErrorCode::InvariantViolation,
                "edge blocks cover " + std::to_string(total) + " of " +
                    std::to_string(carrier_.size()) + " slots");
}

VertexPartition EdgePartition::as_vertex_partition() const {
  std::vector<VertexSet> blocks;
  blocks.reserve(blocks_.size());
  for (const auto& g : blocks_) {
    if (g.edge_count() == 0) continue;
    VertexSet s;
    s.reserve(g.edge_count());
    for (const Edge& e : g.edges())
      s.push_back(static_cast<std::uint32_t>(carrier_.index(e.left, e.right)));
    blocks.push_back(std::move(s));
  }
  return VertexPartition(static_cast<std::uint32_t>(carrier_.size()), std::move(blocks));
}

bool EdgePartition::is_equitable() const {
  for (const auto& g : blocks_)
    if (g.edge_count() != blocks_.front().edge_count()) return false;
  return true;
}

TwoPartition::TwoPartition(std::vector<std::uint32_t> frame, VertexPartition z,
                           std::vector<TaggedGraph> graphs)
    : frame_(std::move(frame)), z_(std::move(z)), graphs_(std::move(graphs)) {
  if (frame_.empty()) throw Error(ErrorCode::DegenerateInput, "empty frame");
  std::uint32_t off = 0;
  for (auto s : frame_) {
    if (s == 0) throw Error(ErrorCode::DegenerateInput, "frame class is empty");
    offsets_.push_back(off);
    off += s;
  }
  if (off != z_.ground_size())
    throw Error(ErrorCode::GroundMismatch, "frame covers " + std::to_string(off) +
                                               " vertices, partition " +
                                               std::to_string(z_.ground_size()));
  for (const auto& tg : graphs_) {
    if (tg.first >= z_.order() || tg.second >= z_.order() || tg.first == tg.second)
      throw Error(ErrorCode::IndexOutOfRange, "bad cluster pair (" + std::to_string(tg.first) +
                                                  "," + std::to_string(tg.second) + ")");
    if (tg.graph.left().size != z_.block(tg.first).size() ||
        tg.graph.right().size != z_.block(tg.second).size())
      throw Error(ErrorCode::ClassMismatch, "graph on pair (" + std::to_string(tg.first) + "," +
                                                std::to_string(tg.second) +
                                                ") does not match cluster sizes");
  }
}

std::uint32_t TwoPartition::class_of(std::uint32_t v) const {
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), v);
  return static_cast<std::uint32_t>(it - offsets_.begin() - 1);
}

std::vector<TaggedGraph> fill_missing_pairs(const VertexPartition& z,
                                            std::vector<TaggedGraph> graphs) {
  const std::size_t k = z.order();
  std::vector<char> covered(k * k, 0);
  for (const auto& tg : graphs) {
    covered[tg.first * k + tg.second] = 1;
    covered[tg.second * k + tg.first] = 1;
  }
  for (std::uint32_t i = 0; i < k; ++i)
    for (std::uint32_t j = i + 1; j < k; ++j)
      if (!covered[i * k + j])
        graphs.push_back({i, j,
                          BipartiteGraph::complete(
                              VertexClass{i, static_cast<std::uint32_t>(z.block(i).size())},
                              VertexClass{j, static_cast<std::uint32_t>(z.block(j).size())})});
  return graphs;
}

std::string TwoPartitionViolation::describe() const {
  std::string what;
  switch (kind) {
    case Kind::MissingEdges: what = "missing " + std::to_string(edges.size()) + " edge(s)"; break;
    case Kind::NotDisjoint: what = "NotDisjoint on " + std::to_string(edges.size()) + " edge(s)"; break;
    case Kind::ClassMismatch: what = "class mismatch"; break;
  }
  return "cluster pair (" + std::to_string(first) + "," + std::to_string(second) + "): " + what;
}

bool refines(const VertexPartition& q, const VertexPartition& p) {
  require_same_ground(q, p);
  for (const auto& blk : q.blocks()) {
    const auto host = p.label_of(blk.front());
    for (auto v : blk)
      if (p.label_of(v) != host) return false;
  }
  return true;
}

bool approx_subset(const VertexSet& s, const VertexSet& t, const Rational& beta) {
  if (s.empty()) throw Error(ErrorCode::DegenerateInput, "approx_subset of an empty set");
  if (beta < 0) throw Error(ErrorCode::ParameterOutOfContract, "beta must be nonnegative");
  return strictly_below(outside_count(s, t), s.size(), beta);
}

std::optional<std::size_t> approx_member(const VertexSet& s, const VertexPartition& p,
                                         const Rational& beta) {
  require_beta_contract(beta);
  if (s.empty()) throw Error(ErrorCode::DegenerateInput, "approx_member of an empty set");
  std::map<std::uint32_t, std::uint64_t> inside;
  for (auto v : s) {
    if (v >= p.ground_size())
      throw Error(ErrorCode::IndexOutOfRange, "vertex " + std::to_string(v) + " out of range");
    ++inside[p.label_of(v)];
  }
  for (const auto& [blk, cnt] : inside)
    if (strictly_below(s.size() - cnt, s.size(), beta)) return blk;
  return std::nullopt;
}

bool approx_refines(const VertexPartition& q, const VertexPartition& p, const Rational& beta) {
  require_same_ground(q, p);
  require_beta_contract(beta);
  std::uint64_t stray = 0;
  for (const auto& blk : q.blocks())
    if (!approx_member(blk, p, beta)) stray += blk.size();
  return Rational(BigInt(stray)) <= beta * BigInt(q.ground_size());
}

VertexPartition common_refinement(const VertexPartition& p, const VertexPartition& q) {
  require_same_ground(p, q);
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> index;
  std::vector<VertexSet> blocks;
  for (std::uint32_t v = 0; v < p.ground_size(); ++v) {
    auto [it, fresh] = index.try_emplace({p.label_of(v), q.label_of(v)}, blocks.size());
    if (fresh) blocks.emplace_back();
    blocks[it->second].push_back(v);
  }
  return VertexPartition(p.ground_size(), std::move(blocks));
}

bool is_equitable(const VertexPartition& p) {
  for (const auto& b : p.blocks())
    if (b.size() != p.block(0).size()) return false;
  return true;
}

UnionExtract refinement_union_extract(const VertexPartition& q, const VertexPartition& p,
                                      const Rational& delta) {
  if (!approx_refines(q, p, delta))
    throw Error(ErrorCode::PreconditionFailed, "q does not approximately refine p");
  std::vector<VertexSet> unions(p.order());
  for (const auto& blk : q.blocks()) {
    if (auto host = approx_member(blk, p, delta))
      unions[*host].insert(unions[*host].end(), blk.begin(), blk.end());
  }
  for (std::size_t i = 0; i < p.order(); ++i) {
    auto& qs = unions[i];
    std::sort(qs.begin(), qs.end());
    const auto& ps = p.block(i);
    VertexSet diff;
    std::set_symmetric_difference(ps.begin(), ps.end(), qs.begin(), qs.end(),
                                  std::back_inserter(diff));
    if (Rational(BigInt(diff.size())) <= 3 * delta * BigInt(ps.size()))
      return {i, ps, qs, diff.size()};
  }
  throw Error(ErrorCode::InvariantViolation, "no block within 3*delta of its union");
}

VertexPartition restrict_vertex_partition(const VertexPartition& p, const VertexSet& sub) {
  if (sub.empty()) throw Error(ErrorCode::DegenerateInput, "restriction to an empty set");
  std::vector<VertexSet> traces(p.order());
  for (std::uint32_t r = 0; r < sub.size(); ++r) {
    if (sub[r] >= p.ground_size())
      throw Error(ErrorCode::IndexOutOfRange, "vertex " + std::to_string(sub[r]) + " out of range");
    if (r > 0 && sub[r] <= sub[r - 1])
      throw Error(ErrorCode::InvariantViolation, "restriction set not strictly increasing");
    traces[p.label_of(sub[r])].push_back(r);
  }
  std::erase_if(traces, [](const VertexSet& s) { return s.empty(); });
  return VertexPartition(static_cast<std::uint32_t>(sub.size()), std::move(traces));
}

TwoPartition restrict_two_partition(const TwoPartition& tp,
                                    const std::vector<VertexSet>& subClasses) {
  if (subClasses.size() != tp.frame().size())
    throw Error(ErrorCode::FrameMismatch, "restriction needs one subset per frame class");
  VertexSet global;
  std::vector<std::uint32_t> frame;
  for (std::size_t c = 0; c < subClasses.size(); ++c) {
    if (subClasses[c].empty())
      throw Error(ErrorCode::DegenerateInput, "class " + std::to_string(c) + " restricted to nothing");
    for (auto v : subClasses[c]) {
      if (v >= tp.frame()[c])
        throw Error(ErrorCode::IndexOutOfRange, "vertex " + std::to_string(v) + " outside class " +
                                                    std::to_string(c));
      global.push_back(tp.offset(c) + v);
    }
    frame.push_back(static_cast<std::uint32_t>(subClasses[c].size()));
  }
  const auto& z = tp.z();
  // Surviving members of each old cluster, as ranks within that cluster.
  std::vector<VertexSet> keptRanks(z.order());
  std::vector<char> keep(z.ground_size(), 0);
  for (auto v : global) keep[v] = 1;
  for (std::size_t b = 0; b < z.order(); ++b) {
    const auto& blk = z.block(b);
    for (std::uint32_t r = 0; r < blk.size(); ++r)
      if (keep[blk[r]]) keptRanks[b].push_back(r);
  }
  auto zr = restrict_vertex_partition(z, global);
  // Old cluster index -> new cluster index (blocks keep their relative order).
  std::vector<std::uint32_t> renumber(z.order(), kNoLabel);
  std::uint32_t next = 0;
  for (std::size_t b = 0; b < z.order(); ++b)
    if (!keptRanks[b].empty()) renumber[b] = next++;
  std::vector<TaggedGraph> graphs;
  for (const auto& tg : tp.graphs()) {
    if (renumber[tg.first] == kNoLabel || renumber[tg.second] == kNoLabel) continue;
    auto g = tg.graph.induced(keptRanks[tg.first], keptRanks[tg.second]);
    graphs.push_back({renumber[tg.first], renumber[tg.second],
                      BipartiteGraph(VertexClass{renumber[tg.first], g.left().size},
                                     VertexClass{renumber[tg.second], g.right().size},
                                     g.edges())});
  }
  return TwoPartition(std::move(frame), std::move(zr), std::move(graphs));
}

std::vector<TwoPartitionViolation> validate_two_partition(const TwoPartition& tp) {
  using Kind = TwoPartitionViolation::Kind;
  const auto& z = tp.z();
  const std::size_t k = z.order();
  struct Cover {
    std::vector<std::uint8_t> hits;
    bool touched = false;
  };
  std::vector<Cover> covers(k * k);
  std::vector<TwoPartitionViolation> out;
  for (const auto& tg : tp.graphs()) {
    // Orient every graph as (lower cluster, higher cluster).
    const bool flip = tg.first > tg.second;
    const std::uint32_t a = flip ? tg.second : tg.first;
    const std::uint32_t b = flip ? tg.first : tg.second;
    const std::size_t na = z.block(a).size(), nb = z.block(b).size();
    auto& cov = covers[a * k + b];
    if (!cov.touched) {
      cov.hits.assign(na * nb, 0);
      cov.touched = true;
    }
    for (const Edge& e : tg.graph.edges()) {
      const std::uint32_t x = flip ? e.right : e.left;
      const std::uint32_t y = flip ? e.left : e.right;
      auto& h = cov.hits[std::size_t{x} * nb + y];
      if (h < 255) ++h;
    }
  }
  for (std::uint32_t a = 0; a < k; ++a) {
    for (std::uint32_t b = a + 1; b < k; ++b) {
      const std::size_t nb = z.block(b).size();
      const auto& cov = covers[a * k + b];
      TwoPartitionViolation missing{Kind::MissingEdges, a, b, {}};
      TwoPartitionViolation twice{Kind::NotDisjoint, a, b, {}};
      for (std::uint32_t x = 0; x < z.block(a).size(); ++x) {
        for (std::uint32_t y = 0; y < nb; ++y) {
          const auto h = cov.touched ? cov.hits[std::size_t{x} * nb + y] : 0;
          if (h == 0) missing.edges.push_back({x, y});
          if (h > 1) twice.edges.push_back({x, y});
        }
      }
      if (!twice.edges.empty()) out.push_back(std::move(twice));
      if (!missing.edges.empty()) out.push_back(std::move(missing));
    }
  }
  return out;
}

std::pair<std::size_t, std::size_t> other_classes(std::size_t cls) {
  switch (cls) {
    case 0: return {1, 2};
    case 1: return {0, 2};
    default: return {0, 1};
  }
}

FrameProjection sub_partitions(const TwoPartition& tp) {
  if (tp.frame().size() != 3)
    throw Error(ErrorCode::FrameMismatch, "expected a three-class frame");
  const auto& z = tp.z();
  FrameProjection proj;
  proj.zClusters.resize(3);
  proj.eSource.resize(3);
  std::vector<std::uint32_t> clusterClass(z.order());
  for (std::uint32_t b = 0; b < z.order(); ++b) {
    const auto& blk = z.block(b);
    const auto cls = tp.class_of(blk.front());
    if (tp.class_of(blk.back()) != cls)
      throw Error(ErrorCode::FrameMismatch,
                  "cluster " + std::to_string(b) + " straddles frame classes");
    clusterClass[b] = cls;
    proj.zClusters[cls].push_back(b);
  }
  for (std::size_t c = 0; c < 3; ++c) {
    std::vector<VertexSet> blocks;
    for (auto b : proj.zClusters[c]) {
      VertexSet local;
      for (auto v : z.block(b)) local.push_back(v - tp.offset(c));
      blocks.push_back(std::move(local));
    }
    proj.z.emplace_back(tp.frame()[c], std::move(blocks));
  }
  for (std::size_t i = 0; i < 3; ++i) {
    const auto [j, k] = other_classes(i);
    const VertexClass cj{static_cast<std::uint32_t>(j), tp.frame()[j]};
    const VertexClass ck{static_cast<std::uint32_t>(k), tp.frame()[k]};
    std::vector<BipartiteGraph> blocks;
    for (std::size_t gi = 0; gi < tp.graphs().size(); ++gi) {
      const auto& tg = tp.graphs()[gi];
      const auto c1 = clusterClass[tg.first], c2 = clusterClass[tg.second];
      const bool forward = c1 == j && c2 == k;
      const bool backward = c1 == k && c2 == j;
      if (!forward && !backward) continue;
      const auto& zj = z.block(forward ? tg.first : tg.second);
      const auto& zk = z.block(forward ? tg.second : tg.first);
      std::vector<Edge> lifted;
      for (const Edge& e : tg.graph.edges()) {
        const auto xj = forward ? e.left : e.right;
        const auto xk = forward ? e.right : e.left;
        lifted.push_back({zj[xj] - tp.offset(j), zk[xk] - tp.offset(k)});
      }
      blocks.emplace_back(cj, ck, lifted);
      proj.eSource[i].push_back(gi);
    }
    proj.e.emplace_back(ProductSide{cj, ck}, std::move(blocks));
  }
  return proj;
}

}  // namespace hreg
