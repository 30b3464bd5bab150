#include "hreg/graphs.hpp"

#include <algorithm>
#include <string>

#include "hreg/errors.hpp"

namespace hreg {

namespace {

void require_nonempty(const VertexClass& c, const char* what) {
  if (c.size == 0)
    throw Error(ErrorCode::DegenerateInput, std::string(what) + " class is empty");
}

void require_subset(const VertexSet& s, std::uint32_t bound, const char* what) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] >= bound)
      throw Error(ErrorCode::IndexOutOfRange,
                  std::string(what) + " vertex " + std::to_string(s[i]) + " out of range");
    if (i > 0 && s[i] <= s[i - 1])
      throw Error(ErrorCode::InvariantViolation,
                  std::string(what) + " subset not strictly increasing");
  }
}

}  // namespace

VertexSet full_set(std::uint32_t n) {
  VertexSet s(n);
  for (std::uint32_t i = 0; i < n; ++i) s[i] = i;
  return s;
}

BipartiteGraph::BipartiteGraph(VertexClass left, VertexClass right)
    : left_(left),
      right_(right),
      row_words_(words_for(right.size)),
      col_words_(words_for(left.size)),
      rows_(std::size_t{left.size} * row_words_, 0),
      cols_(std::size_t{right.size} * col_words_, 0) {
  require_nonempty(left, "left");
  require_nonempty(right, "right");
}

BipartiteGraph::BipartiteGraph(VertexClass left, VertexClass right,
                               std::span<const Edge> edges)
    : BipartiteGraph(left, right) {
  for (const Edge& e : edges) {
    if (e.left >= left.size || e.right >= right.size)
      throw Error(ErrorCode::IndexOutOfRange,
                  "edge (" + std::to_string(e.left) + "," + std::to_string(e.right) +
                      ") outside " + std::to_string(left.size) + "x" +
                      std::to_string(right.size));
    if (has_edge(e.left, e.right))
      throw Error(ErrorCode::DuplicateEdge, "edge (" + std::to_string(e.left) + "," +
                                                std::to_string(e.right) + ") repeated");
    add(e.left, e.right);
  }
}

void BipartiteGraph::add(std::uint32_t l, std::uint32_t r) {
  set_bit({rows_.data() + std::size_t{l} * row_words_, row_words_}, r);
  set_bit({cols_.data() + std::size_t{r} * col_words_, col_words_}, l);
  ++edge_count_;
}

BipartiteGraph BipartiteGraph::complete(VertexClass left, VertexClass right) {
  BipartiteGraph g(left, right);
  for (std::uint32_t l = 0; l < left.size; ++l)
    for (std::uint32_t r = 0; r < right.size; ++r) g.add(l, r);
  return g;
}

BipartiteGraph BipartiteGraph::empty(VertexClass left, VertexClass right) {
  return BipartiteGraph(left, right);
}

std::vector<Edge> BipartiteGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (std::uint32_t l = 0; l < left_.size; ++l) {
    auto r = row(l);
    for (std::size_t w = 0; w < r.size(); ++w) {
      Word bits = r[w];
      while (bits) {
        const int b = std::countr_zero(bits);
        out.push_back({l, static_cast<std::uint32_t>(w * 64 + b)});
        bits &= bits - 1;
      }
    }
  }
  return out;
}

BipartiteGraph BipartiteGraph::transposed() const {
  BipartiteGraph t(right_, left_);
  t.rows_ = cols_;
  t.cols_ = rows_;
  t.edge_count_ = edge_count_;
  return t;
}

BipartiteGraph BipartiteGraph::induced(const VertexSet& aSub, const VertexSet& bSub) const {
  require_subset(aSub, left_.size, "left");
  require_subset(bSub, right_.size, "right");
  BipartiteGraph g(VertexClass{left_.id, static_cast<std::uint32_t>(aSub.size())},
                   VertexClass{right_.id, static_cast<std::uint32_t>(bSub.size())});
  for (std::uint32_t i = 0; i < aSub.size(); ++i)
    for (std::uint32_t j = 0; j < bSub.size(); ++j)
      if (has_edge(aSub[i], bSub[j])) g.add(i, j);
  return g;
}

BipartiteGraph BipartiteGraph::without(const BipartiteGraph& other) const {
  if (!(left_ == other.left_) || !(right_ == other.right_))
    throw Error(ErrorCode::ClassMismatch, "without: classes differ");
  BipartiteGraph g(left_, right_);
  for (std::size_t i = 0; i < rows_.size(); ++i) g.rows_[i] = rows_[i] & ~other.rows_[i];
  for (std::size_t i = 0; i < cols_.size(); ++i) g.cols_[i] = cols_[i] & ~other.cols_[i];
  g.edge_count_ = popcount(g.rows_);
  return g;
}

bool operator==(const BipartiteGraph& a, const BipartiteGraph& b) {
  return a.left_ == b.left_ && a.right_ == b.right_ && a.rows_ == b.rows_;
}

ThreeGraph::ThreeGraph(std::array<VertexClass, 3> classes, std::span<const Triple> triples)
    : classes_(classes) {
  const std::uint64_t slots =
      std::uint64_t{classes[0].size} * classes[1].size * classes[2].size;
  members_.assign(words_for(slots), 0);
  triples_.reserve(triples.size());
  for (const Triple& t : triples) {
    if (t.v1 >= classes[0].size || t.v2 >= classes[1].size || t.v3 >= classes[2].size)
      throw Error(ErrorCode::IndexOutOfRange,
                  "triple (" + std::to_string(t.v1) + "," + std::to_string(t.v2) + "," +
                      std::to_string(t.v3) + ") out of range");
    const auto s = slot(t.v1, t.v2, t.v3);
    if (test_bit(members_, s))
      throw Error(ErrorCode::DuplicateEdge,
                  "triple (" + std::to_string(t.v1) + "," + std::to_string(t.v2) + "," +
                      std::to_string(t.v3) + ") repeated");
    set_bit(members_, s);
    triples_.push_back(t);
  }
  std::sort(triples_.begin(), triples_.end());
}

ThreeGraph ThreeGraph::complete(std::array<VertexClass, 3> classes) {
  std::vector<Triple> all;
  for (std::uint32_t a = 0; a < classes[0].size; ++a)
    for (std::uint32_t b = 0; b < classes[1].size; ++b)
      for (std::uint32_t c = 0; c < classes[2].size; ++c) all.push_back({a, b, c});
  return ThreeGraph(classes, all);
}

bool ThreeGraph::contains(std::uint32_t v1, std::uint32_t v2, std::uint32_t v3) const {
  if (v1 >= classes_[0].size || v2 >= classes_[1].size || v3 >= classes_[2].size)
    return false;
  return test_bit(members_, slot(v1, v2, v3));
}

Rational ThreeGraph::density() const {
  const std::uint64_t slots =
      std::uint64_t{classes_[0].size} * classes_[1].size * classes_[2].size;
  if (slots == 0) throw Error(ErrorCode::DegenerateInput, "3-graph has an empty class");
  return Rational(BigInt(triples_.size()), BigInt(slots));
}

Triad::Triad(BipartiteGraph ab, BipartiteGraph ac, BipartiteGraph bc)
    : ab_(std::move(ab)), ac_(std::move(ac)), bc_(std::move(bc)) {
  if (!(ab_.left() == ac_.left()) || !(ab_.right() == bc_.left()) ||
      !(ac_.right() == bc_.right()))
    throw Error(ErrorCode::ClassMismatch, "triad edge sets disagree on classes");
}

Triad Triad::complete(VertexClass a, VertexClass b, VertexClass c) {
  return Triad(BipartiteGraph::complete(a, b), BipartiteGraph::complete(a, c),
               BipartiteGraph::complete(b, c));
}

Rational density(const BipartiteGraph& g) {
  return Rational(BigInt(g.edge_count()),
                  BigInt(std::uint64_t{g.left().size} * g.right().size));
}

std::uint64_t induced_edge_count(const BipartiteGraph& g, const VertexSet& aSub,
                                 const VertexSet& bSub) {
  require_subset(aSub, g.left().size, "left");
  require_subset(bSub, g.right().size, "right");
  const auto mask = mask_of(bSub, g.right().size);
  std::uint64_t e = 0;
  for (auto a : aSub) e += and_count(g.row(a), mask);
  return e;
}

Rational induced_density(const BipartiteGraph& g, const VertexSet& aSub,
                         const VertexSet& bSub) {
  if (aSub.empty() || bSub.empty())
    throw Error(ErrorCode::DegenerateInput, "induced_density on an empty subset");
  return Rational(BigInt(induced_edge_count(g, aSub, bSub)),
                  BigInt(std::uint64_t{aSub.size()} * bSub.size()));
}

std::uint32_t degree_into(const BipartiteGraph& g, std::uint32_t x, const VertexSet& ySub) {
  if (x >= g.left().size)
    throw Error(ErrorCode::IndexOutOfRange, "vertex " + std::to_string(x) + " out of range");
  require_subset(ySub, g.right().size, "right");
  std::uint32_t d = 0;
  for (auto y : ySub) d += g.has_edge(x, y) ? 1u : 0u;
  return d;
}

BipartiteGraph edge_disjoint_union(std::span<const BipartiteGraph> graphs) {
  if (graphs.empty()) throw Error(ErrorCode::DegenerateInput, "union of no graphs");
  const VertexClass l = graphs[0].left();
  const VertexClass r = graphs[0].right();
  std::vector<Edge> all;
  for (const auto& g : graphs) {
    if (!(g.left() == l) || !(g.right() == r))
      throw Error(ErrorCode::ClassMismatch, "union operands on different classes");
    auto e = g.edges();
    all.insert(all.end(), e.begin(), e.end());
  }
  std::sort(all.begin(), all.end());
  for (std::size_t i = 1; i < all.size(); ++i)
    if (all[i] == all[i - 1])
      throw Error(ErrorCode::NotDisjoint, "edge (" + std::to_string(all[i].left) + "," +
                                              std::to_string(all[i].right) +
                                              ") appears in two operands");
  return BipartiteGraph(l, r, all);
}

std::uint32_t codegree(const Triad& t, std::uint32_t a, std::uint32_t b) {
  if (a >= t.a().size || b >= t.b().size)
    throw Error(ErrorCode::IndexOutOfRange, "codegree vertex out of range");
  return static_cast<std::uint32_t>(and_count(t.ac().row(a), t.bc().row(b)));
}

}  // namespace hreg
