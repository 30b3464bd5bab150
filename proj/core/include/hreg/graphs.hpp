#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "hreg/bits.hpp"
#include "hreg/rational.hpp"

namespace hreg {

/// An index space 0..size-1 with a small label.
struct VertexClass {
  std::uint32_t id = 0;
  std::uint32_t size = 0;

  friend bool operator==(const VertexClass&, const VertexClass&) = default;
};

/// Sorted, duplicate-free list of vertex indices.
using VertexSet = std::vector<std::uint32_t>;

VertexSet full_set(std::uint32_t n);

struct Edge {
  std::uint32_t left = 0;
  std::uint32_t right = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Row-major linearization of first x second: index = v1 * |second| + v2.
struct ProductSide {
  VertexClass first;
  VertexClass second;

  std::uint64_t size() const {
    return std::uint64_t{first.size} * second.size;
  }
  std::uint64_t index(std::uint32_t v1, std::uint32_t v2) const {
    return std::uint64_t{v1} * second.size + v2;
  }
  std::pair<std::uint32_t, std::uint32_t> split(std::uint64_t idx) const {
    return {static_cast<std::uint32_t>(idx / second.size),
            static_cast<std::uint32_t>(idx % second.size)};
  }
  /// The product viewed as a single vertex class.
  VertexClass as_class(std::uint32_t id = 0) const {
    return VertexClass{id, static_cast<std::uint32_t>(size())};
  }
};

/// Immutable bipartite graph between two vertex classes.
///
/// Adjacency is held twice, as packed rows (left -> right) and packed columns
/// (right -> left), so degree and codegree queries on either side are
/// word-parallel popcounts.
class BipartiteGraph {
 public:
  /// Throws DegenerateInput on an empty class, IndexOutOfRange on a bad
  /// endpoint and DuplicateEdge on a repeated pair.
  BipartiteGraph(VertexClass left, VertexClass right, std::span<const Edge> edges);

  static BipartiteGraph complete(VertexClass left, VertexClass right);
  static BipartiteGraph empty(VertexClass left, VertexClass right);

  const VertexClass& left() const { return left_; }
  const VertexClass& right() const { return right_; }
  std::uint64_t edge_count() const { return edge_count_; }

  bool has_edge(std::uint32_t l, std::uint32_t r) const {
    return test_bit(row(l), r);
  }
  std::span<const Word> row(std::uint32_t l) const {
    return {rows_.data() + std::size_t{l} * row_words_, row_words_};
  }
  std::span<const Word> col(std::uint32_t r) const {
    return {cols_.data() + std::size_t{r} * col_words_, col_words_};
  }
  std::uint32_t left_degree(std::uint32_t l) const {
    return static_cast<std::uint32_t>(popcount(row(l)));
  }
  std::uint32_t right_degree(std::uint32_t r) const {
    return static_cast<std::uint32_t>(popcount(col(r)));
  }

  /// Edges in lexicographic (left, right) order.
  std::vector<Edge> edges() const;

  BipartiteGraph transposed() const;

  /// Subgraph on aSub x bSub, re-indexed to 0..|aSub|-1 and 0..|bSub|-1.
  BipartiteGraph induced(const VertexSet& aSub, const VertexSet& bSub) const;

  /// Same classes, edge set minus every edge of `other`.
  BipartiteGraph without(const BipartiteGraph& other) const;

  friend bool operator==(const BipartiteGraph& a, const BipartiteGraph& b);

 private:
  BipartiteGraph(VertexClass left, VertexClass right);
  void add(std::uint32_t l, std::uint32_t r);

  VertexClass left_;
  VertexClass right_;
  std::size_t row_words_ = 0;
  std::size_t col_words_ = 0;
  std::vector<Word> rows_;
  std::vector<Word> cols_;
  std::uint64_t edge_count_ = 0;
};

struct Triple {
  std::uint32_t v1 = 0;
  std::uint32_t v2 = 0;
  std::uint32_t v3 = 0;

  friend auto operator<=>(const Triple&, const Triple&) = default;
};

/// 3-partite 3-uniform hypergraph on three classes.
class ThreeGraph {
 public:
  ThreeGraph(std::array<VertexClass, 3> classes, std::span<const Triple> triples);

  static ThreeGraph complete(std::array<VertexClass, 3> classes);

  const std::array<VertexClass, 3>& classes() const { return classes_; }
  std::uint64_t edge_count() const { return triples_.size(); }
  /// Lexicographically sorted.
  const std::vector<Triple>& triples() const { return triples_; }
  bool contains(std::uint32_t v1, std::uint32_t v2, std::uint32_t v3) const;
  Rational density() const;

  friend bool operator==(const ThreeGraph& a, const ThreeGraph& b) {
    return a.classes_ == b.classes_ && a.triples_ == b.triples_;
  }

 private:
  std::uint64_t slot(std::uint32_t v1, std::uint32_t v2, std::uint32_t v3) const {
    return (std::uint64_t{v1} * classes_[1].size + v2) * classes_[2].size + v3;
  }

  std::array<VertexClass, 3> classes_;
  std::vector<Triple> triples_;
  std::vector<Word> members_;
};

/// Three classes (A, B, C) with edge sets E_AB, E_AC, E_BC.
class Triad {
 public:
  /// Throws ClassMismatch when an edge set's classes disagree with the others.
  Triad(BipartiteGraph ab, BipartiteGraph ac, BipartiteGraph bc);

  static Triad complete(VertexClass a, VertexClass b, VertexClass c);

  const BipartiteGraph& ab() const { return ab_; }
  const BipartiteGraph& ac() const { return ac_; }
  const BipartiteGraph& bc() const { return bc_; }
  const VertexClass& a() const { return ab_.left(); }
  const VertexClass& b() const { return ab_.right(); }
  const VertexClass& c() const { return ac_.right(); }
  std::uint64_t total_edges() const {
    return ab_.edge_count() + ac_.edge_count() + bc_.edge_count();
  }

 private:
  BipartiteGraph ab_;
  BipartiteGraph ac_;
  BipartiteGraph bc_;
};

Rational density(const BipartiteGraph& g);

/// e_G(aSub, bSub).
std::uint64_t induced_edge_count(const BipartiteGraph& g, const VertexSet& aSub,
                                 const VertexSet& bSub);

Rational induced_density(const BipartiteGraph& g, const VertexSet& aSub,
                         const VertexSet& bSub);

/// |{y in ySub : (x, y) in g}|.
std::uint32_t degree_into(const BipartiteGraph& g, std::uint32_t x, const VertexSet& ySub);

/// Union of pairwise edge-disjoint graphs on identical classes.
/// Throws ClassMismatch or NotDisjoint.
BipartiteGraph edge_disjoint_union(std::span<const BipartiteGraph> graphs);

/// |{c : (a,c) in E_AC and (b,c) in E_BC}|.
std::uint32_t codegree(const Triad& t, std::uint32_t a, std::uint32_t b);

}  // namespace hreg
