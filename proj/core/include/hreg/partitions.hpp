#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hreg/graphs.hpp"
#include "hreg/rational.hpp"

namespace hreg {

/// Partition of the index space 0..n-1 into nonempty blocks.
///
/// Blocks keep the order they were given in; each block is a sorted index
/// list. Two partitions with the same blocks in a different order compare
/// equal only after canonical().
class VertexPartition {
 public:
  /// Throws DegenerateInput on an empty block and InvariantViolation when the
  /// blocks overlap or miss a vertex.
  VertexPartition(std::uint32_t groundSize, std::vector<VertexSet> blocks);

  /// Block i collects the vertices labelled i. Every label in 0..k-1 must occur.
  static VertexPartition from_labels(std::span<const std::uint32_t> labels, std::uint32_t k);
  static VertexPartition trivial(std::uint32_t n);
  static VertexPartition singletons(std::uint32_t n);

  std::uint32_t ground_size() const { return ground_; }
  std::size_t order() const { return blocks_.size(); }
  const std::vector<VertexSet>& blocks() const { return blocks_; }
  const VertexSet& block(std::size_t i) const { return blocks_[i]; }
  std::uint32_t label_of(std::uint32_t v) const { return labels_[v]; }
  const std::vector<std::uint32_t>& labels() const { return labels_; }

  /// Blocks ordered by their smallest element.
  VertexPartition canonical() const;

  friend bool operator==(const VertexPartition& a, const VertexPartition& b) {
    return a.ground_ == b.ground_ && a.blocks_ == b.blocks_;
  }

 private:
  std::uint32_t ground_;
  std::vector<VertexSet> blocks_;
  std::vector<std::uint32_t> labels_;
};

/// Edge-disjoint cover of a complete product first x second by bipartite graphs.
class EdgePartition {
 public:
  /// Throws ClassMismatch, NotDisjoint, or InvariantViolation (uncovered slot).
  EdgePartition(ProductSide carrier, std::vector<BipartiteGraph> blocks);

  const ProductSide& carrier() const { return carrier_; }
  std::size_t order() const { return blocks_.size(); }
  const std::vector<BipartiteGraph>& blocks() const { return blocks_; }
  const BipartiteGraph& block(std::size_t i) const { return blocks_[i]; }

  /// The same partition seen as a partition of the linearized product.
  /// Edgeless blocks have no vertices there and are dropped.
  VertexPartition as_vertex_partition() const;

  bool is_equitable() const;

 private:
  ProductSide carrier_;
  std::vector<BipartiteGraph> blocks_;
};

/// A graph of the edge family, living between clusters `first` and `second`
/// of the vertex partition. Its left side is indexed by rank inside cluster
/// `first`, its right side by rank inside cluster `second`.
struct TaggedGraph {
  std::uint32_t first = 0;
  std::uint32_t second = 0;
  BipartiteGraph graph;
};

/// Vertex partition Z of a classed vertex set plus the edge family.
///
/// Vertices are numbered globally: class c occupies [offset(c), offset(c) + size(c)).
class TwoPartition {
 public:
  /// Checks only shape: cluster indices valid and distinct, and each graph's
  /// classes sized like its clusters. Union and disjointness are reported by
  /// validate_two_partition.
  TwoPartition(std::vector<std::uint32_t> frame, VertexPartition z,
               std::vector<TaggedGraph> graphs);

  const std::vector<std::uint32_t>& frame() const { return frame_; }
  std::uint32_t offset(std::size_t cls) const { return offsets_[cls]; }
  std::uint32_t class_of(std::uint32_t v) const;
  const VertexPartition& z() const { return z_; }
  const std::vector<TaggedGraph>& graphs() const { return graphs_; }

 private:
  std::vector<std::uint32_t> frame_;
  std::vector<std::uint32_t> offsets_;
  VertexPartition z_;
  std::vector<TaggedGraph> graphs_;
};

/// Adds the complete graph for every cluster pair that has no graph yet.
std::vector<TaggedGraph> fill_missing_pairs(const VertexPartition& z,
                                            std::vector<TaggedGraph> graphs);

struct TwoPartitionViolation {
  enum class Kind { MissingEdges, NotDisjoint, ClassMismatch };
  Kind kind;
  std::uint32_t first;
  std::uint32_t second;
  /// Affected slots as (rank in first, rank in second), lexicographic.
  std::vector<Edge> edges;

  std::string describe() const;
};

bool refines(const VertexPartition& q, const VertexPartition& p);

/// |s \ t| < beta |s|. beta = 0 is read as plain containment.
bool approx_subset(const VertexSet& s, const VertexSet& t, const Rational& beta);

/// Index of the block p_i with s approx_subset p_i, if any.
std::optional<std::size_t> approx_member(const VertexSet& s, const VertexPartition& p,
                                         const Rational& beta);

/// Sum of |Q| over blocks Q of q with no beta-host in p is at most beta * n.
bool approx_refines(const VertexPartition& q, const VertexPartition& p, const Rational& beta);

VertexPartition common_refinement(const VertexPartition& p, const VertexPartition& q);

bool is_equitable(const VertexPartition& p);

struct UnionExtract {
  std::size_t blockIndex;
  VertexSet p;
  VertexSet q;
  std::uint64_t symmetricDifference;
};

/// The first block P of p for which the union Q of q-blocks that sit
/// delta-inside P satisfies |P xor Q| <= 3 delta |P|.
UnionExtract refinement_union_extract(const VertexPartition& q, const VertexPartition& p,
                                      const Rational& delta);

/// Traces of p's blocks on sub, re-indexed by rank within sub.
VertexPartition restrict_vertex_partition(const VertexPartition& p, const VertexSet& sub);

/// Restriction to the chosen vertices of each frame class (local indices).
TwoPartition restrict_two_partition(const TwoPartition& tp,
                                    const std::vector<VertexSet>& subClasses);

std::vector<TwoPartitionViolation> validate_two_partition(const TwoPartition& tp);

/// Per-class view of a 2-partition over a three-class frame. Index i refers to
/// class i; the edge partition at i covers the product of the other two
/// classes in increasing class order.
struct FrameProjection {
  std::vector<VertexPartition> z;
  std::vector<std::vector<std::uint32_t>> zClusters;
  std::vector<EdgePartition> e;
  std::vector<std::vector<std::size_t>> eSource;
};

/// The two classes other than `cls`, increasing.
std::pair<std::size_t, std::size_t> other_classes(std::size_t cls);

FrameProjection sub_partitions(const TwoPartition& tp);

}  // namespace hreg
