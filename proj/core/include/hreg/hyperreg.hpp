#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "hreg/graphs.hpp"
#include "hreg/partitions.hpp"
#include "hreg/rational.hpp"
#include "hreg/regcheck.hpp"

namespace hreg {

/// G_H^i: pairs from the other two classes (row-major product) against class i.
struct AuxGraph {
  std::uint32_t axis = 1;
  ProductSide product;
  BipartiteGraph graph;
};

/// axis is 1, 2 or 3.
AuxGraph auxiliary_graph(const ThreeGraph& h, std::uint32_t axis);

/// Where a triad's classes sit inside a 3-graph: a[i] is the index in h's
/// first class of the triad's A-vertex i, and so on.
struct TriadEmbedding {
  VertexSet a;
  VertexSet b;
  VertexSet c;

  static TriadEmbedding identity(const Triad& t);
};

/// t(P), by codegree accumulation over E_AB.
std::uint64_t triangle_count(const Triad& t);

/// T(P) in lexicographic order.
std::vector<Triple> triangle_support(const Triad& t);

struct TriadStats {
  std::uint64_t triangleCount = 0;
  std::uint64_t hEdgeCount = 0;
  Rational density;  ///< 0 when there are no triangles
};

TriadStats triad_density(const ThreeGraph& h, const Triad& t, const TriadEmbedding& emb);
TriadStats triad_density(const ThreeGraph& h, const Triad& t);

/// A subtriad given by its three edge sets, in the triad's local indices.
struct SubtriadWitness {
  std::vector<Edge> ab;
  std::vector<Edge> ac;
  std::vector<Edge> bc;
  std::uint64_t triangles = 0;
  std::uint64_t hEdges = 0;
};

using TriadVerdict = BasicVerdict<SubtriadWitness>;

/// Every subtriad with t(P') >= eps t(P) must have |d_H(P') - d_H(P)| <= eps.
TriadVerdict check_fr_triad(const ThreeGraph& h, const Triad& t, const TriadEmbedding& emb,
                            const Rational& eps, const CheckParams& params);

/// Every subtriad with t(P') >= delta t(P) must have d_H(P') >= 2/3 d_H(P).
TriadVerdict check_subtriad_hypothesis(const ThreeGraph& h, const Triad& t,
                                       const TriadEmbedding& emb, const Rational& delta,
                                       const CheckParams& params);

/// A triad of a 2-partition over a three-class frame: one cluster per class
/// and one graph per cluster pair.
struct TriadRef {
  std::array<std::uint32_t, 3> clusters{};
  std::array<std::size_t, 3> graphs{};  ///< indices into tp.graphs() for AB, AC, BC
  Triad triad;
  TriadEmbedding embedding;
};

/// All triads across the three classes, clusters in z order then graphs in
/// tp.graphs() order. Clusters inside one class carry no hyperedges and
/// produce no triads.
std::vector<TriadRef> triads_of(const TwoPartition& tp);

struct GraphVerdict {
  std::size_t graphIndex = 0;
  Verdict verdict;
};

struct GoodnessReport {
  VerdictStatus aggregate = VerdictStatus::CertifiedRegular;
  std::vector<GraphVerdict> graphs;
  std::uint64_t caveats = 0;
};

GoodnessReport is_delta_good(const TwoPartition& tp, const Level& gamma, const CheckParams& params);
GoodnessReport is_delta_good(const TwoPartition& tp, const Rational& delta,
                             const CheckParams& params);

struct ThreePartitionReport {
  GoodnessReport goodness;
  std::vector<EditReport> axes;  ///< axis 1, 2, 3
  bool passes = false;
  std::uint64_t caveats = 0;
};

ThreePartitionReport check_delta_regular_3partition(const ThreeGraph& h, const TwoPartition& tp,
                                                    const Rational& delta,
                                                    const CheckParams& params);

struct EquipartitionReport {
  bool orderOk = false;
  bool equitable = false;
  std::vector<std::size_t> densityViolations;
  std::vector<GraphVerdict> regularity;
  VerdictStatus regularityAggregate = VerdictStatus::CertifiedRegular;
  bool passes = false;
  std::uint64_t caveats = 0;
};

/// Order t, equitable, and every graph eps2-regular with density in
/// [1/l - eps2, 1/l + eps2].
EquipartitionReport check_equipartition_params(const TwoPartition& tp, std::uint32_t ell,
                                               std::uint32_t t, const Rational& eps2,
                                               const CheckParams& params);

struct TriadJudgement {
  std::array<std::uint32_t, 3> clusters{};
  std::array<std::size_t, 3> graphs{};
  std::uint64_t triangles = 0;
  VerdictStatus status = VerdictStatus::CertifiedRegular;
};

struct TriadPartitionReport {
  EquipartitionReport equipartition;
  std::vector<TriadJudgement> triads;
  BigInt irregularMass;
  Rational bound;
  bool passes = false;
  std::uint64_t caveats = 0;
};

TriadPartitionReport check_fr_partition(const ThreeGraph& h, const TwoPartition& tp,
                                        std::uint32_t ell, std::uint32_t t, const Rational& eps2,
                                        const Rational& eps, const CheckParams& params);

/// Exact sum over all 2x2x2 boxes of the product of f, where f is
/// 1_H - d_H(P) on T(P) and 0 elsewhere. Needs |A| = |B| = |C|.
Rational octahedron_sum_naive(const ThreeGraph& h, const Triad& t, const TriadEmbedding& emb);
Rational octahedron_sum_fast(const ThreeGraph& h, const Triad& t, const TriadEmbedding& emb);

/// Sum of f over all (x, y, z).
Rational balanced_sum(const ThreeGraph& h, const Triad& t, const TriadEmbedding& emb);

struct QuasirandomReport {
  Rational octahedronSum;
  Rational bound;
  bool verdict = false;
  Rational d0, d1, d2;  ///< densities of E_AB, E_AC, E_BC
  bool substituted = false;  ///< densities differ; (d0 d1 d2)^4 stands in for d^12
};

QuasirandomReport check_quasirandom_triad(const ThreeGraph& h, const Triad& t,
                                          const TriadEmbedding& emb, const Rational& alpha);

TriadPartitionReport check_quasirandom_partition(const ThreeGraph& h, const TwoPartition& tp,
                                                 std::uint32_t ell, std::uint32_t t,
                                                 const Rational& eps2, const Rational& alpha);

struct SchachtReport {
  bool hypothesis = false;
  bool certain = false;  ///< every side verdict was certified or refuted outright
  QuasirandomReport quasirandom;
  std::array<Verdict, 3> sides;
};

/// Hypothesis side only: eps^C-quasirandom and each side d(E_i)^C-regular.
/// An empty side counts as regular.
SchachtReport schacht_predicate(const Triad& t, const ThreeGraph& h, const TriadEmbedding& emb,
                                const Rational& eps, std::uint32_t c, const CheckParams& params);

struct TriangleBand {
  std::uint64_t count = 0;
  Rational lower;
  Rational upper;
  bool inBand = false;
};

/// t(P) against d(A,B) d(A,C) d(B,C) |A||B||C| +- 7 eps |A||B||C|.
TriangleBand triangle_count_bound(const Triad& t, const Rational& eps);

struct HypothesisReport {
  VerdictStatus aggregate = VerdictStatus::CertifiedRegular;
  std::vector<TriadJudgement> triads;
  std::uint64_t caveats = 0;
  bool fullyExhaustive = true;
};

HypothesisReport subtriad_hypothesis_check(const ThreeGraph& h, const TwoPartition& tp,
                                           const Rational& delta, const CheckParams& params);

struct ReductionReport {
  EquipartitionReport equipartition;
  HypothesisReport hypothesis;
  bool parameterOk = false;
  bool preconditionsOk = false;
  PartitionReport conclusion;  ///< G_H^3 against E_3 and Z_3 at level 2 sqrt(delta)
  std::uint64_t identityChecks = 0;
  std::uint64_t identityFailures = 0;
  bool passes = false;
};

ReductionReport reduction_check(const ThreeGraph& h, const TwoPartition& tp, const Rational& delta,
                                std::uint32_t ell, std::uint32_t t, const Rational& eps2,
                                const CheckParams& params);

}  // namespace hreg
