#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hreg/bigcount.hpp"
#include "hreg/graphs.hpp"
#include "hreg/partitions.hpp"

namespace hreg {

/// Vertex chains L_1, L_2, ... on the left side and R_1, R_2, ... on the
/// right side, coarse to fine.
struct ChainPair {
  std::uint32_t leftSize = 0;
  std::uint32_t rightSize = 0;
  std::vector<VertexPartition> left;
  std::vector<VertexPartition> right;
};

struct AssumptionViolation {
  /// 0 for structural problems (ground size, refinement, equitability),
  /// otherwise the numbered assumption that fails.
  int item = 0;
  std::size_t level = 0;  ///< 1-based chain index
  std::string message;
};

/// Checks |R_1| >= 2^200, each |R_i| a power of two, |R_{i+1}| >= 4 |R_i|,
/// and |L_i| = 2^(|R_i| / 2^(i+10)), plus refinement and equitability of
/// both chains.
std::vector<AssumptionViolation> validate_core_assumptions(const ChainPair& chains);

/// Equitable chain on 0..n-1 with the given orders. Each order must divide
/// the next one and n.
std::vector<VertexPartition> random_refinement_chain(std::uint32_t n,
                                                     const std::vector<std::uint32_t>& orders,
                                                     std::uint64_t seed);

/// Edge partitions of a complete product, level j having 2^j equal blocks.
struct EdgeChain {
  ProductSide carrier;
  std::vector<EdgePartition> levels;  ///< levels[j-1] has order 2^j
};

/// |carrier| must be divisible by 2^s. Level j+1 splits every block of level j
/// in two.
EdgeChain random_edge_equipartition_chain(const ProductSide& carrier, std::uint32_t s,
                                          std::uint64_t seed);

/// The tight 6-cycle on vertices 0..5 with edges {x, x+1, x+2} mod 6, and its
/// 3-partite form with classes {0,3}, {1,4}, {2,5}. Vertex v sits in class
/// v mod 3 at index v / 3.
struct SixCycle {
  std::vector<std::array<std::uint32_t, 3>> edges;  ///< each sorted
  std::array<VertexSet, 3> classes;
  ThreeGraph partite;
};

SixCycle tight_six_cycle();

/// Pastes six 3-graphs H_0..H_5 along the tight 6-cycle. H_x lives on
/// (V^x, V^{x+1}, V^{x+2}) with indices mod 6, all classes of size n. Class
/// V^x becomes part of class x mod 3 of the result, at offset n when x >= 3.
ThreeGraph six_cycle_paste(const std::vector<ThreeGraph>& parts);

/// Small stand-ins for t and e, both 1-based. w is derived: w(1) = 1 and
/// w(j+1) = t(w(j)) / e(j).
struct ToySchedule {
  std::vector<std::uint64_t> t;
  std::vector<std::uint64_t> e;

  std::uint64_t t_at(std::uint64_t i) const;
  std::uint64_t e_at(std::uint64_t i) const;
  /// w(1..count). Throws PreconditionFailed when an index leaves the
  /// tables or a division is not exact.
  std::vector<std::uint64_t> w(std::size_t count) const;
};

struct KeyScenario {
  std::uint32_t n = 0;
  ThreeGraph h;
  /// G' on (V1 x V2, V3).
  BipartiteGraph gPrime;
  EdgeChain firstChain;   ///< surrogate on V1 x V2
  EdgeChain secondChain;  ///< surrogate on (V1 x V2) x V3
  std::vector<VertexPartition> v3Chain;
  std::vector<std::uint64_t> w;                  ///< w(1..s+1)
  std::vector<std::size_t> selectedVertexLevels;  ///< w(j), j = 1..s
  std::vector<std::size_t> selectedEdgeLevels;    ///< w(j+1), j = 1..s
  bool auxIdentity = false;  ///< G' equals G_H^3 edge for edge
  std::vector<TwoPartition> probes;
};

/// Two chained applications of surrogate chains on three classes of size n.
/// H is the pullback of one level-s block of the second chain, so d(H) = 2^-s.
KeyScenario build_key_argument_scenario(const ToySchedule& schedule, std::uint32_t n,
                                        std::uint32_t s, std::uint64_t seed);

struct MainScenario {
  std::uint32_t n = 0;
  std::vector<ThreeGraph> parts;  ///< six, on classes of size n
  ThreeGraph h;                   ///< classes of size 2n
  VertexPartition v0;             ///< first chain level of every V^x, 6 t1 blocks
};

/// Six surrogate parts of density 2^-(s-1) pasted along the tight 6-cycle.
/// t1 is the toy first-level order and must divide n.
MainScenario build_theorem_main_scenario(std::uint32_t s, std::uint32_t n, std::uint32_t t1,
                                         std::uint64_t seed);

}  // namespace hreg
