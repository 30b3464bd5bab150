#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hreg/graphs.hpp"
#include "hreg/partitions.hpp"
#include "hreg/rational.hpp"

namespace hreg {

enum class VerdictStatus { CertifiedRegular, IrregularWithWitness, UnknownNoWitnessFound };
enum class CheckMethod { Exhaustive, Randomized };
enum class CheckMode { Exhaustive, Randomized, Auto };

std::string_view to_string(VerdictStatus s);
std::string_view to_string(CheckMethod m);
std::string_view to_string(CheckMode m);
CheckMode parse_mode(std::string_view text);

struct Effort {
  std::uint64_t candidates = 0;  ///< subsets (or subtriads) examined
  std::uint64_t restarts = 0;    ///< randomized restarts used
};

struct PairWitness {
  VertexSet aSub;
  VertexSet bSub;

  friend bool operator==(const PairWitness&, const PairWitness&) = default;
};

template <typename W>
struct BasicVerdict {
  VerdictStatus status = VerdictStatus::UnknownNoWitnessFound;
  std::optional<W> witness;
  CheckMethod method = CheckMethod::Exhaustive;
  Effort effort;

  bool certified() const { return status == VerdictStatus::CertifiedRegular; }
  bool irregular() const { return status == VerdictStatus::IrregularWithWitness; }
  bool unknown() const { return status == VerdictStatus::UnknownNoWitnessFound; }
};

using Verdict = BasicVerdict<PairWitness>;

struct CheckParams {
  CheckMode mode = CheckMode::Auto;
  std::uint32_t maxExhaustiveSide = 12;
  std::uint32_t maxSubtriadEdges = 20;
  std::uint32_t randomTrials = 64;
  std::uint64_t seed = 0;
};

/// A positive threshold gamma held as its exact square, so that irrational
/// values such as 2*sqrt(delta) compare exactly.
class Level {
 public:
  static Level of(const Rational& gamma) { return Level(gamma * gamma); }
  static Level from_square(const Rational& square);

  const Rational& square() const { return sq_; }

  /// Smallest k >= 1 with k >= gamma * n.
  std::uint64_t floor_of(std::uint64_t n) const;
  /// x < gamma * y, for x, y >= 0.
  bool below_fraction(const Rational& x, const Rational& y) const;
  /// k <= gamma * e.
  bool within_budget(std::uint64_t k, std::uint64_t e) const;

  std::string describe() const;

 private:
  explicit Level(Rational sq) : sq_(std::move(sq)) {}
  Rational sq_;
};

/// Whether the witness meets the epsilon size floors and |d' - d| > eps.
bool witness_violates_eps(const BipartiteGraph& g, const PairWitness& w, const Rational& eps);
/// Whether the witness meets the gamma size floors and d' < d / 2.
bool witness_violates_delta(const BipartiteGraph& g, const PairWitness& w, const Level& gamma);

Verdict check_eps_regular(const BipartiteGraph& g, const Rational& eps, const CheckParams& params);
Verdict check_delta_regular(const BipartiteGraph& g, const Rational& delta,
                            const CheckParams& params);
Verdict check_delta_regular(const BipartiteGraph& g, const Level& gamma,
                            const CheckParams& params);

/// Greedy peeling search for a <gamma> violation. Restart 0 starts from the
/// full sides, later restarts from random subsets above the size floors.
std::optional<PairWitness> find_delta_witness_greedy(const BipartiteGraph& g, const Level& gamma,
                                                     std::uint64_t seed,
                                                     std::uint32_t restarts = 64);

/// Same search aimed at an epsilon violation, peeling toward both lower and
/// higher density.
std::optional<PairWitness> find_eps_witness_greedy(const BipartiteGraph& g, const Rational& eps,
                                                   std::uint64_t seed,
                                                   std::uint32_t restarts = 64);

/// Smallest j/denominator at which the exhaustive epsilon check certifies g.
Rational smallest_certified_eps(const BipartiteGraph& g, std::uint32_t denominator,
                                const CheckParams& params = {});

struct PairOutcome {
  std::uint32_t leftBlock = 0;
  std::uint32_t rightBlock = 0;
  Rational density;
  Verdict verdict;
};

struct PartitionReport {
  VerdictStatus aggregate = VerdictStatus::CertifiedRegular;
  std::vector<PairOutcome> pairs;
  std::uint64_t caveats = 0;  ///< pairs left Unknown
};

/// Cluster pairs of a bipartite graph are (left block, right block); pairs on
/// the same side carry no edges and are regular outright, so only cross
/// pairs are listed.
PartitionReport check_perfect_delta_partition(const BipartiteGraph& g,
                                              const VertexPartition& left,
                                              const VertexPartition& right,
                                              const Level& gamma, const CheckParams& params);

enum class EditOutcome { PerfectlyRegular, RegularAfterEdits, NotCertified };
std::string_view to_string(EditOutcome o);

struct EditReport {
  EditOutcome outcome = EditOutcome::PerfectlyRegular;
  std::vector<Edge> deletions;  ///< in g's coordinates, lexicographic
  PartitionReport before;
  std::optional<PartitionReport> after;
};

/// Perfect check first; failing pairs are repaired only by deleting all
/// their edges, and only when their density is below gamma * d(g) and the
/// running total stays within gamma * e(g).
EditReport check_delta_partition_with_edits(const BipartiteGraph& g, const VertexPartition& left,
                                            const VertexPartition& right, const Level& gamma,
                                            const CheckParams& params);

struct DegreeProfile {
  std::uint64_t exceptional = 0;
  VertexSet exceptionalSet;
};

/// Left vertices whose degree into ySub leaves [(d - eps)|ySub|, (d + eps)|ySub|],
/// with d the density of the whole graph.
DegreeProfile degree_profile(const BipartiteGraph& g, const VertexSet& ySub, const Rational& eps);

}  // namespace hreg
