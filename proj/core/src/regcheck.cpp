#include "hreg/regcheck.hpp"

#include <algorithm>
#include <bit>

#include "hreg/errors.hpp"
#include "hreg/random.hpp"

namespace hreg {

std::string_view to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::CertifiedRegular: return "CertifiedRegular";
    case VerdictStatus::IrregularWithWitness: return "IrregularWithWitness";
    case VerdictStatus::UnknownNoWitnessFound: return "UnknownNoWitnessFound";
  }
  return "?";
}

std::string_view to_string(CheckMethod m) {
  return m == CheckMethod::Exhaustive ? "Exhaustive" : "Randomized";
}

std::string_view to_string(CheckMode m) {
  switch (m) {
    case CheckMode::Exhaustive: return "exhaustive";
    case CheckMode::Randomized: return "randomized";
    case CheckMode::Auto: return "auto";
  }
  return "?";
}

CheckMode parse_mode(std::string_view text) {
  if (text == "exhaustive") return CheckMode::Exhaustive;
  if (text == "randomized") return CheckMode::Randomized;
  if (text == "auto") return CheckMode::Auto;
  throw Error(ErrorCode::Format, "unknown mode '" + std::string(text) + "'");
}

std::string_view to_string(EditOutcome o) {
  switch (o) {
    case EditOutcome::PerfectlyRegular: return "PerfectlyRegular";
    case EditOutcome::RegularAfterEdits: return "RegularAfterEdits";
    case EditOutcome::NotCertified: return "NotCertified";
  }
  return "?";
}

Level Level::from_square(const Rational& square) {
  if (square <= 0) throw Error(ErrorCode::ParameterOutOfContract, "level must be positive");
  return Level(square);
}

std::uint64_t Level::floor_of(std::uint64_t n) const {
  const BigInt num = numerator(sq_), den = denominator(sq_);
  const BigInt rhs = num * BigInt(n) * BigInt(n);
  std::uint64_t lo = 1, hi = n + 1;
  // Invariant: every k < lo fails, hi is "none within 1..n" or a success.
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (BigInt(mid) * BigInt(mid) * den >= rhs) hi = mid;
    else lo = mid + 1;
  }
  return lo;
}

bool Level::below_fraction(const Rational& x, const Rational& y) const {
  return x * x < sq_ * y * y;
}

bool Level::within_budget(std::uint64_t k, std::uint64_t e) const {
  return Rational(BigInt(k) * BigInt(k)) <= sq_ * BigInt(e) * BigInt(e);
}

std::string Level::describe() const {
  const BigInt num = numerator(sq_), den = denominator(sq_);
  const BigInt rn = boost::multiprecision::sqrt(num), rd = boost::multiprecision::sqrt(den);
  if (rn * rn == num && rd * rd == den) return to_string(Rational(rn, rd));
  return "sqrt(" + to_string(sq_) + ")";
}

namespace {

struct Frac {
  i128 num;
  i128 den;
};

// a/b < c/d for positive denominators.
bool less(const Frac& a, const Frac& b) { return a.num * b.den < b.num * a.den; }

// Density violation tests on integer counts. n' = |A'||B'|, N = |A||B|.
struct DeltaTest {
  bool low(i128 eSub, i128 nSub, i128 e, i128 n) const { return 2 * eSub * n < e * nSub; }
  bool high(i128, i128, i128, i128) const { return false; }
};

struct EpsTest {
  i128 num, den;
  bool low(i128 eSub, i128 nSub, i128 e, i128 n) const {
    return (e * nSub - eSub * n) * den > num * nSub * n;
  }
  bool high(i128 eSub, i128 nSub, i128 e, i128 n) const {
    return (eSub * n - e * nSub) * den > num * nSub * n;
  }
};

VertexSet bits_of(Word mask) {
  VertexSet s;
  while (mask) {
    s.push_back(static_cast<std::uint32_t>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return s;
}

// Enumerates every subset S' of the smaller side above its floor. For fixed
// S' the extreme values of e(S', O') over |O'| = k come from the k lowest or
// highest degrees into S', so each (S', k) is decided exactly in one step.
template <typename Test>
Verdict exhaustive_search(const BipartiteGraph& g, std::uint64_t floorLeft,
                          std::uint64_t floorRight, const Test& test) {
  Verdict v;
  v.method = CheckMethod::Exhaustive;
  const bool sIsLeft = g.left().size <= g.right().size;
  const std::uint32_t s = sIsLeft ? g.left().size : g.right().size;
  const std::uint32_t o = sIsLeft ? g.right().size : g.left().size;
  const std::uint64_t floorS = sIsLeft ? floorLeft : floorRight;
  const std::uint64_t floorO = sIsLeft ? floorRight : floorLeft;
  if (s > 62) throw Error(ErrorCode::BudgetExceeded, "exhaustive side above 62");
  if (floorS > s || floorO > o) {
    v.status = VerdictStatus::CertifiedRegular;
    return v;
  }
  std::vector<Word> adj(o);
  for (std::uint32_t u = 0; u < o; ++u) adj[u] = sIsLeft ? g.col(u)[0] : g.row(u)[0];

  const i128 e = static_cast<i128>(g.edge_count());
  const i128 n = static_cast<i128>(s) * o;
  std::vector<std::uint32_t> deg(o), order(o), bucket(s + 2);
  std::vector<i128> prefix(o + 1);
  const Word last = (Word{1} << s) - 1;
  for (Word mask = 1; mask <= last; ++mask) {
    const auto ns = static_cast<std::uint64_t>(std::popcount(mask));
    if (ns < floorS) continue;
    // Counting sort of O by degree into S', ties by index.
    std::fill(bucket.begin(), bucket.end(), 0);
    for (std::uint32_t u = 0; u < o; ++u) {
      deg[u] = static_cast<std::uint32_t>(std::popcount(adj[u] & mask));
      ++bucket[deg[u] + 1];
    }
    for (std::uint32_t d = 1; d < bucket.size(); ++d) bucket[d] += bucket[d - 1];
    for (std::uint32_t u = 0; u < o; ++u) order[bucket[deg[u]]++] = u;
    prefix[0] = 0;
    for (std::uint32_t i = 0; i < o; ++i) prefix[i + 1] = prefix[i] + deg[order[i]];
    for (std::uint64_t k = floorO; k <= o; ++k) {
      ++v.effort.candidates;
      const i128 nSub = static_cast<i128>(ns) * static_cast<i128>(k);
      const i128 eMin = prefix[k];
      const i128 eMax = prefix[o] - prefix[o - k];
      bool lowHit = test.low(eMin, nSub, e, n);
      bool highHit = !lowHit && test.high(eMax, nSub, e, n);
      if (!lowHit && !highHit) continue;
      VertexSet oSub;
      if (lowHit) {
        oSub.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
      } else {
        std::vector<std::uint32_t> desc(o);
        for (std::uint32_t u = 0; u < o; ++u) desc[u] = u;
        std::stable_sort(desc.begin(), desc.end(),
                         [&](std::uint32_t a, std::uint32_t b) { return deg[a] > deg[b]; });
        oSub.assign(desc.begin(), desc.begin() + static_cast<std::ptrdiff_t>(k));
      }
      std::sort(oSub.begin(), oSub.end());
      PairWitness w;
      w.aSub = sIsLeft ? bits_of(mask) : oSub;
      w.bSub = sIsLeft ? oSub : bits_of(mask);
      v.status = VerdictStatus::IrregularWithWitness;
      v.witness = std::move(w);
      return v;
    }
  }
  v.status = VerdictStatus::CertifiedRegular;
  return v;
}

// One greedy descent. `lower` peels toward lower density, otherwise higher.
template <typename Test>
std::optional<PairWitness> peel(const BipartiteGraph& g, std::vector<char> inA,
                                std::vector<char> inB, std::uint64_t floorA,
                                std::uint64_t floorB, bool lower, const Test& test) {
  const std::uint32_t na = g.left().size, nb = g.right().size;
  const i128 e = static_cast<i128>(g.edge_count());
  const i128 n = static_cast<i128>(na) * nb;
  std::vector<std::uint32_t> degA(na, 0), degB(nb, 0);
  std::uint64_t sizeA = 0, sizeB = 0;
  i128 eSub = 0;
  for (std::uint32_t x = 0; x < na; ++x) sizeA += inA[x] ? 1 : 0;
  for (std::uint32_t y = 0; y < nb; ++y) sizeB += inB[y] ? 1 : 0;
  for (std::uint32_t x = 0; x < na; ++x)
    for (std::uint32_t y = 0; y < nb; ++y)
      if (g.has_edge(x, y)) {
        if (inB[y]) ++degA[x];
        if (inA[x]) ++degB[y];
        if (inA[x] && inB[y]) ++eSub;
      }
  auto collect = [](const std::vector<char>& in) {
    VertexSet s;
    for (std::uint32_t i = 0; i < in.size(); ++i)
      if (in[i]) s.push_back(i);
    return s;
  };
  for (;;) {
    const i128 nSub = static_cast<i128>(sizeA) * static_cast<i128>(sizeB);
    if (lower ? test.low(eSub, nSub, e, n) : test.high(eSub, nSub, e, n))
      return PairWitness{collect(inA), collect(inB)};
    bool found = false, pickLeft = true;
    std::uint32_t pick = 0;
    Frac best{0, 1};
    auto consider = [&](bool left, std::uint32_t idx, i128 eAfter, i128 nAfter) {
      const Frac f{eAfter, nAfter};
      if (!found || (lower ? less(f, best) : less(best, f))) {
        found = true;
        pickLeft = left;
        pick = idx;
        best = f;
      }
    };
    if (sizeA > floorA)
      for (std::uint32_t x = 0; x < na; ++x)
        if (inA[x]) consider(true, x, eSub - degA[x], static_cast<i128>(sizeA - 1) * sizeB);
    if (sizeB > floorB)
      for (std::uint32_t y = 0; y < nb; ++y)
        if (inB[y]) consider(false, y, eSub - degB[y], static_cast<i128>(sizeA) * (sizeB - 1));
    if (!found) return std::nullopt;
    if (pickLeft) {
      inA[pick] = 0;
      --sizeA;
      eSub -= degA[pick];
      for (std::uint32_t y = 0; y < nb; ++y)
        if (g.has_edge(pick, y)) --degB[y];
    } else {
      inB[pick] = 0;
      --sizeB;
      eSub -= degB[pick];
      for (std::uint32_t x = 0; x < na; ++x)
        if (g.has_edge(x, pick)) --degA[x];
    }
  }
}

template <typename Test>
std::optional<PairWitness> greedy_search(const BipartiteGraph& g, std::uint64_t floorA,
                                         std::uint64_t floorB, std::uint64_t seed,
                                         std::uint32_t restarts, bool tryHigh, const Test& test,
                                         Effort* effort) {
  const std::uint32_t na = g.left().size, nb = g.right().size;
  if (floorA > na || floorB > nb) return std::nullopt;
  Rng rng(seed);
  for (std::uint32_t r = 0; r < restarts; ++r) {
    if (effort) ++effort->restarts;
    std::vector<char> inA(na, 1), inB(nb, 1);
    if (r > 0) {
      const auto ka = static_cast<std::uint32_t>(rng.between(floorA, na));
      const auto kb = static_cast<std::uint32_t>(rng.between(floorB, nb));
      std::fill(inA.begin(), inA.end(), 0);
      std::fill(inB.begin(), inB.end(), 0);
      for (auto x : rng.subset(na, ka)) inA[x] = 1;
      for (auto y : rng.subset(nb, kb)) inB[y] = 1;
    }
    if (auto w = peel(g, inA, inB, floorA, floorB, true, test)) return w;
    if (tryHigh)
      if (auto w = peel(g, inA, inB, floorA, floorB, false, test)) return w;
  }
  return std::nullopt;
}

bool use_exhaustive(const BipartiteGraph& g, const CheckParams& params) {
  const std::uint32_t side = std::min(g.left().size, g.right().size);
  switch (params.mode) {
    case CheckMode::Exhaustive:
      if (side > params.maxExhaustiveSide)
        throw Error(ErrorCode::BudgetExceeded,
                    "smaller side " + std::to_string(side) + " exceeds exhaustive budget " +
                        std::to_string(params.maxExhaustiveSide));
      return true;
    case CheckMode::Randomized: return false;
    case CheckMode::Auto: return side <= params.maxExhaustiveSide;
  }
  return true;
}

Verdict certified_outright() {
  Verdict v;
  v.status = VerdictStatus::CertifiedRegular;
  v.method = CheckMethod::Exhaustive;
  return v;
}

void require_positive_at_most_one(const Rational& x, const char* name) {
  if (x <= 0 || x > 1)
    throw Error(ErrorCode::ParameterOutOfContract, std::string(name) + " must lie in (0,1]");
}

}  // namespace

bool witness_violates_eps(const BipartiteGraph& g, const PairWitness& w, const Rational& eps) {
  if (w.aSub.empty() || w.bSub.empty()) return false;
  if (Rational(BigInt(w.aSub.size())) < eps * BigInt(g.left().size)) return false;
  if (Rational(BigInt(w.bSub.size())) < eps * BigInt(g.right().size)) return false;
  const Rational diff = induced_density(g, w.aSub, w.bSub) - density(g);
  return (diff < 0 ? Rational(-diff) : diff) > eps;
}

bool witness_violates_delta(const BipartiteGraph& g, const PairWitness& w, const Level& gamma) {
  if (w.aSub.empty() || w.bSub.empty()) return false;
  if (w.aSub.size() < gamma.floor_of(g.left().size)) return false;
  if (w.bSub.size() < gamma.floor_of(g.right().size)) return false;
  return induced_density(g, w.aSub, w.bSub) < density(g) / 2;
}

Verdict check_eps_regular(const BipartiteGraph& g, const Rational& eps,
                          const CheckParams& params) {
  require_positive_at_most_one(eps, "epsilon");
  const auto sm = to_small(eps);
  const EpsTest test{sm.num, sm.den};
  const Level floors = Level::of(eps);
  const auto fa = floors.floor_of(g.left().size), fb = floors.floor_of(g.right().size);
  const std::uint64_t slots = std::uint64_t{g.left().size} * g.right().size;
  if (g.edge_count() == 0 || g.edge_count() == slots) return certified_outright();
  if (use_exhaustive(g, params)) return exhaustive_search(g, fa, fb, test);
  Verdict v;
  v.method = CheckMethod::Randomized;
  v.witness = greedy_search(g, fa, fb, params.seed, params.randomTrials, true, test, &v.effort);
  v.status = v.witness ? VerdictStatus::IrregularWithWitness : VerdictStatus::UnknownNoWitnessFound;
  return v;
}

Verdict check_delta_regular(const BipartiteGraph& g, const Rational& delta,
                            const CheckParams& params) {
  require_positive_at_most_one(delta, "delta");
  return check_delta_regular(g, Level::of(delta), params);
}

Verdict check_delta_regular(const BipartiteGraph& g, const Level& gamma,
                            const CheckParams& params) {
  const auto fa = gamma.floor_of(g.left().size), fb = gamma.floor_of(g.right().size);
  const std::uint64_t slots = std::uint64_t{g.left().size} * g.right().size;
  if (g.edge_count() == 0 || g.edge_count() == slots) return certified_outright();
  const DeltaTest test;
  if (use_exhaustive(g, params)) return exhaustive_search(g, fa, fb, test);
  Verdict v;
  v.method = CheckMethod::Randomized;
  v.witness = greedy_search(g, fa, fb, params.seed, params.randomTrials, false, test, &v.effort);
  v.status = v.witness ? VerdictStatus::IrregularWithWitness : VerdictStatus::UnknownNoWitnessFound;
  return v;
}

std::optional<PairWitness> find_delta_witness_greedy(const BipartiteGraph& g, const Level& gamma,
                                                     std::uint64_t seed,
                                                     std::uint32_t restarts) {
  return greedy_search(g, gamma.floor_of(g.left().size), gamma.floor_of(g.right().size), seed,
                       restarts, false, DeltaTest{}, nullptr);
}

std::optional<PairWitness> find_eps_witness_greedy(const BipartiteGraph& g, const Rational& eps,
                                                   std::uint64_t seed,
                                                   std::uint32_t restarts) {
  const auto sm = to_small(eps);
  const Level floors = Level::of(eps);
  return greedy_search(g, floors.floor_of(g.left().size), floors.floor_of(g.right().size), seed,
                       restarts, true, EpsTest{sm.num, sm.den}, nullptr);
}

Rational smallest_certified_eps(const BipartiteGraph& g, std::uint32_t denominator,
                                const CheckParams& params) {
  if (denominator == 0)
    throw Error(ErrorCode::ParameterOutOfContract, "denominator must be positive");
  CheckParams p = params;
  p.mode = CheckMode::Exhaustive;
  std::uint32_t lo = 1, hi = denominator;
  while (lo < hi) {
    const std::uint32_t mid = lo + (hi - lo) / 2;
    if (check_eps_regular(g, Rational(mid, denominator), p).certified()) hi = mid;
    else lo = mid + 1;
  }
  return Rational(lo, denominator);
}

PartitionReport check_perfect_delta_partition(const BipartiteGraph& g,
                                              const VertexPartition& left,
                                              const VertexPartition& right,
                                              const Level& gamma, const CheckParams& params) {
  if (left.ground_size() != g.left().size || right.ground_size() != g.right().size)
    throw Error(ErrorCode::GroundMismatch, "partition does not match graph sides");
  PartitionReport rep;
  bool anyUnknown = false, anyIrregular = false;
  std::uint64_t pairIndex = 0;
  for (std::uint32_t i = 0; i < left.order(); ++i) {
    for (std::uint32_t j = 0; j < right.order(); ++j, ++pairIndex) {
      const auto& li = left.block(i);
      const auto& rj = right.block(j);
      const auto sub = g.induced(li, rj);
      CheckParams p = params;
      p.seed = derive_seed(params.seed, pairIndex);
      PairOutcome out{i, j, density(sub), check_delta_regular(sub, gamma, p)};
      if (out.verdict.witness) {
        for (auto& a : out.verdict.witness->aSub) a = li[a];
        for (auto& b : out.verdict.witness->bSub) b = rj[b];
      }
      anyIrregular |= out.verdict.irregular();
      if (out.verdict.unknown()) {
        anyUnknown = true;
        ++rep.caveats;
      }
      rep.pairs.push_back(std::move(out));
    }
  }
  rep.aggregate = anyIrregular ? VerdictStatus::IrregularWithWitness
                  : anyUnknown ? VerdictStatus::UnknownNoWitnessFound
                               : VerdictStatus::CertifiedRegular;
  return rep;
}

EditReport check_delta_partition_with_edits(const BipartiteGraph& g, const VertexPartition& left,
                                            const VertexPartition& right, const Level& gamma,
                                            const CheckParams& params) {
  EditReport rep;
  rep.before = check_perfect_delta_partition(g, left, right, gamma, params);
  if (rep.before.aggregate != VerdictStatus::IrregularWithWitness) {
    rep.outcome = EditOutcome::PerfectlyRegular;
    return rep;
  }
  const Rational dg = density(g);
  std::uint64_t used = 0;
  for (const auto& pr : rep.before.pairs) {
    if (!pr.verdict.irregular()) continue;
    const auto& li = left.block(pr.leftBlock);
    const auto& rj = right.block(pr.rightBlock);
    const std::uint64_t ep = induced_edge_count(g, li, rj);
    if (!gamma.below_fraction(pr.density, dg) || !gamma.within_budget(used + ep, g.edge_count())) {
      rep.outcome = EditOutcome::NotCertified;
      rep.deletions.clear();
      return rep;
    }
    used += ep;
    for (auto a : li)
      for (auto b : rj)
        if (g.has_edge(a, b)) rep.deletions.push_back({a, b});
  }
  std::sort(rep.deletions.begin(), rep.deletions.end());
  const BipartiteGraph removed(g.left(), g.right(), rep.deletions);
  rep.after = check_perfect_delta_partition(g.without(removed), left, right, gamma, params);
  rep.outcome = rep.after->aggregate == VerdictStatus::IrregularWithWitness
                    ? EditOutcome::NotCertified
                    : EditOutcome::RegularAfterEdits;
  return rep;
}

DegreeProfile degree_profile(const BipartiteGraph& g, const VertexSet& ySub,
                             const Rational& eps) {
  const auto mask = mask_of(ySub, g.right().size);
  const BigInt e(g.edge_count());
  const BigInt n = BigInt(g.left().size) * g.right().size;
  const BigInt m(ySub.size());
  DegreeProfile out;
  for (std::uint32_t x = 0; x < g.left().size; ++x) {
    const BigInt deg(and_count(g.row(x), mask));
    BigInt gap = deg * n - e * m;
    if (gap < 0) gap = -gap;
    if (Rational(gap) > eps * m * n) {
      ++out.exceptional;
      out.exceptionalSet.push_back(x);
    }
  }
  return out;
}

}  // namespace hreg
