#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "hreg/rational.hpp"

namespace hreg {

/// Nonnegative integer that may be far beyond any machine representation.
///
/// Small values are held exactly. Larger ones are symbolic: 2^X + o with X
/// itself a BigCount, t(a) / 2^k for an argument a too large to unfold, or
/// twr(h) for a tower height h too large to unfold. The last two are
/// saturated: only lower bounds are known, so some comparisons against them
/// are undecidable and come back empty.
class BigCount {
 public:
  enum class Kind { Exact, Pow2Plus, TOf, Tower };

  /// Exponents up to this many bits are expanded into exact integers.
  static constexpr std::uint64_t kExactBits = 65536;

  BigCount() : BigCount(exact(0)) {}

  static BigCount exact(BigInt v);
  /// 2^x + offset. |offset| must stay below 2^kExactBits.
  static BigCount pow2(const BigCount& x, const BigInt& offset = 0);
  /// t(arg) / 2^divLog, kept symbolic.
  static BigCount t_of(const BigCount& arg, std::uint64_t divLog);
  /// twr(height), kept symbolic.
  static BigCount tower(const BigCount& height);

  Kind kind() const;
  bool saturated() const { return kind() == Kind::TOf || kind() == Kind::Tower; }

  const BigInt& value() const;        ///< Exact only
  const BigCount& exponent() const;   ///< Pow2Plus only
  const BigInt& offset() const;       ///< Pow2Plus only
  const BigCount& argument() const;   ///< TOf and Tower
  std::uint64_t div_log() const;      ///< TOf only

  /// Empty when undecidable (saturated values).
  std::optional<bool> is_power_of_two() const;

  /// Exact quotient by 2^k, empty if it is not an integer or not representable.
  std::optional<BigCount> div_pow2(std::uint64_t k) const;
  BigCount mul_pow2(std::uint64_t k) const;
  /// this + d, for finite kinds; throws if the result would be negative.
  BigCount add_small(std::int64_t d) const;

  /// Bit length when exact; the exponent record otherwise.
  std::string to_string() const;

  friend std::optional<std::strong_ordering> compare(const BigCount& a, const BigCount& b);

 private:
  struct Node;
  explicit BigCount(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// True when a >= b is decided and holds.
bool provably_at_least(const BigCount& a, const BigCount& b);

/// e(i) = 2^(i+10).
BigCount func_e(std::uint64_t i);

/// t(1) = 2^250 and t(i+1) = 2^(t(i)/e(i)). i >= 1.
BigCount func_t(std::uint64_t i);
/// t at a possibly symbolic argument; large arguments stay symbolic.
BigCount func_t(const BigCount& i);

/// f*(i) = t(f(i)) / e(i). Throws PreconditionFailed when f(i) < i is decided.
template <typename F>
BigCount func_fstar(F&& f, std::uint64_t i);

/// w(1) = 1 and w(i+1) = w*(i).
BigCount func_w(std::uint64_t i);

/// twr(1) = 2, twr(x+1) = 2^twr(x); twr(0) = 1.
BigCount func_twr(std::uint64_t x);
BigCount func_twr(const BigCount& x);

/// x-fold iterate of twr starting from 1.
BigCount func_wow(std::uint64_t x);

BigCount fstar_at(const BigCount& fi, std::uint64_t i);

inline BigCount as_bigcount(const BigCount& b) { return b; }
inline BigCount as_bigcount(std::uint64_t v) { return BigCount::exact(BigInt(v)); }

template <typename F>
BigCount func_fstar(F&& f, std::uint64_t i) {
  return fstar_at(as_bigcount(f(i)), i);
}

}  // namespace hreg
