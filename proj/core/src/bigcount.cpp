#include "hreg/bigcount.hpp"

#include "hreg/errors.hpp"

namespace hreg {

namespace {

// Unfold t(i) and twr(i) up to these arguments; beyond them the values are
// kept symbolic with the unfolded value at the floor as a lower bound.
constexpr std::uint64_t kTUnfold = 4096;
constexpr std::uint64_t kTFloor = 8;
constexpr std::uint64_t kTowerUnfold = 64;

std::uint64_t bit_length(const BigInt& v) {
  return v == 0 ? 0 : static_cast<std::uint64_t>(boost::multiprecision::msb(v)) + 1;
}

BigInt pow2_int(std::uint64_t k) {
  BigInt r = 1;
  r <<= static_cast<unsigned>(k);
  return r;
}

std::strong_ordering cmp_int(const BigInt& a, const BigInt& b) {
  if (a < b) return std::strong_ordering::less;
  if (a > b) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::optional<std::strong_ordering> reverse(std::optional<std::strong_ordering> c) {
  if (!c) return std::nullopt;
  if (*c == std::strong_ordering::less) return std::strong_ordering::greater;
  if (*c == std::strong_ordering::greater) return std::strong_ordering::less;
  return c;
}

}  // namespace

struct BigCount::Node {
  Kind kind = Kind::Exact;
  BigInt value;   // Exact: the value. Pow2Plus: the offset.
  std::optional<BigCount> sub;  // exponent, t argument or tower height
  std::uint64_t divLog = 0;
};

BigCount BigCount::exact(BigInt v) {
  if (v < 0) throw Error(ErrorCode::ParameterOutOfContract, "negative count");
  auto n = std::make_shared<Node>();
  n->value = std::move(v);
  return BigCount(std::move(n));
}

BigCount BigCount::pow2(const BigCount& x, const BigInt& offset) {
  if (offset != 0 && bit_length(abs(offset)) >= kExactBits) {
    throw Error(ErrorCode::ParameterOutOfContract, "offset too large for a symbolic power");
  }
  if (x.kind() == Kind::Exact && x.value() <= kExactBits) {
    BigInt v = pow2_int(static_cast<std::uint64_t>(x.value())) + offset;
    return exact(std::move(v));
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pow2Plus;
  n->value = offset;
  n->sub = x;
  return BigCount(std::move(n));
}

BigCount BigCount::t_of(const BigCount& arg, std::uint64_t divLog) {
  if (arg.kind() == Kind::Exact && arg.value() <= kTUnfold) {
    auto q = func_t(static_cast<std::uint64_t>(arg.value())).div_pow2(divLog);
    if (q) return *q;
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::TOf;
  n->sub = arg;
  n->divLog = divLog;
  return BigCount(std::move(n));
}

BigCount BigCount::tower(const BigCount& height) {
  if (height.kind() == Kind::Exact && height.value() <= kTowerUnfold) {
    return func_twr(static_cast<std::uint64_t>(height.value()));
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Tower;
  n->sub = height;
  return BigCount(std::move(n));
}

BigCount::Kind BigCount::kind() const { return node_->kind; }

const BigInt& BigCount::value() const {
  if (kind() != Kind::Exact) throw Error(ErrorCode::InvariantViolation, "value of a symbolic count");
  return node_->value;
}

const BigCount& BigCount::exponent() const {
  if (kind() != Kind::Pow2Plus) throw Error(ErrorCode::InvariantViolation, "not a power form");
  return *node_->sub;
}

const BigInt& BigCount::offset() const {
  if (kind() != Kind::Pow2Plus) throw Error(ErrorCode::InvariantViolation, "not a power form");
  return node_->value;
}

const BigCount& BigCount::argument() const {
  if (!saturated()) throw Error(ErrorCode::InvariantViolation, "no argument");
  return *node_->sub;
}

std::uint64_t BigCount::div_log() const { return node_->divLog; }

std::optional<bool> BigCount::is_power_of_two() const {
  switch (kind()) {
    case Kind::Exact: {
      const BigInt& v = node_->value;
      return v > 0 && (v & (v - 1)) == 0;
    }
    case Kind::Pow2Plus:
      // 0 < |o| < 2^(X-1) puts 2^X + o strictly between two powers.
      return node_->value == 0;
    case Kind::TOf:
    case Kind::Tower:
      // Every t(i) and twr(h) is 2 raised to an integer, and the quotient
      // stays above 1 at the floors.
      return true;
  }
  return std::nullopt;
}

std::optional<BigCount> BigCount::div_pow2(std::uint64_t k) const {
  switch (kind()) {
    case Kind::Exact: {
      const BigInt& v = node_->value;
      if (v != 0 && bit_length(v) <= k) return std::nullopt;
      if (k > 0 && (v & (pow2_int(k) - 1)) != 0) return std::nullopt;
      return exact(v >> static_cast<unsigned>(k));
    }
    case Kind::Pow2Plus:
      if (node_->value != 0) return std::nullopt;
      return pow2(node_->sub->add_small(-static_cast<std::int64_t>(k)));
    case Kind::TOf:
      return t_of(*node_->sub, node_->divLog + k);
    case Kind::Tower:
      return std::nullopt;
  }
  return std::nullopt;
}

BigCount BigCount::mul_pow2(std::uint64_t k) const {
  switch (kind()) {
    case Kind::Exact:
      return exact(node_->value << static_cast<unsigned>(k));
    case Kind::Pow2Plus:
      return pow2(node_->sub->add_small(static_cast<std::int64_t>(k)),
                  node_->value << static_cast<unsigned>(k));
    case Kind::TOf:
      if (k <= node_->divLog) return t_of(*node_->sub, node_->divLog - k);
      break;
    case Kind::Tower:
      break;
  }
  throw Error(ErrorCode::ParameterOutOfContract, "product not representable: " + to_string());
}

BigCount BigCount::add_small(std::int64_t d) const {
  switch (kind()) {
    case Kind::Exact: {
      BigInt v = node_->value + d;
      if (v < 0) throw Error(ErrorCode::PreconditionFailed, "count would become negative");
      return exact(std::move(v));
    }
    case Kind::Pow2Plus:
      return pow2(*node_->sub, node_->value + d);
    case Kind::TOf:
    case Kind::Tower:
      break;
  }
  throw Error(ErrorCode::ParameterOutOfContract, "cannot shift a saturated count");
}

std::string BigCount::to_string() const {
  switch (kind()) {
    case Kind::Exact: {
      const BigInt& v = node_->value;
      const std::uint64_t bits = bit_length(v);
      if (bits <= 64) return v.str();
      // Nearest power of two plus a short correction.
      for (std::uint64_t k : {bits - 1, bits}) {
        BigInt r = v - pow2_int(k);
        if (bit_length(abs(r)) <= 64) {
          std::string s = "2^" + std::to_string(k);
          if (r > 0) s += " + " + r.str();
          if (r < 0) s += " - " + BigInt(-r).str();
          return s;
        }
      }
      return "<" + std::to_string(bits) + "-bit integer>";
    }
    case Kind::Pow2Plus: {
      std::string s = "2^(" + node_->sub->to_string() + ")";
      if (node_->value > 0) s += " + " + node_->value.str();
      if (node_->value < 0) s += " - " + BigInt(-node_->value).str();
      return s;
    }
    case Kind::TOf: {
      std::string s = "t(" + node_->sub->to_string() + ")";
      if (node_->divLog > 0) s += "/2^" + std::to_string(node_->divLog);
      return s;
    }
    case Kind::Tower:
      return "twr(" + node_->sub->to_string() + ")";
  }
  return {};
}

namespace {

BigCount lower_bound_of(const BigCount& s) {
  if (s.kind() == BigCount::Kind::TOf) {
    auto q = func_t(kTFloor).div_pow2(s.div_log());
    if (q) return *q;
    return BigCount::exact(1);
  }
  return func_twr(kTowerUnfold);
}

}  // namespace

std::optional<std::strong_ordering> compare(const BigCount& a, const BigCount& b) {
  using K = BigCount::Kind;
  if (a.saturated() && b.saturated()) {
    if (a.kind() != b.kind()) return std::nullopt;
    if (a.kind() == K::TOf && a.div_log() != b.div_log()) return std::nullopt;
    // Both t and twr are strictly increasing.
    return compare(a.argument(), b.argument());
  }
  if (a.saturated()) {
    auto c = compare(lower_bound_of(a), b);
    if (c && *c == std::strong_ordering::greater) return c;
    return std::nullopt;
  }
  if (b.saturated()) return reverse(compare(b, a));

  if (a.kind() == K::Exact && b.kind() == K::Exact) return cmp_int(a.value(), b.value());

  if (a.kind() == K::Exact) return reverse(compare(b, a));

  if (b.kind() == K::Exact) {
    // a = 2^X + o with |o| < 2^(X-1), so a > 2^(X-1).
    const std::uint64_t len = bit_length(b.value());
    auto c = compare(a.exponent(), BigCount::exact(BigInt(len) + 1));
    if (!c) return std::nullopt;
    if (*c != std::strong_ordering::less) return std::strong_ordering::greater;
    const BigInt& x = a.exponent().value();
    return cmp_int(pow2_int(static_cast<std::uint64_t>(x)) + a.offset(), b.value());
  }

  // Both 2^X + o and 2^Y + p with offsets far below 2^(min(X,Y)-1).
  auto c = compare(a.exponent(), b.exponent());
  if (!c) return std::nullopt;
  if (*c == std::strong_ordering::equal) return cmp_int(a.offset(), b.offset());
  return c;
}

bool provably_at_least(const BigCount& a, const BigCount& b) {
  auto c = compare(a, b);
  return c && *c != std::strong_ordering::less;
}

BigCount func_e(std::uint64_t i) { return BigCount::exact(pow2_int(i + 10)); }

BigCount func_t(std::uint64_t i) {
  if (i == 0) throw Error(ErrorCode::ParameterOutOfContract, "t is defined from 1");
  if (i > kTUnfold) return BigCount::t_of(BigCount::exact(BigInt(i)), 0);
  BigCount t = BigCount::exact(pow2_int(250));
  for (std::uint64_t j = 1; j < i; ++j) {
    auto q = t.div_pow2(j + 10);
    if (!q) throw Error(ErrorCode::InvariantViolation, "t(i)/e(i) is not an integer");
    t = BigCount::pow2(*q);
  }
  return t;
}

BigCount func_t(const BigCount& i) {
  if (i.kind() == BigCount::Kind::Exact) {
    if (i.value() == 0) throw Error(ErrorCode::ParameterOutOfContract, "t is defined from 1");
    if (i.value() <= kTUnfold) return func_t(static_cast<std::uint64_t>(i.value()));
  }
  return BigCount::t_of(i, 0);
}

BigCount fstar_at(const BigCount& fi, std::uint64_t i) {
  auto c = compare(fi, BigCount::exact(BigInt(i)));
  if (c && *c == std::strong_ordering::less) {
    throw Error(ErrorCode::PreconditionFailed, "f(i) < i at i = " + std::to_string(i));
  }
  auto q = func_t(fi).div_pow2(i + 10);
  if (!q) throw Error(ErrorCode::InvariantViolation, "t(f(i))/e(i) is not representable");
  return *q;
}

BigCount func_w(std::uint64_t i) {
  if (i == 0) throw Error(ErrorCode::ParameterOutOfContract, "w is defined from 1");
  BigCount w = BigCount::exact(1);
  for (std::uint64_t j = 1; j < i; ++j) w = fstar_at(w, j);
  return w;
}

BigCount func_twr(std::uint64_t x) {
  if (x > kTowerUnfold) return BigCount::tower(BigCount::exact(BigInt(x)));
  BigCount v = BigCount::exact(1);
  for (std::uint64_t j = 0; j < x; ++j) v = BigCount::pow2(v);
  return v;
}

BigCount func_twr(const BigCount& x) {
  if (x.kind() == BigCount::Kind::Exact && x.value() <= kTowerUnfold) {
    return func_twr(static_cast<std::uint64_t>(x.value()));
  }
  return BigCount::tower(x);
}

BigCount func_wow(std::uint64_t x) {
  BigCount v = BigCount::exact(1);
  for (std::uint64_t j = 0; j < x; ++j) v = func_twr(v);
  return v;
}

}  // namespace hreg
