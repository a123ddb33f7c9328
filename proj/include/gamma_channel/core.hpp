#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace gamma_channel {

using BigCount = boost::multiprecision::cpp_int;
using SignedBigCount = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Malformed input: negative dimensions, invalid field orders, bad distributions.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An enumeration would exceed its configured budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Order q = p^k of a finite field, validated at construction.
class FieldOrder {
 public:
  explicit FieldOrder(std::int64_t q) : q_(q) {
    if (q < 2) throw InputError("field order must be >= 2, got " + std::to_string(q));
    std::int64_t p = 0;
    for (std::int64_t d = 2; d * d <= q; ++d) {
      if (q % d == 0) {
        p = d;
        break;
      }
    }
    if (p == 0) p = q;
    std::int64_t rest = q;
    int k = 0;
    while (rest % p == 0) {
      rest /= p;
      ++k;
    }
    if (rest != 1) throw InputError("field order must be a prime power, got " + std::to_string(q));
    p_ = p;
    k_ = k;
  }

  std::int64_t value() const { return q_; }
  std::int64_t characteristic() const { return p_; }
  int degree() const { return k_; }
  bool is_prime() const { return k_ == 1; }

  friend bool operator==(const FieldOrder&, const FieldOrder&) = default;

 private:
  std::int64_t q_;
  std::int64_t p_ = 0;
  int k_ = 0;
};

namespace detail {
inline std::atomic<int>& dimension_limit_storage() {
  static std::atomic<int> limit{64};
  return limit;
}
}  // namespace detail

/// Largest dimension accepted by the public counting functions.
inline int dimension_limit() { return detail::dimension_limit_storage().load(); }
inline void set_dimension_limit(int limit) {
  if (limit < 1 || limit > 127) throw InputError("dimension limit must be in [1, 127]");
  detail::dimension_limit_storage().store(limit);
}

inline void check_dim(int d, const char* name) {
  if (d < 0) throw InputError(std::string("negative dimension: ") + name + "=" + std::to_string(d));
  if (d > dimension_limit())
    throw InputError(std::string("dimension exceeds limit: ") + name + "=" + std::to_string(d));
}

inline BigCount ipow(std::int64_t base, long long e) {
  if (e < 0) throw std::logic_error("negative exponent");
  return boost::multiprecision::pow(BigCount(base), static_cast<unsigned>(e));
}

/// log2 of a positive integer from its bit length and leading 64 bits.
inline double log2_big(const BigCount& x) {
  if (x <= 0) throw std::domain_error("log2 of non-positive integer");
  const unsigned bits = boost::multiprecision::msb(x) + 1;
  if (bits <= 64) return std::log2(static_cast<long double>(static_cast<std::uint64_t>(x)));
  const unsigned shift = bits - 64;
  const auto top = static_cast<std::uint64_t>(x >> shift);
  return static_cast<double>(std::log2(static_cast<long double>(top)) + static_cast<long double>(shift));
}

/// log2 of a positive rational.
inline double log2_rational(const Rational& x) {
  if (x <= 0) throw std::domain_error("log2 of non-positive rational");
  const BigCount num = boost::multiprecision::numerator(x);
  const BigCount den = boost::multiprecision::denominator(x);
  const unsigned nb = boost::multiprecision::msb(num) + 1;
  const unsigned db = boost::multiprecision::msb(den) + 1;
  if (nb <= 64 && db <= 64) {
    return static_cast<double>(std::log2(static_cast<long double>(static_cast<std::uint64_t>(num))) -
                               std::log2(static_cast<long double>(static_cast<std::uint64_t>(den))));
  }
  return log2_big(num) - log2_big(den);
}

/// Nearest double to a rational, computed from a 64-bit quotient.
inline double to_double(const Rational& x) {
  if (x == 0) return 0.0;
  const bool neg = x < 0;
  const BigCount num = boost::multiprecision::abs(boost::multiprecision::numerator(x));
  const BigCount den = boost::multiprecision::denominator(x);
  const long nb = static_cast<long>(boost::multiprecision::msb(num));
  const long db = static_cast<long>(boost::multiprecision::msb(den));
  const long shift = 62 - (nb - db);
  BigCount scaled = shift >= 0 ? BigCount(num << shift) : BigCount(num >> -shift);
  scaled /= den;
  const long double mant = static_cast<long double>(static_cast<std::uint64_t>(scaled));
  const double v = static_cast<double>(std::ldexp(mant, static_cast<int>(-shift)));
  return neg ? -v : v;
}

/// Exact rational value of a finite double.
inline Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw InputError("non-finite probability");
  if (x == 0.0) return Rational(0);
  int exp = 0;
  const double frac = std::frexp(x, &exp);
  const auto mant = static_cast<std::int64_t>(std::ldexp(frac, 53));
  exp -= 53;
  Rational r(mant);
  if (exp >= 0) {
    r *= Rational(BigCount(1) << exp);
  } else {
    r /= Rational(BigCount(1) << -exp);
  }
  return r;
}

inline std::string to_string(const BigCount& x) { return x.str(); }
inline std::string to_string(const Rational& x) {
  const BigCount den = boost::multiprecision::denominator(x);
  if (den == 1) return boost::multiprecision::numerator(x).str();
  return boost::multiprecision::numerator(x).str() + "/" + den.str();
}

}  // namespace gamma_channel
