#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <memory>
#include <unordered_map>
#include <vector>

#include "combinatorics.hpp"
#include "core.hpp"

namespace gamma_channel {

/// Dimensions of U, V, W and their intersections.
struct DimProfile1 {
  int dU = 0, dV = 0, dW = 0, dUV = 0, dUW = 0, dVW = 0, dUVW = 0;
  friend bool operator==(const DimProfile1&, const DimProfile1&) = default;
};

/// Dimensions of V' <= V, W' <= W and their intersections with U, V, W.
/// dVWp = dim(V cap W'), dWVp = dim(W cap V'), dUVWp = dim(U cap V cap W'),
/// dUWVp = dim(U cap W cap V'), dUVpWp = dim(U cap V' cap W').
struct DimProfile2 {
  int dVp = 0, dWp = 0, dUVp = 0, dUWp = 0, dVWp = 0, dWVp = 0, dVpWp = 0, dUVWp = 0, dUWVp = 0, dUVpWp = 0;
  friend bool operator==(const DimProfile2&, const DimProfile2&) = default;
};

namespace detail {

struct Key128 {
  std::uint64_t lo = 0, hi = 0;
  bool operator==(const Key128&) const = default;
};

struct Key128Hash {
  std::size_t operator()(const Key128& k) const noexcept {
    std::uint64_t h = k.lo * 0x9E3779B97F4A7C15ULL;
    h ^= k.hi + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

class KeyPacker {
 public:
  KeyPacker& add(int v) {
    const auto x = static_cast<std::uint64_t>(v) & 0x7F;
    if (pos_ < 64) {
      key_.lo |= x << pos_;
      if (pos_ + 7 > 64) key_.hi |= x >> (64 - pos_);
    } else {
      key_.hi |= x << (pos_ - 64);
    }
    pos_ += 7;
    return *this;
  }
  Key128 key() const { return key_; }

 private:
  Key128 key_;
  int pos_ = 0;
};

inline bool all_nonneg(std::initializer_list<int> xs) {
  for (int x : xs)
    if (x < 0) return false;
  return true;
}

/// Subspace-counting engine for a fixed q with memo tables. Not thread-safe;
/// use one instance per thread.
class Counter {
 public:
  explicit Counter(std::int64_t q) : q_(q) {}

  std::int64_t q() const { return q_; }

  const BigCount& pw(long long e) {
    if (e < 0) throw std::logic_error("negative exponent");
    while (static_cast<long long>(pows_.size()) <= e) {
      if (pows_.empty()) {
        pows_.emplace_back(1);
      } else {
        pows_.push_back(pows_.back() * q_);
      }
    }
    return pows_[static_cast<std::size_t>(e)];
  }

  const BigCount& qb(int m, int d) {
    static const BigCount zero = 0;
    if (m < 0 || d < 0 || d > m) return zero;
    while (static_cast<int>(binoms_.size()) <= m) {
      const int row = static_cast<int>(binoms_.size());
      std::vector<BigCount> r(static_cast<std::size_t>(row) + 1);
      r[0] = 1;
      r[static_cast<std::size_t>(row)] = 1;
      for (int k = 1; k < row; ++k) {
        r[static_cast<std::size_t>(k)] = binoms_[static_cast<std::size_t>(row - 1)][static_cast<std::size_t>(k - 1)] +
                                         pw(k) * binoms_[static_cast<std::size_t>(row - 1)][static_cast<std::size_t>(k)];
      }
      binoms_.push_back(std::move(r));
    }
    return binoms_[static_cast<std::size_t>(m)][static_cast<std::size_t>(d)];
  }

  BigCount prodq(int a, int k) {
    if (a < 0 || k < 0 || k > a) return 0;
    BigCount out = 1;
    for (int i = 0; i < k; ++i) out *= pw(a) - pw(i);
    return out;
  }

  BigCount f_small(int dU, int dV, int dW) {
    if (dU < 0 || dV < 0 || dW < 0 || dW > std::min(dU, dV)) return 0;
    return qb(dU, dW) * prodq(dV, dW);
  }

  BigCount g(int dU, int dV, int dW, int dUW, int dVW) {
    if (!all_nonneg({dU, dV, dW, dUW, dVW})) return 0;
    if (dUW > std::min(dU, dW) || dVW > std::min(dV, dW)) return 0;
    const int k = dW - dUW - dVW;
    if (k < 0 || k > std::min(dU - dUW, dV - dVW)) return 0;
    return qb(dU, dUW) * qb(dV, dVW) * f_small(dU - dUW, dV - dVW, k);
  }

  BigCount h(int dU, int dV, int dW, int dUV, int dUW, int dVW, int dUVW) {
    if (!all_nonneg({dU, dV, dW, dUV, dUW, dVW, dUVW})) return 0;
    if (dUVW > dUV || dUVW > dUW || dUVW > dVW || dUV > std::min(dU, dV)) return 0;
    const BigCount gv = g(dU - dUV, dV - dUV, dW - dUVW, dUW - dUVW, dVW - dUVW);
    if (gv == 0) return 0;
    return gv * qb(dUV, dUVW) * pw(static_cast<long long>(dW - dUVW) * (dUV - dUVW));
  }

  BigCount l(int m, int dU, int dV, int dW, int dUV, int dUW, int dVW, int dUVW) {
    if (!all_nonneg({m, dU, dV, dW, dUV, dUW, dVW, dUVW})) return 0;
    const int s = dU + dV - dUV;
    if (dUV > std::min(dU, dV) || s > m) return 0;
    BigCount total = 0;
    for (int k = std::max(dUW, dVW); k <= dW; ++k) {
      const BigCount hv = h(dU, dV, k, dUV, dUW, dVW, dUVW);
      if (hv == 0) continue;
      total += hv * qb(m - s, dW - k) * pw(static_cast<long long>(dW - k) * (s - k));
    }
    return total;
  }

  static bool bdp1(const DimProfile1& a, int m) {
    if (!all_nonneg({m, a.dU, a.dV, a.dW, a.dUV, a.dUW, a.dVW, a.dUVW})) return false;
    return a.dU <= m && a.dV <= m && a.dW <= m && a.dUV <= std::min(a.dU, a.dV) &&
           a.dUW <= std::min(a.dU, a.dW) && a.dVW <= std::min(a.dV, a.dW) &&
           a.dUVW <= std::min({a.dUV, a.dUW, a.dVW}) && a.dU + a.dV - a.dUV <= m && a.dU + a.dW - a.dUW <= m &&
           a.dV + a.dW - a.dVW <= m && a.dUV + a.dVW - a.dUVW <= m && a.dUW + a.dVW - a.dUVW <= m &&
           a.dUV + a.dUW - a.dUVW <= m;
  }

  static bool bdp2(const DimProfile1& a, const DimProfile2& b) {
    if (!all_nonneg({b.dVp, b.dWp, b.dUVp, b.dUWp, b.dVWp, b.dWVp, b.dVpWp, b.dUVWp, b.dUWVp, b.dUVpWp}))
      return false;
    return b.dVp <= a.dV && b.dWp <= a.dW && b.dUVp <= std::min(a.dUV, b.dVp) &&
           b.dUWp <= std::min(a.dUW, b.dWp) && b.dVWp <= std::min(a.dVW, b.dWp) &&
           b.dWVp <= std::min(a.dVW, b.dVp) && b.dVpWp <= std::min(b.dVWp, b.dWVp) &&
           b.dUVWp <= std::min({a.dUVW, b.dUWp, b.dVWp}) && b.dUWVp <= std::min({a.dUVW, b.dUVp, b.dWVp}) &&
           b.dUVpWp <= std::min({b.dUVWp, b.dUWVp, b.dVpWp}) &&
           a.dU + b.dVp - b.dUVp <= a.dU + a.dV - a.dUV && a.dU + b.dWp - b.dUWp <= a.dU + a.dW - a.dUW &&
           b.dVp + b.dWp - b.dVpWp <= a.dV + b.dWp - b.dVWp && a.dV + b.dWp - b.dVWp <= a.dV + a.dW - a.dVW &&
           b.dVp + b.dWp - b.dVpWp <= a.dW + b.dVp - b.dWVp && a.dW + b.dVp - b.dWVp <= a.dV + a.dW - a.dVW &&
           b.dUVp + b.dVpWp - b.dUVpWp <= a.dUV + b.dVWp - b.dUVWp &&
           a.dUV + b.dVWp - b.dUVWp <= a.dUV + a.dVW - a.dUVW &&
           b.dUVp + b.dVpWp - b.dUVpWp <= b.dUVp + b.dWVp - b.dUWVp &&
           b.dUVp + b.dWVp - b.dUWVp <= a.dUV + a.dVW - a.dUVW &&
           b.dUWp + b.dVpWp - b.dUVpWp <= b.dUWp + b.dVWp - b.dUVWp &&
           b.dUWp + b.dVWp - b.dUVWp <= a.dUW + a.dVW - a.dUVW &&
           b.dUWp + b.dVpWp - b.dUVpWp <= a.dUW + b.dWVp - b.dUWVp &&
           a.dUW + b.dWVp - b.dUWVp <= a.dUW + a.dVW - a.dUVW &&
           b.dUVp + b.dUWp - b.dUVpWp <= a.dUV + b.dUWp - b.dUVWp &&
           a.dUV + b.dUWp - b.dUVWp <= a.dUV + a.dUW - a.dUVW &&
           b.dUVp + b.dUWp - b.dUVpWp <= b.dUVp + a.dUW - b.dUWVp &&
           b.dUVp + a.dUW - b.dUWVp <= a.dUV + a.dUW - a.dUVW;
  }

  // Whether subspaces U, V, W of F_q^m with W + V = U + V realize the profile.
  static bool realizable(const DimProfile1& a, int m) {
    const int b = a.dU - a.dUV - a.dUW + a.dUVW;
    if (b < 0 || b != a.dW - a.dUW - a.dVW + a.dUVW) return false;
    const int onlyV = a.dV - a.dUV - a.dVW + a.dUVW - b;
    if (onlyV < 0 || a.dUV < a.dUVW || a.dUW < a.dUVW || a.dVW < a.dUVW) return false;
    return a.dU + a.dV - a.dUV <= m;
  }

  BigCount c(const DimProfile1& a, const DimProfile2& b, int m) {
    if (!bdp1(a, m) || !bdp2(a, b) || !realizable(a, m)) return 0;
    return c_rec(a, b, m);
  }

  BigCount c_prime(const DimProfile1& a, int dVp, int dWp, int dVpWp, int m) {
    BigCount total = 0;
    for (int i = 0; i <= std::min(a.dUV, dVp); ++i)
      for (int j = 0; j <= std::min(a.dUW, dWp); ++j)
        for (int k = 0; k <= std::min(a.dVW, dWp); ++k)
          for (int p = 0; p <= std::min(a.dVW, dVp); ++p)
            for (int qq = 0; qq <= std::min({a.dUVW, j, k}); ++qq)
              for (int s = 0; s <= std::min({a.dUVW, i, p}); ++s)
                for (int t = 0; t <= std::min({qq, s, dVpWp}); ++t)
                  total += c(a, DimProfile2{dVp, dWp, i, j, k, p, dVpWp, qq, s, t}, m);
    return total;
  }

  // Pairs V' <= V, W' <= W of dims (a, b), dim(V' cap W') = j, with U <= W' + V'.
  BigCount c_containing(const DimProfile1& d, int a, int b, int j, int m) {
    if (!bdp1(d, m) || !realizable(d, m)) return 0;
    if (a < 0 || b < 0 || j < 0 || j > std::min(a, b) || a > d.dV || b > d.dW) return 0;
    const Key128 key = KeyPacker{}.add(d.dU).add(d.dV).add(d.dW).add(d.dUV).add(d.dUW).add(d.dVW)
                           .add(d.dUVW).add(a).add(b).add(j).add(m).key();
    if (auto it = containing_memo_.find(key); it != containing_memo_.end()) return it->second;
    BigCount total = 0;
    for (int k = j; k <= std::min(d.dVW, b); ++k) {
      const int dVpp = a + k - j;
      if (dVpp > d.dV) continue;
      BigCount inner = 0;
      for (int i = 0; i <= std::min(d.dUV, dVpp); ++i)
        for (int jj = 0; jj <= std::min(d.dUW, b); ++jj)
          for (int p = k; p <= std::min(d.dVW, dVpp); ++p)
            for (int qq = 0; qq <= std::min({d.dUVW, jj, k}); ++qq)
              for (int s = 0; s <= std::min({d.dUVW, i, p}); ++s)
                for (int t = 0; t <= std::min({qq, s, k}); ++t)
                  inner += c(d, DimProfile2{dVpp, b, i, jj, k, p, k, qq, s, t}, m);
      if (inner != 0) total += inner * pw(static_cast<long long>(a - j) * (k - j)) * qb(k, j);
    }
    containing_memo_.emplace(key, total);
    return total;
  }

 private:
  BigCount cfdi(int dV, int dV1, int dU, int dUV1) {
    if (!all_nonneg({dV, dV1, dU, dUV1}) || dU < dUV1 || dV1 < dUV1) return 0;
    return pw(static_cast<long long>(dU - dUV1) * (dV1 - dUV1)) * qb(dV - dV1, dU - dUV1) * qb(dV1, dUV1);
  }

  // Base case dim(V' cap W') = 0.
  BigCount c_trivial(const DimProfile1& a, const DimProfile2& b) {
    if (b.dVpWp != 0 || b.dUVpWp != 0) return 0;
    if (b.dWp != a.dU - b.dUVp || b.dVWp != a.dUV - b.dUVp) return 0;
    // R = V cap (U + W); V' must meet R in the largest possible dimension p.
    const int dR = a.dVW + a.dU - a.dUW;
    const int p = b.dWVp + a.dU - a.dUW;
    if (dR > a.dV || p > b.dVp) return 0;
    BigCount valid = l(dR, a.dUV, a.dVW, p, a.dUVW, b.dUVp, b.dWVp, b.dUWVp);
    if (valid == 0) return 0;
    valid *= pw(static_cast<long long>(b.dVp - p) * (dR - p)) * qb(a.dV - dR, b.dVp - p);
    if (valid == 0) return 0;
    const int a1 = a.dUW - b.dUWVp;
    const int a3 = a.dUVW - b.dUWVp;
    const int k1 = b.dWVp - b.dUWVp;
    if (a1 < 0 || a3 < 0 || k1 < 0 || b.dUWp > a1) return 0;
    const long long e = static_cast<long long>(b.dWp) * b.dWVp - static_cast<long long>(a1) * k1;
    if (e < 0) return 0;
    return valid * pw(e) * cfdi(a1, a3, b.dUWp, b.dUVWp) * prodq(k1, a1 - b.dUWp);
  }

  BigCount c_rec(const DimProfile1& a, const DimProfile2& b, int m) {
    if (!bdp1(a, m) || !bdp2(a, b)) return 0;
    if (b.dVp == 0) {
      const bool ok = a.dU == a.dUW && a.dUV == a.dUVW &&
                      b == DimProfile2{0, a.dU, 0, a.dU, a.dUV, 0, 0, a.dUV, 0, 0};
      return ok ? 1 : 0;
    }
    if (b.dVpWp == 0) return c_trivial(a, b);
    const Key128 key = pack(a, b, m);
    if (auto it = c_memo_.find(key); it != c_memo_.end()) return it->second;
    const int t = b.dUVpWp;
    const int x = b.dVpWp;
    const DimProfile1 na{a.dU - t, a.dV - x, a.dW - x, a.dUV - t, a.dUW - t, a.dVW - x, a.dUVW - t};
    const DimProfile2 nb{b.dVp - x, b.dWp - x, b.dUVp - t, b.dUWp - t, b.dVWp - x,
                         b.dWVp - x, 0,        b.dUVWp - t, b.dUWVp - t, 0};
    BigCount out = 0;
    const BigCount sub = c_rec(na, nb, m - x);
    if (sub != 0) {
      out = sub * pw(static_cast<long long>(x - t) * (a.dUVW - t)) * qb(a.dVW - a.dUVW, x - t) * qb(a.dUVW, t);
    }
    c_memo_.emplace(key, out);
    return out;
  }

  static Key128 pack(const DimProfile1& a, const DimProfile2& b, int m) {
    return KeyPacker{}
        .add(a.dU).add(a.dV).add(a.dW).add(a.dUV).add(a.dUW).add(a.dVW).add(a.dUVW)
        .add(b.dVp).add(b.dWp).add(b.dUVp).add(b.dUWp).add(b.dVWp).add(b.dWVp).add(b.dVpWp)
        .add(b.dUVWp).add(b.dUWVp).add(b.dUVpWp).add(m)
        .key();
  }

  std::int64_t q_;
  std::deque<BigCount> pows_;
  std::deque<std::vector<BigCount>> binoms_;
  std::unordered_map<Key128, BigCount, Key128Hash> c_memo_;
  std::unordered_map<Key128, BigCount, Key128Hash> containing_memo_;
};

inline void check_profile(const DimProfile1& a) {
  check_dim(a.dU, "dU");
  check_dim(a.dV, "dV");
  check_dim(a.dW, "dW");
  check_dim(a.dUV, "dUV");
  check_dim(a.dUW, "dUW");
  check_dim(a.dVW, "dVW");
  check_dim(a.dUVW, "dUVW");
}

inline void check_profile(const DimProfile2& b) {
  check_dim(b.dVp, "dV'");
  check_dim(b.dWp, "dW'");
  check_dim(b.dUVp, "dUV'");
  check_dim(b.dUWp, "dUW'");
  check_dim(b.dVWp, "dVW'");
  check_dim(b.dWVp, "dWV'");
  check_dim(b.dVpWp, "dV'W'");
  check_dim(b.dUVWp, "dUVW'");
  check_dim(b.dUWVp, "dUWV'");
  check_dim(b.dUVpWp, "dUV'W'");
}

}  // namespace detail

/// Subspaces W of U (+) V with dim W = dW meeting U and V trivially.
inline BigCount f_small(int dU, int dV, int dW, const FieldOrder& q) {
  check_dim(dU, "dU");
  check_dim(dV, "dV");
  check_dim(dW, "dW");
  return detail::Counter(q.value()).f_small(dU, dV, dW);
}

/// Subspaces W of U (+) V with dim(W cap U) = dUW and dim(W cap V) = dVW.
inline BigCount g_count(int dU, int dV, int dW, int dUW, int dVW, const FieldOrder& q) {
  check_dim(dU, "dU");
  check_dim(dV, "dV");
  check_dim(dW, "dW");
  check_dim(dUW, "dUW");
  check_dim(dVW, "dVW");
  return detail::Counter(q.value()).g(dU, dV, dW, dUW, dVW);
}

/// Subspaces W of U + V with the given intersection dimensions.
inline BigCount h_count(int dU, int dV, int dW, int dUV, int dUW, int dVW, int dUVW, const FieldOrder& q) {
  detail::check_profile(DimProfile1{dU, dV, dW, dUV, dUW, dVW, dUVW});
  return detail::Counter(q.value()).h(dU, dV, dW, dUV, dUW, dVW, dUVW);
}

/// dW-dimensional subspaces W of F_q^m with the given intersection dimensions.
inline BigCount l_count(int m, int dU, int dV, int dW, int dUV, int dUW, int dVW, int dUVW, const FieldOrder& q) {
  check_dim(m, "m");
  detail::check_profile(DimProfile1{dU, dV, dW, dUV, dUW, dVW, dUVW});
  return detail::Counter(q.value()).l(m, dU, dV, dW, dUV, dUW, dVW, dUVW);
}

/// Necessary dimension inequalities for a pair profile to be realizable.
inline bool bdp_check(const DimProfile1& d1, const DimProfile2& d2, int m) {
  return detail::Counter::bdp1(d1, m) && detail::Counter::bdp2(d1, d2);
}

/// Pairs (V', W') with V' <= V, W' <= W, W' + V' = U + V' and profile d2, for
/// fixed U, V, W in F_q^m with profile d1 and W + V = U + V.
inline BigCount c_count(const DimProfile1& d1, const DimProfile2& d2, int m, const FieldOrder& q) {
  check_dim(m, "m");
  detail::check_profile(d1);
  detail::check_profile(d2);
  return detail::Counter(q.value()).c(d1, d2, m);
}

/// c_count summed over all intersection dimensions with U, V and W.
inline BigCount c_prime(const DimProfile1& d1, int dVp, int dWp, int dVpWp, int m, const FieldOrder& q) {
  check_dim(m, "m");
  detail::check_profile(d1);
  check_dim(dVp, "dV'");
  check_dim(dWp, "dW'");
  check_dim(dVpWp, "dV'W'");
  return detail::Counter(q.value()).c_prime(d1, dVp, dWp, dVpWp, m);
}

/// f0, f1 and f2 for fixed (q, n, m), with memo tables shared across calls.
/// Not thread-safe; use one instance per thread.
class MatrixFunctions {
 public:
  MatrixFunctions(const FieldOrder& q, int n, int m)
      : q_(q), n_(n), m_(m), counter_(std::make_unique<detail::Counter>(q.value())) {
    check_dim(n, "n");
    check_dim(m, "m");
  }

  const FieldOrder& q() const { return q_; }
  int n() const { return n_; }
  int m() const { return m_; }
  int max_rank() const { return std::min(n_, m_); }

  /// n x m matrices with a fixed u-dimensional rowspace (alternating sum).
  BigCount f0(int u) {
    check_dim(u, "u");
    if (u > max_rank()) throw InputError("f0 requires u <= min(n, m)");
    SignedBigCount total = 0;
    for (int v = 0; v <= u; ++v) {
      SignedBigCount term = counter_->pw(static_cast<long long>(n_) * v + detail::choose2(u - v)) * counter_->qb(u, v);
      if ((u - v) % 2 == 0) {
        total += term;
      } else {
        total -= term;
      }
    }
    return total;
  }

  /// prod_{i<u} (q^n - q^i).
  BigCount f0_product(int u) {
    check_dim(u, "u");
    if (u > max_rank()) throw InputError("f0 requires u <= min(n, m)");
    return counter_->prodq(n_, u);
  }

  /// Rank-r matrices B with row(M + B) = V, where row(M) = U, dim U = u,
  /// dim V = v and h = dim((U + V) / V).
  BigCount f1(int u, int v, int h, int r) {
    check_dim(u, "u");
    check_dim(v, "v");
    check_dim(h, "h");
    check_dim(r, "r");
    return f1_raw(u, v, h, r);
  }

  /// Rank-rB matrices B with rank(X + B) = r for a fixed X of rank rX.
  BigCount f2(int r, int rX, int rB) {
    check_dim(r, "r");
    check_dim(rX, "rX");
    check_dim(rB, "rB");
    const int k = max_rank();
    if (r > k || rX > k || rB > k) return 0;
    BigCount total = 0;
    // h is dim(V cap row X); f1 expects the quotient dimension rX - h.
    for (int h = 0; h <= std::min(r, rX); ++h) {
      const BigCount inner = f1_raw(rX, r, rX - h, rB);
      if (inner == 0) continue;
      total += counter_->pw(static_cast<long long>(r - h) * (rX - h)) * counter_->qb(m_ - rX, r - h) *
               counter_->qb(rX, h) * inner;
    }
    return total;
  }

  detail::Counter& counter() { return *counter_; }

 private:
  BigCount f1_raw(int u, int v, int h, int r) {
    const int k = max_rank();
    if (u > k || v > k || h > u || v < u - h || r < h || r > v + h || r > k) return 0;
    const detail::Key128 key = detail::KeyPacker{}.add(u).add(v).add(h).add(r).key();
    if (auto it = f1_memo_.find(key); it != f1_memo_.end()) return it->second;
    const int dUV = u - h;
    const int dVW = r - h;
    SignedBigCount total = 0;
    for (int dUW = 0; dUW <= std::min(u, r); ++dUW) {
      for (int dUVW = 0; dUVW <= std::min({dUV, dVW, dUW}); ++dUVW) {
        const BigCount count_w = counter_->h(u, v, r, dUV, dUW, dVW, dUVW);
        if (count_w == 0) continue;
        const DimProfile1 d1{u, v, r, dUV, dUW, dVW, dUVW};
        SignedBigCount inner = 0;
        for (int dWp = 0; dWp <= r; ++dWp) {
          for (int dVp = 0; dVp <= v; ++dVp) {
            for (int j = 0; j <= std::min(dWp, dVp); ++j) {
              const BigCount pairs = counter_->c_containing(d1, dVp, dWp, j, m_);
              if (pairs == 0) continue;
              SignedBigCount term = pairs * counter_->pw(detail::choose2(r - dWp) + detail::choose2(v - dVp) +
                                                         static_cast<long long>(n_) * j);
              if ((r - dWp + v - dVp) % 2 == 0) {
                inner += term;
              } else {
                inner -= term;
              }
            }
          }
        }
        total += count_w * inner;
      }
    }
    if (total < 0) throw std::logic_error("negative f1 value");
    BigCount out = total;
    f1_memo_.emplace(key, out);
    return out;
  }

  FieldOrder q_;
  int n_;
  int m_;
  std::unique_ptr<detail::Counter> counter_;
  std::unordered_map<detail::Key128, BigCount, detail::Key128Hash> f1_memo_;
};

inline BigCount f0(int u, int n, int m, const FieldOrder& q) { return MatrixFunctions(q, n, m).f0(u); }
inline BigCount f1(int u, int v, int h, int r, int n, int m, const FieldOrder& q) {
  return MatrixFunctions(q, n, m).f1(u, v, h, r);
}
inline BigCount f2(int r, int rX, int rB, int n, int m, const FieldOrder& q) {
  return MatrixFunctions(q, n, m).f2(r, rX, rB);
}

}  // namespace gamma_channel
