#pragma once

#include <cmath>
#include <memory>
#include <optional>
#include <vector>

#include "combinatorics.hpp"
#include "core.hpp"
#include "matrix_functions.hpp"
#include "rank_distribution.hpp"

namespace gamma_channel {

/// Field order, matrix shape and error rank distribution of a Gamma channel.
struct ChannelParams {
  FieldOrder q;
  int n;
  int m;
  RankDistribution error;

  ChannelParams(FieldOrder q_, int n_, int m_, RankDistribution error_)
      : q(q_), n(n_), m(m_), error(std::move(error_)) {
    check_dim(n, "n");
    check_dim(m, "m");
    if (n < 1 || m < 1) throw InputError("n and m must be at least 1");
    if (error.size() != static_cast<std::size_t>(max_rank()) + 1)
      throw InputError("error distribution must have min(n, m) + 1 entries");
  }

  int max_rank() const { return std::min(n, m); }
};

/// Rank-level quantities needed by the optimizer, in floating point.
struct ChannelKernel {
  std::vector<std::vector<double>> transition;  // [input rank][output rank]
  std::vector<double> h;                        // h_r in bits
  std::vector<double> log2_class_size;          // log2 N_r
};

namespace detail {
inline double xlog2x_ratio(double p, double log2_denominator) {
  return p > 0.0 ? p * (std::log2(p) - log2_denominator) : 0.0;
}
}  // namespace detail

/// Gamma channel Y = A(X + B) evaluated through the rank-level formulas.
/// Results are cached per instance; not thread-safe.
class GammaChannel {
 public:
  explicit GammaChannel(ChannelParams params)
      : params_(std::move(params)), mf_(std::make_unique<MatrixFunctions>(params_.q, params_.n, params_.m)) {
    const int k = params_.max_rank();
    for (int r = 0; r <= k; ++r) class_size_.push_back(count_rank_matrices(params_.n, params_.m, r, params_.q));
    for (int r = 0; r <= k; ++r) error_.push_back(params_.error.rational(static_cast<std::size_t>(r)));
    h_cache_.resize(static_cast<std::size_t>(k) + 1);
    rho_cache_.resize(static_cast<std::size_t>(k + 1) * static_cast<std::size_t>(k + 1));
  }

  const ChannelParams& params() const { return params_; }
  int max_rank() const { return params_.max_rank(); }
  MatrixFunctions& matrix_functions() { return *mf_; }
  const BigCount& class_size(int r) const { return class_size_.at(static_cast<std::size_t>(r)); }

  /// P(rank Y' = r | rank X = rX, rank B = rB) for Y' = X + B, as an exact rational.
  Rational rho_given_ranks(int r, int rX, int rB) {
    check_rank(r);
    check_rank(rX);
    check_rank(rB);
    return Rational(mf_->f2(r, rX, rB), class_size(rB));
  }

  /// rho_given_ranks averaged over the error rank distribution.
  Rational rho_avg(int r, int rX) {
    check_rank(r);
    check_rank(rX);
    auto& cached = rho_cache_[static_cast<std::size_t>(rX * (max_rank() + 1) + r)];
    if (cached) return *cached;
    Rational total = 0;
    for (int rB = 0; rB <= max_rank(); ++rB) {
      if (error_[static_cast<std::size_t>(rB)] == 0) continue;
      total += error_[static_cast<std::size_t>(rB)] * rho_given_ranks(r, rX, rB);
    }
    cached = total;
    return total;
  }

  /// Output rank distribution for a UGR input with the given rank law.
  RankDistribution output_rank_distribution(const RankDistribution& input) {
    check_input(input);
    const int k = max_rank();
    std::vector<Rational> out(static_cast<std::size_t>(k) + 1, Rational(0));
    for (int rX = 0; rX <= k; ++rX) {
      const Rational px = input.rational(static_cast<std::size_t>(rX));
      if (px == 0) continue;
      for (int r = 0; r <= k; ++r) out[static_cast<std::size_t>(r)] += px * rho_avg(r, rX);
    }
    if (input.is_exact() && params_.error.is_exact()) return RankDistribution::exact(std::move(out));
    std::vector<double> f;
    for (const auto& x : out) f.push_back(to_double(x));
    return RankDistribution::floating(std::move(f));
  }

  /// Entropy in bits of A(M + B) for a fixed M of rank r.
  double h_r(int r) {
    check_rank(r);
    if (auto& cached = h_cache_[static_cast<std::size_t>(r)]; cached) return *cached;
    const int k = max_rank();
    const int m = params_.m;
    auto& ctr = mf_->counter();
    double total = 0.0;
    for (int v = 0; v <= k; ++v) {
      const double log2_f0 = log2_big(mf_->f0(v));
      for (int h = 0; h <= r; ++h) {
        const int extra = v - r + h;
        if (extra < 0) continue;
        const BigCount weight = ctr.pw(static_cast<long long>(extra) * h) * ctr.qb(m - r, extra) * ctr.qb(r, r - h);
        if (weight == 0) continue;
        Rational p = 0;
        for (int rB = h; rB <= std::min(k, v + h); ++rB) {
          const Rational& pe = error_[static_cast<std::size_t>(rB)];
          if (pe == 0) continue;
          const BigCount c = mf_->f1(r, v, h, rB);
          if (c == 0) continue;
          p += pe * Rational(c, class_size(rB));
        }
        if (p == 0) continue;
        total += to_double(Rational(weight) * p) * (log2_f0 - log2_rational(p));
      }
    }
    h_cache_[static_cast<std::size_t>(r)] = total;
    return total;
  }

  /// H(Y | X) for a UGR input with the given rank law.
  double conditional_entropy(const RankDistribution& input) {
    check_input(input);
    double total = 0.0;
    for (int r = 0; r <= max_rank(); ++r) {
      if (input[static_cast<std::size_t>(r)] == 0.0) continue;
      total += input[static_cast<std::size_t>(r)] * h_r(r);
    }
    return total;
  }

  /// H(Y) for a UGR input with the given rank law.
  double output_entropy(const RankDistribution& input) {
    const RankDistribution out = output_rank_distribution(input);
    double total = 0.0;
    for (int r = 0; r <= max_rank(); ++r) {
      const auto i = static_cast<std::size_t>(r);
      if (out.is_exact()) {
        const Rational& p = out.rationals()[i];
        if (p == 0) continue;
        total -= to_double(p) * (log2_rational(p) - log2_big(class_size(r)));
      } else {
        total -= detail::xlog2x_ratio(out[i], log2_big(class_size(r)));
      }
    }
    return total;
  }

  /// I(X; Y) in bits for a UGR input with the given rank law.
  double mutual_information(const RankDistribution& input) {
    return output_entropy(input) - conditional_entropy(input);
  }

  /// Floating-point kernel shared by the optimizer; computed once.
  const ChannelKernel& kernel() {
    if (kernel_) return *kernel_;
    const int k = max_rank();
    ChannelKernel ker;
    ker.transition.assign(static_cast<std::size_t>(k) + 1, std::vector<double>(static_cast<std::size_t>(k) + 1, 0.0));
    for (int a = 0; a <= k; ++a)
      for (int r = 0; r <= k; ++r)
        ker.transition[static_cast<std::size_t>(a)][static_cast<std::size_t>(r)] = to_double(rho_avg(r, a));
    for (int r = 0; r <= k; ++r) {
      ker.h.push_back(h_r(r));
      ker.log2_class_size.push_back(log2_big(class_size(r)));
    }
    kernel_ = std::move(ker);
    return *kernel_;
  }

  /// I(X; Y) from the floating kernel, for an arbitrary point of the simplex.
  double mutual_information(const std::vector<double>& input) {
    const ChannelKernel& ker = kernel();
    const std::size_t size = ker.h.size();
    if (input.size() != size) throw InputError("input distribution has the wrong length");
    double info = 0.0;
    for (std::size_t r = 0; r < size; ++r) {
      double ry = 0.0;
      for (std::size_t a = 0; a < size; ++a) ry += input[a] * ker.transition[a][r];
      info -= detail::xlog2x_ratio(ry, ker.log2_class_size[r]);
      info -= input[r] * ker.h[r];
    }
    return info;
  }

 private:
  void check_rank(int r) const {
    if (r < 0) throw InputError("negative rank");
    if (r > max_rank()) throw InputError("rank exceeds min(n, m)");
  }

  void check_input(const RankDistribution& input) const {
    if (input.size() != static_cast<std::size_t>(max_rank()) + 1)
      throw InputError("input distribution must have min(n, m) + 1 entries");
  }

  ChannelParams params_;
  std::unique_ptr<MatrixFunctions> mf_;
  std::vector<BigCount> class_size_;
  std::vector<Rational> error_;
  std::vector<std::optional<double>> h_cache_;
  std::vector<std::optional<Rational>> rho_cache_;
  std::optional<ChannelKernel> kernel_;
};

}  // namespace gamma_channel
