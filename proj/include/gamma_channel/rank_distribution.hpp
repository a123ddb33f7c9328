#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"

namespace gamma_channel {

/// Probability vector indexed by rank, held either as exact rationals or as doubles.
class RankDistribution {
 public:
  static constexpr double kTolerance = 1e-12;

  static RankDistribution exact(std::vector<Rational> probs) {
    if (probs.empty()) throw InputError("rank distribution must be non-empty");
    Rational sum = 0;
    for (const auto& p : probs) {
      if (p < 0) throw InputError("rank distribution has a negative entry");
      sum += p;
    }
    if (sum != 1) throw InputError("rank distribution does not sum to 1 (sum = " + to_string(sum) + ")");
    RankDistribution d;
    d.values_.reserve(probs.size());
    for (const auto& p : probs) d.values_.push_back(to_double(p));
    d.exact_ = std::move(probs);
    return d;
  }

  static RankDistribution floating(std::vector<double> probs) {
    if (probs.empty()) throw InputError("rank distribution must be non-empty");
    double sum = 0.0;
    for (double p : probs) {
      if (!std::isfinite(p) || p < 0.0) throw InputError("rank distribution has a negative or non-finite entry");
      sum += p;
    }
    if (std::abs(sum - 1.0) > kTolerance) throw InputError("rank distribution does not sum to 1");
    RankDistribution d;
    d.values_ = std::move(probs);
    return d;
  }

  static RankDistribution point_mass(std::size_t size, std::size_t r) {
    if (r >= size) throw InputError("point mass rank out of range");
    std::vector<Rational> p(size, Rational(0));
    p[r] = 1;
    return exact(std::move(p));
  }

  static RankDistribution uniform(std::size_t size) {
    return exact(std::vector<Rational>(size, Rational(1, static_cast<long long>(size))));
  }

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t r) const { return values_.at(r); }
  const std::vector<double>& values() const { return values_; }
  bool is_exact() const { return exact_.has_value(); }

  /// Exact entry; a floating entry is converted to the rational it represents.
  Rational rational(std::size_t r) const {
    if (exact_) return exact_->at(r);
    return rational_from_double(values_.at(r));
  }

  const std::vector<Rational>& rationals() const {
    if (!exact_) throw std::logic_error("rank distribution is not exact");
    return *exact_;
  }

 private:
  RankDistribution() = default;
  std::vector<double> values_;
  std::optional<std::vector<Rational>> exact_;
};

}  // namespace gamma_channel
