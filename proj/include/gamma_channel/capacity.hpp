#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "channel.hpp"
#include "rank_distribution.hpp"

namespace gamma_channel {

struct SolverConfig {
  double tolerance_bits = 1e-9;
  int max_iterations = 100000;
  std::optional<RankDistribution> start;
  bool record_trace = false;
};

struct CapacityResult {
  RankDistribution optimal_input;
  double capacity_bits = 0.0;
  double gap_bits = 0.0;
  int iterations = 0;
  RankDistribution output_ranks;
  bool converged = false;
  std::vector<double> trace;
};

/// I(X; Y) assembled directly from f2 and h_r: H(Y) from the output rank law,
/// minus sum_r R_X(r) h_r.
inline double objective(const std::vector<double>& input, GammaChannel& channel) {
  const int k = channel.max_rank();
  if (input.size() != static_cast<std::size_t>(k) + 1) throw InputError("input distribution has the wrong length");
  const auto& error = channel.params().error;
  MatrixFunctions& mf = channel.matrix_functions();
  double hy = 0.0;
  for (int r = 0; r <= k; ++r) {
    double ry = 0.0;
    for (int rX = 0; rX <= k; ++rX) {
      const double px = input[static_cast<std::size_t>(rX)];
      if (px == 0.0) continue;
      for (int rB = 0; rB <= k; ++rB) {
        const double pb = error[static_cast<std::size_t>(rB)];
        if (pb == 0.0) continue;
        ry += px * pb * to_double(Rational(mf.f2(r, rX, rB), channel.class_size(rB)));
      }
    }
    if (ry > 0.0) hy -= ry * (std::log2(ry) - log2_big(channel.class_size(r)));
  }
  double hyx = 0.0;
  for (int r = 0; r <= k; ++r) {
    const double px = input[static_cast<std::size_t>(r)];
    if (px != 0.0) hyx += px * channel.h_r(r);
  }
  return hy - hyx;
}

inline double objective(const RankDistribution& input, GammaChannel& channel) {
  return objective(input.values(), channel);
}

/// Partial derivatives of I(X; Y) with respect to R_X(a); +infinity where a
/// reaches an output rank class that currently has zero probability.
inline std::vector<double> gradient(const std::vector<double>& input, GammaChannel& channel) {
  const ChannelKernel& ker = channel.kernel();
  const std::size_t size = ker.h.size();
  if (input.size() != size) throw InputError("input distribution has the wrong length");
  std::vector<double> ry(size, 0.0);
  for (std::size_t a = 0; a < size; ++a)
    for (std::size_t r = 0; r < size; ++r) ry[r] += input[a] * ker.transition[a][r];
  std::vector<double> grad(size);
  for (std::size_t a = 0; a < size; ++a) {
    double g = -ker.h[a];
    for (std::size_t r = 0; r < size; ++r) {
      const double t = ker.transition[a][r];
      if (t == 0.0) continue;
      if (ry[r] <= 0.0) {
        g = std::numeric_limits<double>::infinity();
        break;
      }
      g -= t * (std::log2(ry[r]) - ker.log2_class_size[r] + std::numbers::log2e);
    }
    grad[a] = g;
  }
  return grad;
}

inline std::vector<double> gradient(const RankDistribution& input, GammaChannel& channel) {
  return gradient(input.values(), channel);
}

namespace detail {

// Root of the non-increasing derivative of a concave function on [0, hi],
// found by bisection; returns hi when the derivative stays non-negative.
template <typename D>
double concave_step(D&& derivative, double hi, double tol) {
  if (derivative(hi) >= 0.0) return hi;
  double a = 0.0;
  double b = hi;
  while (b - a > tol) {
    const double mid = (a + b) / 2.0;
    if (derivative(mid) > 0.0) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return (a + b) / 2.0;
}

inline std::size_t argmax_lowest(const std::vector<double>& g) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < g.size(); ++i)
    if (g[i] > g[best]) best = i;
  return best;
}

}  // namespace detail

inline constexpr double kAscentSlack = 1e-13;

/// Capacity of the channel: maximizes I(X; Y) over input rank laws with
/// away-step Frank-Wolfe and exact line search. The Frank-Wolfe gap bounds
/// the distance to the optimum.
inline CapacityResult maximize(GammaChannel& channel, const SolverConfig& config = {}) {
  if (!(config.tolerance_bits > 0.0)) throw InputError("tolerance must be positive");
  if (config.max_iterations < 1) throw InputError("max iterations must be at least 1");
  const std::size_t size = static_cast<std::size_t>(channel.max_rank()) + 1;
  std::vector<double> x;
  if (config.start) {
    if (config.start->size() != size) throw InputError("start distribution has the wrong length");
    x = config.start->values();
  } else {
    x.assign(size, 1.0 / static_cast<double>(size));
  }
  const auto f = [&](const std::vector<double>& p) { return channel.mutual_information(p); };

  double value = f(x);
  double gap = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
  std::vector<double> trace;
  if (config.record_trace) trace.push_back(value);

  std::vector<double> trial(size);
  for (; iterations < config.max_iterations; ++iterations) {
    const std::vector<double> grad = gradient(x, channel);
    const std::size_t s = detail::argmax_lowest(grad);
    double dot = 0.0;
    if (std::isfinite(grad[s])) {
      for (std::size_t a = 0; a < size; ++a)
        if (x[a] > 0.0) dot += x[a] * grad[a];
      gap = std::max(0.0, grad[s] - dot);
      if (gap <= config.tolerance_bits) {
        converged = true;
        break;
      }
    }

    // Away vertex: the worst coordinate still carrying mass.
    std::size_t v = size;
    for (std::size_t a = 0; a < size; ++a)
      if (x[a] > 0.0 && (v == size || grad[a] < grad[v])) v = a;
    const bool away = std::isfinite(grad[s]) && v != size && x[v] < 1.0 && (dot - grad[v]) > (grad[s] - dot);

    std::vector<double> dir(size);
    double hi = 1.0;
    if (away) {
      for (std::size_t a = 0; a < size; ++a) dir[a] = x[a];
      dir[v] -= 1.0;
      hi = x[v] / (1.0 - x[v]);
    } else {
      for (std::size_t a = 0; a < size; ++a) dir[a] = -x[a];
      dir[s] += 1.0;
    }
    const auto point = [&](double gamma) {
      for (std::size_t a = 0; a < size; ++a) trial[a] = std::max(0.0, x[a] + gamma * dir[a]);
      if (away && gamma >= hi) trial[v] = 0.0;
    };
    const auto slope = [&](double gamma) {
      point(gamma);
      const std::vector<double> g = gradient(trial, channel);
      double d = 0.0;
      for (std::size_t a = 0; a < size; ++a) {
        if (dir[a] == 0.0) continue;
        if (!std::isfinite(g[a])) return dir[a] > 0.0 ? 1.0 : -1.0;
        d += dir[a] * g[a];
      }
      return d;
    };

    const double gamma = detail::concave_step(slope, hi, 1e-13 * hi);
    point(gamma);
    const double next = f(trial);
    if (gamma <= 0.0 || next < value - kAscentSlack) {
      // No representable ascent along the chosen direction.
      break;
    }
    x = trial;
    double total = 0.0;
    for (double p : x) total += p;
    for (double& p : x) p /= total;
    value = f(x);
    if (config.record_trace) trace.push_back(value);
  }
  if (!converged && iterations >= config.max_iterations) {
    const std::vector<double> grad = gradient(x, channel);
    const std::size_t s = detail::argmax_lowest(grad);
    double dot = 0.0;
    for (std::size_t a = 0; a < size; ++a)
      if (x[a] > 0.0) dot += x[a] * grad[a];
    gap = std::isfinite(grad[s]) ? std::max(0.0, grad[s] - dot) : std::numeric_limits<double>::infinity();
    converged = gap <= config.tolerance_bits;
  }

  const ChannelKernel& ker = channel.kernel();
  std::vector<double> ry(size, 0.0);
  for (std::size_t a = 0; a < size; ++a)
    for (std::size_t r = 0; r < size; ++r) ry[r] += x[a] * ker.transition[a][r];
  double ry_total = 0.0;
  for (double p : ry) ry_total += p;
  for (double& p : ry) p /= ry_total;

  return CapacityResult{RankDistribution::floating(x), std::max(0.0, value), gap, iterations,
                        RankDistribution::floating(ry), converged, std::move(trace)};
}

}  // namespace gamma_channel
