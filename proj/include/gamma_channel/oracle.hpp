#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "channel.hpp"
#include "combinatorics.hpp"
#include "core.hpp"
#include "rank_distribution.hpp"

namespace gamma_channel::oracle {

inline constexpr std::uint64_t kChannelBudget = std::uint64_t{1} << 24;
inline constexpr std::uint64_t kTableBudget = std::uint64_t{1} << 20;

/// Matrix over the prime field F_p, stored row-major.
class DenseMatrix {
 public:
  DenseMatrix(int rows, int cols, int p) : rows_(rows), cols_(cols), p_(p), a_(static_cast<std::size_t>(rows * cols), 0) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int modulus() const { return p_; }
  int operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * cols_ + j)]; }
  void set(int i, int j, int v) { a_[static_cast<std::size_t>(i * cols_ + j)] = ((v % p_) + p_) % p_; }
  const std::vector<int>& entries() const { return a_; }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  int rows_;
  int cols_;
  int p_;
  std::vector<int> a_;
};

inline int require_prime(const FieldOrder& q) {
  if (!q.is_prime()) throw BudgetError("oracle supports prime q only, got q=" + std::to_string(q.value()));
  return static_cast<int>(q.value());
}

inline std::uint64_t checked_power(std::uint64_t base, std::uint64_t exp, std::uint64_t budget) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (out > budget / base) return budget + 1;
    out *= base;
  }
  return out;
}

inline int mod_inverse(int a, int p) {
  int result = 1;
  int base = a % p;
  int e = p - 2;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

/// Reduced row echelon form; returns the nonzero rows.
inline DenseMatrix rref(const DenseMatrix& m) {
  const int p = m.modulus();
  std::vector<std::vector<int>> a(static_cast<std::size_t>(m.rows()), std::vector<int>(static_cast<std::size_t>(m.cols())));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int pivot = -1;
    for (int i = row; i < m.rows(); ++i)
      if (a[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)] != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(a[static_cast<std::size_t>(row)], a[static_cast<std::size_t>(pivot)]);
    auto& pr = a[static_cast<std::size_t>(row)];
    const int inv = mod_inverse(pr[static_cast<std::size_t>(col)], p);
    for (int& x : pr) x = x * inv % p;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row) continue;
      auto& r = a[static_cast<std::size_t>(i)];
      const int factor = r[static_cast<std::size_t>(col)];
      if (factor == 0) continue;
      for (int j = 0; j < m.cols(); ++j)
        r[static_cast<std::size_t>(j)] = ((r[static_cast<std::size_t>(j)] - factor * pr[static_cast<std::size_t>(j)]) % p + p) % p;
    }
    ++row;
  }
  DenseMatrix out(row, m.cols(), p);
  for (int i = 0; i < row; ++i)
    for (int j = 0; j < m.cols(); ++j) out.set(i, j, a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  return out;
}

/// Rank over F_q for prime q.
inline int rank_of(const DenseMatrix& m, const FieldOrder& q) {
  if (require_prime(q) != m.modulus()) throw InputError("matrix modulus does not match q");
  return rref(m).rows();
}

inline DenseMatrix decode(std::uint64_t index, int rows, int cols, int p) {
  DenseMatrix m(rows, cols, p);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      m.set(i, j, static_cast<int>(index % static_cast<std::uint64_t>(p)));
      index /= static_cast<std::uint64_t>(p);
    }
  return m;
}

inline std::uint64_t encode(const DenseMatrix& m) {
  std::uint64_t index = 0;
  for (int i = m.rows() - 1; i >= 0; --i)
    for (int j = m.cols() - 1; j >= 0; --j) index = index * static_cast<std::uint64_t>(m.modulus()) + static_cast<std::uint64_t>(m(i, j));
  return index;
}

inline DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
  const int p = a.modulus();
  DenseMatrix out(a.rows(), b.cols(), p);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      int s = 0;
      for (int k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      out.set(i, j, s);
    }
  return out;
}

/// All invertible n x n matrices over F_q, in index order.
inline std::vector<DenseMatrix> enumerate_gl(int n, const FieldOrder& q, std::uint64_t budget = kChannelBudget) {
  const int p = require_prime(q);
  const std::uint64_t total = checked_power(static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(n) * n, budget);
  if (total > budget) throw BudgetError("enumerating GL(" + std::to_string(n) + "," + std::to_string(p) + ") exceeds the budget");
  std::vector<DenseMatrix> out;
  for (std::uint64_t i = 0; i < total; ++i) {
    DenseMatrix a = decode(i, n, n, p);
    if (rank_of(a, q) == n) out.push_back(std::move(a));
  }
  return out;
}

/// All n x m matrices with their rank and canonical rowspace id.
struct MatrixCatalog {
  int n = 0, m = 0, p = 0;
  std::uint64_t size = 0;
  std::vector<int> rank;
  std::vector<int> rowspace;
  std::vector<DenseMatrix> subspaces;  // canonical bases, indexed by rowspace id

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t out = 0;
    std::uint64_t scale = 1;
    for (int i = 0; i < n * m; ++i) {
      const auto da = a % static_cast<std::uint64_t>(p);
      const auto db = b % static_cast<std::uint64_t>(p);
      out += ((da + db) % static_cast<std::uint64_t>(p)) * scale;
      scale *= static_cast<std::uint64_t>(p);
      a /= static_cast<std::uint64_t>(p);
      b /= static_cast<std::uint64_t>(p);
    }
    return out;
  }
};

inline MatrixCatalog catalog(int n, int m, const FieldOrder& q, std::uint64_t budget) {
  const int p = require_prime(q);
  MatrixCatalog c;
  c.n = n;
  c.m = m;
  c.p = p;
  c.size = checked_power(static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(n) * m, budget);
  if (c.size > budget) throw BudgetError("enumerating F_q^{n x m} exceeds the budget");
  std::map<std::vector<int>, int> ids;
  c.rank.resize(c.size);
  c.rowspace.resize(c.size);
  for (std::uint64_t i = 0; i < c.size; ++i) {
    const DenseMatrix basis = rref(decode(i, n, m, p));
    c.rank[i] = basis.rows();
    auto [it, inserted] = ids.emplace(basis.entries(), static_cast<int>(c.subspaces.size()));
    if (inserted) c.subspaces.push_back(basis);
    c.rowspace[i] = it->second;
  }
  return c;
}

inline int sum_dimension(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix stacked(a.rows() + b.rows(), a.cols(), a.modulus());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) stacked.set(i, j, a(i, j));
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) stacked.set(a.rows() + i, j, b(i, j));
  return rref(stacked).rows();
}

/// Enumerated values of f0, f1 and f2 plus the outcome of the well-definedness checks.
struct FTables {
  std::map<int, BigCount> f0;                       // u
  std::map<std::array<int, 4>, BigCount> f1;        // (u, v, h, r), h = dim((U+V)/V)
  std::map<std::array<int, 3>, BigCount> f2;        // (r, rX, rB)
  bool well_defined = true;
  std::vector<std::string> conflicts;
};

inline void record(FTables& t, auto& table, const auto& key, const BigCount& value, const std::string& what) {
  auto [it, inserted] = table.emplace(key, value);
  if (!inserted && it->second != value) {
    t.well_defined = false;
    t.conflicts.push_back(what);
  }
}

/// f0, f1 and f2 by direct enumeration. Every rowspace U is tried with two
/// different matrices M (and every rank with two matrices X); all
/// representatives of a class must agree.
inline FTables brute_f_functions(int n, int m, const FieldOrder& q, std::uint64_t budget = kTableBudget) {
  const MatrixCatalog cat = catalog(n, m, q, budget);
  FTables out;
  const auto nsub = cat.subspaces.size();

  std::vector<std::uint64_t> per_space(nsub, 0);
  for (std::uint64_t i = 0; i < cat.size; ++i) ++per_space[static_cast<std::size_t>(cat.rowspace[i])];
  for (std::size_t s = 0; s < nsub; ++s) record(out, out.f0, cat.subspaces[s].rows(), BigCount(per_space[s]), "f0");

  std::vector<std::vector<std::uint64_t>> reps(nsub);
  for (std::uint64_t i = 0; i < cat.size; ++i) {
    auto& r = reps[static_cast<std::size_t>(cat.rowspace[i])];
    if (r.size() < 2) {
      r.push_back(i);
    } else {
      r[1] = i;
    }
  }
  std::vector<std::vector<int>> sum_dims(nsub, std::vector<int>(nsub));
  for (std::size_t a = 0; a < nsub; ++a)
    for (std::size_t b = 0; b < nsub; ++b) sum_dims[a][b] = sum_dimension(cat.subspaces[a], cat.subspaces[b]);

  const int k = std::min(n, m);
  for (std::size_t us = 0; us < nsub; ++us) {
    const int u = cat.subspaces[us].rows();
    for (std::uint64_t mi : reps[us]) {
      std::vector<std::vector<std::uint64_t>> counts(nsub, std::vector<std::uint64_t>(static_cast<std::size_t>(k) + 1, 0));
      for (std::uint64_t b = 0; b < cat.size; ++b)
        ++counts[static_cast<std::size_t>(cat.rowspace[cat.add(mi, b)])][static_cast<std::size_t>(cat.rank[b])];
      for (std::size_t vs = 0; vs < nsub; ++vs) {
        const int v = cat.subspaces[vs].rows();
        const int h = sum_dims[us][vs] - v;
        for (int r = 0; r <= k; ++r)
          record(out, out.f1, std::array<int, 4>{u, v, h, r}, BigCount(counts[vs][static_cast<std::size_t>(r)]), "f1");
      }
    }
  }

  for (int rX = 0; rX <= k; ++rX) {
    std::vector<std::uint64_t> xs;
    for (std::uint64_t i = 0; i < cat.size; ++i)
      if (cat.rank[i] == rX) {
        if (xs.size() < 2) {
          xs.push_back(i);
        } else {
          xs[1] = i;
        }
      }
    for (std::uint64_t x : xs) {
      std::vector<std::vector<std::uint64_t>> counts(static_cast<std::size_t>(k) + 1, std::vector<std::uint64_t>(static_cast<std::size_t>(k) + 1, 0));
      for (std::uint64_t b = 0; b < cat.size; ++b)
        ++counts[static_cast<std::size_t>(cat.rank[cat.add(x, b)])][static_cast<std::size_t>(cat.rank[b])];
      for (int r = 0; r <= k; ++r)
        for (int rB = 0; rB <= k; ++rB)
          record(out, out.f2, std::array<int, 3>{r, rX, rB},
                 BigCount(counts[static_cast<std::size_t>(r)][static_cast<std::size_t>(rB)]), "f2");
    }
  }
  return out;
}

/// Full channel law P(Y | X) over all n x m matrices, as exact rationals.
struct TransitionTable {
  int n = 0, m = 0, p = 0;
  std::vector<int> rank;                   // rank of each matrix index
  std::vector<std::vector<Rational>> prob;  // [input index][output index]

  std::size_t size() const { return prob.size(); }
};

inline std::uint64_t channel_terms(const ChannelParams& params) {
  const auto p = static_cast<std::uint64_t>(params.q.value());
  const std::uint64_t cap = std::numeric_limits<std::uint64_t>::max() / 4;
  const std::uint64_t all = checked_power(p, static_cast<std::uint64_t>(params.n) * params.m, cap);
  const std::uint64_t square = checked_power(p, static_cast<std::uint64_t>(params.n) * params.n, cap);
  if (all > cap / all || all * all > cap / std::max<std::uint64_t>(square, 1)) return cap;
  return square * all * all;
}

/// P(Y | X) for the Gamma channel by enumerating all A in GL(n, q) and all B.
inline TransitionTable build_channel(const ChannelParams& params, std::uint64_t budget = kChannelBudget) {
  const int p = require_prime(params.q);
  const std::uint64_t terms = channel_terms(params);
  if (terms > budget)
    throw BudgetError("channel enumeration needs " + std::to_string(terms) + " terms, budget is " + std::to_string(budget));
  const int n = params.n;
  const int m = params.m;
  const int k = params.max_rank();
  std::vector<Rational> err;
  Rational err_total = 0;
  for (int r = 0; r <= k; ++r) {
    err.push_back(params.error.rational(static_cast<std::size_t>(r)));
    err_total += err.back();
  }
  if (err_total != 1) throw InputError("oracle needs an error distribution summing exactly to 1");

  const MatrixCatalog cat = catalog(n, m, params.q, budget);
  const std::vector<DenseMatrix> gl = enumerate_gl(n, params.q, budget);
  const std::size_t size = cat.size;
  std::vector<DenseMatrix> mats;
  mats.reserve(size);
  for (std::uint64_t i = 0; i < size; ++i) mats.push_back(decode(i, n, m, p));
  std::vector<std::vector<std::uint32_t>> times(gl.size(), std::vector<std::uint32_t>(size));
  for (std::size_t a = 0; a < gl.size(); ++a)
    for (std::size_t y = 0; y < size; ++y) times[a][y] = static_cast<std::uint32_t>(encode(multiply(gl[a], mats[y])));

  std::vector<Rational> weight;
  for (int r = 0; r <= k; ++r)
    weight.push_back(err[static_cast<std::size_t>(r)] / Rational(count_rank_matrices(n, m, r, params.q) * gl.size()));

  TransitionTable table;
  table.n = n;
  table.m = m;
  table.p = p;
  table.rank = cat.rank;
  table.prob.assign(size, std::vector<Rational>(size, Rational(0)));
  std::vector<std::vector<std::uint64_t>> counts(static_cast<std::size_t>(k) + 1, std::vector<std::uint64_t>(size));
  for (std::size_t x = 0; x < size; ++x) {
    for (auto& c : counts) std::fill(c.begin(), c.end(), 0);
    for (std::size_t b = 0; b < size; ++b) {
      const auto rb = static_cast<std::size_t>(cat.rank[b]);
      if (err[rb] == 0) continue;
      const std::uint64_t y0 = cat.add(x, b);
      for (std::size_t a = 0; a < gl.size(); ++a) ++counts[rb][times[a][y0]];
    }
    for (std::size_t y = 0; y < size; ++y) {
      Rational total = 0;
      for (int r = 0; r <= k; ++r)
        if (counts[static_cast<std::size_t>(r)][y] != 0) total += weight[static_cast<std::size_t>(r)] * counts[static_cast<std::size_t>(r)][y];
      table.prob[x][y] = total;
    }
  }
  return table;
}

/// Entropy in bits of row x of the table.
inline double row_entropy(const TransitionTable& table, std::size_t x) {
  double h = 0.0;
  for (const auto& pr : table.prob.at(x))
    if (pr != 0) h -= to_double(pr) * log2_rational(pr);
  return h;
}

/// Rank law of Y when X is uniform given rank with rank law input.
inline std::vector<Rational> output_rank_law(const TransitionTable& table, const RankDistribution& input) {
  const int k = std::min(table.n, table.m);
  std::vector<std::uint64_t> class_size(static_cast<std::size_t>(k) + 1, 0);
  for (int r : table.rank) ++class_size[static_cast<std::size_t>(r)];
  std::vector<Rational> out(static_cast<std::size_t>(k) + 1, Rational(0));
  for (std::size_t x = 0; x < table.size(); ++x) {
    const auto rx = static_cast<std::size_t>(table.rank[x]);
    const Rational px = input.rational(rx) / Rational(class_size[rx]);
    if (px == 0) continue;
    for (std::size_t y = 0; y < table.size(); ++y)
      if (table.prob[x][y] != 0) out[static_cast<std::size_t>(table.rank[y])] += px * table.prob[x][y];
  }
  return out;
}

/// Mutual information in bits for an input distribution over all matrices.
inline double mutual_information(const std::vector<std::vector<double>>& channel, const std::vector<double>& input) {
  const std::size_t ny = channel.empty() ? 0 : channel[0].size();
  std::vector<double> qy(ny, 0.0);
  for (std::size_t x = 0; x < channel.size(); ++x)
    for (std::size_t y = 0; y < ny; ++y) qy[y] += input[x] * channel[x][y];
  double info = 0.0;
  for (std::size_t x = 0; x < channel.size(); ++x) {
    if (input[x] == 0.0) continue;
    for (std::size_t y = 0; y < ny; ++y) {
      const double w = channel[x][y];
      if (w > 0.0) info += input[x] * w * std::log2(w / qy[y]);
    }
  }
  return info;
}

struct BlahutArimotoResult {
  double capacity_bits = 0.0;
  double lower_bits = 0.0;
  double upper_bits = 0.0;
  std::vector<double> input;
  int iterations = 0;
};

/// Classical Blahut-Arimoto on a row-stochastic matrix until the upper and
/// lower capacity bounds differ by at most tol bits.
inline BlahutArimotoResult blahut_arimoto(const std::vector<std::vector<double>>& channel, double tol,
                                          int max_iterations = 10000000) {
  const std::size_t nx = channel.size();
  if (nx == 0) throw InputError("empty channel");
  const std::size_t ny = channel[0].size();
  std::vector<double> r(nx, 1.0 / static_cast<double>(nx));
  std::vector<double> qy(ny);
  std::vector<double> d(nx);
  BlahutArimotoResult res;
  for (int it = 0; it < max_iterations; ++it) {
    std::fill(qy.begin(), qy.end(), 0.0);
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t y = 0; y < ny; ++y) qy[y] += r[x] * channel[x][y];
    double upper = -std::numeric_limits<double>::infinity();
    double z = 0.0;
    for (std::size_t x = 0; x < nx; ++x) {
      double dx = 0.0;
      for (std::size_t y = 0; y < ny; ++y) {
        const double w = channel[x][y];
        if (w > 0.0) dx += w * std::log2(w / qy[y]);
      }
      d[x] = dx;
      upper = std::max(upper, dx);
      z += r[x] * std::exp2(dx);
    }
    const double lower = std::log2(z);
    res.lower_bits = lower;
    res.upper_bits = upper;
    res.iterations = it;
    if (upper - lower <= tol) break;
    for (std::size_t x = 0; x < nx; ++x) r[x] = r[x] * std::exp2(d[x]) / z;
  }
  res.capacity_bits = (res.lower_bits + res.upper_bits) / 2.0;
  res.input = r;
  return res;
}

inline std::vector<std::vector<double>> to_double_matrix(const TransitionTable& table) {
  std::vector<std::vector<double>> out(table.size(), std::vector<double>(table.size()));
  for (std::size_t x = 0; x < table.size(); ++x)
    for (std::size_t y = 0; y < table.size(); ++y) out[x][y] = to_double(table.prob[x][y]);
  return out;
}

inline BlahutArimotoResult blahut_arimoto(const TransitionTable& table, double tol) {
  return blahut_arimoto(to_double_matrix(table), tol);
}

}  // namespace gamma_channel::oracle
