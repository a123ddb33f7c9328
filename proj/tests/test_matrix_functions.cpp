#include <gtest/gtest.h>

#include <array>
#include <map>

#include "brute.hpp"
#include "gamma_channel/matrix_functions.hpp"
#include "gamma_channel/oracle.hpp"

using namespace gamma_channel;
using brute::DenseMatrix;

TEST(SmallCounts, Examples) {
  const FieldOrder two(2);
  EXPECT_EQ(f_small(3, 2, 0, two), 1);
  EXPECT_EQ(f_small(1, 1, 1, two), 1);
  EXPECT_EQ(f_small(2, 1, 2, two), 0);
  EXPECT_EQ(g_count(3, 2, 2, 2, 0, two), qbinom(3, 2, two));
  EXPECT_EQ(g_count(1, 1, 1, 0, 0, two), 1);
  EXPECT_EQ(g_count(1, 1, 2, 1, 1, two), 1);
  EXPECT_EQ(h_count(2, 2, 1, 0, 0, 0, 0, two), g_count(2, 2, 1, 0, 0, two));
  EXPECT_EQ(h_count(1, 1, 1, 1, 1, 1, 1, FieldOrder(3)), 1);
  EXPECT_EQ(h_count(1, 1, 1, 0, 0, 0, 0, two), 1);
  EXPECT_EQ(l_count(3, 1, 1, 0, 0, 0, 0, 0, two), 1);
  EXPECT_EQ(l_count(2, 1, 1, 1, 0, 0, 0, 0, two), 1);
  EXPECT_THROW(l_count(2, -1, 1, 1, 0, 0, 0, 0, two), InputError);
}

TEST(SmallCounts, LPartitionsAllSubspaces) {
  for (int q : {2, 3}) {
    const FieldOrder fq(q);
    for (int m = 0; m <= 5; ++m)
      for (int dU = 0; dU <= m; ++dU)
        for (int dV = 0; dV <= m; ++dV)
          for (int dUV = 0; dUV <= std::min(dU, dV); ++dUV) {
            if (dU + dV - dUV > m) continue;
            for (int dW = 0; dW <= m; ++dW) {
              BigCount total = 0;
              for (int a = 0; a <= dW; ++a)
                for (int b = 0; b <= dW; ++b)
                  for (int c = 0; c <= std::min(a, b); ++c) total += l_count(m, dU, dV, dW, dUV, a, b, c, fq);
              EXPECT_EQ(total, qbinom(m, dW, fq)) << q << m << dU << dV << dUV << dW;
            }
          }
  }
}

// Tallies subspaces W of F_q^m by (dW, dUW, dVW, dUVW) for every pair (U, V).
TEST(SmallCounts, MatchEnumeration) {
  for (auto [q, m] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}}) {
    const FieldOrder fq(q);
    const auto all = brute::subspaces(m, fq);
    std::map<std::array<int, 3>, int> seen;
    for (const auto& u : all)
      for (const auto& v : all) {
        const std::array<int, 3> cls{brute::dim(u), brute::dim(v), brute::meet_dim(u, v)};
        if (seen[cls]++ > 0) continue;
        const DenseMatrix uv = brute::meet(u, v, all);
        const DenseMatrix sum_uv = brute::sum(u, v);
        std::map<std::array<int, 4>, int> everywhere;
        std::map<std::array<int, 4>, int> inside;
        for (const auto& w : all) {
          const std::array<int, 4> key{brute::dim(w), brute::meet_dim(u, w), brute::meet_dim(v, w), brute::meet_dim(uv, w)};
          ++everywhere[key];
          if (brute::contains(sum_uv, w)) ++inside[key];
        }
        const auto [dU, dV, dUV] = cls;
        for (int dW = 0; dW <= m; ++dW)
          for (int a = 0; a <= m; ++a)
            for (int b = 0; b <= m; ++b)
              for (int c = 0; c <= m; ++c) {
                const std::array<int, 4> key{dW, a, b, c};
                const int e = everywhere.count(key) ? everywhere[key] : 0;
                const int i = inside.count(key) ? inside[key] : 0;
                EXPECT_EQ(l_count(m, dU, dV, dW, dUV, a, b, c, fq), e) << q << m << dU << dV << dUV << dW << a << b << c;
                EXPECT_EQ(h_count(dU, dV, dW, dUV, a, b, c, fq), i) << q << m << dU << dV << dUV << dW << a << b << c;
                if (dUV == 0 && c == 0) {
                  EXPECT_EQ(g_count(dU, dV, dW, a, b, fq), i);
                  if (a == 0 && b == 0) {
                    EXPECT_EQ(f_small(dU, dV, dW, fq), i);
                  }
                }
              }
      }
  }
}

TEST(Bdp, Examples) {
  EXPECT_TRUE(bdp_check(DimProfile1{}, DimProfile2{}, 0));
  EXPECT_FALSE(bdp_check(DimProfile1{2, 2, 2, 1, 1, 1, 2}, DimProfile2{}, 4));
  DimProfile2 d2;
  d2.dVpWp = 1;
  EXPECT_FALSE(bdp_check(DimProfile1{2, 2, 2, 1, 1, 1, 1}, d2, 4));
}

TEST(Bdp, ThreeLinesInAPlaneAreAdmissible) {
  // U, V, W distinct lines of a plane: dU + dV + dW - dUV - dUW - dVW + dUVW = 3 > 2 = m.
  const DimProfile1 d1{1, 1, 1, 0, 0, 0, 0};
  EXPECT_TRUE(bdp_check(d1, DimProfile2{}, 2));
  EXPECT_GT(c_count(d1, DimProfile2{1, 1, 0, 0, 0, 0, 0, 0, 0, 0}, 2, FieldOrder(2)), 0);
}

namespace {

using Profile2 = std::array<int, 10>;

struct Triple {
  DenseMatrix u, v, w;
};

DimProfile2 to_profile(const Profile2& a) {
  return DimProfile2{a[0], a[1], a[2], a[3], a[4], a[5], a[6], a[7], a[8], a[9]};
}

std::map<Profile2, int> tally_pairs(const Triple& t, const std::vector<DenseMatrix>& all) {
  const DenseMatrix uv = brute::meet(t.u, t.v, all);
  const DenseMatrix uw = brute::meet(t.u, t.w, all);
  std::map<Profile2, int> out;
  for (const auto& vp : all) {
    if (!brute::contains(t.v, vp)) continue;
    const DenseMatrix u_plus_vp = brute::sum(t.u, vp);
    for (const auto& wp : all) {
      if (!brute::contains(t.w, wp)) continue;
      if (!(brute::sum(wp, vp) == u_plus_vp)) continue;
      const DenseMatrix uvp = brute::meet(t.u, vp, all);
      ++out[Profile2{brute::dim(vp), brute::dim(wp), brute::dim(uvp), brute::meet_dim(t.u, wp),
                     brute::meet_dim(t.v, wp), brute::meet_dim(t.w, vp), brute::meet_dim(vp, wp),
                     brute::meet_dim(uv, wp), brute::meet_dim(uw, vp), brute::meet_dim(uvp, wp)}];
    }
  }
  return out;
}

// Representatives (up to two) of every profile d1 realized with W + V = U + V.
std::map<std::array<int, 7>, std::vector<Triple>> configurations(const std::vector<DenseMatrix>& all) {
  std::map<std::array<int, 7>, std::vector<Triple>> out;
  for (const auto& u : all)
    for (const auto& v : all) {
      const DenseMatrix sum_uv = brute::sum(u, v);
      const DenseMatrix uv = brute::meet(u, v, all);
      for (const auto& w : all) {
        if (!(brute::sum(w, v) == sum_uv)) continue;
        const std::array<int, 7> d1{brute::dim(u), brute::dim(v), brute::dim(w), brute::dim(uv),
                                    brute::meet_dim(u, w), brute::meet_dim(v, w), brute::meet_dim(uv, w)};
        auto& reps = out[d1];
        if (reps.size() < 2) reps.push_back(Triple{u, v, w});
      }
    }
  return out;
}

}  // namespace

// c and c' against exhaustive pair enumeration, including every zero of the BDP grid.
TEST(PairCounts, MatchEnumeration) {
  for (auto [q, m] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {2, 3}, {3, 2}, {5, 2}}) {
    const FieldOrder fq(q);
    const auto all = brute::subspaces(m, fq);
    detail::Counter counter(q);
    for (const auto& [key, reps] : configurations(all)) {
      const DimProfile1 d1{key[0], key[1], key[2], key[3], key[4], key[5], key[6]};
      const auto tally = tally_pairs(reps.front(), all);
      if (reps.size() > 1) {
        EXPECT_EQ(tally, tally_pairs(reps.back(), all)) << "pair count depends on the representative";
      }
      std::size_t visited = 0;
      for (int dVp = 0; dVp <= d1.dV; ++dVp)
        for (int dWp = 0; dWp <= d1.dW; ++dWp)
          for (int x = 0; x <= std::min(dVp, dWp); ++x) {
            BigCount brute_prime = 0;
            for (int i = 0; i <= std::min(d1.dUV, dVp); ++i)
              for (int j = 0; j <= std::min(d1.dUW, dWp); ++j)
                for (int k = 0; k <= std::min(d1.dVW, dWp); ++k)
                  for (int p = 0; p <= std::min(d1.dVW, dVp); ++p)
                    for (int qq = 0; qq <= std::min({d1.dUVW, j, k}); ++qq)
                      for (int s = 0; s <= std::min({d1.dUVW, i, p}); ++s)
                        for (int t = 0; t <= std::min({qq, s, x}); ++t) {
                          const Profile2 d2{dVp, dWp, i, j, k, p, x, qq, s, t};
                          const auto it = tally.find(d2);
                          const int expected = it == tally.end() ? 0 : it->second;
                          visited += it != tally.end();
                          brute_prime += expected;
                          EXPECT_EQ(counter.c(d1, to_profile(d2), m), expected) << q << " m=" << m;
                        }
            EXPECT_EQ(c_prime(d1, dVp, dWp, x, m, fq), brute_prime);
          }
      EXPECT_EQ(visited, tally.size()) << "a realized profile lies outside the summation ranges";
    }
  }
}

TEST(PairCounts, ZeroOnProfilesWithoutWPlusVEqualUPlusV) {
  // dU = 1, dV = 0, dW = 0: W + V = 0 cannot equal U + V.
  EXPECT_EQ(c_count(DimProfile1{1, 0, 0, 0, 0, 0, 0}, DimProfile2{0, 1, 0, 1, 0, 0, 0, 0, 0, 0}, 2, FieldOrder(2)), 0);
}

TEST(PairCounts, SpecExamples) {
  const FieldOrder two(2);
  EXPECT_EQ(c_count(DimProfile1{0, 2, 1, 0, 0, 1, 0}, DimProfile2{}, 3, two), 1);
  EXPECT_EQ(c_prime(DimProfile1{0, 1, 1, 0, 0, 1, 0}, 0, 0, 0, 2, two), 1);
  EXPECT_EQ(c_prime(DimProfile1{1, 1, 1, 1, 1, 1, 1}, 2, 1, 0, 2, two), 0);
  // U = V = W = F_2^2 with two lines: W' + V' is a line, never the whole plane.
  EXPECT_EQ(c_prime(DimProfile1{2, 2, 2, 2, 2, 2, 2}, 1, 1, 1, 2, two), 0);
}

TEST(PairCounts, TightRangesEqualFullRanges) {
  const FieldOrder two(2);
  const int m = 2;
  detail::Counter counter(2);
  for (const auto& d1 : {DimProfile1{1, 1, 1, 0, 0, 0, 0}, DimProfile1{1, 2, 1, 1, 0, 1, 0}, DimProfile1{2, 2, 2, 2, 2, 2, 2},
                         DimProfile1{1, 1, 1, 1, 1, 1, 1}})
    for (int dVp = 0; dVp <= m; ++dVp)
      for (int dWp = 0; dWp <= m; ++dWp)
        for (int x = 0; x <= m; ++x) {
          BigCount full = 0;
          for (int i = 0; i <= m; ++i)
            for (int j = 0; j <= m; ++j)
              for (int k = 0; k <= m; ++k)
                for (int p = 0; p <= m; ++p)
                  for (int qq = 0; qq <= m; ++qq)
                    for (int s = 0; s <= m; ++s)
                      for (int t = 0; t <= m; ++t) full += counter.c(d1, DimProfile2{dVp, dWp, i, j, k, p, x, qq, s, t}, m);
          EXPECT_EQ(c_prime(d1, dVp, dWp, x, m, two), full);
        }
}

TEST(F0, Examples) {
  MatrixFunctions mf(FieldOrder(2), 2, 2);
  EXPECT_EQ(mf.f0(0), 1);
  EXPECT_EQ(mf.f0(1), 3);
  EXPECT_EQ(mf.f0(2), 6);
  EXPECT_THROW(mf.f0(3), InputError);
}

TEST(F0, DualFormulaIdentity) {
  for (int q : {2, 3, 4, 5})
    for (int n = 1; n <= 8; ++n)
      for (int m = 1; m <= 8; ++m) {
        MatrixFunctions mf(FieldOrder(q), n, m);
        for (int u = 0; u <= std::min(n, m); ++u) EXPECT_EQ(mf.f0(u), mf.f0_product(u));
      }
}

TEST(F0, RowspacePartition) {
  for (int q : {2, 3, 4, 5})
    for (int n = 1; n <= 6; ++n)
      for (int m = 1; m <= 6; ++m) {
        MatrixFunctions mf(FieldOrder(q), n, m);
        BigCount total = 0;
        for (int u = 0; u <= std::min(n, m); ++u) total += qbinom(m, u, FieldOrder(q)) * mf.f0(u);
        EXPECT_EQ(total, ipow(q, n * m));
      }
}

TEST(F1, Examples) {
  MatrixFunctions mf(FieldOrder(2), 2, 2);
  for (int u = 0; u <= 2; ++u) EXPECT_EQ(mf.f1(u, u, 0, 0), 1);
  EXPECT_EQ(mf.f1(1, 1, 1, 0), 0);
  // Two distinct lines U, V of F_2^2: rank-1 B with row(M + B) = V.
  const auto tab = oracle::brute_f_functions(2, 2, FieldOrder(2));
  EXPECT_EQ(mf.f1(1, 1, 1, 1), tab.f1.at({1, 1, 1, 1}));
}

TEST(F1, ZeroRegion) {
  for (int q : {2, 3})
    for (int n = 1; n <= 4; ++n)
      for (int m = 1; m <= 4; ++m) {
        MatrixFunctions mf(FieldOrder(q), n, m);
        const int k = std::min(n, m);
        for (int u = 0; u <= k; ++u)
          for (int v = 0; v <= k + 1; ++v)
            for (int h = 0; h <= u; ++h)
              for (int r = 0; r <= k + 1; ++r)
                if (v < u - h || v > k || r < h || r > v + h) {
                  EXPECT_EQ(mf.f1(u, v, h, r), 0);
                }
      }
}

TEST(F2, Examples) {
  MatrixFunctions mf(FieldOrder(2), 2, 2);
  for (int rX = 0; rX <= 2; ++rX)
    for (int r = 0; r <= 2; ++r) EXPECT_EQ(mf.f2(r, rX, 0), r == rX ? 1 : 0);
  EXPECT_EQ(mf.f2(1, 1, 1), oracle::brute_f_functions(2, 2, FieldOrder(2)).f2.at({1, 1, 1}));
}

TEST(F2, PartitionAndSymmetry) {
  for (int q : {2, 3, 4, 5})
    for (int n = 1; n <= 4; ++n)
      for (int m = 1; m <= 4; ++m) {
        MatrixFunctions mf(FieldOrder(q), n, m);
        const int k = std::min(n, m);
        for (int rX = 0; rX <= k; ++rX)
          for (int rB = 0; rB <= k; ++rB) {
            BigCount total = 0;
            for (int r = 0; r <= k; ++r) {
              total += mf.f2(r, rX, rB);
              // Both sides count pairs (X, B) of ranks (rX, rB) with rank(X + B) = r.
              EXPECT_EQ(count_rank_matrices(n, m, rX, FieldOrder(q)) * mf.f2(r, rX, rB),
                        count_rank_matrices(n, m, rB, FieldOrder(q)) * mf.f2(r, rB, rX));
            }
            EXPECT_EQ(total, count_rank_matrices(n, m, rB, FieldOrder(q))) << q << n << m << rX << rB;
          }
      }
}

class BruteForceGrid : public ::testing::TestWithParam<std::array<int, 3>> {};

TEST_P(BruteForceGrid, AllFunctionsMatchEnumeration) {
  const auto [q, n, m] = GetParam();
  const FieldOrder fq(q);
  const auto tab = oracle::brute_f_functions(n, m, fq);
  EXPECT_TRUE(tab.well_defined);
  MatrixFunctions mf(fq, n, m);
  for (const auto& [u, value] : tab.f0) EXPECT_EQ(mf.f0(u), value);
  for (const auto& [key, value] : tab.f1) EXPECT_EQ(mf.f1(key[0], key[1], key[2], key[3]), value);
  for (const auto& [key, value] : tab.f2) EXPECT_EQ(mf.f2(key[0], key[1], key[2]), value);
  const int k = std::min(n, m);
  for (int u = 0; u <= k; ++u)
    for (int v = 0; v <= k; ++v)
      for (int h = 0; h <= k; ++h)
        for (int r = 0; r <= k; ++r)
          if (!tab.f1.count({u, v, h, r})) {
            EXPECT_EQ(mf.f1(u, v, h, r), 0);
          }
}

INSTANTIATE_TEST_SUITE_P(SmallFields, BruteForceGrid,
                         ::testing::Values(std::array<int, 3>{2, 1, 1}, std::array<int, 3>{2, 1, 2},
                                           std::array<int, 3>{2, 1, 3}, std::array<int, 3>{2, 2, 1},
                                           std::array<int, 3>{2, 2, 2}, std::array<int, 3>{2, 2, 3},
                                           std::array<int, 3>{2, 3, 1}, std::array<int, 3>{2, 3, 2},
                                           std::array<int, 3>{2, 3, 3}, std::array<int, 3>{3, 1, 2},
                                           std::array<int, 3>{3, 2, 1}, std::array<int, 3>{3, 2, 2}));
