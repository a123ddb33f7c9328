#pragma once

#include <string>

#include "core.hpp"

namespace gamma_channel {

namespace detail {

inline long long choose2(long long k) { return k * (k - 1) / 2; }

// Gaussian binomial; 0 outside 0 <= d <= m.
inline BigCount qbinom_raw(int m, int d, std::int64_t q) {
  if (d < 0 || m < 0 || d > m) return 0;
  if (d > m - d) d = m - d;
  BigCount num = 1;
  BigCount den = 1;
  const BigCount qm = ipow(q, m);
  const BigCount qd = ipow(q, d);
  BigCount qi = 1;
  for (int i = 0; i < d; ++i) {
    num *= qm - qi;
    den *= qd - qi;
    qi *= q;
  }
  return num / den;
}

// prod_{i<k} (q^a - q^i); 0 when k > a, 1 when k = 0.
inline BigCount falling_qproduct(int a, int k, std::int64_t q) {
  if (k < 0 || a < 0) return 0;
  if (k > a) return 0;
  BigCount out = 1;
  const BigCount qa = ipow(q, a);
  BigCount qi = 1;
  for (int i = 0; i < k; ++i) {
    out *= qa - qi;
    qi *= q;
  }
  return out;
}

}  // namespace detail

/// Number of d-dimensional subspaces of an m-dimensional space over F_q.
inline BigCount qbinom(int m, int d, const FieldOrder& q) {
  check_dim(m, "m");
  check_dim(d, "d");
  return detail::qbinom_raw(m, d, q.value());
}

/// Number of n x m matrices of rank r over F_q.
inline BigCount count_rank_matrices(int n, int m, int r, const FieldOrder& q) {
  check_dim(n, "n");
  check_dim(m, "m");
  check_dim(r, "r");
  if (r > std::min(n, m)) return 0;
  return detail::qbinom_raw(m, r, q.value()) * detail::falling_qproduct(n, r, q.value());
}

/// dU-dimensional subspaces with a prescribed intersection (dim dV2) with V1
/// and a prescribed image in V/V1.
inline BigCount count_fix_int_and_image(int dU, int dV1, int dV2, const FieldOrder& q) {
  check_dim(dU, "dU");
  check_dim(dV1, "dV1");
  check_dim(dV2, "dV2");
  if (dV2 > dV1 || dV2 > dU) throw InputError("count_fix_int_and_image requires dV2 <= min(dV1, dU)");
  return ipow(q.value(), static_cast<long long>(dU - dV2) * (dV1 - dV2));
}

/// dU-dimensional subspaces U of V with U cap V1 equal to a fixed dV2-dimensional V2.
inline BigCount count_fixed_intersection(int dV, int dV1, int dV2, int dU, const FieldOrder& q) {
  check_dim(dV, "dV");
  check_dim(dV1, "dV1");
  check_dim(dV2, "dV2");
  check_dim(dU, "dU");
  if (dV2 > dV1 || dV1 > dV || dV2 > dU || dU > dV) return 0;
  return ipow(q.value(), static_cast<long long>(dU - dV2) * (dV1 - dV2)) *
         detail::qbinom_raw(dV - dV1, dU - dV2, q.value());
}

/// dU-dimensional subspaces of V whose image in V/V1 is a fixed dUimg-dimensional space.
inline BigCount count_fixed_image(int dV1, int dU, int dUimg, const FieldOrder& q) {
  check_dim(dV1, "dV1");
  check_dim(dU, "dU");
  check_dim(dUimg, "dUimg");
  if (dUimg > dU) return 0;
  const int inter = dU - dUimg;
  if (inter > dV1) return 0;
  return ipow(q.value(), static_cast<long long>(dUimg) * (dV1 - inter)) *
         detail::qbinom_raw(dV1, inter, q.value());
}

namespace detail {
inline BigCount count_fixed_dim_intersection_raw(int dV, int dV1, int dU, int dUV1, std::int64_t q) {
  if (dV < 0 || dV1 < 0 || dU < 0 || dUV1 < 0) return 0;
  if (dU < dUV1 || dV1 < dUV1 || dV1 > dV) return 0;
  return ipow(q, static_cast<long long>(dU - dUV1) * (dV1 - dUV1)) * qbinom_raw(dV - dV1, dU - dUV1, q) *
         qbinom_raw(dV1, dUV1, q);
}
}  // namespace detail

/// dU-dimensional subspaces U of V with dim(U cap V1) = dUV1.
inline BigCount count_fixed_dim_intersection(int dV, int dV1, int dU, int dUV1, const FieldOrder& q) {
  check_dim(dV, "dV");
  check_dim(dV1, "dV1");
  check_dim(dU, "dU");
  check_dim(dUV1, "dUV1");
  return detail::count_fixed_dim_intersection_raw(dV, dV1, dU, dUV1, q.value());
}

/// Moebius function mu(V, U) of the subspace lattice for dim V = dV <= dim U = dU.
inline SignedBigCount mobius_subspace(int dV, int dU, const FieldOrder& q) {
  check_dim(dV, "dV");
  check_dim(dU, "dU");
  if (dV > dU) throw InputError("mobius_subspace requires dV <= dU");
  const int k = dU - dV;
  SignedBigCount out = ipow(q.value(), detail::choose2(k));
  return (k % 2 == 0) ? out : SignedBigCount(-out);
}

}  // namespace gamma_channel
