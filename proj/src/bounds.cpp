#include "makeev/bounds.hpp"

#include <bit>
#include <stdexcept>

namespace makeev {

namespace {

long long ceil_div(long long num, long long den) { return (num + den - 1) / den; }

long long choose2(int k) { return static_cast<long long>(k) * (k - 1) / 2; }

long long binom(int n, int r) {
  if (r < 0 || r > n) return 0;
  long long v = 1;
  for (int i = 1; i <= r; ++i) v = v * (n - r + i) / i;
  return v;
}

void check_mk(long long m, int k) {
  if (m < 1) throw std::invalid_argument("mass count m must be >= 1");
  if (k < 1 || k > 62) throw std::invalid_argument("hyperplane count k out of range");
}

}  // namespace

void decompose_pow2(long long m, int& q, long long& t) {
  if (m < 1) throw std::invalid_argument("decompose_pow2: m must be >= 1");
  q = std::bit_width(static_cast<unsigned long long>(m)) - 1;
  t = (1LL << (q + 1)) - m;
}

long long ramos_lower(long long m, int k) {
  check_mk(m, k);
  return ceil_div(m * ((1LL << k) - 1), k);
}

long long mlz_upper(long long m, int k) {
  check_mk(m, k);
  int q;
  long long t;
  decompose_pow2(m, q, t);
  return (1LL << q) * ((1LL << (k - 1)) + 1) - t;
}

long long makeev_lower(long long m, int ell, int k, bool orthogonal) {
  check_mk(m, k);
  if (ell < 2 || ell > k)
    throw std::invalid_argument("makeev_lower: requires 2 <= l <= k");
  const long long extra = orthogonal ? choose2(k) : 0;
  return ceil_div(m * ((1LL << ell) - 1) * (k - ell + 1) + extra, k);
}

long long bk_upper(long long m, int ell, int k) {
  check_mk(m, k);
  if (ell < 1 || ell > k) throw std::invalid_argument("bk_upper: requires 1 <= l <= k");
  long long s = 0;
  for (int j = 0; j <= ell; ++j) s += binom(k - 1, j);
  return m * s;
}

std::optional<long long> theorem_upper(long long m, int ell, int k, bool orthogonal) {
  check_mk(m, k);
  if (ell < 1 || ell > k) throw std::invalid_argument("theorem_upper: requires 1 <= l <= k");
  int q;
  long long t;
  decompose_pow2(m, q, t);
  if (!orthogonal) {
    if (ell == 2 && k >= 2) return (1LL << q) * (k + 1) - t;
    if (ell == 3 && k == 4) return 7 * (1LL << q) - 2 * t;
    return std::nullopt;
  }
  if (t >= 2) {
    if (ell == 2 && k >= 2) return (1LL << q) * (k + 1) - t;
    if (ell == 3 && k == 4) return 7 * (1LL << q) - 2 * t;
  }
  if (m == 1 && ell == 3 && k == 4) return 7;
  if (m == 1 && ell == 3 && k == 5) return 9;
  return std::nullopt;
}

BoundReport bound_report(long long m, int ell, int k, bool orthogonal) {
  check_mk(m, k);
  if (ell < 1 || ell > k) throw std::invalid_argument("bound_report: requires 1 <= l <= k");
  BoundReport r;
  r.m = m;
  r.ell = ell;
  r.k = k;
  r.orthogonal = orthogonal;
  if (ell >= 2) {
    r.lower = makeev_lower(m, ell, k, orthogonal);
  } else {
    // l=1 degrees-of-freedom count: the same formula, no l >= 2 gate needed
    r.lower = ceil_div(m * ((1LL << ell) - 1) * (k - ell + 1) + (orthogonal ? choose2(k) : 0), k);
  }
  auto consider = [&r](std::optional<long long> v, const char* source) {
    if (v && (!r.upper || *v < *r.upper)) {
      r.upper = *v;
      r.upper_source = source;
    }
  };
  consider(theorem_upper(m, ell, k, orthogonal), "theorem-preset");
  if (!orthogonal) {
    if (ell == k) consider(mlz_upper(m, k), "mlz");
    consider(bk_upper(m, ell, k), "bk");
  }
  return r;
}

}  // namespace makeev
