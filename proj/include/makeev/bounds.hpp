#pragma once

#include <optional>
#include <string>

// Closed-form lower and upper bounds for the minimal dimension in which any
// m masses admit an (orthogonal) l-of-k hyperplane equipartition. All
// integer-exact; no floating point.

namespace makeev {

// Unique decomposition m = 2^(q+1) - t with q >= 0 and 1 <= t <= 2^q.
void decompose_pow2(long long m, int& q, long long& t);

// Degrees-of-freedom lower bound ceil(m(2^k-1)/k) for full equipartition.
long long ramos_lower(long long m, int k);

// General upper bound 2^q(2^(k-1)+1) - t for full equipartition.
long long mlz_upper(long long m, int k);

// ceil((m(2^l-1)(k-l+1) + [orthogonal]*C(k,2)) / k); requires 2 <= l <= k.
long long makeev_lower(long long m, int ell, int k, bool orthogonal);

// Degree-of-p bound m * sum_{j=0..l} C(k-1,j).
long long bk_upper(long long m, int ell, int k);

// The certificate-backed upper bound: 2^q(k+1)-t for l=2, 7*2^q-2t for
// (l,k)=(3,4); orthogonal variants need t >= 2. Also covers the two
// orthogonal (m=1, l=3) cases k=4 -> 7 and k=5 -> 9. Empty when no
// certificate family applies.
std::optional<long long> theorem_upper(long long m, int ell, int k, bool orthogonal);

struct BoundReport {
  long long m = 0;
  int ell = 0;
  int k = 0;
  bool orthogonal = false;
  long long lower = 0;
  std::optional<long long> upper;
  std::string upper_source;  // "theorem-preset", "bk", "mlz", or empty
};

// Best available bracket; the upper bound is the minimum over applicable
// formulas, tagged with its source.
BoundReport bound_report(long long m, int ell, int k, bool orthogonal);

}  // namespace makeev
