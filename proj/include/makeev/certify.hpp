#pragma once

#include <string>
#include <vector>

#include "makeev/repbuild.hpp"

// The two polynomial zero-forcing criteria, preset representations for the
// certificate families shipped with the library, and minimal-dimension
// search over a small menu of padding policies.

namespace makeev {

enum class CertStatus { Certified, NotCertified, DimensionMismatch };

const char* to_string(CertStatus status);

struct CertificateResult {
  int k = 0;
  int d = 0;
  RepresentationSpec spec;
  long long dim_u = 0;
  CertStatus status = CertStatus::NotCertified;
  // support size of the representation polynomial; -1 when the polynomial
  // was not computed (dimension mismatch)
  long long residual_support = -1;
  std::vector<int> max_degrees;  // per variable, empty when not computed
};

// Full-monomial test: certifies iff dim U = k*d and the representation
// polynomial reduces to t1^d*...*tk^d under uniform caps d+1.
CertificateResult certify_full_monomial(const RepresentationSpec& spec, int d);

// Nonzero test for the m-th power of the full l-of-k equipartition
// polynomial under caps d+1 (uniform) or d+i (staircase). Exact ideal
// nonmembership: a polynomial lies in a monomial ideal iff each of its
// monomials is divisible by a generator, so surviving truncation is
// equivalent to nonmembership.
bool bk_nonmembership(long long m, int ell, int k, int d, bool staircase = false);

// Certificate families. Parameter use by id:
//   thm3.1  k,q,t   2-of-k             at d = 2^q*(k+1) - t
//   thm3.2  k,q,t   orthogonal 2-of-k  at d = 2^q*(k+1) - t   (q>=1, t>=2)
//   thm4.1  q,t     3-of-4             at d = 7*2^q - 2t
//   thm4.2  q,t     orthogonal 3-of-4  at d = 7*2^q - 2t      (q>=1, t>=2)
//   prop4.3 q       3-of-4 cascade     at d = 7*2^q - 4
//   prop5.4a k,q,t,d  2-of-k transversal certificate at n = d + 2^q*(k+1)-t + 1
//   prop5.4b q,t,d    3-of-4 transversal certificate at n = d + 7*2^q-2t + 1
//   prop6.1a        orthogonal 3-of-4, single mass, d = 7
//   prop6.1b        orthogonal 3-of-5, single mass, d = 9
struct TheoremPreset {
  std::string id;
  int k = 0;
  int q = 0;
  int t = 0;
  int d = 0;
};

extern const std::vector<std::string> kPresetIds;

struct PresetExpansion {
  RepresentationSpec spec;
  int d = 0;         // dimension the certificate targets
  long long m = 0;   // number of fully constrained masses
  bool orthogonal = false;
};

// Expands a preset into its block list; throws std::invalid_argument for an
// unknown id or out-of-range parameters. Guarantees dimension(spec) = k*d.
PresetExpansion preset_spec(const TheoremPreset& preset);

CertificateResult certify_preset(const TheoremPreset& preset);

enum class SearchPolicy { Paper, BisectionPad, OrthoThenPad };

SearchPolicy parse_policy(const std::string& name);
const char* to_string(SearchPolicy policy);

struct SearchAttempt {
  int d = 0;
  std::string note;  // reason a spec could not be formed, or the outcome
  CertStatus status = CertStatus::NotCertified;
  bool ran = false;  // false when no spec was representable at this d
};

struct SearchOutcome {
  bool found = false;
  CertificateResult result;  // valid when found
  std::vector<SearchAttempt> attempts;
  long long lower = 0;  // first d probed
};

// Scans d from the counting lower bound up to d_max, building one candidate
// representation per d according to the policy, and returns the first d
// that certifies.
SearchOutcome minimal_certified_d(long long m, int ell, int k, SearchPolicy policy, int d_max);

}  // namespace makeev
