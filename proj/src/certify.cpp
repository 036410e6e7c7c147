#include "makeev/certify.hpp"

#include <algorithm>

#include "makeev/bounds.hpp"

namespace makeev {

namespace {

std::vector<int> suffix_vars(int first, int k) {
  std::vector<int> vars;
  for (int v = first; v <= k; ++v) vars.push_back(v);
  return vars;
}

std::vector<std::pair<int, int>> all_pairs(int k) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) pairs.emplace_back(i, j);
  return pairs;
}

// pairs (i,j) with j >= i+2: the non-adjacent orthogonality set used by the
// plain 2-of-k certificates
std::vector<std::pair<int, int>> nonadjacent_pairs(int k) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i <= k; ++i)
    for (int j = i + 2; j <= k; ++j) pairs.emplace_back(i, j);
  return pairs;
}

// Equip block on {first..k}, with the level clamped to the variable count so
// the k=2 editions of the suffix blocks stay well formed.
Block suffix_equip(int level, int first, int k, int mult) {
  const int n = k - first + 1;
  return Block::equip(std::min(level, n), suffix_vars(first, k), mult);
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void check_qt(const TheoremPreset& p, int min_q, int min_t) {
  require(p.q >= min_q, p.id + ": requires q >= " + std::to_string(min_q));
  require(p.t >= min_t && p.t <= (1 << p.q),
          p.id + ": requires " + std::to_string(min_t) + " <= t <= 2^q");
  require(p.q <= 24, p.id + ": q too large");
}

void check_k(const TheoremPreset& p, int expected) {
  require(p.k == 0 || p.k == expected,
          p.id + ": k is fixed at " + std::to_string(expected));
}

}  // namespace

const std::vector<std::string> kPresetIds = {
    "thm3.1", "thm3.2", "thm4.1", "thm4.2", "prop4.3",
    "prop5.4a", "prop5.4b", "prop6.1a", "prop6.1b"};

const char* to_string(CertStatus status) {
  switch (status) {
    case CertStatus::Certified: return "Certified";
    case CertStatus::NotCertified: return "NotCertified";
    case CertStatus::DimensionMismatch: return "DimensionMismatch";
  }
  return "?";
}

CertificateResult certify_full_monomial(const RepresentationSpec& spec, int d) {
  validate(spec);
  if (d < 1) throw std::invalid_argument("certify_full_monomial: d must be >= 1");
  CertificateResult res;
  res.k = spec.k;
  res.d = d;
  res.spec = spec;
  res.dim_u = dimension(spec);
  if (res.dim_u != static_cast<long long>(spec.k) * d) {
    res.status = CertStatus::DimensionMismatch;
    return res;
  }
  const DegreeCaps caps = DegreeCaps::uniform(spec.k, d + 1);
  const TruncatedPoly p_u = build_U(spec, caps);
  res.residual_support = static_cast<long long>(p_u.support_size());
  res.max_degrees.resize(static_cast<std::size_t>(spec.k));
  for (int i = 1; i <= spec.k; ++i)
    res.max_degrees[static_cast<std::size_t>(i) - 1] = p_u.max_degree(i);
  const std::vector<int> target(static_cast<std::size_t>(spec.k), d);
  res.status = p_u.is_target_monomial(target) ? CertStatus::Certified
                                              : CertStatus::NotCertified;
  return res;
}

bool bk_nonmembership(long long m, int ell, int k, int d, bool staircase) {
  if (m < 1) throw std::invalid_argument("bk_nonmembership: m must be >= 1");
  if (k < 1 || ell < 1 || ell > k)
    throw std::invalid_argument("bk_nonmembership: requires 1 <= l <= k");
  if (d < 0) throw std::invalid_argument("bk_nonmembership: d must be >= 0");
  std::vector<int> caps_vec(static_cast<std::size_t>(k));
  for (int i = 1; i <= k; ++i)
    caps_vec[static_cast<std::size_t>(i) - 1] = staircase ? d + i : d + 1;
  // every factor list contains the weight-1 form of each variable, so a cap
  // of 1 kills the whole product outright
  if (*std::min_element(caps_vec.begin(), caps_vec.end()) < 2) return false;
  const DegreeCaps caps(caps_vec);
  const TruncatedPoly p = pow(equip_poly(ell, suffix_vars(1, k), caps), m);
  return !p.is_zero();
}

PresetExpansion preset_spec(const TheoremPreset& preset) {
  PresetExpansion out;
  const std::string& id = preset.id;
  require(preset.k >= 0 && preset.q >= 0 && preset.t >= 0 && preset.d >= 0,
          id + ": parameters must be nonnegative");

  if (id == "thm3.1" || id == "thm3.2") {
    const bool ortho = id == "thm3.2";
    const int k = preset.k;
    require(k >= 2, id + ": requires k >= 2");
    check_qt(preset, ortho ? 1 : 0, ortho ? 2 : 1);
    require(preset.d == 0, id + ": does not take d");
    const long long m = (1LL << (preset.q + 1)) - preset.t;
    const int d = (1 << preset.q) * (k + 1) - preset.t;
    RepresentationSpec spec;
    spec.k = k;
    spec.blocks.push_back(Block::equip(2, suffix_vars(1, k), static_cast<int>(m)));
    const int reduced = preset.t - (ortho ? 2 : 1);
    if (reduced > 0) spec.blocks.push_back(suffix_equip(2, 2, k, reduced));
    if (ortho) {
      spec.blocks.push_back(Block::ortho(all_pairs(k)));
      for (int j = k - 1; j >= 1; --j)
        spec.blocks.push_back(Block::equip(1, suffix_vars(k - j + 1, k)));
    } else {
      auto pairs = nonadjacent_pairs(k);
      if (!pairs.empty()) spec.blocks.push_back(Block::ortho(std::move(pairs)));
      spec.blocks.push_back(Block::equip(1, suffix_vars(2, k)));
    }
    out = {std::move(spec), d, m, ortho};
  } else if (id == "thm4.1" || id == "thm4.2") {
    const bool ortho = id == "thm4.2";
    check_k(preset, 4);
    check_qt(preset, ortho ? 1 : 0, ortho ? 2 : 1);
    require(preset.d == 0, id + ": does not take d");
    const long long m = (1LL << (preset.q + 1)) - preset.t;
    const int d = 7 * (1 << preset.q) - 2 * preset.t;
    RepresentationSpec spec;
    spec.k = 4;
    spec.blocks.push_back(Block::equip(3, {1, 2, 3, 4}, static_cast<int>(m)));
    const int reduced = preset.t - (ortho ? 2 : 1);
    if (reduced > 0) spec.blocks.push_back(Block::equip(2, {2, 3, 4}, reduced));
    if (ortho) {
      spec.blocks.push_back(Block::ortho(all_pairs(4)));
      spec.blocks.push_back(Block::equip(1, {2, 3, 4}));
      spec.blocks.push_back(Block::equip(1, {3, 4}));
      spec.blocks.push_back(Block::equip(1, {4}));
    } else {
      spec.blocks.push_back(Block::ortho({{1, 3}, {1, 4}, {2, 4}}));
      spec.blocks.push_back(Block::equip(1, {2, 3, 4}));
    }
    out = {std::move(spec), d, m, ortho};
  } else if (id == "prop4.3") {
    check_k(preset, 4);
    require(preset.q >= 0 && preset.q <= 24, id + ": q out of range");
    require(preset.t == 0 && preset.d == 0, id + ": takes only q");
    const long long m = (1LL << (preset.q + 1)) - 2;
    const int d = 7 * (1 << preset.q) - 4;
    RepresentationSpec spec;
    spec.k = 4;
    if (m > 0) spec.blocks.push_back(Block::equip(3, {1, 2, 3, 4}, static_cast<int>(m)));
    spec.blocks.push_back(Block::equip(3, {2, 3, 4}));
    spec.blocks.push_back(Block::equip(1, {3, 4}, 2));
    spec.blocks.push_back(Block::equip(1, {4}));
    out = {std::move(spec), d, m, false};
  } else if (id == "prop5.4a" || id == "prop5.4b") {
    const bool two_of_k = id == "prop5.4a";
    int k = preset.k;
    if (two_of_k) {
      require(k >= 2, id + ": requires k >= 2");
    } else {
      check_k(preset, 4);
      k = 4;
    }
    check_qt(preset, 0, 1);
    require(preset.d >= 1, id + ": requires d >= 1");
    const long long m = (1LL << (preset.q + 1)) - preset.t;
    const int upper = two_of_k ? (1 << preset.q) * (k + 1) - preset.t
                               : 7 * (1 << preset.q) - 2 * preset.t;
    const int n = preset.d + upper + 1;
    RepresentationSpec spec;
    spec.k = k;
    spec.blocks.push_back(
        Block::equip(two_of_k ? 2 : 3, suffix_vars(1, k), static_cast<int>(m)));
    spec.blocks.push_back(Block::equip(1, suffix_vars(1, k), preset.d + 1));
    for (int j = k - 1; j >= 1; --j)
      spec.blocks.push_back(Block::equip(1, suffix_vars(k - j + 1, k), preset.t));
    out = {std::move(spec), n, m, false};
  } else if (id == "prop6.1a") {
    check_k(preset, 4);
    require(preset.q == 0 && preset.t == 0 && preset.d == 0, id + ": takes no parameters");
    RepresentationSpec spec;
    spec.k = 4;
    spec.blocks.push_back(Block::equip(3, {1, 2, 3, 4}));
    spec.blocks.push_back(Block::ortho(all_pairs(4)));
    spec.blocks.push_back(Block::equip(1, {2, 3, 4}));
    spec.blocks.push_back(Block::equip(1, {3, 4}, 2));
    spec.blocks.push_back(Block::equip(1, {4}));
    out = {std::move(spec), 7, 1, true};
  } else if (id == "prop6.1b") {
    check_k(preset, 5);
    require(preset.q == 0 && preset.t == 0 && preset.d == 0, id + ": takes no parameters");
    RepresentationSpec spec;
    spec.k = 5;
    spec.blocks.push_back(Block::equip(3, {1, 2, 3, 4, 5}));
    spec.blocks.push_back(Block::ortho(all_pairs(5)));
    for (int first = 2; first <= 5; ++first)
      spec.blocks.push_back(Block::equip(1, suffix_vars(first, 5)));
    out = {std::move(spec), 9, 1, true};
  } else {
    throw std::invalid_argument("unknown theorem preset '" + id + "'");
  }
  return out;
}

CertificateResult certify_preset(const TheoremPreset& preset) {
  const PresetExpansion exp = preset_spec(preset);
  return certify_full_monomial(exp.spec, exp.d);
}

SearchPolicy parse_policy(const std::string& name) {
  if (name == "paper") return SearchPolicy::Paper;
  if (name == "bisection-pad") return SearchPolicy::BisectionPad;
  if (name == "ortho-then-pad") return SearchPolicy::OrthoThenPad;
  throw std::invalid_argument("unknown search policy '" + name + "'");
}

const char* to_string(SearchPolicy policy) {
  switch (policy) {
    case SearchPolicy::Paper: return "paper";
    case SearchPolicy::BisectionPad: return "bisection-pad";
    case SearchPolicy::OrthoThenPad: return "ortho-then-pad";
  }
  return "?";
}

namespace {

long long ceil_div(long long num, long long den) { return (num + den - 1) / den; }

// dim padding with bisection blocks on suffix sets, longest suffix first
void pad_with_suffixes(RepresentationSpec& spec, long long deficit) {
  const int k = spec.k;
  if (deficit >= k) {
    spec.blocks.push_back(
        Block::equip(1, suffix_vars(1, k), static_cast<int>(deficit / k)));
    deficit %= k;
  }
  if (deficit > 0)
    spec.blocks.push_back(Block::equip(1, suffix_vars(k - static_cast<int>(deficit) + 1, k)));
}

}  // namespace

SearchOutcome minimal_certified_d(long long m, int ell, int k, SearchPolicy policy, int d_max) {
  if (m < 1) throw std::invalid_argument("minimal_certified_d: m must be >= 1");
  if (k < 1 || ell < 1 || ell > k)
    throw std::invalid_argument("minimal_certified_d: requires 1 <= l <= k");

  SearchOutcome outcome;
  const bool ortho = policy == SearchPolicy::OrthoThenPad;
  const long long extra = ortho ? static_cast<long long>(k) * (k - 1) / 2 : 0;
  outcome.lower = ceil_div(m * ((1LL << ell) - 1) * (k - ell + 1) + extra, k);

  for (int d = static_cast<int>(std::max(outcome.lower, 1LL)); d <= d_max; ++d) {
    SearchAttempt attempt;
    attempt.d = d;
    RepresentationSpec spec;
    bool have_spec = false;

    if (policy == SearchPolicy::Paper) {
      int q;
      long long t;
      decompose_pow2(m, q, t);
      TheoremPreset preset;
      if (ell == 2 && k >= 2) {
        preset = {"thm3.1", k, q, static_cast<int>(t), 0};
      } else if (ell == 3 && k == 4) {
        preset = {"thm4.1", 4, q, static_cast<int>(t), 0};
      } else {
        attempt.note = "no preset family covers l=" + std::to_string(ell) +
                       ", k=" + std::to_string(k);
        outcome.attempts.push_back(std::move(attempt));
        continue;
      }
      const PresetExpansion exp = preset_spec(preset);
      if (exp.d != d) {
        attempt.note = "preset " + preset.id + " certifies only at d=" + std::to_string(exp.d);
        outcome.attempts.push_back(std::move(attempt));
        continue;
      }
      spec = exp.spec;
      have_spec = true;
    } else {
      spec.k = k;
      spec.blocks.push_back(Block::equip(std::min(ell, k), suffix_vars(1, k),
                                         static_cast<int>(m)));
      long long deficit = static_cast<long long>(k) * d - dimension(spec);
      if (ortho) {
        spec.blocks.push_back(Block::ortho(all_pairs(k)));
        deficit -= static_cast<long long>(k) * (k - 1) / 2;
      }
      if (deficit < 0) {
        attempt.note = "base dimension already exceeds k*d";
        outcome.attempts.push_back(std::move(attempt));
        continue;
      }
      pad_with_suffixes(spec, deficit);
      have_spec = true;
    }

    if (have_spec) {
      CertificateResult res = certify_full_monomial(spec, d);
      attempt.ran = true;
      attempt.status = res.status;
      attempt.note = to_string(res.status);
      outcome.attempts.push_back(attempt);
      if (res.status == CertStatus::Certified) {
        outcome.found = true;
        outcome.result = std::move(res);
        return outcome;
      }
    }
  }
  return outcome;
}

}  // namespace makeev
