#include "makeev/repbuild.hpp"

#include <algorithm>
#include <string>

namespace makeev {

namespace {

long long binom(int n, int r) {
  if (r < 0 || r > n) return 0;
  long long v = 1;
  for (int i = 1; i <= r; ++i) v = v * (n - r + i) / i;
  return v;
}

// sum over permutations of `vars` of the monomial assigning pattern[i] to the
// i-th permuted variable; coefficients mod 2, so repeated monomials cancel
TruncatedPoly perm_orbit(const std::vector<int>& vars, std::vector<int> pattern,
                         const DegreeCaps& caps) {
  TruncatedPoly out = TruncatedPoly::zero(caps);
  std::vector<int> order(vars.begin(), vars.end());
  std::sort(order.begin(), order.end());
  std::vector<int> exps(static_cast<std::size_t>(caps.var_count()), 0);
  do {
    std::fill(exps.begin(), exps.end(), 0);
    bool fits = true;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const int var = order[i];
      if (pattern[i] >= caps.cap(var)) {
        fits = false;
        break;
      }
      exps[static_cast<std::size_t>(var) - 1] = pattern[i];
    }
    if (!fits)
      throw std::invalid_argument("closed form does not fit the degree caps");
    out = add(out, TruncatedPoly::monomial(caps, exps));
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

}  // namespace

Block Block::equip(int level, std::vector<int> vars, int mult) {
  Block b;
  b.kind = Kind::Equip;
  b.level = level;
  b.vars = std::move(vars);
  b.mult = mult;
  return b;
}

Block Block::ortho(std::vector<std::pair<int, int>> pairs, int mult) {
  Block b;
  b.kind = Kind::Ortho;
  b.pairs = std::move(pairs);
  b.mult = mult;
  return b;
}

void validate(const Block& block, int k) {
  if (block.mult < 1) throw std::invalid_argument("block multiplicity must be >= 1");
  if (block.kind == Block::Kind::Equip) {
    if (block.vars.empty()) throw std::invalid_argument("equip block needs a nonempty variable set");
    int prev = 0;
    for (int v : block.vars) {
      if (v <= prev) throw std::invalid_argument("equip block variables must be strictly increasing");
      if (v > k) throw std::invalid_argument("equip block variable exceeds k");
      prev = v;
    }
    if (block.level < 1 || block.level > static_cast<int>(block.vars.size()))
      throw std::invalid_argument("equip block level must be in 1..|vars|");
  } else {
    for (const auto& [i, j] : block.pairs) {
      if (i < 1 || j <= i || j > k)
        throw std::invalid_argument("ortho block pairs must satisfy 1 <= i < j <= k");
    }
  }
}

void validate(const RepresentationSpec& spec) {
  if (spec.k < 1) throw std::invalid_argument("representation needs k >= 1");
  for (const Block& b : spec.blocks) validate(b, spec.k);
}

long long block_dimension(const Block& block) {
  long long dim = 0;
  if (block.kind == Block::Kind::Equip) {
    const int n = static_cast<int>(block.vars.size());
    for (int j = 1; j <= block.level; ++j) dim += binom(n, j);
  } else {
    dim = static_cast<long long>(block.pairs.size());
  }
  return dim * block.mult;
}

long long dimension(const RepresentationSpec& spec) {
  long long dim = 0;
  for (const Block& b : spec.blocks) dim += block_dimension(b);
  return dim;
}

TruncatedPoly r_poly(int j, const std::vector<int>& vars, const DegreeCaps& caps) {
  const int n = static_cast<int>(vars.size());
  if (j < 1 || j > n) throw std::invalid_argument("r_poly: weight out of range 1..|vars|");
  TruncatedPoly out = TruncatedPoly::one(caps);
  // enumerate j-subsets of vars via a sliding index vector
  std::vector<int> idx(static_cast<std::size_t>(j));
  for (int i = 0; i < j; ++i) idx[static_cast<std::size_t>(i)] = i;
  std::vector<int> coeffs(static_cast<std::size_t>(caps.var_count()), 0);
  while (true) {
    std::fill(coeffs.begin(), coeffs.end(), 0);
    for (int i : idx) coeffs[static_cast<std::size_t>(vars[static_cast<std::size_t>(i)]) - 1] = 1;
    out = mul(out, TruncatedPoly::linear_form(caps, coeffs));
    int pos = j - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - j + pos) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int i = pos + 1; i < j; ++i)
      idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i) - 1] + 1;
  }
  return out;
}

TruncatedPoly equip_poly(int level, const std::vector<int>& vars, const DegreeCaps& caps) {
  if (level < 1 || level > static_cast<int>(vars.size()))
    throw std::invalid_argument("equip_poly: level out of range 1..|vars|");
  TruncatedPoly out = TruncatedPoly::one(caps);
  for (int j = 1; j <= level; ++j) out = mul(out, r_poly(j, vars, caps));
  return out;
}

TruncatedPoly ortho_poly(const std::vector<std::pair<int, int>>& pairs, const DegreeCaps& caps) {
  TruncatedPoly out = TruncatedPoly::one(caps);
  std::vector<int> coeffs(static_cast<std::size_t>(caps.var_count()), 0);
  for (const auto& [i, j] : pairs) {
    if (i < 1 || j <= i || j > caps.var_count())
      throw std::invalid_argument("ortho_poly: pair indices must satisfy 1 <= i < j <= k");
    std::fill(coeffs.begin(), coeffs.end(), 0);
    coeffs[static_cast<std::size_t>(i) - 1] = 1;
    coeffs[static_cast<std::size_t>(j) - 1] = 1;
    out = mul(out, TruncatedPoly::linear_form(caps, coeffs));
  }
  return out;
}

TruncatedPoly closed_p2k(int k, const DegreeCaps& caps) {
  if (k < 1 || k > caps.var_count()) throw std::invalid_argument("closed_p2k: k out of range");
  std::vector<int> vars(static_cast<std::size_t>(k));
  std::vector<int> pattern(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    vars[static_cast<std::size_t>(i)] = i + 1;
    pattern[static_cast<std::size_t>(i)] = k - i;
  }
  return perm_orbit(vars, pattern, caps);
}

TruncatedPoly closed_p34(const DegreeCaps& caps) {
  if (caps.var_count() != 4) throw std::invalid_argument("closed_p34: needs exactly 4 variables");
  const std::vector<int> vars{1, 2, 3, 4};
  TruncatedPoly out = perm_orbit(vars, {5, 4, 3, 2}, caps);
  out = add(out, perm_orbit(vars, {7, 4, 2, 1}, caps));
  out = add(out, perm_orbit(vars, {6, 5, 2, 1}, caps));
  out = add(out, perm_orbit(vars, {6, 4, 3, 1}, caps));
  return out;
}

TruncatedPoly closed_p33(const DegreeCaps& caps) {
  if (caps.var_count() != 3) throw std::invalid_argument("closed_p33: needs exactly 3 variables");
  return perm_orbit({1, 2, 3}, {4, 2, 1}, caps);
}

TruncatedPoly block_poly(const Block& block, const DegreeCaps& caps) {
  validate(block, caps.var_count());
  TruncatedPoly base = block.kind == Block::Kind::Equip
                           ? equip_poly(block.level, block.vars, caps)
                           : ortho_poly(block.pairs, caps);
  return pow(base, block.mult);
}

TruncatedPoly build_U(const RepresentationSpec& spec, const DegreeCaps& caps) {
  validate(spec);
  if (spec.k != caps.var_count())
    throw std::invalid_argument("build_U: spec.k does not match the degree caps");
  std::vector<TruncatedPoly> factors;
  factors.reserve(spec.blocks.size());
  for (const Block& b : spec.blocks) factors.push_back(block_poly(b, caps));
  std::stable_sort(factors.begin(), factors.end(),
                   [](const TruncatedPoly& a, const TruncatedPoly& b) {
                     return a.support_size() < b.support_size();
                   });
  TruncatedPoly out = TruncatedPoly::one(caps);
  for (const TruncatedPoly& f : factors) out = mul(out, f);
  return out;
}

}  // namespace makeev
