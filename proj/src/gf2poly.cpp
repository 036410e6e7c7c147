#include "makeev/gf2poly.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <sstream>

namespace makeev {

namespace {

std::atomic<std::size_t> g_cell_limit{std::size_t(1) << 27};

// out ^= (src << shift), confined to one row of `words` words whose top word
// is masked by `top_mask`. Bits shifted past the row width are discarded.
void xor_shifted_row(std::uint64_t* out, const std::uint64_t* src, int shift,
                     std::size_t words, std::uint64_t top_mask) {
  const std::size_t word_shift = static_cast<std::size_t>(shift) / 64;
  const int bit_shift = shift % 64;
  if (word_shift >= words) return;
  if (bit_shift == 0) {
    for (std::size_t w = words; w-- > word_shift;) out[w] ^= src[w - word_shift];
  } else {
    for (std::size_t w = words; w-- > word_shift;) {
      std::uint64_t v = src[w - word_shift] << bit_shift;
      if (w > word_shift) v |= src[w - word_shift - 1] >> (64 - bit_shift);
      out[w] ^= v;
    }
  }
  out[words - 1] &= top_mask;
}

}  // namespace

std::size_t cell_limit() { return g_cell_limit.load(); }

void set_cell_limit(std::size_t limit) {
  if (limit == 0) throw std::invalid_argument("cell limit must be positive");
  g_cell_limit.store(limit);
}

DegreeCaps::DegreeCaps(std::vector<int> caps) : caps_(std::move(caps)) {
  if (caps_.empty()) throw std::invalid_argument("DegreeCaps: need at least one variable");
  const std::size_t limit = cell_limit();
  std::size_t cells = 1;
  for (int e : caps_) {
    if (e < 1) throw std::invalid_argument("DegreeCaps: every cap must be >= 1");
    if (cells > limit / static_cast<std::size_t>(e))
      throw ResourceError("DegreeCaps: cell count exceeds limit of " + std::to_string(limit));
    cells *= static_cast<std::size_t>(e);
  }
  cells_ = cells;
  rows_ = cells / static_cast<std::size_t>(caps_[0]);
  row_words_ = (static_cast<std::size_t>(caps_[0]) + 63) / 64;
  const int rem = caps_[0] % 64;
  top_mask_ = rem == 0 ? ~std::uint64_t(0) : (~std::uint64_t(0) >> (64 - rem));
}

DegreeCaps DegreeCaps::uniform(int k, int cap) {
  if (k < 1) throw std::invalid_argument("DegreeCaps: k must be >= 1");
  return DegreeCaps(std::vector<int>(static_cast<std::size_t>(k), cap));
}

TruncatedPoly::TruncatedPoly(const DegreeCaps& caps)
    : caps_(caps), words_(caps.row_count() * caps.row_words(), 0) {}

TruncatedPoly TruncatedPoly::zero(const DegreeCaps& caps) { return TruncatedPoly(caps); }

TruncatedPoly TruncatedPoly::one(const DegreeCaps& caps) {
  TruncatedPoly p(caps);
  p.words_[0] = 1;
  return p;
}

void TruncatedPoly::check_exponents(std::span<const int> exponents) const {
  if (static_cast<int>(exponents.size()) != caps_.var_count())
    throw std::invalid_argument("exponent vector has wrong length");
  for (int i = 0; i < caps_.var_count(); ++i)
    if (exponents[static_cast<std::size_t>(i)] < 0 ||
        exponents[static_cast<std::size_t>(i)] >= caps_.cap(i + 1))
      throw std::invalid_argument("exponent out of range for t" + std::to_string(i + 1));
}

void TruncatedPoly::set_bit(std::span<const int> exponents) {
  std::size_t row = 0;
  for (int i = caps_.var_count(); i >= 2; --i)
    row = row * static_cast<std::size_t>(caps_.cap(i)) +
          static_cast<std::size_t>(exponents[static_cast<std::size_t>(i) - 1]);
  const std::size_t a1 = static_cast<std::size_t>(exponents[0]);
  words_[row * caps_.row_words() + a1 / 64] |= std::uint64_t(1) << (a1 % 64);
}

TruncatedPoly TruncatedPoly::monomial(const DegreeCaps& caps, std::span<const int> exponents) {
  TruncatedPoly p(caps);
  p.check_exponents(exponents);
  p.set_bit(exponents);
  return p;
}

TruncatedPoly TruncatedPoly::linear_form(const DegreeCaps& caps, std::span<const int> coeffs) {
  if (static_cast<int>(coeffs.size()) != caps.var_count())
    throw std::invalid_argument("linear_form: coefficient vector has wrong length");
  TruncatedPoly p(caps);
  std::vector<int> exps(static_cast<std::size_t>(caps.var_count()), 0);
  for (int i = 0; i < caps.var_count(); ++i) {
    const int c = coeffs[static_cast<std::size_t>(i)];
    if (c != 0 && c != 1) throw std::invalid_argument("linear_form: coefficients must be 0 or 1");
    if (c == 1) {
      if (caps.cap(i + 1) < 2)
        throw std::invalid_argument("linear_form: cap of t" + std::to_string(i + 1) +
                                    " too small to hold a linear term");
      exps[static_cast<std::size_t>(i)] = 1;
      p.set_bit(exps);
      exps[static_cast<std::size_t>(i)] = 0;
    }
  }
  return p;
}

bool TruncatedPoly::is_zero() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::size_t TruncatedPoly::support_size() const {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

int TruncatedPoly::max_degree(int var) const {
  if (var < 1 || var > caps_.var_count()) throw std::invalid_argument("max_degree: variable out of range");
  int best = -1;
  for_each_term([&](std::span<const int> exps) {
    best = std::max(best, exps[static_cast<std::size_t>(var) - 1]);
  });
  return best;
}

bool TruncatedPoly::coeff(std::span<const int> exponents) const {
  check_exponents(exponents);
  std::size_t row = 0;
  for (int i = caps_.var_count(); i >= 2; --i)
    row = row * static_cast<std::size_t>(caps_.cap(i)) +
          static_cast<std::size_t>(exponents[static_cast<std::size_t>(i) - 1]);
  const std::size_t a1 = static_cast<std::size_t>(exponents[0]);
  return (words_[row * caps_.row_words() + a1 / 64] >> (a1 % 64)) & 1;
}

bool TruncatedPoly::is_target_monomial(std::span<const int> exponents) const {
  return coeff(exponents) && support_size() == 1;
}

TruncatedPoly TruncatedPoly::squared() const {
  TruncatedPoly out(caps_);
  const int k = caps_.var_count();
  std::vector<int> doubled(static_cast<std::size_t>(k));
  for_each_term([&](std::span<const int> exps) {
    for (int i = 0; i < k; ++i) {
      doubled[static_cast<std::size_t>(i)] = 2 * exps[static_cast<std::size_t>(i)];
      if (doubled[static_cast<std::size_t>(i)] >= caps_.cap(i + 1)) return;
    }
    out.set_bit(doubled);
  });
  return out;
}

bool TruncatedPoly::operator==(const TruncatedPoly& other) const {
  return caps_ == other.caps_ && words_ == other.words_;
}

TruncatedPoly add(const TruncatedPoly& p, const TruncatedPoly& q) {
  if (p.caps_ != q.caps_) throw std::invalid_argument("add: degree caps mismatch");
  TruncatedPoly out = p;
  for (std::size_t i = 0; i < out.words_.size(); ++i) out.words_[i] ^= q.words_[i];
  return out;
}

TruncatedPoly mul(const TruncatedPoly& p, const TruncatedPoly& q) {
  if (p.caps_ != q.caps_) throw std::invalid_argument("mul: degree caps mismatch");
  const DegreeCaps& caps = p.caps_;
  const bool p_sparser = p.support_size() <= q.support_size();
  const TruncatedPoly& sparse = p_sparser ? p : q;
  const TruncatedPoly& dense = p_sparser ? q : p;

  const int k = caps.var_count();
  const std::size_t row_words = caps.row_words();

  // nonzero rows of the dense operand, with their (a2..ak) exponents
  std::vector<std::size_t> dense_rows;
  std::vector<int> dense_exps;  // flattened, k-1 ints per row
  {
    std::vector<int> exps(static_cast<std::size_t>(k) - 1, 0);
    for (std::size_t row = 0; row < caps.row_count(); ++row) {
      const std::uint64_t* rw = dense.words_.data() + row * row_words;
      bool nonzero = false;
      for (std::size_t w = 0; w < row_words; ++w) nonzero |= rw[w] != 0;
      if (nonzero) {
        dense_rows.push_back(row);
        dense_exps.insert(dense_exps.end(), exps.begin(), exps.end());
      }
      for (int i = 0; i + 1 < k; ++i) {
        if (++exps[static_cast<std::size_t>(i)] < caps.cap(i + 2)) break;
        exps[static_cast<std::size_t>(i)] = 0;
      }
    }
  }

  TruncatedPoly out(caps);
  sparse.for_each_term([&](std::span<const int> a) {
    for (std::size_t r = 0; r < dense_rows.size(); ++r) {
      const int* b = dense_exps.data() + r * static_cast<std::size_t>(k - 1);
      std::size_t target_row = 0;
      bool ok = true;
      for (int i = k - 1; i >= 1; --i) {
        const int c = a[static_cast<std::size_t>(i)] + b[i - 1];
        if (c >= caps.cap(i + 1)) {
          ok = false;
          break;
        }
        target_row = target_row * static_cast<std::size_t>(caps.cap(i + 1)) +
                     static_cast<std::size_t>(c);
      }
      if (!ok) continue;
      xor_shifted_row(out.words_.data() + target_row * row_words,
                      dense.words_.data() + dense_rows[r] * row_words, a[0], row_words,
                      caps.top_word_mask());
    }
  });
  return out;
}

TruncatedPoly mul_naive(const TruncatedPoly& p, const TruncatedPoly& q) {
  if (p.caps_ != q.caps_) throw std::invalid_argument("mul: degree caps mismatch");
  const DegreeCaps& caps = p.caps_;
  const int k = caps.var_count();
  TruncatedPoly out(caps);
  std::vector<int> sum(static_cast<std::size_t>(k));
  p.for_each_term([&](std::span<const int> a) {
    q.for_each_term([&](std::span<const int> b) {
      for (int i = 0; i < k; ++i) {
        sum[static_cast<std::size_t>(i)] =
            a[static_cast<std::size_t>(i)] + b[static_cast<std::size_t>(i)];
        if (sum[static_cast<std::size_t>(i)] >= caps.cap(i + 1)) return;
      }
      // toggle: coefficients accumulate mod 2
      std::size_t row = 0;
      for (int i = k; i >= 2; --i)
        row = row * static_cast<std::size_t>(caps.cap(i)) +
              static_cast<std::size_t>(sum[static_cast<std::size_t>(i) - 1]);
      const std::size_t a1 = static_cast<std::size_t>(sum[0]);
      out.words_[row * caps.row_words() + a1 / 64] ^= std::uint64_t(1) << (a1 % 64);
    });
  });
  return out;
}

TruncatedPoly pow(const TruncatedPoly& p, long long e) {
  if (e < 0) throw std::invalid_argument("pow: exponent must be nonnegative");
  TruncatedPoly result = TruncatedPoly::one(p.caps_);
  if (e == 0) return result;
  TruncatedPoly base = p;
  while (true) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e == 0) break;
    base = base.squared();
  }
  return result;
}

std::string TruncatedPoly::to_string() const {
  std::ostringstream os;
  bool first = true;
  for_each_term([&](std::span<const int> exps) {
    if (!first) os << " + ";
    first = false;
    bool any = false;
    for (std::size_t i = 0; i < exps.size(); ++i) {
      if (exps[i] == 0) continue;
      if (any) os << '*';
      any = true;
      os << 't' << (i + 1);
      if (exps[i] > 1) os << '^' << exps[i];
    }
    if (!any) os << '1';
  });
  if (first) return "0";
  return os.str();
}

}  // namespace makeev
