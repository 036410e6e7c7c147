#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

// Exact arithmetic in Z2[t1,...,tk]/(t1^e1,...,tk^ek): dense bit-array
// polynomials with per-variable degree caps. Variable indices are 1-based
// throughout the public API, matching the t1..tk convention of the rest of
// the library.

namespace makeev {

// Thrown when a requested coefficient array would exceed the cell guard.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Process-wide guard on the number of coefficient cells a single polynomial
// may allocate. Default 2^27.
std::size_t cell_limit();
void set_cell_limit(std::size_t limit);

// Per-variable truncation exponents e1..ek: monomials containing ti^ei
// vanish. Fixes the mixed-radix cell indexing
//   (a1,...,ak) -> a1 + a2*e1 + a3*e1*e2 + ...
class DegreeCaps {
 public:
  explicit DegreeCaps(std::vector<int> caps);
  static DegreeCaps uniform(int k, int cap);

  int var_count() const { return static_cast<int>(caps_.size()); }
  int cap(int var) const { return caps_[static_cast<std::size_t>(var) - 1]; }
  const std::vector<int>& caps() const { return caps_; }
  std::size_t cell_count() const { return cells_; }

  bool operator==(const DegreeCaps& other) const { return caps_ == other.caps_; }
  bool operator!=(const DegreeCaps& other) const { return !(*this == other); }

  // Physical layout: the t1-fiber of each monomial class is a "row" of
  // cap(1) bits, padded to whole 64-bit words. Rows enumerate the exponents
  // (a2,...,ak) in mixed radix.
  std::size_t row_count() const { return rows_; }
  std::size_t row_words() const { return row_words_; }
  std::uint64_t top_word_mask() const { return top_mask_; }

 private:
  std::vector<int> caps_;
  std::size_t cells_ = 0;
  std::size_t rows_ = 0;
  std::size_t row_words_ = 0;
  std::uint64_t top_mask_ = 0;
};

// An element of the truncated ring. Immutable value type as far as the
// public surface is concerned; all mutation happens inside the named
// constructors and the ring operations.
class TruncatedPoly {
 public:
  static TruncatedPoly zero(const DegreeCaps& caps);
  static TruncatedPoly one(const DegreeCaps& caps);
  static TruncatedPoly monomial(const DegreeCaps& caps, std::span<const int> exponents);
  // sum of ai*ti for the 0/1 coefficient vector; requires cap >= 2 wherever
  // a coefficient is set. The all-zero vector yields the zero polynomial.
  static TruncatedPoly linear_form(const DegreeCaps& caps, std::span<const int> coeffs);

  const DegreeCaps& caps() const { return caps_; }
  bool is_zero() const;
  std::size_t support_size() const;
  // largest exponent of t_var over the support; -1 for the zero polynomial
  int max_degree(int var) const;
  bool coeff(std::span<const int> exponents) const;
  bool is_target_monomial(std::span<const int> exponents) const;

  // Frobenius square: doubles every exponent vector, dropping overflow.
  TruncatedPoly squared() const;

  // Debug rendering, terms in ascending cell-index order: "t1^3*t2 + t1*t2^2".
  std::string to_string() const;

  bool operator==(const TruncatedPoly& other) const;
  bool operator!=(const TruncatedPoly& other) const { return !(*this == other); }

  friend TruncatedPoly add(const TruncatedPoly& p, const TruncatedPoly& q);
  friend TruncatedPoly mul(const TruncatedPoly& p, const TruncatedPoly& q);
  friend TruncatedPoly mul_naive(const TruncatedPoly& p, const TruncatedPoly& q);
  friend TruncatedPoly pow(const TruncatedPoly& p, long long e);

  // Visits the support in ascending cell-index order.
  template <typename Fn>
  void for_each_term(Fn&& fn) const;

 private:
  explicit TruncatedPoly(const DegreeCaps& caps);
  void set_bit(std::span<const int> exponents);
  void check_exponents(std::span<const int> exponents) const;

  DegreeCaps caps_;
  std::vector<std::uint64_t> words_;  // bits above cap(1) in each row stay zero
};

TruncatedPoly add(const TruncatedPoly& p, const TruncatedPoly& q);
// Truncated product. Iterates the support of the sparser operand and
// xors shifted rows of the denser one: O(nnz * nnz) coefficient updates
// worst case, 64 bits at a time along t1.
TruncatedPoly mul(const TruncatedPoly& p, const TruncatedPoly& q);
// Same contract as mul, as a plain double loop over all cells. Test oracle.
TruncatedPoly mul_naive(const TruncatedPoly& p, const TruncatedPoly& q);
// Square-and-multiply; squarings use the Frobenius shortcut.
TruncatedPoly pow(const TruncatedPoly& p, long long e);

template <typename Fn>
void TruncatedPoly::for_each_term(Fn&& fn) const {
  const int k = caps_.var_count();
  std::vector<int> exps(static_cast<std::size_t>(k), 0);
  const std::size_t row_words = caps_.row_words();
  for (std::size_t row = 0; row < caps_.row_count(); ++row) {
    const std::uint64_t* rw = words_.data() + row * row_words;
    for (std::size_t w = 0; w < row_words; ++w) {
      std::uint64_t bits = rw[w];
      while (bits) {
        const int bit = __builtin_ctzll(bits);
        bits &= bits - 1;
        exps[0] = static_cast<int>(w * 64) + bit;
        fn(std::span<const int>(exps));
      }
    }
    // odometer over (a2,...,ak)
    for (int i = 1; i < k; ++i) {
      if (++exps[static_cast<std::size_t>(i)] < caps_.cap(i + 1)) break;
      exps[static_cast<std::size_t>(i)] = 0;
    }
  }
}

}  // namespace makeev
