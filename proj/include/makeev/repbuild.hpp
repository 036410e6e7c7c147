#pragma once

#include <utility>
#include <vector>

#include "makeev/gf2poly.hpp"

// Constraint-block representations and their polynomials. A representation
// is a formal direct sum of blocks; its polynomial is the product of one
// linear form per 1-dimensional constituent, computed in a truncated ring.

namespace makeev {

struct Block {
  enum class Kind { Equip, Ortho };

  Kind kind = Kind::Equip;
  // Equip: every subset of `vars` of size 1..level contributes the linear
  // form summing its variables. level=1 on a suffix set is a bisection block.
  int level = 0;
  std::vector<int> vars;  // 1-based, strictly increasing
  // Ortho: one linear form ti+tj per pair (i<j).
  std::vector<std::pair<int, int>> pairs;
  int mult = 1;

  static Block equip(int level, std::vector<int> vars, int mult = 1);
  static Block ortho(std::vector<std::pair<int, int>> pairs, int mult = 1);
};

struct RepresentationSpec {
  int k = 0;
  std::vector<Block> blocks;
};

// Throws std::invalid_argument on malformed blocks (empty or non-increasing
// vars, level out of 1..|vars|, bad pair indices, nonpositive mult).
void validate(const Block& block, int k);
void validate(const RepresentationSpec& spec);

long long block_dimension(const Block& block);
// Total dimension, = total degree of the representation polynomial before
// truncation.
long long dimension(const RepresentationSpec& spec);

// Product of all weight-j linear forms over the named variables.
TruncatedPoly r_poly(int j, const std::vector<int>& vars, const DegreeCaps& caps);
// Product of r_poly(1..level): the full equipartition polynomial on `vars`.
TruncatedPoly equip_poly(int level, const std::vector<int>& vars, const DegreeCaps& caps);
// Product of ti+tj over the pairs; empty set gives 1.
TruncatedPoly ortho_poly(const std::vector<std::pair<int, int>>& pairs, const DegreeCaps& caps);

// Closed forms built term by term, for identity tests against the products:
// closed_p2k: sum over permutations of the exponent pattern (k, k-1, ..., 1).
TruncatedPoly closed_p2k(int k, const DegreeCaps& caps);
// closed_p34: the four S4 orbit sums with patterns (5,4,3,2), (7,4,2,1),
// (6,5,2,1), (6,4,3,1).
TruncatedPoly closed_p34(const DegreeCaps& caps);
// closed_p33: the S3 orbit with pattern (4,2,1).
TruncatedPoly closed_p33(const DegreeCaps& caps);

TruncatedPoly block_poly(const Block& block, const DegreeCaps& caps);  // mult applied
// Product over blocks, folded smallest-support-first; multiplicities are
// applied per block via pow so 2-power multiplicities ride on Frobenius
// squaring.
TruncatedPoly build_U(const RepresentationSpec& spec, const DegreeCaps& caps);

}  // namespace makeev
