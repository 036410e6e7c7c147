#pragma once

#include <cstdint>
#include <vector>

// Discrete-mass side: region masses of a hyperplane arrangement, Fourier
// coefficients over the sign cube, the l-of-k equipartition verdict, and a
// seeded annealed solver that looks for (orthogonal) equipartitioning
// arrangements of weighted point clouds.

namespace makeev {

// <u,a> = b with |a|^2 + b^2 = 1 and a != 0 (no hyperplanes at infinity).
struct Hyperplane {
  std::vector<double> a;
  double b = 0.0;
};

struct HyperplaneArrangement {
  int dim = 0;
  std::vector<Hyperplane> hyperplanes;
};

struct WeightedPointCloud {
  int dim = 0;
  std::vector<std::vector<double>> points;
  std::vector<double> weights;  // positive

  double total_weight() const;
  // bounding-box diagonal; the scale for boundary tolerances
  double diameter() const;
};

// Throw std::invalid_argument on violated invariants.
void validate(const Hyperplane& h, int dim);
void validate(const HyperplaneArrangement& arrangement);
void validate(const WeightedPointCloud& cloud);

// chi_h(g) = (-1)^<h,g> on the sign cube; h, g are bitmasks with bit i-1
// holding the i-th coordinate.
int character(std::uint32_t h, std::uint32_t g);

// Nonzero h of Hamming weight <= ell, ascending.
std::vector<std::uint32_t> low_weight_characters(int k, int ell);

double default_boundary_eps(const WeightedPointCloud& cloud);

// Mass of each of the 2^k closed regions, indexed by the side bitmask g
// (bit i-1 set = negative side of hyperplane i). A point within boundary_eps
// of a hyperplane contributes half its weight to each side, so the total is
// conserved. boundary_eps < 0 selects the per-cloud default.
std::vector<double> region_masses(const HyperplaneArrangement& arrangement,
                                  const WeightedPointCloud& cloud, double boundary_eps = -1.0);

// c_h = 2^-k sum_g f(g) chi_h(g), for a table over all 2^k sign vectors.
std::vector<double> fourier_coefficients(const std::vector<double>& region_table);

struct FourierReport {
  int k = 0;
  int ell = 0;
  double rel_tol = 0.0;
  std::vector<std::uint32_t> constraint_set;         // the low-weight characters
  std::vector<double> totals;                        // per mass
  std::vector<std::vector<double>> region_tables;    // per mass
  std::vector<std::vector<double>> coefficients;     // per mass, indexed by h
  std::vector<double> max_residuals;                 // per mass, over the constraint set
  std::vector<bool> verdicts;                        // per mass

  bool all_pass() const;
};

// Every l-subset of the hyperplanes equipartitions mass i iff c_h vanishes
// over the constraint set; the verdict tests max |c_h| <= rel_tol * total/2^k.
FourierReport check_equipartition(const HyperplaneArrangement& arrangement,
                                  const std::vector<WeightedPointCloud>& masses, int ell,
                                  double rel_tol, double boundary_eps = -1.0);

struct OrthogonalityCheck {
  int r = 0, s = 0;       // 1-based hyperplane indices, r < s
  double inner = 0.0;     // <a_r, a_s>
  bool ok = false;
};

std::vector<OrthogonalityCheck> check_orthogonality(const HyperplaneArrangement& arrangement,
                                                    double tol);

struct SolveOptions {
  int restarts = 20;
  std::uint64_t seed = 0;
  bool orthogonal = false;
  int stages = 5;            // annealing stages
  double temp_factor = 0.2;  // temperature decay per stage
  int iters_per_stage = 200;
  double initial_temp = -1.0;  // < 0: 0.2 * largest cloud diameter
  unsigned threads = 0;        // restart parallelism; 0 = hardware
};

struct SolveResult {
  HyperplaneArrangement arrangement;
  double residual_rel = 0.0;    // max_i max_h |c_h(f_i)| / (total_i / 2^k), exact rule
  double residual_abs = 0.0;    // max_i max_h |c_h(f_i)|
  double ortho_residual = 0.0;  // max |<a_r,a_s>|, 0 when orthogonality is off
  int best_restart = -1;
};

// Best-of-restarts minimization of the smoothed squared Fourier residual
// (logistic half-space indicators, temperature annealed per stage) plus the
// squared pairwise normal inner products when orthogonal. Deterministic for
// a fixed seed: restart r uses a generator derived from (seed, r), and ties
// are broken by the lowest restart index. The reported residuals always come
// from the exact boundary-split rule.
SolveResult solve_arrangement(const std::vector<WeightedPointCloud>& masses, int k, int ell,
                              const SolveOptions& options);

}  // namespace makeev
