#include "makeev/equipart.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "makeev/parallel.hpp"

namespace makeev {

namespace {

constexpr int kMaxHyperplanes = 20;  // region tables are dense in 2^k

double dot(const double* a, const double* b, int d) {
  double s = 0.0;
  for (int i = 0; i < d; ++i) s += a[i] * b[i];
  return s;
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

double WeightedPointCloud::total_weight() const {
  double t = 0.0;
  for (double w : weights) t += w;
  return t;
}

double WeightedPointCloud::diameter() const {
  if (points.empty()) return 0.0;
  const std::size_t d = points.front().size();
  std::vector<double> lo(points.front()), hi(points.front());
  for (const auto& p : points)
    for (std::size_t i = 0; i < d; ++i) {
      lo[i] = std::min(lo[i], p[i]);
      hi[i] = std::max(hi[i], p[i]);
    }
  double sq = 0.0;
  for (std::size_t i = 0; i < d; ++i) sq += (hi[i] - lo[i]) * (hi[i] - lo[i]);
  return std::sqrt(sq);
}

void validate(const Hyperplane& h, int dim) {
  if (static_cast<int>(h.a.size()) != dim)
    throw std::invalid_argument("hyperplane normal has wrong dimension");
  const double na = dot(h.a.data(), h.a.data(), dim);
  if (na == 0.0)
    throw std::invalid_argument("hyperplane at infinity (zero normal) is not allowed");
  if (std::abs(na + h.b * h.b - 1.0) > 1e-12)
    throw std::invalid_argument("hyperplane (a,b) must lie on the unit sphere");
}

void validate(const HyperplaneArrangement& arrangement) {
  if (arrangement.dim < 1) throw std::invalid_argument("arrangement dimension must be >= 1");
  if (arrangement.hyperplanes.empty())
    throw std::invalid_argument("arrangement needs at least one hyperplane");
  if (static_cast<int>(arrangement.hyperplanes.size()) > kMaxHyperplanes)
    throw std::invalid_argument("too many hyperplanes for dense region tables");
  for (const auto& h : arrangement.hyperplanes) validate(h, arrangement.dim);
}

void validate(const WeightedPointCloud& cloud) {
  if (cloud.dim < 1) throw std::invalid_argument("point cloud dimension must be >= 1");
  if (cloud.points.size() != cloud.weights.size())
    throw std::invalid_argument("point and weight counts differ");
  for (const auto& p : cloud.points)
    if (static_cast<int>(p.size()) != cloud.dim)
      throw std::invalid_argument("point has wrong dimension");
  double total = 0.0;
  for (double w : cloud.weights) {
    if (!(w > 0.0)) throw std::invalid_argument("weights must be positive");
    total += w;
  }
  if (!(total > 0.0)) throw std::invalid_argument("total weight must be positive");
}

int character(std::uint32_t h, std::uint32_t g) {
  return (std::popcount(h & g) & 1) ? -1 : 1;
}

std::vector<std::uint32_t> low_weight_characters(int k, int ell) {
  if (k < 1 || k > kMaxHyperplanes || ell < 1 || ell > k)
    throw std::invalid_argument("low_weight_characters: requires 1 <= l <= k");
  std::vector<std::uint32_t> out;
  for (std::uint32_t h = 1; h < (1u << k); ++h)
    if (std::popcount(h) <= ell) out.push_back(h);
  return out;
}

double default_boundary_eps(const WeightedPointCloud& cloud) {
  const double diam = cloud.diameter();
  return diam > 0.0 ? 1e-9 * diam : 1e-9;
}

std::vector<double> region_masses(const HyperplaneArrangement& arrangement,
                                  const WeightedPointCloud& cloud, double boundary_eps) {
  validate(arrangement);
  validate(cloud);
  if (arrangement.dim != cloud.dim)
    throw std::invalid_argument("arrangement and cloud dimensions differ");
  const int k = static_cast<int>(arrangement.hyperplanes.size());
  const double eps = boundary_eps < 0.0 ? default_boundary_eps(cloud) : boundary_eps;
  std::vector<double> out(std::size_t(1) << k, 0.0);
  std::vector<int> on_planes;
  for (std::size_t p = 0; p < cloud.points.size(); ++p) {
    const double* x = cloud.points[p].data();
    std::uint32_t base = 0;
    on_planes.clear();
    for (int i = 0; i < k; ++i) {
      const Hyperplane& h = arrangement.hyperplanes[static_cast<std::size_t>(i)];
      const double s = dot(h.a.data(), x, cloud.dim) - h.b;
      if (std::abs(s) <= eps)
        on_planes.push_back(i);
      else if (s < 0)
        base |= 1u << i;
    }
    // half the weight to each side of every touched hyperplane; the shares
    // are exact halvings, so the region table sums back to the total
    const double share = std::ldexp(cloud.weights[p], -static_cast<int>(on_planes.size()));
    const std::uint32_t m = 1u << on_planes.size();
    for (std::uint32_t sub = 0; sub < m; ++sub) {
      std::uint32_t g = base;
      for (std::size_t j = 0; j < on_planes.size(); ++j)
        if (sub & (1u << j)) g |= 1u << on_planes[static_cast<std::size_t>(j)];
      out[g] += share;
    }
  }
  return out;
}

std::vector<double> fourier_coefficients(const std::vector<double>& region_table) {
  const std::size_t n = region_table.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw std::invalid_argument("fourier_coefficients: table size must be a power of two");
  const int k = std::countr_zero(n);
  std::vector<double> c(n, 0.0);
  for (std::uint32_t h = 0; h < n; ++h) {
    double acc = 0.0;
    for (std::uint32_t g = 0; g < n; ++g)
      acc += character(h, g) * region_table[g];
    c[h] = std::ldexp(acc, -k);
  }
  return c;
}

bool FourierReport::all_pass() const {
  for (bool v : verdicts)
    if (!v) return false;
  return true;
}

FourierReport check_equipartition(const HyperplaneArrangement& arrangement,
                                  const std::vector<WeightedPointCloud>& masses, int ell,
                                  double rel_tol, double boundary_eps) {
  validate(arrangement);
  if (masses.empty()) throw std::invalid_argument("check_equipartition: no masses given");
  const int k = static_cast<int>(arrangement.hyperplanes.size());
  if (ell < 1 || ell > k) throw std::invalid_argument("check_equipartition: requires 1 <= l <= k");
  FourierReport report;
  report.k = k;
  report.ell = ell;
  report.rel_tol = rel_tol;
  report.constraint_set = low_weight_characters(k, ell);
  for (const WeightedPointCloud& cloud : masses) {
    std::vector<double> table = region_masses(arrangement, cloud, boundary_eps);
    std::vector<double> coeffs = fourier_coefficients(table);
    const double total = cloud.total_weight();
    double worst = 0.0;
    for (std::uint32_t h : report.constraint_set)
      worst = std::max(worst, std::abs(coeffs[h]));
    report.totals.push_back(total);
    report.region_tables.push_back(std::move(table));
    report.coefficients.push_back(std::move(coeffs));
    report.max_residuals.push_back(worst);
    report.verdicts.push_back(worst <= rel_tol * std::ldexp(total, -k));
  }
  return report;
}

std::vector<OrthogonalityCheck> check_orthogonality(const HyperplaneArrangement& arrangement,
                                                    double tol) {
  validate(arrangement);
  const int k = static_cast<int>(arrangement.hyperplanes.size());
  if (k < 2) throw std::invalid_argument("check_orthogonality: needs at least two hyperplanes");
  std::vector<OrthogonalityCheck> out;
  for (int r = 0; r < k; ++r)
    for (int s = r + 1; s < k; ++s) {
      OrthogonalityCheck c;
      c.r = r + 1;
      c.s = s + 1;
      c.inner = dot(arrangement.hyperplanes[static_cast<std::size_t>(r)].a.data(),
                    arrangement.hyperplanes[static_cast<std::size_t>(s)].a.data(),
                    arrangement.dim);
      c.ok = std::abs(c.inner) <= tol;
      out.push_back(c);
    }
  return out;
}

namespace {

// One restart of the annealed projected-gradient solver. The state is k unit
// vectors (a_i, b_i) in R^{d+1}, flattened.
class SmoothObjective {
 public:
  SmoothObjective(const std::vector<WeightedPointCloud>& masses, int k, int ell, bool ortho)
      : masses_(masses),
        k_(k),
        dim_(masses.front().dim),
        stride_(dim_ + 1),
        ortho_(ortho),
        chars_(low_weight_characters(k, ell)) {
    char_vars_.resize(chars_.size());
    for (std::size_t ci = 0; ci < chars_.size(); ++ci)
      for (int i = 0; i < k_; ++i)
        if (chars_[ci] & (1u << i)) char_vars_[ci].push_back(i);
    std::size_t max_pts = 0;
    for (const auto& c : masses_) max_pts = std::max(max_pts, c.points.size());
    tanh_buf_.resize(max_pts * static_cast<std::size_t>(k_));
    slope_buf_.resize(max_pts * static_cast<std::size_t>(k_));
    acc_.resize(chars_.size());
  }

  int state_size() const { return k_ * stride_; }

  // smoothed squared residual, all coefficients scaled to total/2^k = 1
  double eval(const double* x, double temp, double* grad) {
    if (grad) std::fill(grad, grad + state_size(), 0.0);
    double phi = 0.0;
    const double inv_2t = 1.0 / (2.0 * temp);
    for (const WeightedPointCloud& cloud : masses_) {
      const std::size_t n = cloud.points.size();
      const double inv_total = 1.0 / cloud.total_weight();
      std::fill(acc_.begin(), acc_.end(), 0.0);
      for (std::size_t p = 0; p < n; ++p) {
        const double* pt = cloud.points[p].data();
        for (int i = 0; i < k_; ++i) {
          const double* plane = x + i * stride_;
          const double s = dot(plane, pt, dim_) - plane[dim_];
          const double m = std::tanh(s * inv_2t);
          tanh_buf_[p * static_cast<std::size_t>(k_) + static_cast<std::size_t>(i)] = m;
          slope_buf_[p * static_cast<std::size_t>(k_) + static_cast<std::size_t>(i)] =
              (1.0 - m * m) * inv_2t;
        }
        const double wp = cloud.weights[p] * inv_total;
        for (std::size_t ci = 0; ci < chars_.size(); ++ci) {
          double prod = wp;
          for (int i : char_vars_[ci])
            prod *= tanh_buf_[p * static_cast<std::size_t>(k_) + static_cast<std::size_t>(i)];
          acc_[ci] += prod;
        }
      }
      for (double a : acc_) phi += a * a;
      if (grad) {
        for (std::size_t p = 0; p < n; ++p) {
          const double* pt = cloud.points[p].data();
          const double wp = cloud.weights[p] * inv_total;
          for (std::size_t ci = 0; ci < chars_.size(); ++ci) {
            const double coef = 2.0 * acc_[ci] * wp;
            for (int i : char_vars_[ci]) {
              double partial = coef *
                  slope_buf_[p * static_cast<std::size_t>(k_) + static_cast<std::size_t>(i)];
              for (int j : char_vars_[ci])
                if (j != i)
                  partial *=
                      tanh_buf_[p * static_cast<std::size_t>(k_) + static_cast<std::size_t>(j)];
              double* gi = grad + i * stride_;
              for (int c = 0; c < dim_; ++c) gi[c] += partial * pt[c];
              gi[dim_] -= partial;
            }
          }
        }
      }
    }
    if (ortho_) {
      for (int r = 0; r < k_; ++r)
        for (int s = r + 1; s < k_; ++s) {
          const double ip = dot(x + r * stride_, x + s * stride_, dim_);
          phi += ip * ip;
          if (grad) {
            for (int c = 0; c < dim_; ++c) {
              grad[r * stride_ + c] += 2.0 * ip * x[s * stride_ + c];
              grad[s * stride_ + c] += 2.0 * ip * x[r * stride_ + c];
            }
          }
        }
    }
    return phi;
  }

 private:
  const std::vector<WeightedPointCloud>& masses_;
  int k_, dim_, stride_;
  bool ortho_;
  std::vector<std::uint32_t> chars_;
  std::vector<std::vector<int>> char_vars_;
  std::vector<double> tanh_buf_, slope_buf_, acc_;
};

void normalize_planes(std::vector<double>& x, int k, int stride) {
  for (int i = 0; i < k; ++i) {
    double* v = x.data() + i * stride;
    const double nrm = std::sqrt(dot(v, v, stride));
    if (nrm > 1e-300)
      for (int c = 0; c < stride; ++c) v[c] /= nrm;
    else
      v[0] = 1.0;
  }
}

struct RestartResult {
  std::vector<double> state;
  double score = std::numeric_limits<double>::infinity();
  double residual_rel = 0.0;
  double residual_abs = 0.0;
  double ortho_residual = 0.0;
};

HyperplaneArrangement state_to_arrangement(const std::vector<double>& x, int k, int dim) {
  HyperplaneArrangement arr;
  arr.dim = dim;
  for (int i = 0; i < k; ++i) {
    Hyperplane h;
    h.a.assign(x.begin() + i * (dim + 1), x.begin() + i * (dim + 1) + dim);
    h.b = x[static_cast<std::size_t>(i * (dim + 1) + dim)];
    if (dot(h.a.data(), h.a.data(), dim) == 0.0) {
      // a degenerate iterate drifted to the hyperplane at infinity; tilt it
      h.a[0] = 1e-8;
      const double nrm = std::sqrt(dot(h.a.data(), h.a.data(), dim) + h.b * h.b);
      for (double& c : h.a) c /= nrm;
      h.b /= nrm;
    }
    arr.hyperplanes.push_back(std::move(h));
  }
  return arr;
}

}  // namespace

SolveResult solve_arrangement(const std::vector<WeightedPointCloud>& masses, int k, int ell,
                              const SolveOptions& options) {
  if (masses.empty()) throw std::invalid_argument("solve_arrangement: no masses given");
  for (const auto& c : masses) validate(c);
  const int dim = masses.front().dim;
  for (const auto& c : masses)
    if (c.dim != dim) throw std::invalid_argument("solve_arrangement: masses must share a dimension");
  if (k < 1 || k > kMaxHyperplanes || ell < 1 || ell > k)
    throw std::invalid_argument("solve_arrangement: requires 1 <= l <= k");
  if (options.restarts < 1 || options.stages < 1 || options.iters_per_stage < 1)
    throw std::invalid_argument("solve_arrangement: counts must be positive");

  double scale = 0.0;
  for (const auto& c : masses) scale = std::max(scale, c.diameter());
  if (scale <= 0.0) scale = 1.0;
  const double temp0 = options.initial_temp > 0.0 ? options.initial_temp : 0.2 * scale;

  const int stride = dim + 1;
  const auto chars = low_weight_characters(k, ell);

  std::vector<RestartResult> results(static_cast<std::size_t>(options.restarts));
  parallel_for(
      static_cast<std::size_t>(options.restarts),
      [&](std::size_t restart) {
        SmoothObjective objective(masses, k, ell, options.orthogonal);
        std::mt19937_64 rng(splitmix64(options.seed + 0x9E3779B97F4A7C15ULL * (restart + 1)));
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::vector<double> x(static_cast<std::size_t>(k * stride));
        for (double& v : x) v = gauss(rng);
        normalize_planes(x, k, stride);

        std::vector<double> grad(x.size()), cand(x.size());
        for (int stage = 0; stage < options.stages; ++stage) {
          const double temp = temp0 * std::pow(options.temp_factor, stage);
          double eta = 0.25;
          double phi = objective.eval(x.data(), temp, grad.data());
          for (int iter = 0; iter < options.iters_per_stage; ++iter) {
            // project the gradient onto the tangent spaces of the k spheres
            double gnorm_sq = 0.0;
            for (int i = 0; i < k; ++i) {
              double* gi = grad.data() + i * stride;
              const double* xi = x.data() + i * stride;
              const double proj = dot(gi, xi, stride);
              for (int c = 0; c < stride; ++c) gi[c] -= proj * xi[c];
              gnorm_sq += dot(gi, gi, stride);
            }
            if (gnorm_sq < 1e-26) break;
            for (std::size_t c = 0; c < x.size(); ++c) cand[c] = x[c] - eta * grad[c];
            normalize_planes(cand, k, stride);
            const double phi_cand = objective.eval(cand.data(), temp, nullptr);
            if (phi_cand < phi) {
              x.swap(cand);
              phi = objective.eval(x.data(), temp, grad.data());
              eta *= 1.3;
            } else {
              eta *= 0.5;
              if (eta < 1e-13) break;
            }
          }
        }

        RestartResult& res = results[restart];
        res.state = x;
        const HyperplaneArrangement arr = state_to_arrangement(x, k, dim);
        double rel = 0.0, abs_res = 0.0;
        for (const auto& cloud : masses) {
          const auto coeffs = fourier_coefficients(region_masses(arr, cloud, -1.0));
          const double unit = std::ldexp(cloud.total_weight(), -k);
          for (std::uint32_t h : chars) {
            abs_res = std::max(abs_res, std::abs(coeffs[h]));
            rel = std::max(rel, std::abs(coeffs[h]) / unit);
          }
        }
        res.residual_rel = rel;
        res.residual_abs = abs_res;
        if (options.orthogonal) {
          for (int r = 0; r < k; ++r)
            for (int s = r + 1; s < k; ++s)
              res.ortho_residual = std::max(
                  res.ortho_residual,
                  std::abs(dot(x.data() + r * stride, x.data() + s * stride, dim)));
        }
        res.score = std::max(rel, res.ortho_residual);
      },
      options.threads);

  std::size_t best = 0;
  for (std::size_t r = 1; r < results.size(); ++r)
    if (results[r].score < results[best].score) best = r;

  SolveResult out;
  out.arrangement = state_to_arrangement(results[best].state, k, dim);
  out.residual_rel = results[best].residual_rel;
  out.residual_abs = results[best].residual_abs;
  out.ortho_residual = results[best].ortho_residual;
  out.best_restart = static_cast<int>(best);
  return out;
}

}  // namespace makeev
