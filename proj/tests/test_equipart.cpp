#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>
#include <random>

#include "makeev/equipart.hpp"

using namespace makeev;

namespace {

Hyperplane coordinate_plane(int dim, int axis, double offset = 0.0) {
  Hyperplane h;
  h.a.assign(static_cast<std::size_t>(dim), 0.0);
  h.a[static_cast<std::size_t>(axis)] = 1.0;
  h.b = offset;
  const double nrm = std::sqrt(1.0 + offset * offset);
  for (double& c : h.a) c /= nrm;
  h.b /= nrm;
  return h;
}

WeightedPointCloud random_cloud(int dim, int n, std::mt19937_64& rng, bool dyadic_weights = false) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_int_distribution<int> scaled(1, 1 << 12);
  WeightedPointCloud cloud;
  cloud.dim = dim;
  for (int i = 0; i < n; ++i) {
    std::vector<double> p(static_cast<std::size_t>(dim));
    for (double& c : p) c = gauss(rng);
    cloud.points.push_back(std::move(p));
    cloud.weights.push_back(dyadic_weights ? std::ldexp(scaled(rng), -12)
                                           : std::uniform_real_distribution<double>(0.1, 2.0)(rng));
  }
  return cloud;
}

// independent oracle: for each region, loop over points and test membership
// of each closed half-space, on-plane points counting half per side
std::vector<double> region_masses_brute(const HyperplaneArrangement& arr,
                                        const WeightedPointCloud& cloud, double eps) {
  const int k = static_cast<int>(arr.hyperplanes.size());
  std::vector<double> out(std::size_t(1) << k, 0.0);
  for (std::uint32_t g = 0; g < out.size(); ++g) {
    for (std::size_t p = 0; p < cloud.points.size(); ++p) {
      double contrib = cloud.weights[p];
      for (int i = 0; i < k && contrib != 0.0; ++i) {
        double s = -arr.hyperplanes[static_cast<std::size_t>(i)].b;
        for (int c = 0; c < cloud.dim; ++c)
          s += arr.hyperplanes[static_cast<std::size_t>(i)].a[static_cast<std::size_t>(c)] *
               cloud.points[p][static_cast<std::size_t>(c)];
        if (std::abs(s) <= eps)
          contrib *= 0.5;
        else if ((g >> i & 1) == (s > 0 ? 1u : 0u))
          contrib = 0.0;
      }
      out[g] += contrib;
    }
  }
  return out;
}

// random rotation via Gram-Schmidt on a Gaussian matrix
std::vector<std::vector<double>> random_rotation(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<std::vector<double>> q(static_cast<std::size_t>(dim),
                                     std::vector<double>(static_cast<std::size_t>(dim)));
  for (auto& row : q)
    for (double& v : row) v = gauss(rng);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < i; ++j) {
      double proj = 0.0;
      for (int c = 0; c < dim; ++c)
        proj += q[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] *
                q[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)];
      for (int c = 0; c < dim; ++c)
        q[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] -=
            proj * q[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)];
    }
    double nrm = 0.0;
    for (int c = 0; c < dim; ++c)
      nrm += q[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] *
             q[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
    nrm = std::sqrt(nrm);
    for (int c = 0; c < dim; ++c) q[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] /= nrm;
  }
  return q;
}

std::vector<double> apply_matrix(const std::vector<std::vector<double>>& m,
                                 const std::vector<double>& v) {
  std::vector<double> out(m.size(), 0.0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  return out;
}

// cloud whose first k coordinates are symmetric under sign flips: an exact
// equipartition witness for the k coordinate hyperplanes
WeightedPointCloud symmetric_cloud(int dim, int k, int orbits, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coord(0.25, 2.0);
  std::uniform_int_distribution<int> scaled(1, 1 << 10);
  WeightedPointCloud cloud;
  cloud.dim = dim;
  for (int o = 0; o < orbits; ++o) {
    std::vector<double> base(static_cast<std::size_t>(dim));
    for (double& c : base) c = coord(rng);
    const double w = std::ldexp(scaled(rng), -10);
    for (std::uint32_t signs = 0; signs < (1u << k); ++signs) {
      std::vector<double> p = base;
      for (int i = 0; i < k; ++i)
        if (signs >> i & 1) p[static_cast<std::size_t>(i)] = -p[static_cast<std::size_t>(i)];
      cloud.points.push_back(std::move(p));
      cloud.weights.push_back(w);
    }
  }
  return cloud;
}

bool brute_subset_equipartition(const HyperplaneArrangement& arr, const WeightedPointCloud& cloud,
                                int ell, double rel_tol) {
  const int k = static_cast<int>(arr.hyperplanes.size());
  const double total = cloud.total_weight();
  std::vector<int> subset;
  // iterate all l-subsets via bitmasks
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    if (std::popcount(mask) != ell) continue;
    HyperplaneArrangement sub;
    sub.dim = arr.dim;
    for (int i = 0; i < k; ++i)
      if (mask >> i & 1) sub.hyperplanes.push_back(arr.hyperplanes[static_cast<std::size_t>(i)]);
    const auto f = region_masses(sub, cloud);
    const double want = std::ldexp(total, -ell);
    for (double v : f)
      if (std::abs(v - want) > rel_tol * want) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("characters") {
  CHECK(character(0b11, 0b11) == 1);
  for (std::uint32_t g = 0; g < 8; ++g) CHECK(character(0, g) == 1);
  for (int k = 1; k <= 4; ++k) {
    for (std::uint32_t h = 0; h < (1u << k); ++h)
      for (std::uint32_t h2 = 0; h2 < (1u << k); ++h2) {
        int sum = 0;
        for (std::uint32_t g = 0; g < (1u << k); ++g) sum += character(h, g) * character(h2, g);
        CHECK(sum == (h == h2 ? 1 << k : 0));
      }
  }
}

TEST_CASE("constraint set sizes") {
  CHECK(low_weight_characters(3, 2).size() == 6);
  CHECK(low_weight_characters(4, 3).size() == 14);
  CHECK(low_weight_characters(5, 3).size() == 25);
}

TEST_CASE("quadrant fixture") {
  WeightedPointCloud cloud;
  cloud.dim = 2;
  for (double sx : {1.0, -1.0})
    for (double sy : {1.0, -1.0}) {
      cloud.points.push_back({sx, sy});
      cloud.weights.push_back(1.0);
    }
  HyperplaneArrangement arr;
  arr.dim = 2;
  arr.hyperplanes = {coordinate_plane(2, 0), coordinate_plane(2, 1)};

  const auto f = region_masses(arr, cloud);
  for (double v : f) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));

  const auto c = fourier_coefficients(f);
  CHECK(c[0] == doctest::Approx(1.0));
  for (std::size_t h = 1; h < c.size(); ++h) CHECK(std::abs(c[h]) <= 1e-15);

  const FourierReport report = check_equipartition(arr, {cloud}, 2, 1e-12);
  CHECK(report.all_pass());
}

TEST_CASE("boundary split rule") {
  WeightedPointCloud cloud;
  cloud.dim = 1;
  cloud.points = {{0.0}};
  cloud.weights = {1.0};
  HyperplaneArrangement arr;
  arr.dim = 1;
  arr.hyperplanes = {coordinate_plane(1, 0)};
  const auto f = region_masses(arr, cloud);
  CHECK(f[0] == 0.5);
  CHECK(f[1] == 0.5);
}

TEST_CASE("region masses agree with the brute-force oracle") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    const auto cloud = random_cloud(2, 30, rng);
    HyperplaneArrangement arr;
    arr.dim = 2;
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int i = 0; i < 2; ++i) {
      Hyperplane h;
      h.a = {gauss(rng), gauss(rng)};
      h.b = 0.3 * gauss(rng);
      const double nrm = std::sqrt(h.a[0] * h.a[0] + h.a[1] * h.a[1] + h.b * h.b);
      h.a[0] /= nrm;
      h.a[1] /= nrm;
      h.b /= nrm;
      arr.hyperplanes.push_back(h);
    }
    const double eps = default_boundary_eps(cloud);
    const auto fast = region_masses(arr, cloud, eps);
    const auto brute = region_masses_brute(arr, cloud, eps);
    REQUIRE(fast.size() == brute.size());
    for (std::size_t g = 0; g < fast.size(); ++g)
      CHECK(fast[g] == doctest::Approx(brute[g]).epsilon(1e-12));
  }
}

TEST_CASE("mass conservation") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto cloud = random_cloud(3, 40, rng, /*dyadic=*/true);
    HyperplaneArrangement arr;
    arr.dim = 3;
    arr.hyperplanes = {coordinate_plane(3, 0), coordinate_plane(3, 1, 0.1),
                       coordinate_plane(3, 2, -0.2)};
    const auto f = region_masses(arr, cloud);
    double sum = 0.0;
    for (double v : f) sum += v;
    CHECK(sum == cloud.total_weight());  // dyadic weights: exact
  }
}

TEST_CASE("fourier coefficients") {
  // equal table
  std::vector<double> flat(8, 2.0);
  const auto c = fourier_coefficients(flat);
  CHECK(c[0] == doctest::Approx(2.0));
  for (std::size_t h = 1; h < 8; ++h) CHECK(c[h] == doctest::Approx(0.0));

  // Parseval on random tables
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> f(16);
    for (double& v : f) v = unif(rng);
    const auto coeffs = fourier_coefficients(f);
    double lhs = 0.0, rhs = 0.0;
    for (double v : coeffs) lhs += v * v;
    for (double v : f) rhs += v * v;
    CHECK(lhs == doctest::Approx(rhs / 16.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(fourier_coefficients(std::vector<double>(3, 0.0)), std::invalid_argument);
}

TEST_CASE("orthogonality checks") {
  HyperplaneArrangement arr;
  arr.dim = 3;
  arr.hyperplanes = {coordinate_plane(3, 0), coordinate_plane(3, 1), coordinate_plane(3, 2)};
  for (const auto& c : check_orthogonality(arr, 1e-12)) CHECK(c.ok);

  HyperplaneArrangement same;
  same.dim = 3;
  same.hyperplanes = {coordinate_plane(3, 0), coordinate_plane(3, 0, 0.5)};
  const auto checks = check_orthogonality(same, 1e-9);
  REQUIRE(checks.size() == 1);
  CHECK_FALSE(checks[0].ok);

  // verdicts are rotation invariant
  std::mt19937_64 rng(5);
  const auto rot = random_rotation(3, rng);
  HyperplaneArrangement rotated;
  rotated.dim = 3;
  for (const auto& h : arr.hyperplanes) {
    Hyperplane r;
    r.a = apply_matrix(rot, h.a);
    r.b = h.b;
    rotated.hyperplanes.push_back(r);
  }
  for (const auto& c : check_orthogonality(rotated, 1e-9)) CHECK(c.ok);
}

TEST_CASE("negating a hyperplane acts on the table and flips coefficients") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const auto cloud = random_cloud(3, 25, rng);
    HyperplaneArrangement arr;
    arr.dim = 3;
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int i = 0; i < 3; ++i) {
      Hyperplane h;
      h.a = {gauss(rng), gauss(rng), gauss(rng)};
      h.b = 0.2 * gauss(rng);
      double nrm = h.b * h.b;
      for (double v : h.a) nrm += v * v;
      nrm = std::sqrt(nrm);
      for (double& v : h.a) v /= nrm;
      h.b /= nrm;
      arr.hyperplanes.push_back(h);
    }
    const auto f = region_masses(arr, cloud);
    const auto c = fourier_coefficients(f);
    for (int flip = 0; flip < 3; ++flip) {
      HyperplaneArrangement neg = arr;
      for (double& v : neg.hyperplanes[static_cast<std::size_t>(flip)].a) v = -v;
      neg.hyperplanes[static_cast<std::size_t>(flip)].b *= -1.0;
      const auto f2 = region_masses(neg, cloud);
      const auto c2 = fourier_coefficients(f2);
      for (std::uint32_t g = 0; g < f.size(); ++g)
        CHECK(f2[g] == doctest::Approx(f[g ^ (1u << flip)]).epsilon(1e-12));
      for (std::uint32_t h = 0; h < c.size(); ++h) {
        const double expect = (h >> flip & 1) ? -c[h] : c[h];
        CHECK(c2[h] == doctest::Approx(expect).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("rigid motions leave verdicts unchanged") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 8; ++trial) {
    const int dim = 3;
    const auto cloud = symmetric_cloud(dim, 2, 6, rng);
    HyperplaneArrangement arr;
    arr.dim = dim;
    arr.hyperplanes = {coordinate_plane(dim, 0), coordinate_plane(dim, 1)};
    const FourierReport before = check_equipartition(arr, {cloud}, 2, 1e-9);
    CHECK(before.all_pass());

    const auto rot = random_rotation(dim, rng);
    std::uniform_real_distribution<double> shift(-1.0, 1.0);
    std::vector<double> tr{shift(rng), shift(rng), shift(rng)};

    WeightedPointCloud moved;
    moved.dim = dim;
    moved.weights = cloud.weights;
    for (const auto& p : cloud.points) {
      auto q = apply_matrix(rot, p);
      for (int c = 0; c < dim; ++c) q[static_cast<std::size_t>(c)] += tr[static_cast<std::size_t>(c)];
      moved.points.push_back(std::move(q));
    }
    HyperplaneArrangement moved_arr;
    moved_arr.dim = dim;
    for (const auto& h : arr.hyperplanes) {
      Hyperplane r;
      r.a = apply_matrix(rot, h.a);
      double dot_at = 0.0;
      for (int c = 0; c < dim; ++c) dot_at += r.a[static_cast<std::size_t>(c)] * tr[static_cast<std::size_t>(c)];
      r.b = h.b + dot_at;
      double nrm = r.b * r.b;
      for (double v : r.a) nrm += v * v;
      nrm = std::sqrt(nrm);
      for (double& v : r.a) v /= nrm;
      r.b /= nrm;
      moved_arr.hyperplanes.push_back(r);
    }
    const FourierReport after = check_equipartition(moved_arr, {moved}, 2, 1e-9);
    CHECK(after.all_pass() == before.all_pass());
  }
}

TEST_CASE("fourier verdict matches subset brute force both ways") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    std::uniform_int_distribution<int> pick_k(2, 4);
    const int k = pick_k(rng);
    std::uniform_int_distribution<int> pick_l(1, k);
    const int ell = pick_l(rng);
    const int dim = k;
    auto cloud = symmetric_cloud(dim, k, 5, rng);
    HyperplaneArrangement arr;
    arr.dim = dim;
    for (int i = 0; i < k; ++i) arr.hyperplanes.push_back(coordinate_plane(dim, i));

    CHECK(check_equipartition(arr, {cloud}, ell, 1e-9).all_pass());
    CHECK(brute_subset_equipartition(arr, cloud, ell, 1e-9));

    // perturb: one extra point strictly inside a region breaks every c_h
    cloud.points.push_back(std::vector<double>(static_cast<std::size_t>(dim), 0.5));
    cloud.weights.push_back(1.0);
    CHECK_FALSE(check_equipartition(arr, {cloud}, ell, 1e-9).all_pass());
    CHECK_FALSE(brute_subset_equipartition(arr, cloud, ell, 1e-9));
  }
}

TEST_CASE("validation") {
  WeightedPointCloud bad;
  bad.dim = 2;
  bad.points = {{1.0, 2.0}};
  bad.weights = {0.0};
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);

  Hyperplane h;
  h.a = {1.0, 1.0};
  h.b = 0.0;
  CHECK_THROWS_AS(validate(h, 2), std::invalid_argument);  // not unit
  Hyperplane inf;
  inf.a = {0.0};
  inf.b = 1.0;
  CHECK_THROWS_AS(validate(inf, 1), std::invalid_argument);
}

TEST_CASE("solver finds a ham-sandwich cut (smoke)") {
  std::mt19937_64 rng(4242);
  std::vector<WeightedPointCloud> masses{random_cloud(2, 16, rng), random_cloud(2, 16, rng)};
  for (auto& m : masses) m.weights.assign(m.weights.size(), 1.0);
  SolveOptions opts;
  opts.restarts = 8;
  opts.seed = 1;
  const SolveResult res = solve_arrangement(masses, 1, 1, opts);
  CHECK(res.residual_rel <= 0.07);

  // determinism: same seed, same result
  const SolveResult res2 = solve_arrangement(masses, 1, 1, opts);
  CHECK(res.residual_rel == res2.residual_rel);
  CHECK(res.best_restart == res2.best_restart);
  CHECK(res.arrangement.hyperplanes[0].a == res2.arrangement.hyperplanes[0].a);
}
