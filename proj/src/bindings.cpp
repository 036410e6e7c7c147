#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "makeev/bounds.hpp"
#include "makeev/certify.hpp"
#include "makeev/equipart.hpp"
#include "makeev/gf2poly.hpp"
#include "makeev/repbuild.hpp"

namespace py = pybind11;
using namespace makeev;

namespace {

TruncatedPoly py_monomial(const DegreeCaps& caps, const std::vector<int>& exps) {
  return TruncatedPoly::monomial(caps, exps);
}

TruncatedPoly py_linear_form(const DegreeCaps& caps, const std::vector<int>& coeffs) {
  return TruncatedPoly::linear_form(caps, coeffs);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact GF(2) equipartition certificates and discrete-mass verification";

  py::register_exception<ResourceError>(m, "ResourceError");

  m.def("cell_limit", &cell_limit);
  m.def("set_cell_limit", &set_cell_limit, py::arg("limit"));

  py::class_<DegreeCaps>(m, "DegreeCaps")
      .def(py::init<std::vector<int>>(), py::arg("caps"))
      .def_static("uniform", &DegreeCaps::uniform, py::arg("k"), py::arg("cap"))
      .def_property_readonly("k", &DegreeCaps::var_count)
      .def_property_readonly("caps", &DegreeCaps::caps)
      .def_property_readonly("cells", &DegreeCaps::cell_count)
      .def(py::self == py::self);

  py::class_<TruncatedPoly>(m, "TruncatedPoly")
      .def_static("zero", &TruncatedPoly::zero, py::arg("caps"))
      .def_static("one", &TruncatedPoly::one, py::arg("caps"))
      .def_static("monomial", &py_monomial, py::arg("caps"), py::arg("exponents"))
      .def_static("linear_form", &py_linear_form, py::arg("caps"), py::arg("coeffs"))
      .def_property_readonly("caps", &TruncatedPoly::caps)
      .def("is_zero", &TruncatedPoly::is_zero)
      .def("support_size", &TruncatedPoly::support_size)
      .def("max_degree", &TruncatedPoly::max_degree, py::arg("var"))
      .def("coeff", [](const TruncatedPoly& p, const std::vector<int>& e) { return p.coeff(e); },
           py::arg("exponents"))
      .def("is_target_monomial",
           [](const TruncatedPoly& p, const std::vector<int>& e) { return p.is_target_monomial(e); },
           py::arg("exponents"))
      .def("squared", &TruncatedPoly::squared)
      .def("__str__", &TruncatedPoly::to_string)
      .def("__repr__", [](const TruncatedPoly& p) { return "TruncatedPoly(" + p.to_string() + ")"; })
      .def("__add__", [](const TruncatedPoly& p, const TruncatedPoly& q) { return add(p, q); })
      .def("__mul__", [](const TruncatedPoly& p, const TruncatedPoly& q) { return mul(p, q); })
      .def("__pow__", [](const TruncatedPoly& p, long long e) { return pow(p, e); })
      .def(py::self == py::self);

  m.def("add", &add);
  m.def("mul", &mul);
  m.def("mul_naive", &mul_naive);
  m.def("pow", [](const TruncatedPoly& p, long long e) { return pow(p, e); });

  py::class_<Block>(m, "Block")
      .def_static("equip", &Block::equip, py::arg("level"), py::arg("vars"), py::arg("mult") = 1)
      .def_static("ortho", &Block::ortho, py::arg("pairs"), py::arg("mult") = 1)
      .def_readonly("level", &Block::level)
      .def_readonly("vars", &Block::vars)
      .def_readonly("pairs", &Block::pairs)
      .def_readonly("mult", &Block::mult);

  py::class_<RepresentationSpec>(m, "RepresentationSpec")
      .def(py::init([](int k, std::vector<Block> blocks) {
             RepresentationSpec spec{k, std::move(blocks)};
             validate(spec);
             return spec;
           }),
           py::arg("k"), py::arg("blocks"))
      .def_readonly("k", &RepresentationSpec::k)
      .def_readonly("blocks", &RepresentationSpec::blocks);

  m.def("dimension", py::overload_cast<const RepresentationSpec&>(&dimension));
  m.def("r_poly", &r_poly, py::arg("j"), py::arg("vars"), py::arg("caps"));
  m.def("equip_poly", &equip_poly, py::arg("level"), py::arg("vars"), py::arg("caps"));
  m.def("ortho_poly", &ortho_poly, py::arg("pairs"), py::arg("caps"));
  m.def("closed_p2k", &closed_p2k, py::arg("k"), py::arg("caps"));
  m.def("closed_p34", &closed_p34, py::arg("caps"));
  m.def("closed_p33", &closed_p33, py::arg("caps"));
  m.def("build_U", &build_U, py::arg("spec"), py::arg("caps"));

  py::enum_<CertStatus>(m, "CertStatus")
      .value("Certified", CertStatus::Certified)
      .value("NotCertified", CertStatus::NotCertified)
      .value("DimensionMismatch", CertStatus::DimensionMismatch);

  py::class_<CertificateResult>(m, "CertificateResult")
      .def_readonly("k", &CertificateResult::k)
      .def_readonly("d", &CertificateResult::d)
      .def_readonly("spec", &CertificateResult::spec)
      .def_readonly("dim_U", &CertificateResult::dim_u)
      .def_readonly("status", &CertificateResult::status)
      .def_readonly("residual_support", &CertificateResult::residual_support)
      .def_readonly("max_degrees", &CertificateResult::max_degrees)
      .def("__repr__", [](const CertificateResult& r) {
        return std::string("CertificateResult(") + to_string(r.status) +
               ", d=" + std::to_string(r.d) + ")";
      });

  m.def("certify_full_monomial", &certify_full_monomial, py::arg("spec"), py::arg("d"));
  m.def("bk_nonmembership", &bk_nonmembership, py::arg("m"), py::arg("l"), py::arg("k"),
        py::arg("d"), py::arg("staircase") = false);
  m.def(
      "preset_spec",
      [](const std::string& id, int k, int q, int t, int d) {
        const PresetExpansion exp = preset_spec({id, k, q, t, d});
        return py::make_tuple(exp.spec, exp.d, exp.m, exp.orthogonal);
      },
      py::arg("id"), py::arg("k") = 0, py::arg("q") = 0, py::arg("t") = 0, py::arg("d") = 0,
      "returns (spec, d, m, orthogonal)");
  m.def(
      "certify_preset",
      [](const std::string& id, int k, int q, int t, int d) {
        return certify_preset({id, k, q, t, d});
      },
      py::arg("id"), py::arg("k") = 0, py::arg("q") = 0, py::arg("t") = 0, py::arg("d") = 0);
  m.def(
      "minimal_certified_d",
      [](long long mm, int ell, int k, const std::string& policy, int d_max) {
        const SearchOutcome out = minimal_certified_d(mm, ell, k, parse_policy(policy), d_max);
        if (!out.found) return py::object(py::none());
        return py::object(py::make_tuple(out.result.d, out.result));
      },
      py::arg("m"), py::arg("l"), py::arg("k"), py::arg("policy") = "paper", py::arg("d_max") = 32,
      "returns (d, CertificateResult) or None");

  m.def("ramos_lower", &ramos_lower, py::arg("m"), py::arg("k"));
  m.def("mlz_upper", &mlz_upper, py::arg("m"), py::arg("k"));
  m.def("makeev_lower", &makeev_lower, py::arg("m"), py::arg("l"), py::arg("k"),
        py::arg("orthogonal") = false);
  m.def("bk_upper", &bk_upper, py::arg("m"), py::arg("l"), py::arg("k"));
  m.def(
      "theorem_upper",
      [](long long mm, int ell, int k, bool orthogonal) -> py::object {
        const auto v = theorem_upper(mm, ell, k, orthogonal);
        if (!v) return py::none();
        return py::int_(*v);
      },
      py::arg("m"), py::arg("l"), py::arg("k"), py::arg("orthogonal") = false);

  py::class_<BoundReport>(m, "BoundReport")
      .def_readonly("m", &BoundReport::m)
      .def_readonly("l", &BoundReport::ell)
      .def_readonly("k", &BoundReport::k)
      .def_readonly("orthogonal", &BoundReport::orthogonal)
      .def_readonly("lower", &BoundReport::lower)
      .def_property_readonly("upper",
                             [](const BoundReport& r) -> py::object {
                               if (!r.upper) return py::none();
                               return py::int_(*r.upper);
                             })
      .def_readonly("upper_source", &BoundReport::upper_source);
  m.def("bound_report", &bound_report, py::arg("m"), py::arg("l"), py::arg("k"),
        py::arg("orthogonal") = false);

  py::class_<Hyperplane>(m, "Hyperplane")
      .def(py::init([](std::vector<double> a, double b) {
             Hyperplane h{std::move(a), b};
             return h;
           }),
           py::arg("a"), py::arg("b"))
      .def_readonly("a", &Hyperplane::a)
      .def_readonly("b", &Hyperplane::b);

  py::class_<HyperplaneArrangement>(m, "HyperplaneArrangement")
      .def(py::init([](int dim, std::vector<Hyperplane> planes) {
             HyperplaneArrangement arr{dim, std::move(planes)};
             validate(arr);
             return arr;
           }),
           py::arg("dim"), py::arg("hyperplanes"))
      .def_readonly("dim", &HyperplaneArrangement::dim)
      .def_readonly("hyperplanes", &HyperplaneArrangement::hyperplanes);

  py::class_<WeightedPointCloud>(m, "WeightedPointCloud")
      .def(py::init([](int dim, std::vector<std::vector<double>> points,
                       std::vector<double> weights) {
             WeightedPointCloud cloud{dim, std::move(points), std::move(weights)};
             if (cloud.weights.empty()) cloud.weights.assign(cloud.points.size(), 1.0);
             validate(cloud);
             return cloud;
           }),
           py::arg("dim"), py::arg("points"), py::arg("weights") = std::vector<double>{})
      .def_readonly("dim", &WeightedPointCloud::dim)
      .def_readonly("points", &WeightedPointCloud::points)
      .def_readonly("weights", &WeightedPointCloud::weights)
      .def("total_weight", &WeightedPointCloud::total_weight)
      .def("diameter", &WeightedPointCloud::diameter);

  m.def("character", &character, py::arg("h"), py::arg("g"));
  m.def("low_weight_characters", &low_weight_characters, py::arg("k"), py::arg("l"));
  m.def("region_masses", &region_masses, py::arg("arrangement"), py::arg("cloud"),
        py::arg("boundary_eps") = -1.0);
  m.def("fourier_coefficients", &fourier_coefficients, py::arg("region_table"));

  py::class_<FourierReport>(m, "FourierReport")
      .def_readonly("k", &FourierReport::k)
      .def_readonly("l", &FourierReport::ell)
      .def_readonly("rel_tol", &FourierReport::rel_tol)
      .def_readonly("constraint_set", &FourierReport::constraint_set)
      .def_readonly("totals", &FourierReport::totals)
      .def_readonly("region_tables", &FourierReport::region_tables)
      .def_readonly("coefficients", &FourierReport::coefficients)
      .def_readonly("max_residuals", &FourierReport::max_residuals)
      .def_readonly("verdicts", &FourierReport::verdicts)
      .def("all_pass", &FourierReport::all_pass);

  m.def("check_equipartition", &check_equipartition, py::arg("arrangement"), py::arg("masses"),
        py::arg("l"), py::arg("rel_tol"), py::arg("boundary_eps") = -1.0);

  py::class_<OrthogonalityCheck>(m, "OrthogonalityCheck")
      .def_readonly("r", &OrthogonalityCheck::r)
      .def_readonly("s", &OrthogonalityCheck::s)
      .def_readonly("inner", &OrthogonalityCheck::inner)
      .def_readonly("ok", &OrthogonalityCheck::ok);
  m.def("check_orthogonality", &check_orthogonality, py::arg("arrangement"), py::arg("tol"));

  py::class_<SolveOptions>(m, "SolveOptions")
      .def(py::init<>())
      .def_readwrite("restarts", &SolveOptions::restarts)
      .def_readwrite("seed", &SolveOptions::seed)
      .def_readwrite("orthogonal", &SolveOptions::orthogonal)
      .def_readwrite("stages", &SolveOptions::stages)
      .def_readwrite("temp_factor", &SolveOptions::temp_factor)
      .def_readwrite("iters_per_stage", &SolveOptions::iters_per_stage)
      .def_readwrite("initial_temp", &SolveOptions::initial_temp)
      .def_readwrite("threads", &SolveOptions::threads);

  py::class_<SolveResult>(m, "SolveResult")
      .def_readonly("arrangement", &SolveResult::arrangement)
      .def_readonly("residual_rel", &SolveResult::residual_rel)
      .def_readonly("residual_abs", &SolveResult::residual_abs)
      .def_readonly("ortho_residual", &SolveResult::ortho_residual)
      .def_readonly("best_restart", &SolveResult::best_restart);

  m.def("solve_arrangement", &solve_arrangement, py::arg("masses"), py::arg("k"), py::arg("l"),
        py::arg("options") = SolveOptions{},
        py::call_guard<py::gil_scoped_release>());
}
