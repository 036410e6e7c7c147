#include "makeev/io.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace makeev {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::invalid_argument(where + ": " + what);
}

void expect_keys(const json& j, const std::string& where, const std::set<std::string>& required,
                 const std::set<std::string>& optional = {}) {
  if (!j.is_object()) fail(where, "expected a JSON object");
  for (const auto& item : j.items()) {
    if (!required.count(item.key()) && !optional.count(item.key()))
      fail(where, "unknown key '" + item.key() + "'");
  }
  for (const std::string& key : required)
    if (!j.contains(key)) fail(where, "missing key '" + key + "'");
}

int get_int(const json& j, const std::string& where, const std::string& key) {
  const json& v = j.at(key);
  if (!v.is_number_integer()) fail(where, "'" + key + "' must be an integer");
  return v.get<int>();
}

double get_num(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  return v.get<double>();
}

std::vector<double> get_num_array(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(get_num(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

SpecFile parse_spec_file(const json& j) {
  expect_keys(j, "spec", {"k", "d", "blocks"});
  SpecFile out;
  out.spec.k = get_int(j, "spec", "k");
  out.d = get_int(j, "spec", "d");
  const json& blocks = j.at("blocks");
  if (!blocks.is_array()) fail("spec", "'blocks' must be an array");
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    const std::string where = "blocks[" + std::to_string(bi) + "]";
    const json& jb = blocks[bi];
    if (!jb.is_object() || !jb.contains("kind")) fail(where, "missing key 'kind'");
    const std::string kind = jb.at("kind").is_string() ? jb.at("kind").get<std::string>() : "";
    Block block;
    if (kind == "equip") {
      expect_keys(jb, where, {"kind", "l", "vars"}, {"mult"});
      block.kind = Block::Kind::Equip;
      block.level = get_int(jb, where, "l");
      const json& vars = jb.at("vars");
      if (!vars.is_array() || vars.empty()) fail(where, "'vars' must be a nonempty array");
      for (std::size_t i = 0; i < vars.size(); ++i) {
        if (!vars[i].is_number_integer()) fail(where, "'vars' entries must be integers");
        block.vars.push_back(vars[i].get<int>());
      }
    } else if (kind == "ortho") {
      expect_keys(jb, where, {"kind", "pairs"}, {"mult"});
      block.kind = Block::Kind::Ortho;
      const json& pairs = jb.at("pairs");
      if (!pairs.is_array()) fail(where, "'pairs' must be an array");
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        const json& p = pairs[i];
        if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() ||
            !p[1].is_number_integer())
          fail(where, "'pairs' entries must be [i, j] integer pairs");
        block.pairs.emplace_back(p[0].get<int>(), p[1].get<int>());
      }
    } else {
      fail(where, "'kind' must be \"equip\" or \"ortho\"");
    }
    block.mult = jb.contains("mult") ? get_int(jb, where, "mult") : 1;
    out.spec.blocks.push_back(std::move(block));
  }
  validate(out.spec);
  if (out.d < 1) fail("spec", "'d' must be >= 1");
  return out;
}

json spec_file_json(const RepresentationSpec& spec, int d) {
  json blocks = json::array();
  for (const Block& b : spec.blocks) {
    json jb;
    if (b.kind == Block::Kind::Equip) {
      jb["kind"] = "equip";
      jb["l"] = b.level;
      jb["vars"] = b.vars;
    } else {
      jb["kind"] = "ortho";
      json pairs = json::array();
      for (const auto& [i, jx] : b.pairs) pairs.push_back(json::array({i, jx}));
      jb["pairs"] = std::move(pairs);
    }
    jb["mult"] = b.mult;
    blocks.push_back(std::move(jb));
  }
  return json{{"k", spec.k}, {"d", d}, {"blocks", std::move(blocks)}};
}

HyperplaneArrangement parse_arrangement(const json& j, std::vector<std::string>* warnings) {
  expect_keys(j, "arrangement", {"d", "hyperplanes"});
  HyperplaneArrangement arr;
  arr.dim = get_int(j, "arrangement", "d");
  const json& planes = j.at("hyperplanes");
  if (!planes.is_array() || planes.empty())
    fail("arrangement", "'hyperplanes' must be a nonempty array");
  for (std::size_t i = 0; i < planes.size(); ++i) {
    const std::string where = "hyperplanes[" + std::to_string(i) + "]";
    expect_keys(planes[i], where, {"a", "b"});
    Hyperplane h;
    h.a = get_num_array(planes[i].at("a"), where + ".a");
    h.b = get_num(planes[i].at("b"), where + ".b");
    if (static_cast<int>(h.a.size()) != arr.dim) fail(where, "'a' must have length d");
    double norm_sq = h.b * h.b;
    for (double c : h.a) norm_sq += c * c;
    if (norm_sq == 0.0) fail(where, "(a, b) must be nonzero");
    if (std::abs(norm_sq - 1.0) > 1e-6 && warnings)
      warnings->push_back(where + ": |a|^2 + b^2 = " + std::to_string(norm_sq) +
                          ", renormalizing");
    const double nrm = std::sqrt(norm_sq);
    for (double& c : h.a) c /= nrm;
    h.b /= nrm;
    arr.hyperplanes.push_back(std::move(h));
  }
  validate(arr);
  return arr;
}

json arrangement_json(const HyperplaneArrangement& arrangement) {
  json planes = json::array();
  for (const Hyperplane& h : arrangement.hyperplanes)
    planes.push_back(json{{"a", h.a}, {"b", h.b}});
  return json{{"d", arrangement.dim}, {"hyperplanes", std::move(planes)}};
}

std::vector<WeightedPointCloud> parse_masses(const json& j) {
  expect_keys(j, "masses", {"d", "masses"});
  const int dim = get_int(j, "masses", "d");
  const json& list = j.at("masses");
  if (!list.is_array() || list.empty()) fail("masses", "'masses' must be a nonempty array");
  std::vector<WeightedPointCloud> out;
  for (std::size_t mi = 0; mi < list.size(); ++mi) {
    const std::string where = "masses[" + std::to_string(mi) + "]";
    expect_keys(list[mi], where, {"points"}, {"weights"});
    WeightedPointCloud cloud;
    cloud.dim = dim;
    const json& pts = list[mi].at("points");
    if (!pts.is_array() || pts.empty()) fail(where, "'points' must be a nonempty array");
    for (std::size_t pi = 0; pi < pts.size(); ++pi)
      cloud.points.push_back(get_num_array(pts[pi], where + ".points[" + std::to_string(pi) + "]"));
    if (list[mi].contains("weights")) {
      cloud.weights = get_num_array(list[mi].at("weights"), where + ".weights");
      if (cloud.weights.size() != cloud.points.size())
        fail(where, "'weights' must match the number of points");
    } else {
      cloud.weights.assign(cloud.points.size(), 1.0);
    }
    validate(cloud);
    out.push_back(std::move(cloud));
  }
  return out;
}

json masses_json(const std::vector<WeightedPointCloud>& masses) {
  json list = json::array();
  int dim = masses.empty() ? 0 : masses.front().dim;
  for (const WeightedPointCloud& cloud : masses)
    list.push_back(json{{"points", cloud.points}, {"weights", cloud.weights}});
  return json{{"d", dim}, {"masses", std::move(list)}};
}

json certificate_json(const CertificateResult& result) {
  json j{{"k", result.k},
         {"d", result.d},
         {"dim_U", result.dim_u},
         {"status", to_string(result.status)},
         {"spec", spec_file_json(result.spec, result.d)}};
  if (result.residual_support >= 0) j["residual_support"] = result.residual_support;
  if (!result.max_degrees.empty()) j["max_degrees"] = result.max_degrees;
  return j;
}

json bound_report_json(const BoundReport& report) {
  json j{{"m", report.m},
         {"l", report.ell},
         {"k", report.k},
         {"orthogonal", report.orthogonal},
         {"lower", report.lower}};
  if (report.upper) {
    j["upper"] = *report.upper;
    j["upper_source"] = report.upper_source;
  }
  return j;
}

json fourier_report_json(const FourierReport& report) {
  json masses = json::array();
  for (std::size_t i = 0; i < report.verdicts.size(); ++i) {
    masses.push_back(json{{"total", report.totals[i]},
                          {"regions", report.region_tables[i]},
                          {"coefficients", report.coefficients[i]},
                          {"max_residual", report.max_residuals[i]},
                          {"pass", static_cast<bool>(report.verdicts[i])}});
  }
  return json{{"k", report.k},
              {"l", report.ell},
              {"rel_tol", report.rel_tol},
              {"constraint_set", report.constraint_set},
              {"masses", std::move(masses)},
              {"all_pass", report.all_pass()}};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return j;
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace makeev
