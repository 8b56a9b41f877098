#include "fem_accuracy/io.hpp"

#include <cmath>
#include <cstdio>

namespace fem_accuracy {

namespace {

Json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

Json optional_number(const std::optional<double>& v) { return v ? number(*v) : Json(nullptr); }

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_optional(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

Json to_json(const SimplexMesh& mesh) {
  Json j;
  j["dim"] = mesh.dim();
  j["vertices"] = mesh.points();
  j["cells"] = mesh.cells();
  j["h"] = mesh.h();
  j["sigma"] = mesh.sigma();
  j["lambda_max"] = mesh.lambda_max();
  j["measure"] = mesh.measure();
  return j;
}

Json to_json(const PkBasis& basis) {
  Json j;
  j["n"] = basis.dim();
  j["k"] = basis.degree();
  j["size"] = basis.size();
  Json functions = Json::array();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    Json f;
    f["multi_index"] = basis.nodes()[i].entries;
    Json node = Json::array();
    for (const auto& c : basis.node_exact(i)) node.push_back(c.str());
    f["node"] = node;
    Json terms = Json::array();
    for (const auto& [exps, coeff] : basis.polynomial(i).terms()) terms.push_back({{"exponents", exps}, {"coefficient", coeff.str()}});
    f["terms"] = terms;
    functions.push_back(f);
  }
  j["functions"] = functions;
  return j;
}

Json to_json(const NormResult& r) {
  Json j;
  j["kind"] = r.kind;
  j["l"] = r.l;
  j["p"] = r.p;
  j["value"] = number(r.value);
  j["quad_error_estimate"] = number(r.quad_error_estimate);
  if (!r.warnings.empty()) j["warnings"] = r.warnings;
  return j;
}

Json to_json(const BoundReport& r) {
  Json j;
  j["bound_name"] = r.bound_name;
  j["paper_eq"] = r.inequality;
  j["measured"] = number(r.measured);
  j["bound"] = number(r.bound);
  j["pass"] = r.pass;
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

Json to_json(const ConstantBundle& b) {
  Json j;
  j["n"] = b.n;
  j["m"] = b.m;
  j["k"] = b.k;
  j["p"] = b.p;
  j["sigma"] = b.sigma;
  j["lambda_max"] = b.lambda_max;
  j["lambda_star"] = b.lambda_star();
  j["mes_K"] = b.mes_K;
  j["rho"] = b.rho;
  j["cea_ratio"] = b.cea_ratio;
  j["h_cap"] = b.h_cap;
  return j;
}

Json to_json(const ErrorReport& r) {
  Json j;
  j["k"] = r.k;
  j["m"] = r.m;
  j["p"] = r.p;
  j["h"] = r.h;
  Json semis = Json::array();
  for (const auto& s : r.seminorms) semis.push_back(to_json(s));
  j["seminorms"] = semis;
  j["norm"] = to_json(r.norm);
  j["u_seminorm"] = number(r.u_seminorm);
  j["admissible"] = r.admissible;
  j["constant"] = optional_number(r.constant);
  j["bound"] = optional_number(r.bound);
  j["bound_fraction"] = optional_number(r.bound_fraction);
  j["pass"] = r.pass;
  if (!r.warnings.empty()) j["warnings"] = r.warnings;
  return j;
}

}  // namespace fem_accuracy
