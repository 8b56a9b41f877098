#include "fem_accuracy/accuracy_prob.hpp"
#include "fem_accuracy/bounds.hpp"
#include "fem_accuracy/fem1d.hpp"
#include "fem_accuracy/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace fem_accuracy;

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitInadmissible = 3;

const char* kColumns = R"(CSV columns (JSON: one record per line with the same keys):
  basis      index,multi_index,node            (JSON: full dump with polynomial terms)
  bounds     check,order,p,measured,bound,pass
  constant   n,m,k,p,sigma,lambda,cea_ratio,h_cap,C_k
  prob       h,P
  hstar-seq  q,h_star,h_star_over_q
  weakstar   q,h_star,pairing,limit,error
  converge   k,m,p,h,error,bound,order_est
  mesh       vertex,x[,y]                      (JSON: vertices, cells, h, sigma)
  crossover  h,error_k1,error_k2,ratio,h_star,P
Exit codes: 0 ok, 1 a named check failed, 2 invalid input, 3 inadmissible (k, m, n, p).)";

struct RunConfig {
  int n = 1;
  int k = 1;
  int k1 = 1;
  int k2 = 2;
  int m = 0;
  double p = 2.0;
  double sigma = 1.0;
  double lambda = 1.0;
  double cea_ratio = 1.0;
  double h_cap = 1.0;
  std::optional<double> ck1;
  std::optional<double> ck2;
  double seminorm_ratio = 1.0;
  std::string law = "nonlinear";
  int q_max = 20;
  std::string model = "sin";
  double h_min = 1.0 / 64;
  double h_max = 1.0 / 8;
  int steps = 101;
  int mesh_elements = 4;
  std::string format = "csv";
  std::string out;
  std::uint64_t seed = PointBoundOptions{}.seed;
  int samples = PointBoundOptions{}.random_samples;
  int r_max = 2;
  int l_max = 1;
};

class Table {
 public:
  Table(std::ostream& os, bool json, std::vector<std::string> columns) : os_(os), json_(json), columns_(std::move(columns)) {
    if (!json_) {
      for (std::size_t i = 0; i < columns_.size(); ++i) os_ << (i ? "," : "") << columns_[i];
      os_ << '\n';
    }
  }

  // Cells are preformatted text; JSON keeps numbers as numbers when they parse.
  void row(const std::vector<std::string>& cells) {
    if (!json_) {
      for (std::size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << cells[i];
      os_ << '\n';
      return;
    }
    Json rec = Json::object();
    for (std::size_t i = 0; i < cells.size(); ++i) rec[columns_[i]] = cell_json(cells[i]);
    os_ << rec.dump() << '\n';
  }

 private:
  static Json cell_json(const std::string& s) {
    if (s.empty()) return nullptr;
    if (s == "true" || s == "false") return s == "true";
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end && *end == '\0' && std::isfinite(v)) return v;
    return s;
  }

  std::ostream& os_;
  bool json_;
  std::vector<std::string> columns_;
};

std::string fmt(double v) { return format_double(v); }
std::string fmt(int v) { return std::to_string(v); }
std::string fmt_bool(bool v) { return v ? "true" : "false"; }

std::string joined(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

// Returns the names of failed checks; empty means success.
using Command = std::vector<std::string> (*)(const RunConfig&, std::ostream&);

std::vector<std::string> cmd_basis(const RunConfig& c, std::ostream& os) {
  const auto basis = build_basis(c.n, c.k);
  if (c.format == "json") {
    os << to_json(basis).dump() << '\n';
    return {};
  }
  Table t(os, false, {"index", "multi_index", "node"});
  for (std::size_t i = 0; i < basis.size(); ++i) {
    std::string node;
    for (const auto& x : basis.node_exact(i)) node += (node.empty() ? "" : " ") + x.str();
    t.row({fmt(static_cast<int>(i)), joined(basis.nodes()[i].entries), node});
  }
  return {};
}

std::vector<std::string> cmd_bounds(const RunConfig& c, std::ostream& os) {
  if (c.n < 1 || c.n > 2) throw std::invalid_argument("bounds: --n must be 1 or 2 (reference interval or triangle)");
  const auto basis = build_basis(c.n, c.k);
  const Simplex ref = c.n == 1 ? Simplex({{0.0}, {1.0}}) : Simplex({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}});
  PointBoundOptions opts;
  opts.seed = c.seed;
  opts.random_samples = c.samples;
  std::vector<BoundReport> reports;
  for (int r = 0; r <= c.r_max; ++r) reports.push_back(point_bound_check(basis, r, opts));
  for (int l = 0; l <= c.l_max; ++l) reports.push_back(seminorm_bound_check(basis, ref, l, c.p));
  std::vector<std::string> failed;
  if (c.format == "json") {
    for (const auto& r : reports) os << to_json(r).dump() << '\n';
  } else {
    Table t(os, false, {"check", "order", "p", "measured", "bound", "pass"});
    int idx = 0;
    for (const auto& r : reports) {
      const bool point = idx <= c.r_max;
      t.row({r.bound_name, fmt(point ? idx : idx - c.r_max - 1), point ? "" : fmt(c.p), fmt(r.measured), fmt(r.bound), fmt_bool(r.pass)});
      ++idx;
    }
  }
  for (const auto& r : reports)
    if (!r.pass) failed.push_back(r.bound_name);
  return failed;
}

std::vector<std::string> cmd_constant(const RunConfig& c, std::ostream& os) {
  ConstantBundle b;
  b.n = c.n;
  b.m = c.m;
  b.k = c.k;
  b.p = c.p;
  b.sigma = c.sigma;
  b.lambda_max = c.lambda;
  b.cea_ratio = c.cea_ratio;
  b.h_cap = c.h_cap;
  const double value = script_C_k(b);
  Table t(os, c.format == "json", {"n", "m", "k", "p", "sigma", "lambda", "cea_ratio", "h_cap", "C_k"});
  t.row({fmt(c.n), fmt(c.m), fmt(c.k), fmt(c.p), fmt(c.sigma), fmt(c.lambda), fmt(c.cea_ratio), fmt(c.h_cap), fmt(value)});
  return {};
}

LawKind law_kind(const std::string& s) {
  if (s == "nonlinear") return LawKind::nonlinear;
  if (s == "heaviside") return LawKind::heaviside;
  throw std::invalid_argument("unknown law '" + s + "' (expected nonlinear or heaviside)");
}

std::vector<std::string> cmd_prob(const RunConfig& c, std::ostream& os) {
  double hs = 0.0;
  if (c.ck1 || c.ck2) {
    if (!(c.ck1 && c.ck2)) throw std::invalid_argument("prob: give both --ck1 and --ck2, or neither");
    hs = h_star({c.k1, c.k2, *c.ck1, *c.ck2});
  } else {
    hs = h_star_explicit({c.n, c.m, c.p, c.k1, c.k2, c.seminorm_ratio, c.cea_ratio, 1.0});
  }
  const AccuracyLaw law{hs, c.k2 - c.k1, law_kind(c.law)};
  Table t(os, c.format == "json", {"h", "P"});
  for (const auto& [h, pr] : law_curve(law, c.h_min, c.h_max, c.steps)) t.row({fmt(h), fmt(pr)});
  return {};
}

std::vector<std::string> cmd_hstar_seq(const RunConfig& c, std::ostream& os) {
  const auto rows = h_star_sequence(c.k, c.n, c.m, c.p, c.q_max, model_by_name(c.model, c.p), constant_cea(c.cea_ratio));
  Table t(os, c.format == "json", {"q", "h_star", "h_star_over_q"});
  for (const auto& r : rows) t.row({fmt(r.q), fmt(r.h_star), fmt(r.h_star_over_q)});
  return {};
}

std::vector<std::string> cmd_weakstar(const RunConfig& c, std::ostream& os) {
  std::vector<int> qs;
  for (int q = 1; q <= c.q_max; ++q) qs.push_back(q);
  const auto rep = weak_star_test(c.k, c.n, c.m, c.p, qs, model_by_name(c.model, c.p), bump(1.0, 2.0), constant_cea(c.cea_ratio));
  Table t(os, c.format == "json", {"q", "h_star", "pairing", "limit", "error"});
  for (const auto& r : rep.rows) t.row({fmt(r.q), fmt(r.h_star), fmt(r.pairing), fmt(rep.limit), fmt(r.error)});
  return {};
}

std::vector<std::string> cmd_converge(const RunConfig& c, std::ostream& os) {
  const auto table = convergence_study(sine_problem(), c.k, c.m, c.p, halving_counts(c.h_min, c.h_max), c.cea_ratio);
  for (const auto& w : table.warnings) std::cerr << "warning: " << w << '\n';
  Table t(os, c.format == "json", {"k", "m", "p", "h", "error", "bound", "order_est"});
  for (const auto& r : table.rows)
    t.row({fmt(r.k), fmt(r.m), fmt(r.p), fmt(r.h), fmt(r.error), format_optional(r.bound), format_optional(r.order_est)});
  if (!table.bounds_hold) return {"error <= C_k h^(k+1-m) |u|_{k+1,p}"};
  return {};
}

std::vector<std::string> cmd_mesh(const RunConfig& c, std::ostream& os) {
  if (c.mesh_elements < 1) throw std::invalid_argument("mesh: --steps must be >= 1");
  SimplexMesh mesh = c.n == 1   ? uniform_mesh_1d(0.0, 1.0, c.mesh_elements)
                     : c.n == 2 ? structured_mesh_2d(c.mesh_elements)
                                : throw std::invalid_argument("mesh: --n must be 1 or 2");
  if (c.format == "json") {
    os << to_json(mesh).dump() << '\n';
    return {};
  }
  std::vector<std::string> cols{"vertex", "x"};
  if (c.n == 2) cols.push_back("y");
  Table t(os, false, cols);
  for (std::size_t i = 0; i < mesh.points().size(); ++i) {
    std::vector<std::string> row{fmt(static_cast<int>(i))};
    for (double x : mesh.points()[i]) row.push_back(fmt(x));
    t.row(row);
  }
  return {};
}

std::vector<std::string> cmd_crossover(const RunConfig& c, std::ostream& os) {
  std::vector<double> grid;
  for (int n : halving_counts(c.h_min, c.h_max)) grid.push_back(1.0 / n);
  const auto rows = empirical_crossover(sine_problem(), c.k1, c.k2, c.m, c.p, grid);
  Table t(os, c.format == "json", {"h", "error_k1", "error_k2", "ratio", "h_star", "P"});
  for (const auto& r : rows)
    t.row({fmt(r.h), fmt(r.error_k1), fmt(r.error_k2), fmt(r.ratio), format_optional(r.h_star), format_optional(r.probability)});
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Error estimates and accuracy laws for P_k Lagrange finite elements"};
  app.footer(kColumns);
  app.require_subcommand(1);
  RunConfig c;

  app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--out", c.out, "Write output to this file instead of stdout");
  app.add_option("--seed", c.seed, "Seed for sampled suprema")->capture_default_str();

  struct Entry {
    CLI::App* sub;
    Command fn;
  };
  std::vector<Entry> entries;
  auto add = [&](const char* name, const char* help, Command fn) {
    auto* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    entries.push_back({sub, fn});
    return sub;
  };
  auto n_opt = [&](CLI::App* s) { s->add_option("--n", c.n, "Spatial dimension")->capture_default_str(); };
  auto k_opt = [&](CLI::App* s) { s->add_option("--k", c.k, "Polynomial degree")->capture_default_str(); };
  auto m_opt = [&](CLI::App* s) { s->add_option("--m", c.m, "Sobolev order of the error norm")->capture_default_str(); };
  auto p_opt = [&](CLI::App* s) { s->add_option("--p", c.p, "Integrability exponent")->capture_default_str(); };
  auto pair_opt = [&](CLI::App* s) {
    s->add_option("--k1", c.k1, "Lower degree")->capture_default_str();
    s->add_option("--k2", c.k2, "Higher degree")->capture_default_str();
  };
  auto h_opt = [&](CLI::App* s) {
    s->add_option("--hmin", c.h_min, "Smallest h")->capture_default_str();
    s->add_option("--hmax", c.h_max, "Largest h")->capture_default_str();
  };
  auto cea_opt = [&](CLI::App* s) { s->add_option("--cea-ratio", c.cea_ratio, "1 + ||a|| / alpha_h")->capture_default_str(); };
  auto seq_opt = [&](CLI::App* s) {
    s->add_option("--qmax", c.q_max, "Largest degree gap q")->capture_default_str();
    s->add_option("--model", c.model, "Seminorm model")->check(CLI::IsMember({"sin", "exp"}))->capture_default_str();
  };

  auto* basis = add("basis", "Dump the P_k basis on the reference simplex", cmd_basis);
  n_opt(basis);
  k_opt(basis);

  auto* bounds = add("bounds", "Check the pointwise and seminorm bounds of the basis", cmd_bounds);
  n_opt(bounds);
  k_opt(bounds);
  p_opt(bounds);
  bounds->add_option("--rmax", c.r_max, "Highest barycentric derivative order")->capture_default_str();
  bounds->add_option("--lmax", c.l_max, "Highest seminorm order")->capture_default_str();
  bounds->add_option("--samples", c.samples, "Random barycentric samples")->capture_default_str();

  auto* constant = add("constant", "Evaluate the constant C_k of the error estimate", cmd_constant);
  n_opt(constant);
  k_opt(constant);
  m_opt(constant);
  p_opt(constant);
  cea_opt(constant);
  constant->add_option("--sigma", c.sigma, "Mesh regularity h/rho")->capture_default_str();
  constant->add_option("--lambda", c.lambda, "Max barycentric gradient entry")->capture_default_str();
  constant->add_option("--h-cap", c.h_cap, "Upper bound on h")->capture_default_str();

  auto* prob = add("prob", "Tabulate the probability law P(h)", cmd_prob);
  n_opt(prob);
  m_opt(prob);
  p_opt(prob);
  pair_opt(prob);
  h_opt(prob);
  cea_opt(prob);
  prob->add_option("--ck1", c.ck1, "C_k1 (with --ck2; otherwise built from n, m, p)");
  prob->add_option("--ck2", c.ck2, "C_k2");
  prob->add_option("--seminorm-ratio", c.seminorm_ratio, "|u|_{k1+1,p} / |u|_{k2+1,p}")->capture_default_str();
  prob->add_option("--law", c.law, "Law")->check(CLI::IsMember({"nonlinear", "heaviside"}))->capture_default_str();
  prob->add_option("--steps", c.steps, "Grid points")->capture_default_str();

  auto* hseq = add("hstar-seq", "Tabulate h*_q for k2 = k + q", cmd_hstar_seq);
  n_opt(hseq);
  k_opt(hseq);
  m_opt(hseq);
  p_opt(hseq);
  cea_opt(hseq);
  seq_opt(hseq);

  auto* weak = add("weakstar", "Pair P_q with a bump supported in [1, 2]", cmd_weakstar);
  n_opt(weak);
  k_opt(weak);
  m_opt(weak);
  p_opt(weak);
  cea_opt(weak);
  seq_opt(weak);

  auto* conv = add("converge", "Galerkin convergence for -u'' + u = f, u = sin(pi x)", cmd_converge);
  k_opt(conv);
  m_opt(conv);
  p_opt(conv);
  h_opt(conv);
  cea_opt(conv);

  auto* mesh = add("mesh", "Uniform mesh of [0,1] or the unit square", cmd_mesh);
  n_opt(mesh);
  mesh->add_option("--steps", c.mesh_elements, "Elements per side")->capture_default_str();

  auto* cross = add("crossover", "Measured errors of two degrees beside the law", cmd_crossover);
  pair_opt(cross);
  m_opt(cross);
  p_opt(cross);
  h_opt(cross);

  CLI11_PARSE(app, argc, argv);

  try {
    std::ostringstream buffer;
    std::vector<std::string> failed;
    for (const auto& e : entries)
      if (e.sub->parsed()) failed = e.fn(c, buffer);
    if (c.out.empty()) {
      std::cout << buffer.str();
    } else {
      std::ofstream f(c.out, std::ios::binary);
      if (!(f << buffer.str())) throw std::runtime_error("cannot write " + c.out);
    }
    for (const auto& name : failed) std::cerr << "check failed: " << name << '\n';
    return failed.empty() ? 0 : kExitCheckFailed;
  } catch (const AdmissibilityError& e) {
    std::cerr << e.what() << '\n';
    return kExitInadmissible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
}
