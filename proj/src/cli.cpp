#include "cddiso/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "cddiso/cdd_bound.hpp"
#include "cddiso/density.hpp"
#include "cddiso/errors.hpp"
#include "cddiso/model_density.hpp"
#include "cddiso/sharpness.hpp"

namespace cddiso {

namespace {

using Json = nlohmann::ordered_json;

struct Common {
  std::string rho, q, D;
  int n = 0;
  std::optional<double> v;
  std::optional<int> v_grid;
  std::string format = "csv";
  std::string out_file;
};

struct Row {
  double v;
  BoundResult r;
};

std::string fmt9(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

std::string fmt_ext(const ExtendedReal& x) {
  if (x.is_pos_inf()) return "inf";
  if (x.is_neg_inf()) return "-inf";
  return fmt9(x.value());
}

Json json_ext(const std::optional<ExtendedReal>& x) {
  if (!x) return nullptr;
  if (x->is_pos_inf()) return "inf";
  if (x->is_neg_inf()) return "-inf";
  return x->value();
}

Json json_case(CaseId id) {
  if (id == CaseId::kTrivial) return "trivial";
  return static_cast<int>(id);
}

void add_common(CLI::App* sub, Common& c, bool allow_grid) {
  sub->add_option("--rho", c.rho, "curvature lower bound (finite)")->required();
  sub->add_option("--n", c.n, "topological dimension")->required();
  sub->add_option("--q", c.q, "extra dimension, real or 'inf'")->required();
  sub->add_option("--D", c.D, "diameter bound, real or 'inf'")->required();
  auto* v = sub->add_option("--v", c.v, "mass fraction in [0, 1]");
  if (allow_grid) {
    auto* g = sub->add_option("--v-grid", c.v_grid, "COUNT interior points k/(COUNT+1)");
    v->excludes(g);
  } else {
    v->required();
  }
  sub->add_option("--out", c.out_file, "write output to FILE");
}

CDDParams params_from(const Common& c) {
  if (c.rho == "inf" || c.rho == "+inf" || c.rho == "-inf") throw ParameterError("--rho must be finite");
  const ExtendedReal rho = parse_extended_real(c.rho);
  CDDParams p;
  p.rho = rho.value();
  p.n = c.n;
  p.q = parse_dimension(c.q);
  p.D = parse_extended_real(c.D);
  p.validate();
  return p;
}

std::vector<double> v_values(const Common& c) {
  if (c.v) {
    if (!(*c.v >= 0.0 && *c.v <= 1.0)) throw ParameterError("--v must lie in [0, 1]");
    return {*c.v};
  }
  if (!c.v_grid) throw ParameterError("one of --v or --v-grid is required");
  if (*c.v_grid < 1) throw ParameterError("--v-grid COUNT must be at least 1");
  std::vector<double> vs;
  for (int k = 1; k <= *c.v_grid; ++k) vs.push_back(static_cast<double>(k) / (*c.v_grid + 1));
  return vs;
}

QuadratureOptions options_from_env() {
  QuadratureOptions o;
  if (const char* s = std::getenv("CDD_ISO_TOL")) {
    char* end = nullptr;
    const double t = std::strtod(s, &end);
    if (end == s || *end != '\0' || !(t > 0.0) || !std::isfinite(t)) {
      throw ParameterError(std::string("CDD_ISO_TOL must be a positive number, got '") + s + "'");
    }
    o.rel_tol = t;
  }
  return o;
}

std::vector<Row> compute_rows(const CDDParams& p, const std::vector<double>& vs, const QuadratureOptions& opts) {
  std::vector<std::optional<BoundResult>> results(vs.size());
  std::vector<std::exception_ptr> errors(vs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < vs.size();) {
      try {
        results[i] = bound_at(p, vs[i], opts);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, vs.size());
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::vector<Row> rows;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    rows.push_back({vs[i], *results[i]});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.v < b.v; });
  return rows;
}

std::string render_rows(const std::vector<Row>& rows, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    Json arr = Json::array();
    for (const Row& row : rows) {
      Json o;
      o["v"] = row.v;
      o["bound"] = row.r.value;
      o["case_id"] = json_case(row.r.case_id);
      o["h_star"] = row.r.h_star ? Json(*row.r.h_star) : Json(nullptr);
      o["a_star"] = json_ext(row.r.a_star);
      arr.push_back(o);
    }
    os << arr.dump() << '\n';
    return os.str();
  }
  os << "v,bound,case_id,h_star,a_star\n";
  for (const Row& row : rows) {
    os << csv_field(fmt9(row.v)) << ',' << csv_field(fmt9(row.r.value)) << ',' << csv_field(to_string(row.r.case_id))
       << ',' << (row.r.h_star ? csv_field(fmt9(*row.r.h_star)) : "") << ','
       << (row.r.a_star ? csv_field(fmt_ext(*row.r.a_star)) : "") << '\n';
  }
  return os.str();
}

std::string render_model(const CDDParams& p, double v, int samples, const std::string& format,
                         const QuadratureOptions& opts) {
  if (samples < 2) throw ParameterError("--samples must be at least 2");
  const BoundResult r = bound_at(p, v, opts);
  if (!r.h_star || !r.a_star) throw ParameterError("no model density: the bound is trivial at these parameters");
  const ModelParams mp{*r.h_star, p.rho, p.m()};
  const SupportInterval s = support_j(mp);
  double lo, hi;
  std::optional<SupportInterval> window;
  if (p.D.is_finite()) {
    lo = -r.a_star->value();
    hi = p.D.value() - r.a_star->value();
    window = SupportInterval{lo, hi};
  } else if (s.is_bounded()) {
    lo = s.lo.value();
    hi = s.hi.value();
  } else {
    const double mode = *r.h_star / p.rho, w = 6.0 / std::sqrt(p.rho);
    lo = mode - w;
    hi = mode + w;
  }
  const Density1D d = Density1D::model(mp, window, opts);
  const double z = d.total_mass().value();
  std::ostringstream os;
  Json arr = Json::array();
  if (format == "csv") os << "t,J,density\n";
  for (int i = 0; i < samples; ++i) {
    const double t = i + 1 == samples ? hi : lo + (hi - lo) * i / (samples - 1);
    const double j = eval_j(mp, t);
    if (format == "json") {
      arr.push_back(Json{{"t", t}, {"J", j}, {"density", j / z}});
    } else {
      os << fmt9(t) << ',' << fmt9(j) << ',' << fmt9(j / z) << '\n';
    }
  }
  if (format == "json") os << arr.dump() << '\n';
  return os.str();
}

struct VerifyConfig {
  double eps = 0.01;
  double oracle_tol = 1e-4;
  double slab_tol = 1e-6;
  int grid = 401;
};

std::pair<std::string, bool> render_verify(const CDDParams& p, double v, const VerifyConfig& cfg,
                                           const QuadratureOptions& opts) {
  if (p.n < 3) throw ParameterError("verify needs n >= 3");
  if (!p.q.is_finite() || p.q.is_zero()) throw ParameterError("verify needs 0 < q < inf");
  if (!p.D.is_finite()) throw ParameterError("verify needs finite D");
  if (!(cfg.eps > 0.0)) throw ParameterError("--eps must be positive");
  if (cfg.grid < 2) throw ParameterError("--grid must be at least 2");
  Json o;
  o["v"] = v;
  if (v == 0.0 || v == 1.0) {
    o["bound"] = 0.0;
    o["h_star"] = nullptr;
    o["a_star"] = nullptr;
    o["oracle_gap"] = 0.0;
    o["curvature_margin"] = nullptr;
    o["slab_gap"] = 0.0;
    o["passed"] = true;
    return {o.dump(2) + "\n", true};
  }
  const BoundResult r = bound_at(p, v, opts);
  const double oracle = bound_oracle_grid(p, v, 64, 64, opts);
  const double oracle_gap = std::abs(oracle - r.value) / r.value;

  const double D = p.D.value();
  const ModelParams mp{*r.h_star, p.rho, p.m()};
  const SupportInterval s = support_j(mp);
  const double inset = 1e-9 * D;
  double a = r.a_star->value(), b = D - a;
  if (s.lo.is_finite()) a = std::min(a, -s.lo.value() - inset);
  if (s.hi.is_finite()) b = std::min(b, s.hi.value() - inset);
  const WarpedProduct wp = WarpedProduct::canonical(p.n, p.q.value(), cfg.eps, a, b, mp);
  const double margin = check_cdd(wp, p.rho, cfg.grid);
  const double slab = slab_profile(wp, v, opts);
  const double slab_gap = std::abs(slab - r.value) / r.value;
  const bool passed = oracle_gap <= cfg.oracle_tol && margin >= 0.0 && slab_gap <= cfg.slab_tol;

  o["bound"] = r.value;
  o["h_star"] = *r.h_star;
  o["a_star"] = r.a_star->value();
  o["oracle_gap"] = oracle_gap;
  o["curvature_margin"] = margin;
  o["slab_gap"] = slab_gap;
  o["passed"] = passed;
  return {o.dump(2) + "\n", passed};
}

void emit(const std::string& text, const std::string& out_file, std::ostream& out) {
  if (out_file.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_file, std::ios::binary);
  if (!f) throw ParameterError("cannot open --out file '" + out_file + "'");
  f << text;
}

}  // namespace

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sharp isoperimetric lower bounds under curvature-dimension-diameter conditions"};
  app.require_subcommand(1);

  Common bound_args, model_args, verify_args;
  auto* bound = app.add_subcommand("bound", "tabulate the bound over v");
  add_common(bound, bound_args, true);
  bound->add_option("--format", bound_args.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  int samples = 101;
  auto* model = app.add_subcommand("model", "sample the minimizing model density");
  add_common(model, model_args, false);
  model->add_option("--samples", samples, "number of sample points");
  model->add_option("--format", model_args.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  VerifyConfig cfg;
  auto* verify = app.add_subcommand("verify", "cross-check the bound against the oracle and the warped product");
  add_common(verify, verify_args, false);
  verify->add_option("--eps", cfg.eps, "warp radius scale");
  verify->add_option("--oracle-tol", cfg.oracle_tol, "relative tolerance for the grid oracle");
  verify->add_option("--slab-tol", cfg.slab_tol, "relative tolerance for the slab profile");
  verify->add_option("--grid", cfg.grid, "curvature grid points");

  std::vector<std::string> rev(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(rev.begin(), rev.end());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }

  try {
    const QuadratureOptions opts = options_from_env();
    if (bound->parsed()) {
      const CDDParams p = params_from(bound_args);
      emit(render_rows(compute_rows(p, v_values(bound_args), opts), bound_args.format), bound_args.out_file, out);
      return kExitOk;
    }
    if (model->parsed()) {
      const CDDParams p = params_from(model_args);
      const double v = v_values(model_args).front();
      emit(render_model(p, v, samples, model_args.format, opts), model_args.out_file, out);
      return kExitOk;
    }
    const CDDParams p = params_from(verify_args);
    const double v = v_values(verify_args).front();
    const auto [text, passed] = render_verify(p, v, cfg, opts);
    emit(text, verify_args.out_file, out);
    if (!passed) err << "verification failed\n";
    return passed ? kExitOk : kExitVerifyFailed;
  } catch (const ParameterError& e) {
    err << "invalid parameters: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const DomainError& e) {
    err << "invalid parameters: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::domain_error& e) {
    err << "invalid parameters: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace cddiso
