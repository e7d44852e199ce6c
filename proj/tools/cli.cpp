#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "asymkit/borel_laplace.hpp"
#include "asymkit/config.hpp"
#include "asymkit/error.hpp"
#include "asymkit/harry_dym_inner.hpp"
#include "asymkit/harry_dym_outer.hpp"
#include "asymkit/heat.hpp"
#include "asymkit/ilt.hpp"
#include "asymkit/json_io.hpp"
#include "asymkit/p1.hpp"
#include "asymkit/singularities.hpp"

namespace asymkit::cli {

namespace {

using nlohmann::json;

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double to_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(Errc::configuration, "malformed number '" + text + "' in " + what);
}

int to_int(const std::string& text, const std::string& what) {
  const double v = to_double(text, what);
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    throw Error(Errc::configuration, "expected an integer in " + what + ", got '" + text + "'");
  }
  return static_cast<int>(v);
}

// A number, [re, im], or an exact "p/q" string.
Complex json_complex(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  if (v.is_string()) return parse_rational(v.get<std::string>()).get_d();
  throw Error(Errc::configuration, "expected a number, [re, im] or \"p/q\", got " + v.dump());
}

bool is_scalar_json(const json& v) {
  return v.is_number() || v.is_string() ||
         (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number());
}

GridFunction grid_json(const json& v, double p_max, int m, const std::string& what) {
  if (is_scalar_json(v)) return GridFunction::constant(json_complex(v), p_max, m);
  if (v.is_array() && v.size() == static_cast<std::size_t>(m) + 1) {
    std::vector<Complex> values;
    for (const auto& e : v) values.push_back(json_complex(e));
    return GridFunction(p_max, std::move(values));
  }
  throw Error(Errc::configuration, what + " must be a constant or " + std::to_string(m + 1) + " samples");
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::configuration, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(Errc::configuration, "'" + path + "' is not valid JSON: " + e.what());
  }
}

struct Common {
  std::string config_file;
  std::string out_path;
  std::vector<std::string> settings;
};

SolverConfig base_config(const Common& common) {
  SolverConfig cfg;
  std::string path = common.config_file;
  if (path.empty()) {
    if (const char* env = std::getenv(kConfigEnvVar)) path = env;
  }
  if (!path.empty()) cfg = load_config_file(path, cfg);
  for (const auto& s : common.settings) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw Error(Errc::configuration, "--set expects key=value, got '" + s + "'");
    apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
  }
  return cfg;
}

// ---------------------------------------------------------------------------

struct P1Options {
  int terms = 3;
  int branch = 0;
};

std::string run_p1(const SolverConfig& cfg, const P1Options& o) {
  if (o.terms < 1) throw Error(Errc::configuration, "--terms must be at least 1");
  const int sign = o.branch != 0 ? o.branch : cfg.sqrt_branch;
  const auto s = p1::p1_formal_series(static_cast<std::size_t>(o.terms),
                                      sign > 0 ? Branch::principal : Branch::negative);
  return series_to_json(s.series).dump(2) + "\n";
}

struct HeatOptions {
  std::string datum = "gaussian";
  double t = 1.0;
  std::string x_range = "-3:3:0.5";
};

std::string run_heat(const SolverConfig& cfg, const HeatOptions& o) {
  const auto u = InitialDatum::by_name(o.datum);
  const auto r = split(o.x_range, ':');
  if (r.size() != 3) throw Error(Errc::configuration, "--x-range expects a:b:step");
  const double a = to_double(r[0], "--x-range"), b = to_double(r[1], "--x-range"),
               step = to_double(r[2], "--x-range");
  if (!(step > 0.0) || !(b >= a)) throw Error(Errc::configuration, "--x-range needs a <= b and step > 0");
  if (!(o.t > 0.0)) throw Error(Errc::configuration, "--t must be positive");
  const int count = static_cast<int>(std::floor((b - a) / step + 1e-9)) + 1;

  std::ostringstream csv;
  json rows = json::array();
  csv << "x,hk1,hk2,abs_diff\n";
  for (int i = 0; i < count; ++i) {
    const double x = a + i * step;
    const double hk1 = heat_borel_solution(u, o.t, x, cfg);
    const double hk2 = heat_kernel_solution(u, o.t, x, cfg);
    const double diff = std::abs(hk1 - hk2);
    csv << number(x) << ',' << number(hk1) << ',' << number(hk2) << ',' << number(diff) << '\n';
    rows.push_back({{"x", x}, {"hk1", hk1}, {"hk2", hk2}, {"abs_diff", diff}});
  }
  return cfg.output_format == "json" ? rows.dump(2) + "\n" : csv.str();
}

struct BorelOptions {
  std::string coeffs;
  std::string t;
  std::string pade;
};

std::string run_borel(const SolverConfig& cfg, const BorelOptions& o) {
  const json j = read_json_file(o.coeffs);
  Complex a0 = 0.0;
  json list = j;
  if (j.is_object()) {
    if (!j.contains("coefficients")) throw Error(Errc::configuration, "coefficient file lacks \"coefficients\"");
    list = j["coefficients"];
    if (j.contains("a0")) a0 = json_complex(j["a0"]);
  }
  if (!list.is_array() || list.empty()) throw Error(Errc::configuration, "coefficients must be a non-empty array");
  std::vector<Complex> a;
  for (const auto& e : list) a.push_back(json_complex(e));
  const Complex t = parse_complex(o.t);
  const BorelSeries b = borel_transform(a);

  LaplaceResult r;
  if (!o.pade.empty()) {
    const auto mn = split(o.pade, ',');
    if (mn.size() != 2) throw Error(Errc::configuration, "--pade expects M,N");
    const PadeApproximant pa = pade_approximant(b, to_int(mn[0], "--pade"), to_int(mn[1], "--pade"));
    r = laplace_sum(pa, t, cfg);
  } else {
    r = laplace_sum([&b](Complex p) { return b.evaluate(p); }, t, cfg);
  }
  return json{{"value", complex_json(a0 + r.value)}, {"error_estimate", r.error_estimate}}.dump() + "\n";
}

std::string run_ilt(const SolverConfig& base, const std::string& path) {
  const json j = read_json_file(path);
  SolverConfig cfg = base;
  try {
    cfg.p_max = j.value("p_max", cfg.p_max);
    cfg.grid_m = j.value("M", cfg.grid_m);
    cfg.weight_alpha = j.value("alpha", cfg.weight_alpha);
    cfg.validate();
    if (!j.contains("t_final") || !j.contains("steps")) {
      throw Error(Errc::configuration, "problem file needs t_final and steps");
    }
    const double t_final = j.at("t_final").get<double>();
    const int steps = j.at("steps").get<int>();
    const double tol = j.value("tol", 1e-12);
    const int max_iterations = j.value("max_iterations", 200);
    const double p_max = cfg.p_max;
    const int m = cfg.grid_m;

    const GridFunction initial = grid_json(j.value("initial", json(1.0)), p_max, m, "initial");
    NonlinearitySpec spec;
    for (const auto& term : j.value("terms", json::array())) {
      spec.terms.push_back({term.at("j").get<int>(), term.at("k").get<int>(),
                            grid_json(term.at("kernel"), p_max, m, "kernel")});
    }
    if (j.contains("forcing_by_time")) {
      const auto& f = j["forcing_by_time"];
      if (!f.is_array() || f.size() != static_cast<std::size_t>(steps) + 1) {
        throw Error(Errc::configuration, "forcing_by_time needs steps + 1 entries");
      }
      for (const auto& e : f) spec.forcing.push_back(grid_json(e, p_max, m, "forcing_by_time"));
    } else if (j.contains("forcing")) {
      spec.forcing.assign(static_cast<std::size_t>(steps) + 1, grid_json(j["forcing"], p_max, m, "forcing"));
    }

    const PicardResult r = picard_solve(initial, spec, t_final, steps, tol, cfg.weight_alpha, max_iterations);
    json solution = json::array();
    for (const auto& g : r.solution) {
      json row = json::array();
      for (const auto& v : g.values) row.push_back(complex_json(v));
      solution.push_back(row);
    }
    json out{{"p_max", p_max},
             {"M", m},
             {"times", r.times},
             {"solution", solution},
             {"differences", r.differences},
             {"ratios", r.ratios},
             {"iterations", r.iterations}};
    if (j.contains("evaluate")) {
      json evals = json::array();
      for (const auto& y : j["evaluate"]) {
        const auto e = laplace_evaluate(r.solution.back(), json_complex(y), j.value("evaluate_tol", 1e-10));
        evals.push_back({{"y", complex_json(json_complex(y))},
                         {"value", complex_json(e.value)},
                         {"tail_bound", e.tail_bound}});
      }
      out["evaluations"] = evals;
    }
    return out.dump() + "\n";
  } catch (const json::exception& e) {
    throw Error(Errc::configuration, std::string("malformed problem file: ") + e.what());
  }
}

std::string run_hd_coeffs(int order) {
  if (order < 0) throw Error(Errc::configuration, "--order must be non-negative");
  json list = json::array();
  for (const auto& c : hd::hd_outer_coeffs(static_cast<std::size_t>(order)).coeffs) {
    list.push_back(series_to_json(c));
  }
  return list.dump(2) + "\n";
}

struct HdEvalOptions {
  std::string x;
  std::string t;
  int order = 2;
};

std::string run_hd_eval(const HdEvalOptions& o) {
  if (o.order < 0) throw Error(Errc::configuration, "--order must be non-negative");
  const auto v = hd::hd_outer_eval(parse_complex(o.x), parse_complex(o.t), static_cast<std::size_t>(o.order));
  return json{{"value", complex_json(v.value)},
              {"first_neglected", complex_json(v.first_neglected)},
              {"error_proxy", v.error_proxy}}
             .dump() +
         "\n";
}

std::string run_hd_inner(const SolverConfig& cfg, int orders) {
  if (orders < 0) throw Error(Errc::configuration, "--orders must be non-negative");
  const hd::InnerSolution sol = hd::solve_hierarchy(static_cast<std::size_t>(orders), cfg);
  json list = json::array();
  for (std::size_t k = 0; k < sol.orders.size(); ++k) {
    json values = json::array();
    for (const auto& g : sol.orders[k].g) values.push_back(complex_json(g));
    const auto res = hd::node_residuals(sol, k);
    const double worst = res.empty() ? 0.0 : *std::max_element(res.begin(), res.end());
    list.push_back({{"k", k}, {"values", values}, {"max_residual", worst}});
  }
  return json{{"ray_deg", cfg.ray_deg},
              {"eta_max", cfg.eta_max},
              {"eta_min", cfg.eta_min},
              {"radii", sol.radii},
              {"orders", list}}
             .dump() +
         "\n";
}

struct HdSingOptions {
  std::string n = "1:40";
  bool skip_exponents = false;
};

std::string run_hd_singularities(const SolverConfig& cfg, const HdSingOptions& o, std::ostream& err) {
  const auto r = split(o.n, ':');
  if (r.empty() || r.size() > 2) throw Error(Errc::configuration, "--n expects lo:hi or a single index");
  const int lo = to_int(r[0], "--n");
  const int hi = r.size() == 2 ? to_int(r[1], "--n") : lo;

  hd::StokesConstant c;
  if (cfg.stokes) {
    c.value = *cfg.stokes;
  } else {
    c = hd::calibrate_stokes_constant(cfg);
    err << "stokes constant fitted: " << number(c.value.real()) << "," << number(c.value.imag())
        << " (relative misfit " << number(c.fit_residual) << ")\n";
  }
  auto records = hd::eta_singularities(lo, hi, c, cfg);
  if (!o.skip_exponents) {
    for (auto& rec : records) {
      try {
        rec.fitted_exponent = hd::locate_singularity(rec.n, c, cfg).fitted_exponent;
      } catch (const Error&) {
        // left empty: G_0 could not be continued to this branch
      }
    }
  }

  if (cfg.output_format == "json") {
    json list = json::array();
    for (const auto& rec : records) {
      list.push_back({{"n", rec.n},
                      {"eta_s", complex_json(rec.eta_s)},
                      {"residual", rec.newton_residual},
                      {"fitted_exponent", rec.fitted_exponent ? json(*rec.fitted_exponent) : json(nullptr)},
                      {"in_wedge", rec.in_wedge},
                      {"stokes", complex_json(rec.stokes)},
                      {"stokes_provenance",
                       c.provenance == hd::StokesConstant::Provenance::fitted ? "fitted" : "user"}});
    }
    return list.dump(2) + "\n";
  }
  std::ostringstream csv;
  csv << "n,re_eta_s,im_eta_s,residual,fitted_exponent\n";
  for (const auto& rec : records) {
    csv << rec.n << ',' << number(rec.eta_s.real()) << ',' << number(rec.eta_s.imag()) << ','
        << number(rec.newton_residual) << ',' << (rec.fitted_exponent ? number(*rec.fitted_exponent) : "")
        << '\n';
  }
  return csv.str();
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Computational asymptotics: formal series, Borel-Laplace summation, Harry Dym pipeline",
               "asymkit"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.failure_message(CLI::FailureMessage::help);

  Common common;
  app.add_option("--config-file", common.config_file,
                 std::string("flat key = value solver settings (default: $") + kConfigEnvVar + ")");
  app.add_option("--out", common.out_path, "write the artifact to this file");
  app.add_option("--set", common.settings, "override one solver setting as key=value (repeatable)");

  P1Options p1o;
  auto* p1 = app.add_subcommand("p1-series", "formal P1 series y'' = 6y^2 + x as exact JSON");
  p1->add_option("--terms", p1o.terms, "number of coefficients")->capture_default_str();
  p1->add_option("--branch", p1o.branch, "+1 or -1 (default: sqrt_branch setting)")
      ->check(CLI::IsMember({-1, 1}));

  HeatOptions ho;
  auto* heat = app.add_subcommand("heat-demo", "Borel-plane and heat-kernel solutions side by side");
  heat->add_option("--datum", ho.datum, "const, linear, gaussian or poly-gaussian")->capture_default_str();
  heat->add_option("--t", ho.t, "time")->capture_default_str();
  heat->add_option("--x-range", ho.x_range, "a:b:step")->capture_default_str();
  std::string heat_format;
  heat->add_option("--format", heat_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  BorelOptions bo;
  auto* borel = app.add_subcommand("borel-sum", "Borel-Laplace sum of a coefficient list");
  borel->add_option("--coeffs", bo.coeffs, "JSON file with a_1, a_2, ...")->required();
  borel->add_option("--t", bo.t, "RE,IM")->required();
  borel->add_option("--pade", bo.pade, "M,N Pade degrees in the Borel plane");

  std::string ilt_path;
  auto* ilt = app.add_subcommand("ilt-solve", "Picard solve of the Borel-plane evolution equation");
  ilt->add_option("--config", ilt_path, "JSON problem file")->required();

  int hd_order = 2;
  auto* coeffs = app.add_subcommand("hd-coeffs", "exact small-time coefficients c_0..c_N");
  coeffs->add_option("--order", hd_order, "N")->capture_default_str();

  HdEvalOptions eo;
  auto* eval = app.add_subcommand("hd-eval", "outer series value with error proxy");
  eval->add_option("--x", eo.x, "RE[,IM]")->required();
  eval->add_option("--t", eo.t, "RE[,IM]")->required();
  eval->add_option("--order", eo.order, "N")->capture_default_str();

  double ray_deg = 0, eta_max = 0, eta_min = 0;
  int inner_orders = 3;
  auto* inner = app.add_subcommand("hd-inner", "inner hierarchy G_0..G_K along a ray");
  auto* ray_opt = inner->add_option("--ray-deg", ray_deg, "ray angle in degrees");
  auto* max_opt = inner->add_option("--eta-max", eta_max, "outer end of the ray");
  auto* min_opt = inner->add_option("--eta-min", eta_min, "inner end of the ray");
  inner->add_option("--orders", inner_orders, "K")->capture_default_str();

  HdSingOptions so;
  std::string stokes_text;
  std::string sing_format;
  auto* sing = app.add_subcommand("hd-singularities", "singularity locations per branch index");
  sing->add_option("--n", so.n, "lo:hi")->capture_default_str();
  sing->add_option("--stokes", stokes_text, "RE,IM (fitted from G_0 when absent)");
  sing->add_flag("--skip-exponents", so.skip_exponents, "do not continue G_0 to each singularity");
  sing->add_option("--format", sing_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream help_out;
    const int code = app.exit(e, help_out, err);
    if (code == 0) {
      out << help_out.str();
      return kExitOk;
    }
    return kExitUsage;
  }

  std::string payload;
  try {
    SolverConfig cfg = base_config(common);
    if (p1->parsed()) {
      cfg.validate();
      payload = run_p1(cfg, p1o);
    } else if (heat->parsed()) {
      if (!heat_format.empty()) cfg.output_format = heat_format;
      cfg.validate();
      payload = run_heat(cfg, ho);
    } else if (borel->parsed()) {
      cfg.validate();
      payload = run_borel(cfg, bo);
    } else if (ilt->parsed()) {
      payload = run_ilt(cfg, ilt_path);
    } else if (coeffs->parsed()) {
      payload = run_hd_coeffs(hd_order);
    } else if (eval->parsed()) {
      payload = run_hd_eval(eo);
    } else if (inner->parsed()) {
      if (ray_opt->count()) cfg.ray_deg = ray_deg;
      if (max_opt->count()) cfg.eta_max = eta_max;
      if (min_opt->count()) cfg.eta_min = eta_min;
      cfg.validate();
      payload = run_hd_inner(cfg, inner_orders);
    } else if (sing->parsed()) {
      if (!stokes_text.empty()) cfg.stokes = parse_complex(stokes_text);
      if (!sing_format.empty()) cfg.output_format = sing_format;
      cfg.validate();
      payload = run_hd_singularities(cfg, so, err);
    }
  } catch (const Error& e) {
    out << error_json(e.code(), e.what()) << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    out << json{{"error", "internal"}, {"message", e.what()}}.dump() << '\n';
    return kExitDomain;
  }

  if (common.out_path.empty()) {
    out << payload;
    return kExitOk;
  }
  std::ofstream file(common.out_path, std::ios::binary);
  file << payload;
  if (!file) {
    out << error_json(Errc::configuration, "cannot write '" + common.out_path + "'") << '\n';
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace asymkit::cli
