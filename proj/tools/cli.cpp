#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "orad/errors.hpp"
#include "orad/frac_calc.hpp"
#include "orad/grassmann_mc.hpp"
#include "orad/identities.hpp"
#include "orad/parallel.hpp"
#include "orad/radon_radial.hpp"
#include "report_io.hpp"

namespace orad::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Common {
  int n = 4, p = 1, q = 1, l = 1;
  bool special = false;
  std::string profile = "gaussian";
  double param = kNaN;
  double scale = 1.0;
  std::string grid_file;
  std::vector<double> at;
  std::string grid;
  std::string format;
  std::string output;
  int threads = 0;
  std::uint64_t seed = 1;
  std::int64_t samples = 100000;
};

GrassmannConfig make_config(const Common& c) {
  return GrassmannConfig::make(c.n, c.p, c.q, c.l,
                               c.special ? GrassmannConfig::Mode::special_case : GrassmannConfig::Mode::strict);
}

double need(double v, const char* what) {
  if (std::isnan(v)) throw DomainError(std::string("missing --param (") + what + ")");
  return v;
}

RadialProfile make_profile(const Common& c) {
  RadialProfile f;
  if (c.profile == "gaussian") {
    f = RadialProfile::gaussian(std::isnan(c.param) ? 1.0 : c.param);
  } else if (c.profile == "power") {
    f = RadialProfile::power_law(need(c.param, "lambda"));
  } else if (c.profile == "cauchy") {
    f = RadialProfile::generalized_cauchy(need(c.param, "beta"));
  } else if (c.profile == "log-tempered") {
    f = RadialProfile::log_tempered_power(need(c.param, "exponent"));
  } else if (c.profile == "zero") {
    f = RadialProfile::zero();
  } else if (c.profile == "grid") {
    if (c.grid_file.empty()) throw DomainError("--profile grid needs --grid-file");
    f = read_profile_csv_file(c.grid_file);
  } else {
    throw DomainError("unknown profile '" + c.profile + "' (gaussian, power, cauchy, log-tempered, zero, grid)");
  }
  return c.scale == 1.0 ? f : f.scaled(c.scale);
}

std::vector<double> radii(const Common& c, const std::vector<double>& fallback) {
  if (!c.at.empty()) return c.at;
  if (!c.grid.empty()) {
    LogGrid g;
    char s1 = 0, s2 = 0;
    std::istringstream is(c.grid);
    if (!(is >> g.lo >> s1 >> g.hi >> s2 >> g.count) || s1 != ':' || s2 != ':' || !(g.lo > 0.0) ||
        !(g.hi > g.lo) || g.count < 2) {
      throw DomainError("--grid expects lo:hi:count with 0 < lo < hi and count >= 2");
    }
    return g.points();
  }
  return fallback;
}

json meta_for(const std::string& command, const Common& c, const GrassmannConfig* cfg) {
  json m;
  m["tool"] = "orad";
  m["version"] = kVersion;
  m["command"] = command;
  if (cfg) m["config"] = to_json(*cfg);
  m["profile"] = c.profile;
  if (!std::isnan(c.param)) m["param"] = c.param;
  if (c.scale != 1.0) m["scale"] = c.scale;
  if (!c.grid_file.empty()) m["grid_file"] = c.grid_file;
  m["seed"] = c.seed;
  const NumericSpec spec;
  m["tolerances"] = json{{"quadrature_rel_tol", spec.quad.rel_tol},
                         {"quadrature_max_refinements", spec.quad.max_refinements},
                         {"derivative_rel_tol", spec.deriv.rel_tol}};
  return m;
}

int exit_for(const std::vector<Verdict>& vs) {
  bool mismatch = false;
  for (Verdict v : vs) {
    if (v == Verdict::fail) return verdict_fail;
    if (v == Verdict::constant_mismatch) mismatch = true;
  }
  return mismatch ? verdict_mismatch : ok;
}

Verdict worst(const std::vector<Verdict>& vs) {
  const int e = exit_for(vs);
  return e == verdict_fail ? Verdict::fail : e == verdict_mismatch ? Verdict::constant_mismatch : Verdict::pass;
}

// Evaluates fn at each radius in parallel; output order is the input order.
std::vector<double> evaluate(const std::vector<double>& r, const std::function<double(double)>& fn) {
  std::vector<double> v(r.size());
  parallel_for(r.size(), [&](std::size_t i) { v[i] = fn(r[i]); });
  return v;
}

void emit_table(std::ostream& os, const std::string& format, json meta, const std::vector<std::string>& cols,
                const std::vector<std::vector<double>>& rows) {
  if (format == "json") {
    json doc;
    doc["meta"] = std::move(meta);
    json table = json::array();
    for (const auto& row : rows) {
      json o;
      for (std::size_t i = 0; i < cols.size(); ++i) o[cols[i]] = row[i];
      table.push_back(o);
    }
    doc["rows"] = table;
    os << doc.dump(2) << '\n';
  } else {
    write_csv(os, meta, cols, rows);
  }
}

void emit_reports(std::ostream& os, const std::string& format, json meta, const json& reports, Verdict overall) {
  if (format == "csv") {
    for (const auto& [k, v] : meta.items()) {
      os << "# " << k << '=' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    }
    os << "# verdict=" << to_string(overall) << '\n';
    os << "identity,probe,lhs,rhs,verdict\n";
    for (const auto& r : reports) {
      const auto& probes = r.contains("probes") ? r["probes"] : json::array();
      for (std::size_t i = 0; i < probes.size(); ++i) {
        os << r["identity"].get<std::string>() << ',' << number(probes[i].get<double>()) << ','
           << number(r["lhs"][i].get<double>()) << ',' << number(r["rhs"][i].get<double>()) << ','
           << r["verdict"].get<std::string>() << '\n';
      }
    }
    return;
  }
  json doc;
  doc["meta"] = std::move(meta);
  doc["reports"] = reports;
  doc["verdict"] = to_string(overall);
  os << doc.dump(2) << '\n';
}

WeightedDuality parse_weighted(const std::string& s) {
  static const std::map<std::string, WeightedDuality> m{{"dual-power", WeightedDuality::dual_power},
                                                          {"forward-power", WeightedDuality::forward_power},
                                                          {"dual-cauchy", WeightedDuality::dual_cauchy},
                                                          {"forward-cauchy", WeightedDuality::forward_cauchy}};
  const auto it = m.find(s);
  if (it == m.end()) throw DomainError("unknown --which '" + s + "'");
  return it->second;
}

double z_score(double a, double sa, double b, double sb) {
  const double s = std::hypot(sa, sb);
  return s > 0.0 ? (a - b) / s : (a == b ? 0.0 : HUGE_VAL);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Radial orthogonal Radon transforms on Grassmannians"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file supplying any flag; command-line flags take precedence");
  app.set_version_flag("--version", kVersion);

  Common c;
  app.add_option("--n", c.n, "ambient dimension")->capture_default_str();
  app.add_option("--p", c.p, "dim of the common subspace")->capture_default_str();
  app.add_option("--q", c.q, "j = p + q")->capture_default_str();
  app.add_option("--l", c.l, "k = p + l")->capture_default_str();
  app.add_flag("--special", c.special, "admit p = 0 or q = 0");
  app.add_option("--profile", c.profile, "gaussian | power | cauchy | log-tempered | zero | grid")
      ->capture_default_str();
  app.add_option("--param", c.param, "profile parameter (scale, lambda, beta or exponent)");
  app.add_option("--scale", c.scale, "multiply the profile by this constant");
  app.add_option("--grid-file", c.grid_file, "CSV grid profile");
  app.add_option("--at", c.at, "radii, comma separated")->delimiter(',');
  app.add_option("--grid", c.grid, "log grid lo:hi:count");
  app.add_option("--format", c.format, "csv | json | text");
  app.add_option("--output", c.output, "write to this file instead of stdout");
  app.add_option("--threads", c.threads, "worker threads (default: ORAD_THREADS or all cores)");
  app.add_option("--seed", c.seed, "random seed")->capture_default_str();
  app.add_option("--samples", c.samples, "Monte Carlo sample count")->capture_default_str();

  // transform
  auto* transform = app.add_subcommand("transform", "radial transforms at given radii");
  std::string t_op = "strichartz-forward";
  int jj = -1, kk = -1;
  transform->add_option("--op", t_op, "strichartz-forward | strichartz-dual | inclusion | kplane | dual-kplane")
      ->capture_default_str();
  transform->add_option("--jj", jj, "inclusion: inner plane dimension");
  transform->add_option("--kk", kk, "inclusion / k-plane: outer plane dimension");

  // invert
  auto* invert = app.add_subcommand("invert", "radial inversion of the forward or dual transform");
  std::string i_op = "forward";
  bool compose = false;
  invert->add_option("--op", i_op, "forward | dual")->capture_default_str();
  invert->add_flag("--compose", compose, "transform the profile first, then invert and compare");

  // riesz
  auto* riesz = app.add_subcommand("riesz", "radial Riesz potential");
  double alpha = kNaN;
  int dim = 0;
  std::string backend = "both";
  riesz->add_option("--alpha", alpha, "order")->required();
  riesz->add_option("--d", dim, "dimension (default n)");
  riesz->add_option("--backend", backend, "angular | ek | both")->capture_default_str();

  // semyanistyi
  auto* semy = app.add_subcommand("semyanistyi", "Semyanistyi integral P_k^alpha on R^n");
  semy->add_option("--alpha", alpha, "order")->required();
  semy->add_option("--kk", kk, "plane dimension")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "verification suites");
  std::string suite;
  double beta = 0.0, lambda = kNaN, a1 = 0.5, a2 = 0.5, tol = kNaN;
  std::string side = "dual", which = "forward-power", ek_side = "minus", proposal = "gaussian";
  verify
      ->add_option("--suite", suite,
                   "duality | fuglede | intertwine | semyanistyi | weighted | range-inversion | semigroup | "
                   "sharpness | mc-vs-radial | standard")
      ->required();
  verify->add_option("--alpha", alpha, "alpha");
  verify->add_option("--beta", beta, "beta (fuglede)");
  verify->add_option("--lambda", lambda, "lambda (weighted)");
  verify->add_option("--which", which, "weighted: dual-power | forward-power | dual-cauchy | forward-cauchy");
  verify->add_option("--side", side, "semyanistyi: dual | forward");
  verify->add_option("--a1", a1, "semigroup: first order");
  verify->add_option("--a2", a2, "semigroup: second order");
  verify->add_option("--ek-side", ek_side, "semigroup: plus | minus");
  verify->add_option("--tol", tol, "semigroup tolerance (default 1e-8)");
  verify->add_option("--proposal", proposal, "mc: gaussian | cauchy");

  // constants
  auto* constants = app.add_subcommand("constants", "evaluate a named constant");
  std::string name;
  bool list = false;
  int ck = 0;
  constants->add_option("--name", name, "constant name");
  constants->add_flag("--list", list, "list constant names");
  constants->add_option("--lambda", lambda, "lambda");
  constants->add_option("--alpha", alpha, "alpha");
  constants->add_option("--k", ck, "k for c_kn");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "sweep a constant over a parameter");
  std::string var = "lambda";
  double from = kNaN, to = kNaN;
  int steps = 11;
  sweep->add_option("--name", name, "constant name")->required();
  sweep->add_option("--var", var, "lambda | alpha")->capture_default_str();
  sweep->add_option("--from", from, "first value")->required();
  sweep->add_option("--to", to, "last value")->required();
  sweep->add_option("--steps", steps, "number of values")->capture_default_str();
  sweep->add_option("--k", ck, "k for c_kn");

  for (auto* s : {transform, invert, riesz, semy, verify, constants, sweep}) s->fallthrough();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }

  std::ofstream file;
  if (!c.output.empty()) {
    file.open(c.output);
    if (!file) {
      err << "error: cannot open " << c.output << '\n';
      return usage;
    }
  }
  std::ostream& os = c.output.empty() ? out : file;

  try {
    if (c.threads < 0) throw DomainError("--threads must be non-negative");
    if (c.threads > 0) ::setenv("ORAD_THREADS", std::to_string(c.threads).c_str(), 1);
    const std::string fmt = c.format;
    if (!fmt.empty() && fmt != "csv" && fmt != "json" && fmt != "text") {
      throw DomainError("--format must be csv, json or text");
    }

    if (*constants || *sweep) {
      ConstantParams pr;
      pr.n = c.n;
      pr.p = c.p;
      pr.q = c.q;
      pr.l = c.l;
      pr.k = ck;
      pr.lambda = lambda;
      pr.alpha = alpha;
      json meta = meta_for(constants->parsed() ? "constants" : "sweep", c, nullptr);
      meta["n"] = c.n;
      meta["p"] = c.p;
      meta["q"] = c.q;
      meta["l"] = c.l;
      if (*constants) {
        if (list) {
          for (const auto& s : constant_names()) os << s << '\n';
          return ok;
        }
        if (name.empty()) throw DomainError("constants needs --name or --list");
        const double v = constant(name, pr);
        meta["name"] = name;
        if (!std::isnan(lambda)) meta["lambda"] = lambda;
        if (!std::isnan(alpha)) meta["alpha"] = alpha;
        if (fmt == "json") {
          os << json{{"meta", meta}, {"name", name}, {"value", v}}.dump(2) << '\n';
        } else if (fmt == "csv") {
          write_csv(os, meta, {"value"}, {{v}});
        } else {
          for (const auto& [k, x] : meta.items()) {
            os << "# " << k << '=' << (x.is_string() ? x.get<std::string>() : x.dump()) << '\n';
          }
          os << number(v) << '\n';
        }
        return ok;
      }
      if (steps < 2) throw DomainError("--steps must be at least 2");
      if (var != "lambda" && var != "alpha") throw DomainError("--var must be lambda or alpha");
      meta["name"] = name;
      meta["var"] = var;
      std::vector<std::vector<double>> rows;
      for (int i = 0; i < steps; ++i) {
        const double x = from + (to - from) * i / (steps - 1);
        (var == "lambda" ? pr.lambda : pr.alpha) = x;
        double v = kNaN;
        try {
          v = constant(name, pr);
        } catch (const DomainError&) {
          // pole or outside the domain: left as nan in the table
        }
        rows.push_back({x, v});
      }
      emit_table(os, fmt.empty() ? "csv" : fmt, meta, {var, "value"}, rows);
      return ok;
    }

    if (*semy) {
      const RadialProfile f = make_profile(c);
      const auto r = radii(c, default_probes());
      json meta = meta_for("semyanistyi", c, nullptr);
      meta["n"] = c.n;
      meta["kk"] = kk;
      meta["alpha"] = alpha;
      const auto v = evaluate(r, [&](double s) { return semyanistyi_radial(f, c.n, kk, alpha, s); });
      std::vector<std::vector<double>> rows;
      for (std::size_t i = 0; i < r.size(); ++i) rows.push_back({r[i], v[i]});
      emit_table(os, fmt.empty() ? "csv" : fmt, meta, {"radius", "value"}, rows);
      return ok;
    }

    if (*riesz) {
      const RadialProfile f = make_profile(c);
      const int d = dim > 0 ? dim : c.n;
      const auto r = radii(c, default_probes());
      json meta = meta_for("riesz", c, nullptr);
      meta["d"] = d;
      meta["alpha"] = alpha;
      meta["backend"] = backend;
      std::vector<std::vector<double>> rows;
      if (backend == "both") {
        const auto a = evaluate(r, [&](double s) { return riesz_radial(f, alpha, d, s, RieszBackend::angular_kernel); });
        const auto b = evaluate(r, [&](double s) { return riesz_radial(f, alpha, d, s, RieszBackend::ek_factorized); });
        for (std::size_t i = 0; i < r.size(); ++i) {
          const double diff = a[i] == b[i] ? 0.0 : std::abs(a[i] - b[i]) / std::abs(b[i]);
          rows.push_back({r[i], a[i], b[i], diff});
        }
        emit_table(os, fmt.empty() ? "csv" : fmt, meta, {"radius", "angular", "ek", "rel_diff"}, rows);
      } else {
        if (backend != "angular" && backend != "ek") throw DomainError("--backend must be angular, ek or both");
        const auto be = backend == "angular" ? RieszBackend::angular_kernel : RieszBackend::ek_factorized;
        const auto v = evaluate(r, [&](double s) { return riesz_radial(f, alpha, d, s, be); });
        for (std::size_t i = 0; i < r.size(); ++i) rows.push_back({r[i], v[i]});
        emit_table(os, fmt.empty() ? "csv" : fmt, meta, {"radius", "value"}, rows);
      }
      return ok;
    }

    const GrassmannConfig cfg = make_config(c);
    const RadialProfile f = make_profile(c);

    if (*transform) {
      const auto r = radii(c, default_probes());
      json meta = meta_for("transform", c, &cfg);
      meta["op"] = t_op;
      std::function<double(double)> fn;
      if (t_op == "strichartz-forward") {
        fn = [&](double s) { return strichartz_forward_radial(f, cfg, s); };
      } else if (t_op == "strichartz-dual") {
        fn = [&](double s) { return strichartz_dual_radial(f, cfg, s); };
      } else if (t_op == "inclusion") {
        if (jj < 0 || kk < 0) throw DomainError("inclusion needs --jj and --kk");
        meta["jj"] = jj;
        meta["kk"] = kk;
        fn = [&](double s) { return inclusion_radial(f, jj, kk, cfg.n, s); };
      } else if (t_op == "kplane" || t_op == "dual-kplane") {
        if (kk < 1) throw DomainError(t_op + " needs --kk");
        meta["kk"] = kk;
        if (t_op == "kplane") {
          fn = [&](double s) { return inclusion_radial(f, 0, kk, cfg.n, s); };
        } else {
          fn = [&](double s) { return dual_kplane_radial(f, cfg.n, kk, s); };
        }
      } else {
        throw DomainError("unknown --op '" + t_op + "'");
      }
      const auto v = evaluate(r, fn);
      std::vector<std::vector<double>> rows;
      for (std::size_t i = 0; i < r.size(); ++i) rows.push_back({r[i], v[i]});
      emit_table(os, fmt.empty() ? "csv" : fmt, meta, {"radius", "value"}, rows);
      return ok;
    }

    if (*invert) {
      if (i_op != "forward" && i_op != "dual") throw DomainError("--op must be forward or dual");
      const bool fwd = i_op == "forward";
      const auto r = radii(c, {0.2, 0.3, 0.5, 0.8, 1.0, 1.5, 2.0, 2.5, 3.0});
      json meta = meta_for("invert", c, &cfg);
      meta["op"] = i_op;
      meta["compose"] = compose;
      const RadialProfile phi =
          compose ? (fwd ? strichartz_forward_profile(f, cfg) : strichartz_dual_profile(f, cfg)) : f;
      const InversionResult res =
          fwd ? strichartz_invert_radial(phi, cfg, r) : strichartz_dual_invert_radial(phi, cfg, r);
      std::vector<std::vector<double>> rows;
      std::vector<std::string> cols{"radius", "value", "error_bound"};
      if (compose) {
        cols.push_back("original");
        cols.push_back("rel_error");
      }
      double worst_err = 0.0;
      for (std::size_t i = 0; i < r.size(); ++i) {
        std::vector<double> row{r[i], res.values[i], res.error_bounds[i]};
        if (compose) {
          const double o = f(r[i]);
          const double e = o == res.values[i] ? 0.0 : std::abs(res.values[i] - o) / std::abs(o);
          worst_err = std::max(worst_err, e);
          row.push_back(o);
          row.push_back(e);
        }
        rows.push_back(row);
      }
      if (compose) meta["max_rel_error"] = worst_err;
      emit_table(os, fmt.empty() ? "csv" : fmt, meta, cols, rows);
      return ok;
    }

    // verify
    json meta = meta_for("verify", c, &cfg);
    meta["suite"] = suite;
    const std::string vfmt = fmt.empty() ? "json" : fmt;
    json reports = json::array();
    std::vector<Verdict> verdicts;
    auto add = [&](const IdentityReport& r) {
      reports.push_back(to_json(r));
      verdicts.push_back(r.verdict);
    };
    const double a = std::isnan(alpha) ? 1.0 : alpha;

    if (suite == "intertwine") {
      add(check_intertwining(f, cfg, a, radii(c, default_probes())));
    } else if (suite == "fuglede") {
      add(check_fuglede(f, cfg, std::isnan(alpha) ? 0.0 : alpha, beta, radii(c, default_probes())));
    } else if (suite == "semyanistyi") {
      if (side != "dual" && side != "forward") throw DomainError("--side must be dual or forward");
      add(check_semyanistyi(f, cfg, std::isnan(alpha) ? 0.0 : alpha,
                            side == "dual" ? SemyanistyiSide::dualside : SemyanistyiSide::forwardside,
                            radii(c, default_probes())));
    } else if (suite == "weighted") {
      add(check_weighted_duality(f, cfg, lambda, parse_weighted(which)));
    } else if (suite == "range-inversion") {
      add(invert_via_range(f, cfg, std::isnan(alpha) ? 0.0 : alpha, radii(c, interior_probes())));
    } else if (suite == "standard") {
      for (const auto& r : standard_suite({cfg})) add(r);
    } else if (suite == "semigroup") {
      const double t = std::isnan(tol) ? 1e-8 : tol;
      if (ek_side != "plus" && ek_side != "minus") throw DomainError("--ek-side must be plus or minus");
      const auto r = radii(c, LogGrid{0.1, 10.0, 21}.points());
      const double dev = semigroup_check(f, FracOrder(a1), FracOrder(a2),
                                         ek_side == "plus" ? EkSide::plus : EkSide::minus, r);
      const Verdict v = dev <= t ? Verdict::pass : Verdict::fail;
      reports.push_back(json{{"identity", "semigroup"},
                             {"config", to_json(cfg)},
                             {"parameters", {{"alpha1", a1}, {"alpha2", a2}}},
                             {"side", ek_side},
                             {"probes", r},
                             {"max_rel_dev", dev},
                             {"tolerance", t},
                             {"verdict", to_string(v)}});
      verdicts.push_back(v);
    } else if (suite == "sharpness") {
      const double bound = lp_existence_bound(cfg, TransformSide::forward);
      const std::vector<double> cut{1e1, 1e2, 1e3, 1e4};
      const auto at = sharpness_probe(cfg, bound, cut);
      std::vector<double> far;
      for (int e = 1; e <= 300; ++e) far.push_back(std::pow(10.0, e));
      const auto below = sharpness_probe(cfg, bound - 0.1, far);
      const double growth = at.back() / at.front();
      const double inc = (below.back() - below[below.size() - 2]) / below.back();
      bool monotone = true;
      for (std::size_t i = 1; i < at.size(); ++i) monotone = monotone && at[i] > at[i - 1];
      const Verdict v = monotone && growth > 2.0 && inc < 1e-3 ? Verdict::pass : Verdict::fail;
      reports.push_back(json{{"identity", "sharpness"},
                             {"config", to_json(cfg)},
                             {"bound", bound},
                             {"cutoffs", cut},
                             {"values_at_bound", at},
                             {"growth_ratio", growth},
                             {"below_exponent", bound - 0.1},
                             {"below_final_cutoff", far.back()},
                             {"below_final_relative_increment", inc},
                             {"verdict", to_string(v)}});
      verdicts.push_back(v);
    } else if (suite == "duality") {
      meta["samples"] = c.samples;
      const auto pr = mc_pairing_duality(f, f, cfg, c.samples, c.seed);
      const double z_fd = z_score(pr.forward.mean, pr.forward.std_error, pr.dual.mean, pr.dual.std_error);
      const double z_fr = z_score(pr.forward.mean, pr.forward.std_error, pr.reference, 0.0);
      const double z_dr = z_score(pr.dual.mean, pr.dual.std_error, pr.reference, 0.0);
      const double ref_dev =
          pr.reference == pr.reference_dual ? 0.0 : std::abs(pr.reference - pr.reference_dual) / std::abs(pr.reference);
      const bool good = std::abs(z_fd) <= 3.0 && std::abs(z_fr) <= 3.0 && std::abs(z_dr) <= 3.0 && ref_dev <= 1e-6;
      const Verdict v = good ? Verdict::pass : Verdict::fail;
      const double rel = pr.dual.mean == pr.forward.mean ? 0.0 : std::abs(pr.forward.mean - pr.dual.mean) / std::abs(pr.dual.mean);
      reports.push_back(json{{"identity", "duality"},
                             {"config", to_json(cfg)},
                             {"probes", json::array()},
                             {"lhs", {pr.forward.mean}},
                             {"rhs", {pr.dual.mean}},
                             {"max_rel_dev", rel},
                             {"fitted_constant_ratio", pr.dual.mean != 0.0 ? pr.forward.mean / pr.dual.mean : 1.0},
                             {"verdict", to_string(v)},
                             {"forward", to_json(pr.forward)},
                             {"dual", to_json(pr.dual)},
                             {"reference", pr.reference},
                             {"reference_dual", pr.reference_dual},
                             {"reference_rel_dev", ref_dev},
                             {"z_forward_dual", z_fd},
                             {"z_forward_reference", z_fr},
                             {"z_dual_reference", z_dr}});
      verdicts.push_back(v);
    } else if (suite == "mc-vs-radial") {
      meta["samples"] = c.samples;
      MCOptions o;
      if (proposal == "cauchy") {
        o.proposal.kind = OffsetProposal::Kind::cauchy_adaptive;
      } else if (proposal != "gaussian") {
        throw DomainError("--proposal must be gaussian or cauchy");
      }
      meta["proposal"] = proposal;
      const auto r = radii(c, {0.5, 1.0, 2.0});
      const auto t = mc_vs_radial(f, cfg, r, c.samples, c.seed, o);
      json rows = json::array();
      std::vector<double> lhs, rhs;
      for (const auto& row : t.rows) {
        rows.push_back(json{{"radius", row.radius},
                            {"estimate", to_json(row.estimate)},
                            {"radial", row.radial},
                            {"z", row.z}});
        lhs.push_back(row.estimate.mean);
        rhs.push_back(row.radial);
      }
      const Verdict v = t.max_abs_z <= 3.0 ? Verdict::pass : Verdict::fail;
      reports.push_back(json{{"identity", "mc-vs-radial"},
                             {"config", to_json(cfg)},
                             {"probes", r},
                             {"lhs", lhs},
                             {"rhs", rhs},
                             {"max_abs_z", t.max_abs_z},
                             {"verdict", to_string(v)},
                             {"rows", rows}});
      verdicts.push_back(v);
    } else {
      throw DomainError("unknown --suite '" + suite + "'");
    }
    const Verdict overall = worst(verdicts);
    emit_reports(os, vfmt, meta, reports, overall);
    return exit_for(verdicts);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  }
}

}  // namespace orad::cli
