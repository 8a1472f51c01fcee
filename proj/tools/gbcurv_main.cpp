// gbcurv: curvature-invariant calculator and identity verifier.
//
// Subcommands:
//   invariants       pointwise/algebraic invariants of a manifold spec
//   verify           run identity suites, JSON report, exit 1 on failures
//   conformal        conformal transformation laws for a metric + field
//   list-identities  print the identity catalog
//
// Exit codes: 0 success, 1 identity failure, 2 config error, 3 runtime error.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "gbcurv/chart/operators.hpp"
#include "gbcurv/chart/quadrature.hpp"
#include "gbcurv/common.hpp"
#include "gbcurv/curvinv/invariants.hpp"
#include "gbcurv/models/models.hpp"
#include "gbcurv/parallel.hpp"
#include "gbcurv/rng.hpp"
#include "gbcurv/verify/integral_rows.hpp"
#include "gbcurv/verify/suites.hpp"

namespace {

using gbcurv::ConfigError;
using nlohmann::json;
namespace chart = gbcurv::chart;
namespace curvinv = gbcurv::curvinv;
namespace models = gbcurv::models;
namespace verify = gbcurv::verify;

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) ok = true;
    if (!ok) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
}

struct Manifold {
  int n = 0;
  std::optional<models::ModelManifold> model;
  std::function<chart::ChartMetric(chart::FdConfig)> make_chart;
  std::vector<std::vector<double>> sample_points;
};

Manifold build_manifold(const json& spec);

Manifold build_model(const json& spec) {
  const std::string name = spec.at("model").get<std::string>();
  Manifold m;
  if (name == "space_form" || name == "sphere") {
    check_keys(spec, {"model", "n", "kappa"}, "manifold");
    m.model = models::space_form(spec.at("n").get<int>(),
                                 spec.contains("kappa") ? spec.at("kappa").get<double>() : 1.0);
  } else if (name == "flat_torus") {
    check_keys(spec, {"model", "n", "side"}, "manifold");
    m.model = models::flat_torus(spec.at("n").get<int>(),
                                 spec.contains("side") ? spec.at("side").get<double>()
                                                       : 6.283185307179586476925286766559);
  } else if (name == "product") {
    check_keys(spec, {"model", "factors"}, "manifold");
    const json& factors = spec.at("factors");
    if (!factors.is_array() || factors.size() < 2)
      throw ConfigError("product needs a 'factors' array with at least two entries");
    Manifold acc = build_manifold(factors[0]);
    if (!acc.model) throw ConfigError("product factors must be models");
    models::ModelManifold prod = *acc.model;
    for (std::size_t i = 1; i < factors.size(); ++i) {
      Manifold next = build_manifold(factors[i]);
      if (!next.model) throw ConfigError("product factors must be models");
      prod = models::product(prod, *next.model);
    }
    m.model = std::move(prod);
  } else {
    throw ConfigError("unknown model '" + name + "' (space_form, flat_torus, product)");
  }
  m.n = m.model->n;
  m.make_chart = m.model->make_chart;
  m.sample_points = m.model->sample_points;
  return m;
}

Manifold build_explicit_metric(const json& spec) {
  check_keys(spec, {"metric"}, "manifold");
  const json& metric = spec.at("metric");
  check_keys(metric, {"entries", "domain"}, "manifold.metric");
  const json& entries = metric.at("entries");
  if (!entries.is_array() || entries.empty())
    throw ConfigError("metric.entries must be a nonempty square matrix of expression strings");
  const int n = static_cast<int>(entries.size());
  std::vector<chart::ScalarField> fields(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    const json& row = entries[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw ConfigError("metric.entries must be a square matrix");
    for (int j = 0; j < n; ++j)
      fields[static_cast<std::size_t>(i) * n + j] =
          chart::ScalarField::from_expression(row[static_cast<std::size_t>(j)].get<std::string>());
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      // Entries are re-read symmetrically; both triangles must be given and
      // consistent, which the chart validates pointwise via its SPD checks.
      (void)j;
    }
  const json& dom = metric.at("domain");
  check_keys(dom, {"lo", "hi", "periodic"}, "manifold.metric.domain");
  chart::Domain domain;
  domain.lo = dom.at("lo").get<std::vector<double>>();
  domain.hi = dom.at("hi").get<std::vector<double>>();
  for (bool b : dom.at("periodic").get<std::vector<bool>>())
    domain.periodic.push_back(b ? 1 : 0);
  if (static_cast<int>(domain.lo.size()) != n || static_cast<int>(domain.hi.size()) != n ||
      static_cast<int>(domain.periodic.size()) != n)
    throw ConfigError("metric.domain arrays must have one entry per dimension");
  Manifold m;
  m.n = n;
  m.make_chart = [domain, fields](chart::FdConfig fd) {
    return chart::ChartMetric(domain, fields, fd);
  };
  return m;
}

Manifold build_manifold(const json& spec) {
  if (!spec.is_object()) throw ConfigError("manifold must be a JSON object");
  if (spec.contains("model")) return build_model(spec);
  if (spec.contains("metric")) return build_explicit_metric(spec);
  throw ConfigError("manifold needs either 'model' or 'metric'");
}

std::vector<std::vector<double>> default_points(const Manifold& m, const chart::ChartMetric& metric,
                                                int count, std::uint64_t seed) {
  if (!m.sample_points.empty()) {
    std::vector<std::vector<double>> pts = m.sample_points;
    while (static_cast<int>(pts.size()) > count) pts.pop_back();
    return pts;
  }
  gbcurv::Rng rng(seed);
  std::vector<std::vector<double>> pts;
  const auto& dom = metric.domain();
  for (int s = 0; s < count; ++s) {
    std::vector<double> x(static_cast<std::size_t>(m.n));
    for (int a = 0; a < m.n; ++a) {
      const double lo = dom.lo[static_cast<std::size_t>(a)], hi = dom.hi[static_cast<std::size_t>(a)];
      x[static_cast<std::size_t>(a)] = dom.periodic[static_cast<std::size_t>(a)]
                                           ? rng.uniform(lo, hi)
                                           : rng.uniform(lo + 0.2 * (hi - lo), hi - 0.2 * (hi - lo));
    }
    pts.push_back(std::move(x));
  }
  return pts;
}

json invariant_record(const curvinv::CurvatureContext& ctx) {
  const int n = ctx.n();
  json rec;
  json h = json::object();
  for (int k = 0; 2 * k <= n; ++k) h[std::to_string(2 * k)] = curvinv::gauss_bonnet(ctx, k);
  rec["h"] = h;
  rec["scal"] = ctx.scalar_curvature();
  if (n >= 3) {
    json sigmas = json::object();
    for (int k = 0; k <= n; ++k) sigmas[std::to_string(k)] = curvinv::sigma_k(ctx.schouten(), k);
    rec["sigma"] = sigmas;
    rec["weyl_norm2"] = gbcurv::dfalg::inner_product(ctx.weyl(), ctx.weyl());
    const auto t2 = gbcurv::linalg::jacobi_eigenvalues(gbcurv::dfalg::to_matrix(curvinv::lovelock(ctx, 1)));
    rec["t2_eig"] = {{"min", t2.front()}, {"max", t2.back()}};
    rec["deficiencies"] = {{"einstein", curvinv::einstein_deficiency(ctx)},
                           {"spaceform", curvinv::spaceform_deficiency(ctx)}};
    if (n >= 4) {
      const auto q = curvinv::quadratic_invariants(ctx);
      rec["deficiencies"]["conformally_flat"] = q.confflat_def;
      rec["flags"] = {{"h4_positive", q.h4 > 0.0}, {"sigma2_negative", q.sigma2 < 0.0}};
    }
  }
  return rec;
}

chart::FdConfig fd_from(const json& cfg, int fd_order_flag, double fd_step_flag) {
  chart::FdConfig fd;
  fd.order = cfg.contains("fd_order") ? cfg.at("fd_order").get<int>() : 4;
  if (fd_order_flag > 0) fd.order = fd_order_flag;
  if (cfg.contains("fd_step")) {
    if (cfg.at("fd_step").is_array())
      fd.step = cfg.at("fd_step").get<std::vector<double>>();
    else
      fd.step.assign(1, cfg.at("fd_step").get<double>());
  }
  if (fd_step_flag > 0) fd.step.assign(1, fd_step_flag);
  return fd;
}

void emit(const json& report, const std::string& out_path) {
  const std::string text = report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw gbcurv::Error("cannot write to '" + out_path + "'");
    out << text;
  }
}

struct CommonFlags {
  std::string config_path, out_path;
  int fd_order = 0;
  double fd_step = 0.0;
  int jobs = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool timing = false;
};

int finish(std::vector<verify::Row> rows, const json& cfg_echo, const CommonFlags& flags,
           std::chrono::steady_clock::time_point start) {
  json report = verify::make_report(cfg_echo, rows);
  if (flags.timing) {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    report["timing"] = {{"wall_ms", ms}};
  }
  emit(report, flags.out_path);
  const int fails = verify::count_failures(rows);
  std::cerr << "rows: " << rows.size() << ", failures: " << fails << "\n";
  return fails > 0 ? 1 : 0;
}

int cmd_verify(const json& cfg, const CommonFlags& flags, const std::string& suite_flag,
               const std::string& n_flag, const std::string& k_flag, int trials_flag,
               int resolution_flag, int samples_flag, double tol_flag, bool corrupt_flag) {
  check_keys(cfg,
             {"suite", "n", "k", "trials", "seed", "fd_order", "fd_step", "resolution", "samples",
              "jobs", "tolerances", "debug"},
             "verify config");
  verify::Options opt;
  auto parse_range = [](const json& j, const std::string& text, int& lo, int& hi) {
    if (!text.empty()) {
      try {
        const auto dots = text.find("..");
        if (dots == std::string::npos) {
          lo = hi = std::stoi(text);
        } else {
          lo = std::stoi(text.substr(0, dots));
          hi = std::stoi(text.substr(dots + 2));
        }
      } catch (const std::logic_error&) {
        throw ConfigError("malformed range '" + text + "'; expected N or LO..HI");
      }
      return;
    }
    if (j.is_null()) return;
    if (j.is_number_integer()) {
      lo = hi = j.get<int>();
    } else if (j.is_array() && j.size() == 2) {
      lo = j[0].get<int>();
      hi = j[1].get<int>();
    } else {
      throw ConfigError("range must be an integer or a [lo, hi] pair");
    }
  };
  parse_range(cfg.contains("n") ? cfg.at("n") : json(), n_flag, opt.n_lo, opt.n_hi);
  if (opt.n_lo > opt.n_hi || opt.n_lo < 2 || opt.n_hi > 12)
    throw ConfigError("dimension range out of bounds");
  int k_lo = 0, k_hi = -1;
  parse_range(cfg.contains("k") ? cfg.at("k") : json(), k_flag, k_lo, k_hi);
  opt.k_max = k_hi;
  if (cfg.contains("trials")) opt.trials = cfg.at("trials").get<int>();
  if (trials_flag > 0) opt.trials = trials_flag;
  if (opt.trials < 1) throw ConfigError("trials must be >= 1");
  if (cfg.contains("seed")) opt.seed = cfg.at("seed").get<std::uint64_t>();
  if (flags.seed_set) opt.seed = flags.seed;
  const chart::FdConfig fd = fd_from(cfg, flags.fd_order, flags.fd_step);
  opt.fd_order = fd.order;
  opt.fd_step = fd.step;
  if (cfg.contains("resolution")) opt.resolution = cfg.at("resolution").get<int>();
  if (resolution_flag > 0) opt.resolution = resolution_flag;
  if (cfg.contains("samples")) opt.samples = cfg.at("samples").get<int>();
  if (samples_flag > 0) opt.samples = samples_flag;
  opt.jobs = flags.jobs > 0 ? flags.jobs
                            : (cfg.contains("jobs") ? cfg.at("jobs").get<int>() : gbcurv::default_jobs());
  if (cfg.contains("tolerances")) {
    for (const auto& [key, value] : cfg.at("tolerances").items())
      opt.tol[key] = value.get<double>();
  }
  if (tol_flag > 0) {
    for (const verify::IdentityInfo& info : verify::identity_catalog())
      if (!opt.tol.contains(info.id)) opt.tol[info.id] = tol_flag;
  }
  if (cfg.contains("debug")) {
    check_keys(cfg.at("debug"), {"corrupt_star"}, "verify config debug");
    opt.corrupt_star = cfg.at("debug").value("corrupt_star", false);
  }
  if (corrupt_flag) opt.corrupt_star = true;

  std::string suite = suite_flag.empty()
                          ? (cfg.contains("suite") ? cfg.at("suite").get<std::string>() : "all")
                          : suite_flag;

  json echo = cfg;
  echo["suite"] = suite;
  echo["n"] = {opt.n_lo, opt.n_hi};
  echo["trials"] = opt.trials;
  echo["seed"] = opt.seed;
  echo["fd_order"] = opt.fd_order;
  if (opt.corrupt_star) echo["debug"] = {{"corrupt_star", true}};

  const auto start = std::chrono::steady_clock::now();
  return finish(verify::run_suite(suite, opt), echo, flags,
                start);
}

int cmd_invariants(const json& cfg, const CommonFlags& flags) {
  check_keys(cfg, {"manifold", "points", "algebraic", "fd_order", "fd_step", "seed", "samples"},
             "invariants config");
  if (!cfg.contains("manifold")) throw ConfigError("invariants needs a 'manifold'");
  const Manifold m = build_manifold(cfg.at("manifold"));
  const chart::FdConfig fd = fd_from(cfg, flags.fd_order, flags.fd_step);
  const bool algebraic = cfg.value("algebraic", static_cast<bool>(m.model));

  json out;
  out["schema_version"] = verify::kSchemaVersion;
  out["tool"] = {{"name", "gbcurv"}, {"version", verify::kToolVersion}};
  out["config"] = cfg;
  json items = json::array();

  if (algebraic) {
    if (!m.model) throw ConfigError("algebraic invariants need a model manifold");
    json rec = invariant_record(m.model->make_context());
    rec["at"] = "algebraic";
    items.push_back(rec);
  }
  std::vector<std::vector<double>> pts;
  if (cfg.contains("points")) pts = cfg.at("points").get<std::vector<std::vector<double>>>();
  if (!pts.empty() || !algebraic) {
    const chart::ChartMetric metric = m.make_chart(fd);
    if (pts.empty()) {
      const std::uint64_t seed =
          flags.seed_set ? flags.seed : cfg.value("seed", static_cast<std::uint64_t>(1));
      pts = default_points(m, metric, cfg.value("samples", 3), seed);
    }
    for (const auto& x : pts) {
      if (static_cast<int>(x.size()) != m.n)
        throw ConfigError("point dimension does not match the manifold");
      const chart::PointContext pc(metric, x);
      json rec = invariant_record(pc.ctx());
      rec["at"] = x;
      items.push_back(rec);
    }
  }
  out["invariants"] = items;
  emit(out, flags.out_path);
  return 0;
}

int cmd_conformal(const json& cfg, const CommonFlags& flags, int samples_flag, int resolution_flag) {
  check_keys(cfg,
             {"manifold", "fields", "samples", "resolution", "fd_order", "fd_step", "seed", "jobs",
              "tolerances"},
             "conformal config");
  if (!cfg.contains("manifold")) throw ConfigError("conformal needs a 'manifold'");
  const Manifold m = build_manifold(cfg.at("manifold"));
  const chart::FdConfig fd = fd_from(cfg, flags.fd_order, flags.fd_step);
  const chart::ChartMetric metric = m.make_chart(fd);
  const int n = m.n;
  if (n < 4) throw ConfigError("conformal laws need dimension >= 4");

  json fields = cfg.contains("fields") ? cfg.at("fields") : json::object();
  check_keys(fields, {"f", "v", "a", "phi"}, "conformal config fields");
  auto field = [&](const char* name) -> std::optional<chart::ScalarField> {
    if (!fields.contains(name)) return std::nullopt;
    chart::ScalarField f = chart::ScalarField::from_expression(fields.at(name).get<std::string>());
    if (f.max_coord() > n) throw ConfigError(std::string("field ") + name + " uses too many coordinates");
    return f;
  };
  const auto f = field("f");
  const auto v = field("v");
  const auto a = field("a");
  const auto phi = field("phi");
  if (n == 4 && !f) throw ConfigError("dimension 4 needs fields.f");
  if (n > 4 && !v && !f) throw ConfigError("dimension > 4 needs fields.v (or fields.f)");

  auto tol_for = [&](const std::string& id, double fallback) {
    if (cfg.contains("tolerances") && cfg.at("tolerances").contains(id))
      return cfg.at("tolerances").at(id).get<double>();
    return fallback;
  };

  const int samples = samples_flag > 0 ? samples_flag : cfg.value("samples", 8);
  const std::uint64_t seed = flags.seed_set ? flags.seed : cfg.value("seed", static_cast<std::uint64_t>(1));
  const int jobs = flags.jobs > 0 ? flags.jobs : cfg.value("jobs", gbcurv::default_jobs());
  const auto pts = default_points(m, metric, samples, seed);
  const auto start = std::chrono::steady_clock::now();

  std::vector<verify::Row> rows;
  json params{{"samples", static_cast<int>(pts.size())}, {"fd_order", fd.order}};

  if (f) {
    double worst = 0.0, vol = 0.0;
    for (const auto& x : pts) {
      const auto r = chart::conformal_h4_check(metric, *f, x);
      worst = std::max(worst, r.residual);
      vol = std::max(vol, r.volume_residual);
    }
    rows.push_back(verify::make_row("conf.h4_law", params, 0.0, 0.0, worst,
                                    tol_for("conf.h4_law", 1e-4)));
    rows.push_back(
        verify::make_row("conf.volume", params, 0.0, 0.0, vol, tol_for("conf.volume", 1e-10)));
    if (phi) {
      double coc = 0.0;
      for (const auto& x : pts) coc = std::max(coc, chart::cocycle_residual(metric, *f, *phi, x));
      rows.push_back(
          verify::make_row("conf.cocycle", params, 0.0, 0.0, coc, tol_for("conf.cocycle", 1e-3)));
    }
  }
  if (n > 4 && v) {
    double worst = 0.0;
    for (const auto& x : pts)
      worst = std::max(worst, chart::conformal_power_ops(metric, *v, x).residual);
    rows.push_back(
        verify::make_row("conf.k_law", params, 0.0, 0.0, worst, tol_for("conf.k_law", 1e-4)));
    if (a && phi) {
      double worst_bd = 0.0;
      for (const auto& x : pts)
        worst_bd = std::max(worst_bd, chart::bidegree_covariance_residual(metric, *a, *phi, x));
      rows.push_back(verify::make_row("conf.bidegree", params, 0.0, 0.0, worst_bd,
                                      tol_for("conf.bidegree", 1e-3)));
    }
  }

  // T_2 definiteness diagnostic.
  {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& x : pts) {
      const chart::PointContext pc(metric, x);
      const auto eig =
          gbcurv::linalg::jacobi_eigenvalues(gbcurv::dfalg::to_matrix(pc.einstein_tensor()));
      lo = std::min(lo, eig.front());
      hi = std::max(hi, eig.back());
    }
    rows.push_back(verify::not_applicable_row("conf.t2_definiteness", params, lo, hi, 0.0));
  }

  if (metric.domain().fully_periodic()) {
    std::vector<int> res;
    if (cfg.contains("resolution")) {
      if (cfg.at("resolution").is_array())
        res = cfg.at("resolution").get<std::vector<int>>();
      else
        res.assign(static_cast<std::size_t>(n), cfg.at("resolution").get<int>());
    } else {
      res.assign(static_cast<std::size_t>(n), 16);
    }
    if (resolution_flag > 0) res.assign(static_cast<std::size_t>(n), resolution_flag);
    json iparams = params;
    iparams["resolution"] = res;
    // The quadratic integrands need a finer step than the pointwise rows;
    // respect an explicit override, otherwise rebuild with the finer default.
    chart::FdConfig ifd = fd;
    if (ifd.step.empty()) ifd.step = verify::integral_default_steps(metric.domain());
    const chart::ChartMetric imetric = m.make_chart(ifd);
    if (n == 4 && f) {
      auto more = verify::dim4_integral_rows(imetric, *f, res, tol_for("int.dim4", 1e-6), jobs, iparams);
      rows.insert(rows.end(), more.begin(), more.end());
    }
    if (n > 4 && v) {
      auto more = verify::dim5_integral_rows(imetric, *v, res, tol_for("int.dim5", 1e-5), jobs, iparams);
      rows.insert(rows.end(), more.begin(), more.end());
    }
  }

  return finish(std::move(rows), cfg, flags, start);
}

int cmd_list_identities() {
  for (const verify::IdentityInfo& info : verify::identity_catalog())
    std::cout << info.id << "\t[" << info.suite << "]\t" << info.anchor << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"double-form curvature invariants: compute and verify"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string suite_flag, n_flag, k_flag;
  int trials_flag = 0, resolution_flag = 0, samples_flag = 0;
  double tol_flag = 0.0;
  bool corrupt_flag = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", flags.config_path, "JSON config file");
    sub->add_option("--out", flags.out_path, "write the JSON report here (default stdout)");
    sub->add_option("--fd-order", flags.fd_order, "finite-difference order (2 or 4)");
    sub->add_option("--fd-step", flags.fd_step, "finite-difference step override");
    sub->add_option("--jobs", flags.jobs, "worker threads (default GBCURV_JOBS or 1)");
    sub->add_option("--seed", flags.seed, "random seed")->each([&](const std::string&) {
      flags.seed_set = true;
    });
    sub->add_flag("--timing", flags.timing, "include wall time in the report (non-deterministic)");
  };

  CLI::App* inv = app.add_subcommand("invariants", "compute curvature invariants");
  add_common(inv);

  CLI::App* ver = app.add_subcommand("verify", "run identity verification suites");
  add_common(ver);
  ver->add_option("--suite", suite_flag,
                  "algebra | curvature-identities | newton | conformal-pointwise | "
                  "conformal-integral | all");
  ver->add_option("--n", n_flag, "dimension or range lo..hi");
  ver->add_option("--k", k_flag, "max k or range");
  ver->add_option("--trials", trials_flag, "random trials per row");
  ver->add_option("--tol", tol_flag, "blanket tolerance override");
  ver->add_option("--resolution", resolution_flag, "quadrature resolution");
  ver->add_option("--samples", samples_flag, "pointwise sample count");
  ver->add_flag("--debug-corrupt-star", corrupt_flag,
                "negative control: corrupt the Hodge star and expect failures");

  CLI::App* conf = app.add_subcommand("conformal", "evaluate conformal transformation laws");
  add_common(conf);
  conf->add_option("--samples", samples_flag, "pointwise sample count");
  conf->add_option("--resolution", resolution_flag, "quadrature resolution");

  CLI::App* list = app.add_subcommand("list-identities", "print the identity catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    const json cfg = load_config(flags.config_path);
    if (list->parsed()) return cmd_list_identities();
    if (inv->parsed()) return cmd_invariants(cfg, flags);
    if (ver->parsed())
      return cmd_verify(cfg, flags, suite_flag, n_flag, k_flag, trials_flag, resolution_flag,
                        samples_flag, tol_flag, corrupt_flag);
    if (conf->parsed()) return cmd_conformal(cfg, flags, samples_flag, resolution_flag);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const gbcurv::exprlang::ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
