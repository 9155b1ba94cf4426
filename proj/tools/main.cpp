// Command-line front end; all computation goes through the C API.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lttail.h"

using nlohmann::json;

namespace {

constexpr const char* kCsvSchema = "# lttail-compare-csv v1";

[[noreturn]] void fail(lt_status s) {
  std::fprintf(stderr, "error: %s\n", lt_last_error_message());
  std::exit(s == LT_EACCURACY ? 3 : 2);
}

double check(lt_status s, double value) {
  if (s != LT_OK) fail(s);
  return value;
}

double log10e(double natural_log) { return natural_log / std::log(10.0); }

struct ModelOpts {
  std::string family = "weibull-like";
  double alpha = 0.0;
  double beta = 2.0;
  double c = 1.0;
  double d = -1.0;  // default beta*c
  double k = 1.0;
  double gamma = -1.0;  // default beta (vanilla Weibull)
};

void add_model_flags(CLI::App* sub, ModelOpts& mo) {
  sub->add_option("--family", mo.family, "weibull-like | gamma-weibull")
      ->check(CLI::IsMember({"weibull-like", "gamma-weibull"}));
  sub->add_option("--alpha", mo.alpha, "polynomial exponent offset");
  sub->add_option("--beta", mo.beta, "Weibull exponent");
  sub->add_option("--c", mo.c, "exponential rate (weibull-like)");
  sub->add_option("--d", mo.d, "density constant (default beta*c)");
  sub->add_option("--k", mo.k, "exponential rate (gamma-weibull)");
  sub->add_option("--gamma", mo.gamma, "shape (gamma-weibull; default beta)");
}

void resolve(ModelOpts& mo) {
  if (mo.d < 0.0) mo.d = mo.beta * mo.c;
  if (mo.gamma < 0.0) mo.gamma = mo.beta;
}

lt_model* make_model(const ModelOpts& mo) {
  lt_model* m = nullptr;
  lt_status s = mo.family == "gamma-weibull"
                    ? lt_model_gamma_weibull(mo.k, mo.beta, mo.gamma, &m)
                    : lt_model_weibull_like(mo.alpha, mo.beta, mo.c, mo.d, &m);
  if (s != LT_OK) fail(s);
  return m;
}

// the gamma-weibull view of the model when it is an exact law, for bounds
bool gamma_view(const ModelOpts& mo, double* k, double* gamma) {
  if (mo.family == "gamma-weibull") {
    *k = mo.k;
    *gamma = mo.gamma;
    return true;
  }
  if (mo.alpha == 0.0 && std::abs(mo.d - mo.beta * mo.c) <= 1e-12 * mo.beta * mo.c) {
    *k = mo.c;
    *gamma = mo.beta;
    return true;
  }
  return false;
}

json model_config(const ModelOpts& mo) {
  json j;
  j["family"] = mo.family;
  if (mo.family == "gamma-weibull") {
    j["k"] = mo.k;
    j["gamma"] = mo.gamma;
    j["beta"] = mo.beta;
  } else {
    j["alpha"] = mo.alpha;
    j["beta"] = mo.beta;
    j["c"] = mo.c;
    j["d"] = mo.d;
  }
  return j;
}

std::vector<double> parse_grid(const std::string& spec, bool geom) {
  double lo = 0.0, hi = 0.0;
  int count = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%d", &lo, &hi, &count) == 3) {
    if (count < 1 || lo <= 0.0 || hi < lo) {
      std::fprintf(stderr, "error: bad x-grid '%s' (need 0 < lo <= hi, count >= 1)\n",
                   spec.c_str());
      std::exit(2);
    }
    std::vector<double> g(count);
    for (int i = 0; i < count; ++i) {
      const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
      g[i] = geom ? lo * std::pow(hi / lo, t) : lo + t * (hi - lo);
    }
    return g;
  }
  char* end = nullptr;
  const double v = std::strtod(spec.c_str(), &end);
  if (end && *end == '\0' && v > 0.0) return {v};
  std::fprintf(stderr, "error: bad x or x-grid '%s' (use a number or lo:hi:count)\n",
               spec.c_str());
  std::exit(2);
}

void emit(const json& config, const json& result) {
  json out;
  out["config"] = config;
  out["result"] = result;
  std::printf("%s\n", out.dump(2).c_str());
}

// re-feed an echoed config record as command-line flags
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] != "--config") continue;
    if (i + 1 >= args.size()) {
      std::fprintf(stderr, "error: --config requires a file\n");
      std::exit(2);
    }
    std::ifstream in(args[i + 1]);
    if (!in) {
      std::fprintf(stderr, "error: cannot read config file '%s'\n", args[i + 1].c_str());
      std::exit(2);
    }
    json j;
    try {
      in >> j;
      if (j.contains("config")) j = j["config"];
    } catch (const std::exception& e) {
      std::fprintf(stderr, "error: bad config json: %s\n", e.what());
      std::exit(2);
    }
    std::vector<std::string> expanded;
    if (i == 0) {  // no subcommand given on the command line; take it from the config
      if (!j.contains("subcommand")) {
        std::fprintf(stderr, "error: config file lacks a subcommand entry\n");
        std::exit(2);
      }
      expanded.push_back(j["subcommand"].get<std::string>());
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.key() == "subcommand") continue;
      expanded.push_back("--" + it.key());
      if (it->is_boolean()) {
        if (!it->get<bool>()) expanded.pop_back();
        continue;
      }
      expanded.push_back(it->is_string() ? it->get<std::string>() : it->dump());
    }
    // flags after the config file still override (CLI11 keeps the last value)
    expanded.insert(expanded.end(), args.begin() + i + 2, args.end());
    expanded.insert(expanded.begin(), args.begin(), args.begin() + i);
    return expanded;
  }
  return args;
}

struct EstFlags {
  long long samples = 100000;
  unsigned long long seed = 1;
  int chunks = 0;
};

void add_est_flags(CLI::App* sub, EstFlags& ef) {
  sub->add_option("--samples", ef.samples, "Monte Carlo sample count");
  sub->add_option("--seed", ef.seed, "RNG seed");
  sub->add_option("--chunks", ef.chunks, "parallel chunks (0 = hardware)");
}

void resolve_est(EstFlags& ef) {
  if (const char* env = std::getenv("LTTAIL_SEED")) ef.seed = std::strtoull(env, nullptr, 10);
  if (ef.chunks <= 0) {
    unsigned hw = std::thread::hardware_concurrency();
    ef.chunks = hw > 0 ? static_cast<int>(hw) : 1;
  }
}

lt_est_method method_of(const std::string& name) {
  if (name == "crude") return LT_EST_CRUDE;
  if (name == "is") return LT_EST_IS;
  if (name == "cond") return LT_EST_COND;
  return LT_EST_AK;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tail probabilities of sums of light-tailed random variables"};
  app.require_subcommand(1);

  ModelOpts mo;
  EstFlags ef;
  int n = 1;
  std::string x_spec;
  bool geom = false;
  double mu = 1.0;
  double rel_tol = 1e-8;
  std::string method;
  std::string format = "json";
  std::string config_file;  // consumed by expand_config; declared for --help

  auto* asym = app.add_subcommand("asym", "n-fold convolution tail asymptote");
  add_model_flags(asym, mo);
  asym->add_option("--n", n, "number of summands")->required();
  asym->add_option("--x", x_spec, "evaluation point")->required();
  asym->add_option("--config", config_file, "flat json config (an echoed record)");

  auto* bounds = app.add_subcommand("bounds", "incomplete-gamma sandwich bounds");
  add_model_flags(bounds, mo);
  bounds->add_option("--n", n, "number of summands")->required();
  bounds->add_option("--x", x_spec, "evaluation point")->required();
  bounds->add_option("--config", config_file, "flat json config");

  auto* estimate = app.add_subcommand("estimate", "Monte Carlo tail estimate");
  add_model_flags(estimate, mo);
  add_est_flags(estimate, ef);
  estimate->add_option("--method", method, "crude | is | cond | ak")
      ->required()
      ->check(CLI::IsMember({"crude", "is", "cond", "ak"}));
  estimate->add_option("--n", n, "number of summands")->required();
  estimate->add_option("--x", x_spec, "evaluation point")->required();
  estimate->add_option("--config", config_file, "flat json config");

  auto* compound = app.add_subcommand("compound", "compound Poisson tail");
  add_model_flags(compound, mo);
  compound->add_option("--method", method, "esscher | logasym")
      ->required()
      ->check(CLI::IsMember({"esscher", "logasym"}));
  compound->add_option("--mu", mu, "Poisson mean")->required();
  compound->add_option("--x", x_spec, "evaluation point")->required();
  compound->add_option("--config", config_file, "flat json config");

  auto* oracle = app.add_subcommand("oracle", "small-n quadrature ground truth");
  add_model_flags(oracle, mo);
  oracle->add_option("--n", n, "number of summands (2..4)")->required();
  oracle->add_option("--x", x_spec, "evaluation point")->required();
  oracle->add_option("--rel-tol", rel_tol, "quadrature relative tolerance");
  oracle->add_option("--config", config_file, "flat json config");

  auto* compare = app.add_subcommand("compare", "all applicable methods over an x-grid");
  add_model_flags(compare, mo);
  add_est_flags(compare, ef);
  compare->add_option("--n", n, "number of summands")->required();
  compare->add_option("--x", x_spec, "x-grid as lo:hi:count")->required();
  compare->add_flag("--geom", geom, "geometric x-grid spacing");
  compare->add_option("--rel-tol", rel_tol, "oracle relative tolerance");
  compare->add_option("--config", config_file, "flat json config");

  std::vector<std::string> args = expand_config(argc, argv);
  try {
    std::vector<const char*> cargs;
    cargs.push_back(argv[0]);
    for (const auto& a : args) cargs.push_back(a.c_str());
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  resolve(mo);
  resolve_est(ef);

  if (asym->parsed()) {
    const double x = parse_grid(x_spec, false).front();
    lt_model* m = make_model(mo);
    lt_asymptote a;
    check(lt_nfold_asymptote(m, n, &a), 0.0);
    json cfg = model_config(mo);
    cfg["subcommand"] = "asym";
    cfg["n"] = n;
    cfg["x"] = x;
    json res;
    res["c_n"] = a.c;
    res["p"] = a.p;
    res["log_k"] = a.log_k;
    res["beta"] = a.beta;
    res["log10_tail"] = log10e(lt_asymptote_log_eval(&a, x));
    emit(cfg, res);
    lt_model_free(m);
    return 0;
  }

  if (bounds->parsed()) {
    const double x = parse_grid(x_spec, false).front();
    double k = 0.0, gamma = 0.0;
    if (!gamma_view(mo, &k, &gamma)) {
      std::fprintf(stderr,
                   "error: bounds require an exact law (vanilla Weibull or gamma-weibull)\n");
      return 2;
    }
    std::vector<double> gammas(n, gamma);
    double lo = 0.0, hi = 0.0;
    check(lt_sum_tail_bounds(gammas.data(), n, k, mo.beta, x, &lo, &hi), 0.0);
    json cfg = model_config(mo);
    cfg["subcommand"] = "bounds";
    cfg["n"] = n;
    cfg["x"] = x;
    json res;
    res["log10_lower"] = log10e(lo);
    res["log10_upper"] = log10e(hi);
    emit(cfg, res);
    return 0;
  }

  if (estimate->parsed()) {
    const double x = parse_grid(x_spec, false).front();
    lt_model* m = make_model(mo);
    lt_estimate_result r;
    check(lt_estimate(m, n, x, method_of(method), ef.samples, ef.seed, ef.chunks, &r), 0.0);
    json cfg = model_config(mo);
    cfg["subcommand"] = "estimate";
    cfg["method"] = method;
    cfg["n"] = n;
    cfg["x"] = x;
    cfg["samples"] = ef.samples;
    cfg["seed"] = ef.seed;
    cfg["chunks"] = ef.chunks;
    json res;
    res["estimate"] = r.estimate;
    res["log10_estimate"] =
        r.estimate > 0.0 ? json(std::log10(r.estimate)) : json(nullptr);
    res["std_error"] = r.std_error;
    res["rel_error"] = r.rel_error;
    res["ci95_low"] = r.ci95_low;
    res["ci95_high"] = r.ci95_high;
    res["n_samples"] = r.n_samples;
    res["seed"] = ef.seed;
    emit(cfg, res);
    lt_model_free(m);
    return 0;
  }

  if (compound->parsed()) {
    const double x = parse_grid(x_spec, false).front();
    lt_model* m = make_model(mo);
    json res;
    if (method == "esscher") {
      double lt = 0.0, theta = 0.0, ell = 0.0;
      check(lt_compound_esscher(m, mu, x, &lt, &theta, &ell), 0.0);
      res["log10_tail"] = log10e(lt);
      res["theta"] = theta;
      res["ell"] = ell;
    } else {
      double lt = 0.0;
      check(lt_compound_log_asym(m, mu, x, &lt), 0.0);
      res["log10_tail"] = log10e(lt);
    }
    json cfg = model_config(mo);
    cfg["subcommand"] = "compound";
    cfg["method"] = method;
    cfg["mu"] = mu;
    cfg["x"] = x;
    emit(cfg, res);
    lt_model_free(m);
    return 0;
  }

  if (oracle->parsed()) {
    const double x = parse_grid(x_spec, false).front();
    lt_model* m = make_model(mo);
    double lt = 0.0;
    check(lt_oracle_nfold_tail(m, n, x, rel_tol, &lt), 0.0);
    json cfg = model_config(mo);
    cfg["subcommand"] = "oracle";
    cfg["n"] = n;
    cfg["x"] = x;
    cfg["rel-tol"] = rel_tol;
    json res;
    res["log10_tail"] = log10e(lt);
    emit(cfg, res);
    lt_model_free(m);
    return 0;
  }

  // compare: CSV, one row per x; probability columns in log10
  const std::vector<double> grid = parse_grid(x_spec, geom);
  lt_model* m = make_model(mo);
  int exact = 0;
  check(lt_has_exact_law(m, &exact), 0.0);
  double gk = 0.0, ggamma = 0.0;
  const bool have_bounds = gamma_view(mo, &gk, &ggamma);

  json cfg = model_config(mo);
  cfg["subcommand"] = "compare";
  cfg["n"] = n;
  cfg["x"] = x_spec;
  if (geom) cfg["geom"] = true;
  cfg["samples"] = ef.samples;
  cfg["seed"] = ef.seed;
  cfg["chunks"] = ef.chunks;
  cfg["rel-tol"] = rel_tol;

  std::printf("%s\n", kCsvSchema);
  std::printf("# config %s\n", cfg.dump().c_str());
  std::printf("x,asym,lower,upper,crude,is,cond,ak,oracle,flags\n");

  lt_asymptote a;
  const bool have_asym = lt_nfold_asymptote(m, n, &a) == LT_OK;

  auto cell = [](double log10_value, bool present) {
    if (!present) return std::string();
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.10g", log10_value);
    return std::string(buf);
  };

  for (double x : grid) {
    std::string flags;
    double lo = 0.0, hi = 0.0;
    bool ok_bounds = have_bounds;
    if (have_bounds) {
      std::vector<double> gammas(n, ggamma);
      ok_bounds = lt_sum_tail_bounds(gammas.data(), n, gk, mo.beta, x, &lo, &hi) == LT_OK;
    }
    lt_estimate_result crude{}, is{}, cond{}, ak{};
    const bool ok_crude =
        exact && lt_estimate(m, n, x, LT_EST_CRUDE, ef.samples, ef.seed, ef.chunks,
                             &crude) == LT_OK;
    const bool ok_is =
        exact && lt_estimate(m, n, x, LT_EST_IS, ef.samples, ef.seed, ef.chunks,
                             &is) == LT_OK;
    const bool ok_cond =
        exact && n >= 2 &&
        lt_estimate(m, n, x, LT_EST_COND, ef.samples, ef.seed, ef.chunks, &cond) == LT_OK;
    const bool ok_ak =
        exact && n >= 2 &&
        lt_estimate(m, n, x, LT_EST_AK, ef.samples, ef.seed, ef.chunks, &ak) == LT_OK;
    double lorc = 0.0;
    const bool ok_oracle =
        exact && n >= 2 && n <= 4 &&
        lt_oracle_nfold_tail(m, n, x, rel_tol, &lorc) == LT_OK;
    if (ok_crude && crude.estimate <= 0.0) flags = "crude_below_resolution";

    const double neg_inf = -std::numeric_limits<double>::infinity();
    std::printf("%.10g,%s,%s,%s,%s,%s,%s,%s,%s,%s\n", x,
                cell(have_asym ? log10e(lt_asymptote_log_eval(&a, x)) : 0.0, have_asym)
                    .c_str(),
                cell(log10e(lo), ok_bounds).c_str(),
                cell(log10e(hi), ok_bounds).c_str(),
                cell(crude.estimate > 0.0 ? std::log10(crude.estimate) : neg_inf,
                     ok_crude)
                    .c_str(),
                cell(is.estimate > 0.0 ? std::log10(is.estimate) : neg_inf, ok_is)
                    .c_str(),
                cell(cond.estimate > 0.0 ? std::log10(cond.estimate) : neg_inf, ok_cond)
                    .c_str(),
                cell(ak.estimate > 0.0 ? std::log10(ak.estimate) : neg_inf, ok_ak)
                    .c_str(),
                cell(log10e(lorc), ok_oracle).c_str(), flags.c_str());
  }
  lt_model_free(m);
  return 0;
}
