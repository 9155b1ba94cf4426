#include "lttail/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

#include "lttail/common.hpp"
#include "lttail/special.hpp"
#include "lttail/tilting.hpp"

namespace lttail {

namespace {

struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
};

// Runs fn once per sample per chunk; each chunk gets its own substream and a
// fresh state object, and chunk totals are reduced in index order.
template <typename MakeState, typename Draw>
Moments run_chunked(const RunConfig& cfg, MakeState make_state, Draw draw) {
  const int chunks = cfg.n_chunks;
  std::vector<Moments> partial(chunks);
  const std::int64_t base = cfg.n_samples / chunks;
  const std::int64_t rem = cfg.n_samples % chunks;

  auto work = [&](int ci) {
    SplitMix64 rng = SplitMix64::substream(cfg.seed, static_cast<std::uint64_t>(ci));
    auto state = make_state();
    const std::int64_t count = base + (ci < rem ? 1 : 0);
    KahanSum s, s2;
    for (std::int64_t i = 0; i < count; ++i) {
      const double z = draw(state, rng);
      s.add(z);
      s2.add(z * z);
    }
    partial[ci] = {s.value(), s2.value()};
  };

  if (chunks == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(chunks);
    for (int ci = 0; ci < chunks; ++ci) pool.emplace_back(work, ci);
    for (auto& t : pool) t.join();
  }

  KahanSum s, s2;
  for (const Moments& p : partial) {
    s.add(p.sum);
    s2.add(p.sum_sq);
  }
  return {s.value(), s2.value()};
}

EstimateResult finish(const Moments& m, std::int64_t n_samples) {
  EstimateResult r{};
  r.n_samples = n_samples;
  r.estimate = m.sum / n_samples;
  r.second_moment = m.sum_sq / n_samples;
  const double var = std::max(0.0, r.second_moment - r.estimate * r.estimate);
  r.std_error = std::sqrt(var / n_samples);
  r.rel_error = r.estimate > 0.0 ? r.std_error / r.estimate
                                 : std::numeric_limits<double>::infinity();
  r.ci95_low = std::clamp(r.estimate - 1.959963984540054 * r.std_error, 0.0, 1.0);
  r.ci95_high = std::clamp(r.estimate + 1.959963984540054 * r.std_error, 0.0, 1.0);
  r.second_moment_bound = std::numeric_limits<double>::quiet_NaN();
  return r;
}

void check_common(const Model& m, int n, double x, const RunConfig& cfg) {
  (void)m;
  cfg.validate();
  if (n < 1) throw Error(ErrorCode::domain, "estimator: n must be >= 1");
  if (!(x >= 0.0) && !(x < 0.0))
    throw Error(ErrorCode::invalid_argument, "estimator: x must not be NaN");
}

}  // namespace

void RunConfig::validate() const {
  if (n_samples <= 0)
    throw Error(ErrorCode::invalid_argument, "RunConfig: n_samples must be > 0");
  if (n_chunks <= 0)
    throw Error(ErrorCode::invalid_argument, "RunConfig: n_chunks must be > 0");
}

EstimateResult crude_mc(const Model& m, int n, double x, const RunConfig& cfg) {
  check_common(m, n, x, cfg);
  const Moments mom = run_chunked(
      cfg, [] { return 0; },
      [&](int&, SplitMix64& rng) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += sample(m, rng);
        return s > x ? 1.0 : 0.0;
      });
  return finish(mom, cfg.n_samples);
}

EstimateResult is_tilted(const Model& m, int n, double x, const RunConfig& cfg) {
  check_common(m, n, x, cfg);
  if (!(x > 0.0)) return crude_mc(m, n, x, cfg);
  const TiltedSampler proto = make_tilted_sampler(m, x, n);
  const double theta = proto.theta;
  const double log_mgf = mgf_numeric(m, theta).log_mgf;
  const double log_weight_base = n * log_mgf;

  const Moments mom = run_chunked(
      cfg, [&] { return proto; },
      [&](TiltedSampler& s, SplitMix64& rng) {
        double sum = 0.0;
        for (int i = 0; i < n; ++i) sum += sample_tilted(s, rng);
        if (sum <= x) return 0.0;
        return std::exp(log_weight_base - theta * sum);
      });
  EstimateResult r = finish(mom, cfg.n_samples);
  r.second_moment_bound = std::exp(log_weight_base - theta * x) * r.estimate;
  return r;
}

EstimateResult cond_mc(const Model& m, int n, double x, const RunConfig& cfg) {
  check_common(m, n, x, cfg);
  if (n < 2) throw Error(ErrorCode::domain, "cond_mc: n must be >= 2");
  const Moments mom = run_chunked(
      cfg, [] { return 0; },
      [&](int&, SplitMix64& rng) {
        double s = 0.0;
        for (int i = 0; i < n - 1; ++i) s += sample(m, rng);
        return tail(m, x - s);
      });
  return finish(mom, cfg.n_samples);
}

EstimateResult ak_estimator(const Model& m, int n, double x, const RunConfig& cfg) {
  check_common(m, n, x, cfg);
  if (n < 2) throw Error(ErrorCode::domain, "ak_estimator: n must be >= 2");
  const Moments mom = run_chunked(
      cfg, [] { return 0; },
      [&](int&, SplitMix64& rng) {
        double s = 0.0, mx = 0.0;
        for (int i = 0; i < n - 1; ++i) {
          const double v = sample(m, rng);
          s += v;
          mx = std::max(mx, v);
        }
        return n * tail(m, std::max(mx, x - s));
      });
  return finish(mom, cfg.n_samples);
}

std::vector<EfficiencyRow> efficiency_report(const Model& m, int n,
                                             const std::vector<double>& x_grid,
                                             const RunConfig& cfg) {
  using Fn = std::function<EstimateResult(const Model&, int, double, const RunConfig&)>;
  std::vector<std::pair<std::string, Fn>> methods = {
      {"crude", crude_mc}, {"is_tilted", is_tilted}};
  if (n >= 2) {
    methods.emplace_back("cond", cond_mc);
    methods.emplace_back("ak", ak_estimator);
  }
  std::vector<EfficiencyRow> rows;
  rows.reserve(methods.size() * x_grid.size());
  for (const auto& [name, fn] : methods) {
    for (double x : x_grid) {
      const EstimateResult r = fn(m, n, x, cfg);
      EfficiencyRow row{};
      row.method = name;
      row.x = x;
      row.estimate = r.estimate;
      row.rel_error = r.rel_error;
      row.r2_proxy = r.estimate > 0.0
                         ? r.second_moment / (r.estimate * r.estimate)
                         : std::numeric_limits<double>::infinity();
      row.log_efficiency =
          (r.estimate > 0.0 && r.estimate < 1.0 && r.second_moment > 0.0)
              ? std::log(r.second_moment) / (2.0 * std::log(r.estimate))
              : std::numeric_limits<double>::quiet_NaN();
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace lttail
