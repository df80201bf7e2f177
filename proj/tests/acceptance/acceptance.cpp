// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "hessdist/csv.hpp"
#include "hessdist/distance.hpp"
#include "hessdist/entropy.hpp"
#include "hessdist/hessian.hpp"
#include "support/oracles.hpp"

using namespace hessdist;
using namespace hessdist::testing;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit_s;
  std::function<Outcome()> body;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::vector<EntropyModel> named_models() {
  return {make_entropy(EntropyKind::Boltzmann), make_entropy(EntropyKind::Quadratic),
          make_entropy(EntropyKind::Cross), make_entropy(EntropyKind::Reciprocal),
          make_entropy(EntropyKind::Gamma, 0.5)};
}

Outcome h_closed_forms() {
  double worst = 0.0;
  for (const auto& e : named_models()) {
    for (int k = 0; k < 50; ++k) {
      const double y = std::pow(10.0, -1.0 + 2.0 * k / 49.0);
      worst = std::max(worst, std::abs(e.h_closed(y) - h_numeric(e.f_second_function(), y)));
    }
  }
  return {worst <= 1e-8, "max |h_closed - h_numeric| = " + fmt(worst) + " (tol 1e-8)"};
}

Outcome oracle_a() {
  const double d = dist_h_quantile(make_entropy(EntropyKind::Boltzmann), uniform_density(0.0, 1.0, 2048),
                                   uniform_density(0.0, 0.5, 2048), 2048);
  const double err = std::abs(d - std::numbers::ln2);
  return {err <= 1e-10, "|Dist_H - log 2| = " + fmt(err) + " (tol 1e-10)"};
}

Outcome oracle_b() {
  const double oracle = gauss_legendre(
      [](double y) {
        const double d = linear_pair::quantile_derivative(y) - 1.0;
        return d * d;
      },
      0.0, 1.0);
  const double d = dist_h_quantile(make_entropy(EntropyKind::Reciprocal), linear_density(4096),
                                   uniform_density(0.0, 1.0, 4096), 4096);
  const double err = std::abs(d * d - linear_pair::reciprocal_sq());
  const bool oracle_ok = std::abs(oracle - linear_pair::reciprocal_sq()) < 1e-12;
  return {err <= 1e-6 && oracle_ok, "|Dist_H^2 - (3/2 ln 2 - 1)| = " + fmt(err) + " (tol 1e-6)"};
}

Outcome oracle_c() {
  const double d = dist_h_quantile(make_entropy(EntropyKind::Boltzmann), linear_density(4096),
                                   uniform_density(0.0, 1.0, 4096), 4096);
  const double err = std::abs(d * d - linear_pair::boltzmann_sq());
  return {err <= 1e-6, "|Dist_H^2 - " + fmt(linear_pair::boltzmann_sq()) + "| = " + fmt(err) + " (tol 1e-6)"};
}

Outcome formulation_equivalence() {
  std::mt19937_64 rng(2021);
  const auto e = make_entropy(EntropyKind::Boltzmann);
  double worst_gap = 0.0;
  double worst_order = 1e9;
  for (int pair = 0; pair < 20; ++pair) {
    const auto pp = random_smooth_params(rng);
    const auto qp = random_smooth_params(rng);
    std::vector<double> gaps;
    for (std::size_t n : {1024, 2048, 4096}) {
      const auto p = smooth_density(pp, n);
      const auto q = smooth_density(qp, n);
      const double a = dist_h_quantile(e, p, q, n);
      const double b = dist_h_map(e, p, q);
      gaps.push_back(std::abs(a - b));
      if (n == 4096) worst_gap = std::max(worst_gap, std::abs(a - b) / a);
    }
    worst_order = std::min(worst_order, 0.5 * std::log2(gaps.front() / gaps.back()));
  }
  return {worst_gap <= 1e-4 && worst_order >= 0.9,
          "max relative gap = " + fmt(worst_gap) + " (tol 1e-4), min order = " + fmt(worst_order) +
              " (min 0.9)"};
}

Outcome metric_properties() {
  std::mt19937_64 rng(6);
  constexpr std::size_t m = 1024;
  int failures = 0;
  double worst_slack = -1e9;
  double worst_translate = 0.0;
  const auto models = named_models();
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = quantile(smooth_density(random_smooth_params(rng), 1024), m);
    const auto q = quantile(smooth_density(random_smooth_params(rng), 1024), m);
    const auto r = quantile(smooth_density(random_smooth_params(rng), 1024), m);
    for (const auto& e : models) {
      const double pq = dist_h_quantile(e, p, q);
      const double qr = dist_h_quantile(e, q, r);
      const double pr = dist_h_quantile(e, p, r);
      failures += pq < 0.0 || qr < 0.0 || pr < 0.0;
      failures += pq != dist_h_quantile(e, q, p);
      worst_slack = std::max(worst_slack, pr - pq - qr);
      failures += pr > pq + qr + 1e-9;
    }
  }
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = smooth_density(random_smooth_params(rng), 1024);
    const double c = uniform(rng, -3.0, 3.0);
    for (const auto& e : models) {
      worst_translate = std::max(worst_translate, dist_h_quantile(e, p, translate(p, c), m));
    }
  }
  return {failures == 0 && worst_translate <= 1e-8,
          std::to_string(failures) + " violations, max triangle excess = " + fmt(worst_slack) +
              ", max translate distance = " + fmt(worst_translate) + " (tol 1e-8)"};
}

Outcome taylor_consistency() {
  const auto u = uniform_density(0.0, 1.0, 4096);
  const auto s = cosine_perturbation(u);
  const std::vector<double> eps{0.1, 0.05, 0.025};
  const double analytic = std::pow(std::numbers::pi, 4) / 2.0;
  bool ok = true;
  std::string detail;
  for (const auto kind : {EntropyKind::Boltzmann, EntropyKind::Reciprocal}) {
    const auto e = make_entropy(kind);
    const double form = hessian_form(e, u, s);
    const auto out = taylor_residual(e, u, s, eps, 4096);
    const bool monotone = out[0].residual > out[1].residual && out[1].residual > out[2].residual;
    const double relative = out[2].residual / form;
    const double form_err = std::abs(form - analytic);
    ok = ok && monotone && relative <= 5e-2 && form_err <= 1e-2;
    if (!detail.empty()) detail += "; ";
    detail += e.name() + ": residuals " + fmt(out[0].residual) + " > " + fmt(out[1].residual) + " > " +
              fmt(out[2].residual) + ", final relative " + fmt(relative) + " (tol 5e-2), |form - pi^4/2| " +
              fmt(form_err) + " (tol 1e-2)";
  }
  return {ok, detail};
}

Outcome geodesic_checks() {
  std::mt19937_64 rng(88);
  constexpr std::size_t m = 2048;
  const std::vector<double> ts{0.0, 0.25, 0.5, 0.75, 1.0};
  double endpoint = 0.0;
  double affinity = 0.0;
  double additivity = 0.0;
  double midpoint = 0.0;
  for (const auto& e : named_models()) {
    const auto p = smooth_density(random_smooth_params(rng), 2048);
    const auto q = smooth_density(random_smooth_params(rng), 2048);
    const auto qp = quantile(p, m);
    const auto qq = quantile(q, m);
    const auto hp = h_profile(e, qp);
    const auto hq = h_profile(e, qq);
    const double total = dist_h_quantile(e, qp, qq);
    const auto path = geodesic(e, p, q, ts, m);
    for (std::size_t j = 0; j < m; ++j) {
      endpoint = std::max(endpoint, std::abs(path.quantiles.front().derivative()[j] - qq.derivative()[j]));
      endpoint = std::max(endpoint, std::abs(path.quantiles.back().derivative()[j] - qp.derivative()[j]));
    }
    for (std::size_t k = 0; k < ts.size(); ++k) {
      const auto ht = h_profile(e, path.quantiles[k]);
      for (std::size_t j = 0; j < m; ++j) {
        affinity = std::max(affinity, std::abs(ht[j] - (ts[k] * hp[j] + (1.0 - ts[k]) * hq[j])));
      }
      if (ts[k] > 0.0 && ts[k] < 1.0) {
        additivity =
            std::max(additivity, std::abs(dist_h_quantile(e, qq, path.quantiles[k]) - ts[k] * total));
      }
    }
    if (e.kind() == EntropyKind::Boltzmann) {
      for (std::size_t j = 0; j < m; ++j) {
        midpoint = std::max(midpoint, std::abs(path.quantiles[2].derivative()[j] -
                                               std::sqrt(qp.derivative()[j] * qq.derivative()[j])));
      }
    }
  }
  return {endpoint <= 1e-9 && affinity <= 1e-12 && additivity <= 1e-6 && midpoint <= 1e-10,
          "endpoint " + fmt(endpoint) + " (1e-9), affinity " + fmt(affinity) + " (1e-12), additivity " +
              fmt(additivity) + " (1e-6), geometric mean " + fmt(midpoint) + " (1e-10)"};
}

Outcome wasserstein_sanity() {
  const auto p = smooth_density(SmoothDensityParams{0.0, 1.0, {0.5, -0.3, 0.2}, {0.1, 0.4, -0.2}}, 1024);
  double translate_err = 0.0;
  for (double c : {-2.5, 0.125, 0.7, 3.0}) {
    translate_err = std::max(translate_err, std::abs(dist_wasserstein(p, translate(p, c), 2048) - std::abs(c)));
  }
  const double brute = linear_pair::wasserstein_brute_force();
  const double err =
      std::abs(dist_wasserstein(linear_density(4096), uniform_density(0.0, 1.0, 4096), 4096) - brute);
  return {translate_err <= 1e-10 && err <= 1e-6,
          "translate error " + fmt(translate_err) + " (1e-10), brute-force gap " + fmt(err) + " (1e-6)"};
}

Outcome cli_determinism() {
  const fs::path tmp = fs::temp_directory_path() / "hessdist_acceptance";
  fs::create_directories(tmp);
  const fs::path data{HESSDIST_DATA_DIR};
  std::string inputs;
  for (const char* name : {"uniform.csv", "uniform_half.csv", "linear.csv", "cosine_bump.csv"}) {
    inputs += " \"" + (data / name).string() + "\"";
  }
  std::vector<std::string> outputs;
  for (int run = 0; run < 2; ++run) {
    const fs::path out = tmp / ("matrix" + std::to_string(run) + ".csv");
    const std::string cmd =
        std::string("\"") + HESSDIST_CLI_PATH + "\" matrix --entropy boltzmann --out \"" + out.string() + "\"" + inputs;
    if (std::system(cmd.c_str()) != 0) return {false, "CLI exited with an error"};
    std::ifstream in(out, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    outputs.push_back(s.str());
  }
  fs::remove_all(tmp);

  const bool identical = outputs[0] == outputs[1];
  const CsvTable t = parse_csv(outputs[0]);
  bool symmetric = t.rows.size() == 4;
  for (std::size_t i = 0; symmetric && i < 4; ++i) {
    symmetric = symmetric && t.rows[i].size() == 5 && std::stod(t.rows[i][i + 1]) == 0.0;
    for (std::size_t j = 0; symmetric && j < 4; ++j) symmetric = t.rows[i][j + 1] == t.rows[j][i + 1];
  }
  return {identical && symmetric, std::string("byte-identical: ") + (identical ? "yes" : "no") +
                                      ", symmetric with zero diagonal: " + (symmetric ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "h-function closed forms vs quadrature", 1.0, h_closed_forms},
      {2, "analytic oracle A (uniform halves, Boltzmann)", 1.0, oracle_a},
      {3, "analytic oracle B (linear pair, reciprocal)", 1.0, oracle_b},
      {4, "analytic oracle C (linear pair, Boltzmann)", 1.0, oracle_c},
      {5, "formulation equivalence", 30.0, formulation_equivalence},
      {6, "metric properties", 60.0, metric_properties},
      {7, "Taylor / Hessian consistency", 30.0, taylor_consistency},
      {8, "geodesic checks", 10.0, geodesic_checks},
      {9, "Wasserstein sanity", 5.0, wasserstein_sanity},
      {10, "CLI matrix determinism", 10.0, cli_determinism},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.body();
    } catch (const std::exception& ex) {
      outcome = {false, std::string("exception: ") + ex.what()};
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = elapsed < c.time_limit_s;
    const bool pass = outcome.pass && in_time;
    failed += !pass;
    std::printf("[%s] AC%-2d %s: %s; %.3f s (limit %.0f s)\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                outcome.detail.c_str(), elapsed, c.time_limit_s);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
