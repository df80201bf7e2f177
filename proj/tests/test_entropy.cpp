#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "hessdist/entropy.hpp"
#include "hessdist/error.hpp"
#include "support/oracles.hpp"

using namespace hessdist;
using namespace hessdist::testing;

namespace {

std::vector<EntropyModel> named_models() {
  return {make_entropy(EntropyKind::Boltzmann), make_entropy(EntropyKind::Quadratic),
          make_entropy(EntropyKind::Cross), make_entropy(EntropyKind::Reciprocal),
          make_entropy(EntropyKind::Gamma, 0.5), make_entropy(EntropyKind::Gamma, 3.7)};
}

std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> ys(n);
  for (int k = 0; k < n; ++k) ys[k] = lo * std::pow(hi / lo, k / double(n - 1));
  return ys;
}

}  // namespace

TEST_CASE("closed-form h values") {
  CHECK(h_eval(make_entropy(EntropyKind::Boltzmann), std::numbers::e) == doctest::Approx(1.0));
  CHECK(h_eval(make_entropy(EntropyKind::Reciprocal), 3.0) == doctest::Approx(2.0));
  CHECK(h_eval(make_entropy(EntropyKind::Gamma, 3.0), 4.0) == doctest::Approx(3.0));
  CHECK(h_eval(make_entropy(EntropyKind::Quadratic), 4.0) == doctest::Approx(1.0));
  CHECK(h_eval(make_entropy(EntropyKind::Cross), 9.0) == doctest::Approx(4.0));
  for (const auto& e : named_models()) CHECK(h_eval(e, 1.0) == 0.0);
}

TEST_CASE("h_numeric against known integrals") {
  const ScalarFunction boltzmann = [](double z) { return 1.0 / z; };
  const ScalarFunction reciprocal = [](double z) { return 1.0 / (z * z * z); };
  CHECK(std::abs(h_numeric(boltzmann, 2.0) - std::numbers::ln2) < 1e-9);
  CHECK(h_numeric(boltzmann, 1.0) == 0.0);
  CHECK(std::abs(h_numeric(reciprocal, 5.0) - 4.0) < 1e-9);
  CHECK(h_numeric(boltzmann, 0.5) < 0.0);
}

TEST_CASE("closed forms agree with quadrature on [0.1, 10]") {
  for (const auto& e : named_models()) {
    CAPTURE(e.name());
    for (double y : log_spaced(0.1, 10.0, 50)) {
      CHECK(std::abs(e.h_closed(y) - h_numeric(e.f_second_function(), y)) <= 1e-8);
    }
  }
}

TEST_CASE("h is strictly increasing") {
  const auto custom = make_custom_entropy([](double z) { return 1.0 / z + z; });
  auto models = named_models();
  models.push_back(custom);
  for (const auto& e : models) {
    CAPTURE(e.name());
    const auto ys = log_spaced(0.05, 20.0, 40);
    for (std::size_t k = 1; k < ys.size(); ++k) CHECK(h_eval(e, ys[k - 1]) < h_eval(e, ys[k]));
  }
}

TEST_CASE("gamma = 3 coincides with the reciprocal entropy") {
  const auto g3 = make_entropy(EntropyKind::Gamma, 3.0);
  const auto rec = make_entropy(EntropyKind::Reciprocal);
  for (double y : log_spaced(0.01, 100.0, 30)) CHECK(std::abs(h_eval(g3, y) - h_eval(rec, y)) <= 1e-12);
}

TEST_CASE("h inverse") {
  for (const auto& e : named_models()) {
    CAPTURE(e.name());
    for (double y : log_spaced(0.05, 20.0, 25)) {
      CHECK(e.h_inverse(h_eval(e, y)) == doctest::Approx(y).epsilon(1e-12));
    }
  }
  SUBCASE("custom kinds invert by bisection") {
    const auto custom = make_custom_entropy([](double z) { return 1.0 / z; });
    for (double y : {0.2, 1.0, 3.0}) CHECK(custom.h_inverse(h_eval(custom, y)) == doctest::Approx(y).epsilon(1e-10));
  }
  SUBCASE("quadratic h is bounded above by 2") {
    const auto q = make_entropy(EntropyKind::Quadratic);
    CHECK_THROWS_AS(q.h_inverse(2.5), Error);
    try {
      q.h_inverse(2.0);
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::HInversionOutOfRange);
    }
  }
}

TEST_CASE("entropy construction errors") {
  const auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::IoError;
  };
  CHECK(code_of([] { make_entropy(EntropyKind::Gamma, 1.0); }) == ErrorCode::InvalidGamma);
  CHECK(code_of([] { make_entropy(EntropyKind::Gamma, 2.0); }) == ErrorCode::InvalidGamma);
  CHECK(code_of([] { make_entropy(EntropyKind::Gamma); }) == ErrorCode::InvalidGamma);
  CHECK(code_of([] { make_custom_entropy([](double z) { return z - 1.0; }); }) == ErrorCode::NonConvex);
  CHECK(code_of([] { h_eval(make_entropy(EntropyKind::Boltzmann), 0.0); }) == ErrorCode::DomainError);
  CHECK(code_of([] { h_eval(make_entropy(EntropyKind::Boltzmann), -1.0); }) == ErrorCode::DomainError);
  // Quadrature cannot resolve 1/z down to 1e-300 within the depth limit.
  const auto custom_boltzmann = make_custom_entropy([](double z) { return 1.0 / z; });
  CHECK(code_of([&] { h_eval(custom_boltzmann, 1e-300); }) == ErrorCode::DomainError);
  CHECK(code_of([&] { h_numeric(custom_boltzmann.f_second_function(), 1e-300); }) ==
        ErrorCode::QuadratureDivergence);
}

TEST_CASE("parse_entropy") {
  CHECK(parse_entropy("boltzmann").kind() == EntropyKind::Boltzmann);
  CHECK(parse_entropy("Reciprocal").kind() == EntropyKind::Reciprocal);
  const auto g = parse_entropy("gamma:0.5");
  CHECK(g.kind() == EntropyKind::Gamma);
  CHECK(g.gamma() == 0.5);
  CHECK(parse_entropy("gamma", 4.0).gamma() == 4.0);
  CHECK_THROWS_AS(parse_entropy("shannon"), Error);
  CHECK_THROWS_AS(parse_entropy("gamma:abc"), Error);
  CHECK_THROWS_AS(parse_entropy("gamma:1"), Error);
}

TEST_CASE("f_entropy_value") {
  const auto boltzmann = make_entropy(EntropyKind::Boltzmann);
  CHECK(std::abs(f_entropy_value(boltzmann, uniform_density(0.0, 1.0, 64))) < 1e-15);
  CHECK(f_entropy_value(make_entropy(EntropyKind::Quadratic), uniform_density(0.0, 1.0, 64)) ==
        doctest::Approx(0.5));
  CHECK(f_entropy_value(boltzmann, uniform_density(0.0, 0.5, 64)) ==
        doctest::Approx(std::numbers::ln2).epsilon(1e-12));
  const auto no_f = make_custom_entropy([](double z) { return 1.0 / z; });
  CHECK_THROWS_AS(f_entropy_value(no_f, uniform_density(0.0, 1.0, 64)), Error);
}

TEST_CASE("adaptive_simpson reports divergence") {
  CHECK(adaptive_simpson([](double x) { return std::cos(x); }, 0.0, std::numbers::pi / 2) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK_THROWS_AS(adaptive_simpson([](double x) { return 1.0 / x; }, 0.0, 1.0), Error);
}
