// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "vqpt/tomography.hpp"

using namespace vqpt;

namespace {

ParamVector random_params(int count, SeededRng& rng) {
  ParamVector p(count);
  for (double& v : p) {
    v = rng.uniform(0.0, 2.0 * std::numbers::pi);
  }
  return p;
}

std::vector<double> finite_difference_gradient(const UnitaryMatrix& target,
                                               const Circuit& ansatz,
                                               const ParamVector& params,
                                               double step) {
  std::vector<double> grad(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    ParamVector plus = params;
    ParamVector minus = params;
    plus[i] += step;
    minus[i] -= step;
    grad[i] = (cost(target, ansatz, plus, Backend::exact()) -
               cost(target, ansatz, minus, Backend::exact())) /
              (2.0 * step);
  }
  return grad;
}

}  // namespace

TEST_SUITE("tomography") {

TEST_CASE("cost vanishes when the ansatz reproduces the target") {
  SeededRng rng(71);
  const Circuit ansatz = build_ansatz({2, 3});
  const ParamVector params = random_params(ansatz.param_count(), rng);
  const UnitaryMatrix target = compile(ansatz, params);
  CHECK(cost(target, ansatz, params, Backend::exact()) < 1e-12);
}

TEST_CASE("cost is global-phase sensitive: C = 4 for U_VQC = -U") {
  SeededRng rng(72);
  const UnitaryMatrix u = haar_unitary(4, rng);
  const UnitaryMatrix minus_u{ComplexMatrix(-u.matrix())};
  CHECK(cost_with_vqc(u, minus_u, Backend::exact()) ==
        doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("exact and noise-free photonic backends agree") {
  SeededRng rng(73);
  const Circuit ansatz = build_ansatz({2, 3});
  for (int trial = 0; trial < 10; ++trial) {
    const UnitaryMatrix target = haar_unitary(4, rng);
    const ParamVector params = random_params(ansatz.param_count(), rng);
    const double exact = cost(target, ansatz, params, Backend::exact());
    const double photonic =
        cost(target, ansatz, params, Backend::photonic(NoiseConfig{}));
    CHECK(std::abs(exact - photonic) < 1e-10);
  }
}

TEST_CASE("sampled cost approaches the exact cost at 8194 shots") {
  SeededRng rng(74);
  const Circuit ansatz = build_ansatz({2, 3});
  for (int trial = 0; trial < 5; ++trial) {
    const UnitaryMatrix target = haar_unitary(4, rng);
    const ParamVector params = random_params(ansatz.param_count(), rng);
    const double exact = cost(target, ansatz, params, Backend::exact());
    const double sampled = cost(target, ansatz, params, Backend::sampled(8194),
                                SeededRng(1000 + trial));
    CHECK(std::abs(exact - sampled) < 0.05);
  }
}

TEST_CASE("gradient vanishes at the optimum") {
  SeededRng rng(75);
  const Circuit ansatz = build_ansatz({2, 3});
  const ParamVector params = random_params(ansatz.param_count(), rng);
  const UnitaryMatrix target = compile(ansatz, params);
  const std::vector<double> grad =
      gradient(target, ansatz, params, Backend::exact());
  for (double g : grad) {
    CHECK(std::abs(g) < 1e-9);
  }
}

TEST_CASE("four-term rule reproduces the analytic RY derivative") {
  // Single RY(theta) against the identity target on one qubit:
  // C(theta) = 2 - 2 cos(theta/2), so dC/dtheta = sin(theta/2).
  Circuit c(1);
  c.add(Gate::rotation(GateKind::RY, 0, 0));
  const UnitaryMatrix target = UnitaryMatrix::identity(2);
  SeededRng rng(76);
  for (int trial = 0; trial < 10; ++trial) {
    const double theta = rng.uniform(-6.0, 6.0);
    const double analytic_cost = 2.0 - 2.0 * std::cos(theta / 2.0);
    CHECK(std::abs(cost(target, c, {theta}, Backend::exact()) -
                   analytic_cost) < 1e-12);
    const std::vector<double> grad =
        gradient(target, c, {theta}, Backend::exact());
    CHECK(std::abs(grad[0] - std::sin(theta / 2.0)) < 1e-10);
  }
}

TEST_CASE("four-term rule matches central finite differences") {
  SeededRng rng(77);
  const Circuit ansatz = build_ansatz({2, 3});
  const UnitaryMatrix target = haar_unitary(4, rng);
  const ParamVector params = random_params(ansatz.param_count(), rng);
  const std::vector<double> shift =
      gradient(target, ansatz, params, Backend::exact());
  const std::vector<double> fd =
      finite_difference_gradient(target, ansatz, params, 1e-5);
  REQUIRE(shift.size() == 18);
  for (std::size_t i = 0; i < shift.size(); ++i) {
    CHECK(std::abs(shift[i] - fd[i]) < 1e-6);
  }
}

TEST_CASE("gradient is identical across thread counts") {
  SeededRng rng(78);
  const Circuit ansatz = build_ansatz({2, 3});
  const UnitaryMatrix target = haar_unitary(4, rng);
  const ParamVector params = random_params(ansatz.param_count(), rng);
  Backend noisy = Backend::photonic([] {
    NoiseConfig n;
    n.phase_sigma = 0.05;
    return n;
  }());
  const auto serial = gradient(target, ansatz, params, noisy, SeededRng(5), 1);
  const auto parallel =
      gradient(target, ansatz, params, noisy, SeededRng(5), 4);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i] == parallel[i]);
  }
}

TEST_CASE("adam: zero gradient leaves parameters unchanged") {
  AdamState state = make_adam_state(3, AdamConfig{});
  ParamVector params{0.1, 0.2, 0.3};
  const ParamVector before = params;
  const std::vector<double> zero(3, 0.0);
  adam_step(state, zero, params);
  adam_step(state, zero, params);
  CHECK(params == before);
}

TEST_CASE("adam: constant gradient steps approach the learning rate") {
  AdamConfig cfg;
  cfg.learning_rate = 0.05;
  AdamState state = make_adam_state(2, cfg);
  ParamVector params{1.0, -1.0};
  const std::vector<double> grad{0.3, -0.7};
  ParamVector prev = params;
  for (int step = 0; step < 60; ++step) {
    prev = params;
    adam_step(state, grad, params);
  }
  // m_hat/sqrt(v_hat) -> sign(g), so |delta| -> learning_rate.
  CHECK(std::abs((prev[0] - params[0]) - cfg.learning_rate) < 1e-3);
  CHECK(std::abs((prev[1] - params[1]) + cfg.learning_rate) < 1e-3);
}

TEST_CASE("adam: three steps match a hand-computed trace") {
  AdamConfig cfg;
  cfg.learning_rate = 0.5;
  AdamState state = make_adam_state(2, cfg);
  ParamVector params{0.0, 1.0};
  const std::vector<std::vector<double>> grads{
      {0.1, -0.2}, {0.05, 0.0}, {-0.1, 0.1}};

  // Independent trace of the published update rule.
  double m[2] = {0.0, 0.0};
  double v[2] = {0.0, 0.0};
  double expected[2] = {0.0, 1.0};
  for (int step = 1; step <= 3; ++step) {
    const std::vector<double>& g = grads[step - 1];
    for (int i = 0; i < 2; ++i) {
      m[i] = 0.8 * m[i] + 0.2 * g[i];
      v[i] = 0.999 * v[i] + 0.001 * g[i] * g[i];
      const double m_hat = m[i] / (1.0 - std::pow(0.8, step));
      const double v_hat = v[i] / (1.0 - std::pow(0.999, step));
      expected[i] -= 0.5 * m_hat / (std::sqrt(v_hat) + 1e-8);
    }
    adam_step(state, grads[step - 1], params);
    CHECK(params[0] == doctest::Approx(expected[0]).epsilon(1e-14));
    CHECK(params[1] == doctest::Approx(expected[1]).epsilon(1e-14));
  }
}

TEST_CASE("process fidelity: identity, phase invariance, closed form") {
  SeededRng rng(79);
  const UnitaryMatrix u = haar_unitary(4, rng);
  CHECK(process_fidelity(u, u) == doctest::Approx(1.0).epsilon(1e-12));

  for (double gamma : {0.3, 1.7, 4.0}) {
    const UnitaryMatrix phased{
        ComplexMatrix(std::polar(1.0, gamma) * u.matrix())};
    CHECK(std::abs(process_fidelity(u, phased) - 1.0) < 1e-12);
  }

  for (int trial = 0; trial < 10; ++trial) {
    const UnitaryMatrix a = haar_unitary(4, rng);
    const UnitaryMatrix b = haar_unitary(4, rng);
    const Complex tr = (a.matrix().adjoint() * b.matrix()).trace();
    const double closed_form = std::norm(tr) / 16.0;  // |Tr(a† b)|² / D²
    CHECK(std::abs(process_fidelity(a, b) - closed_form) < 1e-12);
    CHECK(process_fidelity(a, b) ==
          doctest::Approx(process_fidelity(b, a)).epsilon(1e-12));
    CHECK(process_fidelity(a, b) >= 0.0);
    CHECK(process_fidelity(a, b) <= 1.0 + 1e-12);
  }
}

TEST_CASE("process fidelity of identity vs Hadamard is traceless") {
  // |Tr(I† H)|²/D² with Tr H = 0 gives exactly zero.
  ComplexMatrix h(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  h << r, r, r, -r;
  CHECK(process_fidelity(UnitaryMatrix::identity(2), UnitaryMatrix(h)) <
        1e-15);
}

TEST_CASE("fidelity-cost link: near-zero cost implies near-unit fidelity") {
  SeededRng rng(80);
  const Circuit ansatz = build_ansatz({2, 6});
  const ParamVector params = random_params(ansatz.param_count(), rng);
  const UnitaryMatrix target = compile(ansatz, params);
  const double c = cost(target, ansatz, params, Backend::exact());
  REQUIRE(c < 1e-9);
  CHECK(process_fidelity(target, compile(ansatz, params)) > 1.0 - 1e-8);
}

TEST_CASE("no-op run: identity target with zero initial parameters") {
  TomographyConfig config;
  config.target_qubits = 1;
  config.depth = 2;
  config.iterations = 3;
  config.target = UnitaryMatrix::identity(2);
  config.initial_params = ParamVector(6, 0.0);
  const auto records = run_tomography(config);
  REQUIRE(records.size() == 3);
  for (const RunRecord& r : records) {
    CHECK(r.cost < 1e-12);
    CHECK(r.fidelity == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("run records satisfy the basic contract") {
  TomographyConfig config;
  config.target_qubits = 2;
  config.depth = 3;
  config.iterations = 4;
  config.seed = 21;
  const auto records = run_tomography(config);
  REQUIRE(records.size() == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(records[i].iteration == i);
    CHECK(records[i].cost >= 0.0);
    CHECK(records[i].fidelity >= 0.0);
    CHECK(records[i].fidelity <= 1.0 + 1e-9);
    CHECK(records[i].wall_seconds >= 0.0);
  }
}

TEST_CASE("optimization makes progress on a random target") {
  TomographyConfig config;
  config.target_qubits = 2;
  config.depth = 6;
  config.iterations = 6;
  config.seed = 22;
  const auto records = run_tomography(config);
  CHECK(records.back().cost < records.front().cost);
  CHECK(records.back().fidelity > records.front().fidelity);
}

TEST_CASE("ansatz expressivity: targets from the ansatz image are relearned") {
  SeededRng rng(81);
  const Circuit ansatz = build_ansatz({2, 6});
  const ParamVector truth = random_params(ansatz.param_count(), rng);

  TomographyConfig config;
  config.target_qubits = 2;
  config.depth = 6;
  config.iterations = 40;
  config.seed = 23;
  config.target = compile(ansatz, truth);
  const auto records = run_tomography(config);
  double best = records.front().cost;
  for (const RunRecord& r : records) {
    best = std::min(best, r.cost);
  }
  CHECK(best < 0.05);
}

TEST_CASE("runs are deterministic across invocations and thread counts") {
  TomographyConfig config;
  config.target_qubits = 2;
  config.depth = 3;
  config.iterations = 3;
  config.seed = 24;

  auto run_with_threads = [&](int threads) {
    TomographyConfig c = config;
    c.threads = threads;
    return run_tomography(c);
  };

  const auto a = run_with_threads(1);
  const auto b = run_with_threads(1);
  const auto c = run_with_threads(4);
  REQUIRE(a.size() == b.size());
  REQUIRE(a.size() == c.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].cost == b[i].cost);
    CHECK(a[i].fidelity == b[i].fidelity);
    CHECK(a[i].cost == c[i].cost);
    CHECK(a[i].fidelity == c[i].fidelity);
  }

  // Same for a noisy photonic backend, where determinism rests on keyed
  // child streams rather than on pure evaluations.
  TomographyConfig noisy = config;
  noisy.iterations = 2;
  noisy.backend = Backend::photonic([] {
    NoiseConfig n;
    n.phase_sigma = 0.05;
    n.noisefloor_mean = 0.01;
    n.noisefloor_sigma = 0.001;
    return n;
  }());
  TomographyConfig noisy4 = noisy;
  noisy4.threads = 4;
  const auto na = run_tomography(noisy);
  const auto nb = run_tomography(noisy4);
  REQUIRE(na.size() == nb.size());
  for (std::size_t i = 0; i < na.size(); ++i) {
    CHECK(na[i].cost == nb[i].cost);
    CHECK(na[i].fidelity == nb[i].fidelity);
  }
}

TEST_CASE("mesh-parameter space optimization also descends") {
  TomographyConfig config;
  config.target_qubits = 2;
  config.depth = 3;
  config.iterations = 6;
  config.seed = 25;
  config.space = OptimizationSpace::MeshParameters;
  const auto records = run_tomography(config);
  REQUIRE(records.size() == 6);
  CHECK(records.back().cost < records.front().cost);

  const auto again = run_tomography(config);
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(records[i].cost == again[i].cost);
    CHECK(records[i].fidelity == again[i].fidelity);
  }
}

TEST_CASE("config validation") {
  TomographyConfig config;
  config.iterations = 0;
  CHECK_THROWS_AS(run_tomography(config), DomainError);
  config.iterations = 1;
  config.learning_rate = 0.0;
  CHECK_THROWS_AS(run_tomography(config), DomainError);
  config.learning_rate = 0.1;
  config.initial_params = ParamVector(5, 0.0);  // wrong length for t=2, d=3
  CHECK_THROWS_AS(run_tomography(config), ArityError);
}

}  // TEST_SUITE
