// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "vqpt/haar.hpp"
#include "vqpt/photonic.hpp"

using namespace vqpt;

TEST_SUITE("photonic") {

TEST_CASE("encode maps labels to mode indices") {
  CHECK(encode(3, "000").mode == 0);
  CHECK(encode(3, "010").mode == 2);
  CHECK(encode(3, "110").mode == 6);
  // The four tomography inputs with the ancilla fixed to 0.
  const char* labels[] = {"000", "010", "100", "110"};
  const int expected[] = {0, 2, 4, 6};
  for (int i = 0; i < 4; ++i) {
    CHECK(encode(3, labels[i]).mode == expected[i]);
  }
  CHECK_THROWS_AS(encode(3, "0101"), DomainError);
  CHECK_THROWS_AS(encode(3, "01x"), DomainError);
}

TEST_CASE("identity mesh routes the input straight through") {
  MeshProgram mesh;
  mesh.mode_count = 8;
  mesh.output_phases = ComplexVector::Ones(8);
  SeededRng rng(51);
  const RealVector raw = scatter_raw(mesh, {3, 0}, NoiseConfig{}, rng);
  CHECK(raw(0) == doctest::Approx(1.0));
  for (int k = 1; k < 8; ++k) {
    CHECK(raw(k) == doctest::Approx(0.0));
  }
}

TEST_CASE("single 50:50 cell splits evenly") {
  MeshProgram mesh;
  mesh.mode_count = 2;
  mesh.cells.push_back({0, 1, std::numbers::pi / 2.0, 0.0});
  mesh.output_phases = ComplexVector::Ones(2);
  SeededRng rng(52);
  const RealVector raw = scatter_raw(mesh, {1, 0}, NoiseConfig{}, rng);
  CHECK(raw(0) == doctest::Approx(0.5));
  CHECK(raw(1) == doctest::Approx(0.5));
}

TEST_CASE("noise-free scattering matches the unitary column") {
  SeededRng rng(53);
  const UnitaryMatrix u = haar_unitary(8, rng);
  const MeshProgram mesh = decompose(u);
  for (int j = 0; j < 8; ++j) {
    SeededRng srng(0);
    const RealVector raw = scatter_raw(mesh, {3, j}, NoiseConfig{}, srng);
    for (int k = 0; k < 8; ++k) {
      CHECK(std::abs(raw(k) - std::norm(u(k, j))) < 1e-12);
    }
  }
}

TEST_CASE("scattering intensities survive strip_output_phases") {
  SeededRng rng(54);
  const UnitaryMatrix u = haar_unitary(8, rng);
  const MeshProgram mesh = decompose(u);
  const MeshProgram stripped = strip_output_phases(mesh);
  for (int j = 0; j < 8; ++j) {
    SeededRng a(0);
    SeededRng b(0);
    const RealVector full = scatter_raw(mesh, {3, j}, NoiseConfig{}, a);
    const RealVector bare = scatter_raw(stripped, {3, j}, NoiseConfig{}, b);
    for (int k = 0; k < 8; ++k) {
      CHECK(std::abs(full(k) - bare(k)) < 1e-14);
    }
  }
}

TEST_CASE("jittered meshes still conserve energy on average") {
  SeededRng rng(55);
  const UnitaryMatrix u = haar_unitary(8, rng);
  const MeshProgram mesh = decompose(u);
  NoiseConfig noise;
  noise.phase_sigma = 0.2;
  SeededRng srng(56);
  double total = 0.0;
  constexpr int kTrials = 200;
  for (int trial = 0; trial < kTrials; ++trial) {
    const RealVector raw = scatter_raw(mesh, {3, 0}, noise, srng);
    const double sum = raw.sum();
    CHECK(sum == doctest::Approx(1.0));  // every jittered mesh stays unitary
    total += sum;
  }
  CHECK(total / kTrials == doctest::Approx(1.0));
}

TEST_CASE("process_raw subtracts, clamps and normalizes") {
  RealVector raw(4);
  raw << 2.1, 1.1, 1.1, 0.1;
  const RealVector floor = RealVector::Constant(4, 0.1);
  const IntensityDistribution dist = process_raw(raw, floor);
  CHECK(dist.probabilities(0) == doctest::Approx(0.5));
  CHECK(dist.probabilities(1) == doctest::Approx(0.25));
  CHECK(dist.probabilities(2) == doctest::Approx(0.25));
  CHECK(dist.probabilities(3) == doctest::Approx(0.0));
  CHECK(dist.probabilities.sum() == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(process_raw(floor, floor), DegenerateSignalError);
  RealVector short_floor(3);
  short_floor.setZero();
  CHECK_THROWS_AS(process_raw(raw, short_floor), ShapeError);
}

TEST_CASE("floor calibration recovers the clean distribution") {
  SeededRng rng(57);
  const UnitaryMatrix u = haar_unitary(8, rng);
  const MeshProgram mesh = decompose(u);

  NoiseConfig noise;
  noise.noisefloor_mean = 0.01;   // 1% of peak signal
  noise.noisefloor_sigma = 0.001;

  SeededRng calib_rng(58);
  const RealVector estimate = estimate_noisefloor(noise, 8, 380, calib_rng);
  for (int k = 0; k < 8; ++k) {
    CHECK(std::abs(estimate(k) - 0.01) < 5e-4);
  }

  SeededRng clean_rng(0);
  const RealVector clean = scatter_raw(mesh, {3, 0}, NoiseConfig{}, clean_rng);
  const RealVector clean_dist = clean / clean.sum();

  SeededRng noisy_rng(59);
  double worst_l1 = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const RealVector raw = scatter_raw(mesh, {3, 0}, noise, noisy_rng);
    const IntensityDistribution dist = process_raw(raw, estimate);
    worst_l1 = std::max(
        worst_l1, (dist.probabilities - clean_dist).cwiseAbs().sum());
  }
  CHECK(worst_l1 < 0.02);  // within the per-mode floor spread
}

TEST_CASE("recovered distributions degrade monotonically with phase noise") {
  SeededRng rng(60);
  const UnitaryMatrix u = haar_unitary(8, rng);
  const MeshProgram mesh = decompose(u);
  SeededRng clean_rng(0);
  const RealVector clean = scatter_raw(mesh, {3, 0}, NoiseConfig{}, clean_rng);

  // Classical fidelity between the clean and recovered distributions,
  // averaged over >= 100 draws per sigma.
  auto mean_fidelity = [&](double sigma) {
    NoiseConfig noise;
    noise.phase_sigma = sigma;
    SeededRng srng(61);
    double sum = 0.0;
    constexpr int kTrials = 120;
    for (int trial = 0; trial < kTrials; ++trial) {
      const RealVector raw = scatter_raw(mesh, {3, 0}, noise, srng);
      const IntensityDistribution dist =
          process_raw(raw, RealVector::Zero(8));
      double f = 0.0;
      for (int k = 0; k < 8; ++k) {
        f += std::sqrt(dist.probabilities(k) * clean(k));
      }
      sum += f * f;
    }
    return sum / kTrials;
  };

  const double f0 = mean_fidelity(0.0);
  const double f1 = mean_fidelity(0.05);
  const double f2 = mean_fidelity(0.2);
  CHECK(f0 == doctest::Approx(1.0));
  CHECK(f0 >= f1);
  CHECK(f1 >= f2);
}

TEST_CASE("ancilla_zero_probability") {
  IntensityDistribution uniform;
  uniform.mode_count = 8;
  uniform.probabilities = RealVector::Constant(8, 1.0 / 8.0);
  CHECK(ancilla_zero_probability(uniform, 3) == doctest::Approx(0.5));

  IntensityDistribution point;
  point.mode_count = 8;
  point.probabilities = RealVector::Zero(8);
  point.probabilities(1) = 1.0;  // label 001, ancilla = 1
  CHECK(ancilla_zero_probability(point, 3) == doctest::Approx(0.0));

  CHECK_THROWS_AS(ancilla_zero_probability(point, 2), ShapeError);
}

TEST_CASE("scatter_raw validates shapes") {
  MeshProgram mesh;
  mesh.mode_count = 8;
  mesh.output_phases = ComplexVector::Ones(8);
  SeededRng rng(62);
  CHECK_THROWS_AS(scatter_raw(mesh, {2, 0}, NoiseConfig{}, rng), ShapeError);
  CHECK_THROWS_AS(scatter_raw(mesh, {3, 9}, NoiseConfig{}, rng), DomainError);
}

}  // TEST_SUITE
