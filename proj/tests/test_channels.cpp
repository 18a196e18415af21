#include <doctest.h>

#include <cmath>
#include <future>
#include <vector>

#include "cvteleport/analytics.hpp"
#include "cvteleport/channels.hpp"
#include "cvteleport/numerics.hpp"

using namespace cvt;

TEST_SUITE("channels") {

TEST_CASE("derived channel scalars and their invariants") {
  for (double r : {0.0, 0.2, 0.34, 0.7, 2.0})
    for (double T : {0.0, 0.3, 0.6, 0.81, 1.0}) {
      const ChannelParams p(r, T);
      CHECK(p.lambda() >= 0.0);
      CHECK(p.lambda() < 1.0);
      CHECK(p.nbar() >= std::exp(-2.0 * r) - 1e-15);
      CHECK(p.nbar() <= 1.0 + 1e-15);
      CHECK(p.ntilde() >= 0.0);
      // The two printed forms of nbar agree.
      const double alt = 1.0 - 2.0 * p.lambda() * T / (1.0 + p.lambda());
      CHECK(std::abs(p.nbar() - alt) <= 1e-12);
    }
  CHECK_THROWS_AS(ChannelParams(0.5, 1.2), InvalidTransmittance);
  CHECK_THROWS_AS(ChannelParams(0.5, -0.1), InvalidTransmittance);
  CHECK_THROWS_AS(ChannelParams(-0.2, 0.5), InvalidSpec);
}

TEST_CASE("nbar decreases strictly in r and T") {
  for (int i = 0; i < 19; ++i)
    for (int j = 0; j < 19; ++j) {
      const double r = 0.05 + 0.15 * i;
      const double T = 0.05 + 0.05 * j;
      CHECK(ChannelParams(r + 0.05, T).nbar() < ChannelParams(r, T).nbar());
      CHECK(ChannelParams(r, T + 0.04).nbar() < ChannelParams(r, T).nbar());
    }
}

TEST_CASE("measurement outcome mu") {
  const MeasurementOutcome out{1.3, -0.7};
  CHECK(std::abs(out.mu() - Complex(1.3, -0.7) / std::sqrt(2.0)) <= 1e-14);
}

TEST_CASE("loss at unit transmittance is the identity") {
  const DensityMatrix rho = build_state(StateSpec::make_cat(1.4), 30);
  CHECK(trace_distance(loss_map(rho, 1.0), rho) <= 1e-10);
}

TEST_CASE("single photon under loss: two-outcome mixture") {
  const DensityMatrix rho = build_state(StateSpec::make_fock(1), 8);
  const DensityMatrix out = loss_map(rho, 0.81);
  CHECK(out.elems(0, 0).real() == doctest::Approx(0.19).epsilon(1e-12));
  CHECK(out.elems(1, 1).real() == doctest::Approx(0.81).epsilon(1e-12));
  CHECK(std::abs(out.trace_real() - 1.0) <= 1e-12);
}

TEST_CASE("coherent states stay coherent with scaled amplitude") {
  const DensityMatrix in = build_state(StateSpec::make_coherent(1.0), 30);
  const DensityMatrix expected = build_state(StateSpec::make_coherent(0.7), 30);
  CHECK(trace_distance(loss_map(in, 0.49), expected) <= 1e-6);
}

TEST_CASE("fock overlap after loss is T^n") {
  for (int n : {1, 2, 3})
    for (double T : {0.6, 0.9}) {
      const int dim = 20;
      const DensityMatrix rho = build_state(StateSpec::make_fock(n), dim);
      CHECK(fidelity(rho, loss_map(rho, T)) ==
            doctest::Approx(std::pow(T, n)).epsilon(1e-12));
    }
}

TEST_CASE("thermal input under loss stays thermal with scaled mean") {
  const DensityMatrix in = build_state(StateSpec::make_thermal(0.8), 50);
  const DensityMatrix expected = build_state(StateSpec::make_thermal(0.48), 50);
  CHECK(trace_distance(loss_map(in, 0.6), expected) <= 1e-9);
}

TEST_CASE("loss preserves trace and positivity") {
  const DensityMatrix rho = build_state(StateSpec::make_cat(1.6), 32);
  for (double T : {0.0, 0.25, 0.7}) {
    const DensityMatrix out = loss_map(rho, T);
    CHECK(std::abs(out.trace_real() - 1.0) <= 1e-9);
    CHECK(out.min_eigenvalue() >= -1e-8);
  }
  CHECK_THROWS_AS(loss_map(rho, 1.01), InvalidTransmittance);
  // T = 0 discards everything into the vacuum.
  const DensityMatrix vac = build_state(StateSpec::make_fock(0), 32);
  CHECK(trace_distance(loss_map(rho, 0.0), vac) <= 1e-12);
}

TEST_CASE("direct_transmit is the loss map") {
  const DensityMatrix rho = build_state(StateSpec::make_fock(2), 16);
  CHECK(trace_distance(direct_transmit(rho, 0.5), loss_map(rho, 0.5)) == 0.0);
}

TEST_CASE("noiseless strong-squeezing teleportation is the identity") {
  const DensityMatrix vac = build_state(StateSpec::make_fock(0), 16);
  const DensityMatrix out = teleport_average(vac, ChannelParams(20.0, 1.0));
  CHECK(trace_distance(out, vac) <= 1e-10);
}

TEST_CASE("classical channel at r = 0 thermalizes the vacuum") {
  const ChannelParams params(0.0, 0.37);  // T is irrelevant at r = 0
  CHECK(params.nbar() == doctest::Approx(1.0).epsilon(1e-15));
  const int dim = 32;
  const DensityMatrix vac = build_state(StateSpec::make_fock(0), dim);
  const DensityMatrix out = teleport_average(vac, params);
  const DensityMatrix th = build_state(StateSpec::make_thermal(1.0), dim);
  CHECK(trace_distance(out, th) <= 1e-4);
  CHECK(fidelity(vac, out) == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("teleported coherent state is a displaced thermal state") {
  const ChannelParams params(0.7, 0.85);
  const Complex alpha(0.8, 0.0);
  const int dim = 40;
  const DensityMatrix in = build_state(StateSpec::make_coherent(alpha), dim);
  const DensityMatrix out = teleport_average(in, params);
  CHECK(std::abs(out.trace_real() - 1.0) <= 1e-6);

  const Matrix d = displacement_matrix(alpha, dim);
  DensityMatrix expected;
  expected.elems =
      d * build_state(StateSpec::make_thermal(params.nbar()), dim).elems *
      d.adjoint();
  CHECK(trace_distance(out, expected) <= 1e-4);
}

TEST_CASE("teleported single photon matches the closed-form overlap") {
  const ChannelParams params(0.69, 0.9);
  const int dim = 36;
  const DensityMatrix rho = build_state(StateSpec::make_fock(1), dim);
  const double oracle = fidelity(rho, teleport_average(rho, params));
  CHECK(std::abs(oracle - fidelity_fock_tel(1, params)) <= 1e-3);

  // the nbar = 0.3 point behind the (1 + x^2)/(1 + x)^3 form
  const ChannelParams p03(0.7520386983881371, 0.9);
  const double o03 = fidelity(rho, teleport_average(rho, p03));
  CHECK(std::abs(o03 - 1.09 / (1.3 * 1.3 * 1.3)) <= 1e-3);

  // the nbar = 1 limit at r = 0
  const DensityMatrix rho1 = build_state(StateSpec::make_fock(1), 40);
  const double o1 = fidelity(rho1, teleport_average(rho1, ChannelParams(0.0, 0.9)));
  CHECK(std::abs(o1 - 0.25) <= 1e-3);
}

TEST_CASE("noise channel equals loss followed by amplification") {
  // Additive Gaussian noise of variance nbar decomposes exactly into pure
  // loss at 1/(1+nbar) followed by a quantum-limited amplifier of gain
  // 1+nbar. The amplifier Kraus route below is banded arithmetic with no
  // matrix exponential, an independent check of the quadrature path.
  auto amplify = [](const DensityMatrix& rho, double gain) {
    const int dim = rho.dim();
    const double t = std::sqrt((gain - 1.0) / gain);
    const double c = std::sqrt(gain);
    DensityMatrix out;
    out.elems = Matrix::Zero(dim, dim);
    std::vector<double> b(dim);
    for (int k = 0; k < dim; ++k) {
      for (int n = 0; n + k < dim; ++n)
        b[n] = std::exp(0.5 * log_binomial(n + k, k)) * std::pow(t, k) *
               std::pow(c, -(n + 1.0));
      for (int m = 0; m + k < dim; ++m)
        for (int n = 0; n + k < dim; ++n)
          out.elems(m + k, n + k) += b[m] * b[n] * rho.elems(m, n);
    }
    return out;
  };

  const ChannelParams params(0.5, 0.8);
  const int dim = 48;
  for (const StateSpec& spec :
       {StateSpec::make_coherent(0.9), StateSpec::make_fock(2),
        StateSpec::make_cat(1.3)}) {
    const DensityMatrix rho = build_state(spec, dim);
    const DensityMatrix via_quadrature = teleport_average(rho, params);
    const double gain = 1.0 + params.nbar();
    const DensityMatrix via_kraus = amplify(loss_map(rho, 1.0 / gain), gain);
    CHECK(trace_distance(via_quadrature, via_kraus) <= 1e-6);
  }
}

TEST_CASE("teleport_average is linear in the input") {
  const ChannelParams params(0.5, 0.8);
  const int dim = 40;
  const DensityMatrix a = build_state(StateSpec::make_fock(1), dim);
  const DensityMatrix b = build_state(StateSpec::make_coherent(0.8), dim);
  const double mix = 0.3;
  DensityMatrix blended;
  blended.elems = mix * a.elems + (1.0 - mix) * b.elems;
  const DensityMatrix lhs = teleport_average(blended, params);
  DensityMatrix rhs;
  rhs.elems = mix * teleport_average(a, params).elems +
              (1.0 - mix) * teleport_average(b, params).elems;
  CHECK(trace_distance(lhs, rhs) <= 1e-6);
}

TEST_CASE("teleport_average rejects insufficient cutoffs") {
  const ChannelParams params(0.2, 0.6);
  const DensityMatrix rho = build_state(StateSpec::make_coherent(1.0), 20);
  CHECK_THROWS_AS(teleport_average(rho, params), CutoffTooSmall);
}

TEST_CASE("outcome state at the origin is the bare thermal state") {
  const ChannelParams params(0.6, 0.75);
  const int dim = 24;
  const DensityMatrix out =
      teleport_outcome(0.0, MeasurementOutcome{0.0, 0.0}, params, dim);
  const DensityMatrix th =
      build_state(StateSpec::make_thermal(params.ntilde()), dim);
  CHECK(trace_distance(out, th) <= 1e-12);
}

TEST_CASE("noiseless arm keeps coherent outcomes coherent") {
  // T = 1 makes ntilde vanish; mu = alpha keeps the center at alpha.
  const ChannelParams params(0.9, 1.0);
  CHECK(params.ntilde() == doctest::Approx(0.0).scale(1.0));
  const Complex alpha(1.0, 0.0);
  const MeasurementOutcome out{std::sqrt(2.0), 0.0};  // mu = 1
  const int dim = 24;
  const DensityMatrix state = teleport_outcome(alpha, out, params, dim);
  const DensityMatrix coh = build_state(StateSpec::make_coherent(1.0), dim);
  CHECK(trace_distance(state, coh) <= 1e-9);
}

TEST_CASE("outcome displacement and ntilde arithmetic") {
  // lambda = 0.6, T = 0.8: mu_center = 2 * 0.48 / 0.928, ntilde = 0.0576 / 0.928
  const double r = std::atanh(0.6);
  const ChannelParams params(r, 0.8);
  const Complex alpha(2.0, 0.0);
  const Complex center =
      outcome_displacement(alpha, MeasurementOutcome{0.0, 0.0}, params);
  CHECK(std::abs(center - Complex(0.96 / 0.928, 0.0)) <= 1e-12);
  CHECK(params.ntilde() == doctest::Approx(0.0576 / 0.928).epsilon(1e-12));

  const int dim = 40;
  const DensityMatrix state =
      teleport_outcome(alpha, MeasurementOutcome{0.0, 0.0}, params, dim);
  const Matrix d = displacement_matrix(center, dim);
  DensityMatrix expected;
  expected.elems =
      d * build_state(StateSpec::make_thermal(params.ntilde()), dim).elems *
      d.adjoint();
  CHECK(trace_distance(state, expected) <= 1e-12);
}

TEST_CASE("near-unit lambda and T reproduce the input coherent state") {
  const ChannelParams params(std::atanh(0.999), 1.0);
  const Complex alpha(1.0, 0.0);
  const int dim = 24;
  const DensityMatrix state =
      teleport_outcome(alpha, MeasurementOutcome{0.0, 0.0}, params, dim);
  const DensityMatrix coh = build_state(StateSpec::make_coherent(alpha), dim);
  CHECK(trace_distance(state, coh) <= 0.01);
}

TEST_CASE("outcome density: prefactor, normalization, flatness") {
  // lambda = 0 prefactor
  CHECK(outcome_density(0.0, {0.0, 0.0}, ChannelParams(0.0, 0.5)) ==
        doctest::Approx(1.0 / (2.0 * M_PI)).epsilon(1e-12));

  // normalization over a wide grid, dx dp measure
  const ChannelParams params(0.7, 0.8);
  const Complex alpha(1.0, 0.0);
  const double half = 14.0;
  const int n = 281;
  const double h = 2.0 * half / (n - 1);
  double mass = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const MeasurementOutcome out{std::sqrt(2.0) - half + i * h,
                                   -half + j * h};
      mass += outcome_density(alpha, out, params) * h * h;
    }
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-4));

  // strong squeezing: density nearly uniform near alpha
  const ChannelParams strong(std::atanh(0.999), 0.8);
  const double center = outcome_density(alpha, {std::sqrt(2.0), 0.0}, strong);
  double min_ratio = 1.0;
  for (double dxp : {-1.0, -0.5, 0.5, 1.0}) {
    const MeasurementOutcome out{std::sqrt(2.0) + std::sqrt(2.0) * dxp, 0.0};
    min_ratio = std::min(min_ratio, outcome_density(alpha, out, strong) / center);
  }
  CHECK(min_ratio >= 0.99);
}

TEST_CASE("kernel value at vanishing arguments is the prefactor") {
  const ChannelParams params(0.7, 0.8);
  const double expected =
      1.0 / (2.0 * M_PI * M_PI * std::sqrt(params.nbar() * params.nbar_minus()));
  CHECK(kernel_g({0, 0, 0, 0}, params) ==
        doctest::Approx(expected).epsilon(1e-14));
  // The uncorrected prefactor differs by sqrt(nbar_minus / nbar).
  const double printed = kernel_g({0, 0, 0, 0}, params, KernelPrefactor::as_printed);
  CHECK(printed == doctest::Approx(1.0 / (2.0 * M_PI * M_PI * params.nbar()))
                       .epsilon(1e-14));
}

TEST_CASE("kernel factorizes at T = 1") {
  const ChannelParams params(0.7, 1.0);
  for (double y1 : {-1.5, 0.3})
    for (double y2 : {-0.4, 1.1})
      for (double z1 : {-0.9, 0.8})
        for (double z2 : {-1.2, 0.5}) {
          const double g = kernel_g({y1, y2, z1, z2}, params);
          const double prod =
              kernel_g_factor(z1, y1, 0.7) * kernel_g_factor(z2, y2, 0.7);
          CHECK(std::abs(g / prod - 1.0) <= 1e-12);
        }
}

TEST_CASE("factor reduces to a round gaussian at r = 0") {
  for (double x : {-1.0, 0.2, 1.7})
    for (double y : {-0.6, 0.9}) {
      const double expected =
          std::exp(-0.5 * (x * x + y * y)) / (M_PI * std::sqrt(2.0));
      CHECK(kernel_g_factor(x, y, 0.0) ==
            doctest::Approx(expected).epsilon(1e-13));
    }
}

TEST_CASE("kernel is symmetric under the pair swap") {
  const ChannelParams params(0.45, 0.65);
  const double a = kernel_g({0.3, -0.8, 1.1, 0.4}, params);
  const double b = kernel_g({-0.8, 0.3, 0.4, 1.1}, params);
  CHECK(a == doctest::Approx(b).epsilon(1e-14));
}

TEST_CASE("concurrent channel evaluations are bit-identical to serial ones") {
  const ChannelParams params(0.6, 0.85);
  const int dim = 36;
  const std::vector<DensityMatrix> inputs = {
      build_state(StateSpec::make_fock(1), dim),
      build_state(StateSpec::make_coherent(0.7), dim),
      build_state(StateSpec::make_cat(1.2), dim),
      build_state(StateSpec::make_thermal(0.4), dim)};

  std::vector<DensityMatrix> serial;
  for (const auto& rho : inputs) serial.push_back(teleport_average(rho, params));

  std::vector<std::future<DensityMatrix>> jobs;
  for (const auto& rho : inputs)
    jobs.push_back(std::async(std::launch::async, [&params, &rho] {
      return teleport_average(rho, params);
    }));
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const DensityMatrix parallel = jobs[i].get();
    CHECK((parallel.elems.array() == serial[i].elems.array()).all());
  }
}

TEST_CASE("iterated teleportation is never better than one long hop") {
  const ChannelParams params(0.34, 0.81);
  const IterationComparison one = iterate_teleport_nbar(params, 1);
  CHECK(one.iterated == doctest::Approx(params.nbar()).epsilon(1e-15));
  CHECK(one.single_hop == doctest::Approx(params.nbar()).epsilon(1e-15));

  const IterationComparison two = iterate_teleport_nbar(params, 2);
  CHECK(two.iterated == doctest::Approx(2.0 * params.nbar()).epsilon(1e-15));
  CHECK(two.single_hop ==
        doctest::Approx(1.0 - (1.0 - std::exp(-0.68)) * 0.81 * 0.81)
            .epsilon(1e-12));
  CHECK(two.single_hop <= two.iterated);

  // noiseless limit: both vanish
  const IterationComparison clean = iterate_teleport_nbar(ChannelParams(25.0, 1.0), 5);
  CHECK(clean.iterated <= 1e-12);
  CHECK(clean.single_hop <= 1e-12);
}

}  // TEST_SUITE
