#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>

#include "yeastlink/errors.hpp"
#include "yeastlink/tx/model.hpp"

using namespace yeastlink;
using tx::TxParams;

namespace {

std::array<double, tx::kNumSpecies> settled_state(const TxParams& p) {
  std::array<double, tx::kNumSpecies> y{};
  tx::TxInputs quiet;
  ode::SolverSettings s;
  s.h_max = 10.0;
  Trajectory pre = tx::simulate(p, quiet,
                                std::span<const double>(y.data(), y.size()),
                                0.0, 3000.0, s);
  const auto last = pre.row(pre.n_times() - 1);
  std::copy(last.begin(), last.end(), y.begin());
  return y;
}

}  // namespace

TEST_CASE("transport rate") {
  TxParams p;
  SUBCASE("balanced saturation terms cancel") {
    CHECK(tx::transport_rate(50.0, 1234.5, 1234.5, p) == 0.0);
    CHECK(tx::transport_rate(0.0, 5000.0, 0.0, p) == 0.0);
  }
  SUBCASE("saturating import approaches r_max G2") {
    const double v = tx::transport_rate(10.0, 1e15, 0.0, p);
    CHECK(v == doctest::Approx(p.r_max * 10.0).epsilon(1e-6));
  }
  SUBCASE("antisymmetry under swapping inside and outside is exact") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> dist(0.0, 1e6);
    for (int i = 0; i < 10000; ++i) {
      const double g2 = dist(rng), a = dist(rng), b = dist(rng);
      CHECK(tx::transport_rate(g2, a, b, p) ==
            -tx::transport_rate(g2, b, a, p));
    }
  }
  SUBCASE("negative input is a domain error") {
    CHECK_THROWS_AS(tx::transport_rate(-1.0, 0.0, 0.0, p), std::domain_error);
    CHECK_THROWS_AS(tx::transport_rate(1.0, -1.0, 0.0, p), std::domain_error);
  }
}

TEST_CASE("phosphorylation branch") {
  TxParams p;
  SUBCASE("values at Gi = 0 follow from direct substitution") {
    CHECK(tx::phospho_sigma(0.0, p) ==
          doctest::Approx(p.kappa_GK * p.K_IC / p.K_m));
    CHECK(tx::phospho_kp(0.0, p) == doctest::Approx(p.K_IC));
  }
  SUBCASE("kp / sigma = (K_m + Gi) / kappa_GK for all Gi") {
    for (double gi : {0.0, 1.0, 1e3, 5e4, 2e6})
      CHECK(tx::phospho_kp(gi, p) / tx::phospho_sigma(gi, p) ==
            doctest::Approx((p.K_m + gi) / p.kappa_GK).epsilon(1e-12));
  }
  SUBCASE("sigma is monotone decreasing (finite differences)") {
    double prev = tx::phospho_sigma(0.0, p);
    for (double gi = 100.0; gi <= 1e6; gi *= 1.6) {
      const double v = tx::phospho_sigma(gi, p);
      CHECK(v < prev);
      prev = v;
    }
  }
  SUBCASE("negative Gi rejected") {
    CHECK_THROWS_AS(tx::phospho_sigma(-1.0, p), std::domain_error);
  }
}

TEST_CASE("glucose factors") {
  TxParams p;
  SUBCASE("transport factor") {
    p.y_c = 1.0;
    CHECK(tx::glucose_transport_factor(0.0, p) == doctest::Approx(1.0));
    CHECK(tx::glucose_transport_factor(1e12, p) ==
          doctest::Approx(1.0 - p.y_b).epsilon(1e-9));
    double prev = tx::glucose_transport_factor(0.0, p);
    for (double r = 0.5; r < 1e5; r *= 2.0) {
      const double v = tx::glucose_transport_factor(r, p);
      CHECK(v < prev);
      prev = v;
    }
  }
  SUBCASE("repression factor") {
    CHECK(tx::glucose_repression_factor(0.0, p) == 1.0);
    TxParams q = p;
    q.n_x = 1.0;
    CHECK(tx::glucose_repression_factor(q.x_c, q) == doctest::Approx(0.5));
    CHECK(tx::glucose_repression_factor(1e15, p) ==
          doctest::Approx(0.0).epsilon(1e-9));
  }
  SUBCASE("no glucose leaves dilution at its basal value") {
    CHECK(tx::dilution_rate(0.0, p) == p.mu_alpha);
  }
}

TEST_CASE("binding constants") {
  TxParams p;
  SUBCASE("unit substitution") {
    TxParams u = p;
    u.K_D_1 = u.K_D_3 = u.K_D_80 = 1.0;
    u.K_B_1 = u.K_B_3 = u.K_B_80 = 1.0;
    u.gamma_G_1 = u.gamma_G_3 = 0.0;
    u.mu_alpha = 1.0;
    u.kappa_C_1 = u.kappa_C_3 = 1.0;
    const auto [K1, K3, K80] = tx::binding_constants(u);
    CHECK(K1 == doctest::Approx(1.0));
    CHECK(K3 == doctest::Approx(1.0));
    CHECK(K80 == doctest::Approx(1.0));
  }
  SUBCASE("doubling the activation rate halves K1") {
    const auto [K1a, K3a, K80a] = tx::binding_constants(p);
    TxParams q = p;
    q.kappa_C_1 *= 2.0;
    const auto [K1b, K3b, K80b] = tx::binding_constants(q);
    CHECK(K1b == doctest::Approx(0.5 * K1a));
    CHECK(K3b == K3a);
    CHECK(K80b == K80a);  // independent of rates entirely
  }
  SUBCASE("kinetic terms never reach K80") {
    TxParams q = p;
    q.gamma_G_1 = 0.123;
    q.kappa_C_3 = 7.0;
    CHECK(tx::binding_constants(q)[2] == tx::binding_constants(p)[2]);
  }
  SUBCASE("non-positive constants rejected") {
    TxParams q = p;
    q.K_B_80 = 0.0;
    CHECK_THROWS_AS(tx::binding_constants(q), config_error);
  }
}

TEST_CASE("fractional transcription") {
  TxParams p;
  SUBCASE("repressor-free limit is exactly one") {
    CHECK(tx::fractional_transcription(1, 0.0, 5.0, 5.0, 100.0, p) == 1.0);
  }
  SUBCASE("strong repression with no activators shuts the promoter") {
    CHECK(tx::fractional_transcription(1, 1e12, 0.0, 0.0, 0.0, p) ==
          doctest::Approx(0.0).epsilon(1e-9));
  }
  SUBCASE("bounded in [0, 1) over random states") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
      const double g80 = std::pow(10.0, 6.0 * dist(rng) - 2.0);
      const double g3 = 200.0 * dist(rng);
      const double g1 = 200.0 * dist(rng);
      const double gi = std::pow(10.0, 7.0 * dist(rng) - 1.0);
      const int n = 1 + static_cast<int>(3.0 * dist(rng));
      const double r = tx::fractional_transcription(n, g80, g3, g1, gi, p);
      CHECK(r >= 0.0);
      CHECK(r < 1.0);
    }
  }
  SUBCASE("site count and argument validation") {
    CHECK_THROWS_AS(tx::fractional_transcription(0, 1.0, 0.0, 0.0, 0.0, p),
                    config_error);
    CHECK_THROWS_AS(tx::fractional_transcription(1, -1.0, 0.0, 0.0, 0.0, p),
                    std::domain_error);
  }
}

TEST_CASE("derivatives: source-free decay terms") {
  TxParams p;
  tx::TxInputs quiet;

  SUBCASE("zero state leaves only the repressor-free transcription sources") {
    std::array<double, tx::kNumSpecies> y{}, d{};
    tx::tx_derivatives(0.0, std::span<const double>(y.data(), y.size()), quiet,
                       p, std::span<double>(d.data(), d.size()));
    // with no repressor the promoters sit in their open limit
    CHECK(d[tx::sp::M3] == doctest::Approx(p.kappa_tr_3));
    CHECK(d[tx::sp::M80] == doctest::Approx(p.kappa_tr_80));
    CHECK(d[tx::sp::M2] == doctest::Approx(p.kappa_tr_2));
    CHECK(d[tx::sp::M1] == doctest::Approx(p.kappa_tr_1));
    CHECK(d[tx::sp::MFalpha1] == doctest::Approx(p.kappa_tr_1));
    for (auto i : {tx::sp::G3, tx::sp::G80, tx::sp::G2, tx::sp::G1, tx::sp::Gi,
                   tx::sp::alpha_p, tx::sp::alpha_pep})
      CHECK(d[i] == 0.0);
  }
  SUBCASE("frozen transcription leaves pure exponential mRNA decay") {
    TxParams q = p;
    q.kappa_tr_3 = 1e-300;  // transcription frozen
    std::array<double, tx::kNumSpecies> y{};
    y[tx::sp::M3] = 8.0;
    ode::SolverSettings s;
    Trajectory t = tx::simulate(q, quiet,
                                std::span<const double>(y.data(), y.size()),
                                0.0, 10.0, s);
    const double lambda = q.gamma_M_3 + q.mu_alpha;
    for (std::size_t i = 0; i < t.n_times(); ++i)
      CHECK(t.value(i, tx::sp::M3) ==
            doctest::Approx(8.0 * std::exp(-lambda * t.times()[i]))
                .epsilon(1e-5));
  }
  SUBCASE("pheromone protein fixed point k_tr_alpha m / k_degP") {
    std::array<double, tx::kNumSpecies> y{}, d{};
    const double m = 3.7;
    y[tx::sp::MFalpha1] = m;
    y[tx::sp::alpha_p] = p.k_tr_alpha * m / p.k_degP;
    tx::tx_derivatives(0.0, std::span<const double>(y.data(), y.size()), quiet,
                       p, std::span<double>(d.data(), d.size()));
    CHECK(d[tx::sp::alpha_p] == doctest::Approx(0.0).epsilon(1e-14));
  }
}

TEST_CASE("induction and shutdown behavior") {
  TxParams p;
  const auto basal = settled_state(p);
  tx::TxInputs in;
  in.galactose = StimulusProfile({{0.0, 120.0, 1.0e5}});
  ode::SolverSettings s;
  s.h_max = 5.0;
  Trajectory traj = tx::simulate(p, in,
                                 std::span<const double>(basal.data(),
                                                         basal.size()),
                                 0.0, 360.0, s);
  Trajectory u = traj.resampled(1.0);

  SUBCASE("galactose induces every transcript") {
    for (auto sp : {tx::sp::M3, tx::sp::M80, tx::sp::M2, tx::sp::M1,
                    tx::sp::MFalpha1})
      CHECK(u.value_at(120.0, sp) > 2.0 * u.value_at(0.0, sp));
  }
  SUBCASE("state stays non-negative") {
    for (std::size_t i = 0; i < u.n_times(); ++i)
      for (std::size_t j = 0; j < tx::kNumSpecies; ++j)
        CHECK(u.value(i, j) >= 0.0);
  }
  SUBCASE("transcripts decay monotonically after removal plus margin") {
    // monotone decay down to the settled level, and no rebound above it
    const double margin = 10.0;
    for (auto sp : {tx::sp::M3, tx::sp::M80, tx::sp::M2, tx::sp::M1,
                    tx::sp::MFalpha1}) {
      const double settled = traj.value(traj.n_times() - 1, sp);
      double prev = 1e300;
      for (std::size_t i = 0; i < traj.n_times(); ++i) {
        if (traj.times()[i] < 120.0 + margin) continue;
        const double v = traj.value(i, sp);
        if (v > 1.02 * settled) CHECK(v <= prev * (1.0 + 1e-5));
        CHECK(v <= std::max(prev * (1.0 + 1e-5), 1.02 * settled));
        prev = v;
      }
      // and the decay is real, not vacuous
      CHECK(settled < 0.5 * u.value_at(120.0, sp));
    }
  }
}

TEST_CASE("adaptive and fixed-step solvers agree on the full system") {
  TxParams p;
  const auto basal = settled_state(p);
  tx::TxInputs in;
  in.galactose = StimulusProfile({{0.0, 120.0, 1.0e5}});
  ode::OdeProblem prob;
  prob.rhs = [&p, &in](double t, std::span<const double> y,
                       std::span<double> d) {
    tx::tx_derivatives(t, y, in, p, d);
  };
  prob.y0.assign(basal.begin(), basal.end());
  prob.t0 = 0.0;
  prob.t1 = 360.0;
  prob.breakpoints = in.galactose.breakpoints();
  ode::SolverSettings s;
  s.sample_dt = 0.01;
  s.h_max = tx::kMaxStableStepMin;
  const Trajectory adaptive = ode::integrate(prob, s, tx::species_names());
  const Trajectory reference =
      ode::fixed_step_reference(prob, 0.01, tx::species_names());
  for (std::size_t j = 0; j < tx::kNumSpecies; ++j) {
    const auto& name = tx::species_names()[j];
    const double ma = adaptive.max_value(name);
    const double mr = reference.max_value(name);
    CHECK(std::abs(ma - mr) <= 10.0 * s.rtol * std::max({ma, mr, 1e-6}));
  }
}

TEST_CASE("glucose represses the response") {
  TxParams p;
  p.mu_glc = 0.05;
  const auto basal = settled_state(p);
  ode::SolverSettings s;
  s.h_max = 5.0;
  auto peak_m1 = [&](double glucose_nM) {
    tx::TxInputs in;
    in.galactose = StimulusProfile({{0.0, 120.0, 1.0e5}});
    if (glucose_nM > 0.0)
      in.glucose = StimulusProfile({{0.0, 120.0, glucose_nM}});
    Trajectory t = tx::simulate(p, in,
                                std::span<const double>(basal.data(),
                                                        basal.size()),
                                0.0, 120.0, s);
    return t.max_value("M1");
  };
  const double free_peak = peak_m1(0.0);
  const double repressed = peak_m1(5.0e4);
  CHECK(repressed < 0.5 * free_peak);
}

TEST_CASE("secretion series") {
  TxParams p;
  SUBCASE("missing species is a data error") {
    Trajectory t({"x"}, {0.0, 1.0}, {0.0, 0.0});
    CHECK_THROWS_AS(tx::secretion_series(t, p), data_error);
  }
  SUBCASE("zero peptide means zero emission") {
    Trajectory t({"alpha_pep"}, {0.0, 1.0, 2.0}, {0.0, 0.0, 0.0});
    const auto e = tx::secretion_series(t, p);
    for (double r : e.rate_nM_min) CHECK(r == 0.0);
  }
  SUBCASE("constant peptide gives constant k_export scaled emission") {
    Trajectory t({"alpha_pep"}, {0.0, 1.0, 2.0}, {40.0, 40.0, 40.0});
    const auto e = tx::secretion_series(t, p);
    for (double r : e.rate_nM_min)
      CHECK(r == doctest::Approx(p.k_export * 40.0));
  }
  SUBCASE("trapezoid of the emission equals k_export times the peptide area") {
    // independent quadrature cross-check on a sampled ramp
    std::vector<double> times, vals;
    for (int i = 0; i <= 200; ++i) {
      const double t = 0.05 * i;
      times.push_back(t);
      vals.push_back(3.0 + 2.0 * t + std::sin(t));
    }
    Trajectory t({"alpha_pep"}, times, vals);
    const auto e = tx::secretion_series(t, p);
    double emission_area = 0.0, pep_area = 0.0;
    for (std::size_t i = 1; i < times.size(); ++i) {
      const double dt = times[i] - times[i - 1];
      emission_area += 0.5 * (e.rate_nM_min[i] + e.rate_nM_min[i - 1]) * dt;
      pep_area += 0.5 * (vals[i] + vals[i - 1]) * dt;
    }
    CHECK(emission_area ==
          doctest::Approx(p.k_export * pep_area).epsilon(1e-12));
  }
}

TEST_CASE("parameter file round trip and rejection") {
  TxParams p;
  p.r_max = 123.5;
  p.n_sites_r4 = 3;
  tx::write_params("tx_roundtrip.params", p);
  TxParams q;
  const auto info = tx::load_params("tx_roundtrip.params", q);
  CHECK(info.schema == "tx_params/1");
  CHECK(q.r_max == 123.5);
  CHECK(q.n_sites_r4 == 3);
  CHECK(q.K_S == p.K_S);

  // unknown keys are rejected with the key named
  {
    std::ofstream f("tx_bad.params");
    f << "schema = tx_params/1\nnot_a_key = 1\n";
  }
  TxParams r;
  CHECK_THROWS_WITH_AS(tx::load_params("tx_bad.params", r),
                       doctest::Contains("not_a_key"), config_error);

  // missing keys are rejected too
  {
    std::ofstream f("tx_missing.params");
    f << "schema = tx_params/1\nr_max = 1\n";
  }
  CHECK_THROWS_AS(tx::load_params("tx_missing.params", r), config_error);
}
