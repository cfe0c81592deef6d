#include <doctest.h>

#include <random>

#include "model.hpp"

using namespace sbp;

namespace {

ModelConfig small_cfg(InterpKind kind, CouplingMode mode, long pts, int order) {
  ModelConfig cfg = ModelConfig::defaults();
  cfg.kind = kind;
  cfg.mode = mode;
  cfg.coarse_points = pts;
  cfg.order_left = cfg.order_right = order;
  return cfg;
}

}  // namespace

TEST_CASE("assembled dimensions match the paper's unknown counts") {
  auto cfg = small_cfg(InterpKind::P4, CouplingMode::NonDissipative, 15, 4);
  auto sys = assemble_model_operator(cfg);
  CHECK(sys.n == 2 * (15 * 15 + 29 * 29));  // 2132 unknowns at 15^2 coarse
  auto cfg6 = small_cfg(InterpKind::P6, CouplingMode::NonDissipative, 21, 6);
  auto sys6 = assemble_model_operator(cfg6);
  CHECK(sys6.n == 2 * (21 * 21 + 41 * 41));  // 4244 unknowns at 21^2 coarse
}

TEST_CASE("conforming identity coupling reproduces the classical two-domain SAT matrix") {
  // hand-assembled reference for a scalar conforming interface
  ModelConfig cfg = ModelConfig::defaults();
  cfg.k = 1;
  cfg.A = Eigen::MatrixXd::Constant(1, 1, 1.0);
  cfg.B = Eigen::MatrixXd::Constant(1, 1, 0.0);
  cfg.kind = InterpKind::IDENTITY;
  cfg.mode = CouplingMode::NonDissipative;
  cfg.coarse_points = 13;
  cfg.include_outer = false;
  auto sys = assemble_model_operator(cfg);

  long n = 13;
  double hx = (cfg.x_mid - cfg.x_left) / (n - 1);
  SbpOperator1D op(4, n, hx);
  Eigen::MatrixXd D = op.d1_dense();
  Eigen::MatrixXd Iy = Eigen::MatrixXd::Identity(n, n);
  long np = n * n;
  Eigen::MatrixXd ref = Eigen::MatrixXd::Zero(2 * np, 2 * np);
  Eigen::MatrixXd Dx = Eigen::MatrixXd::Zero(np, np);
  for (long i = 0; i < n; ++i)
    for (long m = 0; m < n; ++m)
      if (D(i, m) != 0)
        for (long j = 0; j < n; ++j) Dx(i * n + j, m * n + j) = D(i, m);
  ref.topLeftCorner(np, np) = -Dx;
  ref.bottomRightCorner(np, np) = -Dx;
  double ci = 1.0 / (hx * rat_to_double(op.norm().weights[n - 1]));
  double c0 = 1.0 / (hx * rat_to_double(op.norm().weights[0]));
  for (long j = 0; j < n; ++j) {
    long uN = (n - 1) * n + j, v0 = np + j;
    ref(uN, uN) += 0.5 * ci;
    ref(uN, v0) += -0.5 * ci;
    ref(v0, v0) += -0.5 * c0;
    ref(v0, uN) += 0.5 * c0;
  }
  CHECK((sys.L - ref).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("small fourth-order configuration is stable; non-SBP is unstable") {
  auto stable = compute_spectrum(
      assemble_model_operator(small_cfg(InterpKind::P4, CouplingMode::NonDissipative, 13, 4)), 1e-10);
  CHECK(stable.verdict == Verdict::Stable);
  CHECK(stable.max_real_scaled <= 1e-10);
  auto unstable = compute_spectrum(
      assemble_model_operator(small_cfg(InterpKind::NONSBP_P4, CouplingMode::NonDissipative, 13, 4)),
      1e-10);
  CHECK(unstable.verdict == Verdict::Unstable);
  CHECK(unstable.max_real_scaled > 1e-8);
}

TEST_CASE("spectrum is closed under conjugation") {
  auto rep = compute_spectrum(
      assemble_model_operator(small_cfg(InterpKind::P2, CouplingMode::NonDissipative, 11, 2)), 1e-10);
  for (auto& z : rep.eigenvalues) {
    if (z.imag() <= 0) continue;
    bool found = false;
    for (auto& w : rep.eigenvalues)
      if (std::abs(w.real() - z.real()) < 1e-12 && std::abs(w.imag() + z.imag()) < 1e-12) {
        found = true;
        break;
      }
    CHECK(found);
  }
}

TEST_CASE("classify_stability thresholds") {
  CHECK(classify_stability(0.0, 1e-10) == Verdict::Stable);
  CHECK(classify_stability(1e-4, 1e-8) == Verdict::Unstable);
  CHECK(classify_stability(-1.0, 1e-10) == Verdict::Stable);
}

TEST_CASE("energy oracle agrees with the spectrum verdict on randomized configurations") {
  std::mt19937 rng(4242);
  std::normal_distribution<double> dist;
  int agree = 0, total = 0;
  struct Pick {
    InterpKind kind;
    int order;
    long pts;
  };
  std::vector<Pick> picks = {{InterpKind::P2, 2, 11}, {InterpKind::P4, 4, 13},
                             {InterpKind::IDENTITY, 4, 12}, {InterpKind::P2, 2, 13}};
  std::vector<CouplingMode> modes = {CouplingMode::NonDissipative, CouplingMode::Characteristic,
                                     CouplingMode::Quadratic};
  for (int t = 0; t < 10; ++t) {
    auto pick = picks[t % picks.size()];
    auto mode = modes[t % modes.size()];
    Eigen::MatrixXd R(2, 2);
    for (long i = 0; i < 2; ++i)
      for (long j = 0; j < 2; ++j) R(i, j) = dist(rng);
    ModelConfig cfg = small_cfg(pick.kind, mode, pick.pts, pick.order);
    cfg.A = R + R.transpose();
    for (long i = 0; i < 2; ++i)
      for (long j = 0; j < 2; ++j) R(i, j) = dist(rng);
    cfg.B = R + R.transpose();
    auto sys = assemble_model_operator(cfg);
    auto ec = energy_matrix_check(sys);
    auto rep = compute_spectrum(sys, 1e-10);
    ++total;
    // the energy certificate is sufficient: S <= 0 must imply a stable spectrum
    if (ec.negative_semidefinite) {
      CHECK(rep.verdict == Verdict::Stable);
      if (rep.verdict == Verdict::Stable) ++agree;
    } else {
      ++agree;  // no certificate; nothing to contradict
    }
    // cross-validation invariant: S <= 0 => max Re(lambda h) <= 1e-11
    if (ec.negative_semidefinite) CHECK(rep.max_real_scaled <= 1e-11);
  }
  CHECK(agree == total);
}

TEST_CASE("relabeling symmetry: swapping the coarse side preserves the spectrum") {
  auto a = compute_spectrum(
      assemble_model_operator(small_cfg(InterpKind::P4, CouplingMode::Characteristic, 13, 4)), 1e-10);
  ModelConfig cfg = small_cfg(InterpKind::P4, CouplingMode::Characteristic, 13, 4);
  cfg.coarse_on_right = true;
  auto b = compute_spectrum(assemble_model_operator(cfg), 1e-10);
  REQUIRE(a.eigenvalues.size() == b.eigenvalues.size());
  CHECK(a.max_real_scaled == doctest::Approx(b.max_real_scaled).epsilon(1e-8).scale(1e-3));
  double worst = 0;
  for (size_t i = 0; i < a.eigenvalues.size(); ++i)
    worst = std::max(worst, std::abs(a.eigenvalues[i] - b.eigenvalues[i]));
  CHECK(worst < 1e-8);
}

TEST_CASE("heat-slice parabolic model: Re <= 0 and S <= 0") {
  ModelConfig cfg = ModelConfig::defaults();
  cfg.k = 1;
  cfg.A = Eigen::MatrixXd::Zero(1, 1);
  cfg.B = Eigen::MatrixXd::Zero(1, 1);
  cfg.kind = InterpKind::IDENTITY;
  cfg.mode = CouplingMode::NonDissipative;
  cfg.coarse_points = 13;
  ParabolicSpec ps;
  ps.C11 = Eigen::MatrixXd::Identity(1, 1);
  ps.C12 = ps.C21 = ps.C22 = Eigen::MatrixXd::Zero(1, 1);
  cfg.parabolic = ps;
  auto sys = assemble_model_operator(cfg);
  auto ec = energy_matrix_check(sys);
  CHECK(ec.max_eig_support <= 1e-11);
  auto rep = compute_spectrum(sys, 1e-10);
  // report scaled by h^2 for the diffusive operator
  double hscale = sys.h_fine;
  CHECK(rep.max_real_scaled * hscale <= 1e-10);
}

TEST_CASE("advection-diffusion two-block 2:1 interface with the viscous coupling is stable") {
  ModelConfig cfg = ModelConfig::defaults();
  cfg.k = 1;
  cfg.A = Eigen::MatrixXd::Constant(1, 1, 1.0);
  cfg.B = Eigen::MatrixXd::Constant(1, 1, 0.5);
  cfg.kind = InterpKind::P4;
  cfg.mode = CouplingMode::NonDissipative;
  cfg.coarse_points = 13;
  cfg.outer_bc = OuterBcType::CharacteristicData;
  ParabolicSpec ps;
  ps.C11 = ps.C22 = 0.01 * Eigen::MatrixXd::Identity(1, 1);
  ps.C12 = ps.C21 = Eigen::MatrixXd::Zero(1, 1);
  cfg.parabolic = ps;
  auto sys = assemble_model_operator(cfg);
  auto ec = energy_matrix_check(sys);
  CHECK(ec.max_eig_support <= 1e-11);
  auto rep = compute_spectrum(sys, 1e-10);
  CHECK(rep.max_real_scaled <= 1e-10);
  // characteristic inviscid coupling with the Lemma-4 viscous terms also holds
  cfg.mode = CouplingMode::Characteristic;
  auto sys2 = assemble_model_operator(cfg);
  CHECK(compute_spectrum(sys2, 1e-10).max_real_scaled <= 1e-10);
}

TEST_CASE("strict config schema") {
  json good = {{"interp_kind", "p4"}, {"coarse_points", 13}, {"coupling", "nondissipative"}};
  auto cfg = model_config_from_json(good);
  CHECK(cfg.kind == InterpKind::P4);
  json bad = good;
  bad["coarse_size"] = 13;  // unknown key
  CHECK_THROWS_AS(model_config_from_json(bad), std::invalid_argument);
  json badpair = good;
  badpair["sbp_order_left"] = 6;  // p4 kind demands order 4
  CHECK_THROWS_AS(assemble_model_operator(model_config_from_json(badpair)), std::invalid_argument);
  json badnest = good;
  badnest["coupling"] = {{"mode", "quadratic"}, {"omg", "abar"}};
  CHECK_THROWS_AS(model_config_from_json(badnest), std::invalid_argument);
}

TEST_CASE("quadratic coupling demands a symmetric positive definite omega") {
  auto cfg = small_cfg(InterpKind::P4, CouplingMode::Quadratic, 13, 4);
  Eigen::MatrixXd om(2, 2);
  om << 1, 0, 0, -1;  // not PD
  cfg.omega = om;
  CHECK_THROWS_AS(assemble_model_operator(cfg), std::invalid_argument);
}
