#pragma once
// Two-block semi-discrete model problems: assembly of the global operator L
// and norm M for du/dt = L u, eigenvalue spectra, stability classification,
// and the energy-matrix oracle S = M L + L^T M.

#include <complex>
#include <optional>

#include "coupling.hpp"
#include "tensor.hpp"
#include "vendor_json.hpp"

namespace sbp {

struct ParabolicSpec {
  Eigen::MatrixXd C11, C12, C21, C22;  // k x k
  Eigen::MatrixXd sigma2, sigma4;      // defaults I/2
};

struct ModelConfig {
  int order_left = 4;
  int order_right = 4;
  InterpKind kind = InterpKind::P4;
  CouplingMode mode = CouplingMode::NonDissipative;
  long coarse_points = 15;  // points per side of the coarse block
  double x_left = 0.0, x_mid = 1.0, x_right = 2.0, y_lo = 0.0, y_hi = 1.0;
  int k = 2;
  Eigen::MatrixXd A, B;                  // symmetric k x k; default diag(1,-1)
  std::optional<Eigen::MatrixXd> omega;  // Quadratic coupling; default Abar
  bool coarse_on_right = false;          // swap which block carries the coarse grid
  OuterBcType outer_bc = OuterBcType::ComponentSwap;
  bool include_outer = true;
  std::optional<ParabolicSpec> parabolic;
  double tolerance = 1e-10;

  static ModelConfig defaults();
  void validate() const;  // order/kind pairing, symmetry, sizes
};

// strict-schema JSON parsing (unknown keys rejected)
ModelConfig model_config_from_json(const json& j);

struct SemiDiscreteSystem {
  Eigen::MatrixXd L;
  Eigen::VectorXd M;   // diagonal of the global norm
  double h_fine = 0;   // fine-block spacing h_R used for eigenvalue scaling
  long n = 0;
  long n_left = 0;     // DOFs in the left block
  std::vector<long> iface_left, iface_right;  // interface DOF indices (all components)
};

SemiDiscreteSystem assemble_model_operator(const ModelConfig& cfg);

enum class Verdict { Stable, Unstable };
inline const char* to_string(Verdict v) { return v == Verdict::Stable ? "stable" : "unstable"; }

struct SpectrumReport {
  std::vector<std::complex<double>> eigenvalues;  // scaled by h_fine, sorted by Re desc
  double max_real_scaled = 0;
  Verdict verdict = Verdict::Stable;
  double tolerance = 1e-10;
  nlohmann::ordered_json summary_json() const;
  std::string csv() const;  // columns re_scaled, im_scaled
};

SpectrumReport compute_spectrum(const SemiDiscreteSystem& sys, double tolerance);
Verdict classify_stability(double max_real_scaled, double tolerance);

struct EnergyCheck {
  double max_eig_support = 0;          // max eigenvalue of S on its support
  double max_interface_entry = 0;      // max |S| over interface rows/cols
  long support_size = 0;
  bool negative_semidefinite = false;  // max_eig_support <= tol
};

EnergyCheck energy_matrix_check(const SemiDiscreteSystem& sys, double tol = 1e-11);

}  // namespace sbp
