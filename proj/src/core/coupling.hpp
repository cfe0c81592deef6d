#pragma once
// SAT penalty assembly: interface couplings (non-dissipative, characteristic,
// quadratic), outer-boundary characteristic penalties, and the viscous
// interface penalties of the parabolic extension.

#include <Eigen/Dense>
#include <optional>

#include "interp_pair.hpp"
#include "ratmat.hpp"

namespace sbp {

struct SymmetricSplit {
  Eigen::MatrixXd A, plus, minus, abar;
};

// eigen-decomposition split A = A+ + A-, Abar = A+ - A-; throws on
// non-symmetric input.
SymmetricSplit symmetric_split(const Eigen::MatrixXd& A);

enum class CouplingMode { NonDissipative, Characteristic, Quadratic };
CouplingMode coupling_mode_from_string(const std::string& s);
std::string to_string(CouplingMode m);

struct CouplingSpec {
  CouplingMode mode = CouplingMode::NonDissipative;
  Eigen::MatrixXd A;                     // symmetric k x k
  std::optional<Eigen::MatrixXd> omega;  // Quadratic mode; default Abar
};

struct ViscousCouplingSpec {
  Eigen::MatrixXd C11, C12, C21, C22;    // k x k viscous coefficient blocks
  Eigen::MatrixXd sigma2, sigma4;        // symmetric free matrices, default I/2

  // checks the parabolicity condition x^T(C + C^T)x >= 0 for the stacked C
  static ViscousCouplingSpec make(const Eigen::MatrixXd& C11, const Eigen::MatrixXd& C12,
                                  const Eigen::MatrixXd& C21, const Eigen::MatrixXd& C22);
};

enum class OuterBcType { CharacteristicData, ComponentSwap };

// Exact rational oracle for the interface block of S = M L + L^T M on the
// stacked traces [u_N ; v_0] (per component, A diagonal with rational entries).
// Returns the symmetric block; Lemma 1 predicts exactly zero, Lemma 2 gives
// -Abar (x) X.
RatMat exact_interface_energy_block(const InterpolationPair& pair, CouplingMode mode,
                                    const std::vector<Rat>& diagA);

}  // namespace sbp
