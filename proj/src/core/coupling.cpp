#include "coupling.hpp"

namespace sbp {

SymmetricSplit symmetric_split(const Eigen::MatrixXd& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("symmetric_split: not square");
  double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-13 * scale)
    throw std::invalid_argument("symmetric_split: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (A + A.transpose()));
  Eigen::VectorXd lam = es.eigenvalues();
  Eigen::MatrixXd R = es.eigenvectors();
  SymmetricSplit s;
  s.A = A;
  s.plus = R * lam.cwiseMax(0.0).asDiagonal() * R.transpose();
  s.minus = R * lam.cwiseMin(0.0).asDiagonal() * R.transpose();
  s.abar = R * lam.cwiseAbs().asDiagonal() * R.transpose();
  return s;
}

CouplingMode coupling_mode_from_string(const std::string& s) {
  std::string t;
  for (char c : s) t += (char)std::tolower((unsigned char)c);
  if (t == "nondissipative" || t == "nondiss" || t == "nd") return CouplingMode::NonDissipative;
  if (t == "characteristic" || t == "char") return CouplingMode::Characteristic;
  if (t == "quadratic" || t == "quad") return CouplingMode::Quadratic;
  throw std::invalid_argument("unknown coupling mode: " + s);
}

std::string to_string(CouplingMode m) {
  switch (m) {
    case CouplingMode::NonDissipative: return "nondissipative";
    case CouplingMode::Characteristic: return "characteristic";
    case CouplingMode::Quadratic: return "quadratic";
  }
  return "?";
}

ViscousCouplingSpec ViscousCouplingSpec::make(const Eigen::MatrixXd& C11, const Eigen::MatrixXd& C12,
                                              const Eigen::MatrixXd& C21, const Eigen::MatrixXd& C22) {
  const long k = C11.rows();
  Eigen::MatrixXd C(2 * k, 2 * k);
  C << C11, C12, C21, C22;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (C + C.transpose()));
  if (es.eigenvalues().minCoeff() < -1e-12 * std::max(1.0, C.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("viscous coefficients violate parabolicity: x^T(C+C^T)x >= 0 fails");
  ViscousCouplingSpec v;
  v.C11 = C11;
  v.C12 = C12;
  v.C21 = C21;
  v.C22 = C22;
  v.sigma2 = 0.5 * Eigen::MatrixXd::Identity(k, k);
  v.sigma4 = v.sigma2;
  return v;
}

RatMat exact_interface_energy_block(const InterpolationPair& pr, CouplingMode mode,
                                    const std::vector<Rat>& diagA) {
  if (!pr.exact) throw std::invalid_argument("exact oracle needs a rational pair");
  const long k = (long)diagA.size();
  const long ml = pr.mc + 1, mr = pr.mf + 1;
  const long n1 = ml + mr;
  // per-component trace matrices in units of h_f (H_c = 2 w_c, H_f = w_f)
  RatMat HL(ml, ml), HR(mr, mr);
  for (long i = 0; i < ml; ++i) HL(i, i) = 2 * pr.wc[i];
  for (long i = 0; i < mr; ++i) HR(i, i) = pr.wf[i];
  if (pr.kind == InterpKind::IDENTITY)
    for (long i = 0; i < ml; ++i) HL(i, i) = pr.wc[i];
  RatMat HLF = HL * pr.f2c_q;           // H_L I_F2C
  RatMat HRC = HR * pr.c2f_q;           // H_R I_C2F
  RatMat out(k * n1, k * n1);
  for (long c = 0; c < k; ++c) {
    Rat a = diagA[c];
    Rat sigL, sigR;
    switch (mode) {
      case CouplingMode::NonDissipative:
        sigL = a / 2;
        sigR = -a / 2;
        break;
      case CouplingMode::Characteristic:
        sigL = a < 0 ? a : Rat(0);   // A^-
        sigR = -(a > 0 ? a : Rat(0));  // -A^+
        break;
      default:
        throw std::invalid_argument("exact oracle supports NonDissipative and Characteristic");
    }
    // diag blocks: (-a + 2 sigL) H_L ; (a + 2 sigR) H_R
    for (long i = 0; i < ml; ++i) out(c * n1 + i, c * n1 + i) = (-a + 2 * sigL) * HL(i, i);
    for (long i = 0; i < mr; ++i) out(c * n1 + ml + i, c * n1 + ml + i) = (a + 2 * sigR) * HR(i, i);
    // cross block: -sigL H_L F2C - sigR (H_R C2F)^T  on (u_N, v_0)
    for (long i = 0; i < ml; ++i)
      for (long j = 0; j < mr; ++j) {
        Rat v = -sigL * HLF(i, j) - sigR * HRC(j, i);
        out(c * n1 + i, c * n1 + ml + j) = v;
        out(c * n1 + ml + j, c * n1 + i) = v;
      }
  }
  return out;
}

}  // namespace sbp
