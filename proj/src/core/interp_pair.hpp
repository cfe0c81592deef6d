#pragma once
// Block-interface interpolation operator pairs (I_F2C, I_C2F) on the 2:1
// nonconforming interface, instantiated from the published coefficient tables
// for arbitrary coarse size, plus their verification: the SBP-preserving
// relation H_f I_C2F = I_F2C^T H_c, Definition-4 accuracy, and the positive
// semi-definiteness side conditions.

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "ratmat.hpp"
#include "sbp_operator.hpp"
#include "vendor_json.hpp"

namespace sbp {

enum class InterpKind { P2, P4, P6, P8, P4_TO_2, P8_TO_4, NONSBP_P4, NONSBP_P6, IDENTITY };

InterpKind interp_kind_from_string(const std::string& s);
std::string to_string(InterpKind k);

struct InterpolationPair {
  InterpKind kind;
  int p = 0;              // declared accuracy order
  int q = 0, r = 0, s = 0;
  int order_coarse = 0, order_fine = 0;
  long mc = 0, mf = 0;    // mf = 2*mc (mf = mc for IDENTITY)
  double hc = 0, hf = 0;
  bool exact = false;     // rational tables
  bool sbp_preserving = true;
  int boundary_exactness = 0;  // highest k exact at boundary rows

  RatMat f2c_q, c2f_q;         // exact matrices (empty when !exact)
  Eigen::MatrixXd f2c, c2f;
  std::vector<Rat> wc, wf;     // norm weight patterns, full length

  Eigen::VectorXd coarse_norm() const;  // hc * wc
  Eigen::VectorXd fine_norm() const;    // hf * wf

  nlohmann::ordered_json dump_json() const;
};

// mc = coarse N (points mc+1); hc = coarse spacing. Throws on unsupported kind
// or a grid too small for the closures.
InterpolationPair load_interp_pair(InterpKind kind, long mc, double hc);
// conforming identity "interpolation" between two same-order blocks
InterpolationPair make_identity_pair(int order, long m, double h);

long interp_min_mc(InterpKind kind);

// assemble a 2:1 pair from raw upper-closure/interior coefficients (used by
// the construction procedure); I_C2F comes from the SBP-preserving relation.
InterpolationPair assemble_pair(InterpKind kind_label, int p, int order_c, int order_f, int q, int r,
                                int s, const RatMat& closure, const std::vector<Rat>& interior,
                                long mc, double hc);

struct VerificationReport {
  double max_residual = 0.0;
  bool exact_zero = false;  // rational-mode residual exactly zero
  struct KErr {
    int k;
    double interior;
    double boundary;
  };
  std::vector<KErr> per_k_errors;
  std::optional<double> psd_min_eigenvalue;
  bool pass = false;
  std::vector<std::string> notes;
  nlohmann::ordered_json to_json() const;
};

// max |H_f I_C2F - I_F2C^T H_c|; exact for rational kinds.
VerificationReport verify_sbp_preserving(const InterpolationPair& pair);
// Definition-4 accuracy: interior rows exact k <= p-1, boundary rows k <=
// boundary_exactness, tolerance 1e-12 (exact for rational kinds).
VerificationReport verify_accuracy(const InterpolationPair& pair);
// min eigenvalue of the symmetric parts of H_c(I - F2C C2F) and H_f(I - C2F F2C)
VerificationReport check_inter2(const InterpolationPair& pair);

// exact PSD status of the inter2 matrices for rational kinds: {coarse, fine},
// +1 PSD / -1 indefinite
std::pair<int, int> inter2_exact_status(const InterpolationPair& pair);

}  // namespace sbp
