#pragma once
// Narrow-diagonal SBP first-derivative operators D1 = H^{-1} Q on equidistant
// grids, orders 2/4/6/8. Entries are exact rationals; boundary closures are
// derived once per order from the norm by exact elimination with a
// deterministic least-squares resolution of the free parameters.

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "ratmat.hpp"
#include "vendor_json.hpp"

namespace sbp {

struct DiagonalNorm {
  int order = 0;
  long npts = 0;   // N + 1
  double h = 0.0;
  std::vector<Rat> weights;  // size npts, dimensionless (H = h * diag(weights))

  double weight(long i) const { return rat_to_double(weights[i]); }
};

// Boundary closure of Q (skew part + B/2), rows 0..c-1 as sparse (col, value).
using ClosureRows = std::vector<std::map<long, Rat>>;

class SbpOperator1D {
public:
  // order in {2,4,6,8}; npts = N+1 grid points; h > 0 spacing.
  SbpOperator1D(int order, long npts, double h);

  int order() const { return order_; }
  long npts() const { return npts_; }
  double h() const { return h_; }
  const DiagonalNorm& norm() const { return norm_; }

  // exact Q entry (Q + Q^T = B by construction)
  Rat q(long i, long j) const;
  // D1 entry as double: q(i,j) / (h * w_i)
  double d1(long i, long j) const;

  long closure_rows() const { return closure_width_rows_; }
  long closure_cols() const { return closure_width_cols_; }
  const std::vector<double>& central_d1() const { return central_dbl_; }  // a_1..a_hw of D1
  // cached double closures of D1: top rows 0..c-1 over cols 0..w-1, and the
  // mirrored bottom rows npts-c..npts-1 over cols npts-w..npts-1
  const Eigen::MatrixXd& d1_top() const { return d1_top_; }
  const Eigen::MatrixXd& d1_bot() const { return d1_bot_; }

  // y = D1 x ; throws on length mismatch
  void apply_d1(std::span<const double> x, std::span<double> y) const;
  std::vector<double> apply_d1(const std::vector<double>& x) const;

  Eigen::MatrixXd d1_dense() const;
  Eigen::SparseMatrix<double> d1_sparse() const;
  Eigen::VectorXd norm_vector() const;      // diag of H (with h)
  Eigen::VectorXd norm_inverse_vector() const;

  nlohmann::ordered_json dump_json() const;

  static long min_points(int order);

private:
  int order_;
  long npts_;
  double h_;
  DiagonalNorm norm_;
  ClosureRows closure_;             // Q entries, rows 0..c-1, cols 0..w-1
  std::vector<Rat> central_;        // Q interior stencil a_1..a_hw (antisymmetric)
  long closure_width_rows_ = 0, closure_width_cols_ = 0;
  // flattened double closure of D1 plus central stencil for fast apply
  Eigen::MatrixXd d1_top_;          // c x w
  Eigen::MatrixXd d1_bot_;          // c x w (rows for indices npts-c..npts-1, cols npts-w..npts-1)
  std::vector<double> central_dbl_;
};

struct SbpVerification {
  double max_qqt_deviation = 0.0;    // max |(Q+Q^T) - B| as double
  bool qqt_exact = false;            // exact rational equality with B
  bool norm_positive = false;
  bool norm_symmetric = false;
  struct PolyRow { int k; double interior_err; double boundary_err; };
  std::vector<PolyRow> exactness;    // k = 0..order
  bool pass = false;
  nlohmann::ordered_json to_json() const;
};

SbpVerification verify_sbp_property(const SbpOperator1D& op);
// variant used by tests: verify with an injected Q perturbation at (i,j)
SbpVerification verify_sbp_property_perturbed(const SbpOperator1D& op, long i, long j, double delta);

// boundary norm weights per order (exact); order 8 uses the standard published
// weights validated by the interpolation accuracy cross-check.
const std::vector<Rat>& norm_boundary_weights(int order);
// central D1 stencil a_1..a_hw of h*D1
const std::vector<Rat>& central_stencil(int order);
// derived closure of Q for the given order (cached)
const ClosureRows& derived_closure(int order);

}  // namespace sbp
