#pragma once
// Kronecker-product lifting of 1-D operators onto 2-D blocks. Unknowns are
// ordered x-major within a block: index = i*(Ny+1) + j, components outermost.

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "ratmat.hpp"
#include "sbp_operator.hpp"

namespace sbp {

using SpMat = Eigen::SparseMatrix<double>;

struct BlockGrid2D {
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  long Nx = 0, Ny = 0;  // point counts minus one
  int sbp_order = 2;

  double hx() const { return (x1 - x0) / Nx; }
  double hy() const { return (y1 - y0) / Ny; }
  long npts() const { return (Nx + 1) * (Ny + 1); }
  long index(long i, long j) const { return i * (Ny + 1) + j; }
  double x(long i) const { return x0 + i * hx(); }
  double y(long j) const { return y0 + j * hy(); }
};

enum class LiftedRole { Dx, Dy, Hx, Hy, HxInv, HyInv, E0x, ENx, E0y, ENy };

struct LiftedOperator {
  LiftedRole role;
  SpMat mat;
};

// dense / sparse / rational Kronecker products with the x-major layout
Eigen::MatrixXd kron(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B);
SpMat kron_sparse(const SpMat& A, const SpMat& B);
RatMat kron(const RatMat& A, const RatMat& B);

// lift a 1-D operator (or boundary selector) along an axis of the block
LiftedOperator lift(const SbpOperator1D& op, const BlockGrid2D& grid, char axis, LiftedRole role);
LiftedOperator lift_selector(const BlockGrid2D& grid, char axis, bool high_end);

// diagonal of the block norm Hx (x) Hy
Eigen::VectorXd block_norm_diagonal(const SbpOperator1D& opx, const SbpOperator1D& opy);

}  // namespace sbp
