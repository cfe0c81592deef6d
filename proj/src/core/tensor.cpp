#include "tensor.hpp"

namespace sbp {

Eigen::MatrixXd kron(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  Eigen::MatrixXd K(A.rows() * B.rows(), A.cols() * B.cols());
  for (long i = 0; i < A.rows(); ++i)
    for (long j = 0; j < A.cols(); ++j) K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return K;
}

SpMat kron_sparse(const SpMat& A, const SpMat& B) {
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve((size_t)A.nonZeros() * B.nonZeros());
  for (int ka = 0; ka < A.outerSize(); ++ka)
    for (SpMat::InnerIterator ia(A, ka); ia; ++ia)
      for (int kb = 0; kb < B.outerSize(); ++kb)
        for (SpMat::InnerIterator ib(B, kb); ib; ++ib)
          trips.emplace_back(ia.row() * B.rows() + ib.row(), ia.col() * B.cols() + ib.col(),
                             ia.value() * ib.value());
  SpMat K(A.rows() * B.rows(), A.cols() * B.cols());
  K.setFromTriplets(trips.begin(), trips.end());
  return K;
}

RatMat kron(const RatMat& A, const RatMat& B) {
  RatMat K(A.rows() * B.rows(), A.cols() * B.cols());
  for (long i = 0; i < A.rows(); ++i)
    for (long j = 0; j < A.cols(); ++j) {
      if (A(i, j) == 0) continue;
      for (long p = 0; p < B.rows(); ++p)
        for (long q = 0; q < B.cols(); ++q)
          if (B(p, q) != 0) K(i * B.rows() + p, j * B.cols() + q) = A(i, j) * B(p, q);
    }
  return K;
}

namespace {

SpMat speye(long n) {
  SpMat I(n, n);
  I.setIdentity();
  return I;
}

SpMat sp_diag(const Eigen::VectorXd& d) {
  SpMat D(d.size(), d.size());
  for (long i = 0; i < d.size(); ++i) D.insert(i, i) = d(i);
  D.makeCompressed();
  return D;
}

}  // namespace

LiftedOperator lift(const SbpOperator1D& op, const BlockGrid2D& grid, char axis, LiftedRole role) {
  const long nx = grid.Nx + 1, ny = grid.Ny + 1;
  if (axis == 'x' && op.npts() != nx) throw std::invalid_argument("lift: x operator size mismatch");
  if (axis == 'y' && op.npts() != ny) throw std::invalid_argument("lift: y operator size mismatch");
  SpMat core;
  switch (role) {
    case LiftedRole::Dx:
    case LiftedRole::Dy: core = op.d1_sparse(); break;
    case LiftedRole::Hx:
    case LiftedRole::Hy: core = sp_diag(op.norm_vector()); break;
    case LiftedRole::HxInv:
    case LiftedRole::HyInv: core = sp_diag(op.norm_inverse_vector()); break;
    default: throw std::invalid_argument("lift: selector roles use lift_selector");
  }
  LiftedOperator out;
  out.role = role;
  out.mat = (axis == 'x') ? kron_sparse(core, speye(ny)) : kron_sparse(speye(nx), core);
  return out;
}

LiftedOperator lift_selector(const BlockGrid2D& grid, char axis, bool high_end) {
  const long nx = grid.Nx + 1, ny = grid.Ny + 1;
  long n = (axis == 'x') ? nx : ny;
  SpMat e(n, n);
  long idx = high_end ? n - 1 : 0;
  e.insert(idx, idx) = 1.0;
  e.makeCompressed();
  LiftedOperator out;
  out.role = axis == 'x' ? (high_end ? LiftedRole::ENx : LiftedRole::E0x)
                         : (high_end ? LiftedRole::ENy : LiftedRole::E0y);
  out.mat = (axis == 'x') ? kron_sparse(e, speye(ny)) : kron_sparse(speye(nx), e);
  return out;
}

Eigen::VectorXd block_norm_diagonal(const SbpOperator1D& opx, const SbpOperator1D& opy) {
  Eigen::VectorXd hx = opx.norm_vector(), hy = opy.norm_vector();
  Eigen::VectorXd d(hx.size() * hy.size());
  for (long i = 0; i < hx.size(); ++i)
    for (long j = 0; j < hy.size(); ++j) d(i * hy.size() + j) = hx(i) * hy(j);
  return d;
}

}  // namespace sbp
