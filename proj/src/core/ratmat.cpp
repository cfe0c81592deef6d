#include "ratmat.hpp"

namespace sbp {

Rat rat_from_string(const std::string& s) {
  Rat q;
  if (q.set_str(s, 10) != 0) throw std::runtime_error("bad rational literal: " + s);
  q.canonicalize();
  return q;
}

std::string rat_to_string(const Rat& q) { return q.get_str(); }

RatMat RatMat::identity(long n) {
  RatMat m(n, n);
  for (long i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMat RatMat::transpose() const {
  RatMat t(cols_, rows_);
  for (long i = 0; i < rows_; ++i)
    for (long j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RatMat RatMat::operator*(const RatMat& o) const {
  if (cols_ != o.rows_) throw std::runtime_error("RatMat: dimension mismatch in multiply");
  RatMat r(rows_, o.cols_);
  for (long i = 0; i < rows_; ++i)
    for (long k = 0; k < cols_; ++k) {
      const Rat& v = (*this)(i, k);
      if (v == 0) continue;
      for (long j = 0; j < o.cols_; ++j)
        if (o(k, j) != 0) r(i, j) += v * o(k, j);
    }
  return r;
}

RatMat RatMat::operator+(const RatMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::runtime_error("RatMat: shape mismatch");
  RatMat r(rows_, cols_);
  for (long i = 0; i < rows_ * cols_; ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

RatMat RatMat::operator-(const RatMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::runtime_error("RatMat: shape mismatch");
  RatMat r(rows_, cols_);
  for (long i = 0; i < rows_ * cols_; ++i) r.a_[i] = a_[i] - o.a_[i];
  return r;
}

namespace {

// Row-reduce [A|b] in place; returns pivot column of each pivot row.
std::vector<long> rref(RatMat& M) {
  const long rows = M.rows(), cols = M.cols();
  std::vector<long> pivots;
  long r = 0;
  for (long c = 0; c < cols && r < rows; ++c) {
    long p = -1;
    for (long i = r; i < rows; ++i)
      if (M(i, c) != 0) { p = i; break; }
    if (p < 0) continue;
    if (p != r)
      for (long j = 0; j < cols; ++j) std::swap(M(p, j), M(r, j));
    Rat inv = 1 / M(r, c);
    for (long j = c; j < cols; ++j) M(r, j) *= inv;
    for (long i = 0; i < rows; ++i) {
      if (i == r || M(i, c) == 0) continue;
      Rat f = M(i, c);
      for (long j = c; j < cols; ++j) M(i, j) -= f * M(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

AffineSpace solve_linear_system(const RatMat& A, const RatVec& b) {
  const long rows = A.rows(), n = A.cols();
  RatMat M(rows, n + 1);
  for (long i = 0; i < rows; ++i) {
    for (long j = 0; j < n; ++j) M(i, j) = A(i, j);
    M(i, n) = b[i];
  }
  auto pivots = rref(M);
  if (!pivots.empty() && pivots.back() == n)
    throw std::runtime_error("linear system is inconsistent");
  std::vector<bool> is_pivot(n, false);
  for (long c : pivots) is_pivot[c] = true;
  std::vector<long> free_cols;
  for (long j = 0; j < n; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);

  AffineSpace sp;
  sp.x0.assign(n, Rat(0));
  for (size_t r = 0; r < pivots.size(); ++r) sp.x0[pivots[r]] = M(r, n);
  sp.basis = RatMat(n, (long)free_cols.size());
  for (size_t f = 0; f < free_cols.size(); ++f) {
    sp.basis(free_cols[f], (long)f) = 1;
    for (size_t r = 0; r < pivots.size(); ++r)
      sp.basis(pivots[r], (long)f) = -M(r, free_cols[f]);
  }
  return sp;
}

AffineSpace least_squares_restrict(const AffineSpace& sp, const RatMat& C, const RatVec& d) {
  const long m = C.rows();
  const long dim = sp.dim();
  if (dim == 0) return sp;
  // residual(t) = C(x0 + B t) + d = (C B) t + (C x0 + d)
  RatMat CB = C * sp.basis;
  RatVec r0(m, Rat(0));
  for (long i = 0; i < m; ++i) {
    Rat s = d[i];
    for (long j = 0; j < C.cols(); ++j)
      if (C(i, j) != 0) s += C(i, j) * sp.x0[j];
    r0[i] = s;
  }
  RatMat G = CB.transpose() * CB;
  RatVec rhs(dim, Rat(0));
  for (long i = 0; i < dim; ++i) {
    Rat s = 0;
    for (long k = 0; k < m; ++k)
      if (CB(k, i) != 0) s -= CB(k, i) * r0[k];
    rhs[i] = s;
  }
  AffineSpace tsol = solve_linear_system(G, rhs);  // always consistent (normal equations)
  AffineSpace out;
  out.x0.assign(sp.x0.begin(), sp.x0.end());
  for (long i = 0; i < sp.basis.rows(); ++i)
    for (long j = 0; j < dim; ++j)
      if (sp.basis(i, j) != 0) out.x0[i] += sp.basis(i, j) * tsol.x0[j];
  out.basis = sp.basis * tsol.basis;
  return out;
}

int psd_status(const RatMat& sym) {
  // LDL^T with symmetric (diagonal) pivoting; PSD iff all pivots >= 0 and any
  // zero-pivot row/column is entirely zero at its elimination step.
  RatMat A = sym;
  const long n = A.rows();
  std::vector<long> perm(n);
  for (long i = 0; i < n; ++i) perm[i] = i;
  for (long k = 0; k < n; ++k) {
    long p = k;
    for (long i = k; i < n; ++i)
      if (cmp(abs(A(i, i)), abs(A(p, p))) > 0) p = i;
    if (p != k) {
      for (long j = 0; j < n; ++j) std::swap(A(p, j), A(k, j));
      for (long i = 0; i < n; ++i) std::swap(A(i, p), A(i, k));
    }
    Rat piv = A(k, k);
    if (piv < 0) return -1;
    if (piv == 0) {
      for (long i = k; i < n; ++i)
        for (long j = k; j < n; ++j)
          if (A(i, j) != 0) return -1;  // zero diagonal with nonzero block
      return +1;
    }
    for (long i = k + 1; i < n; ++i) {
      if (A(i, k) == 0) continue;
      Rat f = A(i, k) / piv;
      for (long j = k; j < n; ++j) A(i, j) -= f * A(k, j);
    }
    for (long i = k + 1; i < n; ++i) A(k, i) = 0;
  }
  return +1;
}

}  // namespace sbp
