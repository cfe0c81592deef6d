#pragma once
// Exact rational dense matrices and the small linear-algebra kit used for
// operator construction: RREF solves, affine solution spaces, exact
// least-squares restriction.

#include <gmpxx.h>
#include <stdexcept>
#include <string>
#include <vector>

namespace sbp {

using Rat = mpq_class;

Rat rat_from_string(const std::string& s);
std::string rat_to_string(const Rat& q);
inline double rat_to_double(const Rat& q) { return q.get_d(); }

class RatMat {
public:
  RatMat() = default;
  RatMat(long rows, long cols) : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}

  static RatMat identity(long n);

  long rows() const { return rows_; }
  long cols() const { return cols_; }
  Rat& operator()(long i, long j) { return a_[i * cols_ + j]; }
  const Rat& operator()(long i, long j) const { return a_[i * cols_ + j]; }

  RatMat transpose() const;
  RatMat operator*(const RatMat& o) const;
  RatMat operator+(const RatMat& o) const;
  RatMat operator-(const RatMat& o) const;

  bool operator==(const RatMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

private:
  long rows_ = 0, cols_ = 0;
  std::vector<Rat> a_;
};

using RatVec = std::vector<Rat>;

// Affine solution set {x0 + basis * t}. basis columns span the free directions.
struct AffineSpace {
  RatVec x0;
  RatMat basis;  // n x d; d == 0 means the solution is unique
  long dim() const { return basis.cols(); }
};

// Solve A x = b exactly. Throws std::runtime_error if inconsistent.
AffineSpace solve_linear_system(const RatMat& A, const RatVec& b);

// Restrict an affine space to the minimizers of |C x + d|^2 (exact normal
// equations). Ties resolved by the minimum-norm particular solution in t.
AffineSpace least_squares_restrict(const AffineSpace& sp, const RatMat& C, const RatVec& d);

// Symmetric-pivoting exact LDL^T test: returns +1 if the symmetric rational
// matrix is positive semi-definite, -1 if indefinite (has a negative direction).
int psd_status(const RatMat& sym);

}  // namespace sbp
