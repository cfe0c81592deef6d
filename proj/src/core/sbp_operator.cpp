#include "sbp_operator.hpp"

#include <mutex>
#include <sstream>

namespace sbp {

namespace {

Rat R(long n, long d = 1) {
  Rat q(n, d);
  q.canonicalize();
  return q;
}

long closure_row_count(int order) { return order == 2 ? 1 : order; }
int half_width(int order) { return order / 2; }
// standard sparsity: closure row i spans columns 0..max(c-1, i+hw)
long row_span(int order, long i) {
  long c = closure_row_count(order);
  return std::max(c - 1, i + half_width(order));
}

}  // namespace

const std::vector<Rat>& norm_boundary_weights(int order) {
  static const std::vector<Rat> w2 = {R(1, 2)};
  static const std::vector<Rat> w4 = {R(17, 48), R(59, 48), R(43, 48), R(49, 48)};
  static const std::vector<Rat> w6 = {R(13649, 43200), R(12013, 8640), R(2711, 4320),
                                      R(5359, 4320),   R(7877, 8640),  R(43801, 43200)};
  static const std::vector<Rat> w8 = {R(1498139, 5080320), R(1107307, 725760), R(20761, 80640),
                                      R(1304999, 725760),  R(299527, 725760),  R(103097, 80640),
                                      R(670091, 725760),   R(5127739, 5080320)};
  switch (order) {
    case 2: return w2;
    case 4: return w4;
    case 6: return w6;
    case 8: return w8;
  }
  throw std::invalid_argument("unsupported SBP order " + std::to_string(order));
}

const std::vector<Rat>& central_stencil(int order) {
  static const std::vector<Rat> c2 = {R(1, 2)};
  static const std::vector<Rat> c4 = {R(2, 3), R(-1, 12)};
  static const std::vector<Rat> c6 = {R(3, 4), R(-3, 20), R(1, 60)};
  static const std::vector<Rat> c8 = {R(4, 5), R(-1, 5), R(4, 105), R(-1, 280)};
  switch (order) {
    case 2: return c2;
    case 4: return c4;
    case 6: return c6;
    case 8: return c8;
  }
  throw std::invalid_argument("unsupported SBP order " + std::to_string(order));
}

namespace {

// Solve for the closure of Q: skew unknowns under the standard sparsity,
// accuracy of D1 rows 0..c-1 for x^k, k = 0..order/2, free parameters fixed by
// sequential exact least squares on the k = order/2+1, ... row residuals.
ClosureRows derive_closure_impl(int order) {
  const long c = closure_row_count(order);
  const int hw = half_width(order);
  const auto& cen = central_stencil(order);
  const auto& wb = norm_boundary_weights(order);
  const long wmax = row_span(order, c - 1) + 1;

  // unknown skew entries (i,j), i<j, within the sparsity, not forced by the
  // interior stencil reaching back into the closure block
  std::map<std::pair<long, long>, long> index;  // (i,j) -> unknown id
  std::map<std::pair<long, long>, Rat> forced;
  for (long i = 0; i < c; ++i)
    for (long j = i + 1; j <= row_span(order, i); ++j) {
      if (j >= c && j - i <= hw)
        forced[{i, j}] = cen[j - i - 1];
      else
        index[{i, j}] = (long)index.size();
    }
  const long nunk = (long)index.size();

  // Q(i,j) as an affine form: coeff * x[unknown] + constant
  struct Entry {
    long unk = -1;
    Rat coeff = 0;
    Rat cst = 0;
  };
  auto entry = [&](long i, long j) -> Entry {
    Entry e;
    if (i == j) {
      if (i == 0) e.cst = R(-1, 2);
      return e;
    }
    long a = std::min(i, j), b = std::max(i, j);
    Rat sign = (i < j) ? 1 : -1;
    auto f = forced.find({a, b});
    if (f != forced.end()) {
      e.cst = sign * f->second;
      return e;
    }
    auto u = index.find({a, b});
    if (u != index.end()) {
      e.unk = u->second;
      e.coeff = sign;
    }
    return e;
  };

  auto residual_system = [&](int k, RatMat& C, RatVec& d) {
    // rows: sum_j Q(i,j) j^k - w_i * k * i^(k-1)
    C = RatMat(c, nunk);
    d.assign(c, Rat(0));
    for (long i = 0; i < c; ++i) {
      Rat rhs = 0;
      if (k >= 1) {
        Rat ipow = 1;
        for (int t = 0; t < k - 1; ++t) ipow *= i;
        rhs = wb[i] * k * ipow;
      }
      Rat acc = -rhs;
      for (long j = 0; j < wmax; ++j) {
        Entry e = entry(i, j);
        if (e.unk < 0 && e.cst == 0) continue;
        Rat jpow = 1;
        for (int t = 0; t < k; ++t) jpow *= j;
        if (e.unk >= 0) C(i, e.unk) += e.coeff * jpow;
        acc += e.cst * jpow;
      }
      d[i] = acc;
    }
  };

  // equality constraints k = 0..order/2
  std::vector<RatMat> Cs;
  std::vector<RatVec> ds;
  for (int k = 0; k <= order / 2; ++k) {
    RatMat C;
    RatVec d;
    residual_system(k, C, d);
    Cs.push_back(C);
    ds.push_back(d);
  }
  RatMat A((long)Cs.size() * c, nunk);
  RatVec b((long)Cs.size() * c, Rat(0));
  for (size_t s = 0; s < Cs.size(); ++s)
    for (long i = 0; i < c; ++i) {
      for (long j = 0; j < nunk; ++j) A((long)s * c + i, j) = Cs[s](i, j);
      b[(long)s * c + i] = -ds[s][i];
    }
  // solve_linear_system expects A x = b with residual C x + d: A x = -d
  AffineSpace sp = solve_linear_system(A, b);
  int k = order / 2 + 1;
  while (sp.dim() > 0 && k <= order + 6) {
    RatMat C;
    RatVec d;
    residual_system(k, C, d);
    sp = least_squares_restrict(sp, C, d);
    ++k;
  }
  if (sp.dim() != 0) throw std::runtime_error("closure derivation: free parameters remain");

  ClosureRows rows(c);
  for (long i = 0; i < c; ++i)
    for (long j = 0; j < wmax; ++j) {
      Entry e = entry(i, j);
      Rat v = e.cst;
      if (e.unk >= 0) v += e.coeff * sp.x0[e.unk];
      if (v != 0) rows[i][j] = v;
    }
  return rows;
}

}  // namespace

const ClosureRows& derived_closure(int order) {
  static std::map<int, ClosureRows> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, derive_closure_impl(order)).first;
  return it->second;
}

long SbpOperator1D::min_points(int order) {
  long c = closure_row_count(order);
  long w = row_span(order, c - 1) + 1;
  return 2 * w;  // closures (including skew completions) must not overlap
}

SbpOperator1D::SbpOperator1D(int order, long npts, double h) : order_(order), npts_(npts), h_(h) {
  if (order != 2 && order != 4 && order != 6 && order != 8)
    throw std::invalid_argument("unsupported SBP order " + std::to_string(order));
  if (h <= 0) throw std::invalid_argument("grid spacing must be positive");
  if (npts < min_points(order))
    throw std::invalid_argument("grid too small: order " + std::to_string(order) + " needs at least " +
                                std::to_string(min_points(order)) + " points, got " + std::to_string(npts));
  const auto& wb = norm_boundary_weights(order);
  norm_.order = order;
  norm_.npts = npts;
  norm_.h = h;
  norm_.weights.assign(npts, Rat(1));
  for (size_t i = 0; i < wb.size(); ++i) {
    norm_.weights[i] = wb[i];
    norm_.weights[npts - 1 - i] = wb[i];
  }
  closure_ = derived_closure(order);
  central_ = central_stencil(order);
  closure_width_rows_ = (long)closure_.size();
  closure_width_cols_ = row_span(order, closure_width_rows_ - 1) + 1;

  const long c = closure_width_rows_, w = closure_width_cols_;
  d1_top_ = Eigen::MatrixXd::Zero(c, w);
  d1_bot_ = Eigen::MatrixXd::Zero(c, w);
  for (long i = 0; i < c; ++i)
    for (auto& [j, v] : closure_[i])
      d1_top_(i, j) = rat_to_double(v / norm_.weights[i]) / h_;
  // bottom rows: Q[n-1-i][n-1-j] = -Q[i][j], w_{n-1-i} = w_i
  for (long i = 0; i < c; ++i)
    for (auto& [j, v] : closure_[i])
      d1_bot_(c - 1 - i, w - 1 - j) = -rat_to_double(v / norm_.weights[i]) / h_;
  central_dbl_.resize(central_.size());
  for (size_t m = 0; m < central_.size(); ++m) central_dbl_[m] = rat_to_double(central_[m]) / h_;
}

Rat SbpOperator1D::q(long i, long j) const {
  const long n = npts_, c = closure_width_rows_, w = closure_width_cols_;
  if (i < 0 || j < 0 || i >= n || j >= n) throw std::out_of_range("q index");
  if (i == 0 && j == 0) return R(-1, 2);
  if (i == n - 1 && j == n - 1) return R(1, 2);
  // top closure block and its skew completion
  if (i < c && j < w) {
    auto it = closure_[i].find(j);
    return it == closure_[i].end() ? Rat(0) : it->second;
  }
  if (j < c && i < w) {
    auto it = closure_[j].find(i);
    return it == closure_[j].end() ? Rat(0) : -it->second;
  }
  // mirrored bottom block: Q[i][j] = -Q[n-1-i][n-1-j] within the block
  long im = n - 1 - i, jm = n - 1 - j;
  if (im < c && jm < w) {
    auto it = closure_[im].find(jm);
    return it == closure_[im].end() ? Rat(0) : -it->second;
  }
  if (jm < c && im < w) {
    auto it = closure_[jm].find(im);
    return it == closure_[jm].end() ? Rat(0) : it->second;
  }
  // central
  long dlt = j - i;
  if (dlt != 0 && std::abs(dlt) <= half_width(order_)) {
    Rat v = central_[std::abs(dlt) - 1];
    return dlt > 0 ? v : -v;
  }
  return Rat(0);
}

double SbpOperator1D::d1(long i, long j) const {
  return rat_to_double(q(i, j) / norm_.weights[i]) / h_;
}

void SbpOperator1D::apply_d1(std::span<const double> x, std::span<double> y) const {
  const long n = npts_;
  if ((long)x.size() != n || (long)y.size() != n)
    throw std::invalid_argument("apply_d1: length mismatch (expected " + std::to_string(n) + ")");
  const long c = closure_width_rows_, w = closure_width_cols_;
  const int hw = half_width(order_);
  for (long i = 0; i < c; ++i) {
    double s1 = 0, s2 = 0;
    for (long j = 0; j < w; ++j) {
      s1 += d1_top_(i, j) * x[j];
      s2 += d1_bot_(i, j) * x[n - w + j];
    }
    y[i] = s1;
    y[n - c + i] = s2;
  }
  for (long i = c; i < n - c; ++i) {
    double s = 0;
    for (int m = 1; m <= hw; ++m) s += central_dbl_[m - 1] * (x[i + m] - x[i - m]);
    y[i] = s;
  }
}

std::vector<double> SbpOperator1D::apply_d1(const std::vector<double>& x) const {
  std::vector<double> y(x.size());
  apply_d1(std::span<const double>(x), std::span<double>(y));
  return y;
}

Eigen::MatrixXd SbpOperator1D::d1_dense() const {
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(npts_, npts_);
  const long c = closure_width_rows_, w = closure_width_cols_;
  const int hw = half_width(order_);
  for (long i = 0; i < c; ++i)
    for (long j = 0; j < w; ++j) {
      D(i, j) = d1_top_(i, j);
      D(npts_ - c + i, npts_ - w + j) = d1_bot_(i, j);
    }
  for (long i = c; i < npts_ - c; ++i)
    for (int m = 1; m <= hw; ++m) {
      D(i, i + m) = central_dbl_[m - 1];
      D(i, i - m) = -central_dbl_[m - 1];
    }
  return D;
}

Eigen::SparseMatrix<double> SbpOperator1D::d1_sparse() const {
  std::vector<Eigen::Triplet<double>> trips;
  const long c = closure_width_rows_, w = closure_width_cols_;
  const int hw = half_width(order_);
  for (long i = 0; i < c; ++i)
    for (long j = 0; j < w; ++j) {
      if (d1_top_(i, j) != 0) trips.emplace_back(i, j, d1_top_(i, j));
      if (d1_bot_(i, j) != 0) trips.emplace_back(npts_ - c + i, npts_ - w + j, d1_bot_(i, j));
    }
  for (long i = c; i < npts_ - c; ++i)
    for (int m = 1; m <= hw; ++m) {
      trips.emplace_back(i, i + m, central_dbl_[m - 1]);
      trips.emplace_back(i, i - m, -central_dbl_[m - 1]);
    }
  Eigen::SparseMatrix<double> D(npts_, npts_);
  D.setFromTriplets(trips.begin(), trips.end());
  return D;
}

Eigen::VectorXd SbpOperator1D::norm_vector() const {
  Eigen::VectorXd v(npts_);
  for (long i = 0; i < npts_; ++i) v(i) = h_ * rat_to_double(norm_.weights[i]);
  return v;
}

Eigen::VectorXd SbpOperator1D::norm_inverse_vector() const {
  Eigen::VectorXd v(npts_);
  for (long i = 0; i < npts_; ++i) v(i) = 1.0 / (h_ * rat_to_double(norm_.weights[i]));
  return v;
}

nlohmann::ordered_json SbpOperator1D::dump_json() const {
  ordered_json j;
  j["order"] = order_;
  j["N"] = npts_ - 1;
  j["h"] = h_;
  auto& nw = j["norm_weights"] = ordered_json::array();
  for (auto& w : norm_.weights) nw.push_back(rat_to_string(w));
  auto& Q = j["Q"] = ordered_json::array();
  for (long i = 0; i < npts_; ++i) {
    ordered_json row = ordered_json::array();
    for (long jj = 0; jj < npts_; ++jj) row.push_back(rat_to_string(q(i, jj)));
    Q.push_back(std::move(row));
  }
  return j;
}

namespace {

SbpVerification verify_impl(const SbpOperator1D& op, long pi, long pj, double delta) {
  SbpVerification v;
  const long n = op.npts();
  // Q + Q^T = B
  v.qqt_exact = (delta == 0.0);
  double maxdev = 0.0;
  for (long i = 0; i < n; ++i)
    for (long j = i; j < n; ++j) {
      Rat s = op.q(i, j) + op.q(j, i);
      Rat b = 0;
      if (i == 0 && j == 0) b = Rat(-1);
      if (i == n - 1 && j == n - 1) b = Rat(1);
      if (s != b) v.qqt_exact = false;
      double dev = std::abs(rat_to_double(s - b));
      if (delta != 0.0 && ((i == pi && j == pj) || (i == pj && j == pi)))
        dev = std::abs(rat_to_double(s - b) + delta * ((i == j) ? 2.0 : 1.0));
      maxdev = std::max(maxdev, dev);
    }
  v.max_qqt_deviation = maxdev;
  // norm properties
  v.norm_positive = true;
  v.norm_symmetric = true;
  const auto& wts = op.norm().weights;
  for (long i = 0; i < n; ++i) {
    if (wts[i] <= 0) v.norm_positive = false;
    if (wts[i] != wts[n - 1 - i]) v.norm_symmetric = false;
  }
  // polynomial exactness table, k = 0..order (x in [0,1])
  std::vector<double> x(n), xk(n), y(n);
  for (long i = 0; i < n; ++i) x[i] = i * op.h();
  for (int k = 0; k <= op.order(); ++k) {
    for (long i = 0; i < n; ++i) xk[i] = std::pow(x[i], k);
    op.apply_d1(xk, y);
    double ierr = 0, berr = 0;
    for (long i = 0; i < n; ++i) {
      double exact = (k == 0) ? 0.0 : k * std::pow(x[i], k - 1);
      double e = std::abs(y[i] - exact);
      bool bnd = (i < op.closure_rows()) || (i >= n - op.closure_rows());
      (bnd ? berr : ierr) = std::max(bnd ? berr : ierr, e);
    }
    v.exactness.push_back({k, ierr, berr});
  }
  const double htol = 1e-11 / op.h();  // scale-aware tolerance for derivative values
  bool poly_ok = true;
  for (auto& row : v.exactness) {
    if (row.k <= op.order() && row.interior_err > htol) poly_ok = false;
    if (row.k <= op.order() / 2 && row.boundary_err > htol) poly_ok = false;
  }
  v.pass = v.qqt_exact && v.norm_positive && v.norm_symmetric && poly_ok && maxdev == 0.0;
  return v;
}

}  // namespace

SbpVerification verify_sbp_property(const SbpOperator1D& op) { return verify_impl(op, -1, -1, 0.0); }

SbpVerification verify_sbp_property_perturbed(const SbpOperator1D& op, long i, long j, double delta) {
  return verify_impl(op, i, j, delta);
}

nlohmann::ordered_json SbpVerification::to_json() const {
  ordered_json j;
  j["max_qqt_deviation"] = max_qqt_deviation;
  j["qqt_exact"] = qqt_exact;
  j["norm_positive"] = norm_positive;
  j["norm_symmetric"] = norm_symmetric;
  auto& t = j["polynomial_exactness"] = ordered_json::array();
  for (auto& r : exactness)
    t.push_back({{"k", r.k}, {"interior_err", r.interior_err}, {"boundary_err", r.boundary_err}});
  j["pass"] = pass;
  return j;
}

}  // namespace sbp
