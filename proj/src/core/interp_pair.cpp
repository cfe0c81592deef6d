#include "interp_pair.hpp"

#include <algorithm>
#include <cmath>

#include "interp_tables.hpp"

namespace sbp {

namespace {

struct KindInfo {
  int p, q, r, s, order_c, order_f;
  bool exact;
  bool nonsbp;
  const char* const* closure;
  const char* const* interior;
};

KindInfo kind_info(InterpKind k) {
  using namespace tables;
  switch (k) {
    case InterpKind::P2:        return {2, 1, 3, 1, 2, 2, true, false, kp2_closure, kp2_interior};
    case InterpKind::P4:        return {4, 3, 11, 2, 4, 4, true, false, kp4_closure, kp4_interior};
    case InterpKind::P6:        return {6, 3, 17, 3, 6, 6, true, false, kp6_closure, kp6_interior};
    case InterpKind::P4_TO_2:   return {2, 3, 11, 2, 4, 2, true, false, kp4_to_2_closure, kp4_to_2_interior};
    case InterpKind::P8:        return {8, 4, 23, 4, 8, 8, false, false, kp8_closure, kp8_interior};
    case InterpKind::P8_TO_4:   return {4, 4, 23, 4, 8, 4, false, false, kp8_to_4_closure, kp8_to_4_interior};
    case InterpKind::NONSBP_P4: return {4, 3, 11, 2, 4, 4, true, true, kp4_closure, kp4_interior};
    case InterpKind::NONSBP_P6: return {6, 3, 17, 3, 6, 6, true, true, kp6_closure, kp6_interior};
    default: throw std::invalid_argument("kind_info: unsupported kind");
  }
}

std::vector<Rat> norm_pattern(int order, long npts) {
  const auto& wb = norm_boundary_weights(order);
  if (npts < 2 * (long)wb.size())
    throw std::invalid_argument("grid too small for the order-" + std::to_string(order) + " norm");
  std::vector<Rat> w(npts, Rat(1));
  for (size_t i = 0; i < wb.size(); ++i) {
    w[i] = wb[i];
    w[npts - 1 - i] = wb[i];
  }
  return w;
}

Rat parse_rat_or_decimal(const std::string& s, bool* is_decimal = nullptr) {
  if (s.find('.') == std::string::npos) {
    if (is_decimal) *is_decimal = false;
    return rat_from_string(s);
  }
  if (is_decimal) *is_decimal = true;
  // exact decimal -> rational
  std::string t = s;
  bool neg = false;
  if (!t.empty() && (t[0] == '+' || t[0] == '-')) {
    neg = t[0] == '-';
    t = t.substr(1);
  }
  auto dot = t.find('.');
  std::string ip = t.substr(0, dot), fp = t.substr(dot + 1);
  Rat v = rat_from_string(ip.empty() ? "0" : ip);
  Rat den = 1;
  for (size_t i = 0; i < fp.size(); ++i) den *= 10;
  v += Rat(rat_from_string(fp)) / den;
  return neg ? -v : v;
}

}  // namespace

InterpKind interp_kind_from_string(const std::string& s) {
  std::string t;
  for (char c : s) t += (char)std::tolower((unsigned char)c);
  if (t == "p2") return InterpKind::P2;
  if (t == "p4") return InterpKind::P4;
  if (t == "p6") return InterpKind::P6;
  if (t == "p8") return InterpKind::P8;
  if (t == "p4_to_2" || t == "p4:2" || t == "4:2") return InterpKind::P4_TO_2;
  if (t == "p8_to_4" || t == "p8:4" || t == "8:4") return InterpKind::P8_TO_4;
  if (t == "nonsbp_p4") return InterpKind::NONSBP_P4;
  if (t == "nonsbp_p6") return InterpKind::NONSBP_P6;
  if (t == "identity" || t == "conforming") return InterpKind::IDENTITY;
  throw std::invalid_argument("unknown interpolation kind: " + s);
}

std::string to_string(InterpKind k) {
  switch (k) {
    case InterpKind::P2: return "p2";
    case InterpKind::P4: return "p4";
    case InterpKind::P6: return "p6";
    case InterpKind::P8: return "p8";
    case InterpKind::P4_TO_2: return "p4_to_2";
    case InterpKind::P8_TO_4: return "p8_to_4";
    case InterpKind::NONSBP_P4: return "nonsbp_p4";
    case InterpKind::NONSBP_P6: return "nonsbp_p6";
    case InterpKind::IDENTITY: return "identity";
  }
  return "?";
}

long interp_min_mc(InterpKind kind) {
  if (kind == InterpKind::IDENTITY) return 4;
  KindInfo info = kind_info(kind);
  long wlen_c = (long)norm_boundary_weights(info.order_c).size();
  long wlen_f = (long)norm_boundary_weights(info.order_f).size();
  long m = std::max<long>(info.r, 2 * info.q);
  m = std::max(m, 2 * wlen_c - 1);
  m = std::max(m, wlen_f);  // fine side has 2m+1 points
  return m;
}

InterpolationPair load_interp_pair(InterpKind kind, long mc, double hc) {
  if (kind == InterpKind::IDENTITY)
    throw std::invalid_argument("identity pairs carry an SBP order; use make_identity_pair");
  KindInfo info = kind_info(kind);
  if (mc < interp_min_mc(kind))
    throw std::invalid_argument("grid too small: kind " + to_string(kind) + " needs coarse M >= " +
                                std::to_string(interp_min_mc(kind)));
  if (hc <= 0) throw std::invalid_argument("coarse spacing must be positive");
  InterpolationPair pr;
  pr.kind = kind;
  pr.p = info.p;
  pr.q = info.q;
  pr.r = info.r;
  pr.s = info.s;
  pr.order_coarse = info.order_c;
  pr.order_fine = info.order_f;
  pr.mc = mc;
  pr.mf = 2 * mc;
  pr.hc = hc;
  pr.hf = hc / 2;
  pr.exact = info.exact;
  pr.sbp_preserving = !info.nonsbp;
  pr.boundary_exactness = info.nonsbp ? info.p - 1 : (info.p - 1) / 2;
  pr.wc = norm_pattern(info.order_c, mc + 1);
  pr.wf = norm_pattern(info.order_f, pr.mf + 1);

  const long nrc = mc + 1, ncf = pr.mf + 1;
  RatMat A(nrc, ncf);
  std::vector<Rat> interior(2 * info.s + 1);
  for (int m = 0; m <= 2 * info.s; ++m) interior[m] = parse_rat_or_decimal(info.interior[m]);

  if (!info.nonsbp) {
    for (int i = 0; i < info.q; ++i)
      for (int j = 0; j < info.r; ++j) {
        Rat v = parse_rat_or_decimal(info.closure[i * info.r + j]);
        A(i, j) = v;
        A(nrc - 1 - i, ncf - 1 - j) = v;  // lower closure: flip rows and columns
      }
    for (long i = info.q; i < nrc - info.q; ++i)
      for (int m = -2 * info.s; m <= 2 * info.s; ++m) A(i, 2 * i + m) = interior[std::abs(m)];
  } else {
    // non-SBP F2C: injection where the symmetric stencil does not fit
    for (long i = 0; i < nrc; ++i) {
      long ctr = 2 * i;
      if (ctr - 2 * info.s < 0 || ctr + 2 * info.s > pr.mf)
        A(i, ctr) = 1;
      else
        for (int m = -2 * info.s; m <= 2 * info.s; ++m) A(i, ctr + m) = interior[std::abs(m)];
    }
  }

  RatMat B(ncf, nrc);
  if (!info.nonsbp) {
    // I_C2F = H_f^{-1} I_F2C^T H_c ; h factors give the overall 2
    for (long i = 0; i < ncf; ++i)
      for (long j = 0; j < nrc; ++j)
        if (A(j, i) != 0) B(i, j) = 2 * pr.wc[j] * A(j, i) / pr.wf[i];
  } else {
    const char* const* clo = (kind == InterpKind::NONSBP_P4) ? tables::nonsbp_p4_c2f_closure
                                                             : tables::nonsbp_p6_c2f_closure;
    const int* lens = (kind == InterpKind::NONSBP_P4) ? tables::nonsbp_p4_c2f_lens
                                                      : tables::nonsbp_p6_c2f_lens;
    const int depth = (kind == InterpKind::NONSBP_P4) ? 3 : 5;
    int pos = 0;
    std::vector<std::vector<Rat>> rows(depth);
    for (int i = 0; i < depth; ++i)
      for (int j = 0; j < lens[i]; ++j) rows[i].push_back(parse_rat_or_decimal(clo[pos++]));
    for (long i = 0; i < ncf; ++i) {
      if (i < depth) {
        for (size_t j = 0; j < rows[i].size(); ++j) B(i, (long)j) = rows[i][j];
      } else if (i >= ncf - depth) {
        long ii = ncf - 1 - i;
        for (size_t j = 0; j < rows[ii].size(); ++j) B(i, nrc - 1 - (long)j) = rows[ii][j];
      } else {
        for (long j = 0; j < nrc; ++j) {
          long d = std::abs(2 * j - i);
          if (d <= 2 * info.s) B(i, j) = 2 * interior[d];
        }
      }
    }
  }

  pr.f2c = Eigen::MatrixXd::Zero(nrc, ncf);
  pr.c2f = Eigen::MatrixXd::Zero(ncf, nrc);
  for (long i = 0; i < nrc; ++i)
    for (long j = 0; j < ncf; ++j) pr.f2c(i, j) = rat_to_double(A(i, j));
  for (long i = 0; i < ncf; ++i)
    for (long j = 0; j < nrc; ++j) pr.c2f(i, j) = rat_to_double(B(i, j));
  if (info.exact) {
    pr.f2c_q = std::move(A);
    pr.c2f_q = std::move(B);
  }
  return pr;
}

InterpolationPair assemble_pair(InterpKind kind_label, int p, int order_c, int order_f, int q, int r,
                                int s, const RatMat& closure, const std::vector<Rat>& interior,
                                long mc, double hc) {
  InterpolationPair pr;
  pr.kind = kind_label;
  pr.p = p;
  pr.q = q;
  pr.r = r;
  pr.s = s;
  pr.order_coarse = order_c;
  pr.order_fine = order_f;
  pr.mc = mc;
  pr.mf = 2 * mc;
  pr.hc = hc;
  pr.hf = hc / 2;
  pr.exact = true;
  pr.sbp_preserving = true;
  pr.boundary_exactness = (p - 1) / 2;
  pr.wc = norm_pattern(order_c, mc + 1);
  pr.wf = norm_pattern(order_f, pr.mf + 1);
  const long nrc = mc + 1, ncf = pr.mf + 1;
  RatMat A(nrc, ncf);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < r; ++j) {
      A(i, j) = closure(i, j);
      A(nrc - 1 - i, ncf - 1 - j) = closure(i, j);
    }
  for (long i = q; i < nrc - q; ++i)
    for (int m = -2 * s; m <= 2 * s; ++m) A(i, 2 * i + m) = interior[std::abs(m)];
  RatMat B(ncf, nrc);
  for (long i = 0; i < ncf; ++i)
    for (long j = 0; j < nrc; ++j)
      if (A(j, i) != 0) B(i, j) = 2 * pr.wc[j] * A(j, i) / pr.wf[i];
  pr.f2c = Eigen::MatrixXd::Zero(nrc, ncf);
  pr.c2f = Eigen::MatrixXd::Zero(ncf, nrc);
  for (long i = 0; i < nrc; ++i)
    for (long j = 0; j < ncf; ++j) pr.f2c(i, j) = rat_to_double(A(i, j));
  for (long i = 0; i < ncf; ++i)
    for (long j = 0; j < nrc; ++j) pr.c2f(i, j) = rat_to_double(B(i, j));
  pr.f2c_q = std::move(A);
  pr.c2f_q = std::move(B);
  return pr;
}

InterpolationPair make_identity_pair(int order, long m, double h) {
  InterpolationPair pr;
  pr.kind = InterpKind::IDENTITY;
  pr.p = order;
  pr.order_coarse = pr.order_fine = order;
  pr.mc = pr.mf = m;
  pr.hc = pr.hf = h;
  pr.exact = true;
  pr.sbp_preserving = true;
  pr.boundary_exactness = order;  // identity rows are exact for every k
  pr.wc = norm_pattern(order, m + 1);
  pr.wf = pr.wc;
  pr.f2c_q = RatMat::identity(m + 1);
  pr.c2f_q = RatMat::identity(m + 1);
  pr.f2c = Eigen::MatrixXd::Identity(m + 1, m + 1);
  pr.c2f = pr.f2c;
  pr.q = 0;
  pr.r = 0;
  pr.s = 0;
  return pr;
}

Eigen::VectorXd InterpolationPair::coarse_norm() const {
  Eigen::VectorXd v(mc + 1);
  for (long i = 0; i <= mc; ++i) v(i) = hc * rat_to_double(wc[i]);
  return v;
}

Eigen::VectorXd InterpolationPair::fine_norm() const {
  Eigen::VectorXd v(mf + 1);
  for (long i = 0; i <= mf; ++i) v(i) = hf * rat_to_double(wf[i]);
  return v;
}

nlohmann::ordered_json InterpolationPair::dump_json() const {
  ordered_json j;
  j["kind"] = to_string(kind);
  j["p"] = p;
  j["mc"] = mc;
  j["mf"] = mf;
  j["hc"] = hc;
  j["hf"] = hf;
  j["order_coarse"] = order_coarse;
  j["order_fine"] = order_fine;
  auto dump_w = [&](const std::vector<Rat>& w) {
    ordered_json a = ordered_json::array();
    for (auto& x : w) a.push_back(rat_to_string(x));
    return a;
  };
  j["coarse_norm_weights"] = dump_w(wc);
  j["fine_norm_weights"] = dump_w(wf);
  auto dump_m = [&](const RatMat& Mq, const Eigen::MatrixXd& Md) {
    ordered_json rows = ordered_json::array();
    if (exact) {
      for (long i = 0; i < Mq.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (long jj = 0; jj < Mq.cols(); ++jj) row.push_back(rat_to_string(Mq(i, jj)));
        rows.push_back(std::move(row));
      }
    } else {
      for (long i = 0; i < Md.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (long jj = 0; jj < Md.cols(); ++jj) row.push_back(Md(i, jj));
        rows.push_back(std::move(row));
      }
    }
    return rows;
  };
  j["I_F2C"] = dump_m(f2c_q, f2c);
  j["I_C2F"] = dump_m(c2f_q, c2f);
  return j;
}

VerificationReport verify_sbp_preserving(const InterpolationPair& pr) {
  VerificationReport rep;
  if (pr.f2c.cols() != pr.c2f.rows() || pr.f2c.rows() != pr.c2f.cols())
    throw std::invalid_argument("verify_sbp_preserving: dimension mismatch");
  if (pr.exact) {
    Rat worst = 0;
    for (long i = 0; i <= pr.mf; ++i)
      for (long j = 0; j <= pr.mc; ++j) {
        // h_f w_f[i] C2F[i,j] - 2 h_f w_c[j] F2C[j,i], in units of h_f
        Rat res = pr.wf[i] * pr.c2f_q(i, j) - 2 * pr.wc[j] * pr.f2c_q(j, i);
        if (pr.kind == InterpKind::IDENTITY) res = pr.wf[i] * pr.c2f_q(i, j) - pr.wc[j] * pr.f2c_q(j, i);
        Rat a = abs(res);
        if (a > worst) worst = a;
      }
    rep.max_residual = rat_to_double(worst) * pr.hf;
    rep.exact_zero = (worst == 0);
    rep.pass = pr.sbp_preserving ? rep.exact_zero : true;
    if (!pr.sbp_preserving) {
      rep.notes.push_back("non-SBP kind: relation (inter1) intentionally violated at boundary rows");
      rep.pass = !rep.exact_zero;
    }
  } else {
    Eigen::MatrixXd lhs = pr.fine_norm().asDiagonal() * pr.c2f;
    Eigen::MatrixXd rhs = pr.f2c.transpose() * pr.coarse_norm().asDiagonal();
    double scale = rhs.cwiseAbs().maxCoeff();
    rep.max_residual = (lhs - rhs).cwiseAbs().maxCoeff();
    rep.pass = rep.max_residual <= 1e-12 * std::max(1.0, scale);
  }
  return rep;
}

VerificationReport verify_accuracy(const InterpolationPair& pr) {
  VerificationReport rep;
  const long nc = pr.mc + 1, nf = pr.mf + 1;
  // closure row sets
  auto coarse_is_boundary = [&](long i) {
    if (pr.kind == InterpKind::IDENTITY) return false;
    long depth = pr.sbp_preserving ? pr.q : pr.s;  // nonsbp F2C: injection rows
    return i < depth || i >= nc - depth;
  };
  long f_depth = pr.sbp_preserving ? std::max<long>({(long)pr.r, (long)norm_boundary_weights(pr.order_fine).size(),
                                                     2 * ((long)norm_boundary_weights(pr.order_coarse).size() - 1) +
                                                         2 * pr.s + 1})
                                   : 2 * pr.s;
  auto fine_is_boundary = [&](long i) {
    if (pr.kind == InterpKind::IDENTITY) return false;
    return i < f_depth || i >= nf - f_depth;
  };
  // grids on [0,1]
  double hf = 1.0 / std::max<long>(pr.mf, 1);
  Eigen::VectorXd xf(nf), xc(nc);
  for (long i = 0; i < nf; ++i) xf(i) = i * hf;
  for (long j = 0; j < nc; ++j) xc(j) = (pr.kind == InterpKind::IDENTITY) ? j * hf : 2 * j * hf;
  bool ok = true;
  for (int k = 0; k < pr.p; ++k) {
    Eigen::VectorXd xfk = xf.array().pow(k).matrix(), xck = xc.array().pow(k).matrix();
    if (k == 0) {
      xfk.setOnes();
      xck.setOnes();
    }
    Eigen::VectorXd ec = pr.f2c * xfk - xck;
    Eigen::VectorXd ef = pr.c2f * xck - xfk;
    double ierr = 0, berr = 0;
    for (long i = 0; i < nc; ++i)
      (coarse_is_boundary(i) ? berr : ierr) = std::max(coarse_is_boundary(i) ? berr : ierr, std::abs(ec(i)));
    for (long i = 0; i < nf; ++i)
      (fine_is_boundary(i) ? berr : ierr) = std::max(fine_is_boundary(i) ? berr : ierr, std::abs(ef(i)));
    rep.per_k_errors.push_back({k, ierr, berr});
    if (ierr > 1e-12) ok = false;
    if (k <= pr.boundary_exactness && berr > 1e-12) ok = false;
    rep.max_residual = std::max({rep.max_residual, ierr, k <= pr.boundary_exactness ? berr : 0.0});
  }
  rep.pass = ok;
  return rep;
}

VerificationReport check_inter2(const InterpolationPair& pr) {
  VerificationReport rep;
  Eigen::MatrixXd Hc = pr.coarse_norm().asDiagonal();
  Eigen::MatrixXd Hf = pr.fine_norm().asDiagonal();
  Eigen::MatrixXd M1 = Hc * (Eigen::MatrixXd::Identity(pr.mc + 1, pr.mc + 1) - pr.f2c * pr.c2f);
  Eigen::MatrixXd M2 = Hf * (Eigen::MatrixXd::Identity(pr.mf + 1, pr.mf + 1) - pr.c2f * pr.f2c);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> s1(0.5 * (M1 + M1.transpose()));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> s2(0.5 * (M2 + M2.transpose()));
  double e1 = s1.eigenvalues().minCoeff(), e2 = s2.eigenvalues().minCoeff();
  rep.psd_min_eigenvalue = std::min(e1, e2);
  rep.max_residual = -std::min(0.0, *rep.psd_min_eigenvalue);
  rep.pass = *rep.psd_min_eigenvalue >= -1e-12;
  return rep;
}

std::pair<int, int> inter2_exact_status(const InterpolationPair& pr) {
  if (!pr.exact) throw std::invalid_argument("inter2_exact_status: decimal kind");
  const long nc = pr.mc + 1, nf = pr.mf + 1;
  RatMat I1 = RatMat::identity(nc) - pr.f2c_q * pr.c2f_q;
  RatMat I2 = RatMat::identity(nf) - pr.c2f_q * pr.f2c_q;
  RatMat M1(nc, nc), M2(nf, nf);
  for (long i = 0; i < nc; ++i)
    for (long j = 0; j < nc; ++j) M1(i, j) = pr.wc[i] * I1(i, j);
  for (long i = 0; i < nf; ++i)
    for (long j = 0; j < nf; ++j) M2(i, j) = pr.wf[i] * I2(i, j);
  // symmetric parts (exact)
  RatMat S1(nc, nc), S2(nf, nf);
  for (long i = 0; i < nc; ++i)
    for (long j = 0; j < nc; ++j) S1(i, j) = (M1(i, j) + M1(j, i)) / 2;
  for (long i = 0; i < nf; ++i)
    for (long j = 0; j < nf; ++j) S2(i, j) = (M2(i, j) + M2(j, i)) / 2;
  return {psd_status(S1), psd_status(S2)};
}

nlohmann::ordered_json VerificationReport::to_json() const {
  ordered_json j;
  j["max_residual"] = max_residual;
  j["exact_zero"] = exact_zero;
  if (!per_k_errors.empty()) {
    auto& t = j["per_k_errors"] = ordered_json::array();
    for (auto& r : per_k_errors)
      t.push_back({{"k", r.k}, {"interior", r.interior}, {"boundary", r.boundary}});
  }
  if (psd_min_eigenvalue) j["psd_min_eigenvalue"] = *psd_min_eigenvalue;
  j["pass"] = pass;
  if (!notes.empty()) j["notes"] = notes;
  return j;
}

}  // namespace sbp
