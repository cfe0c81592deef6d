#include "model.hpp"

#include <lapacke.h>

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

namespace sbp {

ModelConfig ModelConfig::defaults() {
  ModelConfig c;
  c.A = Eigen::Vector2d(1, -1).asDiagonal();
  c.B = Eigen::Vector2d(1, -1).asDiagonal();
  return c;
}

void ModelConfig::validate() const {
  if (k < 1) throw std::invalid_argument("model: k must be >= 1");
  if (A.rows() != k || A.cols() != k || B.rows() != k || B.cols() != k)
    throw std::invalid_argument("model: A and B must be k x k");
  double sa = std::max(1.0, A.cwiseAbs().maxCoeff());
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-13 * sa ||
      (B - B.transpose()).cwiseAbs().maxCoeff() > 1e-13 * sa)
    throw std::invalid_argument("model: A and B must be symmetric");
  if (!(x_left < x_mid && x_mid < x_right && y_lo < y_hi))
    throw std::invalid_argument("model: degenerate domain");
  // order/kind pairing
  struct Pairing { int oc, of; };
  auto expect = [&]() -> std::optional<Pairing> {
    switch (kind) {
      case InterpKind::P2: return Pairing{2, 2};
      case InterpKind::P4: return Pairing{4, 4};
      case InterpKind::P6: return Pairing{6, 6};
      case InterpKind::P8: return Pairing{8, 8};
      case InterpKind::P4_TO_2: return Pairing{4, 2};
      case InterpKind::P8_TO_4: return Pairing{8, 4};
      case InterpKind::NONSBP_P4: return Pairing{4, 4};
      case InterpKind::NONSBP_P6: return Pairing{6, 6};
      case InterpKind::IDENTITY: return std::nullopt;
    }
    return std::nullopt;
  }();
  int o_coarse = coarse_on_right ? order_right : order_left;
  int o_fine = coarse_on_right ? order_left : order_right;
  if (expect) {
    if (o_coarse != expect->oc || o_fine != expect->of)
      throw std::invalid_argument("model: interp kind " + to_string(kind) + " pairs coarse order " +
                                  std::to_string(expect->oc) + " with fine order " +
                                  std::to_string(expect->of));
  } else if (order_left != order_right) {
    throw std::invalid_argument("model: identity (conforming) coupling needs equal orders");
  }
}

namespace {

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw std::invalid_argument("config: unknown key '" + it.key() + "' in " + where);
}

Eigen::MatrixXd matrix_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw std::invalid_argument("config: " + where + " must be a matrix (array of arrays)");
  long rows = (long)j.size(), cols = (long)j[0].size();
  Eigen::MatrixXd m(rows, cols);
  for (long i = 0; i < rows; ++i) {
    if ((long)j[i].size() != cols) throw std::invalid_argument("config: ragged matrix in " + where);
    for (long c = 0; c < cols; ++c) m(i, c) = j[i][c].get<double>();
  }
  return m;
}

}  // namespace

ModelConfig model_config_from_json(const json& j) {
  reject_unknown_keys(j, {"sbp_order_left", "sbp_order_right", "interp_kind", "coupling",
                          "coarse_points", "domain", "k", "A", "B", "coarse_on_right", "outer_bc",
                          "parabolic", "tolerance"},
                      "top level");
  ModelConfig cfg = ModelConfig::defaults();
  cfg.order_left = j.value("sbp_order_left", 4);
  cfg.order_right = j.value("sbp_order_right", 4);
  if (!j.contains("interp_kind")) throw std::invalid_argument("config: interp_kind is required");
  cfg.kind = interp_kind_from_string(j.at("interp_kind").get<std::string>());
  if (!j.contains("coarse_points")) throw std::invalid_argument("config: coarse_points is required");
  cfg.coarse_points = j.at("coarse_points").get<long>();
  if (j.contains("coupling")) {
    const json& c = j.at("coupling");
    if (c.is_string()) {
      cfg.mode = coupling_mode_from_string(c.get<std::string>());
    } else {
      reject_unknown_keys(c, {"mode", "omega", "sigma2", "sigma4"}, "coupling");
      cfg.mode = coupling_mode_from_string(c.value("mode", "nondissipative"));
      if (c.contains("omega") && !(c.at("omega").is_string() && c.at("omega") == "abar"))
        cfg.omega = matrix_from_json(c.at("omega"), "coupling.omega");
    }
  }
  if (j.contains("domain")) {
    const json& d = j.at("domain");
    reject_unknown_keys(d, {"x_left", "x_mid", "x_right", "y_lo", "y_hi"}, "domain");
    cfg.x_left = d.value("x_left", 0.0);
    cfg.x_mid = d.value("x_mid", 1.0);
    cfg.x_right = d.value("x_right", 2.0);
    cfg.y_lo = d.value("y_lo", 0.0);
    cfg.y_hi = d.value("y_hi", 1.0);
  }
  cfg.k = j.value("k", 2);
  if (cfg.k != 2 || j.contains("A")) {
    cfg.A = j.contains("A") ? matrix_from_json(j.at("A"), "A")
                            : Eigen::MatrixXd::Identity(cfg.k, cfg.k);
  }
  if (cfg.k != 2 || j.contains("B")) {
    cfg.B = j.contains("B") ? matrix_from_json(j.at("B"), "B")
                            : Eigen::MatrixXd::Identity(cfg.k, cfg.k);
  }
  cfg.coarse_on_right = j.value("coarse_on_right", false);
  if (j.contains("outer_bc")) {
    std::string s = j.at("outer_bc").get<std::string>();
    if (s == "swap" || s == "coupled")
      cfg.outer_bc = OuterBcType::ComponentSwap;
    else if (s == "characteristic")
      cfg.outer_bc = OuterBcType::CharacteristicData;
    else
      throw std::invalid_argument("config: outer_bc must be 'swap' or 'characteristic'");
  }
  if (j.contains("parabolic")) {
    const json& p = j.at("parabolic");
    reject_unknown_keys(p, {"c11", "c12", "c21", "c22", "sigma2", "sigma4"}, "parabolic");
    ParabolicSpec ps;
    auto mat_or_scalar = [&](const char* key, double dflt) {
      if (!p.contains(key)) return Eigen::MatrixXd(dflt * Eigen::MatrixXd::Identity(cfg.k, cfg.k));
      if (p.at(key).is_number())
        return Eigen::MatrixXd(p.at(key).get<double>() * Eigen::MatrixXd::Identity(cfg.k, cfg.k));
      return matrix_from_json(p.at(key), key);
    };
    ps.C11 = mat_or_scalar("c11", 0.0);
    ps.C12 = mat_or_scalar("c12", 0.0);
    ps.C21 = mat_or_scalar("c21", 0.0);
    ps.C22 = mat_or_scalar("c22", 0.0);
    ps.sigma2 = mat_or_scalar("sigma2", 0.5);
    ps.sigma4 = mat_or_scalar("sigma4", 0.5);
    cfg.parabolic = ps;
  }
  cfg.tolerance = j.value("tolerance", 1e-10);
  return cfg;
}

namespace {

using Tri = Eigen::Triplet<double>;

SpMat sp_col(long n, long idx, double v = 1.0) {
  SpMat e(n, 1);
  e.insert(idx, 0) = v;
  e.makeCompressed();
  return e;
}

SpMat sp_row(long n, long idx, double v = 1.0) {
  SpMat e(1, n);
  e.insert(0, idx) = v;
  e.makeCompressed();
  return e;
}

SpMat speye(long n) {
  SpMat I(n, n);
  I.setIdentity();
  return I;
}

SpMat sp_from_dense(const Eigen::MatrixXd& D) {
  SpMat s = D.sparseView(1.0, 0.0);
  s.makeCompressed();
  return s;
}

// L[r0+.., c0+..] += A (x) X (x) Y  (A dense k x k, X and Y sparse)
void add_kron(Eigen::MatrixXd& L, long r0, long c0, const Eigen::MatrixXd& A, const SpMat& X,
              const SpMat& Y) {
  const long nr = X.rows() * Y.rows(), nc = X.cols() * Y.cols();
  for (long ci = 0; ci < A.rows(); ++ci)
    for (long cj = 0; cj < A.cols(); ++cj) {
      double a = A(ci, cj);
      if (a == 0.0) continue;
      for (int kx = 0; kx < X.outerSize(); ++kx)
        for (SpMat::InnerIterator ix(X, kx); ix; ++ix) {
          double ax = a * ix.value();
          long rbase = r0 + ci * nr + ix.row() * Y.rows();
          long cbase = c0 + cj * nc + ix.col() * Y.cols();
          for (int ky = 0; ky < Y.outerSize(); ++ky)
            for (SpMat::InnerIterator iy(Y, ky); iy; ++iy)
              L(rbase + iy.row(), cbase + iy.col()) += ax * iy.value();
        }
    }
}

struct BlockOps {
  long nx, ny;
  double hx, hy;
  SbpOperator1D opx, opy;
  SpMat Dx, Dy, Ix, Iy;
  Eigen::VectorXd wx, wy;  // norm vectors including h

  BlockOps(int order, long nx_, long ny_, double hx_, double hy_)
      : nx(nx_), ny(ny_), hx(hx_), hy(hy_), opx(order, nx_, hx_), opy(order, ny_, hy_) {
    Dx = opx.d1_sparse();
    Dy = opy.d1_sparse();
    Ix = speye(nx);
    Iy = speye(ny);
    wx = opx.norm_vector();
    wy = opy.norm_vector();
  }
  long npts() const { return nx * ny; }
};

}  // namespace

SemiDiscreteSystem assemble_model_operator(const ModelConfig& cfg) {
  cfg.validate();
  const int k = cfg.k;
  const long Mc = cfg.coarse_points - 1;
  const bool conforming = cfg.kind == InterpKind::IDENTITY;

  InterpolationPair pair = conforming
                               ? make_identity_pair(cfg.order_left, Mc, (cfg.y_hi - cfg.y_lo) / Mc)
                               : load_interp_pair(cfg.kind, Mc, (cfg.y_hi - cfg.y_lo) / Mc);

  // geometry: coarse block and fine block; fine has 2x points per side unless conforming
  const long n_coarse = Mc + 1;
  const long n_fine = conforming ? n_coarse : 2 * Mc + 1;
  const double Ly = cfg.y_hi - cfg.y_lo;
  const double Lxl = cfg.x_mid - cfg.x_left, Lxr = cfg.x_right - cfg.x_mid;

  const bool cr = cfg.coarse_on_right;
  const long nxl = cr ? n_fine : n_coarse, nyl = nxl;
  const long nxr = cr ? n_coarse : n_fine, nyr = nxr;
  BlockOps BL(cfg.order_left, nxl, nyl, Lxl / (nxl - 1), Ly / (nyl - 1));
  BlockOps BR(cfg.order_right, nxr, nyr, Lxr / (nxr - 1), Ly / (nyr - 1));

  const long nL = (long)k * BL.npts(), nR = (long)k * BR.npts();
  const long N = nL + nR;

  SemiDiscreteSystem sys;
  sys.n = N;
  sys.n_left = nL;
  sys.h_fine = conforming ? BR.hy : (cr ? BL.hy : BR.hy);
  sys.L = Eigen::MatrixXd::Zero(N, N);
  auto& L = sys.L;

  const Eigen::MatrixXd Ik = Eigen::MatrixXd::Identity(k, k);

  // hyperbolic flux terms
  add_kron(L, 0, 0, -cfg.A, BL.Dx, BL.Iy);
  add_kron(L, 0, 0, -cfg.B, BL.Ix, BL.Dy);
  add_kron(L, nL, nL, -cfg.A, BR.Dx, BR.Iy);
  add_kron(L, nL, nL, -cfg.B, BR.Ix, BR.Dy);

  // ---- interface SATs (left east end <-> right west end) ----
  // mapping of the pair: F2C maps fine-side traces to coarse-side traces.
  const SpMat F2C = sp_from_dense(pair.f2c), C2F = sp_from_dense(pair.c2f);
  // left trace operators (map to/from left-block y-line), right likewise
  const SpMat& toL_fromR = cr ? C2F : F2C;  // right trace -> left trace
  const SpMat& toR_fromL = cr ? F2C : C2F;  // left trace -> right trace

  SpMat eN_l = sp_col(nxl, nxl - 1), e0_r = sp_col(nxr, 0);
  SpMat eNT_l = sp_row(nxl, nxl - 1), e0T_r = sp_row(nxr, 0);
  const double cl = 1.0 / BL.wx(nxl - 1);  // (Hx_L)^{-1} at the interface point
  const double crr = 1.0 / BR.wx(0);

  SymmetricSplit As = symmetric_split(cfg.A);
  Eigen::MatrixXd SigL, SigR;
  switch (cfg.mode) {
    case CouplingMode::NonDissipative:
    case CouplingMode::Quadratic:
      SigL = 0.5 * cfg.A;
      SigR = -0.5 * cfg.A;
      break;
    case CouplingMode::Characteristic:
      SigL = As.minus;
      SigR = -As.plus;
      break;
  }
  // SAT_IL = SigL (x) (Hx_L)^-1 eN { u_N - (toL) v_0 }
  add_kron(L, 0, 0, SigL, cl * (eN_l * eNT_l), BL.Iy);
  add_kron(L, 0, nL, SigL, cl * (eN_l * e0T_r), SpMat(-toL_fromR));
  add_kron(L, nL, nL, SigR, crr * (e0_r * e0T_r), BR.Iy);
  add_kron(L, nL, 0, SigR, crr * (e0_r * eNT_l), SpMat(-toR_fromL));

  if (cfg.mode == CouplingMode::Quadratic) {
    Eigen::MatrixXd Om = cfg.omega.value_or(As.abar);
    {
      double so = std::max(1.0, Om.cwiseAbs().maxCoeff());
      if ((Om - Om.transpose()).cwiseAbs().maxCoeff() > 1e-13 * so)
        throw std::invalid_argument("quadratic coupling: omega must be symmetric");
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Om);
      if (es.eigenvalues().minCoeff() <= 0)
        throw std::invalid_argument("quadratic coupling: omega must be positive definite");
    }
    SpMat HyL(nyl, nyl), HyR(nyr, nyr);
    for (long j = 0; j < nyl; ++j) HyL.insert(j, j) = BL.wy(j);
    for (long j = 0; j < nyr; ++j) HyR.insert(j, j) = BR.wy(j);
    HyL.makeCompressed();
    HyR.makeCompressed();
    // -Om (x) (HxL)^-1 eN HyL {u_N - toL v_0}
    add_kron(L, 0, 0, -Om, cl * (eN_l * eNT_l), HyL);
    add_kron(L, 0, nL, -Om, cl * (eN_l * e0T_r), SpMat(-(HyL * toL_fromR)));
    // -Om (x) (HxL)^-1 (toL) HyR eN {(toR) u_N - v_0}
    add_kron(L, 0, 0, -Om, cl * (eN_l * eNT_l), SpMat(toL_fromR * HyR * toR_fromL));
    add_kron(L, 0, nL, -Om, cl * (eN_l * e0T_r), SpMat(-(toL_fromR * HyR)));
    // right side mirror
    add_kron(L, nL, nL, -Om, crr * (e0_r * e0T_r), HyR);
    add_kron(L, nL, 0, -Om, crr * (e0_r * eNT_l), SpMat(-(HyR * toR_fromL)));
    add_kron(L, nL, nL, -Om, crr * (e0_r * e0T_r), SpMat(toR_fromL * HyL * toL_fromR));
    add_kron(L, nL, 0, -Om, crr * (e0_r * eNT_l), SpMat(-(toR_fromL * HyL)));
  }

  // ---- outer boundary SATs ----
  if (cfg.include_outer) {
    Eigen::MatrixXd SW = Eigen::MatrixXd::Zero(k, k);
    if (cfg.outer_bc == OuterBcType::ComponentSwap) {
      if (k == 2) {
        SW(0, 1) = SW(1, 0) = 1.0;
      }  // k != 2: swap degenerates to zero data
    }
    auto outer = [&](BlockOps& Bk, long off, char axis, bool high, const Eigen::MatrixXd& An) {
      SymmetricSplit sp = symmetric_split(An);
      Eigen::MatrixXd P = sp.minus * (Ik - SW);
      if (axis == 'x') {
        long idx = high ? Bk.nx - 1 : 0;
        SpMat ee = sp_col(Bk.nx, idx) * sp_row(Bk.nx, idx);
        add_kron(L, off, off, P, (1.0 / Bk.wx(idx)) * ee, Bk.Iy);
      } else {
        long idx = high ? Bk.ny - 1 : 0;
        SpMat ee = sp_col(Bk.ny, idx) * sp_row(Bk.ny, idx);
        add_kron(L, off, off, P, Bk.Ix, (1.0 / Bk.wy(idx)) * ee);
      }
    };
    outer(BL, 0, 'x', false, Eigen::MatrixXd(-cfg.A));
    outer(BL, 0, 'y', false, Eigen::MatrixXd(-cfg.B));
    outer(BL, 0, 'y', true, cfg.B);
    outer(BR, nL, 'x', true, cfg.A);
    outer(BR, nL, 'y', false, Eigen::MatrixXd(-cfg.B));
    outer(BR, nL, 'y', true, cfg.B);
  }

  // ---- parabolic terms ----
  if (cfg.parabolic) {
    const auto& ps = *cfg.parabolic;
    ViscousCouplingSpec vs = ViscousCouplingSpec::make(ps.C11, ps.C12, ps.C21, ps.C22);
    if (ps.sigma2.size()) vs.sigma2 = ps.sigma2;
    if (ps.sigma4.size()) vs.sigma4 = ps.sigma4;
    auto interior = [&](BlockOps& Bk, long off) {
      SpMat DxDx = (Bk.Dx * Bk.Dx).pruned();
      SpMat DyDy = (Bk.Dy * Bk.Dy).pruned();
      add_kron(L, off, off, vs.C11, DxDx, Bk.Iy);
      add_kron(L, off, off, vs.C22, Bk.Ix, DyDy);
      if (vs.C12.cwiseAbs().maxCoeff() > 0) add_kron(L, off, off, vs.C12, Bk.Dx, Bk.Dy);
      if (vs.C21.cwiseAbs().maxCoeff() > 0) add_kron(L, off, off, vs.C21, Bk.Dx, Bk.Dy);
    };
    interior(BL, 0);
    interior(BR, nL);

    // viscous interface penalties (Lemma 4)
    const Eigen::MatrixXd s2L = vs.sigma2 - Ik, s3L = -vs.sigma2;
    const Eigen::MatrixXd s2R = vs.sigma2, s3R = Ik - vs.sigma2;
    const Eigen::MatrixXd s4L = vs.sigma4 - Ik, s5L = -vs.sigma4;
    const Eigen::MatrixXd s4R = vs.sigma4, s5R = Ik - vs.sigma4;
    // (Hx)^-1 Dx^T e at the interface: full columns
    Eigen::VectorXd hxinvL = BL.opx.norm_inverse_vector(), hxinvR = BR.opx.norm_inverse_vector();
    SpMat colL = sp_from_dense(hxinvL.asDiagonal() * Eigen::MatrixXd(BL.Dx.transpose() *
                                                                     Eigen::MatrixXd(sp_col(nxl, nxl - 1))));
    SpMat colR = sp_from_dense(hxinvR.asDiagonal() * Eigen::MatrixXd(BR.Dx.transpose() *
                                                                     Eigen::MatrixXd(sp_col(nxr, 0))));
    SpMat rowDxL = sp_from_dense(Eigen::MatrixXd(sp_row(nxl, nxl - 1)) * Eigen::MatrixXd(BL.Dx));
    SpMat rowDxR = sp_from_dense(Eigen::MatrixXd(sp_row(nxr, 0)) * Eigen::MatrixXd(BR.Dx));

    // C11 terms
    if (vs.C11.cwiseAbs().maxCoeff() > 0) {
      Eigen::MatrixXd A1 = s2L * vs.C11, A2 = vs.C11 * s3L;
      add_kron(L, 0, 0, A1, colL * eNT_l, BL.Iy);
      add_kron(L, 0, nL, A1, colL * e0T_r, SpMat(-toL_fromR));
      add_kron(L, 0, 0, A2, cl * (eN_l * rowDxL), BL.Iy);
      add_kron(L, 0, nL, A2, cl * (eN_l * rowDxR), SpMat(-toL_fromR));
      Eigen::MatrixXd A3 = s2R * vs.C11, A4 = vs.C11 * s3R;
      add_kron(L, nL, nL, A3, colR * e0T_r, BR.Iy);
      add_kron(L, nL, 0, A3, colR * eNT_l, SpMat(-toR_fromL));
      add_kron(L, nL, nL, A4, crr * (e0_r * rowDxR), BR.Iy);
      add_kron(L, nL, 0, A4, crr * (e0_r * rowDxL), SpMat(-toR_fromL));
    }
    // C21 terms: interface-value and y-derivative mismatches at the x-interface
    if (vs.C21.cwiseAbs().maxCoeff() > 0) {
      Eigen::MatrixXd A1 = s4L * vs.C21, A2 = vs.C21 * s5L;
      SpMat DyT_L = sp_from_dense(Eigen::MatrixXd(BL.Dy.transpose()));
      SpMat DyT_R = sp_from_dense(Eigen::MatrixXd(BR.Dy.transpose()));
      add_kron(L, 0, 0, A1, cl * (eN_l * eNT_l), DyT_L);
      add_kron(L, 0, nL, A1, cl * (eN_l * e0T_r), SpMat(-(DyT_L * toL_fromR)));
      add_kron(L, 0, 0, A2, cl * (eN_l * eNT_l), BL.Dy);
      add_kron(L, 0, nL, A2, cl * (eN_l * e0T_r), SpMat(-(toL_fromR * BR.Dy)));
      Eigen::MatrixXd A3 = s4R * vs.C21, A4 = vs.C21 * s5R;
      add_kron(L, nL, nL, A3, crr * (e0_r * e0T_r), DyT_R);
      add_kron(L, nL, 0, A3, crr * (e0_r * eNT_l), SpMat(-(DyT_R * toR_fromL)));
      add_kron(L, nL, nL, A4, crr * (e0_r * e0T_r), BR.Dy);
      add_kron(L, nL, 0, A4, crr * (e0_r * eNT_l), SpMat(-(toR_fromL * BL.Dy)));
    }

    // viscous outer boundary penalties: full-flux Neumann-zero rows
    if (cfg.include_outer) {
      auto viscous_outer = [&](BlockOps& Bk, long off) {
        // x faces: flux C11 ux + C12 uy
        for (bool high : {false, true}) {
          if (off == 0 && high) continue;    // left block east end is the interface
          if (off == nL && !high) continue;  // right block west end is the interface
          long idx = high ? Bk.nx - 1 : 0;
          double coef = (high ? -1.0 : 1.0) / Bk.wx(idx);
          SpMat sel = sp_col(Bk.nx, idx) * sp_row(Bk.nx, idx);
          add_kron(L, off, off, coef * vs.C11, SpMat(sel * Bk.Dx), Bk.Iy);
          if (vs.C12.cwiseAbs().maxCoeff() > 0)
            add_kron(L, off, off, coef * vs.C12, sel, Bk.Dy);
        }
        // y faces: flux C21 ux + C22 uy
        for (bool high : {false, true}) {
          long idx = high ? Bk.ny - 1 : 0;
          double coef = (high ? -1.0 : 1.0) / Bk.wy(idx);
          SpMat sel = sp_col(Bk.ny, idx) * sp_row(Bk.ny, idx);
          add_kron(L, off, off, coef * vs.C22, Bk.Ix, SpMat(sel * Bk.Dy));
          if (vs.C21.cwiseAbs().maxCoeff() > 0)
            add_kron(L, off, off, coef * vs.C21, Bk.Dx, sel);
        }
      };
      viscous_outer(BL, 0);
      viscous_outer(BR, nL);
    }
  }

  // global norm
  sys.M.resize(N);
  Eigen::VectorXd ml = block_norm_diagonal(BL.opx, BL.opy), mr = block_norm_diagonal(BR.opx, BR.opy);
  for (int c = 0; c < k; ++c) {
    sys.M.segment((long)c * BL.npts(), BL.npts()) = ml;
    sys.M.segment(nL + (long)c * BR.npts(), BR.npts()) = mr;
  }

  // interface DOF indices
  for (int c = 0; c < k; ++c) {
    for (long j = 0; j < nyl; ++j) sys.iface_left.push_back((long)c * BL.npts() + (nxl - 1) * nyl + j);
    for (long j = 0; j < nyr; ++j) sys.iface_right.push_back(nL + (long)c * BR.npts() + 0 * nyr + j);
  }
  return sys;
}

SpectrumReport compute_spectrum(const SemiDiscreteSystem& sys, double tolerance) {
  const lapack_int n = (lapack_int)sys.n;
  std::vector<double> a(sys.n * sys.n);
  // column-major copy
  for (long j = 0; j < sys.n; ++j)
    for (long i = 0; i < sys.n; ++i) a[j * sys.n + i] = sys.L(i, j);
  std::vector<double> wr(sys.n), wi(sys.n);
  lapack_int info = LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'N', n, a.data(), n, wr.data(), wi.data(),
                                  nullptr, 1, nullptr, 1);
  if (info != 0) throw std::runtime_error("dgeev failed with info " + std::to_string(info));
  SpectrumReport rep;
  rep.tolerance = tolerance;
  rep.eigenvalues.resize(sys.n);
  for (long i = 0; i < sys.n; ++i)
    rep.eigenvalues[i] = std::complex<double>(wr[i] * sys.h_fine, wi[i] * sys.h_fine);
  std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end(), [](auto& a, auto& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  rep.max_real_scaled = rep.eigenvalues.empty() ? 0.0 : rep.eigenvalues.front().real();
  rep.verdict = classify_stability(rep.max_real_scaled, tolerance);
  return rep;
}

Verdict classify_stability(double max_real_scaled, double tolerance) {
  return max_real_scaled <= tolerance ? Verdict::Stable : Verdict::Unstable;
}

EnergyCheck energy_matrix_check(const SemiDiscreteSystem& sys, double tol) {
  const long n = sys.n;
  Eigen::MatrixXd S = sys.M.asDiagonal() * sys.L + sys.L.transpose() * sys.M.asDiagonal();
  EnergyCheck ec;
  double scale = S.cwiseAbs().maxCoeff();
  double thresh = std::max(1e-300, 1e-13 * scale);
  std::vector<long> nz;
  for (long i = 0; i < n; ++i)
    if (S.row(i).cwiseAbs().maxCoeff() > thresh) nz.push_back(i);
  ec.support_size = (long)nz.size();
  if (!nz.empty()) {
    Eigen::MatrixXd Ssub((long)nz.size(), (long)nz.size());
    for (size_t i = 0; i < nz.size(); ++i)
      for (size_t j = 0; j < nz.size(); ++j) Ssub((long)i, (long)j) = S(nz[i], nz[j]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (Ssub + Ssub.transpose()));
    ec.max_eig_support = es.eigenvalues().maxCoeff();
  }
  double mi = 0;
  for (long i : sys.iface_left)
    for (long j : sys.iface_right) mi = std::max(mi, std::abs(S(i, j)));
  ec.max_interface_entry = mi;
  ec.negative_semidefinite = ec.max_eig_support <= tol;
  return ec;
}

nlohmann::ordered_json SpectrumReport::summary_json() const {
  ordered_json j;
  j["n_eigenvalues"] = eigenvalues.size();
  j["max_real_scaled"] = max_real_scaled;
  j["tolerance"] = tolerance;
  j["verdict"] = to_string(verdict);
  return j;
}

std::string SpectrumReport::csv() const {
  std::ostringstream os;
  os << "re_scaled,im_scaled\n";
  os.precision(17);
  for (auto& z : eigenvalues) os << z.real() << "," << z.imag() << "\n";
  return os.str();
}

}  // namespace sbp
