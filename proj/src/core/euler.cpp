#include "euler.hpp"

#include <cmath>
#include <sstream>
#include <atomic>
#include <thread>

namespace sbp {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void VortexParams::validate() const {
  if (!(mach > 0 && mach < 1)) throw std::invalid_argument("vortex: Mach number must be in (0,1)");
  if (!(strength > 0)) throw std::invalid_argument("vortex: strength must be positive");
  if (!(radius > 0)) throw std::invalid_argument("vortex: radius must be positive");
}

PrimState freestream_state(const VortexParams& vp) {
  double ang = vp.angle_deg * kPi / 180.0;
  return {1.0, std::cos(ang), std::sin(ang), 1.0 / (vp.gamma * vp.mach * vp.mach)};
}

std::array<double, 2> vortex_center(double t, const VortexParams& vp) {
  PrimState fs = freestream_state(vp);
  return {vp.x0 + fs.u * t, vp.y0 + fs.v * t};
}

PrimState vortex_state(double x, double y, double t, const VortexParams& vp) {
  PrimState fs = freestream_state(vp);
  double Tinf = fs.p / fs.rho;
  auto c = vortex_center(t, vp);
  double xp = (x - c[0]) / vp.radius, yp = (y - c[1]) / vp.radius;
  double r2 = xp * xp + yp * yp;
  double ee = std::exp(0.5 * (1.0 - r2));
  double fac = vp.strength / (2.0 * kPi);
  double T = Tinf - (vp.gamma - 1.0) * fac * fac / (2.0 * vp.gamma) * std::exp(1.0 - r2);
  double rho = fs.rho * std::pow(T / Tinf, 1.0 / (vp.gamma - 1.0));
  return {rho, fs.u - fac * yp * ee, fs.v + fac * xp * ee, rho * T};
}

Cons4 prim_to_cons(const PrimState& s, double gamma) {
  return {s.rho, s.rho * s.u, s.rho * s.v,
          s.p / (gamma - 1.0) + 0.5 * s.rho * (s.u * s.u + s.v * s.v)};
}

PrimState cons_to_prim(const Cons4& u, double gamma) {
  double rho = u[0];
  double ux = u[1] / rho, uy = u[2] / rho;
  double p = (gamma - 1.0) * (u[3] - 0.5 * rho * (ux * ux + uy * uy));
  return {rho, ux, uy, p};
}

JacobianSplit euler_jacobian_split(const PrimState& s, double nx, double ny, double gamma) {
  double c = std::sqrt(gamma * s.p / s.rho);
  double un = s.u * nx + s.v * ny;
  double vt = -s.u * ny + s.v * nx;
  double q2 = s.u * s.u + s.v * s.v;
  double H = c * c / (gamma - 1.0) + 0.5 * q2;
  Eigen::Matrix4d R;
  R << 1, 1, 0, 1,
      s.u - c * nx, s.u, -ny, s.u + c * nx,
      s.v - c * ny, s.v, nx, s.v + c * ny,
      H - c * un, 0.5 * q2, vt, H + c * un;
  double b2 = (gamma - 1.0) / (c * c);
  double b1 = 0.5 * b2 * q2;
  Eigen::Matrix4d Rinv;
  Rinv << 0.5 * (b1 + un / c), 0.5 * (-b2 * s.u - nx / c), 0.5 * (-b2 * s.v - ny / c), 0.5 * b2,
      1 - b1, b2 * s.u, b2 * s.v, -b2,
      -vt, -ny, nx, 0,
      0.5 * (b1 - un / c), 0.5 * (-b2 * s.u + nx / c), 0.5 * (-b2 * s.v + ny / c), 0.5 * b2;
  Eigen::Vector4d lam(un - c, un, un, un + c);
  JacobianSplit out;
  out.A = R * lam.asDiagonal() * Rinv;
  out.plus = R * lam.cwiseMax(0.0).asDiagonal() * Rinv;
  out.minus = R * lam.cwiseMin(0.0).asDiagonal() * Rinv;
  out.abs = R * lam.cwiseAbs().asDiagonal() * Rinv;
  return out;
}

namespace {

Cons4 flux_n(const Cons4& u, double nx, double ny, double gamma) {
  PrimState s = cons_to_prim(u, gamma);
  double un = s.u * nx + s.v * ny;
  return {u[0] * un, u[1] * un + s.p * nx, u[2] * un + s.p * ny, (u[3] + s.p) * un};
}

}  // namespace

Eigen::Matrix4d euler_jacobian_fd(const PrimState& s, double nx, double ny, double gamma) {
  Cons4 u0 = prim_to_cons(s, gamma);
  Eigen::Matrix4d J;
  for (int j = 0; j < 4; ++j) {
    double eps = 1e-7 * std::max(1.0, std::abs(u0[j]));
    Cons4 up = u0, um = u0;
    up[j] += eps;
    um[j] -= eps;
    Cons4 fp = flux_n(up, nx, ny, gamma), fm = flux_n(um, nx, ny, gamma);
    for (int i = 0; i < 4; ++i) J(i, j) = (fp[i] - fm[i]) / (2 * eps);
  }
  return J;
}

TwoBlockEuler::TwoBlockEuler(const EulerConfig& cfg)
    : cfg_(cfg),
      nxl_(cfg.M),
      nyl_(cfg.M),
      nxr_(2 * (cfg.M - 1) + 1),
      nyr_(2 * (cfg.M - 1) + 1),
      hxl_((cfg.x_mid - cfg.x_left) / (cfg.M - 1)),
      hyl_((cfg.y_hi - cfg.y_lo) / (cfg.M - 1)),
      hxr_((cfg.x_right - cfg.x_mid) / (nxr_ - 1)),
      hyr_((cfg.y_hi - cfg.y_lo) / (nyr_ - 1)),
      opxl_(cfg.order_left, nxl_, hxl_),
      opyl_(cfg.order_left, nyl_, hyl_),
      opxr_(cfg.order_right, nxr_, hxr_),
      opyr_(cfg.order_right, nyr_, hyr_),
      pair_(load_interp_pair(cfg.kind, cfg.M - 1, hyl_)) {
  cfg_.vortex.validate();
  toL_ = pair_.f2c;  // fine (right) trace -> coarse (left) trace
  toR_ = pair_.c2f;
  PrimState fs = freestream_state(cfg_.vortex);
  double g = cfg_.vortex.gamma;
  jx_ = euler_jacobian_split(fs, 1.0, 0.0, g);
  jxlo_ = euler_jacobian_split(fs, -1.0, 0.0, g);
  jxhi_ = jx_;
  jylo_ = euler_jacobian_split(fs, 0.0, -1.0, g);
  jyhi_ = euler_jacobian_split(fs, 0.0, 1.0, g);
  omega_ = jx_.abs;
  UL_.nx = nxl_;
  UL_.ny = nyl_;
  UL_.a.assign(4 * nxl_ * nyl_, 0.0);
  UR_.nx = nxr_;
  UR_.ny = nyr_;
  UR_.a.assign(4 * nxr_ * nyr_, 0.0);
  double c = std::sqrt(g * fs.p / fs.rho);
  double smax = std::hypot(fs.u, fs.v) + c;
  dt_ = cfg_.cfl * std::min(hxr_, hyr_) / smax;
}

void TwoBlockEuler::set_initial(double t0) {
  t_ = t0;
  auto fill = [&](EulerField& U, auto xf, auto yf) {
    for (long i = 0; i < U.nx; ++i)
      for (long j = 0; j < U.ny; ++j) {
        Cons4 u = prim_to_cons(vortex_state(xf(i), yf(j), t0, cfg_.vortex), cfg_.vortex.gamma);
        for (int cmp = 0; cmp < 4; ++cmp) U.comp(cmp)[i * U.ny + j] = u[cmp];
      }
  };
  fill(UL_, [&](long i) { return x_left(i); }, [&](long j) { return y_left(j); });
  fill(UR_, [&](long i) { return x_right(i); }, [&](long j) { return y_right(j); });
}

void TwoBlockEuler::apply_dx(const SbpOperator1D& op, const double* f, long nx, long ny, double* out,
                             double sign) const {
  const long c = op.closure_rows(), w = op.closure_cols();
  const auto& top = op.d1_top();
  const auto& bot = op.d1_bot();
  const auto& cen = op.central_d1();
  const int hw = (int)cen.size();
  for (long i = 0; i < c; ++i) {
    double* o1 = out + i * ny;
    double* o2 = out + (nx - c + i) * ny;
    for (long m = 0; m < w; ++m) {
      const double c1 = sign * top(i, m), c2 = sign * bot(i, m);
      const double* f1 = f + m * ny;
      const double* f2 = f + (nx - w + m) * ny;
      if (c1 != 0)
        for (long j = 0; j < ny; ++j) o1[j] += c1 * f1[j];
      if (c2 != 0)
        for (long j = 0; j < ny; ++j) o2[j] += c2 * f2[j];
    }
  }
  for (long i = c; i < nx - c; ++i) {
    double* o = out + i * ny;
    for (int m = 1; m <= hw; ++m) {
      const double cm = sign * cen[m - 1];
      const double* fp = f + (i + m) * ny;
      const double* fm = f + (i - m) * ny;
      for (long j = 0; j < ny; ++j) o[j] += cm * (fp[j] - fm[j]);
    }
  }
}

void TwoBlockEuler::apply_dy(const SbpOperator1D& op, const double* f, long nx, long ny, double* out,
                             double sign) const {
  const long c = op.closure_rows(), w = op.closure_cols();
  const auto& top = op.d1_top();
  const auto& bot = op.d1_bot();
  const auto& cen = op.central_d1();
  const int hw = (int)cen.size();
  for (long i = 0; i < nx; ++i) {
    const double* fr = f + i * ny;
    double* o = out + i * ny;
    for (long j = 0; j < c; ++j) {
      double s1 = 0, s2 = 0;
      for (long m = 0; m < w; ++m) {
        s1 += top(j, m) * fr[m];
        s2 += bot(j, m) * fr[ny - w + m];
      }
      o[j] += sign * s1;
      o[ny - c + j] += sign * s2;
    }
    for (long j = c; j < ny - c; ++j) {
      double s = 0;
      for (int m = 1; m <= hw; ++m) s += cen[m - 1] * (fr[j + m] - fr[j - m]);
      o[j] += sign * s;
    }
  }
}

void TwoBlockEuler::check_physical(const EulerField& U, const char* where) const {
  const double g = cfg_.vortex.gamma;
  for (long idx = 0; idx < U.nx * U.ny; ++idx) {
    Cons4 u{U.comp(0)[idx], U.comp(1)[idx], U.comp(2)[idx], U.comp(3)[idx]};
    if (!std::isfinite(u[0]) || !std::isfinite(u[3]))
      throw std::runtime_error(std::string("euler: non-finite state in ") + where + " at t=" +
                               std::to_string(t_));
    PrimState s = cons_to_prim(u, g);
    if (s.rho <= 0 || s.p <= 0)
      throw std::runtime_error(std::string("euler: nonphysical state (rho or p <= 0) in ") + where +
                               " at t=" + std::to_string(t_));
  }
}

void TwoBlockEuler::rhs(const EulerField& UL, const EulerField& UR, double t, EulerField& dUL,
                        EulerField& dUR) const {
  const double g = cfg_.vortex.gamma;
  auto block_flux = [&](const EulerField& U, const SbpOperator1D& ox, const SbpOperator1D& oy,
                        EulerField& dU) {
    const long nx = U.nx, ny = U.ny, n = nx * ny;
    std::fill(dU.a.begin(), dU.a.end(), 0.0);
    std::vector<double> F(n), G(n);
    std::vector<double> rho_inv(n), uu(n), vv(n), pp(n);
    const double* r = U.comp(0);
    const double* mu = U.comp(1);
    const double* mv = U.comp(2);
    const double* E = U.comp(3);
    for (long idx = 0; idx < n; ++idx) {
      rho_inv[idx] = 1.0 / r[idx];
      uu[idx] = mu[idx] * rho_inv[idx];
      vv[idx] = mv[idx] * rho_inv[idx];
      pp[idx] = (g - 1.0) * (E[idx] - 0.5 * (mu[idx] * uu[idx] + mv[idx] * vv[idx]));
    }
    for (int cmp = 0; cmp < 4; ++cmp) {
      const double* q = U.comp(cmp);
      for (long idx = 0; idx < n; ++idx) {
        double fx = q[idx] * uu[idx], fy = q[idx] * vv[idx];
        if (cmp == 1) fx += pp[idx];
        if (cmp == 2) fy += pp[idx];
        if (cmp == 3) {
          fx += pp[idx] * uu[idx];
          fy += pp[idx] * vv[idx];
        }
        F[idx] = fx;
        G[idx] = fy;
      }
      apply_dx(ox, F.data(), nx, ny, dU.comp(cmp), -1.0);
      apply_dy(oy, G.data(), nx, ny, dU.comp(cmp), -1.0);
    }
  };
  block_flux(UL, opxl_, opyl_, dUL);
  block_flux(UR, opxr_, opyr_, dUR);

  // ---- interface SATs ----
  const double cl = 1.0 / (hxl_ * opxl_.norm().weight(nxl_ - 1));
  const double cr = 1.0 / (hxr_ * opxr_.norm().weight(0));
  Eigen::MatrixXd uN(4, nyl_), v0(4, nyr_);
  for (int cmp = 0; cmp < 4; ++cmp)
    for (long j = 0; j < nyl_; ++j) uN(cmp, j) = UL.comp(cmp)[(nxl_ - 1) * nyl_ + j];
  for (int cmp = 0; cmp < 4; ++cmp)
    for (long j = 0; j < nyr_; ++j) v0(cmp, j) = UR.comp(cmp)[j];
  Eigen::MatrixXd rL = uN - v0 * toL_.transpose();  // (4 x nyl)
  Eigen::MatrixXd rR = v0 - uN * toR_.transpose();  // (4 x nyr)
  Eigen::MatrixXd penL, penR;
  switch (cfg_.mode) {
    case CouplingMode::Characteristic:
      penL = cl * (jx_.minus * rL);
      penR = -cr * (jx_.plus * rR);
      break;
    case CouplingMode::NonDissipative:
      penL = 0.5 * cl * (jx_.A * rL);
      penR = -0.5 * cr * (jx_.A * rR);
      break;
    case CouplingMode::Quadratic: {
      penL = 0.5 * cl * (jx_.A * rL);
      penR = -0.5 * cr * (jx_.A * rR);
      Eigen::VectorXd wHyL(nyl_), wHyR(nyr_);
      for (long j = 0; j < nyl_; ++j) wHyL(j) = hyl_ * opyl_.norm().weight(j);
      for (long j = 0; j < nyr_; ++j) wHyR(j) = hyr_ * opyr_.norm().weight(j);
      Eigen::MatrixXd rLH = rL * wHyL.asDiagonal();
      Eigen::MatrixXd rRH = rR * wHyR.asDiagonal();
      penL += -cl * (omega_ * (rLH + (-rRH) * toL_.transpose()));
      penR += -cr * (omega_ * (rRH + (-rLH) * toR_.transpose()));
      break;
    }
  }
  for (int cmp = 0; cmp < 4; ++cmp) {
    for (long j = 0; j < nyl_; ++j) dUL.comp(cmp)[(nxl_ - 1) * nyl_ + j] += penL(cmp, j);
    for (long j = 0; j < nyr_; ++j) dUR.comp(cmp)[j] += penR(cmp, j);
  }

  // ---- outer boundary SATs with exact vortex data ----
  auto outer_x = [&](const EulerField& U, EulerField& dU, const SbpOperator1D& ox, bool high,
                     const Eigen::Matrix4d& Anm, auto xcoord, auto ycoord) {
    long i = high ? U.nx - 1 : 0;
    double coef = 1.0 / (ox.h() * ox.norm().weight(i));
    for (long j = 0; j < U.ny; ++j) {
      Cons4 gex = prim_to_cons(vortex_state(xcoord(i), ycoord(j), t, cfg_.vortex), g);
      Eigen::Vector4d res;
      for (int cmp = 0; cmp < 4; ++cmp) res(cmp) = U.comp(cmp)[i * U.ny + j] - gex[cmp];
      Eigen::Vector4d pen = coef * (Anm * res);
      for (int cmp = 0; cmp < 4; ++cmp) dU.comp(cmp)[i * U.ny + j] += pen(cmp);
    }
  };
  auto outer_y = [&](const EulerField& U, EulerField& dU, const SbpOperator1D& oy, bool high,
                     const Eigen::Matrix4d& Anm, auto xcoord, auto ycoord) {
    long j = high ? U.ny - 1 : 0;
    double coef = 1.0 / (oy.h() * oy.norm().weight(j));
    for (long i = 0; i < U.nx; ++i) {
      Cons4 gex = prim_to_cons(vortex_state(xcoord(i), ycoord(j), t, cfg_.vortex), g);
      Eigen::Vector4d res;
      for (int cmp = 0; cmp < 4; ++cmp) res(cmp) = U.comp(cmp)[i * U.ny + j] - gex[cmp];
      Eigen::Vector4d pen = coef * (Anm * res);
      for (int cmp = 0; cmp < 4; ++cmp) dU.comp(cmp)[i * U.ny + j] += pen(cmp);
    }
  };
  auto xl = [&](long i) { return x_left(i); };
  auto yl = [&](long j) { return y_left(j); };
  auto xr = [&](long i) { return x_right(i); };
  auto yr = [&](long j) { return y_right(j); };
  outer_x(UL, dUL, opxl_, false, jxlo_.minus, xl, yl);
  outer_y(UL, dUL, opyl_, false, jylo_.minus, xl, yl);
  outer_y(UL, dUL, opyl_, true, jyhi_.minus, xl, yl);
  outer_x(UR, dUR, opxr_, true, jxhi_.minus, xr, yr);
  outer_y(UR, dUR, opyr_, false, jylo_.minus, xr, yr);
  outer_y(UR, dUR, opyr_, true, jyhi_.minus, xr, yr);
}

long TwoBlockEuler::integrate(double t_end) {
  if (t_end < t_) throw std::invalid_argument("integrate: t_end before current time");
  if (t_end == t_) return 0;
  long nsteps = (long)std::ceil((t_end - t_) / dt_);
  double dt = (t_end - t_) / nsteps;
  EulerField k1 = UL_, k2 = UL_, k3 = UL_, k4 = UL_, tmpL = UL_;
  EulerField m1 = UR_, m2 = UR_, m3 = UR_, m4 = UR_, tmpR = UR_;
  auto axpy = [](EulerField& out, const EulerField& base, double a, const EulerField& d) {
    const size_t n = base.a.size();
    for (size_t i = 0; i < n; ++i) out.a[i] = base.a[i] + a * d.a[i];
  };
  for (long step = 0; step < nsteps; ++step) {
    rhs(UL_, UR_, t_, k1, m1);
    axpy(tmpL, UL_, 0.5 * dt, k1);
    axpy(tmpR, UR_, 0.5 * dt, m1);
    rhs(tmpL, tmpR, t_ + 0.5 * dt, k2, m2);
    axpy(tmpL, UL_, 0.5 * dt, k2);
    axpy(tmpR, UR_, 0.5 * dt, m2);
    rhs(tmpL, tmpR, t_ + 0.5 * dt, k3, m3);
    axpy(tmpL, UL_, dt, k3);
    axpy(tmpR, UR_, dt, m3);
    rhs(tmpL, tmpR, t_ + dt, k4, m4);
    for (size_t i = 0; i < UL_.a.size(); ++i)
      UL_.a[i] += dt / 6.0 * (k1.a[i] + 2 * k2.a[i] + 2 * k3.a[i] + k4.a[i]);
    for (size_t i = 0; i < UR_.a.size(); ++i)
      UR_.a[i] += dt / 6.0 * (m1.a[i] + 2 * m2.a[i] + 2 * m3.a[i] + m4.a[i]);
    t_ += dt;
    check_physical(UL_, "left block");
    check_physical(UR_, "right block");
  }
  return nsteps;
}

std::array<double, 4> TwoBlockEuler::l2_error(double t) const {
  const double g = cfg_.vortex.gamma;
  std::array<double, 4> acc{0, 0, 0, 0};
  auto add_block = [&](const EulerField& U, const SbpOperator1D& ox, const SbpOperator1D& oy,
                       auto xcoord, auto ycoord) {
    for (long i = 0; i < U.nx; ++i) {
      double wx = ox.h() * ox.norm().weight(i);
      for (long j = 0; j < U.ny; ++j) {
        double w = wx * oy.h() * oy.norm().weight(j);
        long idx = i * U.ny + j;
        Cons4 u{U.comp(0)[idx], U.comp(1)[idx], U.comp(2)[idx], U.comp(3)[idx]};
        PrimState s = cons_to_prim(u, g);
        PrimState ex = vortex_state(xcoord(i), ycoord(j), t, cfg_.vortex);
        double d[4] = {s.rho - ex.rho, s.u - ex.u, s.v - ex.v, s.p - ex.p};
        for (int cmp = 0; cmp < 4; ++cmp) acc[cmp] += w * d[cmp] * d[cmp];
      }
    }
  };
  add_block(UL_, opxl_, opyl_, [&](long i) { return x_left(i); }, [&](long j) { return y_left(j); });
  add_block(UR_, opxr_, opyr_, [&](long i) { return x_right(i); }, [&](long j) { return y_right(j); });
  for (auto& v : acc) v = std::sqrt(v);
  return acc;
}

std::string TwoBlockEuler::dump_fields_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "x,y,rho,u,v,p\n";
  const double g = cfg_.vortex.gamma;
  auto dump = [&](const EulerField& U, auto xcoord, auto ycoord) {
    for (long i = 0; i < U.nx; ++i)
      for (long j = 0; j < U.ny; ++j) {
        long idx = i * U.ny + j;
        PrimState s =
            cons_to_prim({U.comp(0)[idx], U.comp(1)[idx], U.comp(2)[idx], U.comp(3)[idx]}, g);
        os << xcoord(i) << "," << ycoord(j) << "," << s.rho << "," << s.u << "," << s.v << "," << s.p
           << "\n";
      }
  };
  dump(UL_, [&](long i) { return x_left(i); }, [&](long j) { return y_left(j); });
  dump(UR_, [&](long i) { return x_right(i); }, [&](long j) { return y_right(j); });
  return os.str();
}

double convergence_rate(double err_coarse, double err_fine, double h_coarse, double h_fine) {
  if (err_coarse <= 0 || err_fine <= 0)
    throw std::invalid_argument("convergence_rate: errors must be positive");
  return std::log10(err_coarse / err_fine) / std::log10(h_coarse / h_fine);
}

nlohmann::ordered_json ConvergenceReport::to_json() const {
  ordered_json j;
  auto& rws = j["rows"] = ordered_json::array();
  const char* vars[4] = {"rho", "u", "v", "p"};
  for (auto& r : rows) {
    ordered_json row;
    row["M"] = r.M;
    row["h_coarse"] = r.h_coarse;
    for (int c = 0; c < 4; ++c) row["log10_l2_" + std::string(vars[c])] = r.log10_err[c];
    rws.push_back(std::move(row));
  }
  auto& rts = j["rates"] = ordered_json::array();
  for (auto& r : rates) {
    ordered_json row;
    row["M_from"] = r.M_from;
    row["M_to"] = r.M_to;
    for (int c = 0; c < 4; ++c) row["q_" + std::string(vars[c])] = r.q[c];
    rts.push_back(std::move(row));
  }
  return j;
}

ConvergenceReport run_convergence(const EulerConfig& base, const std::vector<long>& Ms, double t_end,
                                  int jobs, const std::vector<double>& cfl_per_M) {
  ConvergenceReport rep;
  rep.rows.resize(Ms.size());
  std::vector<std::exception_ptr> errs(Ms.size());
  auto run_one = [&](size_t idx) {
    try {
      EulerConfig cfg = base;
      cfg.M = Ms[idx];
      if (idx < cfl_per_M.size() && cfl_per_M[idx] > 0) cfg.cfl = cfl_per_M[idx];
      TwoBlockEuler solver(cfg);
      solver.set_initial(0.0);
      solver.integrate(t_end);
      auto e = solver.l2_error(t_end);
      ConvergenceReport::Row row;
      row.M = Ms[idx];
      row.h_coarse = (cfg.x_mid - cfg.x_left) / (cfg.M - 1);
      for (int c = 0; c < 4; ++c) row.log10_err[c] = std::log10(e[c]);
      rep.rows[idx] = row;
    } catch (...) {
      errs[idx] = std::current_exception();
    }
  };
  if (jobs <= 1) {
    for (size_t i = 0; i < Ms.size(); ++i) run_one(i);
  } else {
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    for (int t = 0; t < jobs; ++t)
      pool.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < Ms.size(); i = next.fetch_add(1)) run_one(i);
      });
    for (auto& th : pool) th.join();
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  for (size_t i = 1; i < rep.rows.size(); ++i) {
    ConvergenceReport::Rate rate;
    rate.M_from = rep.rows[i - 1].M;
    rate.M_to = rep.rows[i].M;
    for (int c = 0; c < 4; ++c)
      rate.q[c] = convergence_rate(std::pow(10.0, rep.rows[i - 1].log10_err[c]),
                                   std::pow(10.0, rep.rows[i].log10_err[c]), rep.rows[i - 1].h_coarse,
                                   rep.rows[i].h_coarse);
    rep.rates.push_back(rate);
  }
  return rep;
}

}  // namespace sbp
