#pragma once
// Two-block compressible Euler solver on the 2:1 nonconforming interface:
// analytic vortex initial/boundary data, SAT interface and outer couplings
// with frozen free-stream penalty matrices, classic RK4 in time, and the
// grid-refinement convergence study.

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <string>
#include <vector>

#include "coupling.hpp"
#include "interp_pair.hpp"
#include "vendor_json.hpp"

namespace sbp {

struct VortexParams {
  double mach = 0.3;
  double angle_deg = 10.0;
  double x0 = 4.0, y0 = 2.5;
  double strength = 0.8;
  double radius = 0.5;
  double gamma = 1.4;

  void validate() const;
};

struct PrimState {
  double rho, u, v, p;
};

PrimState freestream_state(const VortexParams& vp);
PrimState vortex_state(double x, double y, double t, const VortexParams& vp);
std::array<double, 2> vortex_center(double t, const VortexParams& vp);

using Cons4 = std::array<double, 4>;
Cons4 prim_to_cons(const PrimState& s, double gamma);
PrimState cons_to_prim(const Cons4& u, double gamma);

// flux Jacobian split in direction (nx, ny) at a frozen primitive state
struct JacobianSplit {
  Eigen::Matrix4d A, plus, minus, abs;
};
JacobianSplit euler_jacobian_split(const PrimState& s, double nx, double ny, double gamma);
// finite-difference Jacobian of the directional flux (test oracle)
Eigen::Matrix4d euler_jacobian_fd(const PrimState& s, double nx, double ny, double gamma);

struct EulerConfig {
  int order_left = 4;
  int order_right = 4;
  InterpKind kind = InterpKind::P4;
  CouplingMode mode = CouplingMode::Characteristic;
  long M = 51;           // points per side of the coarse (left) block
  double x_left = 0.0, x_mid = 5.0, x_right = 10.0, y_lo = 0.0, y_hi = 5.0;
  VortexParams vortex;
  double cfl = 0.5;
};

// state of one block: layout [component][i][j], j contiguous
struct EulerField {
  long nx = 0, ny = 0;
  std::vector<double> a;  // 4 * nx * ny
  double* comp(int c) { return a.data() + (size_t)c * nx * ny; }
  const double* comp(int c) const { return a.data() + (size_t)c * nx * ny; }
};

class TwoBlockEuler {
public:
  explicit TwoBlockEuler(const EulerConfig& cfg);

  void set_initial(double t0 = 0.0);
  // du/dt at time t; throws on non-physical state
  void rhs(const EulerField& UL, const EulerField& UR, double t, EulerField& dUL, EulerField& dUR) const;
  // advance to t_end with RK4; returns steps taken
  long integrate(double t_end);

  std::array<double, 4> l2_error(double t) const;  // H-weighted, blocks combined (rho,u,v,p)
  double time() const { return t_; }
  double dt() const { return dt_; }
  const EulerField& left() const { return UL_; }
  const EulerField& right() const { return UR_; }
  const EulerConfig& config() const { return cfg_; }

  double x_left(long i) const { return cfg_.x_left + i * hxl_; }
  double y_left(long j) const { return cfg_.y_lo + j * hyl_; }
  double x_right(long i) const { return cfg_.x_mid + i * hxr_; }
  double y_right(long j) const { return cfg_.y_lo + j * hyr_; }

  std::string dump_fields_csv() const;  // x,y,rho,u,v,p over both blocks

private:
  EulerConfig cfg_;
  long nxl_, nyl_, nxr_, nyr_;
  double hxl_, hyl_, hxr_, hyr_;
  SbpOperator1D opxl_, opyl_, opxr_, opyr_;
  InterpolationPair pair_;
  Eigen::MatrixXd toL_, toR_;  // trace maps: right->left, left->right
  JacobianSplit jx_;           // frozen x-direction split (interface)
  JacobianSplit jxlo_, jxhi_, jylo_, jyhi_;  // outer faces
  Eigen::Matrix4d omega_;      // quadratic coupling weight (Abar)
  EulerField UL_, UR_;
  double t_ = 0.0, dt_ = 0.0;

  void apply_dx(const SbpOperator1D& op, const double* f, long nx, long ny, double* out, double sign) const;
  void apply_dy(const SbpOperator1D& op, const double* f, long nx, long ny, double* out, double sign) const;
  void check_physical(const EulerField& U, const char* where) const;
};

double convergence_rate(double err_coarse, double err_fine, double h_coarse, double h_fine);

struct ConvergenceReport {
  struct Row {
    long M;
    double h_coarse;
    std::array<double, 4> log10_err;  // rho,u,v,p
  };
  std::vector<Row> rows;
  struct Rate {
    long M_from, M_to;
    std::array<double, 4> q;
  };
  std::vector<Rate> rates;
  nlohmann::ordered_json to_json() const;
};

ConvergenceReport run_convergence(const EulerConfig& base, const std::vector<long>& Ms,
                                  double t_end, int jobs = 1,
                                  const std::vector<double>& cfl_per_M = {});

}  // namespace sbp
