#include "sbpinterp.h"

#include <cstring>
#include <string>

#include "euler.hpp"
#include "interp_builder.hpp"
#include "interp_pair.hpp"
#include "model.hpp"
#include "sbp_operator.hpp"

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = (char*)std::malloc(s.size() + 1);
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

sbpi_status classify_exception(const std::exception& e) {
  g_last_error = e.what();
  std::string w = e.what();
  if (w.find("too small") != std::string::npos) return SBPI_ERR_GRID_TOO_SMALL;
  if (w.find("unknown key") != std::string::npos) return SBPI_ERR_INVALID_ARG;
  if (w.find("unsupported") != std::string::npos || w.find("unknown") != std::string::npos)
    return SBPI_ERR_UNSUPPORTED;
  if (w.find("mismatch") != std::string::npos || w.find("dimension") != std::string::npos)
    return SBPI_ERR_DIMENSION;
  if (w.find("nonphysical") != std::string::npos || w.find("non-finite") != std::string::npos ||
      w.find("dgeev") != std::string::npos)
    return SBPI_ERR_NUMERIC;
  return SBPI_ERR_INVALID_ARG;
}

template <typename F>
sbpi_status guarded(F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return classify_exception(e);
  } catch (...) {
    g_last_error = "unknown error";
    return SBPI_ERR_INTERNAL;
  }
}

}  // namespace

namespace {

sbp::EulerConfig euler_config_from_json(const sbp::json& j) {
  sbp::EulerConfig cfg;
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::string k = it.key();
    if (k != "order_left" && k != "order_right" && k != "kind" && k != "coupling" && k != "Ms" &&
        k != "M" && k != "tend" && k != "cfl" && k != "cfl_per_M" && k != "jobs" && k != "vortex")
      throw std::invalid_argument("vortex config: unknown key '" + k + "'");
  }
  cfg.order_left = j.value("order_left", 4);
  cfg.order_right = j.value("order_right", 4);
  cfg.kind = sbp::interp_kind_from_string(j.value("kind", "p4"));
  cfg.mode = sbp::coupling_mode_from_string(j.value("coupling", "characteristic"));
  cfg.cfl = j.value("cfl", 0.5);
  if (j.contains("vortex")) {
    const auto& v = j.at("vortex");
    for (auto it = v.begin(); it != v.end(); ++it) {
      std::string k = it.key();
      if (k != "mach" && k != "angle_deg" && k != "x0" && k != "y0" && k != "strength" &&
          k != "radius" && k != "gamma")
        throw std::invalid_argument("vortex config: unknown key 'vortex." + k + "'");
    }
    cfg.vortex.mach = v.value("mach", cfg.vortex.mach);
    cfg.vortex.angle_deg = v.value("angle_deg", cfg.vortex.angle_deg);
    cfg.vortex.x0 = v.value("x0", cfg.vortex.x0);
    cfg.vortex.y0 = v.value("y0", cfg.vortex.y0);
    cfg.vortex.strength = v.value("strength", cfg.vortex.strength);
    cfg.vortex.radius = v.value("radius", cfg.vortex.radius);
    cfg.vortex.gamma = v.value("gamma", cfg.vortex.gamma);
  }
  return cfg;
}

}  // namespace

struct sbpi_operator {
  sbp::SbpOperator1D op;
};
struct sbpi_interp {
  sbp::InterpolationPair pair;
};

extern "C" {

const char* sbpi_last_error(void) { return g_last_error.c_str(); }

void sbpi_string_free(char* s) { std::free(s); }

sbpi_status sbpi_operator_create(int order, long npts, double h, sbpi_operator** out) {
  if (!out) {
    g_last_error = "null output pointer";
    return SBPI_ERR_INVALID_ARG;
  }
  return guarded([&] {
    *out = new sbpi_operator{sbp::SbpOperator1D(order, npts, h)};
    return SBPI_OK;
  });
}

void sbpi_operator_destroy(sbpi_operator* op) { delete op; }

sbpi_status sbpi_operator_apply_d1(const sbpi_operator* op, const double* x, size_t n, double* y) {
  if (!op || !x || !y) {
    g_last_error = "null argument";
    return SBPI_ERR_INVALID_ARG;
  }
  return guarded([&] {
    op->op.apply_d1(std::span<const double>(x, n), std::span<double>(y, n));
    return SBPI_OK;
  });
}

sbpi_status sbpi_operator_verify(const sbpi_operator* op, char** json_out) {
  if (!op || !json_out) {
    g_last_error = "null argument";
    return SBPI_ERR_INVALID_ARG;
  }
  return guarded([&] {
    auto rep = sbp::verify_sbp_property(op->op);
    *json_out = dup_string(rep.to_json().dump(2));
    return rep.pass ? SBPI_OK : SBPI_ERR_VERIFICATION_FAILED;
  });
}

sbpi_status sbpi_operator_dump(const sbpi_operator* op, char** json_out) {
  if (!op || !json_out) {
    g_last_error = "null argument";
    return SBPI_ERR_INVALID_ARG;
  }
  return guarded([&] {
    *json_out = dup_string(op->op.dump_json().dump(2));
    return SBPI_OK;
  });
}

sbpi_status sbpi_interp_create(const char* kind, long mc, double hc, sbpi_interp** out) {
  if (!kind || !out) {
    g_last_error = "null argument";
    return SBPI_ERR_INVALID_ARG;
  }
  return guarded([&] {
    *out = new sbpi_interp{sbp::load_interp_pair(sbp::interp_kind_from_string(kind), mc, hc)};
    return SBPI_OK;
  });
}

sbpi_status sbpi_interp_create_identity(int order, long m, double h, sbpi_interp** out) {
  if (!out) {
    g_last_error = "null argument";
    return SBPI_ERR_INVALID_ARG;
  }
  return guarded([&] {
    *out = new sbpi_interp{sbp::make_identity_pair(order, m, h)};
    return SBPI_OK;
  });
}

void sbpi_interp_destroy(sbpi_interp* p) { delete p; }

sbpi_status sbpi_interp_verify(const sbpi_interp* p, char** json_out, int* pass_out) {
  if (!p || !json_out) {
    g_last_error = "null argument";
    return SBPI_ERR_INVALID_ARG;
  }
  return guarded([&] {
    auto sbp_rep = sbp::verify_sbp_preserving(p->pair);
    auto acc_rep = sbp::verify_accuracy(p->pair);
    auto psd_rep = sbp::check_inter2(p->pair);
    sbp::ordered_json j;
    j["kind"] = sbp::to_string(p->pair.kind);
    j["mc"] = p->pair.mc;
    j["sbp_preserving"] = sbp_rep.to_json();
    j["accuracy"] = acc_rep.to_json();
    j["inter2"] = psd_rep.to_json();
    bool pass = sbp_rep.pass && acc_rep.pass;
    j["pass"] = pass;
    *json_out = dup_string(j.dump(2));
    if (pass_out) *pass_out = pass ? 1 : 0;
    return pass ? SBPI_OK : SBPI_ERR_VERIFICATION_FAILED;
  });
}

sbpi_status sbpi_interp_dump(const sbpi_interp* p, char** json_out) {
  if (!p || !json_out) {
    g_last_error = "null argument";
    return SBPI_ERR_INVALID_ARG;
  }
  return guarded([&] {
    *json_out = dup_string(p->pair.dump_json().dump(2));
    return SBPI_OK;
  });
}

sbpi_status sbpi_build_interp(int p, int order_coarse, int order_fine, int q, int r, int s, long mc,
                              double hc, int ratio, char** json_out) {
  if (!json_out) {
    g_last_error = "null argument";
    return SBPI_ERR_INVALID_ARG;
  }
  return guarded([&] {
    sbp::BuildResult res = sbp::build_interp(p, order_coarse, order_fine, {q, r, s}, mc, hc, ratio);
    auto ver1 = sbp::verify_sbp_preserving(res.pair);
    auto ver2 = sbp::verify_accuracy(res.pair);
    sbp::ordered_json j;
    j["p"] = p;
    j["shape"] = {{"q", q}, {"r", r}, {"s", s}};
    j["free_params_used"] = res.free_params_used;
    j["ls_steps"] = res.ls_steps;
    j["residual_norm"] = res.residual_norm;
    j["sbp_preserving"] = ver1.to_json();
    j["accuracy"] = ver2.to_json();
    j["table"] = res.pair.dump_json();
    bool pass = ver1.pass && ver2.pass;
    j["pass"] = pass;
    *json_out = dup_string(j.dump(2));
    return pass ? SBPI_OK : SBPI_ERR_VERIFICATION_FAILED;
  });
}

sbpi_status sbpi_spectrum_run(const char* config_json, char** summary_out, char** csv_out) {
  if (!config_json || !summary_out) {
    g_last_error = "null argument";
    return SBPI_ERR_INVALID_ARG;
  }
  return guarded([&] {
    sbp::json cfgj = sbp::json::parse(config_json);
    sbp::ModelConfig cfg = sbp::model_config_from_json(cfgj);
    sbp::SemiDiscreteSystem sys = sbp::assemble_model_operator(cfg);
    sbp::SpectrumReport rep = sbp::compute_spectrum(sys, cfg.tolerance);
    sbp::EnergyCheck ec = sbp::energy_matrix_check(sys);
    sbp::ordered_json j = rep.summary_json();
    j["n_unknowns"] = sys.n;
    j["h_fine"] = sys.h_fine;
    j["energy_matrix"] = {{"max_eig_support", ec.max_eig_support},
                          {"max_interface_entry", ec.max_interface_entry},
                          {"support_size", ec.support_size},
                          {"negative_semidefinite", ec.negative_semidefinite}};
    *summary_out = dup_string(j.dump(2));
    if (csv_out) *csv_out = dup_string(rep.csv());
    return rep.verdict == sbp::Verdict::Stable ? SBPI_OK : SBPI_ERR_VERIFICATION_FAILED;
  });
}

sbpi_status sbpi_vortex_run(const char* config_json, char** report_out) {
  if (!config_json || !report_out) {
    g_last_error = "null argument";
    return SBPI_ERR_INVALID_ARG;
  }
  return guarded([&] {
    sbp::json cfgj = sbp::json::parse(config_json);
    sbp::EulerConfig base = euler_config_from_json(cfgj);
    std::vector<long> Ms;
    if (cfgj.contains("Ms"))
      for (auto& m : cfgj.at("Ms")) Ms.push_back(m.get<long>());
    else
      Ms.push_back(cfgj.value("M", 51L));
    double tend = cfgj.value("tend", 1.0);
    int jobs = cfgj.value("jobs", 1);
    std::vector<double> cfl_per_M;
    if (cfgj.contains("cfl_per_M"))
      for (auto& c : cfgj.at("cfl_per_M")) cfl_per_M.push_back(c.get<double>());
    sbp::ConvergenceReport rep = sbp::run_convergence(base, Ms, tend, jobs, cfl_per_M);
    sbp::ordered_json j;
    j["order_left"] = base.order_left;
    j["order_right"] = base.order_right;
    j["kind"] = sbp::to_string(base.kind);
    j["coupling"] = sbp::to_string(base.mode);
    j["tend"] = tend;
    j.update(rep.to_json());
    *report_out = dup_string(j.dump(2));
    return SBPI_OK;
  });
}

sbpi_status sbpi_vortex_fields(const char* config_json, char** csv_out) {
  if (!config_json || !csv_out) {
    g_last_error = "null argument";
    return SBPI_ERR_INVALID_ARG;
  }
  return guarded([&] {
    sbp::json cfgj = sbp::json::parse(config_json);
    sbp::EulerConfig cfg = euler_config_from_json(cfgj);
    cfg.M = cfgj.value("M", 51L);
    double tend = cfgj.value("tend", 1.0);
    sbp::TwoBlockEuler solver(cfg);
    solver.set_initial(0.0);
    solver.integrate(tend);
    *csv_out = dup_string(solver.dump_fields_csv());
    return SBPI_OK;
  });
}

}  // extern "C"
