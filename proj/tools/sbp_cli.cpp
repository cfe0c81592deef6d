// Command-line driver for the sbpinterp library. Subcommands:
//   verify-ops   verify an interpolation pair (or a 1-D SBP operator) and emit
//                the verification report
//   build-interp run the construction procedure and emit the derived table
//   spectrum     assemble the two-block model problem, compute its spectrum
//   vortex       run the Euler-vortex convergence study
//
// Exit codes: 0 pass, 2 verification failure / instability detected, 1 error.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sbpinterp.h"

namespace {

std::string out_path(const std::string& p) {
  if (p.empty()) return p;
  const char* dir = std::getenv("SBP_OUTPUT_DIR");
  std::filesystem::path fp(p);
  if (dir && *dir && fp.is_relative()) return (std::filesystem::path(dir) / fp).string();
  return p;
}

void write_or_print(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content << "\n";
    return;
  }
  std::string full = out_path(path);
  std::ofstream os(full, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file: " + full);
  os << content;
}

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

struct StringGuard {
  char* s = nullptr;
  ~StringGuard() { sbpi_string_free(s); }
};

int fail(const char* what) {
  std::cerr << what << ": " << sbpi_last_error() << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SBP operators, SBP-preserving interface interpolation, and their verification"};
  app.require_subcommand(1);

  // ---- verify-ops ----
  auto* vops = app.add_subcommand("verify-ops", "verify an interpolation pair or SBP operator");
  std::string kind, vo_out, vo_dump;
  long mc = 16;
  double hc = 1.0;
  int sbp_order = 0;
  long sbp_n = 0;
  vops->add_option("--kind", kind, "pair kind: p2|p4|p6|p8|p4_to_2|p8_to_4|nonsbp_p4|nonsbp_p6|identity");
  vops->add_option("--mc", mc, "coarse block size M (points minus one)");
  vops->add_option("--hc", hc, "coarse grid spacing");
  vops->add_option("--sbp-order", sbp_order, "verify a 1-D SBP operator of this order instead");
  vops->add_option("--n", sbp_n, "operator size N (points minus one)");
  vops->add_option("--out", vo_out, "write the report JSON here (default stdout)");
  vops->add_option("--dump", vo_dump, "also dump the operator/table JSON to this file");

  // ---- build-interp ----
  auto* bi = app.add_subcommand("build-interp", "run the interpolation construction procedure");
  int bp = 2, bratio = 2, boc = -1, bof = -1;
  long bmc = 16;
  std::string bshape = "1,3,1", bout, borders;
  bi->add_option("--p", bp, "declared accuracy order")->required();
  bi->add_option("--shape", bshape, "closure shape q,r,s");
  bi->add_option("--orders", borders, "coarse:fine SBP orders for the norms (default p:p)");
  bi->add_option("--mc", bmc, "coarse size to instantiate");
  bi->add_option("--ratio", bratio, "grid ratio (1 or 2)");
  bi->add_option("--out", bout, "write table JSON here");

  // ---- spectrum ----
  auto* sp = app.add_subcommand("spectrum", "two-block model problem eigenvalue analysis");
  std::string sp_cfg, sp_out, sp_summary;
  sp->add_option("--config", sp_cfg, "run configuration JSON file")->required();
  sp->add_option("--out", sp_out, "write eigenvalues CSV here");
  sp->add_option("--summary", sp_summary, "write summary JSON here (default stdout)");

  // ---- vortex ----
  auto* vx = app.add_subcommand("vortex", "Euler vortex convergence study");
  std::string vx_order = "4", vx_coupling = "char", vx_out, vx_fields, vx_ms = "51,101,151";
  double vx_tend = 1.0, vx_cfl = 0.0;
  std::string vx_cfls;
  int vx_jobs = 1;
  vx->add_option("--order", vx_order, "SBP order p, or coarse:fine as pL:pR (e.g. 8:4)");
  vx->add_option("--M", vx_ms, "comma-separated coarse sizes (points per side)");
  vx->add_option("--tend", vx_tend, "final time");
  vx->add_option("--coupling", vx_coupling, "interface coupling: char|quad|nondissipative");
  vx->add_option("--cfl", vx_cfl, "CFL number (default per order)");
  vx->add_option("--cfl-per-M", vx_cfls, "comma-separated CFL per refinement level");
  vx->add_option("--jobs", vx_jobs, "parallel independent runs");
  vx->add_option("--out", vx_out, "write ConvergenceReport JSON here");
  vx->add_option("--dump-fields", vx_fields, "write final-state field CSV (single-M runs)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (vops->parsed()) {
      if (sbp_order > 0) {
        sbpi_operator* op = nullptr;
        if (sbpi_operator_create(sbp_order, sbp_n + 1, hc, &op) != SBPI_OK)
          return fail("operator construction failed");
        StringGuard rep, dmp;
        sbpi_status st = sbpi_operator_verify(op, &rep.s);
        if (st != SBPI_OK && st != SBPI_ERR_VERIFICATION_FAILED) {
          sbpi_operator_destroy(op);
          return fail("verification error");
        }
        write_or_print(vo_out, rep.s);
        if (!vo_dump.empty()) {
          if (sbpi_operator_dump(op, &dmp.s) != SBPI_OK) {
            sbpi_operator_destroy(op);
            return fail("dump failed");
          }
          write_or_print(vo_dump, dmp.s);
        }
        sbpi_operator_destroy(op);
        return st == SBPI_OK ? 0 : 2;
      }
      if (kind.empty()) {
        std::cerr << "verify-ops: provide --kind or --sbp-order\n";
        return 1;
      }
      sbpi_interp* pair = nullptr;
      sbpi_status st = kind == "identity" ? sbpi_interp_create_identity(4, mc, hc, &pair)
                                          : sbpi_interp_create(kind.c_str(), mc, hc, &pair);
      if (st != SBPI_OK) return fail("pair construction failed");
      StringGuard rep, dmp;
      int pass = 0;
      st = sbpi_interp_verify(pair, &rep.s, &pass);
      if (st != SBPI_OK && st != SBPI_ERR_VERIFICATION_FAILED) {
        sbpi_interp_destroy(pair);
        return fail("verification error");
      }
      write_or_print(vo_out, rep.s);
      if (!vo_dump.empty()) {
        if (sbpi_interp_dump(pair, &dmp.s) != SBPI_OK) {
          sbpi_interp_destroy(pair);
          return fail("dump failed");
        }
        write_or_print(vo_dump, dmp.s);
      }
      sbpi_interp_destroy(pair);
      return pass ? 0 : 2;
    }

    if (bi->parsed()) {
      int q, r, s;
      if (std::sscanf(bshape.c_str(), "%d,%d,%d", &q, &r, &s) != 3) {
        std::cerr << "build-interp: --shape expects q,r,s\n";
        return 1;
      }
      if (!borders.empty()) {
        auto colon = borders.find(':');
        if (colon == std::string::npos) {
          std::cerr << "build-interp: --orders expects coarse:fine\n";
          return 1;
        }
        boc = std::stoi(borders.substr(0, colon));
        bof = std::stoi(borders.substr(colon + 1));
      }
      if (boc < 0) boc = bp;
      if (bof < 0) bof = bp;
      StringGuard rep;
      sbpi_status st = sbpi_build_interp(bp, boc, bof, q, r, s, bmc, hc, bratio, &rep.s);
      if (st != SBPI_OK && st != SBPI_ERR_VERIFICATION_FAILED) return fail("build failed");
      write_or_print(bout, rep.s ? rep.s : "");
      return st == SBPI_OK ? 0 : 2;
    }

    if (sp->parsed()) {
      std::string cfg = read_file(sp_cfg);
      StringGuard summary, csv;
      sbpi_status st = sbpi_spectrum_run(cfg.c_str(), &summary.s, sp_out.empty() ? nullptr : &csv.s);
      if (st != SBPI_OK && st != SBPI_ERR_VERIFICATION_FAILED) return fail("spectrum run failed");
      write_or_print(sp_summary, summary.s);
      if (!sp_out.empty()) write_or_print(sp_out, csv.s);
      return st == SBPI_OK ? 0 : 2;
    }

    if (vx->parsed()) {
      int ol = 4, orr = 4;
      std::string kindstr;
      auto colon = vx_order.find(':');
      if (colon == std::string::npos) {
        ol = orr = std::stoi(vx_order);
        kindstr = "p" + vx_order;
      } else {
        ol = std::stoi(vx_order.substr(0, colon));
        orr = std::stoi(vx_order.substr(colon + 1));
        kindstr = "p" + std::to_string(ol) + "_to_" + std::to_string(orr);
      }
      std::ostringstream cfg;
      cfg << "{\"order_left\":" << ol << ",\"order_right\":" << orr << ",\"kind\":\"" << kindstr
          << "\",\"coupling\":\"" << vx_coupling << "\",\"tend\":" << vx_tend;
      if (vx_cfl > 0) cfg << ",\"cfl\":" << vx_cfl;
      cfg << ",\"Ms\":[" << vx_ms << "]";
      if (!vx_cfls.empty()) cfg << ",\"cfl_per_M\":[" << vx_cfls << "]";
      cfg << ",\"jobs\":" << vx_jobs << "}";
      if (!vx_fields.empty()) {
        if (vx_ms.find(',') != std::string::npos) {
          std::cerr << "vortex: --dump-fields needs a single --M value\n";
          return 1;
        }
        std::string cfg1 = cfg.str();
        cfg1.back() = ',';
        cfg1 += "\"M\":" + vx_ms + "}";
        StringGuard csv;
        if (sbpi_vortex_fields(cfg1.c_str(), &csv.s) != SBPI_OK) return fail("vortex field run failed");
        write_or_print(vx_fields, csv.s);
      }
      StringGuard rep;
      if (sbpi_vortex_run(cfg.str().c_str(), &rep.s) != SBPI_OK) return fail("vortex run failed");
      write_or_print(vx_out, rep.s);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
