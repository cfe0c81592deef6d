#include "interp_builder.hpp"

#include <cmath>

namespace sbp {

namespace {

Rat ipow(long base, int k) {
  Rat v = 1;
  for (int t = 0; t < k; ++t) v *= base;
  return v;
}

}  // namespace

BuildResult build_interp(int p, int order_coarse, int order_fine, const StencilShape& shape,
                         long mc, double hc, int ratio) {
  const int q = shape.q, r = shape.r, s = shape.s;
  if (q < 1 || r < 1 || s < 0 || r < 2 * s + 1)
    throw std::invalid_argument("build_interp: invalid stencil shape");
  if (ratio != 1 && ratio != 2) throw std::invalid_argument("build_interp: ratio must be 1 or 2");
  static const std::vector<Rat> trivial;  // order 0: all-ones norm
  const auto& wcb = order_coarse == 0 ? trivial : norm_boundary_weights(order_coarse);
  const auto& wfb = order_fine == 0 ? trivial : norm_boundary_weights(order_fine);
  auto wc = [&](long j) { return j < (long)wcb.size() ? wcb[j] : Rat(1); };
  auto wf = [&](long i) { return i < (long)wfb.size() ? wfb[i] : Rat(1); };

  // unknowns: closure q*r, then interior a_0..a_{2s}
  const long nunk = (long)q * r + (2 * s + 1);
  auto aidx = [&](int i, int j) { return (long)i * r + j; };
  auto iidx = [&](int m) { return (long)q * r + m; };

  // F2C half-line entry as (unknown, coeff) with coeff 1, or none
  auto f2c_unknown = [&](long i, long j) -> long {
    if (i < q) return (j < r) ? aidx((int)i, (int)j) : -1;
    long d = j - ratio * i;
    if (std::abs(d) <= (ratio == 2 ? 2 * s : s)) return iidx((int)std::abs(d));
    return -1;
  };

  const int bexact = (p - 1) / 2;
  const long fdepth =
      std::max<long>({(long)r, (long)wfb.size(), ratio * ((long)wcb.size() - 1) + 2 * s + 1});
  const long jmax = fdepth / ratio + q + s + 2;

  std::vector<std::vector<std::pair<long, Rat>>> eq_rows;  // coeff rows
  RatVec eq_rhs;

  auto add_row = [&](std::vector<std::pair<long, Rat>>&& row, Rat rhs) {
    eq_rows.push_back(std::move(row));
    eq_rhs.push_back(rhs);
  };

  // interior accuracy of both operators, k = 0..p-1
  for (int k = 0; k < p; ++k) {
    if (ratio == 2) {
      // C2F interior rows split by parity: sum_{m even} 2 a_|m| m^k = delta_k0,
      // same for odd offsets; these imply the F2C interior condition.
      std::map<long, Rat> even, odd;
      for (int m = -2 * s; m <= 2 * s; ++m)
        ((m % 2 == 0) ? even : odd)[iidx(std::abs(m))] += 2 * ipow(m, k);
      add_row({even.begin(), even.end()}, k == 0 ? Rat(1) : Rat(0));
      add_row({odd.begin(), odd.end()}, k == 0 ? Rat(1) : Rat(0));
    } else {
      std::vector<std::pair<long, Rat>> row;
      std::map<long, Rat> acc;
      for (int m = -s; m <= s; ++m) acc[iidx(std::abs(m))] += ipow(m, k);
      row.assign(acc.begin(), acc.end());
      add_row(std::move(row), k == 0 ? Rat(1) : Rat(0));
    }
  }
  // F2C closure rows, k <= bexact
  for (int i = 0; i < q; ++i)
    for (int k = 0; k <= bexact; ++k) {
      std::vector<std::pair<long, Rat>> row;
      for (int j = 0; j < r; ++j) row.emplace_back(aidx(i, j), ipow(j, k));
      add_row(std::move(row), ipow((long)ratio * i, k));
    }
  // C2F closure rows, k <= bexact
  for (long i = 0; i < fdepth; ++i)
    for (int k = 0; k <= bexact; ++k) {
      std::map<long, Rat> acc;
      for (long j = 0; j <= jmax; ++j) {
        long u = f2c_unknown(j, i);
        if (u < 0) continue;
        Rat coef = Rat(ratio) * wc(j) / wf(i) * ipow(ratio * j, k);
        acc[u] += coef;
      }
      std::vector<std::pair<long, Rat>> row(acc.begin(), acc.end());
      add_row(std::move(row), ipow(i, k));
    }

  RatMat A((long)eq_rows.size(), nunk);
  for (size_t i = 0; i < eq_rows.size(); ++i)
    for (auto& [u, c] : eq_rows[i]) A((long)i, u) += c;
  AffineSpace sp;
  try {
    sp = solve_linear_system(A, eq_rhs);
  } catch (const std::runtime_error&) {
    throw std::runtime_error("build_interp: accuracy system infeasible for this shape");
  }

  BuildResult out;
  out.free_params_used = (int)sp.dim();

  const long m_ref = std::max<long>({(long)r, 2 * q, 2 * (long)wcb.size()});
  int k = bexact + 1;
  while (sp.dim() > 0 && k <= p + 2 * s + 4) {
    std::vector<std::vector<std::pair<long, Rat>>> rrows;
    RatVec roff;
    for (int i = 0; i < q; ++i) {  // e_c closure rows
      std::vector<std::pair<long, Rat>> row;
      for (int j = 0; j < r; ++j) row.emplace_back(aidx(i, j), ipow(j, k));
      rrows.push_back(std::move(row));
      roff.push_back(-ipow((long)ratio * i, k));
    }
    for (long i = 0; i < fdepth; ++i) {  // e_f closure rows
      std::map<long, Rat> acc;
      for (long j = 0; j <= jmax; ++j) {
        long u = f2c_unknown(j, i);
        if (u < 0) continue;
        acc[u] += Rat(ratio) * wc(j) / wf(i) * ipow(ratio * j, k);
      }
      rrows.emplace_back(acc.begin(), acc.end());
      roff.push_back(-ipow(i, k));
    }
    if (k >= p) {  // interior stencil residuals, scaled by the reference row count
      if (ratio == 2) {
        std::map<long, Rat> even, odd;
        for (int m = -2 * s; m <= 2 * s; ++m)
          ((m % 2 == 0) ? even : odd)[iidx(std::abs(m))] += Rat(m_ref) * 2 * ipow(m, k);
        rrows.emplace_back(even.begin(), even.end());
        roff.push_back(0);
        rrows.emplace_back(odd.begin(), odd.end());
        roff.push_back(0);
      } else {
        std::map<long, Rat> acc;
        for (int m = -s; m <= s; ++m) acc[iidx(std::abs(m))] += Rat(m_ref) * ipow(m, k);
        rrows.emplace_back(acc.begin(), acc.end());
        roff.push_back(0);
      }
    }
    RatMat C((long)rrows.size(), nunk);
    RatVec d(rrows.size(), Rat(0));
    for (size_t i = 0; i < rrows.size(); ++i) {
      for (auto& [u, c] : rrows[i]) C((long)i, u) += c;
      d[i] = roff[i];  // residual = C x - target; roff holds -target
    }
    AffineSpace next = least_squares_restrict(sp, C, d);
    if (next.dim() < sp.dim()) ++out.ls_steps;
    sp = next;
    ++k;
  }
  if (sp.dim() != 0)
    throw std::runtime_error("build_interp: free parameters remain after the optimization sweep");

  RatMat closure(q, r);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < r; ++j) closure(i, j) = sp.x0[aidx(i, j)];
  std::vector<Rat> interior(2 * s + 1);
  for (int m = 0; m <= 2 * s; ++m) interior[m] = sp.x0[iidx(m)];

  if (ratio == 1) {
    if (!(q == 1 && r == 1 && s == 0))
      throw std::invalid_argument("build_interp: ratio 1 supports shape (1,1,0)");
    if (closure(0, 0) != 1 || interior[0] != 1)
      throw std::runtime_error("build_interp: ratio-1 construction did not yield the identity");
    InterpolationPair pr;
    pr.kind = InterpKind::IDENTITY;
    pr.p = p;
    pr.order_coarse = order_coarse;
    pr.order_fine = order_fine;
    pr.mc = pr.mf = mc;
    pr.hc = pr.hf = hc;
    pr.exact = true;
    pr.sbp_preserving = true;
    pr.boundary_exactness = p;
    pr.wc.assign(mc + 1, Rat(1));
    for (size_t i = 0; i < wcb.size(); ++i) {
      pr.wc[i] = wcb[i];
      pr.wc[mc - i] = wcb[i];
    }
    pr.wf = pr.wc;
    pr.f2c_q = RatMat::identity(mc + 1);
    pr.c2f_q = pr.f2c_q;
    pr.f2c = Eigen::MatrixXd::Identity(mc + 1, mc + 1);
    pr.c2f = pr.f2c;
    out.pair = pr;
    return out;
  }

  InterpKind label = p == 2 ? InterpKind::P2 : p == 4 ? InterpKind::P4 : p == 6 ? InterpKind::P6
                                                                                : InterpKind::P8;
  out.pair = assemble_pair(label, p, order_coarse, order_fine, q, r, s, closure, interior, mc, hc);
  return out;
}

}  // namespace sbp
