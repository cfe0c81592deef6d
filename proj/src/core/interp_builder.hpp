#pragma once
// Construction procedure for SBP-preserving interpolation pairs: impose the
// structure, define I_C2F through the SBP-preserving relation, solve the
// accuracy conditions exactly, then fix remaining free parameters by
// sequential exact least squares on the error of successive monomial orders.

#include "interp_pair.hpp"

namespace sbp {

struct StencilShape {
  int q = 0;  // boundary rows of I_F2C
  int r = 0;  // boundary columns of I_F2C
  int s = 0;  // interior stencil a_0..a_{2s}
};

struct BuildResult {
  InterpolationPair pair;
  double residual_norm = 0.0;   // accuracy-system residual (0 when consistent)
  int free_params_used = 0;     // parameters fixed by the L2 optimization
  int ls_steps = 0;             // number of least-squares stages run
};

// p: declared accuracy; norms given by SBP orders on the coarse/fine sides;
// ratio 2 builds the 2:1 pair, ratio 1 the conforming square operator.
// The result is instantiated at coarse size mc with spacing hc.
BuildResult build_interp(int p, int order_coarse, int order_fine, const StencilShape& shape,
                         long mc, double hc, int ratio = 2);

}  // namespace sbp
