// Internal root-polishing machinery shared by riley.cpp. Not installed.
#pragma once

#include "twobridge/chebyshev.hpp"
#include "twobridge/riley.hpp"

namespace twobridge::detail {

// phi and dphi/dy at fixed x
void riley_val_grad(int m, int n, cplx x, cplx y, cplx& phi, cplx& dphi);

// closed-form rho(w) from the Chebyshev entry formulas
Mat2 rho_w_closed(int m, cplx s, cplx y);
Mat2 rho_w_rev_closed(int m, cplx s, cplx y);

// rho(w) and its y-derivative at fixed s
void rho_w_closed_d(int m, cplx s, cplx y, Mat2& W, Mat2& dW);

// max entrywise magnitude of rho(w^n)rho(a) - rho(b)rho(w^n) built from the
// closed-form rho(w); cheap enough to drive Newton
double defect_score(int m, int n, cplx s, cplx y);

// two-stage Newton: phi(y) first, then the defect entry with the steepest
// y-derivative (phi is too flat near its roots to place y below ~1e-11)
cplx polish_root(int m, int n, cplx x, cplx s, cplx y0);

} // namespace twobridge::detail
