#pragma once

#include "twobridge/algebra.hpp"

namespace twobridge {

// Chebyshev-like sequence of the second kind:
//   S_0 = 1, S_1 = v, S_k = v S_{k-1} - S_{k-2} for all integers k,
// so S_{-1} = 0 and S_{-k} = -S_{k-2}.
cplx cheb_s(int k, cplx v);

// P_k = sum_{i=0}^k S_i, defined for k >= -1 (P_{-1} = 0).
cplx cheb_p(int k, cplx v);

// D_k = (S_k - S_{k-2} - 2)/(v-2), evaluated singularity-free as
// P_{k-1} + P_{k-2}; D_0 = 0, D_{-k} = D_k, D_k(2) = k^2.
cplx cheb_d(int k, cplx v);

// S_k as a polynomial in v (integer coefficients), |k| <= 64.
Poly cheb_s_poly(int k);

// S_k and dS_k/dv together; used by Newton polish loops.
void cheb_s_pair(int k, cplx v, cplx& s, cplx& ds);

} // namespace twobridge
