#pragma once

#include <string>
#include <vector>

#include "twobridge/algebra.hpp"
#include "twobridge/knotgroup.hpp"

namespace twobridge {

struct KnotParams {
    int m = 0, n = 0; // K = J(2m, 2n), mn != 0
};

// A point on the Riley variety with cached matrices and derived scalars.
struct NonabelianRep {
    KnotParams params;
    cplx x;     // tr rho(a)
    cplx s;     // meridian eigenvalue, s^2 - xs + 1 = 0 (principal branch)
    cplx y;     // tr rho(ab^-1)
    cplx e;     // s^2 + s^-2 = x^2 - 2
    cplx z;     // tr rho(w)
    cplx alpha; // 1 + (y-e) S_{m-1}(y) (S_m(y) - S_{m-1}(y))
    Mat2 rho_a, rho_b;
    Mat2 rho_w;     // closed-form entries (recomputed by letters in tests)
    Mat2 rho_w_rev; // rho of the reversed word
    double riley_residual = 0;
    std::vector<std::string> flags; // e.g. "multiplicity_cluster"
};

// rho(a) = [[s,1],[0,1/s]], rho(b) = [[s,0],[2-y,1/s]],
// s = (x + principal sqrt(x^2-4))/2.
void rep_matrices(cplx x, cplx y, Mat2& rho_a, Mat2& rho_b, cplx& s);

cplx trace_z(int m, cplx x, cplx y); // 2 + (y-2)(y+2-x^2) S_{m-1}(y)^2

// Riley function phi(y) = S_n(z) - alpha S_{n-1}(z).
cplx riley_value(int m, int n, cplx x, cplx y);

// Same function assembled as a Poly in y by composition. |m|,|n| <= 8.
Poly riley_polynomial(int m, int n, cplx x);

struct RootEnumeration {
    std::vector<NonabelianRep> reps;
    std::vector<cplx> excluded; // |y-2| <= 1e-6, not representations
};

// Roots of the Riley polynomial, each polished (Newton on phi by recurrence,
// then on the relator defect) and packaged as a NonabelianRep.
// Ordering: lexicographic by (Re y, Im y) after rounding to 1e-10.
RootEnumeration riley_roots(int m, int n, cplx x);

// max entry magnitude of rho(w^n) rho(a) - rho(b) rho(w^n), with rho(w)
// letter-multiplied and the power taken by mat2_power. Does not use phi.
double rep_residual(const NonabelianRep& rep);
double rep_residual(int m, int n, cplx x, cplx y);

Word longitude_word(int m, int n); // lambda = reverse(w)^n w^n

cplx longitude_trace_closed(const NonabelianRep& rep);
cplx longitude_trace_direct(const NonabelianRep& rep);

// (1,1) entry of rho(lambda); rho(lambda) is upper triangular since it
// commutes with rho(a).
cplx longitude_eigenvalue(const NonabelianRep& rep);

// Construct a rep at a given (already accurate) root y. Used internally by
// riley_roots and by the CLI perturbation hook.
NonabelianRep make_rep(int m, int n, cplx x, cplx y);

} // namespace twobridge
