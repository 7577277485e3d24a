#pragma once

#include "twobridge/riley.hpp"

namespace twobridge {

struct TapPolynomial {
    enum class Source { closed_form, oracle_dr_da, oracle_dr_db };
    LaurentPoly poly;
    Source source = Source::closed_form;
};

enum class FoxColumn { da, db };

// Theorem shape: c1 = c_{-1} = D_m(y) D_n(z),
// c0 = -x c1 + x S_{m-1}(y) S_{n-1}(z); exponents exactly {-1,0,1}.
TapPolynomial tap_closed(const NonabelianRep& rep);

// Fox-calculus determinant quotient det Phi(dr/d*) / det Phi(gen - 1),
// normalized to the centered (symmetric-support) unit representative.
TapPolynomial tap_oracle(const NonabelianRep& rep, FoxColumn column);

// Equality up to t^{2k}: even min-exponent difference, then coefficients
// within tol * max coefficient magnitude after aligning.
bool laurent_equal_mod_t2(const LaurentPoly& p, const LaurentPoly& q, double tol);

struct OmegaPair {
    Mat2 omega1;  // constant in t
    Mat2L omega2; // Laurent in t
    cplx beta;    // S_m(y) - S_{m-1}(y)
    cplx gamma;   // S_m(y) - (y-1) S_{m-1}(y)
};

OmegaPair omega_matrices(const NonabelianRep& rep);

struct SurgerySlope {
    long p = 0, q = 0; // coprime, not both zero
};

struct TorsionResult {
    enum class Kind { knot, surgered_manifold };
    cplx value;
    Kind kind = Kind::knot;
    // surgery bookkeeping (surgered_manifold only)
    SurgerySlope slope;
    double extension_residual = 0;
    bool extension_verified = false;
};

// tau(K) = Delta(1) = (2-x) D_m(y) D_n(z) + x S_{m-1}(y) S_{n-1}(z), x != 2.
TorsionResult torsion_knot(const NonabelianRep& rep);

// Surgered-manifold torsion; computes both the closed form and
// tau(K)/(2 - tr rho(lambda)), asserts 1e-8 relative agreement, returns the
// closed form. Requires x outside {0, 2}.
TorsionResult surgery_torsion(const NonabelianRep& rep, const SurgerySlope& slope);

// max(|s^p l^q - 1|, max entry of rho(a)^p rho(lambda)^q - I); 0 means the
// rep extends over the filling.
double surgery_extension_residual(const NonabelianRep& rep, const SurgerySlope& slope);

// Damped Newton on (x,y) -> (riley_value, s^p l^q - 1) from an initial guess;
// internally iterates in (s,y) since s(x) has a branch point at x = +-2.
void refine_surgery_point(int m, int n, const SurgerySlope& slope,
                          cplx x0, cplx y0, cplx& x_out, cplx& y_out);

// Fox oracle instantiated at t=1 (Johnson's formula); used by the acceptance
// checks where the Laurent coefficient sum is too noisy.
cplx torsion_oracle_t1(const NonabelianRep& rep, FoxColumn column = FoxColumn::da);

} // namespace twobridge
