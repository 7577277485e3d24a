#pragma once

#include <complex>
#include <vector>

#include "twobridge/errors.hpp"

namespace twobridge {

using cplx = std::complex<double>;

// Dense univariate polynomial, coeffs[i] is the coefficient of v^i.
// Zero polynomial is the empty vector.
struct Poly {
    std::vector<cplx> coeffs;

    Poly() = default;
    Poly(std::initializer_list<cplx> cs) : coeffs(cs) {}
    explicit Poly(std::vector<cplx> cs) : coeffs(std::move(cs)) {}

    bool is_zero() const { return coeffs.empty(); }
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    cplx eval(cplx v) const;
};

Poly poly_trim(Poly p, double rel_tol = 1e-12);
Poly poly_add(const Poly& p, const Poly& q);
Poly poly_sub(const Poly& p, const Poly& q);
Poly poly_mul(const Poly& p, const Poly& q);
Poly poly_scale(cplx c, const Poly& p);
Poly poly_compose(const Poly& outer, const Poly& inner); // outer(inner(v))
Poly poly_deriv(const Poly& p);

// Laurent polynomial in t: coeffs[i] is the coefficient of t^(min_exp+i).
// Zero polynomial: empty coeffs, min_exp irrelevant (kept 0).
struct LaurentPoly {
    int min_exp = 0;
    std::vector<cplx> coeffs;

    LaurentPoly() = default;
    LaurentPoly(int e, std::vector<cplx> cs) : min_exp(e), coeffs(std::move(cs)) {}

    bool is_zero() const { return coeffs.empty(); }
    int max_exp() const { return min_exp + static_cast<int>(coeffs.size()) - 1; }
    cplx coeff(int e) const; // 0 outside support
    cplx eval(cplx t) const;
    double max_abs() const;
};

LaurentPoly laurent_trim(LaurentPoly p, double rel_tol = 1e-12);
LaurentPoly laurent_add(const LaurentPoly& p, const LaurentPoly& q);
LaurentPoly laurent_sub(const LaurentPoly& p, const LaurentPoly& q);
LaurentPoly laurent_mul(const LaurentPoly& p, const LaurentPoly& q);
LaurentPoly laurent_scale(cplx c, const LaurentPoly& p);
LaurentPoly laurent_shift(const LaurentPoly& p, int k); // multiply by t^k
LaurentPoly laurent_const(cplx c);
LaurentPoly laurent_monomial(cplx c, int e);

// 2x2 complex matrix, row-major.
struct Mat2 {
    cplx a{}, b{}, c{}, d{}; // [[a b],[c d]]

    static Mat2 identity() { return {1, 0, 0, 1}; }
    cplx det() const { return a * d - b * c; }
    cplx trace() const { return a + d; }
};

Mat2 mat2_mul(const Mat2& p, const Mat2& q);
Mat2 mat2_power_naive(const Mat2& p, int k); // repeated multiplication, any det
Mat2 mat2_add(const Mat2& p, const Mat2& q);
Mat2 mat2_sub(const Mat2& p, const Mat2& q);
Mat2 mat2_scale(cplx c, const Mat2& p);
Mat2 mat2_inv(const Mat2& p); // general inverse (divides by det)
double mat2_max_abs(const Mat2& p);

// 2x2 matrix over Laurent polynomials.
struct Mat2L {
    LaurentPoly a, b, c, d;

    static Mat2L identity();
    LaurentPoly det() const;
    LaurentPoly trace() const { return laurent_add(a, d); }
};

Mat2L mat2l_mul(const Mat2L& p, const Mat2L& q);
Mat2L mat2l_add(const Mat2L& p, const Mat2L& q);
Mat2L mat2l_sub(const Mat2L& p, const Mat2L& q);
Mat2L mat2l_from(const Mat2& m);                  // constant in t
Mat2L mat2l_scale(const LaurentPoly& f, const Mat2& m); // f(t) * m
double mat2l_max_abs(const Mat2L& p);

// Roots with multiplicity via companion-matrix eigenvalues plus 3 Newton
// polish steps. |p(root)| <= tol * (1 + max |coeff|) is checked.
std::vector<cplx> poly_roots(const Poly& p, double tol);

// Exact Laurent division: num = q * den with remainder below tol * norm(num).
LaurentPoly laurent_div_exact(const LaurentPoly& num, const LaurentPoly& den, double tol);

// V^k for V in SL2 (any integer k) via the Chebyshev closed form
// V^k = S_{k-1}(tr V) V - S_{k-2}(tr V) I.
Mat2 mat2_power(const Mat2& V, int k, double tol = 1e-9);

// sum_{i=0}^{k} V^i for V in SL2, k >= 0.
Mat2 mat2_geom_sum(const Mat2& V, int k, double tol = 1e-9);

} // namespace twobridge
