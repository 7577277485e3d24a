#include "twobridge/algebra.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "twobridge/chebyshev.hpp"

namespace twobridge {

cplx Poly::eval(cplx v) const {
    cplx r = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * v + *it;
    return r;
}

Poly poly_trim(Poly p, double rel_tol) {
    double mx = 0;
    for (const auto& c : p.coeffs) mx = std::max(mx, std::abs(c));
    if (mx == 0) return Poly{};
    const double cut = rel_tol * mx;
    auto& cs = p.coeffs;
    while (!cs.empty() && std::abs(cs.back()) <= cut) cs.pop_back();
    for (auto& c : cs)
        if (std::abs(c) <= cut) c = 0;
    return p;
}

Poly poly_add(const Poly& p, const Poly& q) {
    Poly r;
    r.coeffs.resize(std::max(p.coeffs.size(), q.coeffs.size()), cplx{});
    for (size_t i = 0; i < p.coeffs.size(); ++i) r.coeffs[i] += p.coeffs[i];
    for (size_t i = 0; i < q.coeffs.size(); ++i) r.coeffs[i] += q.coeffs[i];
    while (!r.coeffs.empty() && r.coeffs.back() == cplx{}) r.coeffs.pop_back();
    return r;
}

Poly poly_sub(const Poly& p, const Poly& q) { return poly_add(p, poly_scale(-1, q)); }

Poly poly_mul(const Poly& p, const Poly& q) {
    if (p.is_zero() || q.is_zero()) return Poly{};
    Poly r;
    r.coeffs.assign(p.coeffs.size() + q.coeffs.size() - 1, cplx{});
    for (size_t i = 0; i < p.coeffs.size(); ++i)
        for (size_t j = 0; j < q.coeffs.size(); ++j)
            r.coeffs[i + j] += p.coeffs[i] * q.coeffs[j];
    return r;
}

Poly poly_scale(cplx c, const Poly& p) {
    if (c == cplx{}) return Poly{};
    Poly r = p;
    for (auto& v : r.coeffs) v *= c;
    return r;
}

Poly poly_compose(const Poly& outer, const Poly& inner) {
    if (outer.is_zero()) return Poly{};
    // Horner in the inner polynomial
    Poly r{outer.coeffs.back()};
    for (auto it = std::next(outer.coeffs.rbegin()); it != outer.coeffs.rend(); ++it)
        r = poly_add(poly_mul(r, inner), Poly{*it});
    return r;
}

Poly poly_deriv(const Poly& p) {
    Poly r;
    for (size_t i = 1; i < p.coeffs.size(); ++i)
        r.coeffs.push_back(p.coeffs[i] * static_cast<double>(i));
    return r;
}

cplx LaurentPoly::coeff(int e) const {
    const int i = e - min_exp;
    if (i < 0 || i >= static_cast<int>(coeffs.size())) return 0;
    return coeffs[i];
}

cplx LaurentPoly::eval(cplx t) const {
    cplx r = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * t + *it;
    return r * std::pow(t, cplx(min_exp));
}

double LaurentPoly::max_abs() const {
    double mx = 0;
    for (const auto& c : coeffs) mx = std::max(mx, std::abs(c));
    return mx;
}

LaurentPoly laurent_trim(LaurentPoly p, double rel_tol) {
    const double mx = p.max_abs();
    if (mx == 0) return LaurentPoly{};
    const double cut = rel_tol * mx;
    auto& cs = p.coeffs;
    size_t lead = 0;
    while (lead < cs.size() && std::abs(cs[lead]) <= cut) ++lead;
    if (lead == cs.size()) return LaurentPoly{};
    cs.erase(cs.begin(), cs.begin() + static_cast<long>(lead));
    p.min_exp += static_cast<int>(lead);
    while (!cs.empty() && std::abs(cs.back()) <= cut) cs.pop_back();
    for (auto& c : cs)
        if (std::abs(c) <= cut) c = 0;
    return p;
}

LaurentPoly laurent_add(const LaurentPoly& p, const LaurentPoly& q) {
    if (p.is_zero()) return q;
    if (q.is_zero()) return p;
    const int lo = std::min(p.min_exp, q.min_exp);
    const int hi = std::max(p.max_exp(), q.max_exp());
    LaurentPoly r{lo, std::vector<cplx>(static_cast<size_t>(hi - lo + 1), cplx{})};
    for (size_t i = 0; i < p.coeffs.size(); ++i)
        r.coeffs[static_cast<size_t>(p.min_exp - lo) + i] += p.coeffs[i];
    for (size_t i = 0; i < q.coeffs.size(); ++i)
        r.coeffs[static_cast<size_t>(q.min_exp - lo) + i] += q.coeffs[i];
    return r;
}

LaurentPoly laurent_sub(const LaurentPoly& p, const LaurentPoly& q) {
    return laurent_add(p, laurent_scale(-1, q));
}

LaurentPoly laurent_mul(const LaurentPoly& p, const LaurentPoly& q) {
    if (p.is_zero() || q.is_zero()) return LaurentPoly{};
    LaurentPoly r{p.min_exp + q.min_exp,
                  std::vector<cplx>(p.coeffs.size() + q.coeffs.size() - 1, cplx{})};
    for (size_t i = 0; i < p.coeffs.size(); ++i)
        for (size_t j = 0; j < q.coeffs.size(); ++j)
            r.coeffs[i + j] += p.coeffs[i] * q.coeffs[j];
    return r;
}

LaurentPoly laurent_scale(cplx c, const LaurentPoly& p) {
    if (c == cplx{}) return LaurentPoly{};
    LaurentPoly r = p;
    for (auto& v : r.coeffs) v *= c;
    return r;
}

LaurentPoly laurent_shift(const LaurentPoly& p, int k) {
    if (p.is_zero()) return p;
    LaurentPoly r = p;
    r.min_exp += k;
    return r;
}

LaurentPoly laurent_const(cplx c) { return laurent_monomial(c, 0); }

LaurentPoly laurent_monomial(cplx c, int e) {
    if (c == cplx{}) return LaurentPoly{};
    return LaurentPoly{e, {c}};
}

Mat2 mat2_mul(const Mat2& p, const Mat2& q) {
    return {p.a * q.a + p.b * q.c, p.a * q.b + p.b * q.d,
            p.c * q.a + p.d * q.c, p.c * q.b + p.d * q.d};
}

Mat2 mat2_power_naive(const Mat2& p, int k) {
    const Mat2 base = (k < 0) ? mat2_inv(p) : p;
    Mat2 r = Mat2::identity();
    for (int i = 0; i < std::abs(k); ++i) r = mat2_mul(r, base);
    return r;
}

Mat2 mat2_add(const Mat2& p, const Mat2& q) {
    return {p.a + q.a, p.b + q.b, p.c + q.c, p.d + q.d};
}

Mat2 mat2_sub(const Mat2& p, const Mat2& q) {
    return {p.a - q.a, p.b - q.b, p.c - q.c, p.d - q.d};
}

Mat2 mat2_scale(cplx c, const Mat2& p) { return {c * p.a, c * p.b, c * p.c, c * p.d}; }

Mat2 mat2_inv(const Mat2& p) {
    const cplx det = p.det();
    return {p.d / det, -p.b / det, -p.c / det, p.a / det};
}

double mat2_max_abs(const Mat2& p) {
    return std::max(std::max(std::abs(p.a), std::abs(p.b)),
                    std::max(std::abs(p.c), std::abs(p.d)));
}

Mat2L Mat2L::identity() {
    Mat2L r;
    r.a = laurent_const(1);
    r.d = laurent_const(1);
    return r;
}

LaurentPoly Mat2L::det() const {
    return laurent_sub(laurent_mul(a, d), laurent_mul(b, c));
}

Mat2L mat2l_mul(const Mat2L& p, const Mat2L& q) {
    Mat2L r;
    r.a = laurent_add(laurent_mul(p.a, q.a), laurent_mul(p.b, q.c));
    r.b = laurent_add(laurent_mul(p.a, q.b), laurent_mul(p.b, q.d));
    r.c = laurent_add(laurent_mul(p.c, q.a), laurent_mul(p.d, q.c));
    r.d = laurent_add(laurent_mul(p.c, q.b), laurent_mul(p.d, q.d));
    return r;
}

Mat2L mat2l_add(const Mat2L& p, const Mat2L& q) {
    return {laurent_add(p.a, q.a), laurent_add(p.b, q.b),
            laurent_add(p.c, q.c), laurent_add(p.d, q.d)};
}

Mat2L mat2l_sub(const Mat2L& p, const Mat2L& q) {
    return {laurent_sub(p.a, q.a), laurent_sub(p.b, q.b),
            laurent_sub(p.c, q.c), laurent_sub(p.d, q.d)};
}

Mat2L mat2l_from(const Mat2& m) {
    return {laurent_const(m.a), laurent_const(m.b), laurent_const(m.c), laurent_const(m.d)};
}

Mat2L mat2l_scale(const LaurentPoly& f, const Mat2& m) {
    return {laurent_scale(m.a, f), laurent_scale(m.b, f),
            laurent_scale(m.c, f), laurent_scale(m.d, f)};
}

double mat2l_max_abs(const Mat2L& p) {
    return std::max(std::max(p.a.max_abs(), p.b.max_abs()),
                    std::max(p.c.max_abs(), p.d.max_abs()));
}

std::vector<cplx> poly_roots(const Poly& p_in, double tol) {
    const Poly p = poly_trim(p_in);
    const int deg = p.degree();
    if (deg < 1) throw DegreeZero("poly_roots: degree < 1");
    double cmax = 0;
    for (const auto& c : p.coeffs) cmax = std::max(cmax, std::abs(c));
    if (std::abs(p.coeffs.back()) <= tol) throw DegreeZero("poly_roots: leading coefficient below tolerance");

    // companion matrix of the monic normalization
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(deg, deg);
    const cplx lead = p.coeffs.back();
    for (int i = 0; i < deg; ++i) C(i, deg - 1) = -p.coeffs[static_cast<size_t>(i)] / lead;
    for (int i = 1; i < deg; ++i) C(i, i - 1) = 1;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) throw NoConvergence("poly_roots: eigensolver failed");

    const Poly dp = poly_deriv(p);
    std::vector<cplx> roots;
    roots.reserve(static_cast<size_t>(deg));
    for (int i = 0; i < deg; ++i) {
        cplx r = es.eigenvalues()(i);
        for (int it = 0; it < 3; ++it) {
            const cplx f = p.eval(r);
            const cplx df = dp.eval(r);
            if (std::abs(df) < 1e-300) break;
            r -= f / df;
        }
        roots.push_back(r);
    }
    for (const auto& r : roots)
        if (std::abs(p.eval(r)) > tol * (1 + cmax))
            throw NoConvergence("poly_roots: residual above tolerance after polish");
    return roots;
}

LaurentPoly laurent_div_exact(const LaurentPoly& num_in, const LaurentPoly& den_in, double tol) {
    const LaurentPoly den = laurent_trim(den_in, 1e-14);
    if (den.is_zero()) throw InexactDivision("laurent_div_exact: zero divisor");
    LaurentPoly num = laurent_trim(num_in);
    if (num.is_zero()) return LaurentPoly{};

    const double num_norm = num.max_abs();
    // long division from the low-exponent end
    LaurentPoly q;
    std::vector<cplx> rem = num.coeffs;
    int rem_min = num.min_exp;
    const int qlen = static_cast<int>(num.coeffs.size()) - static_cast<int>(den.coeffs.size()) + 1;
    if (qlen >= 1) {
        q.min_exp = num.min_exp - den.min_exp;
        q.coeffs.assign(static_cast<size_t>(qlen), cplx{});
        for (int i = 0; i < qlen; ++i) {
            const cplx f = rem[static_cast<size_t>(i)] / den.coeffs.front();
            q.coeffs[static_cast<size_t>(i)] = f;
            for (size_t j = 0; j < den.coeffs.size(); ++j)
                rem[static_cast<size_t>(i) + j] -= f * den.coeffs[j];
        }
    }
    double rem_max = 0;
    for (const auto& c : rem) rem_max = std::max(rem_max, std::abs(c));
    (void)rem_min;
    if (rem_max > tol * num_norm)
        throw InexactDivision("laurent_div_exact: remainder above tolerance");
    return laurent_trim(q, 1e-11);
}

static void require_sl2(const Mat2& V, double tol, const char* who) {
    if (std::abs(V.det() - cplx(1)) >= tol) throw NotUnimodular(who);
}

Mat2 mat2_power(const Mat2& V, int k, double tol) {
    require_sl2(V, tol, "mat2_power: det != 1");
    const cplx v = V.trace();
    const cplx sk1 = cheb_s(k - 1, v);
    const cplx sk2 = cheb_s(k - 2, v);
    return mat2_sub(mat2_scale(sk1, V), mat2_scale(sk2, Mat2::identity()));
}

Mat2 mat2_geom_sum(const Mat2& V, int k, double tol) {
    if (k < 0) throw IndexOutOfRange("mat2_geom_sum: k < 0");
    require_sl2(V, tol, "mat2_geom_sum: det != 1");
    // sum_{i=0}^k V^i = P_{k-1}(v) V + (1 - P_{k-2}(v)) I with P_{-2} = 0
    const cplx v = V.trace();
    const cplx pk1 = cheb_p(k - 1, v);
    const cplx pk2 = (k >= 1) ? cheb_p(k - 2, v) : cplx(0);
    return mat2_add(mat2_scale(pk1, V), mat2_scale(cplx(1) - pk2, Mat2::identity()));
}

} // namespace twobridge
