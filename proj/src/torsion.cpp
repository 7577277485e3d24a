#include "twobridge/torsion.hpp"

#include <cmath>

#include "twobridge/chebyshev.hpp"

namespace twobridge {

namespace {

// both generators are meridians, so either denominator is t^2 - xt + 1
LaurentPoly wada_denominator(const NonabelianRep& rep, FoxColumn column) {
    const Gen other = (column == FoxColumn::da) ? Gen::b : Gen::a;
    GroupRingElement e = GroupRingElement::unit(Word{{Letter{other, 1}}}, 1);
    e.add_term(Word{}, -1);
    return phi_eval(e, rep.rho_a, rep.rho_b).det();
}

LaurentPoly wada_numerator(const NonabelianRep& rep, FoxColumn column) {
    const Presentation pres = make_presentation(rep.params.m, rep.params.n);
    const Gen g = (column == FoxColumn::da) ? Gen::a : Gen::b;
    const GroupRingElement d = fox_derivative(pres.relator, g);
    return phi_eval(d, rep.rho_a, rep.rho_b).det();
}

} // namespace

TapPolynomial tap_closed(const NonabelianRep& rep) {
    const int m = rep.params.m, n = rep.params.n;
    const cplx x = rep.x, y = rep.y, z = rep.z;
    const cplx c1 = cheb_d(m, y) * cheb_d(n, z);
    const cplx c0 = -x * c1 + x * cheb_s(m - 1, y) * cheb_s(n - 1, z);
    TapPolynomial r;
    r.poly = LaurentPoly{-1, {c1, c0, c1}};
    r.source = TapPolynomial::Source::closed_form;
    return r;
}

TapPolynomial tap_oracle(const NonabelianRep& rep, FoxColumn column) {
    const LaurentPoly num = laurent_trim(wada_numerator(rep, column), 1e-10);
    const LaurentPoly den = laurent_trim(wada_denominator(rep, column), 1e-14);
    LaurentPoly q = laurent_trim(laurent_div_exact(num, den, 1e-6), 1e-9);
    if (!q.is_zero()) {
        // report the centered representative of the t^{2k} class; the raw
        // quotient carries a word-length-dependent shift
        const int sum = q.min_exp + q.max_exp();
        q = laurent_shift(q, -static_cast<int>(std::floor(sum / 2.0)));
    }
    TapPolynomial r;
    r.poly = q;
    r.source = (column == FoxColumn::da) ? TapPolynomial::Source::oracle_dr_da
                                         : TapPolynomial::Source::oracle_dr_db;
    return r;
}

bool laurent_equal_mod_t2(const LaurentPoly& p_in, const LaurentPoly& q_in, double tol) {
    const LaurentPoly p = laurent_trim(p_in, 1e-9);
    const LaurentPoly q = laurent_trim(q_in, 1e-9);
    if (p.is_zero() && q.is_zero()) return true;
    if (p.is_zero() || q.is_zero()) return false;
    const int shift = p.min_exp - q.min_exp;
    if (shift % 2 != 0) return false;
    const LaurentPoly d = laurent_sub(p, laurent_shift(q, shift));
    return d.max_abs() <= tol * std::max(p.max_abs(), q.max_abs());
}

OmegaPair omega_matrices(const NonabelianRep& rep) {
    const int m = rep.params.m, n = rep.params.n;
    const cplx y = rep.y;
    const Mat2& A = rep.rho_a;
    const Mat2& B = rep.rho_b;
    const Mat2& W = rep.rho_w;
    const Mat2 I = Mat2::identity();

    // Omega1 = rho(delta_{n-1}(w^-1) (a^-1 b)^m); for n < 0 the geometric sum
    // of w^-1 telescopes to -(w + ... + w^{|n|})
    Mat2 G;
    if (n > 0) {
        G = mat2_geom_sum(mat2_inv(W), n - 1, 1e-6);
    } else {
        G = mat2_scale(-1, mat2_mul(W, mat2_geom_sum(W, -n - 1, 1e-6)));
    }
    const Mat2 omega1 = mat2_mul(G, mat2_power(mat2_mul(mat2_inv(A), B), m, 1e-6));

    // Omega2 = { t^-1 rho(delta_{m-1}(b^-1 a) b^-1) - rho(delta_{m-1}((ba^-1)^-1)) } (I - t rho(a))
    const Mat2 u = mat2_mul(B, mat2_inv(A));  // rho(b a^-1)
    const Mat2 v = mat2_mul(mat2_inv(B), A);  // rho(b^-1 a)
    Mat2L f;
    if (m > 0) {
        const Mat2 M1 = mat2_mul(mat2_geom_sum(v, m - 1, 1e-6), mat2_inv(B));
        const Mat2 M0 = mat2_geom_sum(mat2_inv(u), m - 1, 1e-6);
        f = mat2l_add(mat2l_scale(laurent_monomial(1, -1), M1),
                      mat2l_scale(laurent_monomial(-1, 0), M0));
    } else {
        const int j = -m;
        const Mat2 M0 = mat2_mul(u, mat2_geom_sum(u, j - 1, 1e-6));
        const Mat2 M1 =
            mat2_mul(mat2_mul(mat2_geom_sum(mat2_inv(v), j - 1, 1e-6), mat2_inv(v)), mat2_inv(B));
        f = mat2l_add(mat2l_scale(laurent_monomial(1, 0), M0),
                      mat2l_scale(laurent_monomial(-1, -1), M1));
    }
    const Mat2L right = mat2l_sub(mat2l_from(I), mat2l_scale(laurent_monomial(1, 1), A));

    OmegaPair out;
    out.omega1 = omega1;
    out.omega2 = mat2l_mul(f, right);
    const cplx sm = cheb_s(m, y), sm1 = cheb_s(m - 1, y);
    out.beta = sm - sm1;
    out.gamma = sm - (y - 1.0) * sm1;
    return out;
}

namespace {

cplx torsion_scalar_closed(const NonabelianRep& rep) {
    // summed coefficient-wise so the value is bit-identical to
    // tap_closed(rep) evaluated at t = 1
    const int m = rep.params.m, n = rep.params.n;
    const cplx x = rep.x, y = rep.y, z = rep.z;
    const cplx c1 = cheb_d(m, y) * cheb_d(n, z);
    const cplx c0 = -x * c1 + x * cheb_s(m - 1, y) * cheb_s(n - 1, z);
    return c1 + c0 + c1;
}

} // namespace

TorsionResult torsion_knot(const NonabelianRep& rep) {
    if (std::abs(rep.x - 2.0) <= 1e-6)
        throw ParabolicMeridian("torsion_knot: |x-2| <= 1e-6");
    TorsionResult r;
    r.value = torsion_scalar_closed(rep);
    r.kind = TorsionResult::Kind::knot;
    return r;
}

double surgery_extension_residual(const NonabelianRep& rep, const SurgerySlope& slope) {
    const cplx ell = longitude_eigenvalue(rep);
    const cplx scalar =
        std::pow(rep.s, cplx(static_cast<double>(slope.p))) *
            std::pow(ell, cplx(static_cast<double>(slope.q))) -
        1.0;
    const Word lam = longitude_word(rep.params.m, rep.params.n);
    const Mat2 L = eval_word(lam, rep.rho_a, rep.rho_b);
    // naive powers: entries of rho(lambda) can be large enough that the
    // floating-point det drifts past any fixed unimodularity guard
    const Mat2 ap = mat2_power_naive(rep.rho_a, static_cast<int>(slope.p));
    const Mat2 lq = mat2_power_naive(L, static_cast<int>(slope.q));
    const Mat2 d = mat2_sub(mat2_mul(ap, lq), Mat2::identity());
    return std::max(std::abs(scalar), mat2_max_abs(d));
}

TorsionResult surgery_torsion(const NonabelianRep& rep, const SurgerySlope& slope) {
    if (std::abs(rep.x) <= 1e-6 || std::abs(rep.x - 2.0) <= 1e-6)
        throw MeridianTraceDegenerate("surgery_torsion: x within 1e-6 of {0, 2}");
    const int m = rep.params.m;
    const cplx x = rep.x, y = rep.y;
    const cplx sm1 = cheb_s(m - 1, y);
    const cplx ssq = sm1 * sm1;
    const cplx tau_k = torsion_scalar_closed(rep);

    const cplx factor =
        (4.0 - x * x + (y + 2.0 - x * x) * (y - 2.0) * ssq) /
        (x * x * (y - 2.0) * (y - 2.0) * ssq);
    const cplx closed = tau_k * factor;
    const cplx ratio = tau_k / (2.0 - longitude_trace_closed(rep));
    const double scale = std::max({1.0, std::abs(closed), std::abs(ratio)});
    if (std::abs(closed - ratio) > 1e-8 * scale)
        throw InternalCheckFailed("surgery_torsion: closed form and torsion ratio disagree");

    TorsionResult r;
    r.value = closed;
    r.kind = TorsionResult::Kind::surgered_manifold;
    r.slope = slope;
    r.extension_residual = surgery_extension_residual(rep, slope);
    r.extension_verified = r.extension_residual <= 1e-6;
    return r;
}

cplx torsion_oracle_t1(const NonabelianRep& rep, FoxColumn column) {
    if (std::abs(rep.x - 2.0) <= 1e-6)
        throw ParabolicMeridian("torsion_oracle_t1: |x-2| <= 1e-6");
    const LaurentPoly num = wada_numerator(rep, column);
    const LaurentPoly den = wada_denominator(rep, column);
    return num.eval(1) / den.eval(1);
}

void refine_surgery_point(int m, int n, const SurgerySlope& slope, cplx x0, cplx y0,
                          cplx& x_out, cplx& y_out) {
    // Newton over (s, y): x = s + 1/s is a branch point of s(x) at x = ±2,
    // but s-space is smooth there
    cplx s = (x0 + std::sqrt(x0 * x0 - 4.0)) / 2.0;
    cplx y = y0;
    const cplx pp = cplx(static_cast<double>(slope.p));
    const cplx qq = cplx(static_cast<double>(slope.q));
    const Word lam = longitude_word(m, n);

    auto F = [&](cplx s_, cplx y_, cplx& f1, cplx& f2) {
        const cplx x_ = s_ + 1.0 / s_;
        f1 = riley_value(m, n, x_, y_);
        const Mat2 A{s_, 1, 0, 1.0 / s_};
        const Mat2 B{s_, 0, 2.0 - y_, 1.0 / s_};
        const Mat2 L = eval_word(lam, A, B);
        f2 = std::pow(s_, pp) * std::pow(L.a, qq) - 1.0;
    };

    const double h = 1e-7;
    for (int it = 0; it < 100; ++it) {
        cplx f1, f2;
        F(s, y, f1, f2);
        const double nrm = std::max(std::abs(f1), std::abs(f2));
        if (nrm < 1e-10) {
            x_out = s + 1.0 / s;
            y_out = y;
            return;
        }
        cplx a1, a2, b1, b2;
        F(s + h, y, a1, a2);
        F(s, y + h, b1, b2);
        const cplx j11 = (a1 - f1) / h, j12 = (b1 - f1) / h;
        const cplx j21 = (a2 - f2) / h, j22 = (b2 - f2) / h;
        const cplx det = j11 * j22 - j12 * j21;
        if (std::abs(det) < 1e-14)
            throw JacobianSingular("refine_surgery_point: singular finite-difference Jacobian");
        const cplx ds = (-f1 * j22 + f2 * j12) / det;
        const cplx dy = (-j11 * f2 + j21 * f1) / det;
        double lam_step = 1.0;
        for (int halve = 0; halve < 12; ++halve) {
            cplx g1, g2;
            F(s + lam_step * ds, y + lam_step * dy, g1, g2);
            if (std::max(std::abs(g1), std::abs(g2)) < nrm) break;
            lam_step /= 2;
        }
        s += lam_step * ds;
        y += lam_step * dy;
    }
    throw NoConvergence("refine_surgery_point: no convergence after 100 iterations");
}

} // namespace twobridge
