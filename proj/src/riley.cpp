#include "twobridge/riley.hpp"

#include <algorithm>
#include <cmath>

#include "twobridge/chebyshev.hpp"
#include "riley_detail.hpp"

namespace twobridge {

namespace detail {

void riley_val_grad(int m, int n, cplx x, cplx y, cplx& phi, cplx& dphi) {
    const cplx e = x * x - 2.0;
    cplx sm1, dsm1, sm, dsm;
    cheb_s_pair(m - 1, y, sm1, dsm1);
    cheb_s_pair(m, y, sm, dsm);
    const cplx q = y + 2.0 - x * x; // y - e
    const cplx z = 2.0 + (y - 2.0) * q * sm1 * sm1;
    const cplx dz = (2.0 * y - x * x) * sm1 * sm1 + (y - 2.0) * q * 2.0 * sm1 * dsm1;
    const cplx alpha = 1.0 + q * sm1 * (sm - sm1);
    const cplx dalpha = sm1 * (sm - sm1) + q * (dsm1 * (sm - sm1) + sm1 * (dsm - dsm1));
    cplx sn, dsn, sn1, dsn1;
    cheb_s_pair(n, z, sn, dsn);
    cheb_s_pair(n - 1, z, sn1, dsn1);
    phi = sn - alpha * sn1;
    dphi = dsn * dz - dalpha * sn1 - alpha * dsn1 * dz;
    (void)e;
}

Mat2 rho_w_closed(int m, cplx s, cplx y) {
    const cplx sm = cheb_s(m, y), sm1 = cheb_s(m - 1, y);
    const cplx si = 1.0 / s;
    Mat2 W;
    W.a = sm * sm + (2.0 - 2.0 * y) * sm * sm1 +
          (1.0 + 2.0 * s * s - 2.0 * y - s * s * y + y * y) * sm1 * sm1;
    W.b = (si - s) * sm * sm1 + (si + s - y * si) * sm1 * sm1;
    W.c = (2.0 - y) * W.b;
    W.d = sm * sm - 2.0 * sm * sm1 + (1.0 + 2.0 * si * si - y * si * si) * sm1 * sm1;
    return W;
}

Mat2 rho_w_rev_closed(int m, cplx s, cplx y) {
    const cplx sm = cheb_s(m, y), sm1 = cheb_s(m - 1, y);
    const cplx si = 1.0 / s;
    Mat2 W;
    W.a = sm * sm - 2.0 * sm * sm1 + (1.0 + 2.0 * s * s - s * s * y) * sm1 * sm1;
    W.b = (s - si) * sm * sm1 + (si + s - s * y) * sm1 * sm1;
    W.c = (2.0 - y) * W.b;
    W.d = sm * sm + (2.0 - 2.0 * y) * sm * sm1 +
          (1.0 + 2.0 * si * si - 2.0 * y - y * si * si + y * y) * sm1 * sm1;
    return W;
}

void rho_w_closed_d(int m, cplx s, cplx y, Mat2& W, Mat2& dW) {
    cplx sm, dsm, sm1, dsm1;
    cheb_s_pair(m, y, sm, dsm);
    cheb_s_pair(m - 1, y, sm1, dsm1);
    const cplx si = 1.0 / s;
    const cplx c11 = 1.0 + 2.0 * s * s - 2.0 * y - s * s * y + y * y;
    const cplx c12 = si + s - y * si;
    const cplx c22 = 1.0 + 2.0 * si * si - y * si * si;
    const cplx dc11 = -2.0 - s * s + 2.0 * y;
    const cplx dc12 = -si;
    const cplx dc22 = -si * si;

    W.a = sm * sm + (2.0 - 2.0 * y) * sm * sm1 + c11 * sm1 * sm1;
    W.b = (si - s) * sm * sm1 + c12 * sm1 * sm1;
    W.c = (2.0 - y) * W.b;
    W.d = sm * sm - 2.0 * sm * sm1 + c22 * sm1 * sm1;

    const cplx dprod = dsm * sm1 + sm * dsm1;  // d(sm*sm1)
    const cplx dsq1 = 2.0 * sm1 * dsm1;        // d(sm1^2)
    dW.a = 2.0 * sm * dsm - 2.0 * sm * sm1 + (2.0 - 2.0 * y) * dprod + dc11 * sm1 * sm1 +
           c11 * dsq1;
    dW.b = (si - s) * dprod + dc12 * sm1 * sm1 + c12 * dsq1;
    dW.c = -W.b + (2.0 - y) * dW.b;
    dW.d = 2.0 * sm * dsm - 2.0 * dprod + dc22 * sm1 * sm1 + c22 * dsq1;
}

namespace {

void defect_and_grad(int m, int n, cplx s, cplx y, Mat2& D, Mat2& dD) {
    Mat2 W, dW;
    rho_w_closed_d(m, s, y, W, dW);
    const cplx z = W.trace();
    const cplx dz = dW.trace();
    cplx sn1, dsn1, sn2, dsn2;
    cheb_s_pair(n - 1, z, sn1, dsn1);
    cheb_s_pair(n - 2, z, sn2, dsn2);
    const Mat2 I = Mat2::identity();
    const Mat2 Wn = mat2_sub(mat2_scale(sn1, W), mat2_scale(sn2, I));
    Mat2 dWn = mat2_add(mat2_scale(dsn1 * dz, W), mat2_scale(sn1, dW));
    dWn = mat2_sub(dWn, mat2_scale(dsn2 * dz, I));
    const Mat2 A{s, 1, 0, 1.0 / s};
    const Mat2 B{s, 0, 2.0 - y, 1.0 / s};
    const Mat2 dB{0, 0, -1, 0};
    D = mat2_sub(mat2_mul(Wn, A), mat2_mul(B, Wn));
    dD = mat2_sub(mat2_sub(mat2_mul(dWn, A), mat2_mul(dB, Wn)), mat2_mul(B, dWn));
}

} // namespace

double defect_score(int m, int n, cplx s, cplx y) {
    Mat2 D, dD;
    defect_and_grad(m, n, s, y, D, dD);
    return mat2_max_abs(D);
}

cplx polish_root(int m, int n, cplx x, cplx s, cplx y0) {
    cplx y = y0, best_y = y0;
    double best = 1e300;
    int stall = 0;
    for (int it = 0; it < 60; ++it) {
        cplx phi, dphi;
        riley_val_grad(m, n, x, y, phi, dphi);
        const double cur = std::abs(phi);
        if (cur < best) {
            best = cur;
            best_y = y;
            stall = 0;
        } else if (++stall >= 4) {
            break;
        }
        if (std::abs(dphi) < 1e-300) break;
        y -= phi / dphi;
    }

    y = best_y;
    best_y = y;
    best = defect_score(m, n, s, y);
    stall = 0;
    for (int it = 0; it < 40; ++it) {
        Mat2 D, dD;
        defect_and_grad(m, n, s, y, D, dD);
        const double cur = mat2_max_abs(D);
        if (cur < best) {
            best = cur;
            best_y = y;
            stall = 0;
        } else if (++stall >= 4) {
            break;
        }
        // step on the entry whose derivative is steepest
        cplx num = D.a, den = dD.a;
        double dmax = std::abs(dD.a);
        const cplx ds[3] = {dD.b, dD.c, dD.d};
        const cplx vs[3] = {D.b, D.c, D.d};
        for (int i = 0; i < 3; ++i)
            if (std::abs(ds[i]) > dmax) {
                dmax = std::abs(ds[i]);
                num = vs[i];
                den = ds[i];
            }
        if (dmax < 1e-300) break;
        y -= num / den;
    }
    return best_y;
}

} // namespace detail

void rep_matrices(cplx x, cplx y, Mat2& rho_a, Mat2& rho_b, cplx& s) {
    s = (x + std::sqrt(x * x - 4.0)) / 2.0;
    if (std::abs(s) < 1e-12) throw SingularS("rep_matrices: |s| < 1e-12");
    rho_a = {s, 1, 0, 1.0 / s};
    rho_b = {s, 0, 2.0 - y, 1.0 / s};
}

cplx trace_z(int m, cplx x, cplx y) {
    const cplx sm1 = cheb_s(m - 1, y);
    return 2.0 + (y - 2.0) * (y + 2.0 - x * x) * sm1 * sm1;
}

cplx riley_value(int m, int n, cplx x, cplx y) {
    const cplx sm1 = cheb_s(m - 1, y), sm = cheb_s(m, y);
    const cplx q = y + 2.0 - x * x;
    const cplx z = 2.0 + (y - 2.0) * q * sm1 * sm1;
    const cplx alpha = 1.0 + q * sm1 * (sm - sm1);
    return cheb_s(n, z) - alpha * cheb_s(n - 1, z);
}

Poly riley_polynomial(int m, int n, cplx x) {
    if (m == 0 || n == 0) throw ZeroParameter("riley_polynomial: m or n = 0");
    if (std::abs(m) > 8 || std::abs(n) > 8)
        throw ParameterTooLarge("riley_polynomial: |m| or |n| > 8");
    const Poly yv(std::vector<cplx>{0, 1});
    const Poly sm1 = cheb_s_poly(m - 1);
    const Poly sm = cheb_s_poly(m);
    const cplx e = x * x - 2.0;
    const Poly q = poly_add(yv, Poly{{-e}}); // y - e
    const Poly z = poly_add(Poly{{2}},
                            poly_mul(poly_mul(poly_add(yv, Poly{{-2}}), q), poly_mul(sm1, sm1)));
    const Poly alpha =
        poly_add(Poly{{1}}, poly_mul(q, poly_mul(sm1, poly_sub(sm, sm1))));
    const Poly phi =
        poly_sub(poly_compose(cheb_s_poly(n), z), poly_mul(alpha, poly_compose(cheb_s_poly(n - 1), z)));
    return poly_trim(phi);
}

NonabelianRep make_rep(int m, int n, cplx x, cplx y) {
    NonabelianRep r;
    r.params = {m, n};
    r.x = x;
    r.y = y;
    r.e = x * x - 2.0;
    rep_matrices(x, y, r.rho_a, r.rho_b, r.s);
    r.rho_w = detail::rho_w_closed(m, r.s, y);
    r.rho_w_rev = detail::rho_w_rev_closed(m, r.s, y);
    r.z = trace_z(m, x, y);
    const cplx sm1 = cheb_s(m - 1, y), sm = cheb_s(m, y);
    r.alpha = 1.0 + (y + 2.0 - x * x) * sm1 * (sm - sm1);
    r.riley_residual = rep_residual(m, n, x, y);
    return r;
}

double rep_residual(const NonabelianRep& rep) {
    return rep_residual(rep.params.m, rep.params.n, rep.x, rep.y);
}

double rep_residual(int m, int n, cplx x, cplx y) {
    Mat2 A, B;
    cplx s;
    rep_matrices(x, y, A, B, s);
    const Word w = build_word_w(m);
    const Mat2 W = eval_word(w, A, B);
    const Mat2 Wn = mat2_power(W, n, 1e-6);
    const Mat2 D = mat2_sub(mat2_mul(Wn, A), mat2_mul(B, Wn));
    return mat2_max_abs(D);
}

RootEnumeration riley_roots(int m, int n, cplx x) {
    const Poly phi = riley_polynomial(m, n, x);
    const std::vector<cplx> raw = poly_roots(phi, 1e-6);

    cplx s = (x + std::sqrt(x * x - 4.0)) / 2.0;
    RootEnumeration out;
    std::vector<cplx> kept;
    for (const cplx& r : raw) {
        const cplx y = detail::polish_root(m, n, x, s, r);
        if (std::abs(y - 2.0) <= 1e-6) {
            out.excluded.push_back(y);
        } else {
            kept.push_back(y);
        }
    }

    auto key = [](cplx y) {
        return std::make_pair(std::round(y.real() * 1e10), std::round(y.imag() * 1e10));
    };
    std::sort(kept.begin(), kept.end(),
              [&](cplx p, cplx q) { return key(p) < key(q); });
    std::sort(out.excluded.begin(), out.excluded.end(),
              [&](cplx p, cplx q) { return key(p) < key(q); });

    for (size_t i = 0; i < kept.size(); ++i) {
        NonabelianRep rep = make_rep(m, n, x, kept[i]);
        if (rep.riley_residual >= 1e-8)
            throw NoConvergence("riley_roots: residual stuck above 1e-8 after polish");
        for (size_t j = 0; j < kept.size(); ++j)
            if (j != i && std::abs(kept[j] - kept[i]) < 1e-6) {
                rep.flags.push_back("multiplicity_cluster");
                break;
            }
        out.reps.push_back(std::move(rep));
    }
    return out;
}

Word longitude_word(int m, int n) {
    const Word w = build_word_w(m);
    return word_concat(word_pow(reverse_word(w), n), word_pow(w, n));
}

cplx longitude_trace_closed(const NonabelianRep& rep) {
    const cplx x = rep.x, y = rep.y;
    const cplx sm1 = cheb_s(rep.params.m - 1, y);
    const cplx den = 4.0 - x * x + (y + 2.0 - x * x) * (y - 2.0) * sm1 * sm1;
    if (std::abs(den) <= 1e-12)
        throw DegenerateDenominator("longitude_trace_closed: denominator below 1e-12");
    return 2.0 - x * x * (y - 2.0) * (y - 2.0) * sm1 * sm1 / den;
}

cplx longitude_trace_direct(const NonabelianRep& rep) {
    const Word lam = longitude_word(rep.params.m, rep.params.n);
    return eval_word(lam, rep.rho_a, rep.rho_b).trace();
}

cplx longitude_eigenvalue(const NonabelianRep& rep) {
    const Word lam = longitude_word(rep.params.m, rep.params.n);
    const Mat2 L = eval_word(lam, rep.rho_a, rep.rho_b);
    if (std::abs(L.c) >= 1e-6)
        throw NotTriangular("longitude_eigenvalue: rho(lambda) not upper triangular");
    return L.a;
}

} // namespace twobridge
