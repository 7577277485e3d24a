#include "twobridge/chebyshev.hpp"

#include <cstdlib>

namespace twobridge {

cplx cheb_s(int k, cplx v) {
    if (k == -1) return 0;
    if (k < -1) return -cheb_s(-k - 2, v);
    cplx prev = 0, cur = 1; // S_{-1}, S_0
    for (int i = 0; i < k; ++i) {
        const cplx next = v * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

void cheb_s_pair(int k, cplx v, cplx& s, cplx& ds) {
    if (k == -1) {
        s = 0;
        ds = 0;
        return;
    }
    if (k < -1) {
        cheb_s_pair(-k - 2, v, s, ds);
        s = -s;
        ds = -ds;
        return;
    }
    cplx sp = 0, sc = 1;  // S_{-1}, S_0
    cplx dp = 0, dc = 0;  // derivatives
    for (int i = 0; i < k; ++i) {
        const cplx sn = v * sc - sp;
        const cplx dn = sc + v * dc - dp;
        sp = sc;
        sc = sn;
        dp = dc;
        dc = dn;
    }
    s = sc;
    ds = dc;
}

cplx cheb_p(int k, cplx v) {
    if (k < -1) throw IndexOutOfRange("cheb_p: k < -1");
    cplx prev = 0, cur = 1, acc = 0; // S_{-1}, S_0, running sum
    for (int i = 0; i <= k; ++i) {
        acc += cur;
        const cplx next = v * cur - prev;
        prev = cur;
        cur = next;
    }
    return acc;
}

cplx cheb_d(int k, cplx v) {
    if (k == 0) return 0;
    const int j = std::abs(k);
    return cheb_p(j - 1, v) + cheb_p(j - 2, v);
}

Poly cheb_s_poly(int k) {
    if (std::abs(k) > 64) throw IndexOutOfRange("cheb_s_poly: |k| > 64");
    if (k == -1) return Poly{};
    if (k < -1) return poly_scale(-1, cheb_s_poly(-k - 2));
    Poly prev{};    // S_{-1} = 0
    Poly cur{{1}};  // S_0 = 1
    const Poly v(std::vector<cplx>{0, 1});
    for (int i = 0; i < k; ++i) {
        Poly next = poly_sub(poly_mul(v, cur), prev);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

} // namespace twobridge
