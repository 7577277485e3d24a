#include "twobridge/knotgroup.hpp"

#include <cstdlib>

namespace twobridge {

namespace {

int letter_rank(const Letter& l) {
    // fixed order for deterministic term ordering: a < a^-1 < b < b^-1
    return (l.gen == Gen::a ? 0 : 2) + (l.exp == 1 ? 0 : 1);
}

void push_reduced(std::vector<Letter>& out, const Letter& l) {
    if (!out.empty() && out.back().gen == l.gen && out.back().exp == -l.exp)
        out.pop_back();
    else
        out.push_back(l);
}

} // namespace

Word::Word(std::vector<Letter> ls) {
    letters.reserve(ls.size());
    for (const auto& l : ls) push_reduced(letters, l);
}

std::string Word::str() const {
    // compact free-group notation: lowercase = generator, uppercase = inverse
    std::string s;
    s.reserve(letters.size());
    for (const auto& l : letters) {
        char c = static_cast<char>(l.gen);
        if (l.exp == -1) c = static_cast<char>(c - 'a' + 'A');
        s.push_back(c);
    }
    return s;
}

bool word_less(const Word& u, const Word& v) {
    const size_t nu = u.letters.size(), nv = v.letters.size();
    for (size_t i = 0; i < nu && i < nv; ++i) {
        const int ru = letter_rank(u.letters[i]), rv = letter_rank(v.letters[i]);
        if (ru != rv) return ru < rv;
    }
    return nu < nv;
}

Word word_concat(const Word& u, const Word& v) {
    std::vector<Letter> out = u.letters;
    for (const auto& l : v.letters) push_reduced(out, l);
    Word r;
    r.letters = std::move(out);
    return r;
}

Word word_inverse(const Word& u) {
    Word r;
    r.letters.reserve(u.letters.size());
    for (auto it = u.letters.rbegin(); it != u.letters.rend(); ++it)
        r.letters.push_back({it->gen, -it->exp});
    return r;
}

Word word_pow(const Word& u, int k) {
    const Word base = (k < 0) ? word_inverse(u) : u;
    Word r;
    for (int i = 0; i < std::abs(k); ++i) r = word_concat(r, base);
    return r;
}

Word reverse_word(const Word& u) {
    std::vector<Letter> out;
    out.reserve(u.letters.size());
    for (auto it = u.letters.rbegin(); it != u.letters.rend(); ++it)
        push_reduced(out, *it);
    Word r;
    r.letters = std::move(out);
    return r;
}

int exponent_sum(const Word& u) {
    int s = 0;
    for (const auto& l : u.letters) s += l.exp;
    return s;
}

Word build_word_w(int m) {
    if (m == 0) throw ZeroParameter("build_word_w: m = 0");
    const Letter A{Gen::a, 1}, Ai{Gen::a, -1}, B{Gen::b, 1}, Bi{Gen::b, -1};
    Word u, v;
    if (m > 0) {
        u = Word{{B, Ai}};  // ba^-1
        v = Word{{Bi, A}};  // b^-1 a
    } else {
        u = Word{{A, Bi}};  // (ba^-1)^-1
        v = Word{{Ai, B}};  // (b^-1 a)^-1
    }
    const int j = std::abs(m);
    Word r;
    for (int i = 0; i < j; ++i) r = word_concat(r, u);
    for (int i = 0; i < j; ++i) r = word_concat(r, v);
    return r;
}

Presentation make_presentation(int m, int n) {
    if (m == 0 || n == 0) throw ZeroParameter("make_presentation: m or n = 0");
    Presentation p;
    p.m = m;
    p.n = n;
    p.w = build_word_w(m);
    const Word wn = word_pow(p.w, n);
    const Word a{{Letter{Gen::a, 1}}};
    const Word binv{{Letter{Gen::b, -1}}};
    p.relator = word_concat(word_concat(wn, a), word_concat(word_inverse(wn), binv));
    return p;
}

GroupRingElement GroupRingElement::unit(const Word& u, long c) {
    GroupRingElement e;
    if (c != 0) e.terms[u] = c;
    return e;
}

void GroupRingElement::add_term(const Word& u, long c) {
    if (c == 0) return;
    auto it = terms.find(u);
    if (it == terms.end()) {
        terms[u] = c;
    } else {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
}

GroupRingElement gre_add(const GroupRingElement& p, const GroupRingElement& q) {
    GroupRingElement r = p;
    for (const auto& [u, c] : q.terms) r.add_term(u, c);
    return r;
}

GroupRingElement gre_neg(const GroupRingElement& p) {
    GroupRingElement r;
    for (const auto& [u, c] : p.terms) r.terms[u] = -c;
    return r;
}

GroupRingElement gre_mul(const GroupRingElement& p, const GroupRingElement& q) {
    GroupRingElement r;
    for (const auto& [u, cu] : p.terms)
        for (const auto& [v, cv] : q.terms)
            r.add_term(word_concat(u, v), cu * cv);
    return r;
}

GroupRingElement gre_mul_word(const Word& u, const GroupRingElement& q) {
    GroupRingElement r;
    for (const auto& [v, cv] : q.terms) r.add_term(word_concat(u, v), cv);
    return r;
}

GroupRingElement fox_derivative(const Word& u, Gen g) {
    // d(g)/dg = 1, d(g^-1)/dg = -g^-1, product rule left to right
    GroupRingElement r;
    Word prefix;
    for (const auto& l : u.letters) {
        if (l.gen == g) {
            if (l.exp == 1) {
                r.add_term(prefix, 1);
            } else {
                r.add_term(word_concat(prefix, Word{{Letter{g, -1}}}), -1);
            }
        }
        prefix = word_concat(prefix, Word{{l}});
    }
    return r;
}

GroupRingElement delta_sum(const Word& u, int k) {
    if (k < -1) throw IndexOutOfRange("delta_sum: k < -1");
    GroupRingElement r;
    Word p;
    for (int i = 0; i <= k; ++i) {
        r.add_term(p, 1);
        p = word_concat(p, u);
    }
    return r;
}

Mat2 eval_word(const Word& u, const Mat2& rho_a, const Mat2& rho_b) {
    const Mat2 ai = mat2_inv(rho_a), bi = mat2_inv(rho_b);
    Mat2 r = Mat2::identity();
    for (const auto& l : u.letters) {
        const Mat2& f = (l.gen == Gen::a) ? (l.exp == 1 ? rho_a : ai)
                                          : (l.exp == 1 ? rho_b : bi);
        r = mat2_mul(r, f);
    }
    return r;
}

Mat2L phi_eval(const GroupRingElement& e, const Mat2& rho_a, const Mat2& rho_b, double tol) {
    if (std::abs(rho_a.det() - cplx(1)) >= tol || std::abs(rho_b.det() - cplx(1)) >= tol)
        throw NotUnimodular("phi_eval: generator image not in SL2");
    Mat2L r;
    for (const auto& [u, c] : e.terms) {
        const Mat2 mu = eval_word(u, rho_a, rho_b);
        const LaurentPoly f = laurent_monomial(cplx(static_cast<double>(c)), exponent_sum(u));
        r = mat2l_add(r, mat2l_scale(f, mu));
    }
    return r;
}

} // namespace twobridge
