#include <doctest.h>

#include <complex>
#include <random>
#include <vector>

#include "twobridge/knotgroup.hpp"
#include "twobridge/riley.hpp"

using namespace twobridge;

namespace {

std::mt19937 rng(90210);

Word random_word(int maxlen = 12) {
    std::vector<Letter> ls;
    const int len = static_cast<int>(rng() % (maxlen + 1));
    for (int i = 0; i < len; ++i) {
        const Gen g = (rng() % 2) ? Gen::a : Gen::b;
        const int e = (rng() % 2) ? 1 : -1;
        ls.push_back({g, e});
    }
    return Word(std::move(ls));
}

Word parse(const std::string& s) {
    std::vector<Letter> ls;
    for (char c : s) {
        switch (c) {
            case 'a': ls.push_back({Gen::a, 1}); break;
            case 'A': ls.push_back({Gen::a, -1}); break;
            case 'b': ls.push_back({Gen::b, 1}); break;
            case 'B': ls.push_back({Gen::b, -1}); break;
            default: REQUIRE(false);
        }
    }
    return Word(std::move(ls));
}

bool gre_equal(const GroupRingElement& p, const GroupRingElement& q) {
    return gre_add(p, gre_neg(q)).terms.empty();
}

} // namespace

TEST_CASE("word construction reduces freely") {
    CHECK(parse("aA").empty());
    CHECK(parse("abBA").empty());
    CHECK(parse("abBa").str() == "aa");
    CHECK(parse("bABa").size() == 4);
    for (int trial = 0; trial < 50; ++trial) {
        const Word u = random_word();
        CHECK(word_concat(u, word_inverse(u)).empty());
        CHECK(word_concat(word_inverse(u), u).empty());
    }
}

TEST_CASE("word helpers") {
    const Word u = parse("abA");
    CHECK(word_pow(u, 0).empty());
    CHECK(word_pow(u, 2) == parse("abbA"));
    CHECK(word_pow(u, -1) == parse("aBA"));
    CHECK(word_inverse(parse("ab")) == parse("BA"));
    CHECK(reverse_word(parse("bABa")) == parse("aBAb"));
    CHECK(reverse_word(Word{}).empty());
    for (int trial = 0; trial < 20; ++trial) {
        const Word v = random_word();
        CHECK(reverse_word(reverse_word(v)) == v);
        CHECK(exponent_sum(word_inverse(v)) == -exponent_sum(v));
    }
    CHECK(exponent_sum(parse("aba")) == 3);
    CHECK(exponent_sum(parse("aBa")) == 1);

    CHECK(word_less(parse("a"), parse("ab")));
    CHECK(!word_less(parse("ab"), parse("a")));
    CHECK(!word_less(parse("a"), parse("a")));
}

TEST_CASE("build_word_w") {
    CHECK(build_word_w(1).str() == "bABa");
    CHECK(build_word_w(-1).str() == "aBAb");
    CHECK(build_word_w(2).str() == "bAbABaBa");
    CHECK(build_word_w(2).size() == 8);
    CHECK(build_word_w(-3).size() == 12);
    CHECK_THROWS_AS(build_word_w(0), ZeroParameter);
    for (int m : {-3, -2, -1, 1, 2, 3}) {
        CHECK(exponent_sum(build_word_w(m)) == 0);
        // w(-m) is w(m) with a and b swapped and reversed; cheap sanity: same length
        CHECK(static_cast<int>(build_word_w(m).size()) == 4 * std::abs(m));
    }
}

TEST_CASE("presentation relator") {
    const Presentation pres = make_presentation(1, 1);
    CHECK(pres.w.str() == "bABa");
    // w a w^-1 b^-1 with w = bABa
    CHECK(pres.relator == word_concat(word_concat(pres.w, parse("a")),
                                      word_concat(word_inverse(pres.w), parse("B"))));
    CHECK(exponent_sum(pres.relator) == 0);

    for (int m : {-2, -1, 1, 2}) {
        for (int n : {-2, -1, 1, 2}) {
            const Presentation p = make_presentation(m, n);
            CHECK(p.m == m);
            CHECK(p.n == n);
            CHECK(exponent_sum(p.relator) == 0);
            const Word wn = word_pow(p.w, n);
            CHECK(p.relator ==
                  word_concat(word_concat(wn, parse("a")),
                              word_concat(word_inverse(wn), parse("B"))));
        }
    }
    CHECK_THROWS_AS(make_presentation(0, 1), ZeroParameter);
    CHECK_THROWS_AS(make_presentation(1, 0), ZeroParameter);
}

TEST_CASE("group ring arithmetic") {
    const GroupRingElement one = GroupRingElement::one();
    const GroupRingElement a = GroupRingElement::unit(parse("a"));
    GroupRingElement s = gre_add(one, gre_neg(a)); // 1 - a
    CHECK(s.terms.size() == 2);
    s.add_term(parse("a"), 1); // cancels the -a term
    CHECK(s.terms.size() == 1);

    const GroupRingElement p = gre_mul(gre_add(one, a), gre_add(one, gre_neg(a)));
    // (1+a)(1-a) = 1 - a^2
    GroupRingElement want = GroupRingElement::one();
    want.add_term(parse("aa"), -1);
    CHECK(gre_equal(p, want));

    const GroupRingElement lm = gre_mul_word(parse("b"), a);
    CHECK(gre_equal(lm, GroupRingElement::unit(parse("ba"))));
}

TEST_CASE("fox derivative base cases") {
    const GroupRingElement da = fox_derivative(parse("a"), Gen::a);
    CHECK(gre_equal(da, GroupRingElement::one()));
    CHECK(fox_derivative(parse("a"), Gen::b).terms.empty());
    CHECK(fox_derivative(Word{}, Gen::a).terms.empty());

    // d(ab)/da = 1
    CHECK(gre_equal(fox_derivative(parse("ab"), Gen::a), GroupRingElement::one()));
    // d(ab)/db = a
    CHECK(gre_equal(fox_derivative(parse("ab"), Gen::b),
                    GroupRingElement::unit(parse("a"))));
    // d(a^-1)/da = -a^-1
    CHECK(gre_equal(fox_derivative(parse("A"), Gen::a),
                    GroupRingElement::unit(parse("A"), -1)));
    // d(bab^-1)/da = b
    CHECK(gre_equal(fox_derivative(parse("baB"), Gen::a),
                    GroupRingElement::unit(parse("b"))));
    // d(aa)/da = 1 + a
    CHECK(gre_equal(fox_derivative(parse("aa"), Gen::a),
                    gre_add(GroupRingElement::one(),
                            GroupRingElement::unit(parse("a")))));
}

TEST_CASE("fox derivative product rule") {
    // d(uv)/dg = d(u)/dg + u d(v)/dg, on random freely reduced pairs
    for (int trial = 0; trial < 100; ++trial) {
        const Word u = random_word(8);
        const Word v = random_word(8);
        for (Gen g : {Gen::a, Gen::b}) {
            const GroupRingElement lhs = fox_derivative(word_concat(u, v), g);
            const GroupRingElement rhs =
                gre_add(fox_derivative(u, g), gre_mul_word(u, fox_derivative(v, g)));
            CHECK(gre_equal(lhs, rhs));
        }
    }
}

TEST_CASE("fox derivative of powers uses delta sums") {
    // d(u^n)/dg = delta_{n-1}(u) d(u)/dg for n >= 1
    for (int trial = 0; trial < 30; ++trial) {
        const Word u = random_word(6);
        const int n = 1 + static_cast<int>(rng() % 3);
        for (Gen g : {Gen::a, Gen::b}) {
            const GroupRingElement lhs = fox_derivative(word_pow(u, n), g);
            const GroupRingElement rhs =
                gre_mul(delta_sum(u, n - 1), fox_derivative(u, g));
            CHECK(gre_equal(lhs, rhs));
        }
    }
    CHECK(delta_sum(parse("a"), -1).terms.empty());
    CHECK(gre_equal(delta_sum(parse("a"), 0), GroupRingElement::one()));
    CHECK_THROWS_AS(delta_sum(parse("a"), -2), IndexOutOfRange);
}

TEST_CASE("eval_word multiplies matrices") {
    Mat2 ra, rb;
    cplx s;
    rep_matrices({2, 0}, {3, 0}, ra, rb, s);
    CHECK(mat2_max_abs(mat2_sub(eval_word(Word{}, ra, rb), Mat2::identity())) == 0.0);
    CHECK(mat2_max_abs(mat2_sub(eval_word(parse("a"), ra, rb), ra)) == 0.0);
    const Mat2 ab = mat2_mul(ra, rb);
    CHECK(mat2_max_abs(mat2_sub(eval_word(parse("ab"), ra, rb), ab)) < 1e-14);
    const Mat2 inv = eval_word(parse("A"), ra, rb);
    CHECK(mat2_max_abs(mat2_sub(mat2_mul(inv, ra), Mat2::identity())) < 1e-14);
}

TEST_CASE("phi is a homomorphism on words") {
    Mat2 ra, rb;
    cplx s;
    rep_matrices({1.3, 0.4}, {0.2, -1.1}, ra, rb, s);
    for (int trial = 0; trial < 40; ++trial) {
        const Word u = random_word(6);
        const Word v = random_word(6);
        const Mat2L fu = phi_eval(GroupRingElement::unit(u), ra, rb);
        const Mat2L fv = phi_eval(GroupRingElement::unit(v), ra, rb);
        const Mat2L fuv = phi_eval(GroupRingElement::unit(word_concat(u, v)), ra, rb);
        const double scale = std::max(1.0, mat2l_max_abs(fuv));
        CHECK(mat2l_max_abs(mat2l_sub(fuv, mat2l_mul(fu, fv))) <= 1e-9 * scale);
    }
}

TEST_CASE("phi pinned matrices") {
    const cplx x{1.7, 0.2}, y{2.4, -0.3};
    Mat2 ra, rb;
    cplx s;
    rep_matrices(x, y, ra, rb, s);

    // phi(a) = t * rho(a) = [[st, t], [0, t/s]]
    const Mat2L fa = phi_eval(GroupRingElement::unit(parse("a")), ra, rb);
    CHECK(std::abs(fa.a.coeff(1) - s) < 1e-14);
    CHECK(std::abs(fa.b.coeff(1) - 1.0) < 1e-14);
    CHECK(fa.c.is_zero());
    CHECK(std::abs(fa.d.coeff(1) - 1.0 / s) < 1e-14);

    // det phi(b - 1) = t^2 - x t + 1
    GroupRingElement bm1 = GroupRingElement::unit(parse("b"));
    bm1.add_term(Word{}, -1);
    const LaurentPoly det = phi_eval(bm1, ra, rb).det();
    CHECK(std::abs(det.coeff(0) - 1.0) < 1e-12);
    CHECK(std::abs(det.coeff(1) + x) < 1e-12);
    CHECK(std::abs(det.coeff(2) - 1.0) < 1e-12);

    // same for the other generator
    GroupRingElement am1 = GroupRingElement::unit(parse("a"));
    am1.add_term(Word{}, -1);
    const LaurentPoly det2 = phi_eval(am1, ra, rb).det();
    CHECK(std::abs(det2.coeff(1) + x) < 1e-12);

    CHECK_THROWS_AS(phi_eval(bm1, Mat2{2, 0, 0, 2}, rb), NotUnimodular);
}

TEST_CASE("relator derivative splits through the twist region") {
    // d(r)/da = w^n (1 + (1 - a) delta_{n-1}(w^-1) w^-1 d(w)/da) for n > 0,
    // checked through phi at a concrete representation
    Mat2 ra, rb;
    cplx s;
    rep_matrices({0.9, 0.3}, {1.8, -0.6}, ra, rb, s);
    for (int m : {-2, -1, 1, 2}) {
        for (int n : {1, 2, 3}) {
            const Presentation pres = make_presentation(m, n);
            const GroupRingElement lhs_g = fox_derivative(pres.relator, Gen::a);

            const Word winv = word_inverse(pres.w);
            GroupRingElement inner = gre_mul(
                delta_sum(winv, n - 1),
                gre_mul_word(winv, fox_derivative(pres.w, Gen::a)));
            GroupRingElement one_minus_a = GroupRingElement::one();
            one_minus_a.add_term(parse("a"), -1);
            GroupRingElement rhs_g = gre_mul(
                GroupRingElement::unit(word_pow(pres.w, n)),
                gre_add(GroupRingElement::one(), gre_mul(one_minus_a, inner)));

            const Mat2L lhs = phi_eval(lhs_g, ra, rb);
            const Mat2L rhs = phi_eval(rhs_g, ra, rb);
            const double scale = std::max(1.0, mat2l_max_abs(lhs));
            CHECK(mat2l_max_abs(mat2l_sub(lhs, rhs)) <= 1e-8 * scale);
        }
    }
}
