#pragma once

#include <map>
#include <string>
#include <vector>

#include "twobridge/algebra.hpp"

namespace twobridge {

enum class Gen : char { a = 'a', b = 'b' };

struct Letter {
    Gen gen;
    int exp; // +1 or -1
    friend bool operator==(const Letter&, const Letter&) = default;
};

// Freely reduced word in a, b. Construction reduces.
struct Word {
    std::vector<Letter> letters;

    Word() = default;
    explicit Word(std::vector<Letter> ls);

    bool empty() const { return letters.empty(); }
    size_t size() const { return letters.size(); }
    std::string str() const; // compact notation, uppercase = inverse: "bABa"

    friend bool operator==(const Word&, const Word&) = default;
};

// lexicographic on the letter sequence; deterministic term ordering
bool word_less(const Word& u, const Word& v);

struct WordLess {
    bool operator()(const Word& u, const Word& v) const { return word_less(u, v); }
};

Word word_concat(const Word& u, const Word& v);
Word word_inverse(const Word& u);
Word word_pow(const Word& u, int k); // k < 0 uses the inverse

// Integer-coefficient formal sum of words.
struct GroupRingElement {
    std::map<Word, long, WordLess> terms;

    static GroupRingElement one() { return unit(Word{}); }
    static GroupRingElement unit(const Word& w, long c = 1);
    void add_term(const Word& w, long c); // drops zeros
};

GroupRingElement gre_add(const GroupRingElement& p, const GroupRingElement& q);
GroupRingElement gre_neg(const GroupRingElement& p);
GroupRingElement gre_mul(const GroupRingElement& p, const GroupRingElement& q);
GroupRingElement gre_mul_word(const Word& w, const GroupRingElement& p); // left multiply

struct Presentation {
    int m = 0, n = 0;
    Word w;       // (ba^-1)^m (b^-1 a)^m
    Word relator; // w^n a w^-n b^-1
};

Word build_word_w(int m); // ZeroParameter if m == 0
Word reverse_word(const Word& u);
int exponent_sum(const Word& u);
Presentation make_presentation(int m, int n);

// Fox free calculus: d(g)/dg = 1, d(g^-1)/dg = -g^-1, product rule.
GroupRingElement fox_derivative(const Word& u, Gen g);

// delta_k(u) = 1 + u + ... + u^k as a group ring element (k >= -1; -1 gives 0)
GroupRingElement delta_sum(const Word& u, int k);

// rho on a single word by letter-by-letter multiplication.
Mat2 eval_word(const Word& u, const Mat2& rho_a, const Mat2& rho_b);

// Wada's Phi: word u -> rho(u) t^{exponent_sum(u)}, extended linearly.
Mat2L phi_eval(const GroupRingElement& e, const Mat2& rho_a, const Mat2& rho_b,
               double tol = 1e-9);

} // namespace twobridge
