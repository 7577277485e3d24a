#include "twobridge/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <vector>

#include "twobridge/chebyshev.hpp"
#include "twobridge/riley.hpp"
#include "twobridge/torsion.hpp"

namespace twobridge {

namespace {

std::string fd(double v) { return format_double(v); }

std::string jcplx(cplx v) { return "[" + fd(v.real()) + "," + fd(v.imag()) + "]"; }

std::string jstr(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
            out += c;
        } else if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", c);
            out += buf;
        } else {
            out += c;
        }
    }
    return out + "\"";
}

bool close_rel(cplx a, cplx b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

// one output row: a representation candidate plus its derived invariants
struct RootReport {
    NonabelianRep rep;
    std::optional<cplx> tau_k;          // absent when x is parabolic
    cplx longitude_trace{};
    bool have_surgery = false;
    std::optional<cplx> tau_m;          // absent when x in {0,2}
    double extension_residual = 0;
};

cplx longitude_trace_robust(const NonabelianRep& rep) {
    try {
        return longitude_trace_closed(rep);
    } catch (const DegenerateDenominator&) {
        return longitude_trace_direct(rep);
    }
}

double extension_residual_unchecked(const NonabelianRep& rep, long p, long q) {
    // same as surgery_extension_residual but without the triangularity guard,
    // so perturbed (off-variety) points still produce a number
    const Word lam = longitude_word(rep.params.m, rep.params.n);
    const Mat2 L = eval_word(lam, rep.rho_a, rep.rho_b);
    const cplx scalar = std::pow(rep.s, cplx(static_cast<double>(p))) *
                            std::pow(L.a, cplx(static_cast<double>(q))) -
                        1.0;
    const Mat2 ap = mat2_power_naive(rep.rho_a, static_cast<int>(p));
    const Mat2 lq = mat2_power_naive(L, static_cast<int>(q));
    const Mat2 d = mat2_sub(mat2_mul(ap, lq), Mat2::identity());
    return std::max(std::abs(scalar), mat2_max_abs(d));
}

RootReport build_report(const RunConfig& cfg, const NonabelianRep& rep) {
    RootReport r;
    r.rep = rep;
    try {
        r.tau_k = torsion_knot(rep).value;
    } catch (const ParabolicMeridian&) {
    }
    r.longitude_trace = longitude_trace_robust(rep);
    if (cfg.p && cfg.q) {
        r.have_surgery = true;
        try {
            const TorsionResult t = surgery_torsion(rep, SurgerySlope{*cfg.p, *cfg.q});
            r.tau_m = t.value;
            r.extension_residual = t.extension_residual;
        } catch (const error&) {
            r.extension_residual = extension_residual_unchecked(rep, *cfg.p, *cfg.q);
        }
    }
    return r;
}

std::vector<NonabelianRep> collect_candidates(int m, int n, cplx x, double perturb) {
    const RootEnumeration en = riley_roots(m, n, x);
    std::vector<NonabelianRep> out;
    for (const NonabelianRep& rep : en.reps) {
        if (perturb != 0.0) {
            NonabelianRep moved = make_rep(m, n, x, rep.y + perturb);
            moved.flags = rep.flags;
            out.push_back(std::move(moved));
        } else {
            out.push_back(rep);
        }
    }
    for (const cplx& y : en.excluded) {
        NonabelianRep cand = make_rep(m, n, x, y + perturb);
        cand.flags.push_back("reducible_candidate");
        out.push_back(std::move(cand));
    }
    auto key = [](const NonabelianRep& r) {
        return std::make_pair(std::round(r.y.real() * 1e10), std::round(r.y.imag() * 1e10));
    };
    std::sort(out.begin(), out.end(),
              [&](const NonabelianRep& a, const NonabelianRep& b) { return key(a) < key(b); });
    return out;
}

void emit_json(const RunConfig& cfg, const std::vector<RootReport>& rows, std::ostream& out) {
    out << "{\n";
    out << "  \"knot\": {\"m\": " << cfg.m << ", \"n\": " << cfg.n << "},\n";
    out << "  \"x\": " << jcplx(cfg.x) << ",\n";
    out << "  \"roots\": [";
    for (size_t i = 0; i < rows.size(); ++i) {
        const RootReport& r = rows[i];
        const TapPolynomial tap = tap_closed(r.rep);
        out << (i ? ",\n" : "\n");
        out << "    {\n";
        out << "      \"y\": " << jcplx(r.rep.y) << ",\n";
        out << "      \"z\": " << jcplx(r.rep.z) << ",\n";
        out << "      \"residual\": " << fd(r.rep.riley_residual) << ",\n";
        out << "      \"tap\": {\"cm1\": " << jcplx(tap.poly.coeff(-1))
            << ", \"c0\": " << jcplx(tap.poly.coeff(0))
            << ", \"c1\": " << jcplx(tap.poly.coeff(1)) << "},\n";
        out << "      \"torsion_knot\": " << (r.tau_k ? jcplx(*r.tau_k) : "null") << ",\n";
        out << "      \"longitude_trace\": " << jcplx(r.longitude_trace) << ",\n";
        out << "      \"surgery\": ";
        if (r.have_surgery) {
            out << "{\"p\": " << *cfg.p << ", \"q\": " << *cfg.q << ", \"torsion\": "
                << (r.tau_m ? jcplx(*r.tau_m) : "null")
                << ", \"extension_residual\": " << fd(r.extension_residual) << "},\n";
        } else {
            out << "null,\n";
        }
        out << "      \"flags\": [";
        for (size_t k = 0; k < r.rep.flags.size(); ++k)
            out << (k ? "," : "") << jstr(r.rep.flags[k]);
        out << "]\n";
        out << "    }";
    }
    out << (rows.empty() ? "]\n" : "\n  ]\n");
    out << "}\n";
}

std::string join_flags(const std::vector<std::string>& flags) {
    std::string s;
    for (size_t i = 0; i < flags.size(); ++i) {
        if (i) s += ';';
        s += flags[i];
    }
    return s;
}

void emit_csv(const RunConfig& cfg, const std::vector<RootReport>& rows, std::ostream& out) {
    out << "m,n,x,root_index,y,z,residual,tap_cm1,tap_c0,tap_c1,"
           "torsion_knot,longitude_trace,surgery_p,surgery_q,surgery_torsion,"
           "extension_residual,flags\r\n";
    for (size_t i = 0; i < rows.size(); ++i) {
        const RootReport& r = rows[i];
        const TapPolynomial tap = tap_closed(r.rep);
        out << cfg.m << ',' << cfg.n << ',' << format_complex_csv(cfg.x) << ',' << i << ','
            << format_complex_csv(r.rep.y) << ',' << format_complex_csv(r.rep.z) << ','
            << fd(r.rep.riley_residual) << ',' << format_complex_csv(tap.poly.coeff(-1)) << ','
            << format_complex_csv(tap.poly.coeff(0)) << ','
            << format_complex_csv(tap.poly.coeff(1)) << ','
            << (r.tau_k ? format_complex_csv(*r.tau_k) : "") << ','
            << format_complex_csv(r.longitude_trace) << ',';
        if (r.have_surgery) {
            out << *cfg.p << ',' << *cfg.q << ','
                << (r.tau_m ? format_complex_csv(*r.tau_m) : "") << ','
                << fd(r.extension_residual) << ',';
        } else {
            out << ",,,,";
        }
        out << join_flags(r.rep.flags) << "\r\n";
    }
}

void emit_pretty(const RunConfig& cfg, const std::vector<RootReport>& rows, std::ostream& out) {
    out << "J(" << 2 * cfg.m << "," << 2 * cfg.n << ")  x = " << fd(cfg.x.real());
    if (cfg.x.imag() != 0) out << (cfg.x.imag() < 0 ? " - " : " + ") << fd(std::abs(cfg.x.imag())) << "i";
    out << "\n";
    for (size_t i = 0; i < rows.size(); ++i) {
        const RootReport& r = rows[i];
        const TapPolynomial tap = tap_closed(r.rep);
        out << "root " << i << ": y = " << format_complex_csv(r.rep.y)
            << "  z = " << format_complex_csv(r.rep.z)
            << "  residual = " << fd(r.rep.riley_residual) << "\n";
        out << "  tap coefficients (t^-1, 1, t): " << format_complex_csv(tap.poly.coeff(-1))
            << ", " << format_complex_csv(tap.poly.coeff(0)) << ", "
            << format_complex_csv(tap.poly.coeff(1)) << "\n";
        out << "  torsion: " << (r.tau_k ? format_complex_csv(*r.tau_k) : "n/a (x = 2)")
            << "  longitude trace: " << format_complex_csv(r.longitude_trace) << "\n";
        if (r.have_surgery) {
            out << "  surgery " << *cfg.p << "/" << *cfg.q << ": torsion "
                << (r.tau_m ? format_complex_csv(*r.tau_m) : "n/a (x in {0,2})")
                << "  extension residual " << fd(r.extension_residual) << "\n";
        }
        if (!r.rep.flags.empty()) out << "  flags: " << join_flags(r.rep.flags) << "\n";
    }
}

} // namespace

cplx parse_complex(const std::string& text) {
    // spaces are allowed around signs ("1 + 0.7i") but not inside a term
    for (size_t i = 0; i < text.size(); ++i) {
        if (text[i] != ' ') continue;
        size_t prev = i;
        while (prev > 0 && text[prev - 1] == ' ') --prev;
        size_t next = i + 1;
        while (next < text.size() && text[next] == ' ') ++next;
        if (prev == 0 || next == text.size()) continue;
        if (text[prev - 1] != '+' && text[prev - 1] != '-' && text[next] != '+' &&
            text[next] != '-')
            throw error("unparsable complex literal: " + text);
    }
    std::string s;
    for (char c : text)
        if (c != ' ') s += c;
    if (s.empty()) throw error("empty complex literal");

    // split into up to two signed terms; a sign right after e/E is an exponent
    std::vector<std::string> terms;
    size_t start = 0;
    for (size_t i = 1; i < s.size(); ++i) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            terms.push_back(s.substr(start, i - start));
            start = i;
        }
    }
    terms.push_back(s.substr(start));
    if (terms.size() > 2) throw error("unparsable complex literal: " + text);

    double re = 0, im = 0;
    bool have_re = false, have_im = false;
    for (std::string t : terms) {
        const bool imag = !t.empty() && t.back() == 'i';
        if (imag) t.pop_back();
        double v;
        if (t.empty() || t == "+")
            v = 1;
        else if (t == "-")
            v = -1;
        else {
            char* end = nullptr;
            v = std::strtod(t.c_str(), &end);
            if (end != t.c_str() + t.size()) throw error("unparsable complex literal: " + text);
        }
        if (imag) {
            if (have_im) throw error("unparsable complex literal: " + text);
            im = v;
            have_im = true;
        } else {
            if (have_re) throw error("unparsable complex literal: " + text);
            re = v;
            have_re = true;
        }
    }
    return {re, im};
}

std::string format_double(double v) {
    if (v == 0) v = 0; // collapse -0 for byte-stable output
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_complex_csv(cplx v) {
    const double im = (v.imag() == 0) ? 0 : v.imag();
    return format_double(v.real()) + (im < 0 ? "-" : "+") + format_double(std::abs(im)) + "i";
}

int cmd_invariants(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.m == 0 || cfg.n == 0) {
        err << "m and n must be nonzero\n";
        return 1;
    }
    if (cfg.p.has_value() != cfg.q.has_value()) {
        err << "surgery slope needs both --p and --q\n";
        return 1;
    }
    if (cfg.p && cfg.q) {
        if (*cfg.p == 0 && *cfg.q == 0) {
            err << "surgery slope 0/0 is not a slope\n";
            return 1;
        }
        if (std::gcd(std::abs(*cfg.p), std::abs(*cfg.q)) != 1) {
            err << "surgery slope p/q must be coprime\n";
            return 1;
        }
    }

    std::vector<RootReport> rows;
    try {
        for (const NonabelianRep& rep : collect_candidates(cfg.m, cfg.n, cfg.x, cfg.perturb))
            rows.push_back(build_report(cfg, rep));
    } catch (const error& e) {
        err << "computation failed: " << e.what() << "\n";
        return 2;
    }

    switch (cfg.format) {
        case OutputFormat::json: emit_json(cfg, rows, out); break;
        case OutputFormat::csv: emit_csv(cfg, rows, out); break;
        case OutputFormat::pretty: emit_pretty(cfg, rows, out); break;
    }

    for (const RootReport& r : rows)
        if (r.rep.riley_residual > cfg.tol) {
            err << "residual " << fd(r.rep.riley_residual) << " above tolerance at y = "
                << format_complex_csv(r.rep.y) << "\n";
            return 2;
        }
    return 0;
}

namespace {

struct VerifyState {
    long total = 0;
    long failed = 0;
    std::ostream& err;
    explicit VerifyState(std::ostream& e) : err(e) {}

    void check(bool ok, const std::string& what) {
        ++total;
        if (!ok) {
            ++failed;
            err << "FAIL " << what << "\n";
        }
    }
};

std::string point_tag(int m, int n, cplx x, cplx y) {
    return "(m=" + std::to_string(m) + ", n=" + std::to_string(n) +
           ", x=" + format_complex_csv(x) + ", y=" + format_complex_csv(y) + ")";
}

void verify_chebyshev(VerifyState& st) {
    std::mt19937 rng(20240915);
    std::uniform_real_distribution<double> box(-2.0, 2.0);
    auto rnd = [&]() { return cplx(box(rng), box(rng)); };

    for (int i = 0; i < 100; ++i) {
        const cplx v = rnd();
        const int k = static_cast<int>(rng() % 21) - 10;
        const cplx sk = cheb_s(k, v), sk1 = cheb_s(k - 1, v);
        const double bound = 1e-9 * std::pow(1.0 + std::abs(v), 2.0 * std::abs(k));
        st.check(std::abs(sk * sk - v * sk * sk1 + sk1 * sk1 - 1.0) < bound,
                 "chebyshev trace identity k=" + std::to_string(k));
    }
    for (int i = 0; i < 100; ++i) {
        cplx v = rnd();
        if (std::abs(v - 2.0) <= 0.1) v += 0.5;
        const int k = static_cast<int>(rng() % 12) - 1;
        const cplx direct = cheb_p(k, v);
        const cplx quotient = (cheb_s(k + 1, v) - cheb_s(k, v) - 1.0) / (v - 2.0);
        st.check(std::abs(direct - quotient) < 1e-9 * (1.0 + std::abs(direct)),
                 "chebyshev partial-sum quotient k=" + std::to_string(k));
    }
    for (int i = 0; i < 100; ++i) {
        // random SL2 matrix
        cplx a = rnd(), b = rnd(), c = rnd();
        if (std::abs(a) < 0.2) a += 1.0;
        const Mat2 V{a, b, c, (1.0 + b * c) / a};
        const int k = static_cast<int>(rng() % 21) - 10;
        const Mat2 closed = mat2_power(V, k);
        Mat2 direct = Mat2::identity();
        const Mat2 base = k >= 0 ? V : mat2_inv(V);
        for (int j = 0; j < std::abs(k); ++j) direct = mat2_mul(direct, base);
        st.check(mat2_max_abs(mat2_sub(closed, direct)) <=
                     1e-9 * std::max(1.0, mat2_max_abs(direct)),
                 "matrix power closed form k=" + std::to_string(k));
    }
    for (int i = 0; i < 100; ++i) {
        cplx a = rnd(), b = rnd(), c = rnd();
        if (std::abs(a) < 0.2) a += 1.0;
        const Mat2 V{a, b, c, (1.0 + b * c) / a};
        const int k = static_cast<int>(rng() % 8);
        const cplx det = mat2_geom_sum(V, k).det();
        const cplx want = cheb_d(k + 1, V.trace());
        st.check(std::abs(det - want) <= 1e-9 * std::max(1.0, std::abs(want)),
                 "geometric sum determinant k=" + std::to_string(k));
    }
}

void verify_rep_suite(VerifyState& st, int m, int n, cplx x, double perturb) {
    RootEnumeration en;
    try {
        en = riley_roots(m, n, x);
    } catch (const error& e) {
        st.check(false, std::string("root enumeration: ") + e.what());
        return;
    }
    for (NonabelianRep rep : en.reps) {
        if (perturb != 0.0) rep = make_rep(m, n, x, rep.y + perturb);
        const std::string tag = point_tag(m, n, x, rep.y);
        // perturbed points may legitimately throw (inexact division, degenerate
        // denominators); count that as the named failure rather than crashing
        auto guarded = [&](const std::string& what, auto&& fn) {
            try {
                st.check(fn(), what + " " + tag);
            } catch (const error& e) {
                st.check(false, what + " threw " + e.what() + " " + tag);
            }
        };

        st.check(rep.riley_residual <= 1e-8, "representation residual " + tag);

        guarded("closed tap vs fox oracle (da)", [&] {
            return laurent_equal_mod_t2(tap_closed(rep).poly,
                                        tap_oracle(rep, FoxColumn::da).poly, 1e-6);
        });
        guarded("fox oracle da vs db", [&] {
            return laurent_equal_mod_t2(tap_oracle(rep, FoxColumn::da).poly,
                                        tap_oracle(rep, FoxColumn::db).poly, 1e-6);
        });
        guarded("longitude trace dual path", [&] {
            return close_rel(longitude_trace_closed(rep), longitude_trace_direct(rep), 1e-6);
        });
        // squared-sum identity that holds exactly on the representation variety
        guarded("root product identity", [&] {
            const cplx y = rep.y, e = rep.e, z = rep.z;
            const cplx sm1 = cheb_s(m - 1, y);
            const cplx sn1 = cheb_s(n - 1, z);
            const cplx rhs =
                (y - e) * sm1 * sm1 * (2.0 - e + (y - e) * (y - 2.0) * sm1 * sm1);
            return std::abs(sn1 * sn1 * rhs - 1.0) <= 1e-7;
        });
        if (std::abs(x) > 0.1 && std::abs(x - 2.0) > 0.1) {
            guarded("surgery torsion dual path", [&] {
                surgery_torsion(rep, SurgerySlope{1, 0}); // internally dual-path asserted
                return true;
            });
        }
    }
}

} // namespace

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    VerifyState st(err);
    verify_chebyshev(st);

    const std::vector<int> all{-3, -2, -1, 1, 2, 3};
    const std::vector<cplx> xs{{0.5, 0}, {1.0, 0}, {2.4, 0}, {1.0, 0.7}, {-0.3, 1.1}};
    std::vector<int> ms = all, ns = all;
    if (cfg.verify_m) ms = {*cfg.verify_m};
    if (cfg.verify_n) ns = {*cfg.verify_n};
    for (int m : ms)
        for (int n : ns)
            for (const cplx& x : xs) verify_rep_suite(st, m, n, x, cfg.perturb);

    if (st.failed == 0) {
        out << "all " << st.total << " checks passed\n";
        return 0;
    }
    out << st.failed << " of " << st.total << " checks failed\n";
    return 2;
}

int cmd_table(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.m == 0 || cfg.n == 0) {
        err << "m and n must be nonzero\n";
        return 1;
    }
    cplx start, end;
    long count = 0;
    {
        const std::string& g = cfg.grid;
        const size_t c1 = g.find(':');
        const size_t c2 = (c1 == std::string::npos) ? std::string::npos : g.find(':', c1 + 1);
        if (c2 == std::string::npos) {
            err << "grid must be START:END:COUNT\n";
            return 1;
        }
        try {
            start = parse_complex(g.substr(0, c1));
            end = parse_complex(g.substr(c1 + 1, c2 - c1 - 1));
        } catch (const error& e) {
            err << e.what() << "\n";
            return 1;
        }
        char* endp = nullptr;
        const std::string cnt = g.substr(c2 + 1);
        count = std::strtol(cnt.c_str(), &endp, 10);
        if (cnt.empty() || endp != cnt.c_str() + cnt.size() || count < 1 || count > 10000) {
            err << "grid count must be in [1, 10000]\n";
            return 1;
        }
    }

    out << "x,root_index,y,torsion_knot,longitude_trace\r\n";
    for (long i = 0; i < count; ++i) {
        const double f = (count == 1) ? 0.0 : static_cast<double>(i) / (count - 1);
        const cplx x = start + (end - start) * f;
        std::vector<NonabelianRep> cands;
        try {
            cands = collect_candidates(cfg.m, cfg.n, x, cfg.perturb);
        } catch (const error& e) {
            err << "computation failed at x = " << format_complex_csv(x) << ": " << e.what()
                << "\n";
            return 2;
        }
        for (size_t idx = 0; idx < cands.size(); ++idx) {
            const NonabelianRep& rep = cands[idx];
            std::string tau;
            try {
                tau = format_complex_csv(torsion_knot(rep).value);
            } catch (const ParabolicMeridian&) {
            }
            out << format_complex_csv(x) << ',' << idx << ',' << format_complex_csv(rep.y)
                << ',' << tau << ',' << format_complex_csv(longitude_trace_robust(rep))
                << "\r\n";
        }
    }
    return 0;
}

} // namespace twobridge
