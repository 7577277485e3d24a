#include <doctest.h>

#include <cstdio>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

#include "twobridge/cli.hpp"
#include "twobridge/riley.hpp"
#include "twobridge/torsion.hpp"

using namespace twobridge;
using nlohmann::json;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args, bool merge_stderr = false) {
    const std::string cmd = std::string(CLI_BIN) + " " + args +
                            (merge_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* f = popen(cmd.c_str(), "r");
    REQUIRE(f != nullptr);
    RunResult r;
    char buf[4096];
    size_t k;
    while ((k = fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, k);
    const int st = pclose(f);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::vector<std::string> split_lines(const std::string& s) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : s) {
        if (c == '\n') {
            if (!cur.empty() && cur.back() == '\r') cur.pop_back();
            lines.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    return lines;
}

cplx from_json_pair(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

} // namespace

TEST_CASE("parse_complex accepts the documented forms") {
    CHECK(parse_complex("1.5") == cplx(1.5, 0));
    CHECK(parse_complex("-2") == cplx(-2, 0));
    CHECK(parse_complex("1+0.7i") == cplx(1, 0.7));
    CHECK(parse_complex("-0.3+1.1i") == cplx(-0.3, 1.1));
    CHECK(parse_complex("2i") == cplx(0, 2));
    CHECK(parse_complex("-i") == cplx(0, -1));
    CHECK(parse_complex("i") == cplx(0, 1));
    CHECK(parse_complex("1e-3+2e-4i") == cplx(1e-3, 2e-4));
    CHECK(parse_complex("2.5-0.5i") == cplx(2.5, -0.5));
    CHECK(parse_complex("1 + 0.7i") == cplx(1, 0.7));
    CHECK(parse_complex(" 2.4 ") == cplx(2.4, 0));
    CHECK_THROWS_AS(parse_complex(""), error);
    CHECK_THROWS_AS(parse_complex("abc"), error);
    CHECK_THROWS_AS(parse_complex("1+"), error);
    CHECK_THROWS_AS(parse_complex("1..2"), error);
    CHECK_THROWS_AS(parse_complex("1 2"), error);
}

TEST_CASE("format_double is deterministic and collapses signed zero") {
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(-0.0) == "0");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.5) == "0.5");
    // 17 significant digits round-trip
    const double v = 0.1234567890123456789;
    CHECK(std::stod(format_double(v)) == v);
    CHECK(format_complex_csv({1, 2}) == "1+2i");
    CHECK(format_complex_csv({1.5, -0.25}) == "1.5-0.25i");
    CHECK(format_complex_csv({-2, 0}) == "-2+0i");
}

TEST_CASE("invariants json for the conical fixed point") {
    const RunResult r = run_cli("invariants --m 1 --n 1 --x 1 --p 3 --q 1");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);

    CHECK(j.at("knot").at("m") == 1);
    CHECK(j.at("knot").at("n") == 1);
    CHECK(from_json_pair(j.at("x")) == cplx(1, 0));

    REQUIRE(j.at("roots").size() == 1);
    const json& root = j.at("roots").at(0);
    CHECK(std::abs(from_json_pair(root.at("y"))) < 1e-9);
    CHECK(std::abs(from_json_pair(root.at("z"))) < 1e-9);
    CHECK(root.at("residual").get<double>() < 1e-10);

    CHECK(std::abs(from_json_pair(root.at("tap").at("cm1")) - 1.0) < 1e-12);
    CHECK(std::abs(from_json_pair(root.at("tap").at("c0"))) < 1e-12);
    CHECK(std::abs(from_json_pair(root.at("tap").at("c1")) - 1.0) < 1e-12);

    CHECK(std::abs(from_json_pair(root.at("torsion_knot")) - 2.0) < 1e-10);
    CHECK(std::abs(from_json_pair(root.at("longitude_trace")) + 2.0) < 1e-10);

    const json& surgery = root.at("surgery");
    CHECK(surgery.at("p") == 3);
    CHECK(surgery.at("q") == 1);
    CHECK(std::abs(from_json_pair(surgery.at("torsion")) - 0.5) < 1e-9);
    CHECK(surgery.at("extension_residual").get<double>() < 1e-9);
}

TEST_CASE("invariants json round-trips through the library") {
    const RunResult r = run_cli("invariants --m 2 --n -1 --x 0.8+0.1i");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    const cplx x = from_json_pair(j.at("x"));
    REQUIRE(!j.at("roots").empty());
    for (const json& root : j.at("roots")) {
        const cplx y = from_json_pair(root.at("y"));
        CHECK(rep_residual(2, -1, x, y) < 1e-8);
        const NonabelianRep rep = make_rep(2, -1, x, y);
        CHECK(std::abs(rep.z - from_json_pair(root.at("z"))) < 1e-9);
        const LaurentPoly tap = tap_closed(rep).poly;
        CHECK(std::abs(tap.coeff(-1) - from_json_pair(root.at("tap").at("cm1"))) < 1e-9);
        CHECK(std::abs(tap.coeff(0) - from_json_pair(root.at("tap").at("c0"))) < 1e-9);
        if (!root.at("torsion_knot").is_null()) {
            CHECK(std::abs(torsion_knot(rep).value -
                           from_json_pair(root.at("torsion_knot"))) < 1e-9);
        }
    }
}

TEST_CASE("invariants torsion is null at the parabolic meridian trace") {
    const RunResult r = run_cli("invariants --m 1 --n -1 --x 2");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j.at("roots").size() == 2);
    for (const json& root : j.at("roots")) {
        CHECK(root.at("torsion_knot").is_null());
        CHECK(root.at("surgery").is_null());
        // tap is fine: t^-1 - 4 + t at both roots of y^2-3y+3
        CHECK(std::abs(from_json_pair(root.at("tap").at("cm1")) - 1.0) < 1e-9);
        CHECK(std::abs(from_json_pair(root.at("tap").at("c0")) + 4.0) < 1e-9);
    }
    // roots ordered by (Re, Im): -sqrt(3)/2 before +sqrt(3)/2
    CHECK(from_json_pair(j.at("roots").at(0).at("y")).imag() < 0);
}

TEST_CASE("invariants output is byte identical across runs") {
    const std::string args = "invariants --m 2 --n 2 --x 1+0.7i --p 1 --q 2";
    const RunResult a = run_cli(args);
    const RunResult b = run_cli(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const RunResult c = run_cli("invariants --m 2 --n 2 --x 1+0.7i --p 1 --q 2 --format csv");
    const RunResult d = run_cli("invariants --m 2 --n 2 --x 1+0.7i --p 1 --q 2 --format csv");
    CHECK(c.out == d.out);
}

TEST_CASE("invariants csv shape") {
    const RunResult r = run_cli("invariants --m 1 --n 1 --x 2.4 --format csv");
    REQUIRE(r.code == 0);
    const auto lines = split_lines(r.out);
    REQUIRE(lines.size() >= 2);
    CHECK(lines[0] ==
          "m,n,x,root_index,y,z,residual,tap_cm1,tap_c0,tap_c1,torsion_knot,"
          "longitude_trace,surgery_p,surgery_q,surgery_torsion,extension_residual,flags");
    // crlf endings on every line
    size_t pos = r.out.find('\n');
    while (pos != std::string::npos) {
        REQUIRE(pos > 0);
        CHECK(r.out[pos - 1] == '\r');
        pos = r.out.find('\n', pos + 1);
    }
    // first data row carries the knot parameters and the x value verbatim
    std::vector<std::string> fields;
    std::stringstream ss(lines[1]);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    REQUIRE(fields.size() >= 3);
    CHECK(fields[0] == "1");
    CHECK(fields[1] == "1");
    CHECK(parse_complex(fields[2]) == cplx(2.4, 0));
}

TEST_CASE("invariants usage errors exit 1") {
    CHECK(run_cli("invariants --m 0 --n 1 --x 1", true).code == 1);
    const RunResult r = run_cli("invariants --m 0 --n 1 --x 1", true);
    CHECK(r.out.find("m and n must be nonzero") != std::string::npos);
    CHECK(run_cli("invariants --m 1 --n 1 --x 1 --p 2", true).code == 1);
    CHECK(run_cli("invariants --m 1 --n 1 --x 1 --p 0 --q 0", true).code == 1);
    CHECK(run_cli("invariants --m 1 --n 1 --x 1 --p 2 --q 4", true).code == 1);
    CHECK(run_cli("invariants --m 1 --n 1 --x nope", true).code == 1);
    CHECK(run_cli("invariants --m 1 --n 1", true).code == 1);
    CHECK(run_cli("bogus-subcommand", true).code == 1);
}

TEST_CASE("perturbation hook trips the residual gate") {
    const RunResult r = run_cli("invariants --m 1 --n 1 --x 0.5 --perturb 1e-3", true);
    CHECK(r.code == 2);
}

TEST_CASE("verify subcommand") {
    const RunResult r = run_cli("verify --m 1 --n 1");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("checks passed") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);

    const RunResult bad = run_cli("verify --m 1 --n 1 --perturb 1e-3", true);
    CHECK(bad.code == 2);
    CHECK(bad.out.find("FAIL") != std::string::npos);
    CHECK(bad.out.find("checks failed") != std::string::npos);
}

TEST_CASE("table subcommand") {
    const RunResult r = run_cli("table --m 1 --n 1 --grid 2.5:2.5:1");
    REQUIRE(r.code == 0);
    const auto lines = split_lines(r.out);
    REQUIRE(lines.size() == 2); // header + single real grid point, one root
    CHECK(lines[0] == "x,root_index,y,torsion_knot,longitude_trace");

    const RunResult g = run_cli("table --m 1 --n 1 --grid 0.5:1.5:11");
    REQUIRE(g.code == 0);
    CHECK(split_lines(g.out).size() == 12); // header + one root per x

    const RunResult shape = run_cli("table --m 1 --n 1 --grid 1:2", true);
    CHECK(shape.code == 1);
    CHECK(shape.out.find("grid must be START:END:COUNT") != std::string::npos);
    const RunResult cnt = run_cli("table --m 1 --n 1 --grid 1:2:0", true);
    CHECK(cnt.code == 1);
    CHECK(cnt.out.find("grid count") != std::string::npos);
    CHECK(run_cli("table --m 1 --n 1 --grid 1:2:99999", true).code == 1);
    CHECK(run_cli("table --m 1 --n 1 --grid x:y:z", true).code == 1);
}

TEST_CASE("table covers the parabolic point without a torsion value") {
    // grid includes x = 2 exactly; torsion column must be empty there, exit still 0
    const RunResult r = run_cli("table --m 1 --n -1 --grid 2:2:1");
    REQUIRE(r.code == 0);
    const auto lines = split_lines(r.out);
    REQUIRE(lines.size() == 3); // header + two roots
    for (size_t i = 1; i < lines.size(); ++i) {
        // columns: x,root_index,y,torsion_knot,longitude_trace
        std::vector<std::string> fields;
        std::stringstream ss(lines[i]);
        std::string f;
        while (std::getline(ss, f, ',')) fields.push_back(f);
        REQUIRE(fields.size() == 5);
        CHECK(fields[3].empty());
        CHECK(!fields[4].empty());
    }
}
