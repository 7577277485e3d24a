#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "twobridge/algebra.hpp"

namespace twobridge {

enum class OutputFormat { json, csv, pretty };

struct RunConfig {
    int m = 0, n = 0;
    cplx x{};
    std::optional<long> p, q;  // surgery slope
    double tol = 1e-8;
    OutputFormat format = OutputFormat::json;
    std::string grid;      // "START:END:COUNT" for cmd_table
    double perturb = 0.0;  // test hook: offsets every root y before checks
    bool have_x = false;
    std::optional<int> verify_m, verify_n; // grid restriction for cmd_verify
};

// "re", "re+imi", "re-imi", also pure "imi". Throws error on parse failure.
cplx parse_complex(const std::string& text);

// 17 significant digits, deterministic
std::string format_double(double v);
std::string format_complex_csv(cplx v); // "re+imi"

// exit codes: 0 ok, 1 usage error, 2 numerical/verification failure
int cmd_invariants(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_table(const RunConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace twobridge
