// Acceptance battery: runs the full verification suite with fixed seeds and
// prints one PASS/FAIL line per criterion row.

#include <cstdio>
#include <cstring>

#include "vp/suite.hpp"

int main(int argc, char** argv) {
    vp::SuiteOptions opts;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--quick") == 0) opts.quick = true;
        if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc)
            opts.seed = std::strtoull(argv[++i], nullptr, 10);
    }
    std::vector<vp::CheckReport> reports = vp::paper_suite(opts);
    int failures = 0;
    for (const vp::CheckReport& r : reports) {
        std::printf("%s  %-42s lhs=%-16.9g rhs=%-16.9g %s tol=%.3g\n",
                    r.pass ? "PASS" : "FAIL", r.name.c_str(), r.lhs, r.rhs,
                    vp::relation_symbol(r.relation).c_str(), r.tolerance);
        if (!r.pass) ++failures;
    }
    std::printf("%d/%zu acceptance rows passed\n", static_cast<int>(reports.size()) - failures,
                reports.size());
    return failures == 0 ? 0 : 1;
}
