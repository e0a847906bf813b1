#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace vp {

// One stochastic result: the value plus everything needed to reproduce it.
struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

enum class Relation { LessEqual, GreaterEqual, Equal };

std::string relation_symbol(Relation r);

// Named verification outcome. `pass` is recomputed from the stored numbers,
// never set independently.
struct CheckReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    Relation relation = Relation::Equal;
    double tolerance = 0.0;
    bool pass = false;
    std::string inputs_digest;
    std::optional<std::uint64_t> seed;
    std::uint64_t samples = 0;
    bool equality = false;            // lhs and rhs agree within tolerance
    std::vector<std::string> flags;   // e.g. "conjectural bound"
    std::string notes;
};

// Builds a report and evaluates `pass`:
//   <=  : lhs <= rhs + tolerance
//   >=  : lhs >= rhs - tolerance
//   =   : |lhs - rhs| <= tolerance * max(1, |rhs|)
CheckReport make_report(std::string name, double lhs, double rhs, Relation rel, double tolerance);

// FNV-1a digest of an arbitrary description string; used for inputs_digest.
std::string digest(const std::string& payload);

} // namespace vp
