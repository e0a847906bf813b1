#include "vp/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace vp {

std::string relation_symbol(Relation r) {
    switch (r) {
        case Relation::LessEqual: return "<=";
        case Relation::GreaterEqual: return ">=";
        case Relation::Equal: return "=";
    }
    return "?";
}

CheckReport make_report(std::string name, double lhs, double rhs, Relation rel, double tolerance) {
    CheckReport rep;
    rep.name = std::move(name);
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.relation = rel;
    rep.tolerance = tolerance;
    switch (rel) {
        case Relation::LessEqual: rep.pass = lhs <= rhs + tolerance; break;
        case Relation::GreaterEqual: rep.pass = lhs >= rhs - tolerance; break;
        case Relation::Equal:
            rep.pass = std::abs(lhs - rhs) <= tolerance * std::max(1.0, std::abs(rhs));
            break;
    }
    rep.equality = std::abs(lhs - rhs) <= tolerance * std::max(1.0, std::abs(rhs));
    return rep;
}

std::string digest(const std::string& payload) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : payload) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

} // namespace vp
