#include "brink/potentials.hpp"

#include <cmath>

namespace brink {

double potential_value(const RadialModel& m, double r)
{
    if (r <= m.well_radius) return -m.well_depth;
    switch (m.tail.kind) {
        case TailKind::coulomb:
            return m.tail.strength / std::pow(r, m.tail.exponent);
        case TailKind::barrier:
            return (r <= m.tail.outer_radius) ? m.tail.strength : 0.0;
        case TailKind::none:
            break;
    }
    return 0.0;
}

double repulsive_tail(const RadialModel& m, double r)
{
    if (r <= m.well_radius) return 0.0;
    return std::max(potential_value(m, r), 0.0);
}

std::vector<std::string> validate(const RadialModel& m)
{
    std::vector<std::string> issues;
    if (!(m.two_m > 0.0)) issues.push_back("two_m must be positive");
    if (m.well_depth < 0.0) issues.push_back("well_depth must be >= 0");
    if (!(m.well_radius > 0.0)) issues.push_back("well_radius must be positive");
    switch (m.tail.kind) {
        case TailKind::coulomb:
            if (!(m.tail.strength > 0.0)) issues.push_back("coulomb tail strength must be positive");
            if (!(m.tail.exponent > 0.0 && m.tail.exponent <= 2.0))
                issues.push_back("coulomb tail exponent must lie in (0, 2]");
            break;
        case TailKind::barrier:
            if (!(m.tail.strength > 0.0)) issues.push_back("barrier height must be positive");
            if (!(m.tail.outer_radius > m.well_radius))
                issues.push_back("barrier outer_radius must exceed well_radius");
            break;
        case TailKind::none:
            break;
    }
    return issues;
}

std::vector<double> discontinuities(const RadialModel& m)
{
    std::vector<double> jumps{m.well_radius};
    if (m.tail.kind == TailKind::barrier) jumps.push_back(m.tail.outer_radius);
    return jumps;
}

const char* to_string(Symmetry s)
{
    switch (s) {
        case Symmetry::even1d: return "even1d";
        case Symmetry::odd1d: return "odd1d";
        case Symmetry::swave3d: return "swave3d";
    }
    return "?";
}

const char* to_string(TailKind k)
{
    switch (k) {
        case TailKind::none: return "none";
        case TailKind::coulomb: return "coulomb";
        case TailKind::barrier: return "barrier";
    }
    return "?";
}

}  // namespace brink
