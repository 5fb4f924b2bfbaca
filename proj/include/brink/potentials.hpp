#ifndef BRINK_POTENTIALS_HPP
#define BRINK_POTENTIALS_HPP

#include <string>
#include <vector>

namespace brink {

// Symmetry class of the reduced radial problem.  All three integrate a
// 1D second-order equation for u(r); for swave3d u = r*psi.
enum class Symmetry { even1d, odd1d, swave3d };

enum class TailKind { none, coulomb, barrier };

struct Tail {
    TailKind kind = TailKind::none;
    double strength = 0.0;      // c: coulomb prefactor or barrier height
    double exponent = 1.0;      // alpha in (0,2], coulomb only
    double outer_radius = 0.0;  // barrier only, > well_radius
};

/// A potential well of depth well_depth on [0, well_radius] plus a
/// repulsive tail outside it.  Values are immutable after construction.
struct RadialModel {
    double two_m = 1.0;  // kinetic prefactor 2m
    double well_depth = 1.0;
    double well_radius = 1.0;
    Tail tail;
    Symmetry symmetry = Symmetry::even1d;
};

/// V(r): -well_depth on the closed well [0, well_radius], the tail value
/// beyond it (c/r^alpha, the barrier plateau, or 0).
double potential_value(const RadialModel& m, double r);

/// U(r) = max(V outside the well, 0); identically 0 on the well.
double repulsive_tail(const RadialModel& m, double r);

/// All invariant violations; empty means the model is valid.
std::vector<std::string> validate(const RadialModel& m);

/// Radii at which V jumps (well edge, barrier outer edge).
std::vector<double> discontinuities(const RadialModel& m);

const char* to_string(Symmetry s);
const char* to_string(TailKind k);

}  // namespace brink

#endif
