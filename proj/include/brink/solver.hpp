#ifndef BRINK_SOLVER_HPP
#define BRINK_SOLVER_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "brink/potentials.hpp"

namespace brink {

/// Uniform radial grid r_i = i*h with h = r_max/(n-1).
struct Grid {
    double r_max = 50.0;
    std::size_t n = 50001;

    double spacing() const { return r_max / static_cast<double>(n - 1); }
    double point(std::size_t i) const { return static_cast<double>(i) * spacing(); }

    // nearest point count for a requested spacing
    static Grid with_spacing(double r_max, double h);
};

struct Wavefunction {
    Grid grid;
    std::vector<double> u;  // reduced radial solution samples
    bool normalized = false;
    Symmetry symmetry = Symmetry::even1d;

    // psi = u for the 1d symmetries, u/r for swave3d (NaN at r = 0)
    double psi(std::size_t i) const;
};

struct NoBoundState : std::runtime_error {
    NoBoundState() : std::runtime_error("no bound state below the threshold") {}
};
struct GridTooSmall : std::runtime_error {
    explicit GridTooSmall(const std::string& what) : std::runtime_error(what) {}
};
struct ZeroNorm : std::runtime_error {
    ZeroNorm() : std::runtime_error("wavefunction has zero norm") {}
};

struct NumerovResult {
    std::vector<double> u;
    int node_count = 0;
    double boundary_log_deriv = 0.0;  // u'/u at r_max, one-sided 4th order
    int rescale_count = 0;
};

/// Potential sampled on the grid.  Grid points that fall on a jump of V
/// get the mean of the two one-sided limits, which restores the
/// integrator's interior convergence order at the discontinuity.
std::vector<double> sampled_potential(const RadialModel& m, const Grid& g);

/// Fourth-order outward Numerov integration of
///   -(1/2m) u'' + V u = E u
/// with initial data fixed by the symmetry class:
///   even1d          u(0) = 1, u'(0) = 0
///   odd1d, swave3d  u(0) = 0, u'(0) = 1.
/// Values are rescaled whenever |u| exceeds 1e100 (count reported).
/// E may be positive; only solve_ground restricts its sign.
NumerovResult numerov_integrate(const RadialModel& m, double energy, const Grid& g);

/// True iff the zero-energy outward solution has a node on the grid,
/// i.e. the model supports a negative-energy state in the Dirichlet box.
bool has_bound_state(const RadialModel& m, const Grid& g);

struct SolveOptions {
    double e_tol = -1.0;            // < 0 -> 1e-10 * well_depth
    int max_iter = 200;
    double tail_tol_factor = 0.05;  // GridTooSmall if |V(r_max)| > factor*well_depth
};

struct EigenResult {
    double energy = 0.0;
    double binding = 0.0;  // -energy
    int nodes = 0;
    double residual = 0.0;  // log-derivative mismatch where the outward and
                            // inward branches are glued (the well edge)
    Wavefunction wavefunction;
};

/// Ground state by node-count bisection on E in (-well_depth, 0).  The
/// returned wavefunction joins the outward solution on the well to an
/// inward-integrated tail, so the classically forbidden region stays
/// clean out to r_max.  Throws NoBoundState or GridTooSmall.
EigenResult solve_ground(const RadialModel& m, const Grid& g, const SolveOptions& opt = {});

double trapezoid_norm_sq(const Wavefunction& wf);  // int u^2 dr

Wavefunction normalize(const Wavefunction& wf);  // throws ZeroNorm

/// Trapezoid estimate of int r u(r)^2 dr; requires a normalized input.
double mean_radius(const Wavefunction& wf);

}  // namespace brink

#endif
