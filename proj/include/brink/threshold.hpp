#ifndef BRINK_THRESHOLD_HPP
#define BRINK_THRESHOLD_HPP

#include <stdexcept>
#include <string>

#include "brink/potentials.hpp"
#include "brink/solver.hpp"

namespace brink {

enum class CriticalParameter { well_depth, tail_strength };
enum class CriticalMethod { matching, bisection };

struct CriticalResult {
    CriticalParameter parameter = CriticalParameter::well_depth;
    double critical_value = 0.0;
    CriticalMethod method = CriticalMethod::matching;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    // matching: residual at the root; bisection: final bracket width
    double residual = 0.0;
};

struct PoleError : std::runtime_error {
    explicit PoleError(const std::string& what) : std::runtime_error(what) {}
};
struct UnsupportedTail : std::runtime_error {
    explicit UnsupportedTail(const std::string& what) : std::runtime_error(what) {}
};
struct NoSignChange : std::runtime_error {
    NoSignChange() : std::runtime_error("matching residual does not change sign on the bracket") {}
};
struct PredicateConstant : std::runtime_error {
    PredicateConstant() : std::runtime_error("bound-state existence does not change across the bracket") {}
};
struct NotCritical : std::runtime_error {
    NotCritical() : std::runtime_error("model parameter is not at a matching-critical value") {}
};

/// Log-derivative u'/u at r_w of the zero-energy solution inside the
/// well.  lambda_eff is the well depth with 2m already folded in:
///   even1d            -k tan(k r_w)
///   odd1d, swave3d     k cot(k r_w)
/// with k = sqrt(lambda_eff).  Throws PoleError near trigonometric poles.
double inside_logderiv(double lambda_eff, double r_w, Symmetry sym);

/// Log-derivative at r_w of the decaying zero-energy solution
/// u(r) = sqrt(r) K1(2 sqrt(c_eff r)) outside a Coulomb tail:
///   -sqrt(c_eff) K0(2 sqrt(c_eff r_w)) / (sqrt(r_w) K1(2 sqrt(c_eff r_w))).
double outside_logderiv_coulomb(double c_eff, double r_w);

/// Log-derivative at r_w of the bounded zero-energy solution behind a
/// finite barrier (constant beyond r_out):  -sqrt(c_eff) tanh(sqrt(c_eff) (r_out - r_w)).
double outside_logderiv_barrier(double c_eff, double r_w, double r_out);

/// inside_logderiv - outside_logderiv at the well edge, E = 0.  Vanishes
/// exactly at a critical coupling.  Supported tails: Coulomb with
/// exponent 1 and the finite barrier; otherwise throws UnsupportedTail.
double matching_residual(const RadialModel& m);

RadialModel with_parameter(const RadialModel& m, CriticalParameter p, double value);
const char* to_string(CriticalParameter p);
const char* to_string(CriticalMethod m);

/// Root of the matching residual over the bracket: 60 bisection steps
/// followed by a short secant polish, |residual| < 1e-12 at the root.
CriticalResult critical_by_matching(const RadialModel& m, CriticalParameter p,
                                    double lo, double hi);

/// Critical value from the bound-state existence predicate on the given
/// grid, bisected to width param_tol.
CriticalResult critical_by_bisection(const RadialModel& m, CriticalParameter p,
                                     double lo, double hi, const Grid& g,
                                     double param_tol = 1e-6);

enum class ThresholdKind { eigenvalue, resonance };

struct ThresholdClassification {
    ThresholdKind kind = ThresholdKind::eigenvalue;
    bool normalizable = false;
    std::string tail_form;
};

struct ThresholdState {
    Wavefunction wavefunction;
    ThresholdClassification classification;
};

/// Zero-energy state of a model whose tuned parameter sits within 1e-6
/// of a matching-critical value: outward integration over the well glued
/// to the analytic outer solution.  Coulomb tails give a normalizable
/// eigenstate (returned normalized), barrier tails a resonance whose
/// values tend to a nonzero constant (returned unnormalized).
ThresholdState threshold_state(const RadialModel& m, const Grid& g);

}  // namespace brink

#endif
