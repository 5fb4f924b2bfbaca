#ifndef BRINK_ENVELOPE_HPP
#define BRINK_ENVELOPE_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "brink/potentials.hpp"
#include "brink/solver.hpp"

namespace brink {

// The radial exponential weights F(r) the decay bound is built from:
//   linear     F = mu r
//   sqrt       F = 2 b sqrt(r)
//   ab         F = F_{a,b}(r) = int_0^r sqrt(a + b/s) ds
//   ansatz     F = F_{a,b}(r) - K r^kappa,  0 < kappa < 1/2
//   general_u  F = delta int_{r0}^r sqrt(U(s)) ds with the model's tail U
enum class EnvelopeKind { linear, sqrt_r, ab, ansatz, general_u };

struct EnvelopeSpec {
    EnvelopeKind kind = EnvelopeKind::ab;
    double mu = 0.0;
    double a = 0.0;
    double b = 0.0;
    double K = 0.0;
    double kappa = 0.25;
    double delta = 0.5;
    double r0 = 0.0;
    double region_r = 0.0;  // the R of the admissibility condition
};

struct InadmissibleAt : std::runtime_error {
    double r;
    explicit InadmissibleAt(double r_)
        : std::runtime_error("envelope condition violated at r = " + std::to_string(r_)), r(r_) {}
};
struct EmptyRegion : std::runtime_error {
    EmptyRegion() : std::runtime_error("no grid points at or beyond the region radius") {}
};
struct NonPositiveWavefunction : std::runtime_error {
    NonPositiveWavefunction() : std::runtime_error("wavefunction not strictly positive on the window") {}
};
struct SignChangeInWindow : std::runtime_error {
    SignChangeInWindow() : std::runtime_error("wavefunction changes sign inside the fit window") {}
};

void validate(const EnvelopeSpec& s);

struct WeightSlope {
    double F = 0.0;
    double dF = 0.0;  // exact analytic derivative
};

/// F(r) and F'(r).  The general_u kind needs the model's tail, so it is
/// only available through the model-aware overload.
WeightSlope weight_and_slope(const EnvelopeSpec& s, double r);
WeightSlope weight_and_slope(const EnvelopeSpec& s, const RadialModel& m, double r);

/// min over grid points r >= region_r of
///   binding + U(r) - F'(r)^2 / 2m;
/// positive certifies the admissibility condition on the grid.
double condition_margin(const EnvelopeSpec& s, const RadialModel& m, double binding,
                        const Grid& g, double region_r);

/// The decay bound evaluated at r:
///   exp(-F(r) - (1/2) ln(binding + U(r) - F'(r)^2 / 2m)).
/// Throws InadmissibleAt when the log argument is nonpositive.
double envelope_at(const EnvelopeSpec& s, const RadialModel& m, double binding, double r);

struct UpperVerification {
    double c_fit = 0.0;                 // max of |psi|/envelope on [R, 2R]
    std::vector<double> window_ratios;  // max of |psi|/(c_fit * envelope) per dyadic window
    bool verified = false;              // all ratios <= 1 + tolerance
    double tolerance = 0.05;
};

/// Fits the bound's constant on [R, 2R] and checks it on the dyadic
/// windows [2R,4R], [4R,8R], ... up to r_max (last window clipped).
UpperVerification verify_upper(const Wavefunction& wf, const EnvelopeSpec& s,
                               const RadialModel& m, double binding, double region_r,
                               double tolerance = 0.05);

struct LowerVerification {
    double c_low = 0.0;                 // min of psi/envelope on [R, 2R]
    std::vector<double> window_minima;  // min of psi/(c_low * envelope) per window
    bool holds = false;                 // all minima >= 1 - tolerance
    double tolerance = 0.05;
};

/// Checks the threshold lower envelope exp(-2 sqrt(2m c r) - K r^kappa)
/// against a positive critical Coulomb-tail ground state.  Negative K
/// turns the envelope into the sign-flipped control that must fail.
LowerVerification verify_lower(const Wavefunction& wf, const RadialModel& m,
                               double K, double kappa, double region_r,
                               double tolerance = 0.05);

enum class DecayForm { critical, subcritical };

struct DecayFit {
    double A = 0.0;  // sqrt(r) (critical) or r (subcritical) coefficient
    double p = 0.0;  // ln r coefficient; psi ~ r^{-p} e^{-...}
    double B = 0.0;
    double rms = 0.0;
};

/// Least-squares fit of -ln psi(r) = A sqrt(r) + p ln r + B (critical)
/// or A r + p ln r + B (subcritical) over grid points in [r1, r2].
DecayFit extract_decay(const Wavefunction& wf, double r1, double r2, DecayForm form);

const char* to_string(EnvelopeKind k);

}  // namespace brink

#endif
