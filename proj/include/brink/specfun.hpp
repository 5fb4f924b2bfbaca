#ifndef BRINK_SPECFUN_HPP
#define BRINK_SPECFUN_HPP

#include <functional>

namespace brink {

/// Modified Bessel function K0(t) for t > 0.
///
/// Relative error below 1e-12 on [1e-8, 700]. Values underflow to zero
/// (and 0.0 is returned) once exp(-t) leaves the normal double range,
/// around t = 705. Throws std::domain_error for t <= 0.
double bessel_k0(double t);

/// Modified Bessel function K1(t), same domain contract as bessel_k0.
double bessel_k1(double t);

/// Exponentially scaled variants exp(t)*K0(t), exp(t)*K1(t); finite for
/// every t > 0, so ratios of K functions stay well defined far beyond
/// the underflow limit of the unscaled values.
double bessel_k0e(double t);
double bessel_k1e(double t);

/// Parameters of the exponential weight F_{a,b} and of the general
/// tail-integral weight.
struct WeightParams {
    double a = 0.0;      // binding-energy slot, >= 0
    double b = 0.0;      // tail strength, >= 0; a and b must not both vanish
    double r0 = 0.0;     // lower integration limit of the general weight
    double delta = 0.5;  // factor in (0,1) of the general weight
};

/// Throws std::domain_error when p violates its invariants.
void validate(const WeightParams& p);

/// F_{a,b}(r) = int_0^r sqrt(a + b/s) ds, evaluated in closed form:
///   sqrt(a + b/r)*r + (b/sqrt(a))*asinh(sqrt(a r / b)).
/// For b = 0 this reduces to sqrt(a)*r; for a*r below the switch
/// threshold a*r < 1e-10*(b/r + a) the a->0 limit 2*sqrt(b r) is used.
double weight_F(double a, double b, double r);
double weight_F(const WeightParams& p, double r);

struct GeneralWeight {
    double value = 0.0;    // delta * int_{r0}^{r} sqrt(U(s)) ds
    bool divergent = false;  // whether F(r) -> infinity as r -> infinity
};

/// General weight delta * int_{r0}^{r} sqrt(U) for a nonnegative radial
/// tail U, via adaptive quadrature (absolute tolerance 1e-10).  The
/// divergence flag is probed by comparing the increments of F over the
/// dyadic intervals [R,2R] and [2R,4R]; for power-law tails prefer
/// weight_F_general_power, which decides analytically.
GeneralWeight weight_F_general(const std::function<double(double)>& U,
                               double delta, double r0, double r);

/// Same weight for U(s) = c1 * s^{-alpha}; divergent iff alpha <= 2.
GeneralWeight weight_F_general_power(double c1, double alpha,
                                     double delta, double r0, double r);

/// Globally adaptive Gauss-Kronrod (G7,K15) quadrature on [lo, hi].
/// Handles integrable endpoint singularities by interval bisection.
double integrate_adaptive(const std::function<double(double)>& f,
                          double lo, double hi, double abs_tol = 1e-10);

}  // namespace brink

#endif
