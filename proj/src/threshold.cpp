#include "brink/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "brink/specfun.hpp"

namespace brink {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_positive(double v, const char* what)
{
    if (!(v > 0.0)) throw std::domain_error(std::string(what) + " must be positive");
}

}  // namespace

double inside_logderiv(double lambda_eff, double r_w, Symmetry sym)
{
    check_positive(lambda_eff, "inside_logderiv: lambda");
    check_positive(r_w, "inside_logderiv: well radius");
    const double x = std::sqrt(lambda_eff) * r_w;
    if (sym == Symmetry::even1d) {
        const double pole = (std::floor(x / kPi - 0.5) + 1.5) * kPi;  // nearest (m+1/2)pi
        const double lower = pole - kPi;
        if (std::min(std::abs(x - pole), std::abs(x - lower)) < 1e-9)
            throw PoleError("inside_logderiv: sqrt(lambda)*r_w too close to a tangent pole");
        return -std::sqrt(lambda_eff) * std::tan(x);
    }
    const double pole = std::round(x / kPi) * kPi;
    if (pole >= kPi / 2.0 && std::abs(x - pole) < 1e-9)
        throw PoleError("inside_logderiv: sqrt(lambda)*r_w too close to a cotangent pole");
    return std::sqrt(lambda_eff) * std::cos(x) / std::sin(x);
}

double outside_logderiv_coulomb(double c_eff, double r_w)
{
    check_positive(c_eff, "outside_logderiv_coulomb: tail strength");
    check_positive(r_w, "outside_logderiv_coulomb: well radius");
    const double t = 2.0 * std::sqrt(c_eff * r_w);
    // scaled K's keep the ratio finite at large arguments
    return -std::sqrt(c_eff) * bessel_k0e(t) / (std::sqrt(r_w) * bessel_k1e(t));
}

double outside_logderiv_barrier(double c_eff, double r_w, double r_out)
{
    check_positive(c_eff, "outside_logderiv_barrier: barrier height");
    check_positive(r_w, "outside_logderiv_barrier: well radius");
    if (!(r_out > r_w)) throw std::domain_error("outside_logderiv_barrier: r_out must exceed r_w");
    const double q = std::sqrt(c_eff);
    return -q * std::tanh(q * (r_out - r_w));
}

double matching_residual(const RadialModel& m)
{
    const double lam_eff = m.two_m * m.well_depth;
    const double c_eff = m.two_m * m.tail.strength;
    double outside = 0.0;
    switch (m.tail.kind) {
        case TailKind::coulomb:
            if (std::abs(m.tail.exponent - 1.0) > 1e-12)
                throw UnsupportedTail("matching_residual: only the exponent-1 Coulomb tail has a "
                                      "closed-form outer solution; use bisection");
            outside = outside_logderiv_coulomb(c_eff, m.well_radius);
            break;
        case TailKind::barrier:
            outside = outside_logderiv_barrier(c_eff, m.well_radius, m.tail.outer_radius);
            break;
        case TailKind::none:
            throw UnsupportedTail("matching_residual: model has no repulsive tail");
    }
    return inside_logderiv(lam_eff, m.well_radius, m.symmetry) - outside;
}

RadialModel with_parameter(const RadialModel& m, CriticalParameter p, double value)
{
    RadialModel out = m;
    if (p == CriticalParameter::well_depth) {
        out.well_depth = value;
    } else {
        if (m.tail.kind == TailKind::none)
            throw std::invalid_argument("with_parameter: model has no tail to tune");
        out.tail.strength = value;
    }
    return out;
}

const char* to_string(CriticalParameter p)
{
    return p == CriticalParameter::well_depth ? "well_depth" : "tail_strength";
}

const char* to_string(CriticalMethod m)
{
    return m == CriticalMethod::matching ? "matching" : "bisection";
}

CriticalResult critical_by_matching(const RadialModel& m, CriticalParameter p,
                                    double lo, double hi)
{
    if (!(hi > lo)) throw std::invalid_argument("critical_by_matching: empty bracket");
    auto f = [&](double v) { return matching_residual(with_parameter(m, p, v)); };
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return {p, lo, CriticalMethod::matching, lo, hi, 0.0};
    if (fhi == 0.0) return {p, hi, CriticalMethod::matching, lo, hi, 0.0};
    if (flo * fhi > 0.0) throw NoSignChange();

    double a = lo, b = hi, fa = flo, fb = fhi;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        const double fm = f(mid);
        if (fm == 0.0) {
            a = b = mid;
            fa = fb = 0.0;
            break;
        }
        if (fa * fm < 0.0) {
            b = mid;
            fb = fm;
        } else {
            a = mid;
            fa = fm;
        }
    }
    double x = (std::abs(fa) < std::abs(fb)) ? a : b;
    double fx = (std::abs(fa) < std::abs(fb)) ? fa : fb;
    double x_prev = (x == a) ? b : a;
    double f_prev = (x == a) ? fb : fa;
    for (int it = 0; it < 8 && std::abs(fx) > 1e-12; ++it) {
        const double denom = fx - f_prev;
        if (denom == 0.0) break;
        double next = x - fx * (x - x_prev) / denom;
        if (!(next > lo && next < hi)) break;
        x_prev = x;
        f_prev = fx;
        x = next;
        fx = f(x);
    }
    return {p, x, CriticalMethod::matching, lo, hi, fx};
}

CriticalResult critical_by_bisection(const RadialModel& m, CriticalParameter p,
                                     double lo, double hi, const Grid& g,
                                     double param_tol)
{
    if (!(hi > lo)) throw std::invalid_argument("critical_by_bisection: empty bracket");
    auto bound = [&](double v) { return has_bound_state(with_parameter(m, p, v), g); };
    const bool at_lo = bound(lo);
    if (at_lo == bound(hi)) throw PredicateConstant();
    double a = lo, b = hi;
    while (b - a > param_tol) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        (bound(mid) == at_lo ? a : b) = mid;
    }
    return {p, 0.5 * (a + b), CriticalMethod::bisection, lo, hi, b - a};
}

namespace {

// distance of the tuned parameters to their matching-critical values,
// estimated from the residual and its finite-difference sensitivities
double critical_distance(const RadialModel& m)
{
    const double res = matching_residual(m);
    double best = std::numeric_limits<double>::infinity();
    for (CriticalParameter p : {CriticalParameter::well_depth, CriticalParameter::tail_strength}) {
        const double v = (p == CriticalParameter::well_depth) ? m.well_depth : m.tail.strength;
        const double dv = 1e-7 * std::max(1.0, std::abs(v));
        try {
            const double d =
                (matching_residual(with_parameter(m, p, v + dv)) -
                 matching_residual(with_parameter(m, p, v - dv))) /
                (2.0 * dv);
            if (d != 0.0) best = std::min(best, std::abs(res / d));
        } catch (const std::exception&) {
            // parameter not tunable for this model; skip
        }
    }
    return best;
}

}  // namespace

ThresholdState threshold_state(const RadialModel& m, const Grid& g)
{
    if (critical_distance(m) > 1e-6) throw NotCritical();

    const double h = g.spacing();
    const auto j = static_cast<std::size_t>(std::llround(m.well_radius / h));
    if (j < 4 || j + 1 >= g.n)
        throw std::invalid_argument("threshold_state: grid does not resolve the well");

    // outward zero-energy integration across the well
    Grid inner{static_cast<double>(j) * h, j + 1};
    NumerovResult inner_run = numerov_integrate(m, 0.0, inner);

    const double c_eff = m.two_m * m.tail.strength;
    ThresholdState out;
    out.wavefunction.grid = g;
    out.wavefunction.symmetry = m.symmetry;
    out.wavefunction.u.assign(g.n, 0.0);
    for (std::size_t i = 0; i <= j; ++i) out.wavefunction.u[i] = inner_run.u[i];

    if (m.tail.kind == TailKind::coulomb) {
        auto outer = [c_eff](double r) {
            const double t = 2.0 * std::sqrt(c_eff * r);
            return std::sqrt(r) * bessel_k1(t);
        };
        const double scale = inner_run.u[j] / outer(g.point(j));
        for (std::size_t i = j + 1; i < g.n; ++i)
            out.wavefunction.u[i] = scale * outer(g.point(i));
        out.classification = {ThresholdKind::eigenvalue, true, "sqrt(r)*K1(2*sqrt(c*r))"};
        out.wavefunction = normalize(out.wavefunction);
    } else if (m.tail.kind == TailKind::barrier) {
        const double q = std::sqrt(c_eff);
        const double r_out = m.tail.outer_radius;
        auto outer = [q, r_out](double r) {
            return (r <= r_out) ? std::cosh(q * (r_out - r)) : 1.0;
        };
        const double scale = inner_run.u[j] / outer(g.point(j));
        for (std::size_t i = j + 1; i < g.n; ++i)
            out.wavefunction.u[i] = scale * outer(g.point(i));
        out.classification = {ThresholdKind::resonance, false,
                              "constant beyond the outer barrier radius"};
        out.wavefunction.normalized = false;
    } else {
        throw UnsupportedTail("threshold_state: model has no repulsive tail");
    }
    return out;
}

}  // namespace brink
