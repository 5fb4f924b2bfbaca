#include "brink/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "brink/specfun.hpp"

namespace brink {

void validate(const EnvelopeSpec& s)
{
    switch (s.kind) {
        case EnvelopeKind::linear:
            if (s.mu < 0.0) throw std::domain_error("EnvelopeSpec: mu must be >= 0");
            break;
        case EnvelopeKind::sqrt_r:
            if (!(s.b >= 0.0)) throw std::domain_error("EnvelopeSpec: b must be >= 0");
            break;
        case EnvelopeKind::ab:
            if (s.a < 0.0 || s.b < 0.0 || (s.a == 0.0 && s.b == 0.0))
                throw std::domain_error("EnvelopeSpec: need a, b >= 0, not both zero");
            break;
        case EnvelopeKind::ansatz:
            if (s.a < 0.0 || s.b < 0.0 || (s.a == 0.0 && s.b == 0.0))
                throw std::domain_error("EnvelopeSpec: need a, b >= 0, not both zero");
            if (!(s.K > 0.0)) throw std::domain_error("EnvelopeSpec: ansatz needs K > 0");
            if (!(s.kappa > 0.0 && s.kappa < 0.5))
                throw std::domain_error("EnvelopeSpec: ansatz needs kappa in (0, 1/2)");
            break;
        case EnvelopeKind::general_u:
            if (!(s.delta > 0.0 && s.delta < 1.0))
                throw std::domain_error("EnvelopeSpec: general_u needs delta in (0,1)");
            if (s.r0 < 0.0) throw std::domain_error("EnvelopeSpec: r0 must be >= 0");
            break;
    }
}

WeightSlope weight_and_slope(const EnvelopeSpec& s, double r)
{
    if (!(r > 0.0)) throw std::domain_error("weight_and_slope: r must be positive");
    switch (s.kind) {
        case EnvelopeKind::linear:
            return {s.mu * r, s.mu};
        case EnvelopeKind::sqrt_r:
            return {2.0 * s.b * std::sqrt(r), s.b / std::sqrt(r)};
        case EnvelopeKind::ab:
            return {weight_F(s.a, s.b, r), std::sqrt(s.a + s.b / r)};
        case EnvelopeKind::ansatz:
            return {weight_F(s.a, s.b, r) - s.K * std::pow(r, s.kappa),
                    std::sqrt(s.a + s.b / r) - s.K * s.kappa * std::pow(r, s.kappa - 1.0)};
        case EnvelopeKind::general_u:
            throw std::invalid_argument("weight_and_slope: general_u weight needs the model");
    }
    return {};
}

WeightSlope weight_and_slope(const EnvelopeSpec& s, const RadialModel& m, double r)
{
    if (s.kind != EnvelopeKind::general_u) return weight_and_slope(s, r);
    if (!(r > 0.0)) throw std::domain_error("weight_and_slope: r must be positive");
    auto U = [&m](double rr) { return repulsive_tail(m, rr); };
    if (r <= s.r0) return {0.0, 0.0};  // F is flat below the lower limit
    GeneralWeight w = weight_F_general(U, s.delta, s.r0, r);
    return {w.value, s.delta * std::sqrt(U(r))};
}

namespace {

double margin_at(const EnvelopeSpec& s, const RadialModel& m, double binding, double r)
{
    const WeightSlope ws = weight_and_slope(s, m, r);
    return binding + repulsive_tail(m, r) - ws.dF * ws.dF / m.two_m;
}

}  // namespace

double condition_margin(const EnvelopeSpec& s, const RadialModel& m, double binding,
                        const Grid& g, double region_r)
{
    if (binding < 0.0) throw std::domain_error("condition_margin: binding energy must be >= 0");
    if (region_r < m.well_radius)
        throw std::domain_error("condition_margin: region_r must not cut into the well");
    double margin = std::numeric_limits<double>::infinity();
    bool any = false;
    for (std::size_t i = 0; i < g.n; ++i) {
        const double r = g.point(i);
        if (r < region_r || r <= 0.0) continue;
        any = true;
        margin = std::min(margin, margin_at(s, m, binding, r));
    }
    if (!any) throw EmptyRegion();
    return margin;
}

double envelope_at(const EnvelopeSpec& s, const RadialModel& m, double binding, double r)
{
    const WeightSlope ws = weight_and_slope(s, m, r);
    const double arg = binding + repulsive_tail(m, r) - ws.dF * ws.dF / m.two_m;
    if (!(arg > 0.0)) throw InadmissibleAt(r);
    return std::exp(-ws.F - 0.5 * std::log(arg));
}

namespace {

struct WindowScan {
    std::size_t first = 0;  // first index with r >= lo
    std::size_t last = 0;   // one past the last index with r <= hi
    bool empty() const { return first >= last; }
};

WindowScan window_indices(const Grid& g, double lo, double hi)
{
    const double h = g.spacing();
    WindowScan w;
    w.first = static_cast<std::size_t>(std::max(0.0, std::ceil(lo / h - 1e-9)));
    w.last = std::min<std::size_t>(g.n, static_cast<std::size_t>(std::floor(hi / h + 1e-9)) + 1);
    return w;
}

}  // namespace

UpperVerification verify_upper(const Wavefunction& wf, const EnvelopeSpec& s,
                               const RadialModel& m, double binding, double region_r,
                               double tolerance)
{
    const Grid& g = wf.grid;
    const double margin = condition_margin(s, m, binding, g, region_r);
    if (!(margin > 0.0)) {
        // locate the failure for the error message
        for (std::size_t i = 0; i < g.n; ++i) {
            const double r = g.point(i);
            if (r >= region_r && r > 0.0 && margin_at(s, m, binding, r) <= 0.0)
                throw InadmissibleAt(r);
        }
        throw InadmissibleAt(region_r);
    }

    UpperVerification out;
    out.tolerance = tolerance;
    WindowScan fit = window_indices(g, region_r, 2.0 * region_r);
    if (fit.empty()) throw EmptyRegion();
    for (std::size_t i = fit.first; i < fit.last; ++i) {
        const double r = g.point(i);
        if (r <= 0.0) continue;
        out.c_fit = std::max(out.c_fit, std::abs(wf.psi(i)) / envelope_at(s, m, binding, r));
    }

    double lo = 2.0 * region_r;
    while (lo < g.r_max * (1.0 - 1e-12)) {
        const double hi = std::min(2.0 * lo, g.r_max);
        WindowScan win = window_indices(g, lo, hi);
        if (win.empty()) break;
        double ratio = 0.0;
        for (std::size_t i = win.first; i < win.last; ++i) {
            const double r = g.point(i);
            if (r <= 0.0) continue;
            ratio = std::max(ratio, std::abs(wf.psi(i)) / (out.c_fit * envelope_at(s, m, binding, r)));
        }
        out.window_ratios.push_back(ratio);
        lo = 2.0 * lo;
    }
    out.verified = std::all_of(out.window_ratios.begin(), out.window_ratios.end(),
                               [&](double x) { return x <= 1.0 + tolerance; });
    return out;
}

LowerVerification verify_lower(const Wavefunction& wf, const RadialModel& m,
                               double K, double kappa, double region_r,
                               double tolerance)
{
    if (!(kappa > 0.0 && kappa < 0.5))
        throw std::domain_error("verify_lower: kappa must be in (0, 1/2)");
    if (region_r < m.well_radius)
        throw std::domain_error("verify_lower: region_r must not cut into the well");
    if (m.tail.kind != TailKind::coulomb || std::abs(m.tail.exponent - 1.0) > 1e-12)
        throw std::domain_error("verify_lower: threshold lower bound is for the Coulomb tail");
    const double c_eff = m.two_m * m.tail.strength;
    auto env = [&](double r) {
        return std::exp(-2.0 * std::sqrt(c_eff * r) - K * std::pow(r, kappa));
    };

    const Grid& g = wf.grid;
    LowerVerification out;
    out.tolerance = tolerance;
    out.c_low = std::numeric_limits<double>::infinity();
    WindowScan fit = window_indices(g, region_r, 2.0 * region_r);
    if (fit.empty()) throw EmptyRegion();
    for (std::size_t i = fit.first; i < fit.last; ++i) {
        const double r = g.point(i);
        if (r <= 0.0) continue;
        const double p = wf.psi(i);
        if (!(p > 0.0)) throw NonPositiveWavefunction();
        out.c_low = std::min(out.c_low, p / env(r));
    }

    double lo = 2.0 * region_r;
    while (lo < g.r_max * (1.0 - 1e-12)) {
        const double hi = std::min(2.0 * lo, g.r_max);
        WindowScan win = window_indices(g, lo, hi);
        if (win.empty()) break;
        double worst = std::numeric_limits<double>::infinity();
        for (std::size_t i = win.first; i < win.last; ++i) {
            const double r = g.point(i);
            if (r <= 0.0) continue;
            const double p = wf.psi(i);
            if (!(p > 0.0)) throw NonPositiveWavefunction();
            worst = std::min(worst, p / (out.c_low * env(r)));
        }
        out.window_minima.push_back(worst);
        lo = 2.0 * lo;
    }
    out.holds = std::all_of(out.window_minima.begin(), out.window_minima.end(),
                            [&](double x) { return x >= 1.0 - tolerance; });
    return out;
}

DecayFit extract_decay(const Wavefunction& wf, double r1, double r2, DecayForm form)
{
    const Grid& g = wf.grid;
    WindowScan win = window_indices(g, r1, r2);
    if (win.empty()) throw std::invalid_argument("extract_decay: fit window holds no grid points");

    // normal equations for -ln psi = A*phi(r) + p*ln r + B in long double
    long double M[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
    long double rhs[3] = {0, 0, 0};
    std::size_t used = 0;
    for (std::size_t i = win.first; i < win.last; ++i) {
        const double r = g.point(i);
        if (r <= 0.0) continue;
        const double p = wf.psi(i);
        if (!(p > 0.0)) throw SignChangeInWindow();
        const long double basis[3] = {
            (form == DecayForm::critical) ? std::sqrt((long double)r) : (long double)r,
            std::log((long double)r), 1.0L};
        const long double y = -std::log((long double)p);
        for (int a = 0; a < 3; ++a) {
            rhs[a] += basis[a] * y;
            for (int b = 0; b < 3; ++b) M[a][b] += basis[a] * basis[b];
        }
        ++used;
    }
    if (used < 3) throw std::invalid_argument("extract_decay: fit window needs at least 3 points");

    // 3x3 Gaussian elimination with partial pivoting
    int perm[3] = {0, 1, 2};
    for (int col = 0; col < 2; ++col) {
        int piv = col;
        for (int row = col + 1; row < 3; ++row)
            if (std::abs((double)M[perm[row]][col]) > std::abs((double)M[perm[piv]][col])) piv = row;
        std::swap(perm[col], perm[piv]);
        for (int row = col + 1; row < 3; ++row) {
            const long double f = M[perm[row]][col] / M[perm[col]][col];
            for (int b = col; b < 3; ++b) M[perm[row]][b] -= f * M[perm[col]][b];
            rhs[perm[row]] -= f * rhs[perm[col]];
        }
    }
    long double sol[3];
    for (int row = 2; row >= 0; --row) {
        long double s = rhs[perm[row]];
        for (int b = row + 1; b < 3; ++b) s -= M[perm[row]][b] * sol[b];
        sol[row] = s / M[perm[row]][row];
    }

    DecayFit fit;
    fit.A = static_cast<double>(sol[0]);
    fit.p = static_cast<double>(sol[1]);
    fit.B = static_cast<double>(sol[2]);

    long double ss = 0.0L;
    for (std::size_t i = win.first; i < win.last; ++i) {
        const double r = g.point(i);
        if (r <= 0.0) continue;
        const long double phi =
            (form == DecayForm::critical) ? std::sqrt((long double)r) : (long double)r;
        const long double resid =
            -std::log((long double)wf.psi(i)) - (sol[0] * phi + sol[1] * std::log((long double)r) + sol[2]);
        ss += resid * resid;
    }
    fit.rms = static_cast<double>(std::sqrt(ss / (long double)used));
    return fit;
}

const char* to_string(EnvelopeKind k)
{
    switch (k) {
        case EnvelopeKind::linear: return "linear";
        case EnvelopeKind::sqrt_r: return "sqrt";
        case EnvelopeKind::ab: return "ab";
        case EnvelopeKind::ansatz: return "ansatz";
        case EnvelopeKind::general_u: return "general_u";
    }
    return "?";
}

}  // namespace brink
