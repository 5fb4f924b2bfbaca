// Acceptance suite: runs every exit criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion.  Returns the failure count.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "brink/envelope.hpp"
#include "brink/solver.hpp"
#include "brink/specfun.hpp"
#include "brink/threshold.hpp"
#include "oracles.hpp"

using namespace brink;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int idx, bool pass, const std::string& what)
{
    std::printf("%s  criterion %2d: %s\n", pass ? "PASS" : "FAIL", idx, what.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

RadialModel coulomb_model(double depth, double c = 1.0)
{
    RadialModel m;
    m.well_depth = depth;
    m.tail = {TailKind::coulomb, c, 1.0, 0.0};
    return m;
}

RadialModel barrier_model(double depth, double c, double outer = 2.0)
{
    RadialModel m;
    m.well_depth = depth;
    m.tail = {TailKind::barrier, c, 1.0, outer};
    return m;
}

// binding-energy probe then a grid sized so the tail fits comfortably
Grid sized_grid(const RadialModel& m, double h)
{
    const EigenResult probe = solve_ground(m, Grid::with_spacing(200.0, 5e-3));
    const double kappa = std::sqrt(m.two_m * std::max(probe.binding, 1e-12));
    const double r_max = std::min(std::max(50.0, 25.0 / kappa), 2000.0);
    return Grid::with_spacing(r_max, h);
}

char buf[512];

}  // namespace

int main()
{
    // --- criteria 1-3: critical constants by matching, < 1 s each ---
    {
        auto t0 = Clock::now();
        const CriticalResult r =
            critical_by_matching(coulomb_model(1.0), CriticalParameter::well_depth, 0.3, 1.0);
        const double dt = seconds_since(t0);
        std::snprintf(buf, sizeof(buf),
                      "well-depth critical value %.10f (target 0.634366 +- 5e-6), %.3f s",
                      r.critical_value, dt);
        report(1, std::abs(r.critical_value - 0.634366) <= 5e-6 && dt < 1.0, buf);
    }
    {
        auto t0 = Clock::now();
        const CriticalResult r = critical_by_matching(barrier_model(1.0, 1.0),
                                                      CriticalParameter::tail_strength, 1.0, 5.0);
        const double dt = seconds_since(t0);
        std::snprintf(buf, sizeof(buf),
                      "barrier critical height %.10f (target 2.7938776 +- 5e-7), %.3f s",
                      r.critical_value, dt);
        report(2, std::abs(r.critical_value - 2.7938776) <= 5e-7 && dt < 1.0, buf);
    }
    {
        auto t0 = Clock::now();
        const CriticalResult r = critical_by_matching(coulomb_model(1.0),
                                                      CriticalParameter::tail_strength, 1.0, 6.0);
        const double dt = seconds_since(t0);
        std::snprintf(buf, sizeof(buf),
                      "coulomb critical strength %.10f (target 3.11693 +- 5e-5), %.3f s",
                      r.critical_value, dt);
        report(3, std::abs(r.critical_value - 3.11693) <= 5e-5 && dt < 1.0, buf);
    }

    // --- criterion 4: cross-method agreement on the pinned grid ---
    {
        auto t0 = Clock::now();
        const Grid g = Grid::with_spacing(2000.0, 1e-3);
        bool ok = true;
        std::string detail;
        struct Family {
            RadialModel model;
            CriticalParameter par;
            double lo, hi;
        };
        const std::vector<Family> families = {
            {coulomb_model(1.0), CriticalParameter::well_depth, 0.3, 1.0},
            {coulomb_model(1.0), CriticalParameter::tail_strength, 1.0, 6.0},
            {barrier_model(1.0, 1.0), CriticalParameter::tail_strength, 1.0, 5.0},
        };
        for (const Family& f : families) {
            const CriticalResult match = critical_by_matching(f.model, f.par, f.lo, f.hi);
            const CriticalResult bis = critical_by_bisection(f.model, f.par, f.lo, f.hi, g, 1e-5);
            const double diff = std::abs(match.critical_value - bis.critical_value);
            ok = ok && diff <= 1e-3;
            char piece[64];
            std::snprintf(piece, sizeof(piece), " |d|=%.2e", diff);
            detail += piece;
        }
        const double dt = seconds_since(t0);
        std::snprintf(buf, sizeof(buf),
                      "matching vs bisection on r_max=2000, h=1e-3:%s (tol 1e-3), %.1f s",
                      detail.c_str(), dt);
        report(4, ok && dt < 120.0, buf);
    }

    // shared near-critical state for criteria 5-7
    const CriticalResult crit =
        critical_by_matching(coulomb_model(1.0), CriticalParameter::well_depth, 0.3, 1.0);
    const RadialModel mcrit = coulomb_model(crit.critical_value);
    const Grid gcrit = Grid::with_spacing(1600.0, 1e-3);
    const ThresholdState ts = threshold_state(mcrit, gcrit);

    // --- criterion 5: critical decay law ---
    {
        const DecayFit fit = extract_decay(ts.wavefunction, 400.0, 1600.0, DecayForm::critical);
        const double q = -fit.p;  // psi ~ r^q exp(-A sqrt(r))
        const char* match =
            (std::abs(q - 0.25) < std::abs(q + 0.75)) ? "+1/4 (1d outer solution)" : "-3/4";
        std::snprintf(buf, sizeof(buf),
                      "fit A=%.4f (target 2.00 +- 0.05); power q=%.4f closest to %s, rms %.2e",
                      fit.A, q, match, fit.rms);
        report(5, std::abs(fit.A - 2.0) <= 0.05, buf);
    }

    // --- criterion 6: upper envelope at b = 0.9, inadmissible at b = 1.2 ---
    {
        EnvelopeSpec s;
        s.kind = EnvelopeKind::sqrt_r;
        s.b = 0.9;
        const UpperVerification up = verify_upper(ts.wavefunction, s, mcrit, 0.0, 2.0);
        double worst = 0.0;
        for (double r : up.window_ratios) worst = std::max(worst, r);
        bool inadmissible_detected = false;
        s.b = 1.2;
        const double bad_margin = condition_margin(s, mcrit, 0.0, gcrit, 2.0);
        try {
            verify_upper(ts.wavefunction, s, mcrit, 0.0, 2.0);
        } catch (const InadmissibleAt&) {
            inadmissible_detected = true;
        }
        std::snprintf(buf, sizeof(buf),
                      "b=0.9: %zu windows, worst ratio %.4f (tol 1.05); b=1.2: margin %.3f, %s",
                      up.window_ratios.size(), worst, bad_margin,
                      inadmissible_detected ? "rejected" : "NOT rejected");
        report(6, up.verified && worst <= 1.05 && bad_margin <= 0.0 && inadmissible_detected, buf);
    }

    // --- criterion 7: lower-bound sandwich ---
    {
        const LowerVerification low = verify_lower(ts.wavefunction, mcrit, 0.5, 0.25, 2.0);
        double worst = 1e9;
        for (double v : low.window_minima) worst = std::min(worst, v);
        std::snprintf(buf, sizeof(buf),
                      "K=0.5, kappa=0.25: %zu windows, worst margin %.4f (holds: %s)",
                      low.window_minima.size(), worst, low.holds ? "yes" : "no");
        report(7, low.holds, buf);
    }

    // --- criterion 8: subcritical envelope at lambda = 0.7 ---
    {
        const RadialModel m = coulomb_model(0.7);
        const Grid g = sized_grid(m, 1e-3);
        const EigenResult res = solve_ground(m, g);
        EnvelopeSpec s;
        s.kind = EnvelopeKind::ab;
        s.a = m.two_m * res.binding;
        s.b = 0.9;
        const double margin = condition_margin(s, m, res.binding, g, 2.0);
        const UpperVerification up = verify_upper(res.wavefunction, s, m, res.binding, 2.0);
        double worst = 0.0;
        for (double r : up.window_ratios) worst = std::max(worst, r);
        std::snprintf(buf, sizeof(buf),
                      "binding %.6f, margin %.2e > 0, worst window ratio %.4f (tol 1.05)",
                      res.binding, margin, worst);
        report(8, margin > 0.0 && up.verified && worst <= 1.05, buf);
    }

    // --- criterion 9: delocalization contrast between the two tail types ---
    {
        bool ok = true;
        std::vector<double> radii;
        for (double c : {2.0, 2.5, 2.7, 2.78}) {
            const RadialModel m = barrier_model(1.0, c);
            const EigenResult res = solve_ground(m, sized_grid(m, 1e-3));
            radii.push_back(mean_radius(res.wavefunction));
        }
        for (std::size_t i = 1; i < radii.size(); ++i) ok = ok && radii[i] > radii[i - 1];
        const double ratio = radii.back() / radii.front();
        ok = ok && ratio > 5.0;

        double coulomb_max = 0.0;
        for (double c : {2.0, 2.9, 3.1}) {
            const RadialModel m = coulomb_model(1.0, c);
            const EigenResult res = solve_ground(m, sized_grid(m, 1e-3));
            coulomb_max = std::max(coulomb_max, mean_radius(res.wavefunction));
        }
        ok = ok && coulomb_max <= 10.0;
        std::snprintf(buf, sizeof(buf),
                      "barrier <r>: %.3f, %.3f, %.3f, %.3f (ratio %.2f > 5); coulomb max <r> %.3f <= 10",
                      radii[0], radii[1], radii[2], radii[3], ratio, coulomb_max);
        report(9, ok, buf);
    }

    // --- criterion 10: kernel accuracy ---
    {
        const double k0 = bessel_k0(2.0), k1 = bessel_k1(2.0);
        const double o0 = brink_tests::bessel_k_quadrature(0, 2.0);
        const double o1 = brink_tests::bessel_k_quadrature(1, 2.0);
        const bool bessel_ok =
            std::abs(k0 - o0) / o0 < 1e-10 && std::abs(k1 - o1) / o1 < 1e-10;

        bool slope_ok = true;
        for (double a : {0.01, 1.0})
            for (double b : {0.5, 2.0})
                for (double r : {0.5, 10.0, 1e3}) {
                    const double dr = 1e-4 * r;
                    const double fd =
                        (weight_F(a, b, r + dr) - weight_F(a, b, r - dr)) / (2.0 * dr);
                    slope_ok = slope_ok &&
                               std::abs(fd - std::sqrt(a + b / r)) / std::sqrt(a + b / r) <= 1e-6;
                }

        auto free_err = [](double h) {
            RadialModel free_model;
            free_model.well_depth = 0.0;
            const Grid g = Grid::with_spacing(10.0, h);
            const NumerovResult r = numerov_integrate(free_model, 1.0, g);
            double err = 0.0;
            for (std::size_t i = 0; i < g.n; ++i)
                err = std::max(err, std::abs(r.u[i] - std::cos(g.point(i))));
            return err;
        };
        // h in the truncation-dominated regime, above roundoff
        const double ratio = free_err(0.08) / free_err(0.04);
        const bool numerov_ok = ratio >= 12.0 && ratio <= 20.0;

        std::snprintf(buf, sizeof(buf),
                      "K0/K1(2) vs quadrature rel %.1e/%.1e <= 1e-10; slope check %s; "
                      "halving ratio %.1f in [12,20]",
                      std::abs(k0 - o0) / o0, std::abs(k1 - o1) / o1,
                      slope_ok ? "<=1e-6" : "FAILED", ratio);
        report(10, bessel_ok && slope_ok && numerov_ok, buf);
    }

    // --- criterion 11: property suite ---
    {
        const RadialModel m1 = coulomb_model(1.0);
        const Grid g1 = Grid::with_spacing(120.0, 2e-3);
        const EigenResult r1 = solve_ground(m1, g1);
        const bool nodes_ok = r1.nodes == 0;
        const bool norm_ok = std::abs(trapezoid_norm_sq(r1.wavefunction) - 1.0) <= 1e-8;

        bool mono_lambda = true;
        double prev = 0.0;
        for (double lam : {0.7, 0.8, 1.0, 1.5}) {
            const double e = solve_ground(coulomb_model(lam), g1).energy;
            mono_lambda = mono_lambda && e < prev;
            prev = e;
        }
        bool mono_c = true;
        prev = -1e9;
        for (double c : {0.5, 1.0, 2.0}) {
            const double e = solve_ground(coulomb_model(1.0, c), Grid::with_spacing(60.0, 2e-3)).energy;
            mono_c = mono_c && e > prev;
            prev = e;
        }

        const Grid gfd = Grid::with_spacing(25.0, 0.02);
        const double e_numerov = solve_ground(m1, gfd).energy;
        const double e_fd = brink_tests::fd_ground_energy(m1, gfd);
        const double fd_tol = 10.0 * gfd.spacing() * gfd.spacing() * m1.well_depth;
        const bool oracle_ok = std::abs(e_numerov - e_fd) <= fd_tol;

        std::snprintf(buf, sizeof(buf),
                      "nodes=0 %s; |norm-1|<=1e-8 %s; E(lambda) decreasing %s; E(c) increasing %s; "
                      "|E-E_fd|=%.2e <= %.2e %s",
                      nodes_ok ? "ok" : "FAIL", norm_ok ? "ok" : "FAIL",
                      mono_lambda ? "ok" : "FAIL", mono_c ? "ok" : "FAIL",
                      std::abs(e_numerov - e_fd), fd_tol, oracle_ok ? "ok" : "FAIL");
        report(11, nodes_ok && norm_ok && mono_lambda && mono_c && oracle_ok, buf);
    }

    std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures;
}
