#include "brink/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace brink {

Grid Grid::with_spacing(double r_max, double h)
{
    if (!(r_max > 0.0) || !(h > 0.0)) throw std::invalid_argument("Grid: r_max and h must be positive");
    const auto steps = static_cast<std::size_t>(std::llround(r_max / h));
    return Grid{r_max, std::max<std::size_t>(steps, 2) + 1};
}

double Wavefunction::psi(std::size_t i) const
{
    if (symmetry != Symmetry::swave3d) return u[i];
    if (i == 0) return std::numeric_limits<double>::quiet_NaN();
    return u[i] / grid.point(i);
}

std::vector<double> sampled_potential(const RadialModel& m, const Grid& g)
{
    const double h = g.spacing();
    std::vector<double> V(g.n);
    for (std::size_t i = 0; i < g.n; ++i) V[i] = potential_value(m, g.point(i));
    // grid points sitting exactly on a jump take the mean of both sides
    for (double rho : discontinuities(m)) {
        const auto i = static_cast<std::size_t>(std::llround(rho / h));
        if (i >= g.n) continue;
        if (std::abs(g.point(i) - rho) <= 1e-6 * h) {
            const double left = potential_value(m, rho);
            const double right = potential_value(m, std::nextafter(rho, std::numeric_limits<double>::infinity()));
            V[i] = 0.5 * (left + right);
        }
    }
    return V;
}

namespace {

constexpr double kRescaleLimit = 1e100;
constexpr double kRescaleFactor = 0x1p-340;  // exact power of two

struct ShootResult {
    int nodes = 0;
    double boundary_log_deriv = 0.0;
    int rescales = 0;
};

// Outward Numerov recurrence over the sampled potential.  When `store`
// is non-null the (possibly rescaled) solution is written there.
ShootResult numerov_outward(const std::vector<double>& V, double two_m, double E,
                            double h, Symmetry sym, std::vector<double>* store)
{
    const std::size_t n = V.size();
    const double h2 = h * h;
    auto fcoef = [&](std::size_t i) { return 1.0 + (h2 / 12.0) * two_m * (E - V[i]); };

    // series start; V is constant near the origin (inside the well)
    const double w = two_m * (V[0] - E);
    double u0, u1;
    if (sym == Symmetry::even1d) {
        u0 = 1.0;
        u1 = 1.0 + 0.5 * w * h2 + w * w * h2 * h2 / 24.0;
    } else {
        u0 = 0.0;
        u1 = h * (1.0 + w * h2 / 6.0 + w * w * h2 * h2 / 120.0);
    }
    if (store) {
        store->assign(n, 0.0);
        (*store)[0] = u0;
        if (n > 1) (*store)[1] = u1;
    }

    ShootResult res;
    double tail[5] = {u0, u0, u0, u0, u1};  // rolling window of the last values
    double prev_sign_ref = (u0 != 0.0) ? u0 : u1;
    double um1 = u0, um0 = u1;
    double fm1 = fcoef(0), fm0 = fcoef(1);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double fp1 = fcoef(i + 1);
        double up1 = ((12.0 - 10.0 * fm0) * um0 - fm1 * um1) / fp1;
        if (std::abs(up1) > kRescaleLimit) {
            up1 *= kRescaleFactor;
            um0 *= kRescaleFactor;
            for (double& t : tail) t *= kRescaleFactor;
            if (store)
                for (std::size_t j = 0; j <= i; ++j) (*store)[j] *= kRescaleFactor;
            ++res.rescales;
        }
        if (up1 * prev_sign_ref < 0.0) ++res.nodes;
        if (up1 != 0.0) prev_sign_ref = up1;
        um1 = um0;
        um0 = up1;
        fm1 = fm0;
        fm0 = fp1;
        tail[0] = tail[1];
        tail[1] = tail[2];
        tail[2] = tail[3];
        tail[3] = tail[4];
        tail[4] = up1;
        if (store) (*store)[i + 1] = up1;
    }

    if (n >= 5) {
        const double du = (25.0 * tail[4] - 48.0 * tail[3] + 36.0 * tail[2] -
                           16.0 * tail[1] + 3.0 * tail[0]) /
                          (12.0 * h);
        res.boundary_log_deriv = du / tail[4];
    } else {
        res.boundary_log_deriv = (tail[4] - tail[3]) / (h * tail[4]);
    }
    return res;
}

int count_nodes(const std::vector<double>& u)
{
    int nodes = 0;
    double ref = 0.0;
    for (double v : u) {
        if (v == 0.0) continue;
        if (ref != 0.0 && v * ref < 0.0) ++nodes;
        ref = v;
    }
    return nodes;
}

}  // namespace

NumerovResult numerov_integrate(const RadialModel& m, double energy, const Grid& g)
{
    if (g.n < 3) throw std::invalid_argument("numerov_integrate: grid needs n >= 3");
    const std::vector<double> V = sampled_potential(m, g);
    NumerovResult out;
    ShootResult s = numerov_outward(V, m.two_m, energy, g.spacing(), m.symmetry, &out.u);
    out.node_count = s.nodes;
    out.boundary_log_deriv = s.boundary_log_deriv;
    out.rescale_count = s.rescales;
    return out;
}

bool has_bound_state(const RadialModel& m, const Grid& g)
{
    const std::vector<double> V = sampled_potential(m, g);
    ShootResult s = numerov_outward(V, m.two_m, 0.0, g.spacing(), m.symmetry, nullptr);
    return s.nodes >= 1;
}

EigenResult solve_ground(const RadialModel& m, const Grid& g, const SolveOptions& opt)
{
    {
        const auto issues = validate(m);
        if (!issues.empty()) throw std::invalid_argument("solve_ground: invalid model: " + issues.front());
    }
    if (g.n < 8) throw std::invalid_argument("solve_ground: grid needs n >= 8");
    const double h = g.spacing();
    const double tail_at_edge = std::abs(potential_value(m, g.r_max));
    if (tail_at_edge > opt.tail_tol_factor * m.well_depth)
        throw GridTooSmall("solve_ground: |V(r_max)| has not decayed below " +
                           std::to_string(opt.tail_tol_factor) + " * well_depth");

    const std::vector<double> V = sampled_potential(m, g);
    auto nodes_at = [&](double E) {
        return numerov_outward(V, m.two_m, E, h, m.symmetry, nullptr).nodes;
    };

    if (nodes_at(0.0) == 0) throw NoBoundState();

    const double e_tol = (opt.e_tol > 0.0) ? opt.e_tol : 1e-10 * std::max(m.well_depth, 1e-30);
    double lo = -m.well_depth, hi = 0.0;
    for (int it = 0; it < opt.max_iter && (hi - lo) > e_tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        (nodes_at(mid) >= 1 ? hi : lo) = mid;
    }
    const double E = 0.5 * (lo + hi);

    EigenResult res;
    res.energy = E;
    res.binding = -E;

    Wavefunction wf;
    wf.grid = g;
    wf.symmetry = m.symmetry;
    numerov_outward(V, m.two_m, E, h, m.symmetry, &wf.u);

    // glue an inward-integrated tail at the well edge so the forbidden
    // region is the decaying solution rather than the contaminated
    // outward one
    const auto j = static_cast<std::size_t>(std::llround(m.well_radius / h));
    if (j >= 4 && j + 5 < g.n) {
        const double h2 = h * h;
        auto fcoef = [&](std::size_t i) { return 1.0 + (h2 / 12.0) * m.two_m * (E - V[i]); };
        auto kappa = [&](std::size_t i) {
            return std::sqrt(m.two_m * std::max(V[i] - E, 0.0));
        };
        std::vector<double> uin(g.n - j, 0.0);  // uin[k] ~ u(r_{j+k})
        const std::size_t last = g.n - 1;
        uin[last - j] = 1e-200;
        uin[last - j - 1] = uin[last - j] * std::exp(0.5 * h * (kappa(last) + kappa(last - 1)));
        double fp1 = fcoef(last), fm0 = fcoef(last - 1);
        for (std::size_t i = last - 1; i > j; --i) {
            const double fm1 = fcoef(i - 1);
            double um1 = ((12.0 - 10.0 * fm0) * uin[i - j] - fp1 * uin[i + 1 - j]) / fm1;
            if (std::abs(um1) > kRescaleLimit) {
                um1 *= kRescaleFactor;
                for (std::size_t k = i - j; k < uin.size(); ++k) uin[k] *= kRescaleFactor;
            }
            uin[i - 1 - j] = um1;
            fp1 = fm0;
            fm0 = fm1;
        }
        if (uin[0] != 0.0 && std::isfinite(uin[0])) {
            const double scale = wf.u[j] / uin[0];
            const double dout = (25.0 * wf.u[j] - 48.0 * wf.u[j - 1] + 36.0 * wf.u[j - 2] -
                                 16.0 * wf.u[j - 3] + 3.0 * wf.u[j - 4]) /
                                (12.0 * h);
            const double din = scale *
                               (-25.0 * uin[0] + 48.0 * uin[1] - 36.0 * uin[2] +
                                16.0 * uin[3] - 3.0 * uin[4]) /
                               (12.0 * h);
            res.residual = (dout - din) / wf.u[j];
            for (std::size_t i = j + 1; i < g.n; ++i) wf.u[i] = scale * uin[i - j];
        }
    } else {
        const double kap_out = std::sqrt(m.two_m * std::max(potential_value(m, g.r_max) - E, 0.0));
        res.residual = numerov_outward(V, m.two_m, E, h, m.symmetry, nullptr).boundary_log_deriv + kap_out;
    }

    res.nodes = count_nodes(wf.u);
    res.wavefunction = normalize(wf);
    return res;
}

double trapezoid_norm_sq(const Wavefunction& wf)
{
    const double h = wf.grid.spacing();
    double s = 0.0;
    for (double v : wf.u) s += v * v;
    s -= 0.5 * (wf.u.front() * wf.u.front() + wf.u.back() * wf.u.back());
    return s * h;
}

Wavefunction normalize(const Wavefunction& wf)
{
    Wavefunction out = wf;
    const double nrm2 = trapezoid_norm_sq(wf);
    if (!(nrm2 > 0.0) || !std::isfinite(nrm2)) throw ZeroNorm();
    const double s = 1.0 / std::sqrt(nrm2);
    for (double& v : out.u) v *= s;
    // sign convention: positive on the first interior points
    for (double v : out.u) {
        if (v != 0.0) {
            if (v < 0.0)
                for (double& w : out.u) w = -w;
            break;
        }
    }
    out.normalized = true;
    return out;
}

double mean_radius(const Wavefunction& wf)
{
    if (!wf.normalized) throw std::invalid_argument("mean_radius: wavefunction must be normalized");
    const double h = wf.grid.spacing();
    double s = 0.0;
    for (std::size_t i = 0; i < wf.u.size(); ++i) s += wf.grid.point(i) * wf.u[i] * wf.u[i];
    s -= 0.5 * wf.grid.point(wf.u.size() - 1) * wf.u.back() * wf.u.back();
    return s * h;
}

}  // namespace brink
