#include "brink/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>
#include <vector>

#include "brink/envelope.hpp"
#include "brink/report.hpp"
#include "brink/threshold.hpp"

namespace brink {

namespace {

std::ostream& diag(const CommandIO& io)
{
    static std::ofstream null_sink;
    return io.diag ? *io.diag : null_sink;
}

Symmetry symmetry_from(const std::string& s)
{
    if (s == "even1d") return Symmetry::even1d;
    if (s == "odd1d") return Symmetry::odd1d;
    if (s == "swave3d") return Symmetry::swave3d;
    throw ConfigError("model.symmetry must be even1d, odd1d or swave3d (got '" + s + "')");
}

CriticalParameter parameter_from(const std::string& s)
{
    if (s == "well_depth") return CriticalParameter::well_depth;
    if (s == "tail_strength") return CriticalParameter::tail_strength;
    throw ConfigError("critical.parameter must be well_depth or tail_strength (got '" + s + "')");
}

struct OutputFormats {
    bool csv = true;
    bool json = true;
};

OutputFormats formats_from_config(const Config& cfg)
{
    const std::string v = cfg.get_string_or("output.formats", "csv,json");
    OutputFormats f{false, false};
    std::istringstream is(v);
    std::string cell;
    while (std::getline(is, cell, ',')) {
        if (cell == "csv")
            f.csv = true;
        else if (cell == "json")
            f.json = true;
        else
            throw ConfigError("output.formats: unknown format '" + cell + "'");
    }
    if (!f.csv && !f.json) throw ConfigError("output.formats selects nothing");
    return f;
}

std::filesystem::path prepare_out_dir(const CommandIO& io)
{
    std::filesystem::path dir =
        io.out_dir.empty() ? io.config.get_string_or("output.directory", ".") : io.out_dir;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec && !std::filesystem::is_directory(dir))
        throw ConfigError("output directory not writable: " + dir.string());
    return dir;
}

void write_text_file(const std::filesystem::path& p, const std::string& text)
{
    std::ofstream f(p, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file: " + p.string());
    f << text;
}

int worker_budget(const CommandIO& io, std::size_t jobs)
{
    int n = io.workers;
    if (n <= 0) {
        if (const char* env = std::getenv("BRINK_WORKERS")) n = std::atoi(env);
    }
    if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
    return static_cast<int>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

}  // namespace

RadialModel model_from_config(const Config& cfg)
{
    RadialModel m;
    m.two_m = cfg.get_double_or("model.two_m", 1.0);
    m.well_depth = cfg.get_double_or("model.well_depth", 1.0);
    m.well_radius = cfg.get_double_or("model.well_radius", 1.0);
    m.symmetry = symmetry_from(cfg.get_string_or("model.symmetry", "even1d"));
    const std::string kind = cfg.get_string_or("model.tail.kind", "none");
    if (kind == "none") {
        m.tail.kind = TailKind::none;
    } else if (kind == "coulomb") {
        m.tail.kind = TailKind::coulomb;
        m.tail.strength = cfg.get_double("model.tail.strength");
        m.tail.exponent = cfg.get_double_or("model.tail.exponent", 1.0);
    } else if (kind == "barrier") {
        m.tail.kind = TailKind::barrier;
        m.tail.strength = cfg.get_double("model.tail.strength");
        m.tail.outer_radius = cfg.get_double("model.tail.outer_radius");
    } else {
        throw ConfigError("model.tail.kind must be none, coulomb or barrier (got '" + kind + "')");
    }
    const auto issues = validate(m);
    if (!issues.empty()) throw ConfigError("invalid model: " + issues.front());
    return m;
}

namespace {

// coarse probe ladder used to size the grid from the binding energy
Grid auto_grid(const RadialModel& m, double h)
{
    const double wr = m.well_radius;
    double binding = -1.0;
    for (double span : {50.0, 400.0, 1600.0}) {
        const Grid probe = Grid::with_spacing(span * wr, std::max(4e-3 * wr, h));
        try {
            SolveOptions opt;
            opt.e_tol = 1e-8;
            binding = solve_ground(m, probe, opt).binding;
            break;
        } catch (const NoBoundState&) {
            continue;
        } catch (const GridTooSmall&) {
            continue;
        }
    }
    if (binding < 0.0) throw NoBoundState();
    const double kappa = std::sqrt(m.two_m * std::max(binding, 1e-12));
    const double r_max = std::min(std::max(50.0 * wr, 25.0 / kappa), 4000.0 * wr);
    return Grid::with_spacing(r_max, h);
}

}  // namespace

Grid grid_from_config(const Config& cfg, const RadialModel& m)
{
    const double h = cfg.get_double_or("grid.h", 1e-3 * m.well_radius);
    if (!(h > 0.0)) throw ConfigError("grid.h must be positive");
    const std::string rm = cfg.get_string_or("grid.r_max", "auto");
    if (rm == "auto") return auto_grid(m, h);
    const double r_max = cfg.get_double("grid.r_max");
    if (!(r_max > 0.0)) throw ConfigError("grid.r_max must be positive");
    return Grid::with_spacing(r_max, h);
}

namespace {

std::string eigenresult_json(const EigenResult& res, const Grid& g)
{
    JsonObject grid_obj;
    grid_obj.field("r_max", g.r_max).field("h", g.spacing()).field("n", g.n);
    JsonObject o;
    o.field("energy", res.energy)
        .field("binding", res.binding)
        .field("nodes", res.nodes)
        .field("residual", res.residual)
        .field_raw("grid", grid_obj.str());
    return o.str() + "\n";
}

std::string critical_json_fields(const CriticalResult& r)
{
    JsonObject o;
    o.field("parameter", to_string(r.parameter))
        .field("value", r.critical_value)
        .field("method", to_string(r.method))
        .field("bracket_lo", r.bracket_lo)
        .field("bracket_hi", r.bracket_hi)
        .field("residual", r.residual);
    return o.str();
}

void default_bracket(const Config& cfg, CriticalParameter p, double& lo, double& hi)
{
    lo = cfg.get_double_or("critical.bracket_lo", p == CriticalParameter::well_depth ? 0.1 : 0.5);
    hi = cfg.get_double_or("critical.bracket_hi", p == CriticalParameter::well_depth ? 2.4 : 8.0);
    if (!(hi > lo)) throw ConfigError("critical bracket must satisfy bracket_lo < bracket_hi");
}

Grid bisection_grid(const Config& cfg, const RadialModel& m)
{
    const double r_max = cfg.get_double_or("critical.grid.r_max", 2000.0 * m.well_radius);
    const double h = cfg.get_double_or("critical.grid.h", 1e-3 * m.well_radius);
    if (!(r_max > 0.0 && h > 0.0)) throw ConfigError("critical.grid values must be positive");
    return Grid::with_spacing(r_max, h);
}

}  // namespace

int cmd_solve(const CommandIO& io)
{
    const Config& cfg = io.config;
    RadialModel m;
    Grid g{};
    OutputFormats fmt{};
    std::filesystem::path dir;
    try {
        m = model_from_config(cfg);
        fmt = formats_from_config(cfg);
        dir = prepare_out_dir(io);
        g = grid_from_config(cfg, m);
    } catch (const NoBoundState&) {
        diag(io) << "no bound state (auto grid probe)\n";
        return kExitNoBoundState;
    } catch (const ConfigError& e) {
        diag(io) << "config error: " << e.what() << "\n";
        return kExitConfig;
    }

    SolveOptions opt;
    opt.e_tol = cfg.get_double_or("solve.e_tol", -1.0);
    opt.max_iter = static_cast<int>(cfg.get_double_or("solve.max_iter", 200));

    try {
        const EigenResult res = solve_ground(m, g, opt);
        diag(io) << "ground state E = " << res.energy << ", nodes " << res.nodes << "\n";
        if (fmt.json) write_text_file(dir / "eigenresult.json", eigenresult_json(res, g));
        if (fmt.csv) {
            std::ofstream f(dir / "wavefunction.csv", std::ios::binary);
            if (!f) throw ConfigError("cannot open wavefunction.csv");
            write_wavefunction_csv(f, res.wavefunction, m);
        }
        return kExitOk;
    } catch (const NoBoundState&) {
        diag(io) << "no bound state below the threshold\n";
        return kExitNoBoundState;
    } catch (const GridTooSmall& e) {
        diag(io) << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ConfigError& e) {
        diag(io) << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        diag(io) << "error: " << e.what() << "\n";
        return kExitInternal;
    }
}

int cmd_critical(const CommandIO& io)
{
    const Config& cfg = io.config;
    try {
        const RadialModel m = model_from_config(cfg);
        const OutputFormats fmt = formats_from_config(cfg);
        const auto dir = prepare_out_dir(io);
        const CriticalParameter p = parameter_from(cfg.get_string("critical.parameter"));
        const std::string method = cfg.get_string_or("critical.method", "matching");
        double lo, hi;
        default_bracket(cfg, p, lo, hi);

        std::string json;
        if (method == "matching") {
            const CriticalResult r = critical_by_matching(m, p, lo, hi);
            diag(io) << "matching critical value: " << r.critical_value << "\n";
            json = critical_json_fields(r) + "\n";
        } else if (method == "bisection") {
            const Grid g = bisection_grid(cfg, m);
            const double tol = cfg.get_double_or("critical.param_tol", 1e-6);
            const CriticalResult r = critical_by_bisection(m, p, lo, hi, g, tol);
            diag(io) << "bisection critical value: " << r.critical_value << "\n";
            json = critical_json_fields(r) + "\n";
        } else if (method == "both") {
            const CriticalResult rm = critical_by_matching(m, p, lo, hi);
            const Grid g = bisection_grid(cfg, m);
            const double tol = cfg.get_double_or("critical.param_tol", 1e-6);
            const CriticalResult rb = critical_by_bisection(m, p, lo, hi, g, tol);
            const double disc = std::abs(rm.critical_value - rb.critical_value);
            diag(io) << "matching " << rm.critical_value << ", bisection " << rb.critical_value
                     << ", discrepancy " << disc << "\n";
            JsonObject o;
            o.field_raw("matching", critical_json_fields(rm))
                .field_raw("bisection", critical_json_fields(rb))
                .field("discrepancy", disc);
            json = o.str() + "\n";
        } else {
            throw ConfigError("critical.method must be matching, bisection or both");
        }
        if (fmt.json) write_text_file(dir / "critical.json", json);
        return kExitOk;
    } catch (const NoSignChange&) {
        diag(io) << "no sign change of the matching residual in the bracket\n";
        return kExitNoTransition;
    } catch (const PredicateConstant&) {
        diag(io) << "bound-state existence does not change across the bracket\n";
        return kExitNoTransition;
    } catch (const ConfigError& e) {
        diag(io) << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const UnsupportedTail& e) {
        diag(io) << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        diag(io) << "error: " << e.what() << "\n";
        return kExitInternal;
    }
}

namespace {

EnvelopeSpec envelope_spec_from_config(const Config& cfg, const RadialModel& m,
                                       double binding, double default_region)
{
    EnvelopeSpec s;
    const std::string kind = cfg.get_string("envelope.kind");
    if (kind == "linear") {
        s.kind = EnvelopeKind::linear;
        s.mu = cfg.get_double("envelope.mu");
    } else if (kind == "sqrt") {
        s.kind = EnvelopeKind::sqrt_r;
        s.b = cfg.get_double("envelope.b");
    } else if (kind == "ab" || kind == "ansatz") {
        s.kind = (kind == "ab") ? EnvelopeKind::ab : EnvelopeKind::ansatz;
        const std::string a = cfg.get_string_or("envelope.a", "auto");
        s.a = (a == "auto") ? m.two_m * binding : cfg.get_double("envelope.a");
        s.b = cfg.get_double("envelope.b");
        if (s.kind == EnvelopeKind::ansatz) {
            s.K = cfg.get_double("envelope.K");
            s.kappa = cfg.get_double_or("envelope.kappa", 0.25);
        }
    } else if (kind == "general_u") {
        s.kind = EnvelopeKind::general_u;
        s.delta = cfg.get_double("envelope.delta");
        s.r0 = cfg.get_double_or("envelope.r0", m.well_radius);
    } else {
        throw ConfigError("envelope.kind must be linear, sqrt, ab, ansatz or general_u");
    }
    s.region_r = cfg.get_double_or("envelope.region_r", default_region);
    validate(s);
    return s;
}

}  // namespace

int cmd_envelope(const CommandIO& io)
{
    const Config& cfg = io.config;
    try {
        const RadialModel base = model_from_config(cfg);
        const OutputFormats fmt = formats_from_config(cfg);
        const auto dir = prepare_out_dir(io);
        const std::string source = cfg.get_string_or("envelope.source", "solve");

        RadialModel m = base;
        Wavefunction wf;
        double binding = 0.0;
        if (source == "solve") {
            const Grid g = grid_from_config(cfg, m);
            SolveOptions opt;
            opt.e_tol = cfg.get_double_or("solve.e_tol", -1.0);
            const EigenResult res = solve_ground(m, g, opt);
            wf = res.wavefunction;
            binding = res.binding;
        } else if (source == "critical") {
            const CriticalParameter p = parameter_from(cfg.get_string("critical.parameter"));
            double lo, hi;
            default_bracket(cfg, p, lo, hi);
            const CriticalResult crit = critical_by_matching(m, p, lo, hi);
            m = with_parameter(m, p, crit.critical_value);
            const double h = cfg.get_double_or("grid.h", 1e-3 * m.well_radius);
            const std::string rm = cfg.get_string_or("grid.r_max", "auto");
            const Grid g = (rm == "auto")
                               ? Grid::with_spacing(1600.0 * m.well_radius, h)
                               : Grid::with_spacing(cfg.get_double("grid.r_max"), h);
            wf = threshold_state(m, g).wavefunction;
            binding = 0.0;
            diag(io) << "threshold state at " << to_string(p) << " = " << crit.critical_value << "\n";
        } else if (source == "csv") {
            std::ifstream f(cfg.get_string("envelope.csv_path"));
            if (!f) throw ConfigError("cannot open envelope.csv_path");
            wf = read_wavefunction_csv(f, base.symmetry);
            binding = cfg.get_double("envelope.binding_energy");
        } else {
            throw ConfigError("envelope.source must be solve, critical or csv");
        }

        const double default_region =
            std::max(2.0 * m.well_radius, 10.0 * wf.grid.spacing());
        const EnvelopeSpec spec = envelope_spec_from_config(cfg, m, binding, default_region);
        const double tolerance = cfg.get_double_or("envelope.tolerance", 0.05);

        const double margin = condition_margin(spec, m, binding, wf.grid, spec.region_r);
        JsonObject spec_obj;
        spec_obj.field("kind", to_string(spec.kind))
            .field("mu", spec.mu)
            .field("a", spec.a)
            .field("b", spec.b)
            .field("K", spec.K)
            .field("kappa", spec.kappa)
            .field("delta", spec.delta)
            .field("r0", spec.r0)
            .field("region_r", spec.region_r);

        if (!(margin > 0.0)) {
            JsonObject o;
            o.field_raw("spec", spec_obj.str()).field("margin", margin).field("verified", false);
            if (fmt.json) write_text_file(dir / "envelope_report.json", o.str() + "\n");
            diag(io) << "inadmissible envelope: condition margin " << margin << "\n";
            return kExitInadmissible;
        }

        const UpperVerification up = verify_upper(wf, spec, m, binding, spec.region_r, tolerance);

        const double fit_r1 = cfg.get_double_or("envelope.fit_r1", wf.grid.r_max / 4.0);
        const double fit_r2 = cfg.get_double_or("envelope.fit_r2", 0.95 * wf.grid.r_max);
        const std::string form_key = cfg.get_string_or("envelope.fit_form", "auto");
        const DecayForm form = (form_key == "critical" || (form_key == "auto" && binding < 1e-8))
                                   ? DecayForm::critical
                                   : DecayForm::subcritical;
        DecayFit fit;
        bool have_fit = true;
        try {
            fit = extract_decay(wf, fit_r1, fit_r2, form);
        } catch (const std::exception& e) {
            have_fit = false;
            diag(io) << "decay fit skipped: " << e.what() << "\n";
        }

        JsonObject fit_obj;
        fit_obj.field("A", fit.A).field("p", fit.p).field("B", fit.B).field("rms", fit.rms);
        JsonObject o;
        o.field_raw("spec", spec_obj.str())
            .field("margin", margin)
            .field("C_fit", up.c_fit)
            .field_raw("window_ratios", json_array(up.window_ratios))
            .field("verified", up.verified);
        if (have_fit) o.field_raw("fit", fit_obj.str());

        if (cfg.has("envelope.lower_k")) {
            const LowerVerification low =
                verify_lower(wf, m, cfg.get_double("envelope.lower_k"),
                             cfg.get_double_or("envelope.lower_kappa", 0.25), spec.region_r, tolerance);
            JsonObject lo_obj;
            lo_obj.field("c_low", low.c_low)
                .field_raw("window_minima", json_array(low.window_minima))
                .field("holds", low.holds);
            o.field_raw("lower", lo_obj.str());
        }
        if (fmt.json) write_text_file(dir / "envelope_report.json", o.str() + "\n");

        if (fmt.csv) {
            std::ofstream f(dir / "envelope_curve.csv", std::ios::binary);
            if (!f) throw ConfigError("cannot open envelope_curve.csv");
            f << "r,envelope,psi,ratio\n";
            for (std::size_t i = 0; i < wf.grid.n; ++i) {
                const double r = wf.grid.point(i);
                if (r < spec.region_r || r <= 0.0) continue;
                const double env = envelope_at(spec, m, binding, r);
                const double psi = wf.psi(i);
                f << format_g17(r) << ',' << format_g17(env) << ',' << format_g17(psi) << ','
                  << format_g17(std::abs(psi) / (up.c_fit * env)) << '\n';
            }
        }

        diag(io) << "margin " << margin << ", C_fit " << up.c_fit << ", verified "
                 << (up.verified ? "yes" : "no") << "\n";
        return up.verified ? kExitOk : kExitEnvelopeFail;
    } catch (const InadmissibleAt& e) {
        diag(io) << "inadmissible envelope: " << e.what() << "\n";
        return kExitInadmissible;
    } catch (const NoBoundState&) {
        diag(io) << "no bound state below the threshold\n";
        return kExitNoBoundState;
    } catch (const NoSignChange&) {
        diag(io) << "no sign change of the matching residual in the bracket\n";
        return kExitNoTransition;
    } catch (const ConfigError& e) {
        diag(io) << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const GridTooSmall& e) {
        diag(io) << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        diag(io) << "error: " << e.what() << "\n";
        return kExitInternal;
    }
}

namespace {

struct SweepRow {
    double param = 0.0;
    double energy = 0.0;
    double mean_r = 0.0;
    double fit_a = 0.0;
    double fit_p = 0.0;
    std::string status = "ok";
};

}  // namespace

int cmd_sweep(const CommandIO& io)
{
    const Config& cfg = io.config;
    RadialModel base;
    OutputFormats fmt{};
    std::filesystem::path dir;
    CriticalParameter p;
    std::vector<double> values;
    double h = 0.0;
    try {
        base = model_from_config(cfg);
        fmt = formats_from_config(cfg);
        dir = prepare_out_dir(io);
        p = parameter_from(cfg.get_string("sweep.parameter"));
        values = cfg.get_double_list("sweep.values");
        for (std::size_t i = 1; i < values.size(); ++i)
            if (!(values[i] > values[i - 1]))
                throw ConfigError("sweep.values must be strictly increasing");
        h = cfg.get_double_or("grid.h", 1e-3 * base.well_radius);
        if (!(h > 0.0)) throw ConfigError("grid.h must be positive");
    } catch (const ConfigError& e) {
        diag(io) << "config error: " << e.what() << "\n";
        return kExitConfig;
    }

    std::vector<SweepRow> rows(values.size());
    std::atomic<std::size_t> next{0};
    const int workers = worker_budget(io, values.size());

    auto run_one = [&](std::size_t idx) {
        SweepRow& row = rows[idx];
        row.param = values[idx];
        try {
            const RadialModel m = with_parameter(base, p, values[idx]);
            Grid g{};
            if (cfg.get_string_or("grid.r_max", "auto") == "auto")
                g = auto_grid(m, h);
            else
                g = Grid::with_spacing(cfg.get_double("grid.r_max"), h);
            const EigenResult res = solve_ground(m, g);
            row.energy = res.energy;
            row.mean_r = mean_radius(res.wavefunction);
            const double fit_r1 = std::max(2.0 * m.well_radius, g.r_max / 4.0);
            const double fit_r2 = 0.95 * g.r_max;
            try {
                const DecayFit fit =
                    extract_decay(res.wavefunction, fit_r1, fit_r2, DecayForm::subcritical);
                row.fit_a = fit.A;
                row.fit_p = fit.p;
            } catch (const std::exception&) {
                row.fit_a = row.fit_p = std::nan("");
            }
            if (fmt.csv) {
                char name[64];
                std::snprintf(name, sizeof(name), "wavefunction_%03zu.csv", idx);
                std::ofstream f(dir / name, std::ios::binary);
                write_wavefunction_csv(f, res.wavefunction, m);
                // scaled plot: straight lines mean stretched-exponential decay
                std::snprintf(name, sizeof(name), "scaled_%03zu.csv", idx);
                std::ofstream sf(dir / name, std::ios::binary);
                sf << "r,sqrt_r,neg_log_psi\n";
                for (std::size_t i = 0; i < g.n; ++i) {
                    const double psi = res.wavefunction.psi(i);
                    if (!(psi > 0.0)) continue;
                    const double r = g.point(i);
                    sf << format_g17(r) << ',' << format_g17(std::sqrt(r)) << ','
                       << format_g17(-std::log(psi)) << '\n';
                }
            }
        } catch (const NoBoundState&) {
            row.status = "no_bound_state";
        } catch (const std::exception& e) {
            row.status = std::string("error: ") + e.what();
        }
    };

    if (workers <= 1) {
        for (std::size_t i = 0; i < values.size(); ++i) run_one(i);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < values.size(); i = next.fetch_add(1))
                    run_one(i);
            });
        for (auto& t : pool) t.join();
    }

    std::size_t succeeded = 0;
    std::ostringstream csv;
    csv << "param,E,mean_radius,fit_A,fit_p,status\n";
    for (const SweepRow& row : rows) {
        csv << format_g17(row.param) << ',';
        if (row.status == "ok") {
            ++succeeded;
            csv << format_g17(row.energy) << ',' << format_g17(row.mean_r) << ','
                << format_g17(row.fit_a) << ',' << format_g17(row.fit_p);
        } else {
            csv << ",,,";
        }
        csv << ',' << row.status << '\n';
    }
    try {
        write_text_file(dir / "sweep.csv", csv.str());
    } catch (const ConfigError& e) {
        diag(io) << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    diag(io) << succeeded << "/" << values.size() << " sweep values succeeded\n";
    if (succeeded > 0) return kExitOk;
    const bool all_unbound = std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) {
        return r.status == "no_bound_state";
    });
    return all_unbound ? kExitNoBoundState : kExitInternal;
}

}  // namespace brink
