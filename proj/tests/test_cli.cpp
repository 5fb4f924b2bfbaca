#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args)
{
    const std::string cmd = std::string(BRINK_CLI_PATH) + " " + args + " 2>/dev/null";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

fs::path fresh_dir(const std::string& tag)
{
    const fs::path dir = fs::temp_directory_path() / ("brink_cli_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_config(const fs::path& dir, const std::string& name, const std::string& text)
{
    const fs::path p = dir / name;
    std::ofstream f(p);
    f << text;
    return p;
}

std::string slurp(const fs::path& p)
{
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

double json_number(const std::string& text, const std::string& key)
{
    const auto pos = text.find("\"" + key + "\":");
    REQUIRE(pos != std::string::npos);
    return std::stod(text.substr(pos + key.size() + 3));
}

const std::string kCoulombModel =
    "model.well_depth = 1.0\n"
    "model.tail.kind = coulomb\n"
    "model.tail.strength = 1.0\n";

}  // namespace

TEST_CASE("solve writes results and distinguishes bound from unbound")
{
    const fs::path dir = fresh_dir("solve");
    const fs::path cfg = write_config(dir, "run.cfg",
                                      kCoulombModel +
                                          "grid.r_max = 80\n"
                                          "grid.h = 2e-3\n");
    CHECK(run_cli("solve --config " + cfg.string() + " --out " + (dir / "out").string()) == 0);
    CHECK(fs::exists(dir / "out" / "eigenresult.json"));
    CHECK(fs::exists(dir / "out" / "wavefunction.csv"));
    const std::string json = slurp(dir / "out" / "eigenresult.json");
    CHECK(json_number(json, "energy") < -0.2);
    CHECK(json_number(json, "nodes") == 0.0);

    const fs::path cfg_unbound = write_config(dir, "unbound.cfg",
                                              "model.well_depth = 0.5\n"
                                              "model.tail.kind = coulomb\n"
                                              "model.tail.strength = 1.0\n"
                                              "grid.r_max = 80\n"
                                              "grid.h = 2e-3\n");
    CHECK(run_cli("solve --config " + cfg_unbound.string() + " --out " + (dir / "o2").string()) == 3);

    const fs::path cfg_bad = write_config(dir, "bad.cfg",
                                          "model.well_radius = -1\n");
    CHECK(run_cli("solve --config " + cfg_bad.string() + " --out " + (dir / "o3").string()) == 2);
}

TEST_CASE("critical matching reproduces the reference value and is deterministic")
{
    const fs::path dir = fresh_dir("critical");
    const fs::path cfg = write_config(dir, "run.cfg",
                                      kCoulombModel +
                                          "critical.parameter = well_depth\n"
                                          "critical.method = matching\n"
                                          "critical.bracket_lo = 0.3\n"
                                          "critical.bracket_hi = 1.0\n");
    CHECK(run_cli("critical --config " + cfg.string() + " --out " + (dir / "a").string()) == 0);
    CHECK(run_cli("critical --config " + cfg.string() + " --out " + (dir / "b").string()) == 0);
    const std::string ja = slurp(dir / "a" / "critical.json");
    CHECK(ja == slurp(dir / "b" / "critical.json"));  // byte-identical reruns
    CHECK(std::abs(json_number(ja, "value") - 0.634366) < 5e-6);

    const fs::path cfg_nosign = write_config(dir, "nosign.cfg",
                                             kCoulombModel +
                                                 "critical.parameter = well_depth\n"
                                                 "critical.bracket_lo = 0.7\n"
                                                 "critical.bracket_hi = 1.0\n");
    CHECK(run_cli("critical --config " + cfg_nosign.string() + " --out " + (dir / "c").string()) == 4);
}

TEST_CASE("envelope verification exit codes")
{
    const fs::path dir = fresh_dir("envelope");
    const std::string critical_block = kCoulombModel +
                                       "critical.parameter = well_depth\n"
                                       "critical.bracket_lo = 0.3\n"
                                       "critical.bracket_hi = 1.0\n"
                                       "envelope.source = critical\n"
                                       "grid.r_max = 400\n"
                                       "grid.h = 2e-3\n";
    const fs::path ok_cfg = write_config(dir, "ok.cfg", critical_block +
                                                            "envelope.kind = sqrt\n"
                                                            "envelope.b = 0.9\n");
    CHECK(run_cli("envelope --config " + ok_cfg.string() + " --out " + (dir / "ok").string()) == 0);
    const std::string report = slurp(dir / "ok" / "envelope_report.json");
    CHECK(report.find("\"verified\":true") != std::string::npos);
    CHECK(fs::exists(dir / "ok" / "envelope_curve.csv"));

    const fs::path bad_cfg = write_config(dir, "bad.cfg", critical_block +
                                                              "envelope.kind = sqrt\n"
                                                              "envelope.b = 1.2\n");
    CHECK(run_cli("envelope --config " + bad_cfg.string() + " --out " + (dir / "bad").string()) == 6);
}

TEST_CASE("envelope csv ingestion matches the inline path byte for byte")
{
    const fs::path dir = fresh_dir("ingest");
    const std::string grid = "grid.r_max = 80\ngrid.h = 2e-3\n";
    const fs::path solve_cfg = write_config(dir, "solve.cfg", kCoulombModel + grid);
    REQUIRE(run_cli("solve --config " + solve_cfg.string() + " --out " + (dir / "s").string()) == 0);
    const std::string eig = slurp(dir / "s" / "eigenresult.json");
    const auto bpos = eig.find("\"binding\":");
    REQUIRE(bpos != std::string::npos);
    const std::string binding = eig.substr(bpos + 10, eig.find(',', bpos) - bpos - 10);

    const std::string env_block = "envelope.kind = ab\nenvelope.b = 0.9\n";
    const fs::path inline_cfg =
        write_config(dir, "inline.cfg", kCoulombModel + grid + env_block + "envelope.source = solve\n");
    const fs::path csv_cfg = write_config(
        dir, "csv.cfg", kCoulombModel + grid + env_block + "envelope.source = csv\n" +
                            "envelope.csv_path = " + (dir / "s" / "wavefunction.csv").string() +
                            "\n" + "envelope.binding_energy = " + binding + "\n");
    CHECK(run_cli("envelope --config " + inline_cfg.string() + " --out " + (dir / "a").string()) == 0);
    CHECK(run_cli("envelope --config " + csv_cfg.string() + " --out " + (dir / "b").string()) == 0);
    CHECK(slurp(dir / "a" / "envelope_report.json") == slurp(dir / "b" / "envelope_report.json"));
    CHECK(slurp(dir / "a" / "envelope_curve.csv") == slurp(dir / "b" / "envelope_curve.csv"));
}

TEST_CASE("envelope rejects a wavefunction that violates the claimed bound")
{
    const fs::path dir = fresh_dir("violate");
    // synthetic slowly decaying data: e^{-0.05 r} against a mu = 0.5 weight
    std::ofstream csv(dir / "wf.csv");
    csv << "r,u,psi,V\n";
    for (int i = 0; i <= 1000; ++i) {
        const double r = 0.1 * i;
        const double u = std::exp(-0.05 * r);
        csv << r << ',' << u << ',' << u << ',' << 0 << '\n';
    }
    csv.close();
    const fs::path cfg = write_config(dir, "run.cfg",
                                      "model.well_depth = 1.0\n"
                                      "envelope.source = csv\n"
                                      "envelope.csv_path = " + (dir / "wf.csv").string() + "\n" +
                                          "envelope.binding_energy = 0.5\n"
                                          "envelope.kind = linear\n"
                                          "envelope.mu = 0.5\n");
    CHECK(run_cli("envelope --config " + cfg.string() + " --out " + (dir / "out").string()) == 5);
}

TEST_CASE("sweep outputs are order-independent and scriptable")
{
    const fs::path dir = fresh_dir("sweep");
    const fs::path cfg = write_config(dir, "run.cfg",
                                      kCoulombModel +
                                          "sweep.parameter = tail_strength\n"
                                          "sweep.values = 0.8, 1.2\n"
                                          "grid.r_max = 60\n"
                                          "grid.h = 2e-3\n");
    CHECK(run_cli("sweep --config " + cfg.string() + " --out " + (dir / "w1").string() +
                  " --workers 1") == 0);
    CHECK(run_cli("sweep --config " + cfg.string() + " --out " + (dir / "w2").string() +
                  " --workers 2") == 0);
    const std::string csv1 = slurp(dir / "w1" / "sweep.csv");
    CHECK(csv1 == slurp(dir / "w2" / "sweep.csv"));
    CHECK(csv1.rfind("param,E,mean_radius,fit_A,fit_p,status", 0) == 0);
    CHECK(fs::exists(dir / "w1" / "wavefunction_000.csv"));
    CHECK(fs::exists(dir / "w1" / "scaled_001.csv"));

    // stronger repulsion binds less: E rises with the tail strength
    std::istringstream rows(csv1);
    std::string line;
    std::getline(rows, line);  // header
    std::getline(rows, line);
    const double e1 = std::stod(line.substr(line.find(',') + 1));
    std::getline(rows, line);
    const double e2 = std::stod(line.substr(line.find(',') + 1));
    CHECK(e1 < e2);

    const std::string scaled = slurp(dir / "w1" / "scaled_000.csv");
    CHECK(scaled.rfind("r,sqrt_r,neg_log_psi", 0) == 0);

    // sweep values must increase
    const fs::path bad = write_config(dir, "bad.cfg",
                                      kCoulombModel +
                                          "sweep.parameter = tail_strength\n"
                                          "sweep.values = 1.2, 0.8\n");
    CHECK(run_cli("sweep --config " + bad.string() + " --out " + (dir / "w3").string()) == 2);

    // worker budget may also come from the environment
    setenv("BRINK_WORKERS", "2", 1);
    CHECK(run_cli("sweep --config " + cfg.string() + " --out " + (dir / "w4").string()) == 0);
    unsetenv("BRINK_WORKERS");
    CHECK(csv1 == slurp(dir / "w4" / "sweep.csv"));
}
