// ewald1d: simulate, validate, field.
//
// Exit codes: 0 success, 1 validation failure or run failure, 2 usage or
// configuration error.

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ewald1d/config.hpp"
#include "ewald1d/harness.hpp"
#include "ewald1d/kernels.hpp"
#include "ewald1d/snapshot.hpp"
#include "ewald1d/validation.hpp"

namespace {

using namespace ewald1d;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError(path, 0, "cannot open file");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int simulate(const std::string& path, const ConfigOverrides& o) {
    RunConfig cfg;
    try {
        cfg = apply_overrides(read_file(path), o, path);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    RunWriter writer(cfg);
    const std::vector<double> schedule = cfg.schedule();
    try {
        run_experiment(cfg.mode, cfg.waterbag, cfg.domain, schedule, cfg.experiment_options(),
                       [&](const DiagnosticsFrame& f) { writer.on_frame(f); });
    } catch (const std::exception& e) {
        writer.finish(e.what());
        std::cerr << "error: run stopped: " << e.what() << '\n';
        return kFailed;
    }
    writer.finish();
    std::cout << "wrote " << writer.frames_written() << " snapshots to " << writer.directory().string() << '\n';
    return kOk;
}

int validate(const std::string& tier_name, const std::string& report_path) {
    const Tier tier = tier_name == "full" ? Tier::full : Tier::fast;
    const ValidationReport report = run_validation(tier);
    const std::string json = report_to_json(report);
    if (report_path.empty() || report_path == "-") {
        std::cout << json;
    } else {
        std::ofstream f(report_path, std::ios::trunc);
        if (!f) {
            std::cerr << "error: cannot write " << report_path << '\n';
            return kUsage;
        }
        f << json;
    }
    for (const CheckResult& c : report.checks) {
        std::cerr << (c.passed ? "ok   " : "FAIL ") << c.name << " measured=" << format_double(c.measured)
                  << " tolerance=" << format_double(c.tolerance) << '\n';
    }
    return report.passed() ? kOk : kFailed;
}

// One position per line; blank lines and '#' comments are skipped.
std::vector<double> read_sources(const std::string& path, const DomainConfig& cfg) {
    std::ifstream f(path);
    if (!f) throw ConfigError(path, 0, "cannot open file");
    std::vector<double> out;
    std::string raw;
    int line_no = 0;
    while (std::getline(f, raw)) {
        ++line_no;
        std::string line = raw.substr(0, raw.find('#'));
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);
        errno = 0;
        char* end = nullptr;
        const double x = std::strtod(line.c_str(), &end);
        if (*end != '\0' || errno == ERANGE) throw ConfigError(path, line_no, "not a number: '" + line + "'");
        if (!(x >= -cfg.half_length && x < cfg.half_length)) {
            throw ConfigError(path, line_no, "source outside [-L, L)");
        }
        out.push_back(x);
    }
    return out;
}

GridSpec parse_grid(const std::string& s) {
    GridSpec g;
    const auto a = s.find(':');
    const auto b = s.find(':', a == std::string::npos ? a : a + 1);
    if (a == std::string::npos || b == std::string::npos) throw ConfigError("--grid", 0, "expected lo:hi:count");
    char* end = nullptr;
    const std::string lo = s.substr(0, a), hi = s.substr(a + 1, b - a - 1), n = s.substr(b + 1);
    g.lo = std::strtod(lo.c_str(), &end);
    if (lo.empty() || *end) throw ConfigError("--grid", 0, "bad lower bound '" + lo + "'");
    g.hi = std::strtod(hi.c_str(), &end);
    if (hi.empty() || *end) throw ConfigError("--grid", 0, "bad upper bound '" + hi + "'");
    const long count = std::strtol(n.c_str(), &end, 10);
    if (n.empty() || *end || count < 1 || count > 100000000) throw ConfigError("--grid", 0, "bad count '" + n + "'");
    g.count = static_cast<int>(count);
    return g;
}

int field(const std::string& config_path, const std::string& sources_path, const std::string& grid_text, int n_max,
          const std::string& out_path) {
    RunConfig cfg;
    std::vector<double> sources;
    GridSpec grid;
    try {
        cfg = load_run_config(config_path);
        sources = read_sources(sources_path, cfg.domain);
        grid = parse_grid(grid_text);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    if (n_max < 1) {
        std::cerr << "error: --n-max must be >= 1\n";
        return kUsage;
    }
    const std::vector<double> xs = grid.points();
    const std::vector<FieldSample> table = kernels::omp::field_table(xs, sources, FourierTruncation{n_max}, cfg.domain);

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty() && out_path != "-") {
        file.open(out_path, std::ios::trunc);
        if (!file) {
            std::cerr << "error: cannot write " << out_path << '\n';
            return kUsage;
        }
        out = &file;
    }
    *out << "# n_max = " << n_max << ", sources = " << sources.size() << '\n';
    *out << "x,potential,field,series_potential,series_field,primitive_field\n";
    for (const FieldSample& s : table) {
        *out << format_double(s.x) << ',' << format_double(s.potential) << ',' << format_double(s.field) << ','
             << format_double(s.series_potential) << ',' << format_double(s.series_field) << ','
             << format_double(s.primitive_field) << '\n';
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact event-driven simulation of periodic one-dimensional self-gravitating sheets"};
    app.require_subcommand(1);

    std::string config_path;
    ConfigOverrides o;
    int n_pairs = 0;
    double gamma = 0.0, t_end = 0.0, tolerance = 0.0;
    std::uint64_t seed = 0;
    std::string mode, out_dir;
    auto* sim = app.add_subcommand("simulate", "Run an experiment and write snapshots, diagnostics and a manifest");
    sim->add_option("config", config_path, "Run configuration file")->required();
    auto* f_n = sim->add_option("--n-pairs", n_pairs, "N (2N particles)");
    auto* f_gamma = sim->add_option("--gamma", gamma, "Friction");
    auto* f_t = sim->add_option("--t-end", t_end, "Final time");
    auto* f_seed = sim->add_option("--seed", seed, "Waterbag seed");
    auto* f_mode = sim->add_option("--mode", mode, "periodic or symmetric");
    auto* f_out = sim->add_option("--out", out_dir, "Output directory");
    auto* f_tol = sim->add_option("--tolerance", tolerance, "Root tolerance");

    std::string tier = "fast", report_path;
    auto* val = app.add_subcommand("validate", "Run the consistency checks and print a JSON report");
    val->add_option("--tier", tier, "fast or full")->check(CLI::IsMember({"fast", "full"}));
    val->add_option("--report", report_path, "Write the JSON report here instead of stdout");

    std::string field_config, sources_path, grid_text, field_out;
    int n_max = 1000;
    auto* fld = app.add_subcommand("field", "Tabulate closed-form and series potential and field");
    fld->add_option("config", field_config, "Run configuration file (domain keys are used)")->required();
    fld->add_option("sources", sources_path, "File with one source position per line")->required();
    fld->add_option("--grid", grid_text, "lo:hi:count")->required();
    fld->add_option("--n-max", n_max, "Highest Fourier harmonic");
    fld->add_option("--out", field_out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*sim) {
            if (*f_n) o.n_pairs = n_pairs;
            if (*f_gamma) o.gamma = gamma;
            if (*f_t) o.t_end = t_end;
            if (*f_seed) o.seed = seed;
            if (*f_mode) o.mode = mode;
            if (*f_out) o.output_dir = out_dir;
            if (*f_tol) o.root_tolerance = tolerance;
            return simulate(config_path, o);
        }
        if (*val) return validate(tier, report_path);
        if (*fld) return field(field_config, sources_path, grid_text, n_max, field_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailed;
    }
    return kUsage;
}
