#include "ewald1d/config.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace ewald1d {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

ConfigError::ConfigError(const std::string& source, int line_no, const std::string& what)
    : std::runtime_error(line_no > 0 ? source + ":" + std::to_string(line_no) + ": " + what : source + ": " + what),
      line(line_no) {}

bool operator==(const RunConfig& a, const RunConfig& b) {
    const DomainConfig& da = a.domain;
    const DomainConfig& db = b.domain;
    return da.half_length == db.half_length && da.n_pairs == db.n_pairs && da.coupling == db.coupling &&
           da.gamma == db.gamma && da.gravitational == db.gravitational && a.waterbag == b.waterbag &&
           a.mode == b.mode && a.t_end == b.t_end && a.snapshot_interval == b.snapshot_interval &&
           a.output_dir == b.output_dir && a.root_tolerance == b.root_tolerance &&
           a.histogram_bins == b.histogram_bins && a.cluster_threshold == b.cluster_threshold;
}

void RunConfig::validate() const {
    domain.validate();
    if (waterbag.count != domain.particle_count()) throw std::invalid_argument("waterbag count must equal 2N");
    if (!(waterbag.v0 >= 0.0) || !std::isfinite(waterbag.v0)) throw std::invalid_argument("v0 must be finite and >= 0");
    if (!(t_end > 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("t_end must be positive");
    if (!(snapshot_interval > 0.0) || !std::isfinite(snapshot_interval)) {
        throw std::invalid_argument("snapshot_interval must be positive");
    }
    if (!(root_tolerance > 0.0)) throw std::invalid_argument("root_tolerance must be positive");
    if (histogram_bins < 0) throw std::invalid_argument("histogram_bins must be >= 0");
    if (!(cluster_threshold >= 0.0)) throw std::invalid_argument("cluster_threshold must be >= 0");
    if (output_dir.empty() || output_dir.find_first_of("\n#") != std::string::npos ||
        std::isspace(static_cast<unsigned char>(output_dir.front())) ||
        std::isspace(static_cast<unsigned char>(output_dir.back()))) {
        throw std::invalid_argument("output_dir must be one line, no '#', no surrounding blanks");
    }
}

std::vector<double> RunConfig::schedule() const {
    std::vector<double> s;
    // Multiples of the interval, not a running sum, so times are exact.
    for (long k = 0;; ++k) {
        const double t = static_cast<double>(k) * snapshot_interval;
        if (t > t_end * (1.0 + 1e-12)) break;
        s.push_back(std::min(t, t_end));
    }
    if (s.back() < t_end) s.push_back(t_end);
    return s;
}

ExperimentOptions RunConfig::experiment_options() const {
    ExperimentOptions o;
    o.histogram_bins = histogram_bins;
    o.cluster_threshold = cluster_threshold;
    o.root_tolerance = root_tolerance;
    return o;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& v) {
    if (v.empty()) throw std::invalid_argument("empty value");
    errno = 0;
    char* end = nullptr;
    const double d = std::strtod(v.c_str(), &end);
    if (*end != '\0' || errno == ERANGE) throw std::invalid_argument("not a number: '" + v + "'");
    return d;
}

long long to_integer(const std::string& v) {
    if (v.empty()) throw std::invalid_argument("empty value");
    errno = 0;
    char* end = nullptr;
    const long long i = std::strtoll(v.c_str(), &end, 10);
    if (*end != '\0' || errno == ERANGE) throw std::invalid_argument("not an integer: '" + v + "'");
    return i;
}

std::uint64_t to_unsigned(const std::string& v) {
    if (v.empty() || v[0] == '-') throw std::invalid_argument("not an unsigned integer: '" + v + "'");
    errno = 0;
    char* end = nullptr;
    const unsigned long long u = std::strtoull(v.c_str(), &end, 10);
    if (*end != '\0' || errno == ERANGE) throw std::invalid_argument("not an unsigned integer: '" + v + "'");
    return u;
}

bool to_bool(const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw std::invalid_argument("not a boolean: '" + v + "'");
}

struct Entry {
    std::string value;
    int line;
};

RunConfig build(const std::map<std::string, Entry>& kv, const std::string& source) {
    RunConfig c;
    auto get = [&](const char* key) -> const Entry* {
        auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };
    auto with = [&](const char* key, auto&& fn) {
        if (const Entry* e = get(key)) {
            try {
                fn(e->value);
            } catch (const std::invalid_argument& ex) {
                throw ConfigError(source, e->line, std::string(key) + ": " + ex.what());
            }
        }
    };

    const Entry* np = get("n_pairs");
    if (!np) throw ConfigError(source, 0, "missing required key n_pairs");
    with("n_pairs", [&](const std::string& v) {
        const long long n = to_integer(v);
        if (n < 1 || n > (1LL << 28)) throw std::invalid_argument("must be in [1, 2^28]");
        c.domain.n_pairs = static_cast<int>(n);
    });
    c.domain.half_length = c.domain.n_pairs;
    c.domain.coupling = 1.0;
    with("half_length", [&](const std::string& v) { c.domain.half_length = to_double(v); });
    with("coupling", [&](const std::string& v) { c.domain.coupling = to_double(v); });
    with("gamma", [&](const std::string& v) { c.domain.gamma = to_double(v); });
    with("mode", [&](const std::string& v) { c.mode = parse_boundary_mode(v); });
    with("placement", [&](const std::string& v) { c.waterbag.placement = parse_placement(v); });
    with("v0", [&](const std::string& v) { c.waterbag.v0 = to_double(v); });
    with("seed", [&](const std::string& v) { c.waterbag.seed = to_unsigned(v); });
    with("zero_mean_velocity", [&](const std::string& v) { c.waterbag.zero_mean_velocity = to_bool(v); });
    with("t_end", [&](const std::string& v) { c.t_end = to_double(v); });
    with("snapshot_interval", [&](const std::string& v) { c.snapshot_interval = to_double(v); });
    with("output_dir", [&](const std::string& v) { c.output_dir = v; });
    with("root_tolerance", [&](const std::string& v) { c.root_tolerance = to_double(v); });
    with("histogram_bins", [&](const std::string& v) {
        const long long b = to_integer(v);
        if (b < 0 || b > (1LL << 24)) throw std::invalid_argument("must be in [0, 2^24]");
        c.histogram_bins = static_cast<int>(b);
    });
    with("cluster_threshold", [&](const std::string& v) { c.cluster_threshold = to_double(v); });
    c.waterbag.count = c.domain.particle_count();
    return c;
}

const char* const kKeys[] = {"n_pairs", "half_length", "coupling", "gamma", "mode", "placement", "v0", "seed",
                             "zero_mean_velocity", "t_end", "snapshot_interval", "output_dir", "root_tolerance",
                             "histogram_bins", "cluster_threshold"};

std::map<std::string, Entry> read_entries(std::istream& in, const std::string& source) {
    std::map<std::string, Entry> kv;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(source, line_no, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        bool known = false;
        for (const char* k : kKeys) known = known || key == k;
        if (!known) throw ConfigError(source, line_no, "unknown key '" + key + "'");
        if (kv.count(key)) throw ConfigError(source, line_no, "duplicate key '" + key + "'");
        kv.emplace(key, Entry{value, line_no});
    }
    return kv;
}

void check(const RunConfig& c, const std::string& source) {
    try {
        c.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(source, 0, e.what());
    }
}

} // namespace

RunConfig parse_run_config(std::istream& in, const std::string& source) {
    RunConfig c = build(read_entries(in, source), source);
    check(c, source);
    return c;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError(path, 0, "cannot open file");
    return parse_run_config(f, path);
}

RunConfig apply_overrides(const std::string& text, const ConfigOverrides& o, const std::string& source) {
    std::istringstream in(text);
    std::map<std::string, Entry> kv = read_entries(in, source);
    auto put = [&](const char* key, const std::string& value) { kv[key] = Entry{value, 0}; };
    if (o.n_pairs) put("n_pairs", std::to_string(*o.n_pairs));
    if (o.gamma) put("gamma", format_double(*o.gamma));
    if (o.t_end) put("t_end", format_double(*o.t_end));
    if (o.seed) put("seed", std::to_string(*o.seed));
    if (o.mode) put("mode", *o.mode);
    if (o.output_dir) put("output_dir", *o.output_dir);
    if (o.root_tolerance) put("root_tolerance", format_double(*o.root_tolerance));
    RunConfig c = build(kv, source);
    check(c, source);
    return c;
}

void write_run_config(std::ostream& out, const RunConfig& c, const std::string& prefix) {
    out << prefix << "n_pairs = " << c.domain.n_pairs << '\n';
    out << prefix << "half_length = " << format_double(c.domain.half_length) << '\n';
    out << prefix << "coupling = " << format_double(c.domain.coupling) << '\n';
    out << prefix << "gamma = " << format_double(c.domain.gamma) << '\n';
    out << prefix << "mode = " << to_string(c.mode) << '\n';
    out << prefix << "placement = " << to_string(c.waterbag.placement) << '\n';
    out << prefix << "v0 = " << format_double(c.waterbag.v0) << '\n';
    out << prefix << "seed = " << c.waterbag.seed << '\n';
    out << prefix << "zero_mean_velocity = " << (c.waterbag.zero_mean_velocity ? "true" : "false") << '\n';
    out << prefix << "t_end = " << format_double(c.t_end) << '\n';
    out << prefix << "snapshot_interval = " << format_double(c.snapshot_interval) << '\n';
    out << prefix << "output_dir = " << c.output_dir << '\n';
    out << prefix << "root_tolerance = " << format_double(c.root_tolerance) << '\n';
    out << prefix << "histogram_bins = " << c.histogram_bins << '\n';
    out << prefix << "cluster_threshold = " << format_double(c.cluster_threshold) << '\n';
}

} // namespace ewald1d
