#include "ewald1d/snapshot.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace ewald1d {

Snapshot snapshot_from_frame(const DiagnosticsFrame& frame, const RunConfig& cfg) {
    if (frame.x.size() != frame.v.size() || frame.x.size() != frame.labels.size()) {
        throw std::invalid_argument("frame carries no particle data");
    }
    Snapshot s;
    s.config = cfg;
    s.time = frame.time;
    s.event_count = frame.event_count;
    s.rows.reserve(frame.x.size());
    for (std::size_t i = 0; i < frame.x.size(); ++i) s.rows.push_back(SnapshotRow{frame.labels[i], frame.x[i], frame.v[i]});
    return s;
}

void write_snapshot(std::ostream& out, const Snapshot& s) {
    out << "# ewald1d snapshot\n";
    out << "# format_version = " << s.format_version << '\n';
    write_run_config(out, s.config, "# config.");
    out << "# time = " << format_double(s.time) << '\n';
    out << "# event_count = " << s.event_count << '\n';
    out << "label,x,v\n";
    for (const SnapshotRow& r : s.rows) out << r.label << ',' << format_double(r.x) << ',' << format_double(r.v) << '\n';
}

namespace {

double parse_number(const std::string& t, const std::string& source, int line) {
    errno = 0;
    char* end = nullptr;
    const double d = std::strtod(t.c_str(), &end);
    if (t.empty() || *end != '\0' || errno == ERANGE) throw ConfigError(source, line, "bad number '" + t + "'");
    return d;
}

long long parse_int(const std::string& t, const std::string& source, int line) {
    errno = 0;
    char* end = nullptr;
    const long long i = std::strtoll(t.c_str(), &end, 10);
    if (t.empty() || *end != '\0' || errno == ERANGE) throw ConfigError(source, line, "bad integer '" + t + "'");
    return i;
}

} // namespace

Snapshot parse_snapshot(std::istream& in, const std::string& source) {
    Snapshot s;
    std::string line;
    int line_no = 0;
    std::ostringstream config_text;
    bool have_time = false, have_events = false, have_version = false, in_rows = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!in_rows) {
            if (line == "label,x,v") {
                in_rows = true;
                continue;
            }
            if (line.rfind("# ", 0) != 0) throw ConfigError(source, line_no, "expected header line or 'label,x,v'");
            const std::string body = line.substr(2);
            const auto eq = body.find(" = ");
            if (eq == std::string::npos) continue; // title line
            const std::string key = body.substr(0, eq);
            const std::string value = body.substr(eq + 3);
            if (key.rfind("config.", 0) == 0) {
                config_text << key.substr(7) << " = " << value << '\n';
            } else if (key == "format_version") {
                s.format_version = static_cast<int>(parse_int(value, source, line_no));
                if (s.format_version != kSnapshotFormatVersion) {
                    throw ConfigError(source, line_no, "unsupported format_version " + value);
                }
                have_version = true;
            } else if (key == "time") {
                s.time = parse_number(value, source, line_no);
                have_time = true;
            } else if (key == "event_count") {
                const long long e = parse_int(value, source, line_no);
                if (e < 0) throw ConfigError(source, line_no, "negative event_count");
                s.event_count = static_cast<std::uint64_t>(e);
                have_events = true;
            } else {
                throw ConfigError(source, line_no, "unknown header key '" + key + "'");
            }
            continue;
        }
        std::istringstream row(line);
        std::string a, b, c, extra;
        if (!std::getline(row, a, ',') || !std::getline(row, b, ',') || !std::getline(row, c, ',') ||
            std::getline(row, extra, ',')) {
            throw ConfigError(source, line_no, "expected 'label,x,v'");
        }
        s.rows.push_back(SnapshotRow{static_cast<std::int32_t>(parse_int(a, source, line_no)),
                                     parse_number(b, source, line_no), parse_number(c, source, line_no)});
    }
    if (!have_version || !have_time || !have_events || !in_rows) {
        throw ConfigError(source, 0, "incomplete snapshot header");
    }
    std::istringstream cin(config_text.str());
    s.config = parse_run_config(cin, source + " [config echo]");
    if (static_cast<int>(s.rows.size()) != s.config.domain.particle_count()) {
        throw ConfigError(source, 0, "row count " + std::to_string(s.rows.size()) + " differs from 2N");
    }
    return s;
}

void write_diagnostics_header(std::ostream& out) {
    out << "time,xc_wrapped,xc_cover,vc,energy,clusters,event_count\n";
}

void write_diagnostics_row(std::ostream& out, const DiagnosticsFrame& f) {
    out << format_double(f.time) << ',' << format_double(f.xc_wrapped) << ',' << format_double(f.xc_cover) << ','
        << format_double(f.vc) << ',' << (f.energy ? format_double(*f.energy) : std::string()) << ',' << f.clusters
        << ',' << f.event_count << '\n';
}

void write_manifest(std::ostream& out, const Manifest& m) {
    out << "format_version = " << kSnapshotFormatVersion << '\n';
    out << "library_version = " << kLibraryVersion << '\n';
    out << "rng = " << kRngName << '\n';
    out << "seed = " << m.seed << '\n';
    out << "status = " << m.status << '\n';
    out << "frames_written = " << m.frames_written << '\n';
    out << "event_count = " << m.event_count << '\n';
    if (!m.error.empty()) {
        std::string one_line = m.error;
        for (char& ch : one_line) {
            if (ch == '\n') ch = ' ';
        }
        out << "error = " << one_line << '\n';
    }
}

RunWriter::RunWriter(const RunConfig& cfg) : cfg_(cfg), dir_(cfg.output_dir) {
    std::filesystem::create_directories(dir_);
    diagnostics_.open(dir_ / "diagnostics.csv", std::ios::trunc);
    if (!diagnostics_) throw std::runtime_error("cannot write " + (dir_ / "diagnostics.csv").string());
    write_diagnostics_header(diagnostics_);
}

void RunWriter::on_frame(const DiagnosticsFrame& f) {
    char name[32];
    std::snprintf(name, sizeof name, "snapshot_%05zu.csv", frames_);
    std::ofstream snap(dir_ / name, std::ios::trunc);
    if (!snap) throw std::runtime_error("cannot write " + (dir_ / name).string());
    write_snapshot(snap, snapshot_from_frame(f, cfg_));
    write_diagnostics_row(diagnostics_, f);
    diagnostics_.flush();
    ++frames_;
    events_ = f.event_count;
}

void RunWriter::finish(const std::string& error) {
    diagnostics_.close();
    Manifest m;
    m.seed = cfg_.waterbag.seed;
    m.status = error.empty() ? "complete" : "partial";
    m.frames_written = frames_;
    m.event_count = events_;
    m.error = error;
    std::ofstream out(dir_ / "manifest.txt", std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + (dir_ / "manifest.txt").string());
    write_manifest(out, m);
}

} // namespace ewald1d
