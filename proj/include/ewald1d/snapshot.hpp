#ifndef EWALD1D_SNAPSHOT_HPP
#define EWALD1D_SNAPSHOT_HPP

// Output files of a run: one snapshot per scheduled time, one diagnostics
// series and a manifest.  All numbers are written with 17 significant digits
// so that parse(write(x)) == x.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <string>
#include <vector>

#include "ewald1d/config.hpp"
#include "ewald1d/harness.hpp"

namespace ewald1d {

inline constexpr int kSnapshotFormatVersion = 1;
inline constexpr const char* kLibraryVersion = "0.1.0";
inline constexpr const char* kRngName = "mt19937_64";

struct SnapshotRow {
    std::int32_t label = 0;
    double x = 0.0; // wrapped into [-L, L)
    double v = 0.0;
    friend bool operator==(const SnapshotRow&, const SnapshotRow&) = default;
};

struct Snapshot {
    int format_version = kSnapshotFormatVersion;
    RunConfig config;
    double time = 0.0;
    std::uint64_t event_count = 0;
    std::vector<SnapshotRow> rows;

    friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

Snapshot snapshot_from_frame(const DiagnosticsFrame& frame, const RunConfig& cfg);

// Header lines start with "# "; then "label,x,v" and one row per particle.
void write_snapshot(std::ostream& out, const Snapshot& s);
// Throws ConfigError (with line numbers) on malformed input, including a row
// count different from 2N.
Snapshot parse_snapshot(std::istream& in, const std::string& source = "<snapshot>");

// time,xc_wrapped,xc_cover,vc,energy,clusters,event_count; energy is empty
// when the run has friction.
void write_diagnostics_header(std::ostream& out);
void write_diagnostics_row(std::ostream& out, const DiagnosticsFrame& f);

struct Manifest {
    std::uint64_t seed = 0;
    std::string status = "complete"; // or "partial"
    std::size_t frames_written = 0;
    std::uint64_t event_count = 0;
    std::string error;               // empty when complete
};

void write_manifest(std::ostream& out, const Manifest& m);

// Writes snapshot_NNNNN.csv, diagnostics.csv and manifest.txt into the
// configured output directory (created if needed).
class RunWriter {
public:
    explicit RunWriter(const RunConfig& cfg);

    void on_frame(const DiagnosticsFrame& f);
    void finish(const std::string& error = "");

    std::size_t frames_written() const { return frames_; }
    const std::filesystem::path& directory() const { return dir_; }

private:
    RunConfig cfg_;
    std::filesystem::path dir_;
    std::ofstream diagnostics_;
    std::size_t frames_ = 0;
    std::uint64_t events_ = 0;
};

} // namespace ewald1d

#endif // EWALD1D_SNAPSHOT_HPP
