#ifndef EWALD1D_CONFIG_HPP
#define EWALD1D_CONFIG_HPP

// Run configuration: flat "key = value" text, '#' starts a comment.
//
//   n_pairs = 512          # N, 2N particles
//   half_length = 512      # L (default: N)
//   coupling = 1           # g (default: 1)
//   gamma = 0.7071067811865476
//   mode = periodic        # or symmetric
//   placement = lattice    # or uniform
//   v0 = 0.5
//   seed = 1
//   zero_mean_velocity = true
//   t_end = 14
//   snapshot_interval = 1
//   output_dir = out
//   root_tolerance = 1e-12
//   histogram_bins = 0     # 0: 2N/8
//   cluster_threshold = 0  # 0: L/(4N)

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ewald1d/domain.hpp"
#include "ewald1d/harness.hpp"

namespace ewald1d {

struct RunConfig {
    DomainConfig domain = DomainConfig::scaled(1);
    WaterbagSpec waterbag;
    BoundaryMode mode = BoundaryMode::periodic;
    double t_end = 1.0;
    double snapshot_interval = 1.0;
    std::string output_dir = "out";
    double root_tolerance = 1e-12;
    int histogram_bins = 0;
    double cluster_threshold = 0.0;

    // Throws std::invalid_argument.
    void validate() const;

    // 0, dt, 2 dt, ... and t_end itself if it is not on the grid.
    std::vector<double> schedule() const;

    ExperimentOptions experiment_options() const;

    friend bool operator==(const RunConfig& a, const RunConfig& b);
};

class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& source, int line, const std::string& what);
    int line; // 0 when not tied to a line
};

// Unknown keys, duplicate keys, bad values and missing n_pairs are errors.
RunConfig parse_run_config(std::istream& in, const std::string& source = "<config>");
RunConfig load_run_config(const std::string& path);

// Command-line overrides, applied after parsing.  half_length and coupling
// keep following N when the file left them implicit.
struct ConfigOverrides {
    std::optional<int> n_pairs;
    std::optional<double> gamma;
    std::optional<double> t_end;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> mode;
    std::optional<std::string> output_dir;
    std::optional<double> root_tolerance;
};

RunConfig apply_overrides(const std::string& text, const ConfigOverrides& o, const std::string& source);

// key = value lines, each prefixed by `prefix`, doubles in %.17g.
void write_run_config(std::ostream& out, const RunConfig& cfg, const std::string& prefix = "");

// %.17g
std::string format_double(double x);

} // namespace ewald1d

#endif // EWALD1D_CONFIG_HPP
