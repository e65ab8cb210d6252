#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "ewald1d/config.hpp"
#include "ewald1d/harness.hpp"
#include "ewald1d/snapshot.hpp"
#include "ewald1d/validation.hpp"

using namespace ewald1d;

namespace {

RunConfig parse(const std::string& text) {
    std::istringstream in(text);
    return parse_run_config(in, "test.cfg");
}

int error_line(const std::string& text) {
    try {
        parse(text);
    } catch (const ConfigError& e) {
        return e.line;
    }
    return -1;
}

} // namespace

TEST_CASE("config defaults follow N") {
    const RunConfig c = parse("n_pairs = 8\n");
    CHECK(c.domain.n_pairs == 8);
    CHECK(c.domain.half_length == 8.0);
    CHECK(c.domain.coupling == 1.0);
    CHECK(c.domain.gamma == 0.0);
    CHECK(c.mode == BoundaryMode::periodic);
    CHECK(c.waterbag.count == 16);
    CHECK(c.waterbag.placement == Placement::lattice);
    CHECK(c.root_tolerance == 1e-12);
}

TEST_CASE("config full file with comments") {
    const RunConfig c = parse("# run\n"
                              "n_pairs = 4   # N\n"
                              "\n"
                              "half_length = 2.5\n"
                              "gamma=0.25\n"
                              "mode = symmetric\n"
                              "placement = uniform\n"
                              "v0 = 0.75\n"
                              "seed = 99\n"
                              "zero_mean_velocity = false\n"
                              "t_end = 3\n"
                              "snapshot_interval = 0.5\n"
                              "output_dir = runs/a\n"
                              "histogram_bins = 5\n"
                              "cluster_threshold = 0.01\n");
    CHECK(c.domain.half_length == 2.5);
    CHECK(c.domain.gamma == 0.25);
    CHECK(c.mode == BoundaryMode::symmetric);
    CHECK(c.waterbag.placement == Placement::uniform);
    CHECK(c.waterbag.v0 == 0.75);
    CHECK(c.waterbag.seed == 99);
    CHECK_FALSE(c.waterbag.zero_mean_velocity);
    CHECK(c.output_dir == "runs/a");
    CHECK(c.experiment_options().histogram_bins == 5);
    CHECK(c.schedule() == std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0});
}

TEST_CASE("config errors carry line numbers") {
    CHECK(error_line("n_pairs = 4\nbogus = 1\n") == 2);
    CHECK(error_line("n_pairs = 4\n\nn_pairs = 5\n") == 3);
    CHECK(error_line("n_pairs = 4\ngamma = fast\n") == 2);
    CHECK(error_line("n_pairs = 4\nmode = helical\n") == 2);
    CHECK(error_line("n_pairs = 4\njust text\n") == 2);
    CHECK(error_line("n_pairs = 4\ngamma = -1\n") >= 0);
    CHECK(error_line("gamma = 0\n") >= 0);
    CHECK(error_line("n_pairs = 4x\n") == 1);
    try {
        parse("n_pairs = 4\nbogus = 1\n");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).rfind("test.cfg:2:", 0) == 0);
    }
}

TEST_CASE("schedule adds t_end off the grid") {
    RunConfig c = parse("n_pairs = 2\nt_end = 1.25\nsnapshot_interval = 0.5\n");
    CHECK(c.schedule() == std::vector<double>{0.0, 0.5, 1.0, 1.25});
    c.t_end = 0.0;
    CHECK(c.schedule() == std::vector<double>{0.0});
}

TEST_CASE("command-line overrides") {
    ConfigOverrides o;
    o.n_pairs = 16;
    o.gamma = 0.5;
    o.seed = 7;
    o.mode = "symmetric";
    o.output_dir = "elsewhere";
    const RunConfig c = apply_overrides("n_pairs = 4\nt_end = 2\n", o, "x.cfg");
    CHECK(c.domain.n_pairs == 16);
    CHECK(c.domain.half_length == 16.0);
    CHECK(c.waterbag.count == 32);
    CHECK(c.domain.gamma == 0.5);
    CHECK(c.waterbag.seed == 7);
    CHECK(c.mode == BoundaryMode::symmetric);
    CHECK(c.output_dir == "elsewhere");
    CHECK(c.t_end == 2.0);

    ConfigOverrides keep;
    keep.n_pairs = 16;
    CHECK(apply_overrides("n_pairs = 4\nhalf_length = 3\n", keep, "x.cfg").domain.half_length == 3.0);
    ConfigOverrides bad;
    bad.mode = "nope";
    CHECK_THROWS(apply_overrides("n_pairs = 4\n", bad, "x.cfg"));
}

TEST_CASE("config round trip through its writer") {
    const RunConfig c = parse("n_pairs = 3\ngamma = 0.7071067811865476\nv0 = 0.1\nplacement = uniform\n");
    std::ostringstream out;
    write_run_config(out, c);
    CHECK(parse(out.str()) == c);
    CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("snapshot round trip") {
    RunConfig c = parse("n_pairs = 4\ngamma = 0.3\nplacement = uniform\nseed = 5\n");
    const auto frames = run_experiment(c.mode, c.waterbag, c.domain, std::vector<double>{0.0, 1.7});
    const Snapshot s = snapshot_from_frame(frames.back(), c);
    CHECK(s.rows.size() == 8);
    std::stringstream buf;
    write_snapshot(buf, s);
    const Snapshot back = parse_snapshot(buf, "snap");
    CHECK(back == s);

    std::string text = buf.str();
    const auto cut = text.rfind('\n', text.size() - 2);
    std::istringstream truncated(text.substr(0, cut + 1));
    CHECK_THROWS_AS(parse_snapshot(truncated), ConfigError);
    std::istringstream garbage("# ewald1d snapshot\n# format_version = 9\n");
    CHECK_THROWS_AS(parse_snapshot(garbage), ConfigError);
}

TEST_CASE("run writer output") {
    const auto dir = std::filesystem::temp_directory_path() / "ewald1d_unit_writer";
    std::filesystem::remove_all(dir);
    RunConfig c = parse("n_pairs = 2\nt_end = 1\nsnapshot_interval = 0.5\nv0 = 0.3\n");
    c.output_dir = dir.string();
    {
        RunWriter w(c);
        const auto sink = [&](const DiagnosticsFrame& f) { w.on_frame(f); };
        run_experiment(c.mode, c.waterbag, c.domain, c.schedule(), c.experiment_options(), sink);
        w.finish();
        CHECK(w.frames_written() == 3);
    }
    CHECK(std::filesystem::exists(dir / "snapshot_00000.csv"));
    CHECK(std::filesystem::exists(dir / "snapshot_00002.csv"));
    std::ifstream diag(dir / "diagnostics.csv");
    std::string line;
    int rows = 0;
    std::getline(diag, line);
    CHECK(line == "time,xc_wrapped,xc_cover,vc,energy,clusters,event_count");
    while (std::getline(diag, line)) ++rows;
    CHECK(rows == 3);
    std::ifstream man(dir / "manifest.txt");
    std::stringstream ms;
    ms << man.rdbuf();
    CHECK(ms.str().find("status = complete") != std::string::npos);
    std::ifstream snap(dir / "snapshot_00001.csv");
    const Snapshot s = parse_snapshot(snap);
    CHECK(s.time == 0.5);
    std::filesystem::remove_all(dir);
}

TEST_CASE("validation report JSON") {
    ValidationReport r;
    r.tier = "fast";
    r.checks.push_back({"a", 1.5e-13, 1e-12, true});
    r.checks.push_back({"b", std::numeric_limits<double>::quiet_NaN(), 1.0, false});
    const ValidationReport back = report_from_json(report_to_json(r));
    CHECK(back.tier == "fast");
    REQUIRE(back.checks.size() == 2);
    CHECK(back.checks[0] == r.checks[0]);
    CHECK(std::isnan(back.checks[1].measured));
    CHECK_FALSE(back.passed());
    CHECK_THROWS_AS(report_from_json("{\"tier\": 3}"), std::invalid_argument);
    CHECK_THROWS_AS(report_from_json("not json"), std::invalid_argument);
}

TEST_CASE("parsers for enums") {
    CHECK(parse_placement("uniform") == Placement::uniform);
    CHECK(parse_boundary_mode("periodic") == BoundaryMode::periodic);
    CHECK(std::string(to_string(BoundaryMode::symmetric)) == "symmetric");
    CHECK_THROWS_AS(parse_placement("grid"), std::invalid_argument);
}
