#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace semirec {

/// Everything a single command-line run needs; echoed back inside every report.
struct RunConfig {
    std::string command;
    std::string series_kind;
    std::string example;
    std::vector<std::string> map_files;
    std::size_t generator = 1;
    std::string subject = "map";
    std::vector<std::string> points;
    std::size_t grid = 0;
    std::string eps = "1/64";
    std::size_t horizon = 100;
    std::size_t bins = 16;
    std::string probs;
    std::string mode = "exact";
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples;
    std::string format = "json";
    std::string measure = "lebesgue";
    std::string set;
    std::string indices;
    std::string words;
    std::size_t exhaustive = 0;
    std::string multimap;
    std::size_t cover_cells = 0;
    double tol = 1e-12;
    std::string r_tol = "1/65536";
    std::size_t bit_cap = 0;
    int depth = 40;
    std::string slope = "1";
    std::size_t weak_grid = 128;
    bool no_weak = false;
    std::string threshold = "1/1000";
    std::size_t r_min = 2;
    std::string plot_file;
    std::string matrix_file;
    bool run_manifest = false;
};

/// Parses argv into `cfg`. Returns an exit code when the run should stop (help or bad usage).
std::optional<int> parse_run_config(int argc, const char* const* argv, RunConfig& cfg, std::ostream& out,
                                    std::ostream& err);

/// Executes the configured command. Exit codes: 0 ok, 2 invalid configuration, 3 resource limit, 1 other.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace semirec
