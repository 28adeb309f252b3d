#pragma once

// Implementations behind the `pairedfd` command-line subcommands. They write
// to caller-supplied streams so they can be driven from tests.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pairedfd/harness.hpp"
#include "pairedfd/manifest.hpp"
#include "pairedfd/nulltests.hpp"

namespace pairedfd {

struct TestOptions {
    std::string method = "all";  // sdrt, fst-int, fst-suff or all
    double pve = 0.99;
    std::optional<double> bandwidth;  // default: two grid spacings
    bool no_preprocess = false;
    Alternative alternative = Alternative::TwoSided;

};

struct MethodOutcome {
    Method method = Method::Sdrt;
    std::optional<TestReport> report;
    std::string error;  // set when the test could not be computed
};

/// Preprocesses (unless disabled), differences and tests. Methods come back
/// in the fixed order sdrt, fst-int, fst-suff regardless of how they were requested.
std::vector<MethodOutcome> run_tests(const PairedSample& paired, const TestOptions& options);

void render_outcomes(std::ostream& out, const std::vector<MethodOutcome>& outcomes);

/// Returns the process exit code: 0 when every requested test was computed.
int cmd_test(const std::filesystem::path& file, const TestOptions& options, std::ostream& out);

/// Runs every manifest cell and writes the result table.
int cmd_simulate(const Manifest& manifest, unsigned threads, std::ostream& out);

/// Writes the FPCA-smoothed paired sample.
int cmd_smooth(const std::filesystem::path& file, double pve, std::optional<double> bandwidth,
               std::ostream& out);

/// Writes the dataset of one replicate of a single-configuration manifest.
int cmd_generate(const SimConfig& config, std::size_t replicate, std::ostream& out);

}  // namespace pairedfd
