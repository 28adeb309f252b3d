// pairedfd: sign and signed doubly ranked tests for paired curves.
//
//   pairedfd test --file data.csv --method all
//   pairedfd simulate --manifest cells.manifest --threads 4 --out results.csv
//   pairedfd smooth --file data.csv > smoothed.csv
//   pairedfd generate --manifest one_cell.manifest --replicate 17 > replicate17.csv

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pairedfd/commands.hpp"
#include "pairedfd/error.hpp"

namespace {

std::optional<double> optional_bandwidth(double value) {
    if (value < 0.0) return std::nullopt;
    return value;
}

int with_output(const std::string& path, auto&& body) {
    if (path.empty() || path == "-") return body(std::cout);
    std::ofstream out(path);
    if (!out) throw pairedfd::SchemaError("cannot write '" + path + "'");
    return body(out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonparametric tests for paired functional data"};
    app.require_subcommand(1);

    pairedfd::TestOptions test_opts;
    std::string test_file;
    std::string alternative = "two-sided";
    double test_bandwidth = -1.0;
    auto* test = app.add_subcommand("test", "Analyse a paired CSV file");
    test->add_option("--file", test_file, "Paired CSV (subject,condition,s_...)")->required();
    test->add_option("--method", test_opts.method, "sdrt, fst-int, fst-suff or all")
        ->check(CLI::IsMember({"sdrt", "fst-int", "fst-suff", "all"}));
    test->add_option("--pve", test_opts.pve, "Proportion of variance retained by FPCA")
        ->check(CLI::Range(0.0, 1.0));
    test->add_option("--bandwidth", test_bandwidth,
                     "Covariance smoothing bandwidth in grid units (0 = none; default 2 spacings)");
    test->add_flag("--no-preprocess", test_opts.no_preprocess, "Test the raw curves");
    test->add_option("--alternative", alternative, "two-sided, less or greater")
        ->check(CLI::IsMember({"two-sided", "less", "greater"}));

    std::string manifest_file;
    std::string sim_out;
    unsigned threads = 1;
    auto* simulate = app.add_subcommand("simulate", "Run a grid of simulation cells");
    simulate->add_option("--manifest", manifest_file, "key = value manifest")->required();
    simulate->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    simulate->add_option("--out", sim_out, "Output table (default stdout)");

    std::string smooth_file;
    double smooth_pve = 0.99;
    double smooth_bandwidth = -1.0;
    auto* smooth = app.add_subcommand("smooth", "Write FPCA-smoothed curves as paired CSV");
    smooth->add_option("--file", smooth_file, "Paired CSV input")->required();
    smooth->add_option("--pve", smooth_pve, "Proportion of variance retained")
        ->check(CLI::Range(0.0, 1.0));
    smooth->add_option("--bandwidth", smooth_bandwidth, "Covariance smoothing bandwidth");

    std::string gen_manifest;
    std::size_t replicate = 0;
    std::string gen_out;
    auto* generate = app.add_subcommand("generate", "Write one simulated replicate as paired CSV");
    generate->add_option("--manifest", gen_manifest, "Single-cell manifest")->required();
    generate->add_option("--replicate", replicate, "Replicate index");
    generate->add_option("--out", gen_out, "Output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*test) {
            test_opts.alternative = pairedfd::parse_alternative(alternative);
            test_opts.bandwidth = optional_bandwidth(test_bandwidth);
            return pairedfd::cmd_test(test_file, test_opts, std::cout);
        }
        if (*simulate) {
            std::ifstream in(manifest_file);
            if (!in) throw pairedfd::ManifestError("cannot open '" + manifest_file + "'");
            const auto manifest = pairedfd::parse_manifest(in);
            return with_output(sim_out, [&](std::ostream& out) {
                return pairedfd::cmd_simulate(manifest, threads, out);
            });
        }
        if (*smooth) {
            return pairedfd::cmd_smooth(smooth_file, smooth_pve, optional_bandwidth(smooth_bandwidth),
                                        std::cout);
        }
        if (*generate) {
            std::ifstream in(gen_manifest);
            if (!in) throw pairedfd::ManifestError("cannot open '" + gen_manifest + "'");
            const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
            const auto config = pairedfd::parse_sim_config(text);
            return with_output(gen_out, [&](std::ostream& out) {
                return pairedfd::cmd_generate(config, replicate, out);
            });
        }
    } catch (const pairedfd::Error& e) {
        std::cerr << "pairedfd: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
