#include "pairedfd/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <optional>
#include <ostream>
#include <thread>

#include "pairedfd/error.hpp"
#include "pairedfd/format.hpp"
#include "pairedfd/fpca.hpp"
#include "pairedfd/ranks.hpp"
#include "pairedfd/summaries.hpp"

namespace pairedfd {

std::string to_string(Method m) {
    switch (m) {
        case Method::Sdrt: return "sdrt";
        case Method::FstInt: return "fst-int";
        case Method::FstSuff: return "fst-suff";
    }
    return "?";
}

Method parse_method(const std::string& text) {
    if (text == "sdrt") return Method::Sdrt;
    if (text == "fst-int") return Method::FstInt;
    if (text == "fst-suff") return Method::FstSuff;
    throw ManifestError("unknown method '" + text + "' (expected sdrt, fst-int or fst-suff)");
}

TestReport apply_method(const DifferenceSample& d, Method method, Alternative alt) {
    TestReport report;
    switch (method) {
        case Method::Sdrt: report = signed_rank_test(t_sdrt(signed_rank_field(d)), alt); break;
        case Method::FstInt: report = sign_test(t_integral(d), alt); break;
        case Method::FstSuff: report = sign_test(t_sign_suff(d), alt); break;
    }
    report.statistic_name = to_string(method) + ":" + report.statistic_name;
    report.difference_zero_fraction = d.zero_fraction();
    return report;
}

DifferenceSample prepare_differences(const PairedSample& paired, PreprocessKind kind, double pve,
                                     std::optional<double> bandwidth) {
    if (kind == PreprocessKind::None) return difference(paired);
    const double h = bandwidth.value_or(default_bandwidth(paired.grid()));
    return difference(preprocess_paired(paired, pve, h));
}

PairedSample replay_replicate(const SimConfig& config, std::size_t replicate) {
    RandomStream rng(config.seed, replicate);
    return generate_dataset(rng, config);
}

std::vector<CellResult> run_cells(const SimConfig& config, std::span<const Method> methods,
                                  double alpha, unsigned threads) {
    config.validate();
    if (!(alpha > 0.0 && alpha <= 1.0)) throw SizeError("alpha must lie in (0, 1]");
    if (methods.empty()) throw SizeError("run_cells needs at least one method");

    const DatasetGenerator generator(config);
    const std::size_t reps = config.replicates;
    const std::size_t m = methods.size();

    std::atomic<std::size_t> next{0};
    std::mutex failure_mu;
    std::optional<std::pair<std::size_t, std::string>> failure;
    std::vector<std::vector<std::size_t>> tallies(std::max(1u, threads), std::vector<std::size_t>(m, 0));

    auto worker = [&](std::size_t slot) {
        for (std::size_t r = next++; r < reps; r = next++) {
            try {
                RandomStream rng(config.seed, r);
                const PairedSample data = generator.generate(rng);
                const DifferenceSample d =
                    prepare_differences(data, config.preprocess, config.pve, config.bandwidth);
                for (std::size_t j = 0; j < m; ++j) {
                    double p = 1.0;
                    try {
                        p = apply_method(d, methods[j]).p_value;
                    } catch (const AllZeroScores&) {
                        p = 1.0;  // no evidence either way
                    }
                    if (p <= alpha) ++tallies[slot][j];
                }
            } catch (const Error& e) {
                std::lock_guard lock(failure_mu);
                if (!failure || r < failure->first) failure.emplace(r, e.what());
            }
        }
    };

    if (threads <= 1) {
        worker(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    }

    if (failure) {
        throw ReplicateError("replicate " + std::to_string(failure->first) + " (seed " +
                                 std::to_string(config.seed) + ") failed: " + failure->second,
                             failure->first, config.seed);
    }

    std::vector<CellResult> results;
    results.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
        CellResult cell;
        cell.config = config;
        cell.method = methods[j];
        cell.alpha = alpha;
        cell.replicates = reps;
        for (const auto& t : tallies) cell.rejections += t[j];
        cell.rate = static_cast<double>(cell.rejections) / static_cast<double>(reps);
        cell.mc_stderr = std::sqrt(cell.rate * (1.0 - cell.rate) / static_cast<double>(reps));
        results.push_back(cell);
    }
    return results;
}

CellResult run_cell(const SimConfig& config, Method method, double alpha, unsigned threads) {
    const Method one[] = {method};
    return run_cells(config, one, alpha, threads).front();
}

std::vector<CellResult> run_power_sweep(const SimConfig& base, std::span<const Method> methods,
                                        std::span<const double> xi_values, double alpha,
                                        unsigned threads) {
    if (xi_values.empty()) throw SizeError("power sweep needs at least one xi value");
    if (!std::is_sorted(xi_values.begin(), xi_values.end())) {
        throw SizeError("power sweep xi values must be nondecreasing");
    }
    std::vector<CellResult> out;
    out.reserve(xi_values.size() * methods.size());
    for (double xi : xi_values) {
        SimConfig cfg = base;
        cfg.xi = xi;
        auto cells = run_cells(cfg, methods, alpha, threads);
        out.insert(out.end(), cells.begin(), cells.end());
    }
    return out;
}

void write_cell_table(std::ostream& out, std::span<const CellResult> results, char delimiter) {
    const char d = delimiter;
    out << "method" << d << "n" << d << "S" << d << "rho" << d << "dist" << d << "delta" << d
        << "xi" << d << "alpha" << d << "replicates" << d << "rejections" << d << "rate" << d
        << "stderr" << d << "seed" << '\n';
    for (const auto& c : results) {
        out << to_string(c.method) << d << c.config.n << d << c.config.grid_size << d
            << format_real(c.config.rho) << d << to_string(c.config.score_dist) << d
            << to_string(c.config.delta) << d << format_real(c.config.xi) << d
            << format_real(c.alpha) << d << c.replicates << d << c.rejections << d
            << format_real(c.rate) << d << format_real(c.mc_stderr) << d << c.config.seed << '\n';
    }
}

}  // namespace pairedfd
