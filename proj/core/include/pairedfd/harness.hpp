#pragma once

// Monte Carlo runner: rejection rates for simulation cells and power sweeps.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pairedfd/error.hpp"
#include "pairedfd/nulltests.hpp"
#include "pairedfd/simgen.hpp"

namespace pairedfd {

enum class Method { Sdrt, FstInt, FstSuff };

inline constexpr Method kAllMethods[] = {Method::Sdrt, Method::FstInt, Method::FstSuff};

std::string to_string(Method m);
Method parse_method(const std::string& text);

/// Summary for `method`, then its null test.
TestReport apply_method(const DifferenceSample& d, Method method,
                        Alternative alt = Alternative::TwoSided);

/// Preprocesses (unless kind is None) and differences one paired sample.
DifferenceSample prepare_differences(const PairedSample& paired, PreprocessKind kind, double pve,
                                     std::optional<double> bandwidth);

struct CellResult {
    SimConfig config;
    Method method = Method::Sdrt;
    double alpha = 0.05;
    std::size_t rejections = 0;
    std::size_t replicates = 0;
    double rate = 0.0;
    double mc_stderr = 0.0;
};

/// Raised when a replicate fails; carries enough to replay it alone.
class ReplicateError : public Error {
public:
    ReplicateError(const std::string& what, std::size_t replicate, std::uint64_t seed)
        : Error(what), replicate_(replicate), seed_(seed) {}

    std::size_t replicate() const noexcept { return replicate_; }
    std::uint64_t seed() const noexcept { return seed_; }

private:
    std::size_t replicate_;
    std::uint64_t seed_;
};

/// Runs every method on the same replicate datasets. Replicate r draws from
/// stream (config.seed, r), so counts do not depend on `threads`.
/// A replicate rejects when p <= alpha.
std::vector<CellResult> run_cells(const SimConfig& config, std::span<const Method> methods,
                                  double alpha, unsigned threads = 1);

CellResult run_cell(const SimConfig& config, Method method, double alpha, unsigned threads = 1);

/// One result per (xi, method), xi-major. Every xi reuses the same replicate
/// streams, so the curves share their Monte Carlo noise.
std::vector<CellResult> run_power_sweep(const SimConfig& base, std::span<const Method> methods,
                                        std::span<const double> xi_values, double alpha,
                                        unsigned threads = 1);

/// Replays one replicate: the dataset that run_cells used for index r.
PairedSample replay_replicate(const SimConfig& config, std::size_t replicate);

void write_cell_table(std::ostream& out, std::span<const CellResult> results,
                      char delimiter = ',');

}  // namespace pairedfd
