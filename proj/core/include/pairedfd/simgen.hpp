#pragma once

// Paired-curve generator for calibration and power studies: correlated
// Karhunen-Loeve pairs with Gaussian or t2 scores, stationary AR(1)
// measurement error, a shift added to condition 1, and optional MCAR cells.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pairedfd/fda.hpp"
#include "pairedfd/random.hpp"

namespace pairedfd {

enum class ScoreDist { Gaussian, T2 };
enum class DeltaShape { Null, Linear, Parabolic };
/// FaceLike and ScLike run the same smoothed-covariance FPCA; they are kept
/// apart so manifests can say which study a cell belongs to. None skips it.
enum class PreprocessKind { FaceLike, ScLike, None };

struct SimConfig {
    std::size_t n = 30;
    std::size_t grid_size = 40;  // uniform on [0, 1]
    double rho = 0.5;
    ScoreDist score_dist = ScoreDist::Gaussian;
    std::size_t truncation = 1000;  // K
    DeltaShape delta = DeltaShape::Null;
    double xi = 0.0;
    double ar_corr = 0.5;
    double ar_var = 1.0;
    std::size_t replicates = 2000;
    std::uint64_t seed = 20250101;
    PreprocessKind preprocess = PreprocessKind::FaceLike;
    double missing_frac = 0.0;
    double pve = 0.99;
    std::optional<double> bandwidth;  // default: two grid spacings

    /// Throws ManifestError naming the offending field.
    void validate() const;

    friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

std::pair<double, double> score_pair(RandomStream& rng, double rho, ScoreDist dist);

std::vector<double> ar1_noise(RandomStream& rng, std::size_t size, double corr, double var);

std::vector<double> delta_curve(DeltaShape kind, double xi, const Grid& grid);

/// Truncated sine expansion sqrt(2) [(k-1/2) pi]^-1 sin[(k-1/2) pi s] on a grid.
class KlBasis {
public:
    KlBasis(const Grid& grid, std::size_t truncation);

    std::size_t truncation() const noexcept { return table_.rows(); }
    std::size_t points() const noexcept { return table_.cols(); }
    const Matrix& table() const noexcept { return table_; }

    /// sum_k scores[k] * basis_k(s) on the grid.
    std::vector<double> evaluate(std::span<const double> scores) const;

    /// One correlated pair of curves.
    std::pair<std::vector<double>, std::vector<double>> draw_pair(RandomStream& rng, double rho,
                                                                  ScoreDist dist) const;

private:
    Matrix table_;
};

std::pair<std::vector<double>, std::vector<double>> kl_pair(RandomStream& rng,
                                                            const SimConfig& config);

/// Reusable generator; holds the basis table and shift for one configuration.
class DatasetGenerator {
public:
    explicit DatasetGenerator(SimConfig config);

    const SimConfig& config() const noexcept { return config_; }
    const Grid& grid() const noexcept { return grid_; }

    PairedSample generate(RandomStream& rng) const;

private:
    SimConfig config_;
    Grid grid_;
    KlBasis basis_;
    std::vector<double> shift_;
};

PairedSample generate_dataset(RandomStream& rng, const SimConfig& config);

std::string to_string(ScoreDist d);
std::string to_string(DeltaShape d);
std::string to_string(PreprocessKind p);
ScoreDist parse_score_dist(const std::string& text);
DeltaShape parse_delta_shape(const std::string& text);
PreprocessKind parse_preprocess(const std::string& text);

}  // namespace pairedfd
