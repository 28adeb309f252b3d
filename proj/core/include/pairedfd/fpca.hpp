#pragma once

// Smoothed-covariance functional principal components: fitting on a pooled
// sample, BLUP score estimation for partially observed curves, and
// reconstruction.

#include <vector>

#include "pairedfd/fda.hpp"

namespace pairedfd {

struct FpcaModel {
    Grid grid;
    std::vector<double> mean_curve;
    Matrix eigenfunctions;  // K_ret x S, orthonormal under the trapezoid inner product
    std::vector<double> eigenvalues;  // K_ret, nonincreasing, positive
    double noise_variance = 0.0;
    double pve = 0.99;
    double total_variance = 0.0;  // sum of the nonnegative eigenvalues before truncation

    std::size_t components() const noexcept { return eigenvalues.size(); }
};

inline constexpr double kDefaultPve = 0.99;
inline constexpr double kNoiseFloor = 1e-10;

/// Two grid spacings.
double default_bandwidth(const Grid& grid);

/// Fits one model on `pooled`. A bandwidth of 0 disables covariance smoothing.
FpcaModel fit_fpca(const FunctionalSample& pooled, double pve, double bandwidth);

/// Replaces every curve by its reconstruction from BLUP scores; the output has
/// no missing cells.
FunctionalSample smooth_sample(const FpcaModel& model, const FunctionalSample& raw);

/// Fits one model on both conditions pooled and smooths each condition with it.
/// The fit is invariant to swapping conditions within any subject.
PairedSample preprocess_paired(const PairedSample& paired, double pve, double bandwidth);

}  // namespace pairedfd
