#include "pairedfd/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pairedfd/error.hpp"

namespace pairedfd {

void SimConfig::validate() const {
    auto fail = [](const std::string& field, const std::string& why) {
        throw ManifestError("invalid " + field + ": " + why);
    };
    if (n < 2) fail("n", "need at least 2 subjects");
    if (grid_size < 2) fail("S", "need at least 2 grid points");
    if (!std::isfinite(rho) || std::fabs(rho) >= 1.0) fail("rho", "must lie in (-1, 1)");
    if (truncation < 1) fail("K", "must be at least 1");
    if (!std::isfinite(xi) || xi < 0.0) fail("xi", "must be finite and nonnegative");
    if (!std::isfinite(ar_corr) || std::fabs(ar_corr) >= 1.0) fail("ar_corr", "must lie in (-1, 1)");
    if (!std::isfinite(ar_var) || ar_var <= 0.0) fail("ar_var", "must be positive");
    if (replicates < 1) fail("replicates", "must be at least 1");
    if (!std::isfinite(missing_frac) || missing_frac < 0.0 || missing_frac >= 1.0) {
        fail("missing_frac", "must lie in [0, 1)");
    }
    if (!(pve > 0.0 && pve <= 1.0)) fail("pve", "must lie in (0, 1]");
    if (bandwidth && (!std::isfinite(*bandwidth) || *bandwidth < 0.0)) {
        fail("bandwidth", "must be finite and nonnegative");
    }
    if (missing_frac > 0.0 && preprocess == PreprocessKind::None) {
        fail("preprocess", "missing cells require FPCA preprocessing");
    }
}

std::pair<double, double> score_pair(RandomStream& rng, double rho, ScoreDist dist) {
    const double u0 = rng.normal();
    const double u1 = rng.normal();
    // Cholesky factor of [[1, rho], [rho, 1]]
    double z0 = u0;
    double z1 = rho * u0 + std::sqrt(1.0 - rho * rho) * u1;
    if (dist == ScoreDist::T2) {
        const double scale = std::sqrt(rng.exponential());  // sqrt(chi2_2 / 2)
        z0 /= scale;
        z1 /= scale;
    }
    return {z0, z1};
}

std::vector<double> ar1_noise(RandomStream& rng, std::size_t size, double corr, double var) {
    std::vector<double> e(size);
    if (size == 0) return e;
    const double innovation_sd = std::sqrt(var * (1.0 - corr * corr));
    e[0] = std::sqrt(var) * rng.normal();
    for (std::size_t k = 1; k < size; ++k) e[k] = corr * e[k - 1] + innovation_sd * rng.normal();
    return e;
}

std::vector<double> delta_curve(DeltaShape kind, double xi, const Grid& grid) {
    std::vector<double> out(grid.size(), 0.0);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double s = grid[k];
        switch (kind) {
            case DeltaShape::Null: break;
            case DeltaShape::Linear: out[k] = xi * s; break;
            case DeltaShape::Parabolic: out[k] = xi * 4.0 * s * (1.0 - s); break;
        }
    }
    return out;
}

KlBasis::KlBasis(const Grid& grid, std::size_t truncation) : table_(truncation, grid.size()) {
    for (std::size_t k = 0; k < truncation; ++k) {
        const double freq = (static_cast<double>(k) + 0.5) * std::numbers::pi;
        const double coef = std::numbers::sqrt2 / freq;
        for (std::size_t j = 0; j < grid.size(); ++j) table_(k, j) = coef * std::sin(freq * grid[j]);
    }
}

std::vector<double> KlBasis::evaluate(std::span<const double> scores) const {
    if (scores.size() != truncation()) throw DimensionError("KL evaluation needs one score per term");
    std::vector<double> x(points(), 0.0);
    for (std::size_t k = 0; k < truncation(); ++k) {
        const auto phi = table_.row(k);
        for (std::size_t j = 0; j < points(); ++j) x[j] += scores[k] * phi[j];
    }
    return x;
}

std::pair<std::vector<double>, std::vector<double>> KlBasis::draw_pair(RandomStream& rng,
                                                                       double rho,
                                                                       ScoreDist dist) const {
    const std::size_t s = points();
    std::vector<double> x0(s, 0.0);
    std::vector<double> x1(s, 0.0);
    for (std::size_t k = 0; k < truncation(); ++k) {
        const auto [z0, z1] = score_pair(rng, rho, dist);
        const auto phi = table_.row(k);
        for (std::size_t j = 0; j < s; ++j) {
            x0[j] += z0 * phi[j];
            x1[j] += z1 * phi[j];
        }
    }
    return {std::move(x0), std::move(x1)};
}

std::pair<std::vector<double>, std::vector<double>> kl_pair(RandomStream& rng,
                                                            const SimConfig& config) {
    const KlBasis basis(Grid::uniform(config.grid_size), config.truncation);
    return basis.draw_pair(rng, config.rho, config.score_dist);
}

DatasetGenerator::DatasetGenerator(SimConfig config)
    : config_(std::move(config)),
      grid_(Grid::uniform(config_.grid_size)),
      basis_(grid_, config_.truncation),
      shift_(delta_curve(config_.delta, config_.xi, grid_)) {
    config_.validate();
}

PairedSample DatasetGenerator::generate(RandomStream& rng) const {
    const std::size_t n = config_.n;
    const std::size_t s = grid_.size();
    std::vector<std::vector<Cell>> y0(n, std::vector<Cell>(s));
    std::vector<std::vector<Cell>> y1(n, std::vector<Cell>(s));

    for (std::size_t i = 0; i < n; ++i) {
        const auto [x0, x1] = basis_.draw_pair(rng, config_.rho, config_.score_dist);
        const auto e0 = ar1_noise(rng, s, config_.ar_corr, config_.ar_var);
        const auto e1 = ar1_noise(rng, s, config_.ar_corr, config_.ar_var);
        for (std::size_t k = 0; k < s; ++k) {
            y0[i][k] = x0[k] + e0[k];
            y1[i][k] = shift_[k] + x1[k] + e1[k];
        }
    }

    if (config_.missing_frac > 0.0) {
        for (auto* cond : {&y0, &y1}) {
            for (auto& row : *cond) {
                for (auto& cell : row) {
                    if (rng.uniform() < config_.missing_frac) cell.reset();
                }
            }
        }
    }

    return PairedSample(FunctionalSample(grid_, std::move(y0)), FunctionalSample(grid_, std::move(y1)));
}

PairedSample generate_dataset(RandomStream& rng, const SimConfig& config) {
    return DatasetGenerator(config).generate(rng);
}

std::string to_string(ScoreDist d) { return d == ScoreDist::Gaussian ? "gaussian" : "t2"; }

std::string to_string(DeltaShape d) {
    switch (d) {
        case DeltaShape::Null: return "null";
        case DeltaShape::Linear: return "linear";
        case DeltaShape::Parabolic: return "parabolic";
    }
    return "?";
}

std::string to_string(PreprocessKind p) {
    switch (p) {
        case PreprocessKind::FaceLike: return "face";
        case PreprocessKind::ScLike: return "sc";
        case PreprocessKind::None: return "none";
    }
    return "?";
}

ScoreDist parse_score_dist(const std::string& text) {
    if (text == "gaussian" || text == "G" || text == "normal") return ScoreDist::Gaussian;
    if (text == "t2" || text == "T") return ScoreDist::T2;
    throw ManifestError("unknown score_dist '" + text + "' (expected gaussian or t2)");
}

DeltaShape parse_delta_shape(const std::string& text) {
    if (text == "null" || text == "none") return DeltaShape::Null;
    if (text == "linear") return DeltaShape::Linear;
    if (text == "parabolic") return DeltaShape::Parabolic;
    throw ManifestError("unknown delta '" + text + "' (expected null, linear or parabolic)");
}

PreprocessKind parse_preprocess(const std::string& text) {
    if (text == "face") return PreprocessKind::FaceLike;
    if (text == "sc") return PreprocessKind::ScLike;
    if (text == "none") return PreprocessKind::None;
    throw ManifestError("unknown preprocess '" + text + "' (expected face, sc or none)");
}

}  // namespace pairedfd
