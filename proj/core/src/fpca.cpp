#include "pairedfd/fpca.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "pairedfd/eigen_jacobi.hpp"
#include "pairedfd/error.hpp"

namespace pairedfd {

namespace {

constexpr double kKernelCutoff = 3.0;  // Gaussian kernel truncated at 3 bandwidths

struct RawMoments {
    std::vector<double> mean;
    Matrix cov;
    std::vector<std::size_t> pair_count;  // S x S, subjects observing both points

    std::size_t count(std::size_t j, std::size_t l, std::size_t s) const {
        return pair_count[j * s + l];
    }
};

// Rows are consumed in groups whose contributions are summed inside the group
// before being accumulated. With groups of two (one subject, both conditions)
// the moments do not depend on which condition is which, bit for bit.
RawMoments raw_moments(const std::vector<std::vector<std::span<const Cell>>>& groups,
                       std::size_t s) {
    std::size_t rows = 0;
    for (const auto& g : groups) rows += g.size();
    if (rows < 3) {
        throw DegenerateSample("FPCA needs at least 3 pooled curves, got " + std::to_string(rows));
    }

    RawMoments m;
    m.mean.assign(s, 0.0);
    std::vector<std::size_t> observed(s, 0);
    for (const auto& g : groups) {
        for (std::size_t k = 0; k < s; ++k) {
            double part = 0.0;
            for (const auto& row : g) {
                if (row[k]) {
                    part += *row[k];
                    ++observed[k];
                }
            }
            m.mean[k] += part;
        }
    }
    for (std::size_t k = 0; k < s; ++k) {
        if (observed[k] < 2) {
            throw InsufficientCoverage("grid column " + std::to_string(k) + " has " +
                                       std::to_string(observed[k]) + " observed values (need 2)");
        }
        m.mean[k] /= static_cast<double>(observed[k]);
    }

    m.cov = Matrix(s, s);
    m.pair_count.assign(s * s, 0);
    std::vector<double> centred(s);
    std::vector<char> present(s);
    Matrix part(s, s);
    for (const auto& g : groups) {
        for (std::size_t j = 0; j < s; ++j) std::fill(part.row(j).begin(), part.row(j).end(), 0.0);
        for (const auto& row : g) {
            for (std::size_t k = 0; k < s; ++k) {
                present[k] = row[k].has_value();
                centred[k] = present[k] ? *row[k] - m.mean[k] : 0.0;
            }
            for (std::size_t j = 0; j < s; ++j) {
                if (!present[j]) continue;
                auto out = part.row(j);
                for (std::size_t l = j; l < s; ++l) {
                    if (!present[l]) continue;
                    out[l] += centred[j] * centred[l];
                    ++m.pair_count[j * s + l];
                }
            }
        }
        for (std::size_t j = 0; j < s; ++j) {
            for (std::size_t l = j; l < s; ++l) m.cov(j, l) += part(j, l);
        }
    }
    for (std::size_t j = 0; j < s; ++j) {
        for (std::size_t l = j; l < s; ++l) {
            const std::size_t c = m.pair_count[j * s + l];
            m.pair_count[l * s + j] = c;
            const double v = c >= 2 ? m.cov(j, l) / static_cast<double>(c - 1) : 0.0;
            m.cov(j, l) = v;
            m.cov(l, j) = v;
        }
    }
    return m;
}

// Local linear fit of the off-diagonal raw covariance around (sa, sb).
double local_linear_at(const RawMoments& raw, const Grid& grid, std::size_t a, std::size_t b,
                       double h) {
    const std::size_t s = grid.size();
    const auto pts = grid.points();
    const double reach = kKernelCutoff * h;
    const auto lo = [&](double c) {
        return static_cast<std::size_t>(std::lower_bound(pts.begin(), pts.end(), c - reach) - pts.begin());
    };
    const auto hi = [&](double c) {
        return static_cast<std::size_t>(std::upper_bound(pts.begin(), pts.end(), c + reach) - pts.begin());
    };
    const double sa = grid[a];
    const double sb = grid[b];
    const std::size_t j0 = lo(sa), j1 = hi(sa), l0 = lo(sb), l1 = hi(sb);

    // normal equations for beta0 + beta1 (s_j - sa) + beta2 (s_l - sb)
    std::array<double, 9> xtx{};
    std::array<double, 3> xty{};
    for (std::size_t j = j0; j < j1; ++j) {
        const double x = pts[j] - sa;
        const double kx = std::exp(-0.5 * (x / h) * (x / h));
        for (std::size_t l = l0; l < l1; ++l) {
            if (l == j || raw.count(j, l, s) < 2) continue;
            const double y = pts[l] - sb;
            const double wgt = kx * std::exp(-0.5 * (y / h) * (y / h));
            const std::array<double, 3> basis{1.0, x, y};
            for (int r = 0; r < 3; ++r) {
                for (int c = 0; c < 3; ++c) xtx[r * 3 + c] += wgt * basis[r] * basis[c];
                xty[r] += wgt * basis[r] * raw.cov(j, l);
            }
        }
    }
    if (!(xtx[0] > 0.0)) {
        throw InsufficientCoverage("no off-diagonal covariance support near grid points " +
                                   std::to_string(a) + ", " + std::to_string(b));
    }

    const auto& m = xtx;
    const double det = m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
                       m[2] * (m[3] * m[7] - m[4] * m[6]);
    const double scale = m[0] * m[4] * m[8];
    if (!(std::fabs(det) > 1e-10 * std::fabs(scale))) {
        return xty[0] / xtx[0];  // local constant fallback
    }
    // Cramer's rule for the intercept
    const double det0 = xty[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (xty[1] * m[8] - m[5] * xty[2]) +
                        m[2] * (xty[1] * m[7] - m[4] * xty[2]);
    return det0 / det;
}

// In-place Cholesky of a small SPD matrix; returns false if not positive definite.
bool cholesky(Matrix& m) {
    const std::size_t n = m.rows();
    for (std::size_t j = 0; j < n; ++j) {
        double d = m(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= m(j, k) * m(j, k);
        if (!(d > 0.0)) return false;
        m(j, j) = std::sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            double v = m(i, j);
            for (std::size_t k = 0; k < j; ++k) v -= m(i, k) * m(j, k);
            m(i, j) = v / m(j, j);
        }
    }
    return true;
}

void cholesky_solve(const Matrix& l, std::vector<double>& x) {
    const std::size_t n = l.rows();
    for (std::size_t i = 0; i < n; ++i) {
        double v = x[i];
        for (std::size_t k = 0; k < i; ++k) v -= l(i, k) * x[k];
        x[i] = v / l(i, i);
    }
    for (std::size_t i = n; i-- > 0;) {
        double v = x[i];
        for (std::size_t k = i + 1; k < n; ++k) v -= l(k, i) * x[k];
        x[i] = v / l(i, i);
    }
}

// Phi_O' Phi_O + sigma^2 Lambda^{-1} over the observed points, factorised.
Matrix score_system(const FpcaModel& model, std::span<const Cell> row, double noise) {
    const std::size_t kc = model.components();
    const std::size_t s = model.grid.size();
    Matrix m(kc, kc);
    for (std::size_t a = 0; a < kc; ++a) {
        for (std::size_t b = a; b < kc; ++b) {
            double acc = 0.0;
            for (std::size_t k = 0; k < s; ++k) {
                if (row[k]) acc += model.eigenfunctions(a, k) * model.eigenfunctions(b, k);
            }
            m(a, b) = acc;
            m(b, a) = acc;
        }
        m(a, a) += noise / model.eigenvalues[a];
    }
    if (!cholesky(m)) throw NumericalError("BLUP score system is not positive definite");
    return m;
}

FpcaModel fit_from_groups(const Grid& grid,
                          const std::vector<std::vector<std::span<const Cell>>>& groups, double pve,
                          double bandwidth) {
    if (!(pve > 0.0 && pve <= 1.0)) throw SizeError("pve must lie in (0, 1]");
    if (!(bandwidth >= 0.0) || !std::isfinite(bandwidth)) {
        throw SizeError("bandwidth must be a finite nonnegative number");
    }
    const std::size_t s = grid.size();
    const RawMoments raw = raw_moments(groups, s);

    Matrix smooth(s, s);
    double noise = 0.0;
    if (bandwidth == 0.0) {
        for (std::size_t j = 0; j < s; ++j) {
            for (std::size_t l = 0; l < s; ++l) {
                if (raw.count(j, l, s) < 2) {
                    throw InsufficientCoverage("grid points " + std::to_string(j) + " and " +
                                               std::to_string(l) +
                                               " are jointly observed for fewer than 2 curves");
                }
            }
        }
        smooth = raw.cov;
    } else {
        for (std::size_t a = 0; a < s; ++a) {
            for (std::size_t b = a; b < s; ++b) {
                const double v = local_linear_at(raw, grid, a, b, bandwidth);
                smooth(a, b) = v;
                smooth(b, a) = v;
            }
        }
        double excess = 0.0;
        for (std::size_t a = 0; a < s; ++a) excess += raw.cov(a, a) - smooth(a, a);
        noise = std::max(0.0, excess / static_cast<double>(s));
    }

    const auto w = grid.trapezoid_weights();
    std::vector<double> root_w(s);
    std::transform(w.begin(), w.end(), root_w.begin(), [](double x) { return std::sqrt(x); });
    Matrix weighted(s, s);
    for (std::size_t j = 0; j < s; ++j) {
        for (std::size_t l = 0; l < s; ++l) weighted(j, l) = root_w[j] * smooth(j, l) * root_w[l];
    }
    const SymmetricEigen eig = jacobi_eigen(weighted);

    double total = 0.0;
    for (double v : eig.values) total += std::max(0.0, v);

    std::size_t keep = 0;
    if (total > 0.0) {
        double cumulative = 0.0;
        const double needed = pve * total - 1e-12 * total;
        while (keep < s && eig.values[keep] > 0.0) {
            cumulative += eig.values[keep];
            ++keep;
            if (cumulative >= needed) break;
        }
    }

    FpcaModel model{grid, raw.mean, Matrix(keep, s), {}, noise, pve, total};
    model.eigenvalues.assign(eig.values.begin(), eig.values.begin() + static_cast<long>(keep));
    for (std::size_t c = 0; c < keep; ++c) {
        // sign convention: largest-magnitude entry positive
        std::size_t arg = 0;
        for (std::size_t k = 1; k < s; ++k) {
            if (std::fabs(eig.vectors(k, c)) > std::fabs(eig.vectors(arg, c))) arg = k;
        }
        const double flip = eig.vectors(arg, c) < 0.0 ? -1.0 : 1.0;
        for (std::size_t k = 0; k < s; ++k) {
            model.eigenfunctions(c, k) = flip * eig.vectors(k, c) / root_w[k];
        }
    }
    return model;
}

}  // namespace

double default_bandwidth(const Grid& grid) { return 2.0 * grid.mean_spacing(); }

FpcaModel fit_fpca(const FunctionalSample& pooled, double pve, double bandwidth) {
    std::vector<std::vector<std::span<const Cell>>> groups;
    groups.reserve(pooled.subjects());
    for (std::size_t i = 0; i < pooled.subjects(); ++i) groups.push_back({pooled.row(i)});
    return fit_from_groups(pooled.grid(), groups, pve, bandwidth);
}

FunctionalSample smooth_sample(const FpcaModel& model, const FunctionalSample& raw) {
    if (!(raw.grid() == model.grid)) throw DimensionError("sample grid differs from the model grid");
    const std::size_t s = model.grid.size();
    const std::size_t kc = model.components();
    for (double lambda : model.eigenvalues) {
        if (!(lambda > 0.0)) throw NumericalError("FPCA model has a nonpositive eigenvalue");
    }
    const double noise = std::max(model.noise_variance, kNoiseFloor);

    std::vector<Cell> all_present(s, 0.0);
    const Matrix full_system = kc > 0 ? score_system(model, all_present, noise) : Matrix();

    std::vector<std::vector<Cell>> rows(raw.subjects(), std::vector<Cell>(s));
    std::vector<double> scores(kc);
    for (std::size_t i = 0; i < raw.subjects(); ++i) {
        const auto row = raw.row(i);
        const auto seen = std::count_if(row.begin(), row.end(), [](const Cell& c) { return c.has_value(); });
        if (seen == 0) {
            throw EmptyCurve("subject " + raw.subject_ids()[i] + " has no observed values");
        }
        for (std::size_t c = 0; c < kc; ++c) {
            double acc = 0.0;
            for (std::size_t k = 0; k < s; ++k) {
                if (row[k]) acc += model.eigenfunctions(c, k) * (*row[k] - model.mean_curve[k]);
            }
            scores[c] = acc;
        }
        if (kc > 0) {
            if (static_cast<std::size_t>(seen) == s) {
                cholesky_solve(full_system, scores);
            } else {
                cholesky_solve(score_system(model, row, noise), scores);
            }
        }
        for (std::size_t k = 0; k < s; ++k) {
            double v = model.mean_curve[k];
            for (std::size_t c = 0; c < kc; ++c) v += scores[c] * model.eigenfunctions(c, k);
            rows[i][k] = v;
        }
    }
    return FunctionalSample(raw.grid(), std::move(rows), raw.subject_ids());
}

PairedSample preprocess_paired(const PairedSample& paired, double pve, double bandwidth) {
    std::vector<std::vector<std::span<const Cell>>> groups;
    groups.reserve(paired.subjects());
    for (std::size_t i = 0; i < paired.subjects(); ++i) {
        groups.push_back({paired.condition0().row(i), paired.condition1().row(i)});
    }
    const FpcaModel model = fit_from_groups(paired.grid(), groups, pve, bandwidth);
    return PairedSample(smooth_sample(model, paired.condition0()),
                        smooth_sample(model, paired.condition1()));
}

}  // namespace pairedfd
