#include "pairedfd/eigen_jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pairedfd/error.hpp"

namespace pairedfd {

namespace {

double off_diagonal_norm(const Matrix& a) {
    double sum = 0.0;
    for (std::size_t p = 0; p < a.rows(); ++p) {
        for (std::size_t q = p + 1; q < a.cols(); ++q) sum += 2.0 * a(p, q) * a(p, q);
    }
    return std::sqrt(sum);
}

double frobenius_norm(const Matrix& a) {
    double sum = 0.0;
    for (double x : a.data()) sum += x * x;
    return std::sqrt(sum);
}

}  // namespace

SymmetricEigen jacobi_eigen(const Matrix& symmetric, double tolerance, int max_sweeps) {
    const std::size_t n = symmetric.rows();
    if (n == 0 || symmetric.cols() != n) throw DimensionError("jacobi_eigen needs a square matrix");
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            const double scale = std::max(std::fabs(symmetric(p, q)), std::fabs(symmetric(q, p)));
            if (std::fabs(symmetric(p, q) - symmetric(q, p)) > 1e-12 * std::max(1.0, scale)) {
                throw DimensionError("jacobi_eigen input is not symmetric");
            }
        }
    }

    Matrix a = symmetric;
    Matrix v(n, n);
    for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

    const double target = tolerance * frobenius_norm(a);
    int sweep = 0;
    while (off_diagonal_norm(a) > target) {
        if (sweep == max_sweeps) {
            throw NumericalError("Jacobi eigensolver did not converge in " +
                                 std::to_string(max_sweeps) + " sweeps");
        }
        ++sweep;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                // A <- A J (columns p, q), then A <- J^T A (rows p, q)
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                auto row_p = a.row(p);
                auto row_q = a.row(q);
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = row_p[k];
                    const double aqk = row_q[k];
                    row_p[k] = c * apk - s * aqk;
                    row_q[k] = s * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;

                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

    SymmetricEigen out;
    out.sweeps = sweep;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]);
        for (std::size_t k = 0; k < n; ++k) out.vectors(k, j) = v(k, order[j]);
    }
    return out;
}

}  // namespace pairedfd
