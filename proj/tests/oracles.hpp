#pragma once

// Test-only reference computations. Nothing here calls the code paths it is
// used to check.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// LAPACK-style eigenvalues from Eigen, ascending.
inline Eigen::VectorXd eigenvalues(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

inline double min_eigenvalue(const Matrix& m) { return eigenvalues(m)(0); }

/// X^T_B = sum_{j,l} (I (x) |j><l|) X (I (x) |j><l|).
inline Matrix partial_transpose_b(const Matrix& x, int da, int db) {
    Matrix out = Matrix::Zero(x.rows(), x.cols());
    for (int j = 0; j < db; ++j)
        for (int l = 0; l < db; ++l) {
            Matrix unit = Matrix::Zero(db, db);
            unit(j, l) = 1.0;
            Matrix op = Matrix::Zero(da * db, da * db);
            for (int i = 0; i < da; ++i) op.block(i * db, i * db, db, db) = unit;
            out += op * x * op;
        }
    return out;
}

inline Vector qubit(double theta, double t) {
    Vector v(2);
    v(0) = std::cos(theta / 2.0);
    v(1) = std::polar(1.0, t) * std::sin(theta / 2.0);
    return v;
}

inline double product_value(const Matrix& sigma, const std::array<double, 4>& x) {
    const Vector a = qubit(x[0], x[2]);
    const Vector b = qubit(x[1], x[3]);
    Vector ab(4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) ab(2 * i + j) = a(i) * b(j);
    return ab.dot(sigma * ab).real();
}

/// inf <ab|sigma|ab> on two qubits: 48 x 48 x 24 grid over (theta1, theta2,
/// t1) with t2 = 0, then compass search over all four angles from the best
/// few grid points.
inline double grid_product_min(const Matrix& sigma) {
    constexpr double pi = std::numbers::pi;
    struct Point {
        double value;
        std::array<double, 4> x;
    };
    std::array<Point, 8> best;
    best.fill({std::numeric_limits<double>::infinity(), {}});
    for (int i = 0; i < 48; ++i)
        for (int j = 0; j < 48; ++j)
            for (int k = 0; k < 24; ++k) {
                const std::array<double, 4> x{pi * i / 47.0, pi * j / 47.0, -pi + 2.0 * pi * k / 24.0, 0.0};
                const double v = product_value(sigma, x);
                if (v < best.back().value) {
                    best.back() = {v, x};
                    std::sort(best.begin(), best.end(), [](const Point& p, const Point& q) { return p.value < q.value; });
                }
            }
    double result = std::numeric_limits<double>::infinity();
    for (Point p : best) {
        double step = 0.1;
        while (step > 1e-10) {
            bool improved = false;
            for (int dim = 0; dim < 4; ++dim)
                for (double sign : {1.0, -1.0}) {
                    auto y = p.x;
                    y[dim] += sign * step;
                    const double v = product_value(sigma, y);
                    if (v < p.value) {
                        p = {v, y};
                        improved = true;
                    }
                }
            if (!improved) step *= 0.5;
        }
        result = std::min(result, p.value);
    }
    return result;
}

}  // namespace oracle
