#pragma once

// Dense complex linear algebra on bipartite operators.
//
// Basis convention (global): |i>_A |j>_B has index k = i * dim_b + j.

#include <complex>
#include <cstddef>
#include <random>

#include <Eigen/Dense>

namespace ewspa {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

enum class Subsystem { A, B };

/// Relative Hermiticity tolerance: |M[r,c] - conj(M[c,r])| <= tol * max(1, max|M|).
inline constexpr double kHermitianTol = 1e-12;

struct Dims {
    std::size_t a = 2;
    std::size_t b = 2;

    std::size_t total() const { return a * b; }
    bool operator==(const Dims&) const = default;
};

double max_abs(const ComplexMatrix& m);
double hermiticity_defect(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double rel_tol = kHermitianTol);

/// Square operator on C^{dim_a} (x) C^{dim_b}. Immutable once built; the
/// Hermitian flag is measured at construction.
class BipartiteOperator {
public:
    BipartiteOperator(Dims dims, ComplexMatrix matrix);

    static BipartiteOperator identity(Dims dims);
    static BipartiteOperator zero(Dims dims);

    const ComplexMatrix& matrix() const { return matrix_; }
    Dims dims() const { return dims_; }
    std::size_t side() const { return dims_.total(); }
    bool is_hermitian() const { return hermitian_; }

    Complex operator()(std::size_t r, std::size_t c) const { return matrix_(r, c); }

    double trace() const { return matrix_.trace().real(); }
    double max_abs() const { return ewspa::max_abs(matrix_); }
    double frobenius_norm() const { return matrix_.norm(); }

    /// this + s * I
    BipartiteOperator shifted(double s) const;
    BipartiteOperator scaled(double factor) const;

    friend BipartiteOperator operator+(const BipartiteOperator& x, const BipartiteOperator& y);
    friend BipartiteOperator operator-(const BipartiteOperator& x, const BipartiteOperator& y);

private:
    Dims dims_;
    ComplexMatrix matrix_;
    bool hermitian_ = false;
};

/// Eigenvalues ascending; column k of `eigenvectors` pairs with eigenvalues[k].
struct Spectrum {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;

    double min() const { return eigenvalues(0); }
    double max() const { return eigenvalues(eigenvalues.size() - 1); }
    ComplexVector min_vector() const { return eigenvectors.col(0); }
};

/// Cyclic complex Jacobi. Throws NotHermitian when the Hermiticity bound fails.
Spectrum hermitian_eig(const ComplexMatrix& m);
Spectrum hermitian_eig(const BipartiteOperator& m);

double min_eigenvalue(const ComplexMatrix& m);
double min_eigenvalue(const BipartiteOperator& m);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

BipartiteOperator partial_transpose(const BipartiteOperator& o, Subsystem subsystem = Subsystem::B);

/// Traces out `traced`; the result lives on the other factor.
ComplexMatrix partial_trace(const BipartiteOperator& o, Subsystem traced);

/// <v|o|v> for Hermitian o and unit v (norm within 1e-10).
double expectation(const BipartiteOperator& o, const ComplexVector& v);

/// Re tr(x y); exact for Hermitian pairs.
double trace_product(const ComplexMatrix& x, const ComplexMatrix& y);

/// Swap operator V|ij> = |ji> on C^d (x) C^d.
ComplexMatrix swap_matrix(std::size_t d);

/// |beta><beta| with |beta> = d^{-1/2} sum_i |ii>.
ComplexMatrix max_entangled_projector(std::size_t d);

// Random sampling helpers (seeded, deterministic for a given engine state).
using Rng = std::mt19937_64;

ComplexVector random_unit_vector(std::size_t n, Rng& rng);
ComplexMatrix random_hermitian(std::size_t n, Rng& rng);
/// Trace-one density matrix G G^dagger / tr, with G a complex Gaussian n x rank matrix.
ComplexMatrix random_density_matrix(std::size_t n, std::size_t rank, Rng& rng);

}  // namespace ewspa
