#include "ewspa/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "ewspa/errors.hpp"

namespace ewspa {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NotAWitness: return "NotAWitness";
    case ErrorCode::NotBlockPositive: return "NotBlockPositive";
    case ErrorCode::ExceedsWeakOptimal: return "ExceedsWeakOptimal";
    case ErrorCode::NotAState: return "NotAState";
    case ErrorCode::NotCP: return "NotCP";
    case ErrorCode::PtPositive: return "PtPositive";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::RetryExhausted: return "RetryExhausted";
    case ErrorCode::DidNotConverge: return "DidNotConverge";
    case ErrorCode::Parse: return "ParseError";
    }
    return "Unknown";
}

double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
    return m.size() == 0 ? 0.0 : (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double rel_tol) {
    return hermiticity_defect(m) <= rel_tol * std::max(1.0, max_abs(m));
}

// ---------------------------------------------------------------------------
// BipartiteOperator

BipartiteOperator::BipartiteOperator(Dims dims, ComplexMatrix matrix)
    : dims_(dims), matrix_(std::move(matrix)) {
    if (dims_.a < 2 || dims_.b < 2) {
        throw Error(ErrorCode::DimensionMismatch,
                    "subsystem dimensions must be >= 2, got " + std::to_string(dims_.a) + "x" +
                        std::to_string(dims_.b));
    }
    const auto n = static_cast<Eigen::Index>(dims_.total());
    if (matrix_.rows() != n || matrix_.cols() != n) {
        throw Error(ErrorCode::DimensionMismatch,
                    "matrix is " + std::to_string(matrix_.rows()) + "x" + std::to_string(matrix_.cols()) +
                        ", expected side " + std::to_string(n));
    }
    if (!matrix_.allFinite()) throw Error(ErrorCode::BadParameter, "matrix has non-finite entries");
    hermitian_ = ewspa::is_hermitian(matrix_);
}

BipartiteOperator BipartiteOperator::identity(Dims dims) {
    const auto n = static_cast<Eigen::Index>(dims.total());
    return {dims, ComplexMatrix::Identity(n, n)};
}

BipartiteOperator BipartiteOperator::zero(Dims dims) {
    const auto n = static_cast<Eigen::Index>(dims.total());
    return {dims, ComplexMatrix::Zero(n, n)};
}

BipartiteOperator BipartiteOperator::shifted(double s) const {
    ComplexMatrix m = matrix_;
    m.diagonal().array() += s;
    return {dims_, std::move(m)};
}

BipartiteOperator BipartiteOperator::scaled(double factor) const {
    return {dims_, matrix_ * factor};
}

BipartiteOperator operator+(const BipartiteOperator& x, const BipartiteOperator& y) {
    if (x.dims_ != y.dims_) throw Error(ErrorCode::DimensionMismatch, "operator sum with different dims");
    return {x.dims_, x.matrix_ + y.matrix_};
}

BipartiteOperator operator-(const BipartiteOperator& x, const BipartiteOperator& y) {
    if (x.dims_ != y.dims_) throw Error(ErrorCode::DimensionMismatch, "operator difference with different dims");
    return {x.dims_, x.matrix_ - y.matrix_};
}

// ---------------------------------------------------------------------------
// Jacobi eigensolver

namespace {

constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const ComplexMatrix& a) {
    double sum = 0.0;
    for (Eigen::Index c = 0; c < a.cols(); ++c)
        for (Eigen::Index r = 0; r < a.rows(); ++r)
            if (r != c) sum += std::norm(a(r, c));
    return std::sqrt(sum);
}

// Zeroes a(p,q) with the unitary U = [[c, s e^{i phi}], [-s e^{-i phi}, c]]
// acting on columns (p, q): a <- U^dagger a U, v <- v U.
void rotate(ComplexMatrix& a, ComplexMatrix& v, Eigen::Index p, Eigen::Index q) {
    const Complex apq = a(p, q);
    const double mag = std::abs(apq);
    if (mag == 0.0) return;
    const Complex phase = apq / mag;
    const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    const Complex upq = s * phase;
    const Complex uqp = -s * std::conj(phase);

    const Eigen::Index n = a.rows();
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        a(k, p) = akp * c + akq * uqp;
        a(k, q) = akp * upq + akq * c;
    }
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex apk = a(p, k);
        const Complex aqk = a(q, k);
        a(p, k) = c * apk + std::conj(uqp) * aqk;
        a(q, k) = std::conj(upq) * apk + c * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();

    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex vkp = v(k, p);
        const Complex vkq = v(k, q);
        v(k, p) = vkp * c + vkq * uqp;
        v(k, q) = vkp * upq + vkq * c;
    }
}

// Fix the phase of each eigenvector so its largest-magnitude entry is real
// and positive; makes the output a function of the input alone.
void canonicalize_phases(ComplexMatrix& v) {
    for (Eigen::Index k = 0; k < v.cols(); ++k) {
        Eigen::Index arg = 0;
        v.col(k).cwiseAbs().maxCoeff(&arg);
        const Complex pivot = v(arg, k);
        if (std::abs(pivot) > 0.0) v.col(k) *= std::conj(pivot) / std::abs(pivot);
    }
}

}  // namespace

Spectrum hermitian_eig(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "eigendecomposition needs a square matrix");
    if (!is_hermitian(m)) {
        throw Error(ErrorCode::NotHermitian,
                    "Hermiticity defect " + std::to_string(hermiticity_defect(m)) + " exceeds bound");
    }
    const Eigen::Index n = m.rows();
    ComplexMatrix a = 0.5 * (m + m.adjoint());
    ComplexMatrix v = ComplexMatrix::Identity(n, n);

    const double scale = a.norm();
    const double threshold = 1e-12 * scale;
    for (int sweep = 0; sweep < kMaxSweeps && scale > 0.0; ++sweep) {
        if (off_diagonal_norm(a) <= threshold) break;
        for (Eigen::Index p = 0; p + 1 < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q) rotate(a, v, p, q);
    }
    // One more sweep below threshold polishes residuals to round-off level.
    for (Eigen::Index p = 0; p + 1 < n; ++p)
        for (Eigen::Index q = p + 1; q < n; ++q)
            if (std::abs(a(p, q)) > 0.0) rotate(a, v, p, q);

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index x, Eigen::Index y) { return a(x, x).real() < a(y, y).real(); });

    Spectrum out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto src = order[static_cast<std::size_t>(k)];
        out.eigenvalues(k) = a(src, src).real();
        out.eigenvectors.col(k) = v.col(src);
    }
    canonicalize_phases(out.eigenvectors);
    return out;
}

Spectrum hermitian_eig(const BipartiteOperator& m) {
    if (!m.is_hermitian()) throw Error(ErrorCode::NotHermitian, "operator is not flagged Hermitian");
    return hermitian_eig(m.matrix());
}

double min_eigenvalue(const ComplexMatrix& m) { return hermitian_eig(m).min(); }
double min_eigenvalue(const BipartiteOperator& m) { return hermitian_eig(m).min(); }

// ---------------------------------------------------------------------------
// Bipartite structure

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
    ComplexVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

BipartiteOperator partial_transpose(const BipartiteOperator& o, Subsystem subsystem) {
    const auto [da, db] = o.dims();
    const auto ida = static_cast<Eigen::Index>(da);
    const auto idb = static_cast<Eigen::Index>(db);
    const ComplexMatrix& m = o.matrix();
    ComplexMatrix out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < ida; ++i)
        for (Eigen::Index j = 0; j < idb; ++j)
            for (Eigen::Index k = 0; k < ida; ++k)
                for (Eigen::Index l = 0; l < idb; ++l) {
                    // <ij| X |kl>
                    const Complex value = m(i * idb + j, k * idb + l);
                    if (subsystem == Subsystem::B)
                        out(i * idb + l, k * idb + j) = value;
                    else
                        out(k * idb + j, i * idb + l) = value;
                }
    return {o.dims(), std::move(out)};
}

ComplexMatrix partial_trace(const BipartiteOperator& o, Subsystem traced) {
    const auto [da, db] = o.dims();
    const auto ida = static_cast<Eigen::Index>(da);
    const auto idb = static_cast<Eigen::Index>(db);
    const ComplexMatrix& m = o.matrix();
    if (traced == Subsystem::A) {
        ComplexMatrix out = ComplexMatrix::Zero(idb, idb);
        for (Eigen::Index i = 0; i < ida; ++i) out += m.block(i * idb, i * idb, idb, idb);
        return out;
    }
    ComplexMatrix out = ComplexMatrix::Zero(ida, ida);
    for (Eigen::Index i = 0; i < ida; ++i)
        for (Eigen::Index k = 0; k < ida; ++k) out(i, k) = m.block(i * idb, k * idb, idb, idb).trace();
    return out;
}

double expectation(const BipartiteOperator& o, const ComplexVector& v) {
    if (!o.is_hermitian()) throw Error(ErrorCode::NotHermitian, "expectation needs a Hermitian operator");
    if (v.size() != static_cast<Eigen::Index>(o.side()))
        throw Error(ErrorCode::DimensionMismatch, "vector length does not match operator side");
    if (std::abs(v.norm() - 1.0) > 1e-10)
        throw Error(ErrorCode::NotNormalized, "vector norm " + std::to_string(v.norm()));
    const Complex value = v.dot(o.matrix() * v);  // conjugates v
    if (std::abs(value.imag()) > 1e-10 * std::max(1.0, o.max_abs()))
        throw Error(ErrorCode::NotHermitian, "expectation has imaginary residue");
    return value.real();
}

double trace_product(const ComplexMatrix& x, const ComplexMatrix& y) {
    // tr(XY) = sum_{rc} X[r,c] Y[c,r]
    return (x.array() * y.transpose().array()).sum().real();
}

ComplexMatrix swap_matrix(std::size_t d) {
    const auto n = static_cast<Eigen::Index>(d);
    ComplexMatrix v = ComplexMatrix::Zero(n * n, n * n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) v(j * n + i, i * n + j) = 1.0;
    return v;
}

ComplexMatrix max_entangled_projector(std::size_t d) {
    const auto n = static_cast<Eigen::Index>(d);
    ComplexVector beta = ComplexVector::Zero(n * n);
    for (Eigen::Index i = 0; i < n; ++i) beta(i * n + i) = 1.0 / std::sqrt(static_cast<double>(d));
    return beta * beta.adjoint();
}

// ---------------------------------------------------------------------------
// Sampling

namespace {

ComplexMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix g(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(r, c) = Complex(re, im);
        }
    return g;
}

}  // namespace

ComplexVector random_unit_vector(std::size_t n, Rng& rng) {
    ComplexVector v = gaussian_matrix(static_cast<Eigen::Index>(n), 1, rng).col(0);
    return v / v.norm();
}

ComplexMatrix random_hermitian(std::size_t n, Rng& rng) {
    const ComplexMatrix g = gaussian_matrix(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n), rng);
    return 0.5 * (g + g.adjoint());
}

ComplexMatrix random_density_matrix(std::size_t n, std::size_t rank, Rng& rng) {
    const ComplexMatrix g = gaussian_matrix(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(rank), rng);
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return 0.5 * (rho + rho.adjoint());
}

}  // namespace ewspa
