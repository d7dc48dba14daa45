#include "ewspa/channels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ewspa/errors.hpp"

namespace ewspa {

ChoiMatrix choi_of_witness(const BipartiteOperator& w) {
    if (!w.is_hermitian()) throw Error(ErrorCode::NotHermitian, "witness must be Hermitian");
    return ChoiMatrix(w);
}

BipartiteOperator witness_of_choi(const ChoiMatrix& c) { return c.op(); }

ComplexMatrix apply_map(const ChoiMatrix& c, const ComplexMatrix& rho) {
    const auto din = static_cast<Eigen::Index>(c.dim_in());
    if (rho.rows() != din || rho.cols() != din)
        throw Error(ErrorCode::DimensionMismatch, "input state must be " + std::to_string(din) + "x" + std::to_string(din));
    if (!is_hermitian(rho)) throw Error(ErrorCode::NotAState, "input state is not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > 1e-10) throw Error(ErrorCode::NotAState, "input state trace is not 1");
    if (min_eigenvalue(rho) < -1e-10) throw Error(ErrorCode::NotAState, "input state is not positive semidefinite");

    const auto dout = static_cast<Eigen::Index>(c.dim_out());
    const ComplexMatrix& choi = c.op().matrix();
    // tr_A[(rho^T (x) I) C] = sum_{ik} rho^T[k,i] C_{ik}, with C_{ik} the (i,k) block.
    ComplexMatrix out = ComplexMatrix::Zero(dout, dout);
    for (Eigen::Index i = 0; i < din; ++i)
        for (Eigen::Index k = 0; k < din; ++k) out += rho(i, k) * choi.block(i * dout, k * dout, dout, dout);
    return out * static_cast<double>(din);
}

SpaMapResult spa_map(const ChoiMatrix& c) {
    const BipartiteOperator& w = c.op();
    const double lambda = min_eigenvalue(w);
    if (lambda >= -kHermitianTol * std::max(1.0, w.max_abs())) return {c, 0.0, true};
    const double shift = -lambda;
    const std::size_t d = w.side();
    const double p = noise_from_shift(shift, d);
    const BipartiteOperator mixed =
        BipartiteOperator::identity(w.dims()).scaled(p / static_cast<double>(d)) + w.scaled(1.0 - p);
    return {ChoiMatrix(mixed), p, false};
}

BipartiteOperator depolarize(const BipartiteOperator& rho, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::BadParameter, "p must lie in [0, 1]");
    return BipartiteOperator::identity(rho.dims()).scaled((1.0 - p) / static_cast<double>(rho.side())) +
           rho.scaled(p);
}

SeparabilityVerdict is_entanglement_breaking(const ChoiMatrix& c) {
    const BipartiteOperator& w = c.op();
    if (!w.is_hermitian()) throw Error(ErrorCode::NotCP, "Choi matrix is not Hermitian");
    const double lambda = min_eigenvalue(w);
    if (lambda < -1e-10 * std::max(1.0, w.max_abs()))
        throw Error(ErrorCode::NotCP, "Choi matrix has negative eigenvalue " + std::to_string(lambda));
    return separability_verdict(w);
}

bool is_trace_preserving(const ChoiMatrix& c, double tol) {
    const ComplexMatrix marginal = partial_trace(c.op(), Subsystem::B);
    const auto din = static_cast<Eigen::Index>(c.dim_in());
    const ComplexMatrix target = ComplexMatrix::Identity(din, din) / static_cast<double>(din);
    return max_abs(marginal - target) <= tol;
}

}  // namespace ewspa
