#pragma once

// Maps in the Choi picture.
//
// A map Lambda from d_A x d_A to d_B x d_B matrices is stored through its Choi
// state C = (id (x) Lambda)(P_+), P_+ = |beta><beta|, |beta> = d_A^{-1/2} sum_i |ii>.
// The identity channel has C = P_+, and trace-preserving maps have tr C = 1.
// Witness operators are used as Choi matrices as-is.

#include "ewspa/linalg.hpp"
#include "ewspa/spa.hpp"

namespace ewspa {

class ChoiMatrix {
public:
    explicit ChoiMatrix(BipartiteOperator op) : op_(std::move(op)) {}

    std::size_t dim_in() const { return op_.dims().a; }
    std::size_t dim_out() const { return op_.dims().b; }
    const BipartiteOperator& op() const { return op_; }

private:
    BipartiteOperator op_;
};

ChoiMatrix choi_of_witness(const BipartiteOperator& w);
BipartiteOperator witness_of_choi(const ChoiMatrix& c);

/// Choi state of a map given by its action on matrix units |i><j|.
template <typename Map>
ChoiMatrix choi_of_map(std::size_t dim_in, std::size_t dim_out, Map&& map);

/// Lambda(rho) = d_A tr_A[(rho^T (x) I) C]. Throws NotAState unless rho is
/// PSD with unit trace (1e-10).
ComplexMatrix apply_map(const ChoiMatrix& c, const ComplexMatrix& rho);

struct SpaMapResult {
    ChoiMatrix choi;
    double p_star;
    bool already_cp;  ///< input Choi already PSD, p_star = 0
};

/// Lambda~ = p tr(.) I/d_B + (1-p) Lambda with the smallest p making the Choi PSD.
SpaMapResult spa_map(const ChoiMatrix& c);

/// (1-p) I/d + p rho.
BipartiteOperator depolarize(const BipartiteOperator& rho, double p);

/// Separability of the Choi state. Throws NotCP if the Choi matrix is not PSD.
SeparabilityVerdict is_entanglement_breaking(const ChoiMatrix& c);

/// True when tr_B C = I/d_A (within tol).
bool is_trace_preserving(const ChoiMatrix& c, double tol = 1e-10);

template <typename Map>
ChoiMatrix choi_of_map(std::size_t dim_in, std::size_t dim_out, Map&& map) {
    const auto din = static_cast<Eigen::Index>(dim_in);
    const auto dout = static_cast<Eigen::Index>(dim_out);
    ComplexMatrix c = ComplexMatrix::Zero(din * dout, din * dout);
    for (Eigen::Index i = 0; i < din; ++i)
        for (Eigen::Index j = 0; j < din; ++j) {
            ComplexMatrix unit = ComplexMatrix::Zero(din, din);
            unit(i, j) = 1.0;
            const ComplexMatrix image = map(unit);
            c.block(i * dout, j * dout, dout, dout) = image / static_cast<double>(dim_in);
        }
    return ChoiMatrix(BipartiteOperator({dim_in, dim_out}, std::move(c)));
}

}  // namespace ewspa
