#pragma once

// Exact constructors for the operator families used throughout the toolkit.
// Optimality claims come from the literature on each family and are never
// computed.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ewspa/linalg.hpp"
#include "ewspa/spa.hpp"
#include "ewspa/witness.hpp"

namespace ewspa {

enum class EntryKind { Witness, State };

struct CatalogEntry {
    std::string name;
    std::vector<double> parameters;
    BipartiteOperator op;
    OptimalityClaim claim;
    EntryKind kind;
    std::string source;
    std::string note;
};

/// a(|00><00| + |11><11|) + b(|01><01| + |10><10|) + (a+b)(|01><10| + |10><01|); a, b > 0.
/// Weakly optimal for every a, b > 0 but never optimal.
CatalogEntry korbicz_witness(double a, double b);

/// 3x3 family with diagonal (a,c,b, b,a,c, c,b,a) and -e^{+-i theta} couplings
/// among |00>, |11>, |22>. Requires a, b, c >= 0 and theta in [-pi, pi].
CatalogEntry ha_witness(double a, double b, double c, double theta);

/// a = (4/3)cos(pi/12), b = (2/3)cos(pi/12), c = 0, theta = pi/12.
CatalogEntry ha_violation_instance();

/// Swap operator V on C^d (x) C^d.
CatalogEntry swap_witness(std::size_t d);
/// p/d^2 I + (1-p)/d V; a state for p >= swap_state_threshold(d).
BipartiteOperator swap_state(std::size_t d, double p);
double swap_state_threshold(std::size_t d);

/// V/d: the Choi state of the transpose map on d-level systems.
CatalogEntry transpose_witness(std::size_t d);

/// |00><00| + |11><11| + |01><10| + |10><01| = 2 |phi+><phi+|^T_B.
CatalogEntry bell_pt_witness();

struct SpecialCase {
    CatalogEntry w;  ///< sigma - 0.4 I
    BipartiteOperator rho;
    BipartiteOperator sigma;
};

/// Two-qubit example with rho = diag(.2,.5,.5,.2) + .5(|01><10| + |10><01|)
/// and sigma = rho + 0.3 I; the witness is built as sigma - 0.4 I.
SpecialCase special_case();

struct RandomWitness {
    CatalogEntry entry;
    Witness witness;
};

/// Random sigma depolarized into the separable ball, c uniform in
/// (lambda_min(sigma) + eps, c_max(sigma)]. Deterministic per seed.
/// Throws DimensionTooLarge for d_A d_B > 9, RetryExhausted after 100 draws.
RandomWitness random_witness(Dims dims, std::uint64_t seed, const CMaxOptions& options = {});

/// Parses "name[:p1,p2,...]" for korbicz, ha, swap, transpose, bell-pt,
/// special-case[:w|rho|sigma] and random[:dA,dB,seed].
CatalogEntry catalog_lookup(std::string_view spec);

std::vector<std::string> catalog_names();

}  // namespace ewspa
