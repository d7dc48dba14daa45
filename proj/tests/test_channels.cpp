#include <doctest.h>

#include <cmath>

#include "ewspa/catalog.hpp"
#include "ewspa/channels.hpp"
#include "ewspa/errors.hpp"
#include "oracles.hpp"

using namespace ewspa;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an ewspa::Error");
    return ErrorCode::Parse;
}

ComplexMatrix identity_map(const ComplexMatrix& x) { return x; }
ComplexMatrix transpose_map(const ComplexMatrix& x) { return x.transpose(); }

}  // namespace

TEST_CASE("Choi round trip is exact") {
    Rng rng(3);
    for (Dims dims : {Dims{2, 2}, Dims{2, 3}, Dims{3, 2}, Dims{3, 3}}) {
        const BipartiteOperator w(dims, random_hermitian(dims.total(), rng));
        const ChoiMatrix c = choi_of_witness(w);
        CHECK(c.dim_in() == dims.a);
        CHECK(c.dim_out() == dims.b);
        CHECK(witness_of_choi(c).matrix() == w.matrix());
    }
    ComplexMatrix skew = ComplexMatrix::Zero(4, 4);
    skew(0, 1) = 1.0;
    CHECK(code_of([&] { (void)choi_of_witness(BipartiteOperator({2, 2}, skew)); }) == ErrorCode::NotHermitian);
}

TEST_CASE("Choi states of the identity and transpose maps") {
    const ChoiMatrix id = choi_of_map(3, 3, identity_map);
    CHECK(max_abs(id.op().matrix() - max_entangled_projector(3)) <= 1e-15);
    CHECK(is_trace_preserving(id));

    const ChoiMatrix t = choi_of_map(2, 2, transpose_map);
    CHECK(max_abs(t.op().matrix() - swap_matrix(2) / 2.0) == 0.0);
    CHECK(t.op().matrix() == transpose_witness(2).op.matrix());
    CHECK(is_trace_preserving(t));
    // Complete depolarization into a larger output space.
    const ChoiMatrix trace_map = choi_of_map(2, 3, [](const ComplexMatrix& x) -> ComplexMatrix {
        return x.trace() * ComplexMatrix::Identity(3, 3) / 3.0;
    });
    CHECK(is_trace_preserving(trace_map));
    CHECK(max_abs(trace_map.op().matrix() - ComplexMatrix::Identity(6, 6) / 6.0) <= 1e-15);
}

TEST_CASE("apply_map") {
    Rng rng(9);
    const ChoiMatrix id = choi_of_map(3, 3, identity_map);
    const ChoiMatrix t = choi_of_map(3, 3, transpose_map);
    for (int rep = 0; rep < 20; ++rep) {
        const ComplexMatrix rho = random_density_matrix(3, 1 + rep % 3, rng);
        CHECK(max_abs(apply_map(id, rho) - rho) <= 1e-14);
        CHECK(max_abs(apply_map(t, rho) - rho.transpose()) <= 1e-14);
        CHECK(std::abs(apply_map(t, rho).trace() - 1.0) <= 1e-14);
    }

    // Linearity over convex mixtures.
    const ChoiMatrix generic(BipartiteOperator({2, 3}, random_hermitian(6, rng)));
    const ComplexMatrix r1 = random_density_matrix(2, 2, rng);
    const ComplexMatrix r2 = random_density_matrix(2, 1, rng);
    const ComplexMatrix mix = 0.3 * r1 + 0.7 * r2;
    CHECK(max_abs(apply_map(generic, mix) - (0.3 * apply_map(generic, r1) + 0.7 * apply_map(generic, r2))) <= 1e-13);

    // Agrees with choi_of_map on an arbitrary linear map.
    const ComplexMatrix k = random_hermitian(3, rng) + Complex(0, 1) * random_hermitian(3, rng);
    const ComplexMatrix k2 = random_hermitian(3, rng);
    auto conj_map = [&](const ComplexMatrix& x) -> ComplexMatrix {
        return k.topLeftCorner(2, 3).adjoint() * x * k.topLeftCorner(2, 3) + x.trace() * k2;
    };
    const ChoiMatrix cm = choi_of_map(2, 3, conj_map);
    for (int rep = 0; rep < 5; ++rep) {
        const ComplexMatrix rho = random_density_matrix(2, 2, rng);
        CHECK(max_abs(apply_map(cm, rho) - conj_map(rho)) <= 1e-13);
    }

    CHECK(code_of([&] { (void)apply_map(id, ComplexMatrix::Identity(2, 2)); }) == ErrorCode::DimensionMismatch);
    CHECK(code_of([&] { (void)apply_map(id, ComplexMatrix::Identity(3, 3)); }) == ErrorCode::NotAState);
    ComplexMatrix negative = ComplexMatrix::Zero(3, 3);
    negative.diagonal() << 1.5, -0.5, 0.0;
    CHECK(code_of([&] { (void)apply_map(id, negative); }) == ErrorCode::NotAState);
}

TEST_CASE("spa_map") {
    SUBCASE("transpose map on qubits") {
        const SpaMapResult r = spa_map(choi_of_map(2, 2, transpose_map));
        CHECK(r.p_star == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
        CHECK_FALSE(r.already_cp);
        CHECK(std::abs(oracle::min_eigenvalue(r.choi.op().matrix())) <= 1e-14);
        const SeparabilityVerdict v = is_entanglement_breaking(r.choi);
        CHECK(v.outcome == Outcome::Separable);
    }
    SUBCASE("Korbicz map") {
        for (double a : {0.05, 0.1, 0.25, 0.5, 1.0}) {
            const SpaMapResult r = spa_map(choi_of_witness(korbicz_witness(a, 0.7).op));
            CHECK(r.p_star == doctest::Approx(4.0 * a / (4.0 * a + 1.0)).epsilon(1e-12));
        }
        const SpaMapResult ent = spa_map(choi_of_witness(korbicz_witness(0.1, 0.4).op));
        CHECK(is_entanglement_breaking(ent.choi).outcome == Outcome::Entangled);
    }
    SUBCASE("completely positive input") {
        const ChoiMatrix id = choi_of_map(2, 2, identity_map);
        const SpaMapResult r = spa_map(id);
        CHECK(r.already_cp);
        CHECK(r.p_star == 0.0);
        CHECK(r.choi.op().matrix() == id.op().matrix());
    }
    SUBCASE("acts as p tr(.) I/d_B + (1-p) Lambda") {
        const ChoiMatrix t = choi_of_map(3, 3, transpose_map);
        const SpaMapResult r = spa_map(t);
        Rng rng(4);
        for (int rep = 0; rep < 5; ++rep) {
            const ComplexMatrix rho = random_density_matrix(3, 3, rng);
            const ComplexMatrix expected =
                r.p_star * ComplexMatrix::Identity(3, 3) / 3.0 + (1.0 - r.p_star) * rho.transpose();
            CHECK(max_abs(apply_map(r.choi, rho) - expected) <= 1e-13);
        }
    }
    SUBCASE("matches spa_witness through the Choi picture") {
        std::vector<BipartiteOperator> ops{korbicz_witness(0.1, 0.4).op, korbicz_witness(0.4, 0.1).op,
                                           swap_witness(3).op, ha_violation_instance().op, bell_pt_witness().op};
        for (const BipartiteOperator& w : ops) {
            const SpaReport spa = spa_witness(Witness::validate(w));
            const SpaMapResult m = spa_map(choi_of_witness(w));
            // spa_witness gives W + sI; the map-level Choi is (1-p)(W + s I).
            const ComplexMatrix rescaled = spa.approximated.matrix() * (1.0 - m.p_star);
            CHECK(max_abs(rescaled - m.choi.op().matrix()) <= 1e-10);
            CHECK(m.p_star == doctest::Approx(spa.noise_p).epsilon(1e-12));
        }
    }
}

TEST_CASE("depolarize") {
    Rng rng(6);
    const BipartiteOperator rho({2, 2}, random_density_matrix(4, 2, rng));
    CHECK(max_abs(depolarize(rho, 1.0).matrix() - rho.matrix()) <= 1e-15);
    CHECK(max_abs(depolarize(rho, 0.0).matrix() - ComplexMatrix::Identity(4, 4) / 4.0) <= 1e-15);
    CHECK(depolarize(rho, 0.3).trace() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(code_of([&] { (void)depolarize(rho, 1.5); }) == ErrorCode::BadParameter);
}

TEST_CASE("is_entanglement_breaking") {
    CHECK(code_of([] { (void)is_entanglement_breaking(choi_of_map(2, 2, transpose_map)); }) == ErrorCode::NotCP);

    const SeparabilityVerdict id = is_entanglement_breaking(choi_of_map(2, 2, identity_map));
    CHECK(id.outcome == Outcome::Entangled);

    // Measure-and-prepare in the computational basis.
    const ChoiMatrix measure = choi_of_map(2, 2, [](const ComplexMatrix& x) -> ComplexMatrix {
        ComplexMatrix out = ComplexMatrix::Zero(2, 2);
        out(0, 0) = x(0, 0);
        out(1, 1) = x(1, 1);
        return out;
    });
    CHECK(is_entanglement_breaking(measure).outcome == Outcome::Separable);

    // 3 -> 3: PPT alone is not enough unless the ball applies.
    const ChoiMatrix full_depolarizing = choi_of_map(3, 3, [](const ComplexMatrix& x) -> ComplexMatrix {
        return x.trace() * ComplexMatrix::Identity(3, 3) / 3.0;
    });
    const SeparabilityVerdict fd = is_entanglement_breaking(full_depolarizing);
    CHECK(fd.outcome == Outcome::Separable);
    CHECK(fd.certificate == Certificate::SeparableBall);
}
