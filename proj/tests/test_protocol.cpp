#include <doctest.h>

#include "coa/coherence.hpp"
#include "coa/errors.hpp"
#include "coa/protocol.hpp"
#include "support.hpp"

using namespace coa;

TEST_CASE("demo purification") {
    const auto p = demo_dim4_purification();
    CHECK(p.alice_dim() == 4);
    CHECK(p.bob_dim() == 4);
    CHECK(max_abs_diff(p.alice_marginal(), ComplexMatrix::identity(4) * Complex(0.25)) < 1e-15);
    const auto e = measure_bob(p, MeasurementBasis::computational(4));
    REQUIRE(e.size() == 4);
    for (const auto& m : e.members()) {
        CHECK(m.weight == doctest::Approx(0.25));
        CHECK(c_l1_pure(m.state) == doctest::Approx(3.0));
    }
    const auto r = run_protocol(DensityMatrix::maximally_mixed(4), p, BasisStrategy::Computational);
    CHECK(std::abs(r.initial_l1) < 1e-12);
    CHECK(std::abs(r.final_average_l1 - 3.0) < 1e-12);
    CHECK(std::abs(r.gain - 3.0) < 1e-12);
}

TEST_CASE("spectral purification with computational basis gives the spectral ensemble") {
    Rng rng(73);
    const auto rho = coa::test::random_state(3, rng);
    const auto p = purify(rho);
    CHECK(max_abs_diff(p.alice_marginal(), rho.mat()) < 1e-10);
    const auto e = measure_bob(p, MeasurementBasis::computational(p.bob_dim()));
    const auto s = spectral_ensemble(rho);
    REQUIRE(e.size() == s.size());
    for (std::size_t k = 0; k < e.size(); ++k) CHECK(e[k].weight == doctest::Approx(s[k].weight));
}

TEST_CASE("steering never changes the marginal and never lowers coherence") {
    Rng rng(79);
    for (int rep = 0; rep < 50; ++rep) {
        const auto rho = coa::test::random_state(2 + rep % 3, rng);
        const auto p = purify(rho);
        const auto u = haar_unitary(p.bob_dim(), rng);
        const auto basis = MeasurementBasis::from_rows_conj(u.mat());
        const auto e = measure_bob(p, basis);
        CHECK(max_abs_diff(assemble_matrix(e), rho.mat()) < 1e-8);
        CHECK(e.average_coherence(Measure::L1) - c_l1(rho) >= -1e-10);
    }
}

TEST_CASE("Haar basis search") {
    Rng rng(83);
    const auto rho = coa::test::random_state(2, rng);
    OptimizerConfig cfg;
    cfg.restarts = 4;
    const auto r = run_protocol(rho, BasisStrategy::HaarSearch, cfg);
    CHECK(r.gain >= -1e-10);
    CHECK(r.final_average_l1 == doctest::Approx(upper_bound_l1(rho)).epsilon(1e-5));
    CHECK(max_abs_diff(assemble_matrix(r.ensemble), rho.mat()) < 1e-8);
    CHECK(r.basis.dim() == purify(rho).bob_dim());
}

TEST_CASE("protocol errors") {
    CHECK_THROWS_AS(Purification(2, 2, PureState::basis(3, 0)), Error);
    CHECK_THROWS_AS(Purification::validated(2, 2, PureState::basis(4, 0), DensityMatrix::maximally_mixed(2)), Error);
    CHECK_THROWS_AS(measure_bob(demo_dim4_purification(), MeasurementBasis::computational(2)), Error);
    CHECK_THROWS_AS(MeasurementBasis({PureState::basis(2, 0), PureState::basis(2, 0)}), Error);
}
