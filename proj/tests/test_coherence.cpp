#include <doctest.h>

#include "coa/coherence.hpp"
#include "support.hpp"

using namespace coa;

TEST_CASE("fixed coherence values") {
    const auto plus = DensityMatrix::from_pure(PureState::maximally_coherent(2));
    CHECK(c_l1(plus) == doctest::Approx(1.0));
    CHECK(c_rel_ent(plus) == doctest::Approx(1.0));
    const PureState tilted({std::sqrt(0.8), std::sqrt(0.2)});
    CHECK(c_l1_pure(tilted) == doctest::Approx(0.8));
    CHECK(c_l1(DensityMatrix::from_pure(tilted)) == doctest::Approx(0.8));
    CHECK(c_rel_ent_pure(tilted) == doctest::Approx(coa::test::oracle_shannon({0.8, 0.2})));
    const auto e0 = DensityMatrix::from_pure(PureState::basis(2, 0));
    CHECK(c_l1(e0) == 0.0);
    CHECK(c_rel_ent(e0) == 0.0);
    CHECK(c_l1(DensityMatrix::maximally_mixed(3)) == 0.0);
    CHECK(c_l1(DensityMatrix::from_pure(PureState::maximally_coherent(4))) == doctest::Approx(3.0));
    CHECK(to_string(Measure::L1) == "l1");
    CHECK(to_string(Measure::RelativeEntropy) == "relent");
}

TEST_CASE("coherence against oracles on random states") {
    Rng rng(5);
    for (std::size_t d = 2; d <= 6; ++d) {
        for (int rep = 0; rep < 20; ++rep) {
            const auto rho = coa::test::random_state(d, rng, 1 + rep % d);
            const auto em = coa::test::to_eigen(rho.mat());
            CHECK(c_l1(rho) == doctest::Approx(coa::test::oracle_l1(em)).epsilon(1e-12));
            CHECK(std::abs(c_rel_ent(rho) - coa::test::oracle_rel_ent(rho.mat())) < 1e-9);
            CHECK(c_rel_ent(rho) >= 0.0);
            // Dephasing kills coherence and keeps the diagonal.
            const auto dp = dephase(rho);
            CHECK(c_l1(dp) == 0.0);
            CHECK(std::abs(c_rel_ent(dp)) < 1e-12);
            for (std::size_t i = 0; i < d; ++i) CHECK(dp(i, i) == rho(i, i));
        }
    }
}

TEST_CASE("pure-state shortcuts match the matrix formulas") {
    Rng rng(9);
    for (int rep = 0; rep < 200; ++rep) {
        const auto psi = coa::test::random_pure(2 + rep % 5, rng);
        const auto rho = DensityMatrix::from_pure(psi);
        CHECK(std::abs(c_l1_pure(psi) - c_l1(rho)) < 1e-12);
        CHECK(std::abs(c_rel_ent_pure(psi) - c_rel_ent(rho)) < 1e-9);
        CHECK(coherence(psi, Measure::L1) == c_l1_pure(psi));
        CHECK(coherence(rho, Measure::RelativeEntropy) == c_rel_ent(rho));
        // Relative entropy never exceeds l1 on pure states.
        CHECK(c_rel_ent_pure(psi) <= c_l1_pure(psi) + 1e-12);
    }
}

TEST_CASE("convexity of l1 coherence") {
    Rng rng(13);
    for (int rep = 0; rep < 100; ++rep) {
        const auto a = coa::test::random_state(3, rng);
        const auto b = coa::test::random_state(3, rng);
        const double t = 0.3;
        const DensityMatrix mix(a.mat() * Complex(t) + b.mat() * Complex(1 - t));
        CHECK(c_l1(mix) <= t * c_l1(a) + (1 - t) * c_l1(b) + 1e-12);
        CHECK(c_rel_ent(mix) <= t * c_rel_ent(a) + (1 - t) * c_rel_ent(b) + 1e-9);
    }
}
