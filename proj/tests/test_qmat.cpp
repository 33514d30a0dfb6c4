#include <doctest.h>

#include <cstdlib>

#include "coa/errors.hpp"
#include "coa/qmat.hpp"
#include "support.hpp"

using namespace coa;
using coa::test::oracle_eigenvalues;

namespace {

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no coa::Error thrown");
    return ErrorKind::ParseError;
}

}  // namespace

TEST_CASE("matrix arithmetic") {
    const ComplexMatrix a{{1.0, Complex(0, 1)}, {2.0, 3.0}};
    const ComplexMatrix b{{0.0, 1.0}, {1.0, 0.0}};
    const auto ab = a * b;
    CHECK(ab(0, 0) == Complex(0, 1));
    CHECK(ab(0, 1) == Complex(1, 0));
    CHECK(ab(1, 0) == Complex(3, 0));
    CHECK(a.adjoint()(0, 1) == Complex(2, 0));
    CHECK(a.adjoint()(1, 0) == Complex(0, -1));
    CHECK(a.transpose()(1, 0) == Complex(0, 1));
    CHECK(a.trace() == Complex(4, 0));
    CHECK(max_abs_diff(a + b - b, a) == 0.0);
    CHECK(hermiticity_defect(b) == 0.0);
    CHECK(hermiticity_defect(a) > 1.0);
    CHECK(kind_of([] { ComplexMatrix(2, 2, std::vector<Complex>(3)); }) == ErrorKind::BadShape);
}

TEST_CASE("density matrix validation order and messages") {
    CHECK(kind_of([] { DensityMatrix(ComplexMatrix(2, 3)); }) == ErrorKind::BadShape);
    CHECK(kind_of([] { DensityMatrix(ComplexMatrix{{0.5, 0.1}, {0.2, 0.5}}); }) == ErrorKind::NotHermitian);
    CHECK(kind_of([] { DensityMatrix(ComplexMatrix{{0.6, 0.0}, {0.0, 0.5}}); }) == ErrorKind::BadTrace);
    CHECK(kind_of([] { DensityMatrix(ComplexMatrix{{1.2, 0.0}, {0.0, -0.2}}); }) == ErrorKind::NotPSD);
    try {
        DensityMatrix(ComplexMatrix{{1.2, 0.0}, {0.0, -0.2}});
    } catch (const Error& e) {
        CHECK(std::string(e.what()).rfind("NotPSD: ", 0) == 0);
    }
    const DensityMatrix ok(ComplexMatrix{{0.5, Complex(0, 0.25)}, {Complex(0, -0.25), 0.5}});
    CHECK(ok.dim() == 2);
    CHECK(ok.purity() == doctest::Approx(0.625));
}

TEST_CASE("pure states") {
    CHECK(kind_of([] { PureState({1.0, 1.0}); }) == ErrorKind::NotNormalized);
    const auto plus = PureState::maximally_coherent(2);
    CHECK(std::abs(plus[0] - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(DensityMatrix::from_pure(plus).purity() == doctest::Approx(1.0));
    const auto e1 = PureState::basis(3, 1);
    CHECK(inner(e1.amps(), e1.amps()) == Complex(1, 0));
    CHECK(std::abs(inner(plus.amps(), PureState::basis(2, 0).amps()) - 1.0 / std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("eigh agrees with an independent eigensolver") {
    Rng rng(7);
    for (std::size_t d = 1; d <= 8; ++d) {
        for (int rep = 0; rep < 20; ++rep) {
            const auto h = coa::test::random_hermitian(d, rng);
            const auto r = eigh(h);
            const auto oracle = oracle_eigenvalues(h);
            for (std::size_t k = 0; k < d; ++k) CHECK(std::abs(r.values[k] - oracle[k]) < 1e-10);
            for (std::size_t k = 1; k < d; ++k) CHECK(r.values[k - 1] >= r.values[k]);
            // Orthonormal columns.
            CHECK(max_abs_diff(r.vectors.adjoint() * r.vectors, ComplexMatrix::identity(d)) < 1e-10);
            // V diag(lambda) V^dagger = H.
            const auto recon = r.vectors * ComplexMatrix::diagonal(r.values) * r.vectors.adjoint();
            CHECK(max_abs_diff(recon, h) < 1e-10);
        }
    }
}

TEST_CASE("eigh on fixed inputs") {
    const auto r = eigh(ComplexMatrix::diagonal(std::vector<double>{0.25, 0.75}));
    CHECK(r.values[0] == doctest::Approx(0.75));
    CHECK(r.values[1] == doctest::Approx(0.25));
    CHECK(std::abs(std::abs(r.vectors(1, 0)) - 1.0) < 1e-15);
    const auto id = eigh(ComplexMatrix::identity(2));
    CHECK(id.values[0] == doctest::Approx(1.0));
    CHECK(id.values[1] == doctest::Approx(1.0));
    CHECK(max_abs_diff(id.vectors.adjoint() * id.vectors, ComplexMatrix::identity(2)) < 1e-14);
    CHECK(kind_of([] { eigh(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}); }) == ErrorKind::NotHermitian);
}

TEST_CASE("spectral decomposition reassembles the state") {
    Rng rng(11);
    for (std::size_t d = 2; d <= 5; ++d) {
        const auto rho = coa::test::random_state(d, rng, 2);
        const auto sd = spectral_decomposition(rho);
        double sum = 0.0;
        ComplexMatrix m(d, d);
        for (std::size_t k = 0; k < sd.eigenvalues.size(); ++k) {
            CHECK(sd.eigenvalues[k] >= 0.0);
            sum += sd.eigenvalues[k];
            m += sd.eigenvectors[k].projector() * Complex(sd.eigenvalues[k]);
        }
        CHECK(sum == doctest::Approx(1.0));
        CHECK(max_abs_diff(m, rho.mat()) < 1e-10);
    }
}

TEST_CASE("entropies") {
    CHECK(shannon_entropy(std::vector<double>{0.75, 0.25}) == doctest::Approx(0.8112781244591328).epsilon(1e-14));
    CHECK(shannon_entropy(std::vector<double>{1.0, 0.0}) == 0.0);
    CHECK(shannon_entropy(std::vector<double>{0.25, 0.25, 0.25, 0.25}) == doctest::Approx(2.0));
    CHECK(kind_of([] { shannon_entropy(std::vector<double>{0.7, 0.7}); }) == ErrorKind::InvalidDistribution);
    CHECK(kind_of([] { shannon_entropy(std::vector<double>{1.5, -0.5}); }) == ErrorKind::InvalidDistribution);
    CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed(4)) == doctest::Approx(2.0));
    CHECK(std::abs(von_neumann_entropy(DensityMatrix::from_pure(PureState::maximally_coherent(3)))) < 1e-12);
}

TEST_CASE("bipartite maps") {
    // Bell state (|00> + |11>)/sqrt 2.
    const double r = 1.0 / std::sqrt(2.0);
    const PureState bell({r, 0.0, 0.0, r});
    const auto pt = partial_transpose(bell.projector(), 2, 2, Subsystem::B);
    const auto ev = oracle_eigenvalues(pt);
    CHECK(ev.back() == doctest::Approx(-0.5));
    const auto pt_a = partial_transpose(bell.projector(), 2, 2, Subsystem::A);
    CHECK(oracle_eigenvalues(pt_a).back() == doctest::Approx(-0.5));
    // Transposing both sides is the full transpose.
    Rng rng(3);
    const auto m = coa::test::ginibre(6, 6, rng);
    const auto both = partial_transpose(partial_transpose(m, 2, 3, Subsystem::A), 2, 3, Subsystem::B);
    CHECK(max_abs_diff(both, m.transpose()) < 1e-15);

    const auto a = coa::test::random_state(2, rng).mat();
    const auto b = coa::test::random_state(3, rng).mat();
    const auto ab = tensor(a, b);
    CHECK(max_abs_diff(partial_trace(ab, 2, 3, Subsystem::B), a) < 1e-14);
    CHECK(max_abs_diff(partial_trace(ab, 2, 3, Subsystem::A), b) < 1e-14);
    CHECK(max_abs_diff(partial_trace(bell.projector(), 2, 2, Subsystem::A), ComplexMatrix::identity(2) * Complex(0.5)) <
          1e-15);
    CHECK(kind_of([&] { partial_transpose(m, 2, 2, Subsystem::B); }) == ErrorKind::BadDimension);
    CHECK(kind_of([&] { partial_trace(m, 4, 2, Subsystem::A); }) == ErrorKind::BadDimension);
}

TEST_CASE("tolerance profiles") {
    CHECK(Tolerances::profile("default").herm == 1e-9);
    CHECK(Tolerances::profile("strict").herm == doctest::Approx(1e-11));
    CHECK(Tolerances::profile("loose").herm == doctest::Approx(1e-7));
    CHECK(kind_of([] { Tolerances::profile("sloppy"); }) == ErrorKind::ParseError);
    ::setenv(kToleranceEnvVar, "strict", 1);
    CHECK(Tolerances::from_env().recon == doctest::Approx(1e-10));
    ::unsetenv(kToleranceEnvVar);
    CHECK(Tolerances::from_env().recon == 1e-8);
}
