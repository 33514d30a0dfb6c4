#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "coa/decomp.hpp"
#include "coa/qmat.hpp"

namespace coa::test {

inline Complex gaussian_complex(Rng& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    const double re = n(rng);
    return {re, n(rng)};
}

inline ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
    ComplexMatrix g(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) g(i, j) = gaussian_complex(rng);
    return g;
}

inline ComplexMatrix random_hermitian(std::size_t d, Rng& rng) {
    const auto g = ginibre(d, d, rng);
    return (g + g.adjoint()) * Complex(0.5);
}

// G G^dagger / tr with G of shape d x rank.
inline DensityMatrix random_state(std::size_t d, Rng& rng, std::size_t rank = 0) {
    const auto g = ginibre(d, rank ? rank : d, rng);
    auto m = g * g.adjoint();
    m *= Complex(1.0 / m.trace().real());
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) m(j, i) = std::conj(m(i, j));
    for (std::size_t i = 0; i < d; ++i) m(i, i) = m(i, i).real();
    return DensityMatrix(m);
}

// Full-rank state with smallest eigenvalue at least floor.
inline DensityMatrix random_full_rank_state(std::size_t d, Rng& rng, double floor) {
    const auto base = random_state(d, rng);
    const double eps = floor * static_cast<double>(d);
    auto m = base.mat() * Complex(1.0 - eps) + ComplexMatrix::identity(d) * Complex(floor);
    return DensityMatrix(m);
}

inline PureState random_pure(std::size_t d, Rng& rng) {
    std::vector<Complex> v(d);
    for (auto& z : v) z = gaussian_complex(rng);
    return PureState::normalized(std::move(v));
}

inline Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
    Eigen::MatrixXcd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
    return e;
}

// Independent oracle: eigenvalues in descending order.
inline std::vector<double> oracle_eigenvalues(const ComplexMatrix& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(m));
    std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(out.rbegin(), out.rend());
    return out;
}

inline double oracle_l1(const Eigen::MatrixXcd& m) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (i != j) s += std::abs(m(i, j));
    return s;
}

inline double oracle_shannon(const std::vector<double>& p) {
    double h = 0.0;
    for (double x : p)
        if (x > 0) h -= x * std::log2(x);
    return h;
}

// Relative entropy of coherence from Eigen eigenvalues: S(diag) - S(rho).
inline double oracle_rel_ent(const ComplexMatrix& m) {
    std::vector<double> diag(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) diag[i] = m(i, i).real();
    auto ev = oracle_eigenvalues(m);
    for (auto& x : ev) x = std::max(x, 0.0);
    return oracle_shannon(diag) - oracle_shannon(ev);
}

inline ComplexMatrix oracle_assemble(const Ensemble& e) {
    ComplexMatrix m(e.dim(), e.dim());
    for (const auto& mem : e.members()) m += mem.state.projector() * Complex(mem.weight);
    return m;
}

}  // namespace coa::test
