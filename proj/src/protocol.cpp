#include "coa/protocol.hpp"

#include <algorithm>
#include <sstream>

#include "local_search.hpp"

namespace coa {

Purification::Purification(std::size_t alice_dim, std::size_t bob_dim, PureState state)
    : alice_dim_(alice_dim), bob_dim_(bob_dim), state_(std::move(state)) {
    if (alice_dim_ == 0 || bob_dim_ == 0 || state_.dim() != alice_dim_ * bob_dim_) {
        throw Error(ErrorKind::BadDimension, "state of dimension " + std::to_string(state_.dim()) + " is not on " +
                                                 std::to_string(alice_dim_) + "x" + std::to_string(bob_dim_));
    }
}

Purification Purification::validated(std::size_t alice_dim, std::size_t bob_dim, PureState state,
                                     const DensityMatrix& source, const Tolerances& tol) {
    Purification p(alice_dim, bob_dim, std::move(state));
    if (source.dim() != alice_dim) throw Error(ErrorKind::BadDimension, "source state has the wrong dimension");
    const double err = max_abs_diff(p.alice_marginal(), source.mat());
    if (err > tol.recon) {
        std::ostringstream os;
        os << "Alice marginal differs from the source state by " << err;
        throw Error(ErrorKind::NotPurification, os.str());
    }
    return p;
}

ComplexMatrix Purification::alice_marginal() const {
    return partial_trace(state_.projector(), alice_dim_, bob_dim_, Subsystem::B);
}

std::vector<Complex> Purification::alice_branch(std::size_t b) const {
    std::vector<Complex> out(alice_dim_);
    for (std::size_t a = 0; a < alice_dim_; ++a) out[a] = state_[a * bob_dim_ + b];
    return out;
}

Purification purify(const DensityMatrix& rho, const Tolerances& tol) {
    const Ensemble spectral = spectral_ensemble(rho, tol);
    const std::size_t d = rho.dim(), m = spectral.size();
    std::vector<Complex> amps(d * m);
    const auto rows = spectral.scaled_vectors();
    for (std::size_t s = 0; s < m; ++s)
        for (std::size_t a = 0; a < d; ++a) amps[a * m + s] = rows[s][a];
    return Purification(d, m, PureState::normalized(std::move(amps)));
}

Purification demo_dim4_purification() {
    constexpr std::size_t d = 4;
    std::vector<Complex> amps(d * d);
    for (std::size_t i = 0; i < d; ++i)      // Bob index
        for (std::size_t j = 0; j < d; ++j)  // Alice index
            amps[j * d + i] = 0.5 * 0.5 * (i == j ? -1.0 : 1.0);
    return Purification(d, d, PureState(std::move(amps)));
}

// ---------------------------------------------------------------------------

MeasurementBasis::MeasurementBasis(std::vector<PureState> vectors, const Tolerances& tol)
    : vectors_(std::move(vectors)) {
    const std::size_t m = vectors_.size();
    if (m == 0) throw Error(ErrorKind::NotUnitary, "empty measurement basis");
    for (std::size_t k = 0; k < m; ++k) {
        if (vectors_[k].dim() != m) {
            throw Error(ErrorKind::NotUnitary, "basis has " + std::to_string(m) + " vectors of dimension " +
                                                   std::to_string(vectors_[k].dim()));
        }
        for (std::size_t l = k; l < m; ++l) {
            const Complex g = inner(vectors_[k].amps(), vectors_[l].amps());
            if (std::abs(g - (k == l ? Complex{1.0} : Complex{})) > tol.orth) {
                throw Error(ErrorKind::NotUnitary, "basis vectors " + std::to_string(k) + " and " +
                                                       std::to_string(l) + " are not orthonormal");
            }
        }
    }
}

MeasurementBasis MeasurementBasis::computational(std::size_t dim) {
    std::vector<PureState> v;
    for (std::size_t k = 0; k < dim; ++k) v.push_back(PureState::basis(dim, k));
    return MeasurementBasis(std::move(v));
}

MeasurementBasis MeasurementBasis::from_rows_conj(const ComplexMatrix& u, const Tolerances& tol) {
    std::vector<PureState> v;
    for (std::size_t k = 0; k < u.rows(); ++k) {
        std::vector<Complex> b(u.cols());
        for (std::size_t j = 0; j < u.cols(); ++j) b[j] = std::conj(u(k, j));
        v.push_back(PureState::normalized(std::move(b)));
    }
    return MeasurementBasis(std::move(v), tol);
}

Ensemble measure_bob(const Purification& p, const MeasurementBasis& basis) {
    if (basis.dim() != p.bob_dim()) {
        throw Error(ErrorKind::BadDimension, "basis of dimension " + std::to_string(basis.dim()) +
                                                 " for a Bob system of dimension " + std::to_string(p.bob_dim()));
    }
    std::vector<std::vector<Complex>> branches(basis.dim(), std::vector<Complex>(p.alice_dim()));
    for (std::size_t k = 0; k < basis.dim(); ++k) {
        const auto& b = basis.vectors()[k];
        for (std::size_t a = 0; a < p.alice_dim(); ++a)
            for (std::size_t j = 0; j < p.bob_dim(); ++j) branches[k][a] += std::conj(b[j]) * p.state()[a * p.bob_dim() + j];
    }
    return Ensemble::from_scaled_vectors(branches);
}

// ---------------------------------------------------------------------------

ProtocolReport run_protocol(const DensityMatrix& rho, BasisStrategy strategy, const OptimizerConfig& config,
                            const Tolerances& tol) {
    return run_protocol(rho, purify(rho, tol), strategy, config, tol);
}

ProtocolReport run_protocol(const DensityMatrix& rho, const Purification& purification, BasisStrategy strategy,
                            const OptimizerConfig& config, const Tolerances& tol) {
    const std::size_t m = purification.bob_dim();
    ProtocolReport out;
    out.initial_l1 = c_l1(rho);

    if (strategy == BasisStrategy::Computational || m == 1) {
        out.basis = MeasurementBasis::computational(m);
    } else {
        detail::Rows branches(m);
        for (std::size_t b = 0; b < m; ++b) branches[b] = purification.alice_branch(b);
        detail::SearchOptions opts;
        opts.max_iters = config.max_iters;
        opts.stall_tol = config.stall_tol;
        opts.stall_iters = config.stall_iters;

        double best_value = -1.0;
        ComplexMatrix best_u;
        const std::size_t restarts = std::max<std::size_t>(config.restarts, 1);
        Rng rng(config.seed);
        for (std::size_t r = 0; r < restarts; ++r) {
            ComplexMatrix u = r == 0 ? ComplexMatrix::identity(m) : haar_unitary(m, rng).mat();
            detail::Rows rows = detail::mixed_rows(branches, u);
            const auto result = detail::maximize_rows(rows, Measure::L1, opts, rng, &u);
            if (result.value > best_value) {
                best_value = result.value;
                best_u = std::move(u);
            }
        }
        out.basis = MeasurementBasis::from_rows_conj(best_u, tol);
    }
    out.ensemble = measure_bob(purification, out.basis);
    out.final_average_l1 = out.ensemble.average_coherence(Measure::L1);
    out.gain = out.final_average_l1 - out.initial_l1;
    return out;
}

}  // namespace coa
