#include "coa/assistance.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "local_search.hpp"

namespace coa {

std::string_view to_string(StateClassKind k) noexcept {
    switch (k) {
        case StateClassKind::S1PureIncoherent: return "S1";
        case StateClassKind::S2PureCoherent: return "S2";
        case StateClassKind::S3Mixed: return "S3";
    }
    return "?";
}

double upper_bound_l1(const DensityMatrix& rho) {
    double root_sum = 0.0, diag_sum = 0.0;
    for (double x : rho.diagonal()) {
        x = std::max(x, 0.0);
        root_sum += std::sqrt(x);
        diag_sum += x;
    }
    return std::max(root_sum * root_sum - diag_sum, 0.0);
}

double upper_bound_rel_ent(const DensityMatrix& rho, const Tolerances& tol) {
    return shannon_entropy(rho.diagonal(), tol);
}

double upper_bound(const DensityMatrix& rho, Measure m, const Tolerances& tol) {
    return m == Measure::L1 ? upper_bound_l1(rho) : upper_bound_rel_ent(rho, tol);
}

AssistanceResult analytic_ca_l1(const DensityMatrix& rho, std::size_t budget, std::uint64_t seed,
                                const Tolerances& tol) {
    if (rho.dim() > 3) {
        throw Error(ErrorKind::BadDimension,
                    "closed form holds for dimension <= 3, got " + std::to_string(rho.dim()));
    }
    AssistanceResult out;
    out.measure = Measure::L1;
    out.upper_bound = upper_bound_l1(rho);
    out.lower_bound = out.upper_bound;
    out.exact = true;
    out.converged = true;
    const auto target = rho.diagonal();
    if (rho.dim() == 2) {
        out.witness = lemma1_decompose(rho.mat(), tol);
        out.residual = diagonal_residual(out.witness, target);
    } else {
        auto search = equal_diagonal_search(rho, rho.dim() * rho.dim(), budget, seed, tol);
        out.witness = std::move(search.ensemble);
        out.residual = search.residual;
    }
    return out;
}

namespace {

Rng restart_rng(std::uint64_t seed, std::size_t restart) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(restart), 0x636f61u};
    return Rng(seq);
}

struct RestartOutcome {
    double value = -1.0;
    Ensemble witness;
    bool converged = false;
};

}  // namespace

AssistanceResult optimize_ca(const DensityMatrix& rho, Measure measure, const OptimizerConfig& config,
                             const Tolerances& tol) {
    const std::size_t d = rho.dim();
    Ensemble spectral = spectral_ensemble(rho, tol);
    const std::size_t m = config.ensemble_size ? config.ensemble_size : d * d;
    if (m < spectral.size()) {
        throw Error(ErrorKind::BadDimension, "ensemble size " + std::to_string(m) + " is below the rank " +
                                                 std::to_string(spectral.size()));
    }

    AssistanceResult out;
    out.measure = measure;
    out.upper_bound = upper_bound(rho, measure, tol);

    if (spectral.size() == 1) {
        out.witness = std::move(spectral);
        out.lower_bound = out.witness.average_coherence(measure);
        out.exact = true;
        out.converged = true;
        return out;
    }

    std::optional<Ensemble> structured;
    if (d == 2) {
        structured = lemma1_decompose(rho.mat(), tol);
    } else if (d == 3) {
        auto search = equal_diagonal_search(rho, m, config.seed_budget, config.seed, tol);
        out.residual = search.residual;
        structured = std::move(search.ensemble);
    }

    const std::size_t restarts = std::max<std::size_t>(config.restarts, 1);
    const detail::Rows spectral_rows = detail::padded_rows(spectral, m);
    detail::SearchOptions opts;
    opts.max_iters = config.max_iters;
    opts.stall_tol = config.stall_tol;
    opts.stall_iters = config.stall_iters;

    std::vector<RestartOutcome> outcomes(restarts);
    auto run = [&](std::size_t r) {
        Rng rng = restart_rng(config.seed, r);
        const bool use_structured = structured.has_value();
        detail::Rows rows;
        if (use_structured && r == 0) {
            rows = detail::padded_rows(*structured, m);
        } else if (r == (use_structured ? 1u : 0u)) {
            rows = spectral_rows;
        } else {
            rows = detail::mixed_rows(spectral_rows, haar_unitary(m, rng).mat());
        }
        const auto result = detail::maximize_rows(rows, measure, opts, rng);
        RestartOutcome& o = outcomes[r];
        o.witness = Ensemble::from_scaled_vectors(rows);
        o.value = o.witness.average_coherence(measure);
        o.converged = result.converged;
    };

    const std::size_t jobs = std::clamp<std::size_t>(config.jobs, 1, restarts);
    if (jobs == 1) {
        for (std::size_t r = 0; r < restarts; ++r) run(r);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t j = 0; j < jobs; ++j)
            pool.emplace_back([&] {
                for (std::size_t r = next++; r < restarts; r = next++) run(r);
            });
        for (auto& t : pool) t.join();
    }

    std::size_t best = 0;
    for (std::size_t r = 1; r < restarts; ++r)
        if (outcomes[r].value > outcomes[best].value) best = r;

    out.witness = std::move(outcomes[best].witness);
    out.lower_bound = outcomes[best].value;
    out.converged = outcomes[best].converged;
    out.restarts_used = restarts;
    out.exact = d <= 3;
    if (out.residual) out.residual = diagonal_residual(out.witness, rho.diagonal());
    return out;
}

SaturationResult saturation_check(const DensityMatrix& rho, std::size_t budget, std::uint64_t seed, double sat_tol,
                                  const Tolerances& tol) {
    auto search = equal_diagonal_search(rho, rho.dim() * rho.dim(), budget, seed, tol);
    SaturationResult out;
    out.residual = search.residual;
    out.saturated = search.residual <= sat_tol;
    out.ensemble = std::move(search.ensemble);
    out.average_l1 = out.ensemble.average_coherence(Measure::L1);
    return out;
}

// ---------------------------------------------------------------------------

Ensemble strict_increase_ensemble(const DensityMatrix& rho, const Tolerances& tol) {
    Ensemble spectral = spectral_ensemble(rho, tol);
    if (spectral.size() < 2) throw Error(ErrorKind::NotMixed, "state is pure");

    const std::size_t n = spectral.size(), d = rho.dim();
    std::size_t bs = 0, bt = 1, bi = 0, bj = 1;
    double best = -1.0;
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = s + 1; t < n; ++t)
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = i + 1; j < d; ++j) {
                    const auto& x = spectral[s].state;
                    const auto& y = spectral[t].state;
                    const double det = std::abs(x[i] * y[j] - x[j] * y[i]);
                    if (det > best) {
                        best = det;
                        bs = s, bt = t, bi = i, bj = j;
                    }
                }
    if (best <= kParTol) {
        throw Error(ErrorKind::NoCoordinatePair, "no pair of eigenvector subvectors is non-parallel");
    }

    const auto& ps = spectral[bs];
    const auto& pt = spectral[bt];
    // Case 1: the weighted (i, j) products already have different arguments,
    // so the triangle inequality is strict for the spectral ensemble itself.
    const Complex zs = ps.weight * std::conj(ps.state[bi]) * ps.state[bj];
    const Complex zt = pt.weight * std::conj(pt.state[bi]) * pt.state[bj];
    if (std::abs(zs) + std::abs(zt) - std::abs(zs + zt) > kParTol) return spectral;

    // Case 2: re-decompose the 2x2 compression of the (s, t) pair with the
    // qubit construction, whose two members have opposite (i, j) products,
    // and carry the connecting 2x2 unitary back to the full eigenvectors.
    const double rs = std::sqrt(ps.weight), rt = std::sqrt(pt.weight);
    // Columns are sqrt(lambda) times the subvectors.
    const ComplexMatrix x{{rs * ps.state[bi], rt * pt.state[bi]}, {rs * ps.state[bj], rt * pt.state[bj]}};
    const ComplexMatrix compressed = x * x.adjoint();
    const Ensemble sub = lemma1_decompose(compressed, tol);
    if (sub.size() != 2) throw Error(ErrorKind::NoCoordinatePair, "compressed pair is not full rank");

    ComplexMatrix phi(2, 2);
    for (std::size_t k = 0; k < 2; ++k) {
        const double root = std::sqrt(sub[k].weight);
        phi(0, k) = root * sub[k].state[0];
        phi(1, k) = root * sub[k].state[1];
    }
    const Complex det = x(0, 0) * x(1, 1) - x(0, 1) * x(1, 0);
    const ComplexMatrix x_inv{{x(1, 1) / det, -x(0, 1) / det}, {-x(1, 0) / det, x(0, 0) / det}};
    // Phi = X U^T, so U = (X^-1 Phi)^T.
    const ComplexMatrix u = (x_inv * phi).transpose();

    auto rows = spectral.scaled_vectors();
    const auto vs = rows[bs], vt = rows[bt];
    for (std::size_t i = 0; i < d; ++i) {
        rows[bs][i] = u(0, 0) * vs[i] + u(0, 1) * vt[i];
        rows[bt][i] = u(1, 0) * vs[i] + u(1, 1) * vt[i];
    }
    return Ensemble::from_scaled_vectors(rows);
}

StateClass classify(const DensityMatrix& rho, const AssistanceResult& l1, const AssistanceResult& rel_ent,
                    const Tolerances& tol) {
    StateClass out;
    const double base_l1 = c_l1(rho);
    if (rho.purity() > 1.0 - kPurityTol) {
        out.kind = base_l1 > kClassTol ? StateClassKind::S2PureCoherent : StateClassKind::S1PureIncoherent;
    } else {
        out.kind = StateClassKind::S3Mixed;
    }
    out.accessible_l1 = std::max(l1.lower_bound - base_l1, 0.0);
    out.accessible_rel_ent = std::max(rel_ent.lower_bound - c_rel_ent(rho, tol), 0.0);
    return out;
}

StateClass classify(const DensityMatrix& rho, const OptimizerConfig& config, const Tolerances& tol) {
    return classify(rho, optimize_ca(rho, Measure::L1, config, tol),
                    optimize_ca(rho, Measure::RelativeEntropy, config, tol), tol);
}

}  // namespace coa
