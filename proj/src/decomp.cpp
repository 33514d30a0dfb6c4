#include "coa/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "local_search.hpp"

namespace coa {

Ensemble::Ensemble(std::vector<EnsembleMember> members) : members_(std::move(members)) {
    for (std::size_t k = 0; k < members_.size(); ++k) {
        const double p = members_[k].weight;
        if (!std::isfinite(p) || p < 0.0) {
            throw Error(ErrorKind::InvalidEnsemble, "member " + std::to_string(k) + " has weight " +
                                                        std::to_string(p));
        }
        if (members_[k].state.dim() != members_.front().state.dim()) {
            throw Error(ErrorKind::InvalidEnsemble, "member " + std::to_string(k) + " has dimension " +
                                                        std::to_string(members_[k].state.dim()));
        }
    }
}

Ensemble Ensemble::from_scaled_vectors(const std::vector<std::vector<Complex>>& vectors, double weight_cut) {
    std::vector<EnsembleMember> members;
    for (const auto& w : vectors) {
        const double p = detail::row_norm2(w);
        if (p > weight_cut) members.push_back({p, PureState::normalized(w)});
    }
    return Ensemble(std::move(members));
}

double Ensemble::total_weight() const {
    double s = 0.0;
    for (const auto& m : members_) s += m.weight;
    return s;
}

std::vector<std::vector<Complex>> Ensemble::scaled_vectors() const {
    std::vector<std::vector<Complex>> out;
    out.reserve(members_.size());
    for (const auto& m : members_) {
        const double root = std::sqrt(m.weight);
        std::vector<Complex> w(m.state.amps().begin(), m.state.amps().end());
        for (auto& x : w) x *= root;
        out.push_back(std::move(w));
    }
    return out;
}

double Ensemble::average_coherence(Measure m) const {
    double s = 0.0;
    for (const auto& member : members_) s += member.weight * coherence(member.state, m);
    return s;
}

// ---------------------------------------------------------------------------

double unitarity_defect(const ComplexMatrix& u) {
    if (!u.is_square()) throw Error(ErrorKind::BadShape, "unitarity of a non-square matrix");
    return max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(u.rows()));
}

MixingUnitary::MixingUnitary(ComplexMatrix u, double unit_tol) : u_(std::move(u)) {
    if (!u_.is_square() || u_.rows() == 0) throw Error(ErrorKind::NotUnitary, "mixing matrix must be square");
    const double defect = unitarity_defect(u_);
    if (defect > unit_tol) {
        std::ostringstream os;
        os << "unitarity defect " << defect << " exceeds " << unit_tol;
        throw Error(ErrorKind::NotUnitary, os.str());
    }
}

ComplexMatrix assemble_matrix(const Ensemble& e) {
    const std::size_t d = e.dim();
    ComplexMatrix out(d, d);
    for (const auto& m : e.members()) {
        const auto a = m.state.amps();
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) out(i, j) += m.weight * a[i] * std::conj(a[j]);
    }
    return out;
}

DensityMatrix assemble(const Ensemble& e, const Tolerances& tol) {
    if (e.empty()) throw Error(ErrorKind::InvalidEnsemble, "empty ensemble");
    const double total = e.total_weight();
    if (std::abs(total - 1.0) > tol.trace) {
        std::ostringstream os;
        os.precision(17);
        os << "weights sum to " << total;
        throw Error(ErrorKind::InvalidEnsemble, os.str());
    }
    return DensityMatrix(assemble_matrix(e), tol);
}

Ensemble spectral_ensemble(const DensityMatrix& rho, const Tolerances& tol) {
    auto sd = spectral_decomposition(rho, tol);
    std::vector<EnsembleMember> members;
    for (std::size_t s = 0; s < sd.eigenvalues.size(); ++s)
        if (sd.eigenvalues[s] > kSpectralCut) members.push_back({sd.eigenvalues[s], std::move(sd.eigenvectors[s])});
    return Ensemble(std::move(members));
}

Ensemble mix(const Ensemble& e, const MixingUnitary& u, double weight_cut) {
    if (u.size() < e.size()) {
        throw Error(ErrorKind::BadDimension, "mixing unitary of size " + std::to_string(u.size()) +
                                                 " cannot act on " + std::to_string(e.size()) + " members");
    }
    return Ensemble::from_scaled_vectors(detail::mixed_rows(e.scaled_vectors(), u.mat()), weight_cut);
}

Ensemble lemma1_decompose(const ComplexMatrix& a, const Tolerances& tol) {
    if (a.rows() != 2 || a.cols() != 2) throw Error(ErrorKind::BadShape, "qubit decomposition needs a 2x2 matrix");
    if (hermiticity_defect(a) > tol.herm) throw Error(ErrorKind::NotHermitian, "qubit decomposition input");
    const double a11 = a(0, 0).real(), a22 = a(1, 1).real();
    const Complex a12 = a(0, 1);
    const double mod12 = std::abs(a12);
    if (a11 < -kDiagCut || a22 < -kDiagCut) throw Error(ErrorKind::NotPSD, "negative diagonal entry");

    if (a11 <= kDiagCut || a22 <= kDiagCut) {
        if (mod12 > kDiagCut) throw Error(ErrorKind::ZeroDiagonal, "zero diagonal entry with nonzero coherence");
        std::vector<EnsembleMember> members;
        if (a11 > kWeightCut) members.push_back({a11, PureState::basis(2, 0)});
        if (a22 > kWeightCut) members.push_back({a22, PureState::basis(2, 1)});
        return Ensemble(std::move(members));
    }

    const double geo = std::sqrt(a11 * a22);
    if (mod12 > geo * (1.0 + 1e-9)) throw Error(ErrorKind::NotPSD, "|a12| exceeds sqrt(a11 a22)");
    const double ratio = std::min(mod12 / geo, 1.0);
    const double trace = a11 + a22;
    // arg(0) := 0
    const Complex phase = mod12 > 0.0 ? std::conj(a12) / mod12 : Complex{1.0};
    const double x = std::sqrt(a11 / trace), y = std::sqrt(a22 / trace);

    std::vector<EnsembleMember> members;
    const double p0 = 0.5 * (1.0 + ratio) * trace, p1 = 0.5 * (1.0 - ratio) * trace;
    if (p0 > kWeightCut) members.push_back({p0, PureState::normalized({x, y * phase})});
    if (p1 > kWeightCut) members.push_back({p1, PureState::normalized({x, -y * phase})});
    return Ensemble(std::move(members));
}

MixingUnitary haar_unitary(std::size_t m, Rng& rng) {
    if (m == 0) throw Error(ErrorKind::BadDimension, "unitary of size 0");
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix z(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) z(i, j) = Complex{gauss(rng), gauss(rng)} * (1.0 / std::numbers::sqrt2);

    // Modified Gram-Schmidt with one re-orthogonalization pass; the resulting
    // R has a positive real diagonal, which fixes the phase ambiguity of QR.
    for (std::size_t j = 0; j < m; ++j) {
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t k = 0; k < j; ++k) {
                Complex proj = 0.0;
                for (std::size_t i = 0; i < m; ++i) proj += std::conj(z(i, k)) * z(i, j);
                for (std::size_t i = 0; i < m; ++i) z(i, j) -= proj * z(i, k);
            }
        double n = 0.0;
        for (std::size_t i = 0; i < m; ++i) n += std::norm(z(i, j));
        n = std::sqrt(n);
        for (std::size_t i = 0; i < m; ++i) z(i, j) /= n;
    }
    return MixingUnitary(std::move(z));
}

// ---------------------------------------------------------------------------
// Equal-diagonal search

double diagonal_residual(const Ensemble& e, std::span<const double> target) {
    double worst = 0.0;
    for (const auto& m : e.members())
        for (std::size_t i = 0; i < target.size(); ++i)
            worst = std::max(worst, std::abs(std::norm(m.state[i]) - target[i]));
    return worst;
}

namespace {

double row_residual(std::span<const Complex> w, std::span<const double> target) {
    const double p = detail::row_norm2(w);
    if (p <= kWeightCut) return 0.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < target.size(); ++i) worst = std::max(worst, std::abs(std::norm(w[i]) / p - target[i]));
    return worst;
}

// Minimizes the worst member residual. Moves that keep the maximum and lower
// the summed residual of the two touched rows are accepted too, so the
// non-worst members keep improving until they can help the worst one.
void descend_residual(detail::Rows& rows, std::span<const double> target, std::size_t budget, Rng& rng,
                      std::vector<double>& history) {
    const std::size_t m = rows.size();
    if (m < 2) return;
    std::vector<double> res(m);
    for (std::size_t k = 0; k < m; ++k) res[k] = row_residual(rows[k], target);
    double current = *std::max_element(res.begin(), res.end());
    history.push_back(current);

    std::uniform_int_distribution<std::size_t> pick(0, m - 1);
    std::bernoulli_distribution target_worst(0.5);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    double step = 0.5;
    std::vector<Complex> wk, wl;
    for (std::size_t it = 0; it < budget && current > 0.0; ++it) {
        std::size_t k = target_worst(rng) ? static_cast<std::size_t>(std::max_element(res.begin(), res.end()) - res.begin())
                                          : pick(rng);
        std::size_t l = pick(rng);
        while (l == k) l = pick(rng);
        const double theta = step * gauss(rng);
        const detail::PlaneRotation r{k, l, std::cos(theta), std::polar(std::sin(theta), angle(rng))};
        wk = rows[k];
        wl = rows[l];
        detail::rotate(wk, wl, r);
        const double rk = row_residual(wk, target), rl = row_residual(wl, target);
        double next = std::max(rk, rl);
        for (std::size_t j = 0; j < m; ++j)
            if (j != k && j != l) next = std::max(next, res[j]);
        const bool better = next < current || (next <= current && rk + rl < res[k] + res[l]);
        if (better) {
            rows[k].swap(wk);
            rows[l].swap(wl);
            res[k] = rk;
            res[l] = rl;
            current = next;
            history.push_back(current);
            step = std::min(step * 1.5, std::numbers::pi / 2);
        } else {
            step = std::max(step * 0.95, 1e-10);
        }
    }
}

}  // namespace

EqualDiagonalResult equal_diagonal_search(const DensityMatrix& rho, std::size_t ensemble_size, std::size_t budget,
                                          std::uint64_t seed, const Tolerances& tol) {
    const auto target = rho.diagonal();
    Ensemble spectral = spectral_ensemble(rho, tol);

    EqualDiagonalResult out;
    if (spectral.size() <= 1) {
        out.ensemble = std::move(spectral);
        out.residual = diagonal_residual(out.ensemble, target);
        out.accepted_residuals.push_back(out.residual);
        return out;
    }
    if (rho.dim() == 2) {
        out.ensemble = lemma1_decompose(rho.mat(), tol);
        out.residual = diagonal_residual(out.ensemble, target);
        out.accepted_residuals.push_back(out.residual);
        return out;
    }

    Rng rng(seed);
    const std::size_t m = std::max(ensemble_size, spectral.size());
    const auto u = haar_unitary(m, rng);
    detail::Rows rows = detail::mixed_rows(detail::padded_rows(spectral, m), u.mat());

    // Maximizing the l1 average drives every heavy member toward the target
    // diagonal; the residual descent then polishes all members.
    detail::SearchOptions warm;
    warm.max_iters = budget / 2;
    warm.stall_iters = std::max<std::size_t>(warm.max_iters / 10, 500);
    detail::maximize_rows(rows, Measure::L1, warm, rng);
    descend_residual(rows, target, budget - warm.max_iters, rng, out.accepted_residuals);

    out.ensemble = Ensemble::from_scaled_vectors(rows);
    out.residual = diagonal_residual(out.ensemble, target);
    return out;
}

}  // namespace coa
