#include "coa/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace coa {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::NotHermitian: return "NotHermitian";
        case ErrorKind::NotPSD: return "NotPSD";
        case ErrorKind::BadTrace: return "BadTrace";
        case ErrorKind::BadShape: return "BadShape";
        case ErrorKind::BadDimension: return "BadDimension";
        case ErrorKind::NotNormalized: return "NotNormalized";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::InvalidDistribution: return "InvalidDistribution";
        case ErrorKind::InvalidEnsemble: return "InvalidEnsemble";
        case ErrorKind::NotUnitary: return "NotUnitary";
        case ErrorKind::ZeroDiagonal: return "ZeroDiagonal";
        case ErrorKind::NotMixed: return "NotMixed";
        case ErrorKind::NoCoordinatePair: return "NoCoordinatePair";
        case ErrorKind::NotPurification: return "NotPurification";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

Tolerances Tolerances::profile(const std::string& name) {
    Tolerances t;
    double scale = 1.0;
    if (name.empty() || name == "default") {
        return t;
    } else if (name == "strict") {
        scale = 1e-2;
    } else if (name == "loose") {
        scale = 1e2;
    } else {
        throw Error(ErrorKind::ParseError, "unknown tolerance profile '" + name + "'");
    }
    t.herm *= scale;
    t.trace *= scale;
    t.psd *= scale;
    t.recon *= scale;
    t.orth *= scale;
    t.norm *= scale;
    return t;
}

Tolerances Tolerances::from_env() {
    const char* value = std::getenv(kToleranceEnvVar);
    return profile(value ? value : "");
}

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
        std::ostringstream os;
        os << "expected " << rows_ * cols_ << " entries for a " << rows_ << "x" << cols_
           << " matrix, got " << entries_.size();
        throw Error(ErrorKind::BadShape, os.str());
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    entries_.reserve(rows_ * cols_);
    std::size_t r = 0;
    for (const auto& row : rows) {
        if (row.size() != cols_) {
            throw Error(ErrorKind::BadShape, "row " + std::to_string(r) + " has " +
                                                 std::to_string(row.size()) + " entries, expected " +
                                                 std::to_string(cols_));
        }
        entries_.insert(entries_.end(), row.begin(), row.end());
        ++r;
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> ket, std::span<const Complex> bra) {
    ComplexMatrix m(ket.size(), bra.size());
    for (std::size_t i = 0; i < ket.size(); ++i)
        for (std::size_t j = 0; j < bra.size(); ++j) m(i, j) = ket[i] * std::conj(bra[j]);
    return m;
}

std::vector<Complex> ComplexMatrix::column(std::size_t j) const {
    std::vector<Complex> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw Error(ErrorKind::BadShape, "matrix sum with mismatched shapes");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw Error(ErrorKind::BadShape, "matrix difference with mismatched shapes");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
    for (auto& x : entries_) x *= scale;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw Error(ErrorKind::BadShape, "matrix product with mismatched shapes");
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(ErrorKind::BadShape, "comparison of matrices with mismatched shapes");
    double worst = 0.0;
    for (std::size_t k = 0; k < a.entries().size(); ++k)
        worst = std::max(worst, std::abs(a.entries()[k] - b.entries()[k]));
    return worst;
}

double hermiticity_defect(const ComplexMatrix& m) {
    if (!m.is_square()) throw Error(ErrorKind::BadShape, "hermiticity of a non-square matrix");
    double worst = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i; j < m.cols(); ++j)
            worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    return worst;
}

// ---------------------------------------------------------------------------
// PureState

namespace {

double norm_squared(std::span<const Complex> v) {
    double s = 0.0;
    for (const auto& x : v) s += std::norm(x);
    return s;
}

}  // namespace

PureState::PureState(std::vector<Complex> amps, const Tolerances& tol) : amps_(std::move(amps)) {
    if (amps_.empty()) throw Error(ErrorKind::BadShape, "pure state of dimension 0");
    const double n2 = norm_squared(amps_);
    if (std::abs(n2 - 1.0) > tol.norm) {
        std::ostringstream os;
        os.precision(17);
        os << "squared norm " << n2;
        throw Error(ErrorKind::NotNormalized, os.str());
    }
}

PureState PureState::normalized(std::vector<Complex> amps) {
    const double n = std::sqrt(norm_squared(amps));
    if (amps.empty() || n == 0.0 || !std::isfinite(n))
        throw Error(ErrorKind::NotNormalized, "cannot normalize a zero vector");
    for (auto& a : amps) a /= n;
    PureState psi;
    psi.amps_ = std::move(amps);
    return psi;
}

PureState PureState::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) throw Error(ErrorKind::BadDimension, "basis index out of range");
    std::vector<Complex> amps(dim);
    amps[index] = 1.0;
    return PureState(std::move(amps));
}

PureState PureState::maximally_coherent(std::size_t dim) {
    if (dim == 0) throw Error(ErrorKind::BadShape, "pure state of dimension 0");
    return PureState(std::vector<Complex>(dim, 1.0 / std::sqrt(static_cast<double>(dim))));
}

ComplexMatrix PureState::projector() const { return ComplexMatrix::outer(amps_, amps_); }

Complex inner(std::span<const Complex> bra, std::span<const Complex> ket) {
    if (bra.size() != ket.size()) throw Error(ErrorKind::BadDimension, "inner product of mismatched vectors");
    Complex s = 0.0;
    for (std::size_t i = 0; i < bra.size(); ++i) s += std::conj(bra[i]) * ket[i];
    return s;
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(ComplexMatrix mat, const Tolerances& tol) : mat_(std::move(mat)) {
    if (mat_.rows() == 0 || !mat_.is_square()) {
        throw Error(ErrorKind::BadShape, "density matrix must be square and non-empty, got " +
                                             std::to_string(mat_.rows()) + "x" + std::to_string(mat_.cols()));
    }
    const std::size_t d = mat_.rows();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j)
            if (std::abs(mat_(i, j) - std::conj(mat_(j, i))) > tol.herm) {
                throw Error(ErrorKind::NotHermitian, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                                         ") differs from conj of (" + std::to_string(j) + "," +
                                                         std::to_string(i) + ")");
            }
    const Complex tr = mat_.trace();
    if (std::abs(tr - Complex{1.0}) > tol.trace) {
        std::ostringstream os;
        os.precision(17);
        os << "trace " << tr.real();
        if (tr.imag() != 0.0) os << (tr.imag() < 0 ? "" : "+") << tr.imag() << "i";
        throw Error(ErrorKind::BadTrace, os.str());
    }
    const auto eig = eigh(mat_, tol.herm);
    for (std::size_t k = 0; k < eig.values.size(); ++k)
        if (eig.values[k] < -tol.psd) {
            std::ostringstream os;
            os.precision(17);
            os << "eigenvalue " << k << " is " << eig.values[k];
            throw Error(ErrorKind::NotPSD, os.str());
        }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) { return DensityMatrix(psi.projector(), Trusted{}); }

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
    if (dim == 0) throw Error(ErrorKind::BadShape, "density matrix of dimension 0");
    return DensityMatrix(ComplexMatrix::identity(dim) * Complex{1.0 / static_cast<double>(dim)}, Trusted{});
}

DensityMatrix DensityMatrix::from_diagonal(std::span<const double> probs, const Tolerances& tol) {
    return DensityMatrix(ComplexMatrix::diagonal(probs), tol);
}

std::vector<double> DensityMatrix::diagonal() const {
    std::vector<double> out(dim());
    for (std::size_t i = 0; i < dim(); ++i) out[i] = mat_(i, i).real();
    return out;
}

double DensityMatrix::purity() const {
    // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
    double s = 0.0;
    for (const auto& x : mat_.entries()) s += std::norm(x);
    return s;
}

// ---------------------------------------------------------------------------
// Cyclic complex Jacobi

namespace {

constexpr int kMaxSweeps = 100;

// Rotate the largest-modulus component of each eigenvector onto the positive
// real axis so results are reproducible.
void fix_phase(ComplexMatrix& v, std::size_t col) {
    std::size_t best = 0;
    double best_mag = -1.0;
    for (std::size_t i = 0; i < v.rows(); ++i) {
        const double mag = std::abs(v(i, col));
        if (mag > best_mag + 1e-12) {
            best_mag = mag;
            best = i;
        }
    }
    if (best_mag <= 0.0) return;
    const Complex phase = std::conj(v(best, col)) / best_mag;
    for (std::size_t i = 0; i < v.rows(); ++i) v(i, col) *= phase;
    v(best, col) = best_mag;
}

}  // namespace

EighResult eigh(const ComplexMatrix& m, double herm_tol) {
    if (!m.is_square() || m.rows() == 0) throw Error(ErrorKind::BadShape, "eigh needs a non-empty square matrix");
    const double defect = hermiticity_defect(m);
    if (defect > herm_tol) {
        std::ostringstream os;
        os << "hermiticity defect " << defect << " exceeds " << herm_tol;
        throw Error(ErrorKind::NotHermitian, os.str());
    }

    const std::size_t n = m.rows();
    ComplexMatrix a = (m + m.adjoint()) * Complex{0.5};
    ComplexMatrix v = ComplexMatrix::identity(n);

    double scale = 0.0;
    for (const auto& x : a.entries()) scale += std::norm(x);

    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
        if (off <= 1e-30 * scale || off == 0.0) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;
                const Complex phase_conj = std::conj(apq) / mag;
                const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 0.5 / theta;
                } else {
                    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // J = diag(1, e^{-i phi}) * [[c, s], [-s, c]] on the (p, q) plane
                const Complex jpp = c, jpq = s, jqp = -s * phase_conj, jqq = c * phase_conj;

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * jpp + akq * jqp;
                    a(k, q) = akp * jpq + akq * jqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
                    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * jpp + vkq * jqp;
                    v(k, q) = vkp * jpq + vkq * jqq;
                }
            }
        }
    }
    if (!converged) {
        throw Error(ErrorKind::NoConvergence, "Jacobi iteration did not converge in " +
                                                  std::to_string(kMaxSweeps) + " sweeps");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x).real() > a(y, y).real(); });

    EighResult out{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
        fix_phase(out.vectors, k);
    }
    return out;
}

SpectralDecomposition spectral_decomposition(const DensityMatrix& rho, const Tolerances& tol) {
    auto eig = eigh(rho.mat(), tol.herm);
    SpectralDecomposition out;
    out.eigenvalues.reserve(eig.values.size());
    out.eigenvectors.reserve(eig.values.size());
    for (std::size_t k = 0; k < eig.values.size(); ++k) {
        double w = eig.values[k];
        if (w < 0.0) {
            if (w < -tol.psd) throw Error(ErrorKind::NotPSD, "negative eigenvalue in spectral decomposition");
            w = 0.0;
        }
        out.eigenvalues.push_back(w);
        out.eigenvectors.push_back(PureState::normalized(eig.vectors.column(k)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Entropies

double shannon_entropy(std::span<const double> p, const Tolerances& tol) {
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!(p[i] >= -tol.psd)) {
            throw Error(ErrorKind::InvalidDistribution, "entry " + std::to_string(i) + " is negative");
        }
        total += p[i];
    }
    if (std::abs(total - 1.0) > tol.trace) {
        std::ostringstream os;
        os.precision(17);
        os << "probabilities sum to " << total;
        throw Error(ErrorKind::InvalidDistribution, os.str());
    }
    double h = 0.0;
    for (double x : p) {
        x = std::clamp(x, 0.0, 1.0);
        if (x > 0.0) h -= x * std::log2(x);
    }
    return std::max(h, 0.0);
}

double von_neumann_entropy(const DensityMatrix& rho, const Tolerances& tol) {
    auto eig = eigh(rho.mat(), tol.herm);
    double h = 0.0;
    for (double w : eig.values) {
        if (w < -tol.psd) throw Error(ErrorKind::NotPSD, "negative eigenvalue in entropy");
        w = std::clamp(w, 0.0, 1.0);
        if (w > 0.0) h -= w * std::log2(w);
    }
    return std::max(h, 0.0);
}

// ---------------------------------------------------------------------------
// Bipartite maps

namespace {

void check_bipartite(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b) {
    if (!m.is_square() || dim_a == 0 || dim_b == 0 || m.rows() != dim_a * dim_b) {
        throw Error(ErrorKind::BadDimension, "matrix of size " + std::to_string(m.rows()) + "x" +
                                                 std::to_string(m.cols()) + " is not " + std::to_string(dim_a) +
                                                 "x" + std::to_string(dim_b) + " bipartite");
    }
}

}  // namespace

ComplexMatrix partial_transpose(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b, Subsystem which) {
    check_bipartite(m, dim_a, dim_b);
    ComplexMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < dim_a; ++i)
        for (std::size_t j = 0; j < dim_b; ++j)
            for (std::size_t k = 0; k < dim_a; ++k)
                for (std::size_t l = 0; l < dim_b; ++l) {
                    const std::size_t row = i * dim_b + j, col = k * dim_b + l;
                    out(row, col) = which == Subsystem::B ? m(i * dim_b + l, k * dim_b + j)
                                                          : m(k * dim_b + j, i * dim_b + l);
                }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b, Subsystem traced) {
    check_bipartite(m, dim_a, dim_b);
    if (traced == Subsystem::B) {
        ComplexMatrix out(dim_a, dim_a);
        for (std::size_t i = 0; i < dim_a; ++i)
            for (std::size_t k = 0; k < dim_a; ++k)
                for (std::size_t j = 0; j < dim_b; ++j) out(i, k) += m(i * dim_b + j, k * dim_b + j);
        return out;
    }
    ComplexMatrix out(dim_b, dim_b);
    for (std::size_t j = 0; j < dim_b; ++j)
        for (std::size_t l = 0; l < dim_b; ++l)
            for (std::size_t i = 0; i < dim_a; ++i) out(j, l) += m(i * dim_b + j, i * dim_b + l);
    return out;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

}  // namespace coa
