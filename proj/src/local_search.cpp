#include "local_search.hpp"

#include <cmath>
#include <numbers>

namespace coa::detail {

void rotate(std::vector<Complex>& wk, std::vector<Complex>& wl, const PlaneRotation& r) {
    const Complex sc = std::conj(r.s);
    for (std::size_t i = 0; i < wk.size(); ++i) {
        const Complex a = wk[i], b = wl[i];
        wk[i] = r.c * a - sc * b;
        wl[i] = r.s * a + r.c * b;
    }
}

void rotate_rows(ComplexMatrix& m, const PlaneRotation& r) {
    const Complex sc = std::conj(r.s);
    for (std::size_t j = 0; j < m.cols(); ++j) {
        const Complex a = m(r.k, j), b = m(r.l, j);
        m(r.k, j) = r.c * a - sc * b;
        m(r.l, j) = r.s * a + r.c * b;
    }
}

PlaneRotation random_rotation(std::size_t m, double step, Rng& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, m - 1);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    const std::size_t k = pick(rng);
    std::size_t l = pick(rng);
    while (l == k) l = pick(rng);
    const double theta = step * gauss(rng);
    const double phi = angle(rng);
    return {k, l, std::cos(theta), std::polar(std::sin(theta), phi)};
}

double row_norm2(std::span<const Complex> w) {
    double s = 0.0;
    for (const auto& x : w) s += std::norm(x);
    return s;
}

double row_l1(std::span<const Complex> w) {
    double sum_abs = 0.0, sum_sq = 0.0;
    for (const auto& x : w) {
        sum_abs += std::abs(x);
        sum_sq += std::norm(x);
    }
    return sum_abs * sum_abs - sum_sq;
}

double row_rel_ent(std::span<const Complex> w) {
    const double p = row_norm2(w);
    if (p <= 0.0) return 0.0;
    double h = 0.0;
    for (const auto& x : w) {
        const double q = std::norm(x);
        if (q > 0.0) h -= q * std::log2(q / p);
    }
    return h;
}

double row_value(std::span<const Complex> w, Measure m) {
    return m == Measure::L1 ? row_l1(w) : row_rel_ent(w);
}

SearchOutcome maximize_rows(Rows& rows, Measure measure, const SearchOptions& opts, Rng& rng,
                            ComplexMatrix* tag) {
    SearchOutcome out;
    const std::size_t m = rows.size();
    std::vector<double> values(m);
    double total = 0.0;
    for (std::size_t k = 0; k < m; ++k) total += values[k] = row_value(rows[k], measure);
    out.value = total;
    if (m < 2) {
        out.converged = true;
        return out;
    }

    double step = opts.initial_step;
    double reference = total;
    std::size_t since_improvement = 0;
    std::vector<Complex> wk, wl;
    for (std::size_t it = 0; it < opts.max_iters; ++it) {
        out.iterations = it + 1;
        const PlaneRotation r = random_rotation(m, step, rng);
        wk = rows[r.k];
        wl = rows[r.l];
        rotate(wk, wl, r);
        const double vk = row_value(wk, measure), vl = row_value(wl, measure);
        const double delta = (vk + vl) - (values[r.k] + values[r.l]);
        if (delta > 0.0) {
            rows[r.k].swap(wk);
            rows[r.l].swap(wl);
            values[r.k] = vk;
            values[r.l] = vl;
            total += delta;
            if (tag) rotate_rows(*tag, r);
            step = std::min(step * 1.5, std::numbers::pi / 2);
        } else {
            step = std::max(step * 0.95, opts.min_step);
        }
        if (total > reference + opts.stall_tol) {
            reference = total;
            since_improvement = 0;
        } else if (++since_improvement >= opts.stall_iters) {
            out.converged = true;
            break;
        }
    }
    total = 0.0;
    for (double v : values) total += v;
    out.value = total;
    return out;
}

Rows padded_rows(const Ensemble& e, std::size_t m) {
    Rows rows = e.scaled_vectors();
    rows.resize(std::max(m, rows.size()), std::vector<Complex>(e.dim()));
    return rows;
}

Rows mixed_rows(const Rows& v, const ComplexMatrix& u) {
    const std::size_t m = u.rows();
    const std::size_t d = v.empty() ? 0 : v.front().size();
    Rows out(m, std::vector<Complex>(d));
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < std::min(v.size(), u.cols()); ++l) {
            const Complex ukl = u(k, l);
            if (ukl == Complex{}) continue;
            for (std::size_t i = 0; i < d; ++i) out[k][i] += ukl * v[l][i];
        }
    return out;
}

}  // namespace coa::detail
