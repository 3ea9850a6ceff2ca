#include "l2approx/spectra.hpp"

#include "l2approx/eigen.hpp"
#include "l2approx/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>

namespace l2approx {

KernelDimension exact_kernel_dim(const FiniteModel& m) {
    if (!m.exact()) {
        throw Error("exact kernel dimension refuses float coefficients; use threshold_kernel_dim (inexact)");
    }
    const RankResult r = exact_rank(m.matrix());
    KernelDimension k;
    k.nullity = m.cols() - r.rank;
    k.normalization = m.normalization();
    k.value = ratio(Integer(static_cast<long>(k.nullity)), Integer(static_cast<long>(m.normalization())));
    k.exact = true;
    k.method = r.modular ? "modular" : "elimination";
    return k;
}

namespace {

std::vector<double> hermitian_spectrum(const FiniteModel& m) {
    if (m.embeds_real()) return symmetric_eigen(m.dense_real(), m.rows(), false).values;
    return hermitian_eigenvalues(m.dense_complex(), m.rows());
}

}  // namespace

std::vector<double> eigenvalues(const FiniteModel& m) {
    if (m.rows() != m.cols()) throw Error("eigenvalues need a square model");
    if (!m.is_hermitian()) throw Error("eigenvalues need a Hermitian model");
    return hermitian_spectrum(m);
}

KernelDimension threshold_kernel_dim(const FiniteModel& m) {
    const FiniteModel g = m.gram();
    const auto values = hermitian_spectrum(g);
    const double norm = values.empty() ? 0.0 : std::max(std::abs(values.front()), std::abs(values.back()));
    const double cut = static_cast<double>(m.normalization()) * norm * 1e-10;
    KernelDimension k;
    k.nullity = std::count_if(values.begin(), values.end(), [&](double v) { return std::abs(v) <= cut; });
    k.normalization = m.normalization();
    k.value = ratio(Integer(static_cast<long>(k.nullity)), Integer(static_cast<long>(m.normalization())));
    k.exact = false;
    k.method = "threshold";
    return k;
}

SpectralDensity::SpectralDensity(std::int64_t normalization, int blocks, std::int64_t zero_count, bool exact_zero,
                                 std::vector<double> eigenvalues)
    : n_(normalization), d_(blocks), zeros_(zero_count), exact_zero_(exact_zero), values_(std::move(eigenvalues)) {
    std::sort(values_.begin(), values_.end());
    if (zeros_ < 0 || zeros_ > static_cast<std::int64_t>(values_.size())) throw Error("zero count out of range");
}

double SpectralDensity::operator()(double lambda) const {
    if (lambda < 0.0) return 0.0;
    const auto nonzero_begin = values_.begin() + zeros_;
    const auto count = zeros_ + (std::upper_bound(nonzero_begin, values_.end(), lambda) - nonzero_begin);
    return static_cast<double>(count) / static_cast<double>(n_);
}

double SpectralDensity::left_limit(double lambda) const {
    if (lambda <= 0.0) return 0.0;
    const auto nonzero_begin = values_.begin() + zeros_;
    const auto count = zeros_ + (std::lower_bound(nonzero_begin, values_.end(), lambda) - nonzero_begin);
    return static_cast<double>(count) / static_cast<double>(n_);
}

double SpectralDensity::log_det() const {
    double acc = 0.0;
    for (auto it = values_.begin() + zeros_; it != values_.end(); ++it) acc += std::log(*it);
    return acc / static_cast<double>(n_);
}

void SpectralDensity::write_csv(std::ostream& os) const {
    os << "lambda,F\n";
    os.precision(17);
    if (zeros_ > 0) os << 0.0 << ',' << static_cast<double>(zeros_) / static_cast<double>(n_) << '\n';
    for (std::size_t i = static_cast<std::size_t>(zeros_); i < values_.size(); ++i) {
        if (i + 1 < values_.size() && values_[i + 1] == values_[i]) continue;
        os << values_[i] << ',' << (*this)(values_[i]) << '\n';
    }
}

SpectralDensity density(const FiniteModel& m, std::optional<std::int64_t> zero_count) {
    if (m.rows() != m.cols()) throw Error("density needs a square model");
    if (m.rows() % m.normalization() != 0) throw Error("density: size is not a multiple of N");
    auto values = eigenvalues(m);
    const double norm = values.empty() ? 0.0 : std::max(std::abs(values.front()), std::abs(values.back()));
    if (!values.empty() && values.front() < -1e-9 * std::max(norm, 1.0)) {
        throw Error("model is not positive semidefinite: eigenvalue " + std::to_string(values.front()));
    }
    bool exact = false;
    std::int64_t zeros = 0;
    if (zero_count) {
        zeros = *zero_count;
        exact = m.exact();
    } else if (m.exact()) {
        zeros = m.cols() - exact_rank(m.matrix()).rank;
        exact = true;
    } else {
        const double cut = static_cast<double>(m.normalization()) * norm * 1e-10;
        zeros = std::count_if(values.begin(), values.end(), [&](double v) { return std::abs(v) <= cut; });
    }
    return SpectralDensity(m.normalization(), m.block_cols(), zeros, exact, std::move(values));
}

SpectralDensity laplacian_density(const FiniteModel& b) {
    const FiniteModel delta = b.gram();
    if (b.exact()) return density(delta, exact_kernel_dim(b).nullity);
    return density(delta, threshold_kernel_dim(b).nullity);
}

LogDet log_det(const SpectralDensity& f) {
    LogDet r;
    r.value = f.log_det();
    r.all_zero = f.zero_count() == static_cast<std::int64_t>(f.eigenvalues().size());
    r.exact_zero_count = f.exact_zero_count();
    return r;
}

double density_bound(double lambda, double K, int d, double C) {
    if (!(K >= 1.0)) throw Error("density bound needs K >= 1");
    if (!(lambda > 0.0)) throw Error("density bound needs lambda > 0");
    if (!(lambda < K)) throw Error("density bound needs lambda < K");
    return (C + d * std::log(K)) / (-std::log(lambda / K));
}

// ---------------------------------------------------------------------------

double SandwichPolynomial::operator()(double x) const {
    if (coefficients.empty()) return 0.0;
    const double t = 2.0 * x / K - 1.0;
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t j = coefficients.size(); j-- > 1;) {
        const double b0 = coefficients[j] + 2.0 * t * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return coefficients[0] + t * b1 - b2;
}

namespace {

// Chebyshev interpolant of f on [0, K] at `count` first-kind nodes.
std::vector<double> chebyshev_fit(const auto& f, double K, int count) {
    std::vector<double> values(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        const double t = std::cos(std::numbers::pi * (k + 0.5) / count);
        values[static_cast<std::size_t>(k)] = f(0.5 * K * (t + 1.0));
    }
    // cos(pi j (2k+1) / (2 count)) from a table indexed modulo 4 count.
    const std::int64_t period = 4LL * count;
    std::vector<double> table(static_cast<std::size_t>(period));
    for (std::int64_t m = 0; m < period; ++m) table[static_cast<std::size_t>(m)] = std::cos(std::numbers::pi * m / (2.0 * count));
    std::vector<double> c(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) {
        double s = 0.0;
        for (int k = 0; k < count; ++k) {
            s += values[static_cast<std::size_t>(k)] * table[static_cast<std::size_t>((static_cast<std::int64_t>(j) * (2 * k + 1)) % period)];
        }
        c[static_cast<std::size_t>(j)] = (j == 0 ? 1.0 : 2.0) * s / count;
    }
    return c;
}

// Width-independent scale t with erfc(t)/2 = eps.
double erfc_scale(double eps) {
    double lo = 0.0, hi = 40.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (0.5 * std::erfc(mid) > eps ? lo : hi) = mid;
    }
    return hi;
}

void verify_sandwich(SandwichPolynomial& p) {
    double worst = -std::numeric_limits<double>::infinity();
    double margin = std::numeric_limits<double>::infinity();
    const double upper_extra = 1.0 / p.n;
    for (int i = 0; i < p.grid_size; ++i) {
        const double x = p.K * i / (p.grid_size - 1);
        const double v = p(x);
        const double lower = x <= p.lambda ? 1.0 : 0.0;
        const double upper = upper_extra + (x <= p.lambda + 1.0 / p.n ? 1.0 : 0.0);
        worst = std::max({worst, lower - v, v - upper});
        margin = std::min({margin, v - lower, upper - v});
    }
    p.max_violation = worst;
    p.margin = margin;
}

std::optional<SandwichPolynomial> try_sandwich(double lambda, int n, double K, int grid_size, int max_degree) {
    SandwichPolynomial p;
    p.lambda = lambda;
    p.K = K;
    p.n = n;
    p.grid_size = grid_size;
    if (n == 1 || lambda >= K) {
        p.coefficients = {1.0};
        verify_sandwich(p);
        return p;
    }
    const double eps1 = 1.0 / (8.0 * n);
    const double eps2 = 1.0 / (8.0 * n);
    const double centre = lambda + 0.5 / n;
    const double width = (0.5 / n) / erfc_scale(eps1);
    auto step = [&](double x) { return 0.5 * std::erfc((x - centre) / width); };
    const int check_points = 4 * grid_size;
    for (int count = 64; count <= max_degree + 1; count *= 2) {
        auto coeffs = chebyshev_fit(step, K, count);
        p.coefficients = coeffs;
        p.coefficients[0] = 0.0;
        double err = 0.0;
        for (int i = 0; i < check_points; ++i) {
            const double x = K * i / (check_points - 1);
            err = std::max(err, std::abs((p(x)) + coeffs[0] - step(x)));
        }
        if (err > eps2 / 2.0) continue;
        p.coefficients[0] = coeffs[0] + eps1 + eps2;
        // Drop negligible trailing coefficients.
        double tail = 0.0;
        std::size_t keep = p.coefficients.size();
        while (keep > 1 && tail + std::abs(p.coefficients[keep - 1]) < 1e-3 * eps2) tail += std::abs(p.coefficients[--keep]);
        p.coefficients.resize(keep);
        verify_sandwich(p);
        if (p.verified()) return p;
    }
    return std::nullopt;
}

}  // namespace

SandwichPolynomial sandwich_poly(double lambda, int n, double K, int grid_size, int max_degree) {
    if (!(lambda >= 0.0)) throw Error("sandwich polynomial needs lambda >= 0");
    if (n < 1) throw Error("sandwich polynomial needs n >= 1");
    if (!(K > 0.0)) throw Error("sandwich polynomial needs K > 0");
    if (grid_size < 2) throw Error("verification grid needs at least two points");
    for (int m = n; m >= 1; m = (m == 1 ? 0 : std::max(1, m / 2))) {
        if (auto p = try_sandwich(lambda, m, K, grid_size, max_degree)) {
            p->requested_n = n;
            return *p;
        }
        if (m == 1) break;
    }
    throw PrecisionError("sandwich polynomial construction failed");
}

double normalized_trace(const SpectralDensity& f, const SandwichPolynomial& p) {
    double acc = static_cast<double>(f.zero_count()) * p(0.0);
    const auto& v = f.eigenvalues();
    for (std::size_t i = static_cast<std::size_t>(f.zero_count()); i < v.size(); ++i) acc += p(v[i]);
    return acc / static_cast<double>(f.normalization());
}

// ---------------------------------------------------------------------------

DensityEnvelope::DensityEnvelope(std::vector<SpectralDensity> levels) : levels_(std::move(levels)) {
    if (levels_.size() < 2) throw Error("an envelope needs at least two levels");
}

double DensityEnvelope::limsup(double lambda, std::size_t tail) const {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = std::min(tail, levels_.size() - 1); i < levels_.size(); ++i) best = std::max(best, levels_[i](lambda));
    return best;
}

double DensityEnvelope::liminf(double lambda, std::size_t tail) const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = std::min(tail, levels_.size() - 1); i < levels_.size(); ++i) best = std::min(best, levels_[i](lambda));
    return best;
}

double DensityEnvelope::f_plus(double lambda, std::size_t tail) const {
    // Every level is constant on (lambda, next jump); probe inside the shortest such interval.
    double next = std::numeric_limits<double>::infinity();
    for (std::size_t i = std::min(tail, levels_.size() - 1); i < levels_.size(); ++i) {
        const auto& v = levels_[i].eigenvalues();
        auto it = std::upper_bound(v.begin() + levels_[i].zero_count(), v.end(), lambda);
        if (lambda < 0.0 && levels_[i].zero_count() > 0) next = std::min(next, 0.0);
        if (it != v.end()) next = std::min(next, *it);
    }
    const double probe = std::isfinite(next) ? lambda + 0.5 * (next - lambda) : lambda + 1.0;
    return limsup(probe, tail);
}

DensityEnvelope envelope(std::vector<SpectralDensity> levels) { return DensityEnvelope(std::move(levels)); }

// ---------------------------------------------------------------------------

double norm_lower_bound(const FiniteModel& m, int iterations) {
    const auto& data = m.matrix().data;
    std::vector<std::vector<std::pair<int, Complex>>> rows(data.size());
    for (std::size_t r = 0; r < data.size(); ++r)
        for (const auto& [c, v] : data[r]) rows[r].emplace_back(c, v.to_complex());
    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<Complex> x(static_cast<std::size_t>(m.cols()));
    for (auto& v : x) v = Complex(dist(rng), dist(rng));
    auto apply = [&](const std::vector<Complex>& in) {
        std::vector<Complex> out(rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (const auto& [c, v] : rows[r]) out[r] += v * in[static_cast<std::size_t>(c)];
        return out;
    };
    auto apply_adjoint = [&](const std::vector<Complex>& in) {
        std::vector<Complex> out(static_cast<std::size_t>(m.cols()));
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (const auto& [c, v] : rows[r]) out[static_cast<std::size_t>(c)] += std::conj(v) * in[r];
        return out;
    };
    auto norm = [](const std::vector<Complex>& v) {
        double s = 0.0;
        for (const auto& z : v) s += std::norm(z);
        return std::sqrt(s);
    };
    double best = 0.0;
    for (int it = 0; it < std::max(1, iterations); ++it) {
        const double nx = norm(x);
        if (nx == 0.0) break;
        for (auto& v : x) v /= nx;
        const auto y = apply(x);
        best = std::max(best, norm(y));
        x = apply_adjoint(y);
    }
    return best;
}

}  // namespace l2approx
