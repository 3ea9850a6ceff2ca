#pragma once

#include "l2approx/finitize.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace l2approx {

/// dim ker of a finite model, normalized by N.
struct KernelDimension {
    Rational value;          // exact when `exact`, otherwise the thresholded count over N
    std::int64_t nullity = 0;
    std::int64_t normalization = 1;
    bool exact = false;
    /// "modular", "elimination" or "threshold".
    std::string method;
};

/// (cols - rank)/N by exact rank; refuses float coefficients.
KernelDimension exact_kernel_dim(const FiniteModel& m);
/// Float fallback: counts singular values of M (eigenvalues of M*M) below N*|M|*1e-10.
KernelDimension threshold_kernel_dim(const FiniteModel& m);

/// Ascending eigenvalues of a Hermitian model (exact Hermitian check for exact tags).
std::vector<double> eigenvalues(const FiniteModel& m);

/// Step function F(lambda) = (1/N) #{eigenvalues <= lambda} of a PSD model.
class SpectralDensity {
public:
    SpectralDensity(std::int64_t normalization, int blocks, std::int64_t zero_count, bool exact_zero,
                    std::vector<double> eigenvalues);

    std::int64_t normalization() const { return n_; }
    int blocks() const { return d_; }
    std::int64_t zero_count() const { return zeros_; }
    bool exact_zero_count() const { return exact_zero_; }
    /// All d*N eigenvalues ascending; the first zero_count() are treated as exact zeros.
    const std::vector<double>& eigenvalues() const { return values_; }

    double operator()(double lambda) const;
    /// Right-open value F(lambda^-) = (1/N) #{eigenvalues < lambda}.
    double left_limit(double lambda) const;
    /// F(0) as an exact rational when the zero count is exact.
    Rational kernel_dimension() const { return ratio(Integer(static_cast<long>(zeros_)), Integer(static_cast<long>(n_))); }
    /// (1/N) sum of ln over the nonzero eigenvalues; 0 when all vanish.
    double log_det() const;
    /// (lambda, F) at every jump point.
    void write_csv(std::ostream& os) const;

private:
    std::int64_t n_;
    int d_;
    std::int64_t zeros_;
    bool exact_zero_;
    std::vector<double> values_;
};

/// Density of a square PSD model. `zero_count` overrides the kernel size (from an exact rank);
/// otherwise exact tags use exact rank and float tags use thresholding.
SpectralDensity density(const FiniteModel& m, std::optional<std::int64_t> zero_count = std::nullopt);

/// Density of Delta[i] = B[i]* B[i], with the zero count taken from the exact rank of B[i].
SpectralDensity laplacian_density(const FiniteModel& b);

struct LogDet {
    double value = 0.0;
    /// True when every eigenvalue was zero (empty product).
    bool all_zero = false;
    bool exact_zero_count = false;
};

LogDet log_det(const SpectralDensity& f);

/// (C + d ln K) / (-ln(lambda/K)) for 0 < lambda < K, K >= 1.
double density_bound(double lambda, double K, int d, double C = 0.0);

/// Polynomial with chi_[0,lambda] <= p <= (1/n) chi_[0,K] + chi_[0,lambda+1/n] on [0,K].
struct SandwichPolynomial {
    double lambda = 0.0;
    double K = 1.0;
    int requested_n = 1;
    int n = 1;  // achieved
    /// Chebyshev coefficients on [0, K].
    std::vector<double> coefficients;
    int grid_size = 0;
    /// Largest violation of either inequality on the grid (<= 0 means none).
    double max_violation = 0.0;
    /// Smallest slack of either inequality on the grid.
    double margin = 0.0;

    int degree() const { return static_cast<int>(coefficients.size()) - 1; }
    double operator()(double x) const;
    bool verified() const { return max_violation <= 0.0; }
};

SandwichPolynomial sandwich_poly(double lambda, int n, double K, int grid_size = 10000, int max_degree = 8192);

/// (1/N) sum_j p(lambda_j) over all eigenvalues (zeros evaluated at 0).
double normalized_trace(const SpectralDensity& f, const SandwichPolynomial& p);

/// Pointwise limsup / liminf of densities over a tail of levels.
class DensityEnvelope {
public:
    explicit DensityEnvelope(std::vector<SpectralDensity> levels);

    const std::vector<SpectralDensity>& levels() const { return levels_; }
    /// sup over levels i >= tail of F_i(lambda).
    double limsup(double lambda, std::size_t tail = 0) const;
    double liminf(double lambda, std::size_t tail = 0) const;
    /// F^+(lambda) = lim_{eps->0+} limsup F_i(lambda + eps), evaluated just right of lambda.
    double f_plus(double lambda, std::size_t tail = 0) const;

private:
    std::vector<SpectralDensity> levels_;
};

DensityEnvelope envelope(std::vector<SpectralDensity> levels);

/// Power iteration on M*M; returns |Mx|/|x|, a lower bound for the operator norm.
double norm_lower_bound(const FiniteModel& m, int iterations = 200);

}  // namespace l2approx
