#pragma once

#include "l2approx/spectra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace l2approx {

/// Which finite models to build: a list of quotient maps or a list of Følner boxes.
class ApproximationScheme {
public:
    static ApproximationScheme quotients(std::vector<QuotientMap> maps);
    static ApproximationScheme quotients(const QuotientChain& chain);
    /// Boxes X_first..X_last.
    static ApproximationScheme folner(const GroupSpec& group, int first, int last);

    Scheme kind() const { return kind_; }
    std::size_t size() const { return kind_ == Scheme::Quotient ? maps_.size() : boxes_.size(); }
    const std::vector<QuotientMap>& maps() const { return maps_; }
    const std::vector<FolnerLevel>& boxes() const { return boxes_; }
    /// Chain index or box level of entry i.
    int level_label(std::size_t i) const;
    std::int64_t normalization(std::size_t i) const;

private:
    Scheme kind_ = Scheme::Quotient;
    std::vector<QuotientMap> maps_;
    std::vector<FolnerLevel> boxes_;
};

struct RunOptions {
    /// Eigenvalue work (log det, F on the grid). Kernel dimensions are always computed.
    bool spectra = true;
    /// Points at which F_i is recorded.
    std::vector<double> grid;
    bool keep_densities = false;
    /// Concurrent levels; 0 means hardware concurrency.
    int jobs = 0;
    Rational tol = Rational(1, 1000);
    std::int64_t max_side = kMaxModelSide;
};

struct LevelRecord {
    int level = 0;
    std::int64_t N = 0;
    KernelDimension dim;
    bool has_spectra = false;
    double log_det = 0.0;
    std::vector<double> F;
    KappaReport kappa;
    /// d |N_r(X)| / |X| on the Følner path, 0 on quotients.
    Rational error_term;
    /// Følner runs with a declared value: it lies in [max_{j>=i} dim_j, min_{j>=i} (dim_j + err_j)].
    std::optional<bool> in_bracket;
    double seconds = 0.0;
};

struct ApproximationRun {
    std::string source_hash;
    Scheme scheme = Scheme::Quotient;
    /// Columns of B, the block count of Delta.
    int d = 0;
    std::vector<double> grid;
    std::vector<LevelRecord> levels;
    std::vector<SpectralDensity> densities;
    std::optional<Rational> declared_limit;
    Rational tol;

    const LevelRecord& last() const;
    /// |dim_last - dim_prev|, absent with fewer than two levels.
    std::optional<Rational> cauchy_estimate() const;
    /// Successive difference < tol and 1/N_last < tol, or (Følner) dim_last + err_last < tol.
    bool converged() const;
    std::string convergence_reason() const;
    bool bracket_holds() const;

    /// level,N,dim,logdet,kappa,error_term,seconds; the seconds column stays empty without `timing`.
    void write_csv(std::ostream& os, bool timing = true) const;
};

/// Forms Delta = B* B and records dim_i ker at every level of the scheme.
ApproximationRun approximate_kernel_dim(const GroupRingMatrix& b, const ApproximationScheme& scheme,
                                        const RunOptions& options = {},
                                        std::optional<Rational> declared_limit = std::nullopt);

enum class Integrality { Integer, NotInteger, Indeterminate };

std::string to_string(Integrality v);

struct AtiyahVerdict {
    Integrality status = Integrality::Indeterminate;
    Integer nearest;
    Rational distance;
    Rational value;
    std::string message;
};

AtiyahVerdict check_atiyah_integrality(const ApproximationRun& run, const Rational& tol);

struct DetBoundLevel {
    int level = 0;
    std::int64_t N = 0;
    double log_det = 0.0;
    double margin = 0.0;
    bool holds = false;
    /// Density bound F(l) - F(0) <= d ln K / -ln(l/K) on the grid; only for rational matrices.
    int density_checks = 0;
    int density_violations = 0;
    double density_margin = 0.0;
};

struct DetBoundReport {
    Integer clearing_factor;
    bool integral_generator = true;
    std::optional<bool> normal_field;
    int embeddings = 1;
    int d = 0;
    /// ln kappa(sigma_k Delta) for every embedding, distinguished one included.
    std::vector<double> log_kappas;
    double rhs = 0.0;
    double K = 1.0;
    std::vector<DetBoundLevel> levels;
    bool holds = false;
    double margin = 0.0;
};

/// ln det of Delta[i] against -d sum_{k != distinguished} ln kappa(sigma_k Delta) after clearing denominators.
DetBoundReport verify_det_bound(const GroupRingMatrix& b, const ApproximationScheme& scheme,
                                const RunOptions& options = {});

struct ConjugateReport {
    int embedding = 0;
    ApproximationRun run;
    /// Threshold dims of the embedded complex matrix, one per level.
    std::vector<Rational> float_dims;
    Rational limit;
};

struct ContinuityReport {
    std::vector<ConjugateReport> conjugates;
    bool exact_equal = false;
    bool float_agrees = false;
};

ContinuityReport verify_algebraic_continuity(const GroupRingMatrix& b, const ApproximationScheme& scheme,
                                             const RunOptions& options = {});

struct GapLevel {
    int level = 0;
    std::int64_t N = 0;
    /// Distance from the level spectrum to [lo, hi].
    double margin = 0.0;
    double F_below = 0.0;
    double F_through = 0.0;
};

struct GapReport {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<GapLevel> levels;
    double margin = 0.0;
    /// The interval lies outside [-kappa, kappa].
    bool norm_certified = false;
    bool confirmed = false;
};

/// Spectra of the self-adjoint A[i] avoid [lo, hi]; throws with a witness when an eigenvalue lands inside.
GapReport spectrum_gap_check(const GroupRingMatrix& a, const ApproximationScheme& scheme, double lo, double hi,
                             const RunOptions& options = {});

/// A real number known through a rational enclosure, with rational approximants p_n/q_n.
struct LiouvilleTarget {
    std::string description;
    Rational lower;
    Rational upper;
    /// (p_n, q_n) for n = 1, 2, ...
    std::vector<std::pair<Integer, Integer>> approximants;
};

/// sum_j 10^{-j!}: approximants from the partial sums up to n_max, enclosure from the next term.
LiouvilleTarget liouville_constant(int n_max);

struct LiouvilleLevel {
    int n = 0;
    Integer p;
    Integer q;
    /// 0 < |lambda - p/q| <= q^-n over the whole enclosure.
    bool approximant_ok = false;
    /// ln s_n upper bound, (2 - 2n) ln q.
    double log_s = 0.0;
    /// ln of (q kappa(A) + |p|)^2, an upper bound of ln |V_n|.
    double log_norm_bound = 0.0;
    std::vector<double> log_kappa_v;
    double log_P = 0.0;
    double log_C = 0.0;
    double alpha = 0.0;
    /// Same quotient with sum_k ln kappa(sigma_k V_n) in place of r ln(P C).
    double alpha_sharp = 0.0;
};

struct LiouvilleCertificate {
    std::string target;
    Integer clearing_factor;
    int d = 0;
    int r = 1;
    std::vector<double> C_k;
    std::vector<LiouvilleLevel> levels;
    bool decreasing = false;
};

/// Bounds the eigenspace dimension of A at lambda for n = 2..n_max; throws when an approximant fails.
LiouvilleCertificate liouville_exclusion(const GroupRingMatrix& a, const LiouvilleTarget& target, int n_max);

}  // namespace l2approx
