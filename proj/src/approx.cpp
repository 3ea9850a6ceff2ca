#include "l2approx/approx.hpp"

#include "l2approx/error.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

namespace l2approx {

ApproximationScheme ApproximationScheme::quotients(std::vector<QuotientMap> maps) {
    if (maps.empty()) throw Error("approximation scheme needs at least one level");
    for (std::size_t i = 1; i < maps.size(); ++i) {
        if (maps[i].source() != maps[0].source()) throw Error("quotient levels have different source groups");
        if (maps[i].image_size() <= maps[i - 1].image_size()) {
            throw Error("quotient levels must strictly increase in size (level " + std::to_string(i) + ")");
        }
    }
    ApproximationScheme s;
    s.kind_ = Scheme::Quotient;
    s.maps_ = std::move(maps);
    return s;
}

ApproximationScheme ApproximationScheme::quotients(const QuotientChain& chain) { return quotients(chain.levels()); }

ApproximationScheme ApproximationScheme::folner(const GroupSpec& group, int first, int last) {
    if (!group.is_amenable_model()) throw Error("no Følner exhaustion: free groups are not amenable");
    if (first < 1 || last < first) throw Error("Følner levels must satisfy 1 <= first <= last");
    ApproximationScheme s;
    s.kind_ = Scheme::Folner;
    for (int k = first; k <= last; ++k) {
        FolnerLevel box = build_folner(group, k);
        if (!s.boxes_.empty() && box.size() <= s.boxes_.back().size()) continue;
        s.boxes_.push_back(std::move(box));
    }
    return s;
}

int ApproximationScheme::level_label(std::size_t i) const {
    return kind_ == Scheme::Quotient ? static_cast<int>(i) : boxes_.at(i).level();
}

std::int64_t ApproximationScheme::normalization(std::size_t i) const {
    return kind_ == Scheme::Quotient ? static_cast<std::int64_t>(maps_.at(i).image_size())
                                     : static_cast<std::int64_t>(boxes_.at(i).size());
}

namespace {

using Clock = std::chrono::steady_clock;

// Runs fn(0..count-1) on up to `jobs` threads; errors are rethrown in index order.
template <class F>
void for_each_level(std::size_t count, int jobs, F fn) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers = std::min<std::size_t>(count, jobs > 0 ? static_cast<std::size_t>(jobs) : hw);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (;;) {
            const std::size_t i = next++;
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

FiniteModel model_at(const GroupRingMatrix& m, const ApproximationScheme& s, std::size_t i, std::int64_t max_side) {
    if (s.kind() == Scheme::Quotient) return quotient_model(m, s.maps()[i], static_cast<int>(i), max_side);
    return folner_model(m, s.boxes()[i], max_side);
}

KernelDimension kernel_dim(const FiniteModel& m) { return m.exact() ? exact_kernel_dim(m) : threshold_kernel_dim(m); }

GroupRingMatrix embedded_complex(const GroupRingMatrix& b) {
    GroupRingMatrix out(b.group(), Scalars::complex(), b.rows(), b.cols());
    for (int r = 0; r < b.rows(); ++r) {
        for (int c = 0; c < b.cols(); ++c) {
            for (const auto& [g, x] : b.at(r, c).terms()) out.add_term(r, c, g, Coefficient(x.to_complex()));
        }
    }
    return out;
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

}  // namespace

const LevelRecord& ApproximationRun::last() const {
    if (levels.empty()) throw Error("approximation run has no levels");
    return levels.back();
}

std::optional<Rational> ApproximationRun::cauchy_estimate() const {
    if (levels.size() < 2) return std::nullopt;
    return Rational(abs(levels.back().dim.value - levels[levels.size() - 2].dim.value));
}

bool ApproximationRun::converged() const {
    if (levels.empty()) return false;
    const auto& l = last();
    if (auto c = cauchy_estimate(); c && *c < tol && ratio(1, l.N) < tol) return true;
    return scheme == Scheme::Folner && l.dim.exact && l.dim.value + l.error_term < tol;
}

std::string ApproximationRun::convergence_reason() const {
    if (levels.empty()) return "no levels";
    const auto& l = last();
    const auto c = cauchy_estimate();
    if (c && *c < tol && ratio(1, l.N) < tol) {
        return "successive levels differ by " + to_string(*c) + " and 1/N = " + to_string(ratio(1, l.N)) +
               ", both below " + to_string(tol);
    }
    if (scheme == Scheme::Folner && l.dim.exact && l.dim.value + l.error_term < tol) {
        return "dim + error term = " + to_string(l.dim.value + l.error_term) + " below " + to_string(tol);
    }
    if (!c) return "a single level without a certifying error term";
    if (!(*c < tol)) return "successive levels differ by " + to_string(*c) + ", not below " + to_string(tol);
    return "1/N = " + to_string(ratio(1, l.N)) + " is not below " + to_string(tol);
}

bool ApproximationRun::bracket_holds() const {
    return std::all_of(levels.begin(), levels.end(), [](const LevelRecord& l) { return l.in_bracket.value_or(true); });
}

void ApproximationRun::write_csv(std::ostream& os, bool timing) const {
    os << "level,N,dim,logdet,kappa,error_term,seconds\n";
    for (const auto& l : levels) {
        os << l.level << ',' << l.N << ',' << to_string(l.dim.value) << ',' << (l.has_spectra ? fmt(l.log_det) : "")
           << ',' << fmt(l.kappa.kappa) << ',' << to_string(l.error_term) << ',' << (timing ? fmt(l.seconds) : "") << '\n';
    }
}

ApproximationRun approximate_kernel_dim(const GroupRingMatrix& b, const ApproximationScheme& scheme,
                                        const RunOptions& options, std::optional<Rational> declared_limit) {
    if (scheme.kind() == Scheme::Quotient && !b.exact()) {
        throw Error("the quotient path needs exact coefficients (rational or algebraic)");
    }
    if (scheme.kind() == Scheme::Folner && !b.group().is_amenable_model()) {
        throw Error("no Følner exhaustion: free groups are not amenable");
    }
    const GroupRingMatrix delta = b.laplacian();
    ApproximationRun run;
    run.source_hash = b.hash();
    run.scheme = scheme.kind();
    run.d = b.cols();
    run.grid = options.grid;
    run.declared_limit = declared_limit;
    run.tol = options.tol;
    run.levels.resize(scheme.size());
    std::vector<std::optional<SpectralDensity>> densities(scheme.size());

    for_each_level(scheme.size(), options.jobs, [&](std::size_t i) {
        const auto start = Clock::now();
        LevelRecord rec;
        rec.level = scheme.level_label(i);
        rec.N = scheme.normalization(i);
        std::optional<FiniteModel> delta_model;
        if (scheme.kind() == Scheme::Quotient) {
            const FiniteModel bi = model_at(b, scheme, i, options.max_side);
            rec.dim = kernel_dim(bi);
            delta_model = bi.gram();
            rec.error_term = 0;
        } else {
            delta_model = model_at(delta, scheme, i, options.max_side);
            rec.dim = kernel_dim(*delta_model);
            rec.error_term = amenable_error_term(delta, scheme.boxes()[i]);
        }
        rec.kappa = delta_model->kappa();
        if (options.spectra) {
            SpectralDensity f = rec.dim.exact ? density(*delta_model, rec.dim.nullity) : density(*delta_model);
            rec.has_spectra = true;
            rec.log_det = f.log_det();
            rec.F.reserve(options.grid.size());
            for (double x : options.grid) rec.F.push_back(f(x));
            if (options.keep_densities) densities[i].emplace(std::move(f));
        }
        rec.seconds = std::chrono::duration<double>(Clock::now() - start).count();
        run.levels[i] = std::move(rec);
    });

    for (auto& f : densities) {
        if (f) run.densities.push_back(std::move(*f));
    }
    if (declared_limit && scheme.kind() == Scheme::Folner) {
        const std::size_t n = run.levels.size();
        for (std::size_t i = 0; i < n; ++i) {
            Rational lo = run.levels[i].dim.value;
            Rational hi = run.levels[i].dim.value + run.levels[i].error_term;
            for (std::size_t j = i; j < n; ++j) {
                lo = std::max(lo, run.levels[j].dim.value);
                hi = std::min(hi, Rational(run.levels[j].dim.value + run.levels[j].error_term));
            }
            run.levels[i].in_bracket = lo <= *declared_limit && *declared_limit <= hi;
        }
    }
    return run;
}

std::string to_string(Integrality v) {
    switch (v) {
        case Integrality::Integer: return "integer";
        case Integrality::NotInteger: return "not-integer";
        case Integrality::Indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

AtiyahVerdict check_atiyah_integrality(const ApproximationRun& run, const Rational& tol) {
    AtiyahVerdict v;
    if (run.levels.empty()) {
        v.message = "no levels";
        return v;
    }
    v.value = run.last().dim.value;
    Rational shifted = v.value + Rational(1, 2);
    mpz_fdiv_q(v.nearest.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
    v.distance = Rational(abs(v.value - Rational(v.nearest)));
    if (!run.last().dim.exact) {
        v.message = "kernel dimensions are thresholded, not exact";
        return v;
    }
    if (!run.converged()) {
        v.message = "run has not converged: " + run.convergence_reason();
        return v;
    }
    if (v.distance <= tol) {
        v.status = Integrality::Integer;
        v.message = "integer " + to_string(v.nearest) + ", distance " + to_string(v.distance);
    } else {
        v.status = Integrality::NotInteger;
        v.message = "limit " + to_string(v.value) + " is at distance " + to_string(v.distance) +
                    " from the nearest integer " + to_string(v.nearest) + ", above tolerance " + to_string(tol);
    }
    return v;
}

DetBoundReport verify_det_bound(const GroupRingMatrix& b, const ApproximationScheme& scheme, const RunOptions& options) {
    if (!b.exact()) throw Error("determinant bound needs exact coefficients");
    const ClearedMatrix cleared = clear_denominators(b);
    const GroupRingMatrix& bc = cleared.matrix;
    const GroupRingMatrix delta = bc.laplacian();

    DetBoundReport rep;
    rep.clearing_factor = cleared.factor;
    rep.d = bc.cols();
    rep.embeddings = bc.scalars().embedding_count();
    int distinguished = 0;
    if (const auto& field = bc.scalars().field()) {
        rep.integral_generator = field->generator_is_integral();
        rep.normal_field = field->is_normal();
        distinguished = field->distinguished();
    } else {
        rep.normal_field = true;
    }
    double sum = 0.0;
    for (int k = 0; k < rep.embeddings; ++k) {
        const double lk = delta.conjugate(k).kappa().log_kappa;
        rep.log_kappas.push_back(lk);
        if (k != distinguished) sum += lk;
    }
    rep.rhs = -rep.d * sum;
    rep.K = std::max(1.0, delta.kappa().kappa);

    RunOptions opts = options;
    opts.spectra = true;
    const bool density_check = rep.embeddings == 1;
    opts.keep_densities = density_check;
    const ApproximationRun run = approximate_kernel_dim(bc, scheme, opts);

    std::vector<double> grid = options.grid;
    if (grid.empty()) {
        for (int j = 1; j <= 100; ++j) grid.push_back(rep.K * j / 101.0);
    }
    rep.holds = true;
    rep.margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < run.levels.size(); ++i) {
        const auto& l = run.levels[i];
        DetBoundLevel dl;
        dl.level = l.level;
        dl.N = l.N;
        dl.log_det = l.log_det;
        dl.margin = l.log_det - rep.rhs;
        // Eigenvalues carry rounding of order 1e-15 per term.
        dl.holds = dl.margin >= -1e-12 * std::max(1.0, std::abs(rep.rhs));
        dl.density_margin = std::numeric_limits<double>::infinity();
        if (density_check) {
            const SpectralDensity& f = run.densities[i];
            const double f0 = f(0.0);
            for (double x : grid) {
                if (!(x > 0.0 && x < rep.K)) continue;
                const double slack = density_bound(x, rep.K, rep.d) - (f(x) - f0);
                ++dl.density_checks;
                if (slack < 0.0) ++dl.density_violations;
                dl.density_margin = std::min(dl.density_margin, slack);
            }
        }
        rep.holds = rep.holds && dl.holds && dl.density_violations == 0;
        rep.margin = std::min(rep.margin, dl.margin);
        rep.levels.push_back(dl);
    }
    return rep;
}

ContinuityReport verify_algebraic_continuity(const GroupRingMatrix& b, const ApproximationScheme& scheme,
                                             const RunOptions& options) {
    if (!b.exact()) throw Error("algebraic continuity needs exact coefficients");
    RunOptions opts = options;
    opts.spectra = false;
    ContinuityReport rep;
    const int r = b.scalars().embedding_count();
    for (int k = 0; k < r; ++k) {
        ConjugateReport c;
        c.embedding = k;
        const GroupRingMatrix bk = b.conjugate(k);
        c.run = approximate_kernel_dim(bk, scheme, opts);
        c.limit = c.run.last().dim.value;
        const GroupRingMatrix ek = embedded_complex(bk);
        const GroupRingMatrix probe = scheme.kind() == Scheme::Quotient ? ek : ek.laplacian();
        c.float_dims.resize(scheme.size());
        for_each_level(scheme.size(), options.jobs, [&](std::size_t i) {
            c.float_dims[i] = threshold_kernel_dim(model_at(probe, scheme, i, options.max_side)).value;
        });
        rep.conjugates.push_back(std::move(c));
    }
    rep.exact_equal = true;
    rep.float_agrees = true;
    for (const auto& c : rep.conjugates) {
        rep.exact_equal = rep.exact_equal && c.limit == rep.conjugates.front().limit;
        for (std::size_t i = 0; i < c.float_dims.size(); ++i) {
            rep.float_agrees = rep.float_agrees && c.float_dims[i] == c.run.levels[i].dim.value;
        }
    }
    return rep;
}

GapReport spectrum_gap_check(const GroupRingMatrix& a, const ApproximationScheme& scheme, double lo, double hi,
                             const RunOptions& options) {
    if (!(lo <= hi)) throw Error("gap interval needs lo <= hi");
    if (!a.square() || !a.is_self_adjoint()) throw Error("spectrum gap check needs a self-adjoint matrix");
    GapReport rep;
    rep.lo = lo;
    rep.hi = hi;
    const double kappa = a.kappa().kappa;
    rep.norm_certified = lo > kappa || hi < -kappa;
    rep.levels.resize(scheme.size());
    for_each_level(scheme.size(), options.jobs, [&](std::size_t i) {
        const FiniteModel m = model_at(a, scheme, i, options.max_side);
        const auto values = eigenvalues(m);
        GapLevel g;
        g.level = scheme.level_label(i);
        g.N = m.normalization();
        g.margin = std::numeric_limits<double>::infinity();
        std::int64_t below = 0;
        std::int64_t through = 0;
        for (double v : values) {
            if (v >= lo && v <= hi) {
                throw Error("precondition failure: eigenvalue " + fmt(v) + " of level " + std::to_string(g.level) +
                            " lies in [" + fmt(lo) + ", " + fmt(hi) + "]");
            }
            g.margin = std::min(g.margin, v < lo ? lo - v : v - hi);
            if (v <= lo) ++below;
            if (v < hi) ++through;
        }
        g.F_below = static_cast<double>(below) / static_cast<double>(g.N);
        g.F_through = static_cast<double>(through) / static_cast<double>(g.N);
        rep.levels[i] = g;
    });
    rep.margin = std::numeric_limits<double>::infinity();
    for (const auto& g : rep.levels) rep.margin = std::min(rep.margin, g.margin);
    rep.confirmed = std::all_of(rep.levels.begin(), rep.levels.end(),
                                [](const GapLevel& g) { return g.F_through == g.F_below; });
    return rep;
}

LiouvilleTarget liouville_constant(int n_max) {
    if (n_max < 1 || n_max > 7) throw Error("Liouville constant supports 1 <= n_max <= 7");
    auto factorial = [](int n) {
        unsigned long f = 1;
        for (int j = 2; j <= n; ++j) f *= static_cast<unsigned long>(j);
        return f;
    };
    auto pow10 = [](unsigned long e) {
        Integer z;
        mpz_ui_pow_ui(z.get_mpz_t(), 10, e);
        return z;
    };
    LiouvilleTarget t;
    t.description = "sum_j 10^-j!";
    Rational partial = 0;
    for (int n = 1; n <= n_max + 1; ++n) {
        partial += ratio(1, pow10(factorial(n)));
        if (n <= n_max) {
            const Integer q = pow10(factorial(n));
            const Rational pq = partial * q;
            t.approximants.emplace_back(Integer(pq.get_num()), q);
        }
    }
    // The tail after the last included term is below twice its first term.
    t.lower = partial;
    t.upper = partial + ratio(2, pow10(factorial(n_max + 2)));
    return t;
}

LiouvilleCertificate liouville_exclusion(const GroupRingMatrix& a, const LiouvilleTarget& target, int n_max) {
    if (!a.square() || !a.is_self_adjoint()) throw Error("Liouville exclusion needs a self-adjoint matrix");
    if (!a.exact()) throw Error("Liouville exclusion needs exact coefficients");
    if (n_max < 1) throw Error("n_max must be at least 1");
    if (static_cast<std::size_t>(n_max) > target.approximants.size()) {
        throw Error("only " + std::to_string(target.approximants.size()) + " approximants supplied, n_max = " +
                    std::to_string(n_max));
    }
    if (target.lower > target.upper) throw Error("enclosure of the target is empty");

    const ClearedMatrix cleared = clear_denominators(a);
    const GroupRingMatrix& am = cleared.matrix;
    const GroupRingMatrix a2 = am * am;
    const GroupRingMatrix id = GroupRingMatrix::identity(am.group(), am.scalars(), am.rows());

    LiouvilleCertificate cert;
    cert.target = target.description;
    cert.clearing_factor = cleared.factor;
    cert.d = am.rows();
    cert.r = am.scalars().embedding_count();

    const KappaReport ka = am.kappa();
    const KappaReport ka2 = a2.kappa();
    const double supports = static_cast<double>(std::max(ka2.S, ka2.Sstar) + std::max(ka.S, ka.Sstar) + 1);
    double log_C = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < cert.r; ++k) {
        const double inf_a = am.conjugate(k).kappa().inf;
        const double inf_a2 = a2.conjugate(k).kappa().inf;
        const double ck = supports * (inf_a2 + inf_a + 1.0);
        cert.C_k.push_back(ck);
        log_C = std::max(log_C, std::log(ck));
    }
    const double log_m = log_abs(cleared.factor);

    for (int n = 1; n <= n_max; ++n) {
        const auto& [p, q] = target.approximants[static_cast<std::size_t>(n - 1)];
        if (q < 2) throw Error("approximant " + std::to_string(n) + " has q = " + to_string(q) + " < 2");
        const Rational pq = ratio(p, q);
        Integer qn;
        mpz_pow_ui(qn.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(n));
        const Rational bound = ratio(1, qn);
        if (pq >= target.lower && pq <= target.upper) {
            throw Error("approximant " + std::to_string(n) + " = " + to_string(pq) +
                        " lies inside the enclosure; lambda != p/q cannot be certified");
        }
        const Rational far = std::max(Rational(abs(target.lower - pq)), Rational(abs(target.upper - pq)));
        if (far > bound) {
            throw Error("approximant " + std::to_string(n) + " violates |lambda - p/q| <= q^-n: distance up to " +
                        to_string(far) + " exceeds " + to_string(bound));
        }
        if (n == 1) continue;

        LiouvilleLevel lv;
        lv.n = n;
        lv.p = p;
        lv.q = q;
        lv.approximant_ok = true;
        const Integer mp = cleared.factor * p;
        const GroupRingMatrix shifted = am.scaled(am.scalars().from_rational(Rational(q))) -
                                        id.scaled(am.scalars().from_rational(Rational(mp)));
        const GroupRingMatrix v = shifted.laplacian();
        double sum_kappa = 0.0;
        for (int k = 0; k < cert.r; ++k) {
            const double lk = v.conjugate(k).kappa().log_kappa;
            lv.log_kappa_v.push_back(lk);
            sum_kappa += lk;
        }
        const double log_q = log_abs(q);
        const Integer abs_mp = mp < 0 ? Integer(-mp) : mp;
        const Integer p_candidates[3] = {Integer(q * q), Integer(2 * abs_mp * q), Integer(abs_mp * abs_mp)};
        Integer big = p_candidates[0];
        for (const auto& c : p_candidates) big = std::max(big, c);
        lv.log_P = log_abs(big);
        lv.log_C = log_C;
        lv.log_s = (2.0 - 2.0 * n) * log_q + 2.0 * log_m;
        const double log_qa = log_q + std::log(std::max(ka.kappa, 1e-300));
        const double log_p = abs_mp == 0 ? -std::numeric_limits<double>::infinity() : log_abs(abs_mp);
        const double hi = std::max(log_qa, log_p);
        lv.log_norm_bound = 2.0 * (hi + std::log1p(std::exp(std::min(log_qa, log_p) - hi)));
        const double denom = (2.0 * n - 2.0) * log_q - 2.0 * log_m;
        if (denom <= 0.0) continue;
        lv.alpha = cert.d * cert.r * (lv.log_P + lv.log_C) / denom;
        lv.alpha_sharp = cert.d * sum_kappa / denom;
        cert.levels.push_back(std::move(lv));
    }
    cert.decreasing = !cert.levels.empty();
    for (std::size_t i = 1; i < cert.levels.size(); ++i) {
        cert.decreasing = cert.decreasing && cert.levels[i].alpha < cert.levels[i - 1].alpha;
    }
    return cert;
}

}  // namespace l2approx
