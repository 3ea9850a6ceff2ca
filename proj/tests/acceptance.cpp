// Acceptance suite: one PASS/FAIL line per criterion, each checked against an independent oracle.
#include "l2approx/approx.hpp"
#include "l2approx/error.hpp"
#include "l2approx/io.hpp"
#include "l2approx/orelocal.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

using namespace l2approx;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

const GroupSpec kZ = GroupSpec::free_abelian(1);
const GroupSpec kZ2 = GroupSpec::free_abelian(2);
const GroupSpec kF2 = GroupSpec::free(2);

std::string fixed(double x, int digits = 3) {
    std::ostringstream os;
    os << std::setprecision(digits) << x;
    return os.str();
}

GroupElement z1(int e) { return GroupElement(std::vector<std::int32_t>{e}); }
GroupElement z2(int a, int b) { return GroupElement(std::vector<std::int32_t>{a, b}); }

GroupRingMatrix scalar_matrix(const GroupSpec& g, const Scalars& s, GroupRingElement e) {
    GroupRingMatrix m(g, s, 1, 1);
    m.set(0, 0, std::move(e));
    return m;
}

GroupRingMatrix one_minus_t() {
    GroupRingElement e;
    e.add_term(z1(0), Rational(1));
    e.add_term(z1(1), Rational(-1));
    return scalar_matrix(kZ, Scalars::rational(), e);
}

GroupRingMatrix path_laplacian() {
    GroupRingElement e;
    e.add_term(z1(-1), Rational(-1));
    e.add_term(z1(0), Rational(2));
    e.add_term(z1(1), Rational(-1));
    return scalar_matrix(kZ, Scalars::rational(), e);
}

/// c - t with c = a + b sqrt2.
GroupRingMatrix sqrt2_shift(int a, int b) {
    const auto f = NumberField::create({Rational(-2), Rational(0), Rational(1)});
    GroupRingMatrix m(kZ, Scalars::algebraic(f), 1, 1);
    m.add_term(0, 0, z1(0), AlgebraicNumber(f, {Rational(a), Rational(b)}));
    m.add_term(0, 0, z1(1), AlgebraicNumber::from_rational(f, -1));
    return m;
}

std::vector<QuotientMap> cyclic_chain(const std::vector<std::int64_t>& sizes) {
    std::vector<QuotientMap> out;
    for (auto n : sizes) out.push_back(QuotientMap::from_moduli(kZ, {n}));
    return out;
}

std::vector<std::int64_t> dyadic(std::int64_t from, std::int64_t to) {
    std::vector<std::int64_t> out;
    for (auto n = from; n <= to; n *= 2) out.push_back(n);
    return out;
}

std::vector<QuotientMap> f2_quotients() {
    const auto c2 = GroupSpec::cyclic_product({2});
    const auto s3 = GroupSpec::from_permutations({{1, 0, 2}, {1, 2, 0}});
    const auto a4 = GroupSpec::from_permutations({{1, 2, 0, 3}, {1, 0, 3, 2}});
    auto gen = [](const GroupSpec& g, std::size_t i) { return g.basic_generators()[i]; };
    return {QuotientMap::from_images(kF2, c2, {c2.element(1), c2.element(1)}),
            QuotientMap::from_images(kF2, s3, {gen(s3, 0), gen(s3, 1)}),
            QuotientMap::from_images(kF2, a4, {gen(a4, 0), gen(a4, 1)})};
}

/// (1/pi) arccos(1 - lambda/2) by quadrature of the arcsine density on [0, 4].
double path_density_oracle(double lambda) {
    if (lambda <= 0) return 0;
    if (lambda >= 4) return 1;
    boost::math::quadrature::tanh_sinh<double> q;
    return q.integrate([](double x) { return 1.0 / (std::numbers::pi * std::sqrt(x * (4 - x))); }, 0.0, lambda);
}

/// Spectral distribution of the Z^2 Laplacian: average of the Z distribution shifted by 2 - 2 cos(phi).
double grid_density_oracle(double lambda) {
    if (lambda <= 0) return 0;
    if (lambda >= 8) return 1;
    boost::math::quadrature::tanh_sinh<double> q;
    return q.integrate([&](double phi) { return path_density_oracle(lambda - 2 + 2 * std::cos(phi)); }, 0.0,
                       std::numbers::pi) /
           std::numbers::pi;
}

/// First Betti number of the Schreier graph of Q for the images of a, b, over |Q|.
Rational cycle_rank(const QuotientMap& q) {
    const auto& basis = q.basis();
    const auto n = basis.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::size_t edges = 0;
    for (std::size_t v = 0; v < n; ++v) {
        for (const auto& s : q.images()) {
            ++edges;
            parent[find(v)] = find(static_cast<std::size_t>(q.position(q.target().multiply(basis[v], s))));
        }
    }
    std::size_t components = 0;
    for (std::size_t v = 0; v < n; ++v) components += find(v) == v;
    return ratio(static_cast<long>(edges - n + components), static_cast<long>(n));
}

Outcome circulant_pipeline() {
    // every multiple of 4 up to 256, which contains the dyadic chain
    std::vector<std::int64_t> sizes;
    for (std::int64_t n = 4; n <= 256; n += 4) sizes.push_back(n);
    const auto run = approximate_kernel_dim(one_minus_t(), ApproximationScheme::quotients(cyclic_chain(sizes)), {},
                                            Rational(0));
    std::size_t bad_dims = 0;
    double worst = 0;
    for (const auto& l : run.levels) {
        bad_dims += !(l.dim.exact && l.dim.value == ratio(1, l.N));
        // prod_{k=1}^{n-1} (2 - 2 cos(2 pi k / n)) = n^2
        double direct = 0;
        for (std::int64_t k = 1; k < l.N; ++k) direct += std::log(2 - 2 * std::cos(2 * std::numbers::pi * k / l.N));
        direct /= l.N;
        const double closed = 2 * std::log(static_cast<double>(l.N)) / l.N;
        worst = std::max({worst, std::abs(l.log_det - closed), std::abs(direct - closed)});
    }
    const auto& last = run.last();
    const bool limit_dim = Rational(abs(last.dim.value - 0)) == ratio(1, 256);
    const bool limit_det = std::abs(last.log_det) <= 0.05;
    const bool pass = bad_dims == 0 && worst <= 1e-9 && limit_dim && limit_det;
    return {pass, std::to_string(run.levels.size()) + " levels, dim mismatches " + std::to_string(bad_dims) +
                      ", max |logdet - 2ln n/n| " + fixed(worst) + ", |dim_256| = " + to_string(last.dim.value) +
                      ", logdet_256 = " + fixed(last.log_det, 6)};
}

Outcome f2_betti() {
    const auto maps = f2_quotients();
    GroupRingMatrix row(kF2, Scalars::rational(), 1, 2);
    row.add_term(0, 0, parse_word("a", 2), Rational(1));
    row.add_term(0, 0, kF2.identity(), Rational(-1));
    row.add_term(0, 1, parse_word("b", 2), Rational(1));
    row.add_term(0, 1, kF2.identity(), Rational(-1));
    RunOptions opts;
    opts.tol = Rational(1, 10);
    const auto run = approximate_kernel_dim(row, ApproximationScheme::quotients(maps), opts);
    bool dims = true;
    std::string seen;
    for (std::size_t i = 0; i < maps.size(); ++i) {
        const auto& l = run.levels[i];
        const auto n = static_cast<long>(maps[i].image_size());
        dims = dims && l.dim.exact && l.dim.value == ratio(n + 1, n) && l.dim.value == cycle_rank(maps[i]);
        seen += (i ? ", " : "") + to_string(l.dim.value);
    }
    const auto v = check_atiyah_integrality(run, opts.tol);
    const bool pass = dims && v.status == Integrality::Integer && v.nearest == 1 && v.distance <= ratio(1, 12);
    return {pass, "dims " + seen + "; verdict " + v.message};
}

GroupRingElement random_element(std::mt19937_64& rng, const std::vector<GroupElement>& pool) {
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<int> count(1, 4);
    GroupRingElement e;
    const int terms = count(rng);
    for (int i = 0; i < terms; ++i) e.add_term(pool[pick(rng)], Rational(coeff(rng)));
    return e;
}

/// Whether q is injective on the union of the entry supports of a.
bool support_injects(const GroupRingMatrix& a, const QuotientMap& q) {
    std::set<GroupElement> images;
    const auto support = a.support();
    for (const auto& g : support) images.insert(q.apply(g));
    return images.size() == support.size();
}

Outcome kappa_bound() {
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<int> dim(1, 3);
    const auto f2_ball = ball(kF2, 2);
    std::vector<GroupElement> z2_ball;
    for (int a = -2; a <= 2; ++a) {
        for (int b = -2; b <= 2; ++b) {
            if (std::abs(a) + std::abs(b) <= 2) z2_ball.push_back(z2(a, b));
        }
    }
    auto f2_maps = f2_quotients();
    // affine groups x -> x + 1, x -> c x over Z/7 and Z/11, where the radius-2 ball of F_2 injects
    for (const auto& [m, c] : {std::pair{7, 3}, std::pair{11, 2}}) {
        std::vector<int> shift(m);
        std::vector<int> scale(m);
        for (int x = 0; x < m; ++x) {
            shift[x] = (x + 1) % m;
            scale[x] = (c * x) % m;
        }
        const auto aff = GroupSpec::from_permutations({shift, scale});
        f2_maps.push_back(QuotientMap::from_images(kF2, aff, aff.basic_generators()));
    }
    const std::vector<QuotientMap> z2_maps = {QuotientMap::from_moduli(kZ2, {3, 4}), QuotientMap::from_moduli(kZ2, {5, 5}),
                                              QuotientMap::from_moduli(kZ2, {6, 7})};
    const std::vector<FolnerLevel> boxes = {build_folner(kZ2, 1), build_folner(kZ2, 3)};

    std::size_t matrices = 0;
    std::size_t models = 0;
    std::size_t dominance_checked = 0;
    std::size_t violations = 0;
    std::size_t merged_above = 0;
    double tightest = 0;
    auto check_model = [&](const FiniteModel& m, double kappa, bool dominance) {
        ++models;
        const double est = norm_lower_bound(m, 150);
        const double mk = m.kappa().kappa;
        tightest = std::max(tightest, est / kappa);
        if (est > kappa * (1 + 1e-12)) ++violations;
        if (dominance) {
            ++dominance_checked;
            if (mk > kappa * (1 + 1e-15)) ++violations;
        } else if (mk > kappa) {
            ++merged_above;
        }
    };
    for (int trial = 0; trial < 60; ++trial) {
        const bool free = trial % 2 == 0;
        const auto& g = free ? kF2 : kZ2;
        const auto& pool = free ? f2_ball : z2_ball;
        const int rows = dim(rng);
        const int cols = dim(rng);
        GroupRingMatrix a(g, Scalars::rational(), rows, cols);
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < cols; ++c) a.set(r, c, random_element(rng, pool));
        }
        if (a.support_radius() > 2) return {false, "generator produced support radius > 2"};
        ++matrices;
        const double kappa = a.kappa().kappa;
        for (const auto& q : free ? f2_maps : z2_maps) check_model(quotient_model(a, q), kappa, support_injects(a, q));
        if (!free) {
            for (const auto& x : boxes) check_model(folner_model(a, x), kappa, true);
        }
    }
    return {violations == 0 && dominance_checked >= 100,
            std::to_string(matrices) + " matrices, " + std::to_string(models) + " models (" +
                std::to_string(dominance_checked) + " with injective support or compressions), " +
                std::to_string(violations) + " violations, max norm/kappa " + fixed(tightest) + "; " +
                std::to_string(merged_above) + " small quotients merge support above kappa"};
}

Outcome folner_bracket() {
    GroupRingMatrix grid(kZ2, Scalars::rational(), 2, 1);
    grid.add_term(0, 0, z2(0, 0), Rational(1));
    grid.add_term(0, 0, z2(1, 0), Rational(-1));
    grid.add_term(1, 0, z2(0, 0), Rational(1));
    grid.add_term(1, 0, z2(0, 1), Rational(-1));
    RunOptions opts;
    opts.spectra = false;
    std::size_t levels = 0;
    std::size_t outside = 0;
    std::string limits;
    for (const auto& [b, oracle_fn, name] :
         {std::tuple{one_minus_t(), &path_density_oracle, "Z"}, std::tuple{grid, &grid_density_oracle, "Z^2"}}) {
        // dim ker = F(0) of the limiting spectral measure
        const double oracle = oracle_fn(0.0);
        const Rational declared = from_double(oracle);
        const auto run = approximate_kernel_dim(b, ApproximationScheme::folner(b.group(), 1, 20), opts, declared);
        for (const auto& l : run.levels) {
            ++levels;
            outside += !l.in_bracket.value_or(false);
        }
        limits += std::string(limits.empty() ? "" : ", ") + name + " oracle " + fixed(oracle) + " err_20 " +
                  fixed(to_double(run.last().error_term));
    }
    return {outside == 0 && levels == 40,
            std::to_string(levels) + " levels, " + std::to_string(outside) + " outside the bracket; " + limits};
}

Outcome density_limsup() {
    RunOptions opts;
    opts.keep_densities = true;
    const auto run = approximate_kernel_dim(one_minus_t(), ApproximationScheme::folner(kZ, 1, 20), opts);
    const auto env = envelope(run.densities);
    // tail from level 10 on
    const std::size_t tail = 9;
    double worst = -1;
    double at = 0;
    for (int i = 1; i <= 100; ++i) {
        const double lambda = 4.0 * i / 100;
        const double excess = env.limsup(lambda, tail) - path_density_oracle(lambda);
        if (excess > worst) {
            worst = excess;
            at = lambda;
        }
    }
    return {worst <= 1e-6, "max limsup_{k>=10} F_k - F_oracle = " + fixed(worst, 4) + " at lambda " + fixed(at) +
                               " (largest box 41 points)"};
}

Outcome kazhdan_sandwich() {
    const auto model = quotient_model(path_laplacian(), QuotientMap::from_moduli(kZ, {64}));
    const auto f = density(model);
    const double K = path_laplacian().kappa().kappa;
    // closed-form spectrum 2 - 2 cos(2 pi k / 64) for an exact step function
    std::vector<double> mu;
    for (int k = 0; k < 64; ++k) mu.push_back(k == 0 ? 0.0 : 2 - 2 * std::cos(2 * std::numbers::pi * k / 64));
    auto step = [&](double lambda) {
        return static_cast<double>(std::count_if(mu.begin(), mu.end(), [&](double m) { return m <= lambda; })) / 64.0;
    };
    std::mt19937_64 rng(64);
    std::uniform_real_distribution<double> lam(0.0, 4.5);
    std::uniform_int_distribution<int> nn(1, 24);
    std::size_t violations = 0;
    std::size_t unverified = 0;
    double slack = 1e300;
    for (int t = 0; t < 20; ++t) {
        const double lambda = t == 0 ? 0.0 : lam(rng);
        const auto p = sandwich_poly(lambda, nn(rng), K);
        unverified += !p.verified();
        double trace = 0;
        for (double m : mu) trace += p(m);
        trace /= 64.0;
        const double lower = step(lambda);
        const double upper = 1.0 / p.n + step(lambda + 1.0 / p.n);
        const double via_model = normalized_trace(f, p);
        if (!(lower <= trace && trace <= upper) || std::abs(via_model - trace) > 1e-9 || f(lambda) != lower) ++violations;
        slack = std::min({slack, trace - lower, upper - trace});
    }
    return {violations == 0 && unverified == 0, "20 pairs, " + std::to_string(violations) + " violations, " +
                                                    std::to_string(unverified) + " unverified polynomials, min slack " +
                                                    fixed(slack)};
}

Outcome determinant_bound() {
    const auto scheme = ApproximationScheme::quotients(cyclic_chain(dyadic(4, 256)));
    const auto rep = verify_det_bound(sqrt2_shift(0, 1), scheme);
    const double floor = -std::log(9.0);
    bool levels_ok = std::abs(rep.rhs - floor) <= 1e-12;
    for (const auto& l : rep.levels) levels_ok = levels_ok && l.log_det >= floor;
    // Jensen: (1/2pi) int ln|sqrt2 - e^{i theta}|^2 = ln 2
    boost::math::quadrature::tanh_sinh<double> q;
    const double oracle =
        q.integrate([](double th) { return std::log(3 - 2 * std::sqrt(2.0) * std::cos(th)); }, 0.0, 2 * std::numbers::pi) /
        (2 * std::numbers::pi);
    const bool oracle_ok = std::abs(oracle - std::log(2.0)) <= 1e-6 && oracle >= floor;

    GroupRingMatrix f2_row(kF2, Scalars::rational(), 1, 2);
    f2_row.add_term(0, 0, parse_word("a", 2), Rational(1));
    f2_row.add_term(0, 0, kF2.identity(), Rational(-1));
    f2_row.add_term(0, 1, parse_word("b", 2), Rational(1));
    f2_row.add_term(0, 1, kF2.identity(), Rational(-1));
    GroupRingElement skew;
    skew.add_term(z1(0), Rational(3, 2));
    skew.add_term(z1(1), Rational(-1));
    skew.add_term(z1(2), Rational(1, 3));
    std::size_t rational_levels = 0;
    std::size_t rational_failures = 0;
    const std::vector<std::pair<GroupRingMatrix, ApproximationScheme>> cases = {
        {one_minus_t(), ApproximationScheme::quotients(cyclic_chain(dyadic(4, 128)))},
        {path_laplacian(), ApproximationScheme::quotients(cyclic_chain({5, 10, 20, 40}))},
        {scalar_matrix(kZ, Scalars::rational(), skew), ApproximationScheme::quotients(cyclic_chain({3, 9, 27, 81}))},
        {f2_row, ApproximationScheme::quotients(f2_quotients())},
    };
    for (const auto& [b, s] : cases) {
        const auto r = verify_det_bound(b, s);
        for (const auto& l : r.levels) {
            ++rational_levels;
            rational_failures += !l.holds || l.density_violations > 0;
        }
    }
    return {levels_ok && rep.holds && oracle_ok && rational_failures == 0,
            "min level logdet " + fixed(std::min_element(rep.levels.begin(), rep.levels.end(),
                                                         [](const auto& a, const auto& b) { return a.log_det < b.log_det; })
                                            ->log_det,
                                        6) +
                " >= -ln 9; quadrature " + fixed(oracle, 12) + " vs ln 2; rational levels " +
                std::to_string(rational_levels) + ", failures " + std::to_string(rational_failures)};
}

Outcome algebraic_continuity() {
    const auto scheme = ApproximationScheme::quotients(cyclic_chain(dyadic(4, 256)));
    bool ok = true;
    std::string detail;
    for (const auto& [a, b, name] : {std::tuple{0, 1, "sqrt2 - t"}, std::tuple{1, 1, "(1+sqrt2) - t"}}) {
        const auto rep = verify_algebraic_continuity(sqrt2_shift(a, b), scheme);
        bool zero = rep.conjugates.size() == 2;
        for (const auto& c : rep.conjugates) zero = zero && c.limit == 0 && c.run.levels.back().N == 256;
        ok = ok && zero && rep.exact_equal && rep.float_agrees;
        detail += std::string(detail.empty() ? "" : "; ") + name + ": limits " + to_string(rep.conjugates[0].limit) +
                  ", " + to_string(rep.conjugates.back().limit);
    }
    return {ok, detail};
}

std::size_t boundary_oracle(const GroupSpec& g, const OreSolution& s) {
    std::set<GroupElement> xs(s.X.begin(), s.X.end());
    std::set<GroupElement> z;
    for (const auto& [h, c] : s.alpha.terms()) z.insert(h);
    for (const auto& [h, c] : s.sigma.terms()) z.insert(h);
    std::size_t total = 0;
    for (const auto& h : z) {
        for (const auto& x : s.X) total += xs.count(g.multiply(x, h)) == 0;
    }
    return total;
}

Outcome ore_solver() {
    std::mt19937_64 rng(8);
    std::vector<GroupElement> box;
    for (int a = -1; a <= 1; ++a) {
        for (int b = -1; b <= 1; ++b) box.push_back(z2(a, b));
    }
    const auto s3 = GroupSpec::from_permutations({{1, 0, 2}, {1, 2, 0}});
    const auto elems = s3.elements();
    std::size_t solved = 0;
    std::size_t failures = 0;
    auto verify = [&](const GroupSpec& g, const GroupRingElement& alpha, const GroupRingElement& sigma) {
        const auto s = ore_solve(g, alpha, sigma);
        auto lhs = GroupRingElement::multiply(g, s.beta, s.sigma);
        lhs.subtract(GroupRingElement::multiply(g, s.tau, s.alpha));
        const std::size_t bsum = boundary_oracle(g, s);
        const bool ok = !s.tau.is_zero() && lhs.is_zero() && s.residual.is_zero() && bsum == s.boundary_sum &&
                        bsum < s.X.size() && s.alpha == alpha && s.sigma == sigma;
        ++solved;
        failures += !ok;
    };
    for (int t = 0; t < 25; ++t) {
        GroupRingElement alpha;
        GroupRingElement sigma;
        while (alpha.is_zero()) alpha = random_element(rng, box);
        while (sigma.is_zero()) sigma = random_element(rng, box);
        verify(kZ2, alpha, sigma);
    }
    for (int t = 0; t < 10; ++t) {
        GroupRingElement alpha;
        while (alpha.is_zero()) alpha = random_element(rng, elems);
        // a nonzero multiple of a group element is invertible
        const auto sigma = GroupRingElement::monomial(elems[static_cast<std::size_t>(t) % elems.size()], Rational(t + 1, 2));
        verify(s3, alpha, sigma);
    }
    return {solved == 35 && failures == 0, std::to_string(solved) + " instances, " + std::to_string(failures) + " failures"};
}

Outcome liouville_exclusion_check() {
    const int n_max = 5;
    const auto target = liouville_constant(n_max);
    const auto cert = liouville_exclusion(path_laplacian(), target, n_max);
    bool exact_ok = cert.levels.size() == 4;
    // |L - p/q| <= q^{-n} on the whole enclosure, in exact arithmetic
    for (const auto& l : cert.levels) {
        const Rational pq = ratio(l.p, l.q);
        Integer qn;
        mpz_pow_ui(qn.get_mpz_t(), l.q.get_mpz_t(), static_cast<unsigned long>(l.n));
        const Rational bound = ratio(1, qn);
        const Rational far = std::max(Rational(abs(target.lower - pq)), Rational(abs(target.upper - pq)));
        exact_ok = exact_ok && l.approximant_ok && far <= bound && pq < target.lower;
    }
    bool finite = true;
    bool decreasing = true;
    std::string alphas;
    for (std::size_t i = 0; i < cert.levels.size(); ++i) {
        finite = finite && std::isfinite(cert.levels[i].alpha);
        if (i > 0) decreasing = decreasing && cert.levels[i].alpha < cert.levels[i - 1].alpha;
        alphas += (i ? ", " : "") + fixed(cert.levels[i].alpha, 4);
    }
    const double a5 = cert.levels.empty() ? INFINITY : cert.levels.back().alpha;
    return {exact_ok && finite && decreasing && a5 < 0.05,
            "alpha_2..5 = " + alphas + (decreasing ? " (decreasing)" : " (not decreasing)") + "; alpha_5 < 0.05 " +
                (a5 < 0.05 ? "holds" : "fails") + "; exact approximant checks " + (exact_ok ? "pass" : "fail")};
}

Outcome zero_divisors(const std::string& dir) {
    std::string detail;
    bool ok = true;
    for (const char* name : {"zero_divisor_x.json", "zero_divisor_x_minus_1.json"}) {
        const Problem p = load_problem(dir + "/" + name);
        const auto& z = *p.zero_divisor;
        const auto s = specialize_zero_divisor(p.group, z.a, z.b, z.g, z.g_prime);
        const bool product_zero = GroupRingElement::multiply(p.group, s.A, s.B).is_zero();
        const bool homomorphism = s.A == z.a.specialize(s.point) && s.B == z.b.specialize(s.point);
        const bool designated = !s.A.coefficient(z.g, Rational(0)).is_zero() && !s.B.coefficient(z.g_prime, Rational(0)).is_zero();
        ok = ok && product_zero && homomorphism && designated && !s.A.is_zero() && !s.B.is_zero();
        detail += std::string(detail.empty() ? "" : "; ") + name + " at x = " + to_string(s.point[0]) +
                  (product_zero ? ", AB = 0" : ", AB != 0");
    }
    return {ok, detail};
}

}  // namespace

int main(int argc, char** argv) {
    const std::string problems = argc > 1 ? argv[1] : L2APPROX_PROBLEMS_DIR;
    struct Criterion {
        std::string id;
        std::string name;
        std::function<Outcome()> run;
        double budget_seconds;
    };
    const std::vector<Criterion> criteria = {
        {"1", "Z circulant pipeline", circulant_pipeline, 10},
        {"2", "F2 first Betti number", f2_betti, 30},
        {"3", "kappa norm bound", kappa_bound, 0},
        {"4a", "Følner bracket", folner_bracket, 0},
        {"4b", "density limsup against the arccos oracle", density_limsup, 0},
        {"5", "Kazhdan sandwich on Z/64", kazhdan_sandwich, 0},
        {"6", "determinant bound property", determinant_bound, 0},
        {"7", "algebraic continuity", algebraic_continuity, 0},
        {"8", "Ore solver", ore_solver, 0},
        {"9", "Liouville exclusion", liouville_exclusion_check, 0},
        {"10", "zero-divisor specialization", [&] { return zero_divisors(problems); }, 0},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_seconds > 0 && secs >= c.budget_seconds) {
            o.pass = false;
            o.detail += "; over the " + fixed(c.budget_seconds) + " s budget";
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << std::left << std::setw(3) << c.id << std::setw(44)
                  << c.name << o.detail << " [" << fixed(secs, 3) << " s]" << std::endl;
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria pass\n";
    return failed == 0 ? 0 : 1;
}
