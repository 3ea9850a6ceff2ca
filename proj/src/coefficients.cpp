#include "l2approx/coefficients.hpp"

#include "l2approx/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace l2approx {

namespace {

using Poly = std::vector<Rational>;  // low degree first

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_sub(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

// a = q*b + r with deg r < deg b.
std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b) {
    trim(a);
    if (b.empty()) throw Error("polynomial division by zero");
    if (a.size() < b.size()) return {Poly{}, a};
    Poly q(a.size() - b.size() + 1);
    const Rational& lead = b.back();
    for (std::size_t i = a.size(); i-- >= b.size();) {
        const Rational c = a[i] / lead;
        q[i - (b.size() - 1)] = c;
        if (c != 0) {
            for (std::size_t j = 0; j < b.size(); ++j) a[i - (b.size() - 1) + j] -= c * b[j];
        }
        if (i == b.size() - 1) break;
    }
    trim(a);
    trim(q);
    return {q, a};
}

Poly derivative(const Poly& p) {
    Poly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
    trim(d);
    return d;
}

Poly poly_gcd(Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        auto r = poly_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// u with u*a = g (mod m), g = gcd(a, m) returned alongside.
std::pair<Poly, Poly> inverse_mod(const Poly& a, const Poly& m) {
    Poly r0 = m, r1 = a;
    Poly s0{}, s1{Rational(1)};
    trim(r1);
    while (!r1.empty()) {
        auto [q, r] = poly_divmod(r0, r1);
        Poly s = poly_sub(s0, poly_mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    return {s0, r0};
}

struct CQ {
    Rational re, im;
};

CQ cmul(const CQ& a, const CQ& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }

CQ eval(const Poly& p, const CQ& z) {
    CQ acc{Rational(0), Rational(0)};
    for (std::size_t i = p.size(); i-- > 0;) {
        acc = cmul(acc, z);
        acc.re += p[i];
    }
    return acc;
}

Rational abs2(const CQ& z) { return z.re * z.re + z.im * z.im; }

double sqrt_upper(const Rational& q) {
    if (q == 0) return 0.0;
    const double l = log_abs(q);
    if (l > 1400.0) return std::numeric_limits<double>::infinity();
    const double v = std::sqrt(to_double(q));
    return v * (1.0 + 4.0 * std::numeric_limits<double>::epsilon()) + std::numeric_limits<double>::denorm_min();
}

constexpr double kTargetRadius = 1e-14;

}  // namespace

struct NumberField::Shared {
    Poly minpoly;
    int bits = 128;
    std::vector<RootEnclosure> roots;
    std::vector<std::vector<std::pair<Rational, Rational>>> powers;
};

int default_precision_bits() {
    if (const char* env = std::getenv("L2_PRECISION_BITS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 64 && v <= 4096) return static_cast<int>(v);
        throw Error("L2_PRECISION_BITS must be an integer in [64, 4096]");
    }
    return 128;
}

double Enclosure::abs_upper() const {
    return std::abs(value) * (1.0 + 4.0 * std::numeric_limits<double>::epsilon()) + radius;
}

Complex RootEnclosure::value() const { return {to_double(re), to_double(im)}; }

FieldPtr NumberField::create(std::vector<Rational> minpoly, int precision_bits) {
    trim(minpoly);
    const int degree = static_cast<int>(minpoly.size()) - 1;
    if (degree < 1) throw Error("minimal polynomial must have degree >= 1");
    if (degree > 8) throw Error("number fields are limited to degree 8");
    if (minpoly.back() != 1) throw Error("minimal polynomial must be monic");
    if (poly_gcd(minpoly, derivative(minpoly)).size() != 1) {
        throw Error("minimal polynomial is not squarefree");
    }
    auto shared = std::make_shared<Shared>();
    shared->minpoly = minpoly;
    shared->bits = precision_bits;
    const Poly deriv = derivative(minpoly);

    // Companion matrix eigenvalues as starting points.
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
    for (int i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < degree; ++i) companion(i, degree - 1) = -to_double(minpoly[static_cast<std::size_t>(i)]);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    if (solver.info() != Eigen::Success) throw PrecisionError("companion eigenvalue solve failed");
    const auto approx = solver.eigenvalues();

    std::vector<RootEnclosure> roots;
    for (int k = 0; k < degree; ++k) {
        const Complex start = approx(k);
        const bool real = std::abs(start.imag()) <= 1e-7 * std::max(1.0, std::abs(start));
        CQ z{round_to_bits(from_double(start.real()), precision_bits),
             real ? Rational(0) : round_to_bits(from_double(start.imag()), precision_bits)};
        for (int iter = 0; iter < 200; ++iter) {
            const CQ pz = eval(minpoly, z);
            const CQ dz = eval(deriv, z);
            const Rational den = abs2(dz);
            if (den == 0) throw PrecisionError("Newton refinement hit a critical point");
            // step = p(z)/p'(z)
            CQ step{(pz.re * dz.re + pz.im * dz.im) / den, (pz.im * dz.re - pz.re * dz.im) / den};
            z.re = round_to_bits(z.re - step.re, precision_bits);
            z.im = real ? Rational(0) : round_to_bits(z.im - step.im, precision_bits);
            const Rational scale = std::max(Rational(1), abs2(z));
            Rational tiny(1);
            mpq_div_2exp(tiny.get_mpq_t(), tiny.get_mpq_t(), static_cast<unsigned long>(2 * (precision_bits - 8)));
            if (abs2(step) <= tiny * scale) break;
        }
        // Any disk |w - z| <= d |p(z)/p'(z)| contains a root.
        const CQ pz = eval(minpoly, z);
        const CQ dz = eval(deriv, z);
        if (abs2(dz) == 0) throw PrecisionError("root isolation failed: vanishing derivative");
        const Rational r2 = Rational(degree * degree) * abs2(pz) / abs2(dz);
        double radius = sqrt_upper(r2);
        if (real) {
            // Certify a real root by an exact sign change on [x - rho, x + rho].
            const Rational rho = from_double(std::max(radius, std::ldexp(1.0, -(precision_bits - 8)) * std::max(1.0, std::abs(to_double(z.re)))));
            const CQ lo{z.re - rho, Rational(0)};
            const CQ hi{z.re + rho, Rational(0)};
            if (sgn(eval(minpoly, lo).re) * sgn(eval(minpoly, hi).re) >= 0) {
                throw PrecisionError("real root could not be certified by a sign change");
            }
            radius = std::max(radius, to_double(rho) * (1.0 + 4.0 * std::numeric_limits<double>::epsilon()));
        }
        const double mag = std::max(1.0, std::abs(start));
        if (!(radius <= kTargetRadius * mag)) {
            throw PrecisionError("root enclosure radius " + std::to_string(radius) + " exceeds the 1e-14 target");
        }
        roots.push_back(RootEnclosure{z.re, z.im, radius, real});
    }
    for (std::size_t i = 0; i < roots.size(); ++i) {
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            if (std::abs(roots[i].value() - roots[j].value()) <= roots[i].radius + roots[j].radius) {
                throw PrecisionError("root enclosures are not disjoint");
            }
        }
    }
    // A non-real enclosure whose mirror image meets only itself holds a real root.
    for (auto& r : roots) {
        if (r.real) continue;
        if (std::abs(r.value().imag()) > r.radius) continue;
        bool mirrored_elsewhere = false;
        for (const auto& other : roots) {
            if (&other == &r) continue;
            if (std::abs(std::conj(r.value()) - other.value()) <= r.radius + other.radius) mirrored_elsewhere = true;
        }
        if (!mirrored_elsewhere) throw PrecisionError("root near the real axis was not refined as a real root");
    }
    std::sort(roots.begin(), roots.end(), [](const RootEnclosure& a, const RootEnclosure& b) {
        if (a.real != b.real) return a.real;
        if (a.re != b.re) return a.re > b.re;
        return a.im > b.im;
    });
    shared->roots = std::move(roots);
    for (const auto& r : shared->roots) {
        std::vector<std::pair<Rational, Rational>> pw;
        CQ acc{Rational(1), Rational(0)};
        const CQ z{r.re, r.im};
        for (int j = 0; j < degree; ++j) {
            pw.emplace_back(acc.re, acc.im);
            acc = cmul(acc, z);
        }
        shared->powers.push_back(std::move(pw));
    }
    return FieldPtr(new NumberField(std::move(shared), 0));
}

int NumberField::degree() const { return static_cast<int>(shared_->minpoly.size()) - 1; }
const std::vector<Rational>& NumberField::minpoly() const { return shared_->minpoly; }
const std::vector<RootEnclosure>& NumberField::roots() const { return shared_->roots; }
int NumberField::precision_bits() const { return shared_->bits; }

FieldPtr NumberField::with_embedding(int k) const {
    if (k < 0 || k >= degree()) throw Error("embedding index out of range");
    return FieldPtr(new NumberField(shared_, k));
}

bool NumberField::is_real_embedding(int k) const { return shared_->roots.at(static_cast<std::size_t>(k)).real; }

bool NumberField::generator_is_integral() const {
    return std::all_of(shared_->minpoly.begin(), shared_->minpoly.end(),
                       [](const Rational& c) { return c.get_den() == 1; });
}

std::optional<bool> NumberField::is_normal() const {
    if (degree() <= 2) return true;
    return std::nullopt;
}

bool NumberField::operator==(const NumberField& other) const {
    if (distinguished_ != other.distinguished_) return false;
    return shared_ == other.shared_ || shared_->minpoly == other.shared_->minpoly;
}

const std::vector<std::pair<Rational, Rational>>& NumberField::root_powers(int k) const {
    return shared_->powers.at(static_cast<std::size_t>(k));
}

std::string NumberField::describe() const {
    std::ostringstream os;
    os << "Q[z]/(";
    bool first = true;
    for (std::size_t i = shared_->minpoly.size(); i-- > 0;) {
        const auto& c = shared_->minpoly[i];
        if (c == 0) continue;
        os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
        const Rational a = abs(c);
        if (a != 1 || i == 0) os << a.get_str();
        if (i > 0) os << "z";
        if (i > 1) os << "^" << i;
        first = false;
    }
    os << "), sigma_" << distinguished_ + 1;
    return os.str();
}

// ---------------------------------------------------------------------------

namespace {

void require_same_field(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    if (!(*a.field() == *b.field())) throw Error("algebraic numbers belong to different fields or embeddings");
}

Poly reduce(Poly p, const Poly& modulus) {
    trim(p);
    if (p.size() >= modulus.size()) p = poly_divmod(std::move(p), modulus).second;
    return p;
}

// sum |a_j| |zeta^j - c^j| <= sum |a_j| j rho (|c| + rho)^(j-1)
long double power_error(const std::vector<Rational>& coords, const RootEnclosure& root) {
    const long double c = std::abs(root.value()) * (1.0L + 1e-15L) + root.radius;
    long double err = 0.0L, pc = 1.0L;
    for (std::size_t j = 1; j < coords.size(); ++j) {
        if (coords[j] != 0) {
            err += static_cast<long double>(l2approx::abs_upper(coords[j])) * static_cast<long double>(j) * root.radius * pc;
        }
        pc *= c;
    }
    return err;
}

}  // namespace

AlgebraicNumber::AlgebraicNumber(FieldPtr field, std::vector<Rational> coords) : field_(std::move(field)) {
    if (!field_) throw Error("algebraic number without a field");
    for (auto& c : coords) c.canonicalize();
    coords = reduce(std::move(coords), field_->minpoly());
    coords.resize(static_cast<std::size_t>(field_->degree()));
    coords_ = std::move(coords);
}

AlgebraicNumber AlgebraicNumber::from_rational(FieldPtr field, const Rational& q) {
    return AlgebraicNumber(std::move(field), {q});
}

AlgebraicNumber AlgebraicNumber::generator(FieldPtr field) {
    return AlgebraicNumber(std::move(field), {Rational(0), Rational(1)});
}

bool AlgebraicNumber::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return c == 0; });
}

bool AlgebraicNumber::is_rational() const {
    return std::all_of(coords_.begin() + 1, coords_.end(), [](const Rational& c) { return c == 0; });
}

AlgebraicNumber AlgebraicNumber::operator-() const {
    auto c = coords_;
    for (auto& x : c) x = -x;
    return AlgebraicNumber(field_, std::move(c));
}

AlgebraicNumber operator+(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    require_same_field(a, b);
    auto c = a.coords_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coords_[i];
    return AlgebraicNumber(a.field_, std::move(c));
}

AlgebraicNumber operator-(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    require_same_field(a, b);
    auto c = a.coords_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.coords_[i];
    return AlgebraicNumber(a.field_, std::move(c));
}

AlgebraicNumber operator*(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    require_same_field(a, b);
    const auto& m = a.field_->minpoly();
    const std::size_t d = a.coords_.size();
    Poly prod(2 * d - 1);
    for (std::size_t i = 0; i < d; ++i) {
        if (a.coords_[i] == 0) continue;
        for (std::size_t j = 0; j < d; ++j) {
            if (b.coords_[j] != 0) prod[i + j] += a.coords_[i] * b.coords_[j];
        }
    }
    // Monic reduction from the top.
    for (std::size_t i = prod.size(); i-- > d;) {
        const Rational c = prod[i];
        if (c == 0) continue;
        for (std::size_t j = 0; j < d; ++j) prod[i - d + j] -= c * m[j];
        prod[i] = 0;
    }
    prod.resize(d);
    return AlgebraicNumber(a.field_, std::move(prod));
}

AlgebraicNumber AlgebraicNumber::inverse() const {
    if (is_zero()) throw Error("division by zero");
    auto [u, g] = inverse_mod(coords_, field_->minpoly());
    if (g.size() != 1) throw Error("element is a zero divisor: the minimal polynomial is reducible");
    for (auto& c : u) c /= g[0];
    return AlgebraicNumber(field_, std::move(u));
}

AlgebraicNumber operator/(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    require_same_field(a, b);
    return a * b.inverse();
}

bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    return *a.field_ == *b.field_ && a.coords_ == b.coords_;
}

AlgebraicNumber AlgebraicNumber::scaled(const Rational& q) const {
    auto c = coords_;
    for (auto& x : c) x *= q;
    return AlgebraicNumber(field_, std::move(c));
}

AlgebraicNumber AlgebraicNumber::conj() const {
    const int k = field_->distinguished();
    if (field_->is_real_embedding(k) || is_rational()) return *this;
    if (field_->degree() == 2) {
        // conj(v) is the other root: -c_1 - v.
        const auto& m = field_->minpoly();
        return AlgebraicNumber(field_, {coords_[0] - coords_[1] * m[1], -coords_[1]});
    }
    throw Error("complex conjugation is unavailable for non-real embeddings of degree > 2 fields");
}

Enclosure AlgebraicNumber::embed(int k) const {
    if (k < 0 || k >= field_->degree()) throw Error("embedding index out of range");
    const auto& pw = field_->root_powers(k);
    const auto& root = field_->roots()[static_cast<std::size_t>(k)];
    Rational re(0), im(0);
    for (std::size_t j = 0; j < coords_.size(); ++j) {
        if (coords_[j] == 0) continue;
        re += coords_[j] * pw[j].first;
        im += coords_[j] * pw[j].second;
    }
    const long double err = power_error(coords_, root);
    Enclosure e;
    e.value = Complex(to_double(re), to_double(im));
    const double rounding = std::abs(e.value) * 2.0 * std::numeric_limits<double>::epsilon();
    e.radius = static_cast<double>(err * (1.0L + 1e-12L)) + rounding + std::numeric_limits<double>::denorm_min();
    if (!std::isfinite(e.radius) || !std::isfinite(std::abs(e.value))) {
        throw PrecisionError("embedding overflowed double range");
    }
    if (e.radius > 1e-9 * std::max(std::abs(e.value), 1e-300) && !is_zero()) {
        throw PrecisionError("embedding lost precision: radius " + std::to_string(e.radius) +
                             " for value of magnitude " + std::to_string(std::abs(e.value)));
    }
    return e;
}

double AlgebraicNumber::abs_upper(int k) const {
    const auto& root = field_->roots().at(static_cast<std::size_t>(k));
    // Exact centre value plus propagated radius, without the relative-precision check.
    const auto& pw = field_->root_powers(k);
    Rational re(0), im(0);
    for (std::size_t j = 0; j < coords_.size(); ++j) {
        re += coords_[j] * pw[j].first;
        im += coords_[j] * pw[j].second;
    }
    const long double err = power_error(coords_, root);
    const double centre = sqrt_upper(re * re + im * im);
    return centre + static_cast<double>(err * (1.0L + 1e-12L));
}

// ---------------------------------------------------------------------------

std::string to_string(CoeffTag tag) {
    switch (tag) {
        case CoeffTag::Rational: return "rational";
        case CoeffTag::Algebraic: return "algebraic";
        case CoeffTag::Complex: return "complex";
    }
    return "?";
}

CoeffTag parse_coeff_tag(const std::string& name) {
    if (name == "rational") return CoeffTag::Rational;
    if (name == "algebraic") return CoeffTag::Algebraic;
    if (name == "complex") return CoeffTag::Complex;
    throw Error("unknown coefficient tag '" + name + "'");
}

namespace {

void require_same_tag(const Coefficient& a, const Coefficient& b) {
    if (a.tag() != b.tag()) {
        throw Error("mixed coefficient tags: " + to_string(a.tag()) + " and " + to_string(b.tag()));
    }
}

}  // namespace

bool Coefficient::is_zero() const {
    switch (tag()) {
        case CoeffTag::Rational: return std::get<Rational>(value_) == 0;
        case CoeffTag::Algebraic: return std::get<AlgebraicNumber>(value_).is_zero();
        case CoeffTag::Complex: return std::get<Complex>(value_) == Complex(0.0, 0.0);
    }
    return false;
}

const Rational& Coefficient::rational() const {
    if (tag() != CoeffTag::Rational) throw Error("coefficient is not rational");
    return std::get<Rational>(value_);
}

const AlgebraicNumber& Coefficient::algebraic() const {
    if (tag() != CoeffTag::Algebraic) throw Error("coefficient is not algebraic");
    return std::get<AlgebraicNumber>(value_);
}

Complex Coefficient::complex() const {
    if (tag() != CoeffTag::Complex) throw Error("coefficient is not a complex float");
    return std::get<Complex>(value_);
}

Coefficient Coefficient::operator-() const {
    return std::visit([](const auto& v) { return Coefficient(-v); }, value_);
}

Coefficient operator+(const Coefficient& a, const Coefficient& b) { return field_arith(a, b, ArithOp::Add); }
Coefficient operator-(const Coefficient& a, const Coefficient& b) { return field_arith(a, b, ArithOp::Sub); }
Coefficient operator*(const Coefficient& a, const Coefficient& b) { return field_arith(a, b, ArithOp::Mul); }
Coefficient operator/(const Coefficient& a, const Coefficient& b) { return field_arith(a, b, ArithOp::Div); }

bool operator==(const Coefficient& a, const Coefficient& b) {
    if (a.tag() != b.tag()) return false;
    return a.value_ == b.value_;
}

Coefficient field_arith(const Coefficient& a, const Coefficient& b, ArithOp op) {
    require_same_tag(a, b);
    if (op == ArithOp::Div && b.is_zero()) throw Error("division by zero");
    switch (a.tag()) {
        case CoeffTag::Rational: {
            const auto& x = a.rational();
            const auto& y = b.rational();
            switch (op) {
                case ArithOp::Add: return Rational(x + y);
                case ArithOp::Sub: return Rational(x - y);
                case ArithOp::Mul: return Rational(x * y);
                case ArithOp::Div: return Rational(x / y);
            }
            break;
        }
        case CoeffTag::Algebraic: {
            const auto& x = a.algebraic();
            const auto& y = b.algebraic();
            switch (op) {
                case ArithOp::Add: return x + y;
                case ArithOp::Sub: return x - y;
                case ArithOp::Mul: return x * y;
                case ArithOp::Div: return x / y;
            }
            break;
        }
        case CoeffTag::Complex: {
            const auto x = a.complex();
            const auto y = b.complex();
            switch (op) {
                case ArithOp::Add: return x + y;
                case ArithOp::Sub: return x - y;
                case ArithOp::Mul: return x * y;
                case ArithOp::Div: return x / y;
            }
            break;
        }
    }
    throw Error("unsupported arithmetic");
}

Coefficient Coefficient::conj() const {
    switch (tag()) {
        case CoeffTag::Rational: return *this;
        case CoeffTag::Algebraic: return algebraic().conj();
        case CoeffTag::Complex: return std::conj(complex());
    }
    return *this;
}

Enclosure Coefficient::embed() const {
    switch (tag()) {
        case CoeffTag::Rational: {
            const double v = to_double(rational());
            return {Complex(v, 0.0), std::abs(v) * std::numeric_limits<double>::epsilon()};
        }
        case CoeffTag::Algebraic: return algebraic().embed();
        case CoeffTag::Complex: return {complex(), 0.0};
    }
    return {};
}

Complex Coefficient::to_complex() const { return embed().value; }

double Coefficient::abs_upper() const {
    switch (tag()) {
        case CoeffTag::Rational: return l2approx::abs_upper(rational());
        case CoeffTag::Algebraic: return algebraic().abs_upper(algebraic().field()->distinguished());
        case CoeffTag::Complex: return std::abs(complex()) * (1.0 + 2.0 * std::numeric_limits<double>::epsilon());
    }
    return 0.0;
}

double Coefficient::log_abs_upper() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    if (tag() == CoeffTag::Rational) return log_abs(rational()) + 1e-15;
    return std::log(abs_upper());
}

std::string Coefficient::to_string() const {
    std::ostringstream os;
    switch (tag()) {
        case CoeffTag::Rational: os << rational().get_str(); break;
        case CoeffTag::Algebraic: {
            const auto& c = algebraic().coords();
            bool first = true;
            for (std::size_t i = 0; i < c.size(); ++i) {
                if (c[i] == 0) continue;
                if (!first) os << (c[i] < 0 ? " - " : " + ");
                else if (c[i] < 0) os << "-";
                const Rational a = abs(c[i]);
                if (i == 0 || a != 1) os << a.get_str();
                if (i > 0) os << (i == 0 || a != 1 ? "*" : "") << "v" << (i > 1 ? "^" + std::to_string(i) : "");
                first = false;
            }
            if (first) os << "0";
            break;
        }
        case CoeffTag::Complex: os << "(" << complex().real() << (complex().imag() < 0 ? "" : "+") << complex().imag() << "i)"; break;
    }
    return os.str();
}

// ---------------------------------------------------------------------------

Scalars Scalars::algebraic(FieldPtr field) {
    if (!field) throw Error("algebraic scalars need a number field");
    return Scalars(CoeffTag::Algebraic, std::move(field));
}

Coefficient Scalars::zero() const { return from_rational(Rational(0)); }
Coefficient Scalars::one() const { return from_rational(Rational(1)); }

Coefficient Scalars::from_rational(const Rational& q) const {
    switch (tag_) {
        case CoeffTag::Rational: return q;
        case CoeffTag::Algebraic: return AlgebraicNumber::from_rational(field_, q);
        case CoeffTag::Complex: return Complex(to_double(q), 0.0);
    }
    return q;
}

bool Scalars::admits(const Coefficient& c) const {
    if (c.tag() != tag_) return false;
    if (tag_ == CoeffTag::Algebraic) return *c.algebraic().field() == *field_;
    return true;
}

void Scalars::check(const Coefficient& c) const {
    if (!admits(c)) {
        throw Error("coefficient of tag " + to_string(c.tag()) + " does not match matrix tag " + to_string(tag_));
    }
}

Scalars Scalars::with_embedding(int k) const {
    if (tag_ != CoeffTag::Algebraic) {
        if (k != 0) throw Error("embedding index out of range");
        return *this;
    }
    return Scalars(tag_, field_->with_embedding(k));
}

int Scalars::embedding_count() const { return tag_ == CoeffTag::Algebraic ? field_->degree() : 1; }

bool Scalars::operator==(const Scalars& other) const {
    if (tag_ != other.tag_) return false;
    if (tag_ == CoeffTag::Algebraic) return *field_ == *other.field_;
    return true;
}

}  // namespace l2approx
