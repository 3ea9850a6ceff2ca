#include "l2approx/groupring.hpp"

#include "l2approx/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>

namespace l2approx {

GroupRingElement GroupRingElement::monomial(const GroupElement& g, const Coefficient& c) {
    GroupRingElement e;
    e.add_term(g, c);
    return e;
}

Coefficient GroupRingElement::coefficient(const GroupElement& g, const Coefficient& zero) const {
    auto it = terms_.find(g);
    return it == terms_.end() ? zero : it->second;
}

void GroupRingElement::add_term(const GroupElement& g, const Coefficient& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(g, c);
    if (inserted) return;
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
}

void GroupRingElement::add(const GroupRingElement& other) {
    for (const auto& [g, c] : other.terms_) add_term(g, c);
}

void GroupRingElement::subtract(const GroupRingElement& other) {
    for (const auto& [g, c] : other.terms_) add_term(g, -c);
}

GroupRingElement GroupRingElement::multiply(const GroupSpec& group, const GroupRingElement& a,
                                            const GroupRingElement& b) {
    GroupRingElement out;
    for (const auto& [g, x] : a.terms_) {
        for (const auto& [h, y] : b.terms_) out.add_term(group.multiply(g, h), x * y);
    }
    return out;
}

GroupRingElement GroupRingElement::scaled(const Coefficient& c) const {
    GroupRingElement out;
    for (const auto& [g, x] : terms_) out.add_term(g, x * c);
    return out;
}

GroupRingElement GroupRingElement::adjoint(const GroupSpec& group) const {
    GroupRingElement out;
    for (const auto& [g, x] : terms_) out.add_term(group.inverse(g), x.conj());
    return out;
}

// ---------------------------------------------------------------------------

double round_up_product(double support_product, double inf) {
    double k = std::sqrt(support_product) * inf;
    const long double exact = static_cast<long double>(support_product) * inf * inf;
    while (std::isfinite(k) && static_cast<long double>(k) * k < exact) k = std::nextafter(k, INFINITY);
    return k;
}

GroupRingMatrix::GroupRingMatrix(GroupSpec group, Scalars scalars, int rows, int cols)
    : group_(std::move(group)), scalars_(std::move(scalars)), rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1) throw Error("matrix dimensions must be positive");
    entries_.resize(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
}

GroupRingMatrix GroupRingMatrix::identity(const GroupSpec& group, const Scalars& scalars, int d) {
    GroupRingMatrix m(group, scalars, d, d);
    for (int i = 0; i < d; ++i) m.add_term(i, i, group.identity(), scalars.one());
    return m;
}

GroupRingMatrix GroupRingMatrix::zero(const GroupSpec& group, const Scalars& scalars, int rows, int cols) {
    return GroupRingMatrix(group, scalars, rows, cols);
}

void GroupRingMatrix::check_index(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw Error("matrix index out of range");
}

const GroupRingElement& GroupRingMatrix::at(int r, int c) const {
    check_index(r, c);
    return entries_[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c)];
}

void GroupRingMatrix::set(int r, int c, GroupRingElement value) {
    check_index(r, c);
    for (const auto& [g, x] : value.terms()) {
        group_.check(g);
        scalars_.check(x);
    }
    entries_[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c)] =
        std::move(value);
}

void GroupRingMatrix::add_term(int r, int c, const GroupElement& g, const Coefficient& coeff) {
    check_index(r, c);
    group_.check(g);
    scalars_.check(coeff);
    entries_[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c)].add_term(
        g, coeff);
}

void GroupRingMatrix::check_compatible(const GroupRingMatrix& other) const {
    if (group_ != other.group_) throw Error("matrices over different groups");
    if (scalars_ != other.scalars_) throw Error("matrices over different coefficient domains");
}

GroupRingMatrix GroupRingMatrix::adjoint() const {
    GroupRingMatrix out(group_, scalars_, cols_, rows_);
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) out.entries_[static_cast<std::size_t>(c * rows_ + r)] = at(r, c).adjoint(group_);
    }
    return out;
}

GroupRingMatrix GroupRingMatrix::operator+(const GroupRingMatrix& other) const {
    check_compatible(other);
    if (rows_ != other.rows_ || cols_ != other.cols_) throw Error("shape mismatch in matrix sum");
    GroupRingMatrix out = *this;
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i].add(other.entries_[i]);
    return out;
}

GroupRingMatrix GroupRingMatrix::operator-(const GroupRingMatrix& other) const {
    check_compatible(other);
    if (rows_ != other.rows_ || cols_ != other.cols_) throw Error("shape mismatch in matrix difference");
    GroupRingMatrix out = *this;
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i].subtract(other.entries_[i]);
    return out;
}

GroupRingMatrix GroupRingMatrix::operator*(const GroupRingMatrix& other) const {
    check_compatible(other);
    if (cols_ != other.rows_) {
        throw Error("shape mismatch in matrix product: " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                    " times " + std::to_string(other.rows_) + "x" + std::to_string(other.cols_));
    }
    GroupRingMatrix out(group_, scalars_, rows_, other.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int k = 0; k < other.cols_; ++k) {
            GroupRingElement acc;
            for (int j = 0; j < cols_; ++j) acc.add(GroupRingElement::multiply(group_, at(i, j), other.at(j, k)));
            out.entries_[static_cast<std::size_t>(i * other.cols_ + k)] = std::move(acc);
        }
    }
    return out;
}

GroupRingMatrix GroupRingMatrix::scaled(const Coefficient& c) const {
    scalars_.check(c);
    GroupRingMatrix out(group_, scalars_, rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i].scaled(c);
    return out;
}

GroupRingMatrix GroupRingMatrix::evaluate_polynomial(const std::vector<Coefficient>& coeffs) const {
    if (!square()) throw Error("polynomial evaluation needs a square matrix");
    GroupRingMatrix acc = zero(group_, scalars_, rows_, cols_);
    const GroupRingMatrix id = identity(group_, scalars_, rows_);
    for (std::size_t j = coeffs.size(); j-- > 0;) {
        acc = acc * (*this) + id.scaled(coeffs[j]);
    }
    return acc;
}

bool GroupRingMatrix::is_self_adjoint() const { return square() && adjoint() == *this; }

KappaReport GroupRingMatrix::kappa() const {
    KappaReport rep;
    std::vector<std::int64_t> col_support(static_cast<std::size_t>(cols_), 0);
    double log_inf = -std::numeric_limits<double>::infinity();
    double inf = 0.0;
    for (int r = 0; r < rows_; ++r) {
        std::int64_t row_support = 0;
        for (int c = 0; c < cols_; ++c) {
            const auto& e = at(r, c);
            row_support += static_cast<std::int64_t>(e.support_size());
            col_support[static_cast<std::size_t>(c)] += static_cast<std::int64_t>(e.support_size());
            for (const auto& [g, x] : e.terms()) {
                inf = std::max(inf, x.abs_upper());
                log_inf = std::max(log_inf, x.log_abs_upper());
            }
        }
        rep.S = std::max(rep.S, row_support);
    }
    for (auto s : col_support) rep.Sstar = std::max(rep.Sstar, s);
    rep.inf = inf;
    rep.log_inf = log_inf;
    const double ss = static_cast<double>(rep.S) * static_cast<double>(rep.Sstar);
    rep.kappa = round_up_product(ss, inf);
    rep.log_kappa = ss > 0.0 ? 0.5 * std::log(ss) + log_inf : -std::numeric_limits<double>::infinity();
    return rep;
}

Coefficient GroupRingMatrix::trace() const {
    if (!square()) throw Error("trace needs a square matrix");
    Coefficient acc = scalars_.zero();
    const GroupElement e = group_.identity();
    for (int k = 0; k < rows_; ++k) acc = acc + at(k, k).coefficient(e, scalars_.zero());
    return acc;
}

int GroupRingMatrix::support_radius() const {
    int r = 0;
    for (const auto& e : entries_) {
        for (const auto& [g, x] : e.terms()) r = std::max(r, group_.word_length(g));
    }
    return r;
}

std::vector<GroupElement> GroupRingMatrix::support() const {
    std::set<GroupElement> s;
    for (const auto& e : entries_) {
        for (const auto& [g, x] : e.terms()) s.insert(g);
    }
    return {s.begin(), s.end()};
}

GroupRingMatrix GroupRingMatrix::conjugate(int k) const {
    if (!scalars_.exact()) throw Error("Galois conjugation needs exact coefficients");
    if (scalars_.tag() == CoeffTag::Rational) {
        if (k != 0) throw Error("rational matrices have a single embedding");
        return *this;
    }
    const Scalars target = scalars_.with_embedding(k);
    GroupRingMatrix out(group_, target, rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        GroupRingElement e;
        for (const auto& [g, x] : entries_[i].terms()) {
            e.add_term(g, AlgebraicNumber(target.field(), x.algebraic().coords()));
        }
        out.entries_[i] = std::move(e);
    }
    return out;
}

std::string GroupRingMatrix::canonical_text() const {
    std::ostringstream os;
    os << group_.describe() << ';' << to_string(scalars_.tag());
    if (scalars_.field()) os << '[' << scalars_.field()->describe() << ']';
    os << ';' << rows_ << 'x' << cols_;
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) {
            const auto& e = at(r, c);
            if (e.is_zero()) continue;
            os << ";(" << r << ',' << c << ')';
            for (const auto& [g, x] : e.terms()) {
                os << '{';
                for (auto v : g.data()) os << v << ',';
                os << ':' << x.to_string() << '}';
            }
        }
    }
    return os.str();
}

std::string GroupRingMatrix::hash() const {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : canonical_text()) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

bool operator==(const GroupRingMatrix& a, const GroupRingMatrix& b) {
    return a.group_ == b.group_ && a.scalars_ == b.scalars_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.entries_ == b.entries_;
}

ClearedMatrix clear_denominators(const GroupRingMatrix& m) {
    if (!m.exact()) throw Error("denominator clearing needs exact coefficients");
    Integer n = 1;
    for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < m.cols(); ++c) {
            for (const auto& [g, x] : m.at(r, c).terms()) {
                if (x.tag() == CoeffTag::Rational) {
                    n = lcm(n, x.rational().get_den());
                } else {
                    for (const auto& q : x.algebraic().coords()) n = lcm(n, q.get_den());
                }
            }
        }
    }
    return {n, m.scaled(m.scalars().from_rational(Rational(n)))};
}

}  // namespace l2approx
