#include "l2approx/orelocal.hpp"

#include "l2approx/error.hpp"
#include "l2approx/linalg.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace l2approx {

namespace {

Scalars scalars_of(const GroupRingElement& a, const GroupRingElement& b) {
    std::optional<Scalars> s;
    for (const auto* e : {&a, &b}) {
        for (const auto& [g, c] : e->terms()) {
            Scalars here = c.tag() == CoeffTag::Rational    ? Scalars::rational()
                           : c.tag() == CoeffTag::Algebraic ? Scalars::algebraic(c.algebraic().field())
                                                            : Scalars::complex();
            if (!s) {
                s = here;
            } else if (*s != here) {
                throw Error("alpha and sigma mix coefficient domains");
            }
        }
    }
    return s.value_or(Scalars::rational());
}

std::size_t translate_boundary(const GroupSpec& group, const FolnerLevel& x, const std::set<GroupElement>& z) {
    std::size_t total = 0;
    for (const auto& g : z) {
        for (const auto& e : x.elements()) total += !x.contains(group.multiply(e, g));
    }
    return total;
}

}  // namespace

OreSolution ore_solve(const GroupSpec& group, const GroupRingElement& alpha, const GroupRingElement& sigma,
                      int extra_levels) {
    if (group.kind() == GroupKind::Free) throw Error("Ore solver rejects free groups: no Følner sets exist");
    if (sigma.is_zero()) throw Error("Ore solver needs sigma != 0");
    const Scalars scalars = scalars_of(alpha, sigma);
    if (!scalars.exact()) throw Error("Ore solver needs exact coefficients");
    for (const auto* e : {&alpha, &sigma}) {
        for (const auto& [g, c] : e->terms()) group.check(g);
    }

    std::set<GroupElement> z;
    for (const auto& [g, c] : alpha.terms()) z.insert(g);
    for (const auto& [g, c] : sigma.terms()) z.insert(g);

    int level = 1;
    for (;; ++level) {
        const FolnerLevel x = build_folner(group, level);
        if (translate_boundary(group, x, z) < x.size()) break;
        if (group.kind() == GroupKind::Finite) throw Error("finite group fails the counting inequality");
    }
    const int first_level = level;

    for (; level <= first_level + extra_levels; ++level) {
        const FolnerLevel x = build_folner(group, level);
        const std::size_t boundary = translate_boundary(group, x, z);
        const auto& elems = x.elements();
        const std::size_t n = elems.size();

        // Rows: coefficients at h in XZ, sorted. Columns: b_x then t_x.
        std::map<GroupElement, std::size_t> row_of;
        for (const auto& e : elems) {
            for (const auto& g : z) row_of.emplace(group.multiply(e, g), 0);
        }
        std::size_t next = 0;
        for (auto& [h, idx] : row_of) idx = next++;
        SparseMatrix m(static_cast<int>(row_of.size()), static_cast<int>(2 * n), scalars);
        std::vector<std::map<int, Coefficient>> rows(row_of.size());
        for (std::size_t i = 0; i < n; ++i) {
            for (const auto& [g, s] : sigma.terms()) {
                auto& r = rows[row_of.at(group.multiply(elems[i], g))];
                auto [it, fresh] = r.try_emplace(static_cast<int>(i), s);
                if (!fresh) it->second = it->second + s;
            }
            for (const auto& [g, a] : alpha.terms()) {
                auto& r = rows[row_of.at(group.multiply(elems[i], g))];
                auto [it, fresh] = r.try_emplace(static_cast<int>(n + i), -a);
                if (!fresh) it->second = it->second - a;
            }
        }
        for (std::size_t r = 0; r < rows.size(); ++r) {
            for (auto& [c, v] : rows[r]) {
                if (!v.is_zero()) m.data[r].emplace_back(c, v);
            }
        }

        for (const auto& v : nullspace(m)) {
            GroupRingElement beta;
            GroupRingElement tau;
            for (std::size_t i = 0; i < n; ++i) {
                beta.add_term(elems[i], v[i]);
                tau.add_term(elems[i], v[n + i]);
            }
            if (tau.is_zero()) continue;
            OreSolution sol;
            sol.alpha = alpha;
            sol.sigma = sigma;
            sol.X = elems;
            sol.level = level;
            sol.boundary_sum = boundary;
            sol.equations = row_of.size();
            sol.unknowns = 2 * n;
            sol.residual = GroupRingElement::multiply(group, beta, sigma);
            sol.residual.subtract(GroupRingElement::multiply(group, tau, alpha));
            if (!sol.residual.is_zero()) throw Error("internal: Ore residual is nonzero");
            sol.beta = std::move(beta);
            sol.tau = std::move(tau);
            return sol;
        }
        if (group.kind() == GroupKind::Finite) break;
    }
    throw Error("Ore solver: every solution has tau = 0 up to level " + std::to_string(level - 1) +
                " (alpha or sigma is a zero divisor?)");
}

// ---------------------------------------------------------------------------

Polynomial Polynomial::constant(const Rational& c, int variables) {
    Polynomial p;
    p.variables_ = variables;
    p.add_term(Exponents(static_cast<std::size_t>(variables), 0), c);
    return p;
}

Polynomial Polynomial::variable(int i, int variables) {
    if (i < 0 || i >= variables) throw Error("variable index out of range");
    Exponents e(static_cast<std::size_t>(variables), 0);
    e[static_cast<std::size_t>(i)] = 1;
    Polynomial p;
    p.variables_ = variables;
    p.add_term(std::move(e), Rational(1));
    return p;
}

void Polynomial::add_term(Exponents e, const Rational& c) {
    if (terms_.empty() && variables_ == 0) variables_ = static_cast<int>(e.size());
    if (static_cast<int>(e.size()) != variables_) throw Error("exponent vector length differs from the variable count");
    if (std::any_of(e.begin(), e.end(), [](int x) { return x < 0; })) throw Error("negative exponent");
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(std::move(e), c);
    if (fresh) return;
    it->second += c;
    it->second.canonicalize();
    if (it->second == 0) terms_.erase(it);
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    Polynomial out = a;
    if (out.is_zero()) out.variables_ = b.variables_;
    for (const auto& [e, c] : b.terms_) out.add_term(e, c);
    return out;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    Polynomial out = a;
    if (out.is_zero()) out.variables_ = b.variables_;
    for (const auto& [e, c] : b.terms_) out.add_term(e, Rational(-c));
    return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    out.variables_ = std::max(a.variables_, b.variables_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            if (ea.size() != eb.size()) throw Error("polynomials have different variable counts");
            Polynomial::Exponents e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out.add_term(std::move(e), Rational(ca * cb));
        }
    }
    return out;
}

Rational Polynomial::evaluate(const std::vector<Rational>& point) const {
    if (!terms_.empty() && static_cast<int>(point.size()) != variables_) {
        throw Error("evaluation point has " + std::to_string(point.size()) + " coordinates, polynomial has " +
                    std::to_string(variables_) + " variables");
    }
    Rational acc = 0;
    for (const auto& [e, c] : terms_) {
        Rational term = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            Rational p;
            mpz_pow_ui(p.get_num_mpz_t(), point[i].get_num_mpz_t(), static_cast<unsigned long>(e[i]));
            mpz_pow_ui(p.get_den_mpz_t(), point[i].get_den_mpz_t(), static_cast<unsigned long>(e[i]));
            term *= p;
        }
        acc += term;
    }
    acc.canonicalize();
    return acc;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        const bool negative = c < 0;
        const Rational mag = negative ? Rational(-c) : c;
        os << (first ? (negative ? "-" : "") : (negative ? " - " : " + "));
        first = false;
        const bool monomial = std::any_of(e.begin(), e.end(), [](int x) { return x > 0; });
        if (!monomial || mag != 1) os << l2approx::to_string(mag) << (monomial ? " " : "");
        bool sep = false;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            os << (sep ? " " : "") << 'x' << (i + 1);
            if (e[i] > 1) os << '^' << e[i];
            sep = true;
        }
    }
    return os.str();
}

int PolyGroupRingElement::variables() const {
    int v = 0;
    for (const auto& [g, p] : terms_) v = std::max(v, p.variables());
    return v;
}

Polynomial PolyGroupRingElement::coefficient(const GroupElement& g) const {
    const auto it = terms_.find(g);
    return it == terms_.end() ? Polynomial() : it->second;
}

void PolyGroupRingElement::add_term(const GroupElement& g, const Polynomial& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(g, c);
    if (fresh) return;
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
}

PolyGroupRingElement PolyGroupRingElement::multiply(const GroupSpec& group, const PolyGroupRingElement& a,
                                                    const PolyGroupRingElement& b) {
    PolyGroupRingElement out;
    for (const auto& [g, x] : a.terms_) {
        for (const auto& [h, y] : b.terms_) out.add_term(group.multiply(g, h), x * y);
    }
    return out;
}

GroupRingElement PolyGroupRingElement::specialize(const std::vector<Rational>& point) const {
    GroupRingElement out;
    for (const auto& [g, p] : terms_) out.add_term(g, Coefficient(p.evaluate(point)));
    return out;
}

std::string PolyGroupRingElement::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [g, p] : terms_) {
        os << (first ? "" : " + ") << '(' << p.to_string() << ")*[";
        for (std::size_t i = 0; i < g.size(); ++i) os << (i ? "," : "") << g[i];
        os << ']';
        first = false;
    }
    return os.str();
}

Specialization specialize_zero_divisor(const GroupSpec& group, const PolyGroupRingElement& a,
                                       const PolyGroupRingElement& b, const GroupElement& g,
                                       const GroupElement& g_prime) {
    for (const auto* e : {&a, &b}) {
        for (const auto& [h, p] : e->terms()) group.check(h);
    }
    const PolyGroupRingElement ab = PolyGroupRingElement::multiply(group, a, b);
    if (!ab.is_zero()) throw Error("precondition: a*b is not zero, product = " + ab.to_string());
    const Polynomial alpha_g = a.coefficient(g);
    const Polynomial beta_g = b.coefficient(g_prime);
    if (alpha_g.is_zero() || beta_g.is_zero()) {
        throw Error("no nonzero designated coefficient: the coefficient of a at g or of b at g' is zero");
    }
    const int n = std::max(a.variables(), b.variables());
    for (const auto* e : {&a, &b}) {
        for (const auto& [h, p] : e->terms()) {
            if (p.variables() != n) throw Error("coefficients use different numbers of variables");
        }
    }

    Specialization out;
    // Points with max coordinate m, for m = 0, 1, 2, ..., each shell in lexicographic order.
    for (int m = 0;; ++m) {
        std::vector<int> p(static_cast<std::size_t>(n), 0);
        for (;;) {
            if (n == 0 || *std::max_element(p.begin(), p.end()) == m) {
                std::vector<Rational> point;
                for (int c : p) point.emplace_back(c);
                if (alpha_g.evaluate(point) != 0 && beta_g.evaluate(point) != 0) {
                    out.point = point;
                    out.A = a.specialize(point);
                    out.B = b.specialize(point);
                    if (out.A.is_zero() || out.B.is_zero() ||
                        !GroupRingElement::multiply(group, out.A, out.B).is_zero()) {
                        throw Error("internal: specialization is not a zero-divisor pair");
                    }
                    return out;
                }
                ++out.rejected;
            }
            if (n == 0) break;
            int i = n - 1;
            while (i >= 0 && p[static_cast<std::size_t>(i)] == m) p[static_cast<std::size_t>(i--)] = 0;
            if (i < 0) break;
            ++p[static_cast<std::size_t>(i)];
        }
        if (n == 0) throw Error("constant designated coefficients vanish");
    }
}

}  // namespace l2approx
