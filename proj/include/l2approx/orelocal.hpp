#pragma once

#include "l2approx/groupring.hpp"

#include <map>
#include <string>
#include <vector>

namespace l2approx {

struct OreSolution {
    GroupRingElement alpha;
    GroupRingElement sigma;
    GroupRingElement beta;
    GroupRingElement tau;
    /// The Følner set whose elements carry beta and tau.
    std::vector<GroupElement> X;
    int level = 0;
    /// sum over g in supp(alpha) + supp(sigma) of |X g \ X|.
    std::size_t boundary_sum = 0;
    std::size_t equations = 0;
    std::size_t unknowns = 0;
    /// beta sigma - tau alpha; zero for every returned solution.
    GroupRingElement residual;
};

/// Finds beta, tau with tau != 0 and beta sigma = tau alpha, supported on a Følner set X with
/// sum_g |Xg \ X| < |X|. Boxes grow from the smallest admissible level, at most `extra_levels` beyond it.
OreSolution ore_solve(const GroupSpec& group, const GroupRingElement& alpha, const GroupRingElement& sigma,
                      int extra_levels = 3);

/// Multivariate polynomial over Q; all exponent vectors in one polynomial have the same length.
class Polynomial {
public:
    using Exponents = std::vector<int>;

    Polynomial() = default;
    static Polynomial constant(const Rational& c, int variables);
    /// x_i (0-based) in `variables` variables.
    static Polynomial variable(int i, int variables);

    const std::map<Exponents, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int variables() const { return variables_; }

    void add_term(Exponents e, const Rational& c);
    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.terms_ == b.terms_;
    }

    Rational evaluate(const std::vector<Rational>& point) const;
    /// "x1^2 - 3/2 x1 x2 + 1" style.
    std::string to_string() const;

private:
    int variables_ = 0;
    std::map<Exponents, Rational> terms_;
};

/// Group-ring element with polynomial coefficients.
class PolyGroupRingElement {
public:
    using Terms = std::map<GroupElement, Polynomial>;

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int variables() const;
    Polynomial coefficient(const GroupElement& g) const;

    void add_term(const GroupElement& g, const Polynomial& c);
    static PolyGroupRingElement multiply(const GroupSpec& group, const PolyGroupRingElement& a,
                                         const PolyGroupRingElement& b);
    /// Substitutes x_i -> point[i] in every coefficient.
    GroupRingElement specialize(const std::vector<Rational>& point) const;
    std::string to_string() const;

    friend bool operator==(const PolyGroupRingElement& a, const PolyGroupRingElement& b) {
        return a.terms_ == b.terms_;
    }

private:
    Terms terms_;
};

struct Specialization {
    std::vector<Rational> point;
    GroupRingElement A;
    GroupRingElement B;
    /// Points rejected before `point` was accepted.
    std::size_t rejected = 0;
};

/// Rational zero divisors A B = 0 from polynomial ones, keeping the coefficients of a at g and b at g_prime nonzero.
Specialization specialize_zero_divisor(const GroupSpec& group, const PolyGroupRingElement& a,
                                       const PolyGroupRingElement& b, const GroupElement& g,
                                       const GroupElement& g_prime);

}  // namespace l2approx
