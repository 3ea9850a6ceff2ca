#pragma once

#include "l2approx/coefficients.hpp"
#include "l2approx/groups.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace l2approx {

/// Finite sum of coefficient times group element; zero coefficients are never stored.
class GroupRingElement {
public:
    using Terms = std::map<GroupElement, Coefficient>;

    GroupRingElement() = default;

    static GroupRingElement monomial(const GroupElement& g, const Coefficient& c);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t support_size() const { return terms_.size(); }
    /// Coefficient at g, or `zero` when g is outside the support.
    Coefficient coefficient(const GroupElement& g, const Coefficient& zero) const;

    void add_term(const GroupElement& g, const Coefficient& c);
    void add(const GroupRingElement& other);
    void subtract(const GroupRingElement& other);

    /// Convolution product in the group ring of `group`.
    static GroupRingElement multiply(const GroupSpec& group, const GroupRingElement& a, const GroupRingElement& b);
    GroupRingElement scaled(const Coefficient& c) const;
    /// sum conj(c) g^-1
    GroupRingElement adjoint(const GroupSpec& group) const;

    friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) { return a.terms_ == b.terms_; }

private:
    Terms terms_;
};

/// Bound data for the operator norm: kappa = sqrt(S(A) S(A*)) |A|_inf.
struct KappaReport {
    std::int64_t S = 0;
    std::int64_t Sstar = 0;
    double inf = 0.0;
    double kappa = 0.0;
    /// ln|A|_inf and ln kappa stay finite when the coefficients overflow a double.
    double log_inf = 0.0;
    double log_kappa = 0.0;
};

/// sqrt(support_product) * inf, rounded up.
double round_up_product(double support_product, double inf);

/// d_r x d_c matrix over the group ring of a fixed group, with one coefficient domain.
class GroupRingMatrix {
public:
    GroupRingMatrix(GroupSpec group, Scalars scalars, int rows, int cols);

    static GroupRingMatrix identity(const GroupSpec& group, const Scalars& scalars, int d);
    static GroupRingMatrix zero(const GroupSpec& group, const Scalars& scalars, int rows, int cols);

    const GroupSpec& group() const { return group_; }
    const Scalars& scalars() const { return scalars_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }
    bool exact() const { return scalars_.exact(); }

    const GroupRingElement& at(int r, int c) const;
    void set(int r, int c, GroupRingElement value);
    void add_term(int r, int c, const GroupElement& g, const Coefficient& coeff);

    GroupRingMatrix adjoint() const;
    GroupRingMatrix operator+(const GroupRingMatrix& other) const;
    GroupRingMatrix operator-(const GroupRingMatrix& other) const;
    GroupRingMatrix operator*(const GroupRingMatrix& other) const;
    GroupRingMatrix scaled(const Coefficient& c) const;
    /// p(A) = sum coeffs[j] A^j (square A).
    GroupRingMatrix evaluate_polynomial(const std::vector<Coefficient>& coeffs) const;
    /// A* A
    GroupRingMatrix laplacian() const { return adjoint() * (*this); }

    bool is_self_adjoint() const;
    KappaReport kappa() const;
    /// sum_k (coefficient of the identity in a_kk)
    Coefficient trace() const;
    /// Largest word length over all supports (0 for the zero matrix).
    int support_radius() const;
    /// All group elements occurring in some entry, sorted.
    std::vector<GroupElement> support() const;

    /// sigma_k applied coefficient-wise; identity for rational matrices.
    GroupRingMatrix conjugate(int k) const;

    /// Canonical text form; equal matrices have equal text.
    std::string canonical_text() const;
    /// 16 hex digits derived from `canonical_text()`.
    std::string hash() const;

    friend bool operator==(const GroupRingMatrix& a, const GroupRingMatrix& b);

private:
    void check_index(int r, int c) const;
    void check_compatible(const GroupRingMatrix& other) const;

    GroupSpec group_;
    Scalars scalars_;
    int rows_;
    int cols_;
    std::vector<GroupRingElement> entries_;
};

/// N and M' with N*M = M' and every coordinate of M' integral (N = lcm of denominators).
struct ClearedMatrix {
    Integer factor;
    GroupRingMatrix matrix;
};

ClearedMatrix clear_denominators(const GroupRingMatrix& m);

}  // namespace l2approx
