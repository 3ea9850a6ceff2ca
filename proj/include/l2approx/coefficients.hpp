#pragma once

#include "l2approx/rational.hpp"

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace l2approx {

using Complex = std::complex<double>;

/// A complex value together with a certified bound on its distance to the true value.
struct Enclosure {
    Complex value;
    double radius = 0.0;

    double abs_upper() const;
};

/// A root of the minimal polynomial, isolated at working precision.
struct RootEnclosure {
    Rational re;  // dyadic centre
    Rational im;
    double radius = 0.0;  // certified: exactly one root lies within this distance
    bool real = false;

    Complex value() const;
};

/// Interval precision used for root isolation; L2_PRECISION_BITS overrides the default 128.
int default_precision_bits();

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

/// Q[z]/(p) for a monic squarefree p with rational coefficients, degree <= 8, together
/// with the embeddings sigma_1..sigma_r into C (one per root of p).
///
/// Irreducibility of p is the caller's responsibility; if p is reducible, inverting a
/// zero divisor throws.  Roots are ordered real-first (descending), then by descending
/// real and imaginary part; the distinguished embedding is index 0 unless re-selected
/// with `with_embedding`.
class NumberField {
public:
    static FieldPtr create(std::vector<Rational> minpoly, int precision_bits = default_precision_bits());

    int degree() const;
    /// Coefficients c_0..c_d, c_d = 1.
    const std::vector<Rational>& minpoly() const;
    const std::vector<RootEnclosure>& roots() const;
    int precision_bits() const;

    /// 0-based index of the embedding used as "the" complex value.
    int distinguished() const { return distinguished_; }
    /// The same abstract field viewed through embedding k (0-based): this is sigma_k.
    FieldPtr with_embedding(int k) const;

    bool is_real_embedding(int k) const;
    /// True when every minimal-polynomial coefficient is an integer.
    bool generator_is_integral() const;
    /// Whether the field is normal over Q; unknown (nullopt) above degree 2.
    std::optional<bool> is_normal() const;

    /// Same polynomial and same distinguished embedding.
    bool operator==(const NumberField& other) const;

    /// Exact powers zeta_k^j, j < degree, of the root centres.
    const std::vector<std::pair<Rational, Rational>>& root_powers(int k) const;

    std::string describe() const;

    struct Shared;

private:
    NumberField(std::shared_ptr<const Shared> shared, int distinguished)
        : shared_(std::move(shared)), distinguished_(distinguished) {}

    std::shared_ptr<const Shared> shared_;
    int distinguished_ = 0;
};

/// Element of a NumberField in the power basis 1, v, ..., v^{d-1}.
class AlgebraicNumber {
public:
    AlgebraicNumber(FieldPtr field, std::vector<Rational> coords);
    static AlgebraicNumber from_rational(FieldPtr field, const Rational& q);
    static AlgebraicNumber generator(FieldPtr field);

    const FieldPtr& field() const { return field_; }
    const std::vector<Rational>& coords() const { return coords_; }

    bool is_zero() const;
    bool is_rational() const;

    AlgebraicNumber operator-() const;
    friend AlgebraicNumber operator+(const AlgebraicNumber& a, const AlgebraicNumber& b);
    friend AlgebraicNumber operator-(const AlgebraicNumber& a, const AlgebraicNumber& b);
    friend AlgebraicNumber operator*(const AlgebraicNumber& a, const AlgebraicNumber& b);
    friend AlgebraicNumber operator/(const AlgebraicNumber& a, const AlgebraicNumber& b);
    friend bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b);

    AlgebraicNumber scaled(const Rational& q) const;
    AlgebraicNumber inverse() const;
    /// Complex conjugation transported through the distinguished embedding.
    AlgebraicNumber conj() const;

    /// sigma_k(a) with a certified radius (k is 0-based).  Throws PrecisionError when
    /// the radius is not small relative to the value.
    Enclosure embed(int k) const;
    Enclosure embed() const { return embed(field_->distinguished()); }
    /// Upper bound for |sigma_k(a)| that never throws.
    double abs_upper(int k) const;

private:
    FieldPtr field_;
    std::vector<Rational> coords_;
};

enum class CoeffTag { Rational, Algebraic, Complex };

std::string to_string(CoeffTag tag);
CoeffTag parse_coeff_tag(const std::string& name);

enum class ArithOp { Add, Sub, Mul, Div };

/// Exact rational | algebraic number | complex float.
class Coefficient {
public:
    Coefficient() : value_(Rational(0)) {}
    Coefficient(Rational q) : value_(std::move(q)) { std::get<Rational>(value_).canonicalize(); }  // NOLINT(google-explicit-constructor)
    Coefficient(AlgebraicNumber a) : value_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
    Coefficient(Complex z) : value_(z) {}  // NOLINT(google-explicit-constructor)

    CoeffTag tag() const { return static_cast<CoeffTag>(value_.index()); }
    bool exact() const { return tag() != CoeffTag::Complex; }
    bool is_zero() const;

    const Rational& rational() const;
    const AlgebraicNumber& algebraic() const;
    Complex complex() const;

    Coefficient operator-() const;
    friend Coefficient operator+(const Coefficient& a, const Coefficient& b);
    friend Coefficient operator-(const Coefficient& a, const Coefficient& b);
    friend Coefficient operator*(const Coefficient& a, const Coefficient& b);
    friend Coefficient operator/(const Coefficient& a, const Coefficient& b);
    friend bool operator==(const Coefficient& a, const Coefficient& b);

    Coefficient conj() const;
    /// Value under the distinguished embedding, with certified radius.
    Enclosure embed() const;
    Complex to_complex() const;
    /// Certified upper bound of the absolute value (distinguished embedding).
    double abs_upper() const;
    /// Upper bound of ln|c| that stays finite for huge exact values.
    double log_abs_upper() const;

    std::string to_string() const;

private:
    std::variant<Rational, AlgebraicNumber, Complex> value_;
};

Coefficient field_arith(const Coefficient& a, const Coefficient& b, ArithOp op);

/// The coefficient domain of a matrix: a tag plus, for algebraic coefficients, the field.
class Scalars {
public:
    static Scalars rational() { return Scalars(CoeffTag::Rational, nullptr); }
    static Scalars algebraic(FieldPtr field);
    static Scalars complex() { return Scalars(CoeffTag::Complex, nullptr); }

    CoeffTag tag() const { return tag_; }
    const FieldPtr& field() const { return field_; }
    bool exact() const { return tag_ != CoeffTag::Complex; }

    Coefficient zero() const;
    Coefficient one() const;
    Coefficient from_rational(const Rational& q) const;
    /// True when c has this tag (and this field).
    bool admits(const Coefficient& c) const;
    void check(const Coefficient& c) const;

    /// sigma_k applied to the domain (algebraic only; identity otherwise).
    Scalars with_embedding(int k) const;
    /// Number of embeddings r (1 for rational and complex).
    int embedding_count() const;

    bool operator==(const Scalars& other) const;
    bool operator!=(const Scalars& other) const { return !(*this == other); }

private:
    Scalars(CoeffTag tag, FieldPtr field) : tag_(tag), field_(std::move(field)) {}

    CoeffTag tag_;
    FieldPtr field_;
};

}  // namespace l2approx
