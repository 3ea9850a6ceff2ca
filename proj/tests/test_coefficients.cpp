#include <doctest.h>

#include "l2approx/coefficients.hpp"
#include "l2approx/error.hpp"
#include "l2approx/groupring.hpp"

#include <cmath>
#include <random>

using namespace l2approx;

namespace {

FieldPtr sqrt2() { return NumberField::create({Rational(-2), Rational(0), Rational(1)}); }

AlgebraicNumber alg(const FieldPtr& f, std::vector<Rational> c) { return AlgebraicNumber(f, std::move(c)); }

}  // namespace

TEST_CASE("rational parsing") {
    CHECK(parse_rational("-3/4") == Rational(-3, 4));
    CHECK(parse_rational("0.125") == Rational(1, 8));
    CHECK(parse_rational("1e-3") == Rational(1, 1000));
    CHECK(Rational(2, 3) + Rational(1, 6) == Rational(5, 6));
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("x"), Error);
}

TEST_CASE("quadratic field arithmetic") {
    const auto f = sqrt2();
    const auto s = AlgebraicNumber::generator(f);
    CHECK(s * s == AlgebraicNumber::from_rational(f, 2));
    const auto one_plus = alg(f, {1, 1});
    CHECK(one_plus.inverse() == alg(f, {-1, 1}));
    CHECK(one_plus * alg(f, {-1, 1}) == AlgebraicNumber::from_rational(f, 1));
    CHECK_THROWS_AS(AlgebraicNumber::from_rational(f, 0).inverse(), Error);
    CHECK_THROWS_AS(Coefficient(Rational(1)) + Coefficient(s), Error);
    CHECK_THROWS_AS(Coefficient(Rational(1)) / Coefficient(Rational(0)), Error);
}

TEST_CASE("number field validation") {
    CHECK_THROWS_AS(NumberField::create({Rational(1), Rational(2), Rational(1)}), Error);  // (z+1)^2
    CHECK_THROWS_AS(NumberField::create({Rational(-2), Rational(0), Rational(2)}), Error);  // not monic
    std::vector<Rational> deg9(10, Rational(0));
    deg9[0] = -2;
    deg9[9] = 1;
    CHECK_THROWS_AS(NumberField::create(deg9), Error);
}

TEST_CASE("embeddings of sqrt 2 and i") {
    const auto f = sqrt2();
    const auto s = AlgebraicNumber::generator(f);
    const auto e1 = s.embed(0);
    const auto e2 = s.embed(1);
    CHECK(std::abs(e1.value - Complex(std::sqrt(2.0), 0)) <= 1e-14);
    CHECK(std::abs(e2.value - Complex(-std::sqrt(2.0), 0)) <= 1e-14);
    CHECK(e1.radius <= 1e-14);
    CHECK(f->roots()[0].radius <= 1e-14 * std::sqrt(2.0));
    CHECK(AlgebraicNumber::from_rational(f, 3).embed(1).value == Complex(3, 0));
    CHECK(*f->with_embedding(1) == *f->with_embedding(1));
    CHECK_FALSE(*f == *f->with_embedding(1));

    const auto gi = NumberField::create({Rational(1), Rational(0), Rational(1)});
    const auto i = AlgebraicNumber::generator(gi);
    // Complex roots ordered by descending imaginary part: sigma_1(i) = i, sigma_2(i) = -i.
    CHECK(std::abs(i.embed(0).value - Complex(0, 1)) <= 1e-14);
    CHECK(std::abs(i.embed(1).value - Complex(0, -1)) <= 1e-14);
    CHECK(i.conj() == -i);
    CHECK(std::abs(i.conj().embed(0).value - std::conj(i.embed(0).value)) <= 1e-14);
}

TEST_CASE("higher degree roots match an independent polynomial check") {
    // z^3 - 2: one real root 2^(1/3), two complex ones.
    const auto f = NumberField::create({Rational(-2), Rational(0), Rational(0), Rational(1)});
    REQUIRE(f->roots().size() == 3);
    CHECK(f->roots()[0].real);
    CHECK(std::abs(f->roots()[0].value().real() - std::cbrt(2.0)) <= 1e-14);
    for (const auto& r : f->roots()) {
        const Complex z = r.value();
        CHECK(std::abs(z * z * z - 2.0) <= 1e-13);
    }
    CHECK_FALSE(f->is_normal().has_value());
    CHECK(sqrt2()->is_normal().value());
}

TEST_CASE("exactness and embedding homomorphism on random elements") {
    const auto f = NumberField::create({Rational(-3), Rational(1), Rational(0), Rational(1)});  // z^3+z-3
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-9, 9);
    auto random_number = [&] {
        std::vector<Rational> c;
        for (int j = 0; j < 3; ++j) c.push_back(ratio(d(rng), 1 + std::abs(d(rng))));
        return alg(f, c);
    };
    for (int t = 0; t < 40; ++t) {
        const auto a = random_number();
        auto b = random_number();
        if (b.is_zero()) continue;
        CHECK((a + b) - b == a);
        CHECK((a * b) / b == a);
        for (int k = 0; k < 3; ++k) {
            const auto ea = a.embed(k), eb = b.embed(k), eab = (a * b).embed(k);
            const double slack = eab.radius + ea.abs_upper() * eb.radius + eb.abs_upper() * ea.radius + 1e-12;
            CHECK(std::abs(eab.value - ea.value * eb.value) <= slack);
        }
        // Product over all embeddings of an algebraic integer's norm is a rational integer.
        std::vector<Rational> ic;
        for (int j = 0; j < 3; ++j) ic.emplace_back(d(rng));
        const auto z = alg(f, ic);
        if (z.is_zero()) continue;
        Complex norm(1, 0);
        for (int k = 0; k < 3; ++k) norm *= z.embed(k).value;
        CHECK(std::abs(norm.imag()) < 1e-6);
        CHECK(std::abs(norm.real() - std::round(norm.real())) < 1e-6);
        CHECK(std::round(norm.real()) != 0.0);
    }
}

TEST_CASE("precision exhaustion is explicit") {
    const auto f = sqrt2();
    // 1e30 + sqrt2 - 1e30 style cancellation: a value that is tiny relative to its terms.
    const Rational big("1000000000000000000000");
    const auto x = alg(f, {Rational(0), big});  // 1e21 * sqrt2
    CHECK_NOTHROW(x.embed(0));
    Rational r(3, 2);
    for (int i = 0; i < 9; ++i) r = (r + 2 / r) / 2;  // far beyond working precision
    const auto y = alg(f, {-r * big, big});  // 1e21 (sqrt2 - r): cancels below the root radius
    CHECK(std::abs(y.embed(1).value.real()) > 1.0);
    CHECK_THROWS_AS(y.embed(0), PrecisionError);
}

TEST_CASE("clear denominators") {
    const auto f = sqrt2();
    const auto z = GroupSpec::free_abelian(1);
    GroupRingMatrix m(z, Scalars::algebraic(f), 1, 1);
    m.add_term(0, 0, z.identity(), alg(f, {Rational(1, 2), Rational(1, 3)}));
    const auto c = clear_denominators(m);
    CHECK(c.factor == 6);
    CHECK(c.matrix.at(0, 0).terms().begin()->second == Coefficient(alg(f, {3, 2})));

    GroupRingMatrix q(z, Scalars::rational(), 1, 2);
    q.add_term(0, 0, z.identity(), Rational(5, 4));
    q.add_term(0, 1, z.identity(), Rational(7, 6));
    CHECK(clear_denominators(q).factor == 12);

    GroupRingMatrix i = GroupRingMatrix::identity(z, Scalars::rational(), 2);
    CHECK(clear_denominators(i).factor == 1);
    CHECK(clear_denominators(i).matrix == i);
}
