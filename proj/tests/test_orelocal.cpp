#include "doctest.h"
#include "support.hpp"

#include "l2approx/error.hpp"
#include "l2approx/orelocal.hpp"

#include <random>
#include <set>

using namespace testing_support;

namespace {

GroupRingElement random_element(std::mt19937_64& rng, const std::vector<GroupElement>& pool, int terms) {
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> coeff(-3, 3);
    GroupRingElement e;
    while (e.is_zero()) {
        for (int i = 0; i < terms; ++i) e.add_term(pool[pick(rng)], Rational(coeff(rng)));
    }
    return e;
}

/// |Xg \ X| summed over g, recomputed from scratch.
std::size_t boundary_oracle(const GroupSpec& g, const std::vector<GroupElement>& x, const GroupRingElement& a,
                            const GroupRingElement& s) {
    std::set<GroupElement> xs(x.begin(), x.end());
    std::set<GroupElement> z;
    for (const auto& [h, c] : a.terms()) z.insert(h);
    for (const auto& [h, c] : s.terms()) z.insert(h);
    std::size_t total = 0;
    for (const auto& h : z) {
        for (const auto& e : x) total += xs.count(g.multiply(e, h)) == 0;
    }
    return total;
}

void check_solution(const GroupSpec& g, const OreSolution& sol) {
    CHECK_FALSE(sol.tau.is_zero());
    CHECK(sol.residual.is_zero());
    auto lhs = GroupRingElement::multiply(g, sol.beta, sol.sigma);
    lhs.subtract(GroupRingElement::multiply(g, sol.tau, sol.alpha));
    CHECK(lhs.is_zero());
    CHECK(sol.boundary_sum == boundary_oracle(g, sol.X, sol.alpha, sol.sigma));
    CHECK(sol.boundary_sum < sol.X.size());
    CHECK(sol.equations < sol.unknowns);
    for (const auto& [h, c] : sol.beta.terms()) CHECK(std::find(sol.X.begin(), sol.X.end(), h) != sol.X.end());
    for (const auto& [h, c] : sol.tau.terms()) CHECK(std::find(sol.X.begin(), sol.X.end(), h) != sol.X.end());
}

GroupElement c2(int i) { return GroupElement(std::vector<std::int32_t>{i}); }

}  // namespace

TEST_CASE("Ore solution on Z") {
    const auto z = GroupSpec::free_abelian(1);
    const auto sol = ore_solve(z, laurent({{0, 1}, {1, -1}}), laurent({{1, 1}}));
    check_solution(z, sol);
    CHECK(sol.level == 1);
}

TEST_CASE("Ore solutions on Z^2 and algebraic coefficients") {
    const auto z2g = GroupSpec::free_abelian(2);
    std::vector<GroupElement> box;
    for (int a = -1; a <= 1; ++a) {
        for (int b = -1; b <= 1; ++b) box.push_back(z2(a, b));
    }
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 3; ++trial) {
        const auto alpha = random_element(rng, box, 3);
        const auto sigma = random_element(rng, box, 3);
        check_solution(z2g, ore_solve(z2g, alpha, sigma));
    }
    const auto f = NumberField::create({Rational(-2), Rational(0), Rational(1)});
    const auto z = GroupSpec::free_abelian(1);
    GroupRingElement alpha;
    alpha.add_term(z1(0), AlgebraicNumber::generator(f));
    alpha.add_term(z1(1), AlgebraicNumber::from_rational(f, -1));
    GroupRingElement sigma;
    sigma.add_term(z1(-1), AlgebraicNumber::from_rational(f, 3));
    check_solution(z, ore_solve(z, alpha, sigma));
}

TEST_CASE("Ore solutions in Q S_3") {
    const auto s3 = GroupSpec::from_permutations({{1, 0, 2}, {1, 2, 0}});
    const auto elems = s3.elements();
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 5; ++trial) {
        const auto alpha = random_element(rng, elems, 4);
        const auto sigma = GroupRingElement::monomial(elems[static_cast<std::size_t>(trial) % 6], Rational(2));
        const auto sol = ore_solve(s3, alpha, sigma);
        check_solution(s3, sol);
        CHECK(sol.X.size() == 6);
    }
}

TEST_CASE("Ore preconditions") {
    const auto f2 = GroupSpec::free(2);
    CHECK_THROWS_WITH_AS(ore_solve(f2, words({{"a", 1}}), words({{"b", 1}})), doctest::Contains("free groups"), Error);
    const auto z = GroupSpec::free_abelian(1);
    CHECK_THROWS_AS(ore_solve(z, laurent({{0, 1}}), GroupRingElement()), Error);
}

TEST_CASE("polynomial arithmetic") {
    const auto x = Polynomial::variable(0, 2);
    const auto y = Polynomial::variable(1, 2);
    const auto one = Polynomial::constant(1, 2);
    const auto p = (x - one) * (x + y);
    CHECK(p.evaluate({Rational(3), Rational(2)}) == 10);
    CHECK(p.evaluate({Rational(1), Rational(5)}) == 0);
    CHECK(p.evaluate({Rational(1, 2), Rational(0)}) == Rational(-1, 4));
    CHECK(p.to_string() == "x1^2 + x1 x2 - x1 - x2");
    CHECK((p - p).is_zero());
    CHECK_THROWS_AS(p.evaluate({Rational(1)}), Error);
}

TEST_CASE("zero-divisor specialization over Z/2") {
    const auto g = GroupSpec::cyclic_product({2});
    const auto x = Polynomial::variable(0, 1);
    const auto one = Polynomial::constant(1, 1);
    PolyGroupRingElement b;
    b.add_term(c2(0), one);
    b.add_term(c2(1), one);

    PolyGroupRingElement a;
    a.add_term(c2(0), x);
    a.add_term(c2(1), Polynomial() - x);
    const auto s = specialize_zero_divisor(g, a, b, c2(0), c2(0));
    CHECK(s.point == std::vector<Rational>{1});
    CHECK(s.rejected == 1);
    CHECK(s.A == GroupRingElement::multiply(g, GroupRingElement::monomial(c2(0), Rational(1)),
                                             [&] {
                                                 GroupRingElement e;
                                                 e.add_term(c2(0), Rational(1));
                                                 e.add_term(c2(1), Rational(-1));
                                                 return e;
                                             }()));
    CHECK(GroupRingElement::multiply(g, s.A, s.B).is_zero());

    PolyGroupRingElement a2;
    a2.add_term(c2(0), x - one);
    a2.add_term(c2(1), one - x);
    const auto s2 = specialize_zero_divisor(g, a2, b, c2(0), c2(0));
    CHECK(s2.point == std::vector<Rational>{0});
    CHECK_FALSE(s2.A.is_zero());
    CHECK(s2.A.coefficient(c2(0), Rational(0)) == Coefficient(Rational(-1)));
    CHECK(GroupRingElement::multiply(g, s2.A, s2.B).is_zero());

    PolyGroupRingElement not_zero;
    not_zero.add_term(c2(0), one);
    CHECK_THROWS_WITH_AS(specialize_zero_divisor(g, not_zero, b, c2(0), c2(0)), doctest::Contains("product ="), Error);
    CHECK_THROWS_WITH_AS(specialize_zero_divisor(g, PolyGroupRingElement(), b, c2(0), c2(0)),
                         doctest::Contains("no nonzero designated coefficient"), Error);
}

TEST_CASE("specialization in two variables skips the zero sets") {
    const auto g = GroupSpec::cyclic_product({2});
    const auto x1 = Polynomial::variable(0, 2);
    const auto x2 = Polynomial::variable(1, 2);
    PolyGroupRingElement a;
    a.add_term(c2(0), x1 - x2);
    a.add_term(c2(1), x2 - x1);
    PolyGroupRingElement b;
    b.add_term(c2(0), x2);
    b.add_term(c2(1), x2);
    const auto s = specialize_zero_divisor(g, a, b, c2(0), c2(1));
    CHECK(s.point == std::vector<Rational>{0, 1});
    CHECK(s.rejected == 1);
    CHECK(GroupRingElement::multiply(g, s.A, s.B).is_zero());
    CHECK_THROWS_AS(specialize_zero_divisor(g, a, PolyGroupRingElement(), c2(0), c2(0)), Error);
}
