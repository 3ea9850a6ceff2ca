#include <doctest.h>

#include "l2approx/error.hpp"
#include "l2approx/finitize.hpp"
#include "l2approx/spectra.hpp"
#include "support.hpp"

#include <cmath>
#include <random>

using namespace l2approx;
using namespace testing_support;

TEST_CASE("adjoint") {
    const auto z = GroupSpec::free_abelian(1);
    const auto m = one_by_one(z, Scalars::rational(), laurent({{0, 1}, {1, 2}}));
    CHECK(m.adjoint().at(0, 0) == laurent({{0, 1}, {-1, 2}}));
    CHECK(m.adjoint().adjoint() == m);

    const auto gi = NumberField::create({Rational(1), Rational(0), Rational(1)});
    GroupRingMatrix c(z, Scalars::algebraic(gi), 1, 1);
    c.add_term(0, 0, z1(1), AlgebraicNumber::generator(gi));
    const auto ca = c.adjoint();
    CHECK(ca.at(0, 0).terms().size() == 1);
    CHECK(ca.at(0, 0).terms().begin()->first == z1(-1));
    CHECK(ca.at(0, 0).terms().begin()->second == Coefficient(-AlgebraicNumber::generator(gi)));

    const auto f2 = GroupSpec::free(2);
    GroupRingMatrix col(f2, Scalars::rational(), 2, 1);
    col.set(0, 0, words({{"a", 1}, {"", -1}}));
    col.set(1, 0, words({{"b", 1}, {"", -1}}));
    const auto row = col.adjoint();
    CHECK(row.rows() == 1);
    CHECK(row.cols() == 2);
    CHECK(row.at(0, 0) == words({{"A", 1}, {"", -1}}));
    CHECK(row.at(0, 1) == words({{"B", 1}, {"", -1}}));
}

TEST_CASE("products and polynomial evaluation") {
    const auto f2 = GroupSpec::free(2);
    const auto am1 = one_by_one(f2, Scalars::rational(), words({{"a", 1}, {"", -1}}));
    CHECK((am1.adjoint() * am1).at(0, 0) == words({{"", 2}, {"a", -1}, {"A", -1}}));

    const auto delta = path_laplacian();
    const auto id = GroupRingMatrix::identity(delta.group(), delta.scalars(), 1);
    CHECK(id * delta == delta);
    const auto sq = delta * delta;
    CHECK(sq.at(0, 0) == laurent({{0, 6}, {1, -4}, {-1, -4}, {2, 1}, {-2, 1}}));
    CHECK(delta.evaluate_polynomial({Rational(0), Rational(0), Rational(1)}) == sq);
    CHECK(delta.evaluate_polynomial({Rational(1), Rational(1)}) == delta + id);
    CHECK_THROWS_AS(f2_presentation_row() * f2_presentation_row(), Error);
}

TEST_CASE("kappa examples") {
    const auto z = GroupSpec::free_abelian(1);
    const auto id = GroupRingMatrix::identity(z, Scalars::rational(), 3).kappa();
    CHECK(id.S == 1);
    CHECK(id.Sstar == 1);
    CHECK(id.inf == 1.0);
    CHECK(id.kappa == doctest::Approx(1.0));

    const auto k = path_laplacian().kappa();
    CHECK(k.S == 3);
    CHECK(k.Sstar == 3);
    CHECK(k.inf == 2.0);
    CHECK(k.kappa == doctest::Approx(6.0));
    CHECK(k.kappa >= 6.0);

    const auto d = f2_presentation_row().laplacian();
    CHECK(d.rows() == 2);
    CHECK(d.at(0, 0) == words({{"", 2}, {"a", -1}, {"A", -1}}));
    CHECK(d.at(0, 1) == words({{"Ab", 1}, {"A", -1}, {"b", -1}, {"", 1}}));
    const auto kd = d.kappa();
    CHECK(kd.S == 7);
    CHECK(kd.Sstar == 7);
    CHECK(kd.inf == 2.0);
    CHECK(kd.kappa == doctest::Approx(14.0));
}

TEST_CASE("trace") {
    CHECK(path_laplacian().trace() == Coefficient(Rational(2)));
    const auto z = GroupSpec::free_abelian(1);
    CHECK(GroupRingMatrix::identity(z, Scalars::rational(), 4).trace() == Coefficient(Rational(4)));
    const auto sq = path_laplacian() * path_laplacian();
    CHECK(sq.trace() == Coefficient(Rational(6)));
}

TEST_CASE("conjugation") {
    const auto f = NumberField::create({Rational(-2), Rational(0), Rational(1)});
    const auto z = GroupSpec::free_abelian(1);
    const auto s = AlgebraicNumber::generator(f);
    GroupRingMatrix d(z, Scalars::algebraic(f), 1, 1);
    d.add_term(0, 0, z1(0), AlgebraicNumber::from_rational(f, 3));
    d.add_term(0, 0, z1(1), -s);
    d.add_term(0, 0, z1(-1), -s);
    const auto c = d.conjugate(1);
    for (const auto& [g, x] : c.at(0, 0).terms()) {
        const double expect = g == z1(0) ? 3.0 : std::sqrt(2.0);
        CHECK(x.to_complex().real() == doctest::Approx(expect).epsilon(1e-14));
    }
    CHECK(c.adjoint() == d.adjoint().conjugate(1));

    const auto r = path_laplacian();
    CHECK(r.conjugate(0) == r);
    GroupRingMatrix fl(z, Scalars::complex(), 1, 1);
    fl.add_term(0, 0, z1(0), Complex(1, 0));
    CHECK_THROWS_AS(fl.conjugate(0), Error);
}

TEST_CASE("kappa is unchanged under induction to a larger group") {
    // Z -> Z^2 via t -> t_1, F_2 -> F_3 via a -> a, b -> b.
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> coef(-3, 3), ex(-2, 2);
    const auto z = GroupSpec::free_abelian(1), zz = GroupSpec::free_abelian(2);
    for (int t = 0; t < 20; ++t) {
        GroupRingMatrix a(z, Scalars::rational(), 2, 2), b(zz, Scalars::rational(), 2, 2);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                for (int k = 0; k < 3; ++k) {
                    const int e = ex(rng);
                    const Rational v(coef(rng));
                    if (v == 0) continue;
                    a.add_term(r, c, z1(e), v);
                    b.add_term(r, c, z2(e, 0), v);
                }
        const auto ka = a.kappa(), kb = b.kappa();
        CHECK(ka.S == kb.S);
        CHECK(ka.Sstar == kb.Sstar);
        CHECK(ka.kappa == kb.kappa);
    }
    const auto f3 = GroupSpec::free(3);
    const auto d = f2_presentation_row().laplacian();
    GroupRingMatrix e(f3, Scalars::rational(), 2, 2);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            for (const auto& [g, x] : d.at(r, c).terms()) e.add_term(r, c, g, x);
    CHECK(e.kappa().kappa == d.kappa().kappa);
}

TEST_CASE("compressions never increase kappa and respect adjoints") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> coef(-4, 4), ex(-2, 2), dim(1, 3);
    const auto zz = GroupSpec::free_abelian(2);
    for (int t = 0; t < 50; ++t) {
        const int d = dim(rng);
        GroupRingMatrix a(zz, Scalars::rational(), d, d);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c)
                for (int k = 0; k < 3; ++k) {
                    const int x = ex(rng), y = ex(rng);
                    if (std::abs(x) + std::abs(y) > 2) continue;
                    a.add_term(r, c, z2(x, y), Rational(coef(rng)));
                }
        const double kappa = a.kappa().kappa;
        const auto q = QuotientMap::from_moduli(zz, {2 + t % 4, 3});
        const auto qm = quotient_model(a, q);
        const auto fm = folner_model(a, build_folner(zz, 1 + t % 3));
        CHECK(qm.kappa().kappa <= kappa * (1 + 1e-15));
        CHECK(fm.kappa().kappa <= kappa * (1 + 1e-15));
        CHECK(quotient_model(a.adjoint(), q) == qm.adjoint());
        CHECK(folner_model(a.adjoint(), build_folner(zz, 1 + t % 3)) == fm.adjoint());
        CHECK(norm_lower_bound(qm, 100) <= kappa * (1 + 1e-12));
    }
}
