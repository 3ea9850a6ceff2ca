#pragma once

#include "l2approx/groupring.hpp"

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace testing_support {

using namespace l2approx;

inline GroupElement z1(int e) { return GroupElement(std::vector<std::int32_t>{e}); }
inline GroupElement z2(int a, int b) { return GroupElement(std::vector<std::int32_t>{a, b}); }

/// sum c_e t^e over Z.
inline GroupRingElement laurent(std::initializer_list<std::pair<int, Rational>> terms) {
    GroupRingElement e;
    for (const auto& [x, c] : terms) e.add_term(z1(x), c);
    return e;
}

/// sum c w over F_2 from word strings.
inline GroupRingElement words(std::initializer_list<std::pair<const char*, Rational>> terms) {
    GroupRingElement e;
    for (const auto& [w, c] : terms) e.add_term(parse_word(w, 2), c);
    return e;
}

inline GroupRingMatrix one_by_one(const GroupSpec& g, const Scalars& s, GroupRingElement e) {
    GroupRingMatrix m(g, s, 1, 1);
    m.set(0, 0, std::move(e));
    return m;
}

/// 2 - t - t^-1 over Z.
inline GroupRingMatrix path_laplacian() {
    return one_by_one(GroupSpec::free_abelian(1), Scalars::rational(), laurent({{0, 2}, {1, -1}, {-1, -1}}));
}

/// The presentation map [a-1, b-1] over F_2 as a 1x2 row, so that B* B is 2x2.
inline GroupRingMatrix f2_presentation_row() {
    const auto f2 = GroupSpec::free(2);
    GroupRingMatrix m(f2, Scalars::rational(), 1, 2);
    m.set(0, 0, words({{"a", 1}, {"", -1}}));
    m.set(0, 1, words({{"b", 1}, {"", -1}}));
    return m;
}

/// Quotients of F_2 of sizes 2, 6 and 12: Z/2, S_3 and A_4.
inline std::vector<QuotientMap> f2_quotients() {
    const auto f2 = GroupSpec::free(2);
    const auto c2 = GroupSpec::cyclic_product({2});
    const auto s3 = GroupSpec::from_permutations({{1, 0, 2}, {1, 2, 0}});
    const auto a4 = GroupSpec::from_permutations({{1, 2, 0, 3}, {1, 0, 3, 2}});
    auto gen = [](const GroupSpec& g, std::size_t i) { return g.basic_generators()[i]; };
    return {QuotientMap::from_images(f2, c2, {c2.element(1), c2.element(1)}),
            QuotientMap::from_images(f2, s3, {gen(s3, 0), gen(s3, 1)}),
            QuotientMap::from_images(f2, a4, {gen(a4, 0), gen(a4, 1)})};
}

/// Z/n quotient maps of Z.
inline std::vector<QuotientMap> cyclic_quotients(std::initializer_list<std::int64_t> sizes) {
    const auto z = GroupSpec::free_abelian(1);
    std::vector<QuotientMap> out;
    for (auto n : sizes) out.push_back(QuotientMap::from_moduli(z, {n}));
    return out;
}

}  // namespace testing_support
