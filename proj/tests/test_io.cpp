#include "doctest.h"
#include "support.hpp"

#include "l2approx/io.hpp"

using namespace testing_support;

namespace {

const char* kF2Problem = R"({
  "group": {"kind": "free", "rank": 2},
  "matrix": {"rows": 1, "cols": 2, "entries": [[
    [{"g": "a", "c": 1}, {"g": "1", "c": -1}],
    [{"g": "b", "c": "1"}, {"g": "1", "c": "-1"}]
  ]]},
  "scheme": {"kind": "quotient", "levels": [
    {"target": {"kind": "cyclic", "moduli": [2]}, "images": [1, 1]},
    {"target": {"kind": "permutations", "generators": [[1, 0, 2], [1, 2, 0]]},
     "images": [{"generator": 0}, {"generator": 1}]}
  ]},
  "tol": "1/10",
  "analyses": {"kernel": {"declared_limit": "1", "integrality": true}}
})";

std::string schema_where(const std::string& text) {
    try {
        parse_problem(text);
    } catch (const SchemaError& e) {
        return e.where();
    }
    return "<no error>";
}

}  // namespace

TEST_CASE("problem parsing builds the matrix and scheme") {
    const Problem p = parse_problem(kF2Problem);
    CHECK(p.group.kind() == GroupKind::Free);
    REQUIRE(p.matrix);
    CHECK(*p.matrix == f2_presentation_row());
    CHECK(p.tol == Rational(1, 10));
    CHECK(p.integrality);
    CHECK(*p.declared_limit == 1);
    const auto scheme = build_scheme(p);
    CHECK(scheme.size() == 2);
    const auto run = approximate_kernel_dim(*p.matrix, scheme, RunOptions{}, p.declared_limit);
    // kernel of the 2x2 Laplacian at a quotient Q has dimension (|Q| + 1)/|Q| per copy
    CHECK(run.levels[0].dim.value == Rational(3, 2));
    CHECK(run.levels[1].dim.value == Rational(7, 6));
}

TEST_CASE("problem JSON round trips") {
    const Problem p = parse_problem(kF2Problem);
    const Json j = problem_to_json(p);
    const Problem q = problem_from_json(j);
    CHECK(*q.matrix == *p.matrix);
    CHECK(problem_to_json(q) == j);

    const char* algebraic = R"({
      "group": {"kind": "free_abelian", "rank": 1},
      "field": {"kind": "algebraic", "minpoly": [-2, 0, 1]},
      "matrix": {"rows": 1, "cols": 1, "entries": [[[{"g": [0], "c": ["0", "1"]}, {"g": [1], "c": "-1"}]]]},
      "scheme": {"kind": "quotient", "sizes": [2, 4, 8]},
      "analyses": {"gap": {"interval": [0.1, 0.2]}, "liouville": {"target": "liouville_constant", "n_max": 3}}
    })";
    const Problem a = parse_problem(algebraic);
    CHECK(a.scalars.tag() == CoeffTag::Algebraic);
    CHECK(a.scheme->quotients.size() == 3);
    CHECK(*a.liouville_n_max == 3);
    const Problem b = problem_from_json(problem_to_json(a));
    CHECK(*b.matrix == *a.matrix);
    CHECK(problem_to_json(b) == problem_to_json(a));

    const char* zd = R"j({
      "group": {"kind": "cyclic", "moduli": [2]},
      "analyses": {"zero_divisor": {
        "a": [{"g": 0, "c": {"poly": {"(1)": "1", "(0)": "-1"}}}, {"g": 1, "c": {"poly": {"(1)": "-1", "(0)": "1"}}}],
        "b": [{"g": 0, "c": {"poly": {"(0)": 1}}}, {"g": 1, "c": {"poly": {"(0)": 1}}}],
        "g": 0, "g_prime": 0}}
    })j";
    const Problem z = parse_problem(zd);
    REQUIRE(z.zero_divisor);
    CHECK(z.zero_divisor->a.variables() == 1);
    CHECK(problem_from_json(problem_to_json(z)).zero_divisor->a == z.zero_divisor->a);
}

TEST_CASE("schema errors name the offending field") {
    CHECK(schema_where(R"({"group": {"kind": "free", "rank": 2}, "colour": 1})") == "/colour");
    CHECK(schema_where(R"({"group": {"kind": "lattice"}})") == "/group/kind");
    CHECK(schema_where(R"({"group": {"kind": "free_abelian"}})") == "/group/rank");
    CHECK(schema_where(R"({"group": {"kind": "free_abelian", "rank": 1},
        "matrix": {"rows": 1, "cols": 1, "entries": [[[{"g": [0], "c": "1/0"}]]]}})") ==
          "/matrix/entries/0/0/0/c");
    CHECK(schema_where(R"({"group": {"kind": "free_abelian", "rank": 1},
        "matrix": {"rows": 2, "cols": 1, "entries": [[[]]]}})") == "/matrix/entries");
    CHECK(schema_where(R"({"group": {"kind": "free", "rank": 2}, "scheme": {"kind": "folner", "first": 1, "last": 2}})") ==
          "/scheme/kind");
    CHECK(schema_where(R"({"group": {"kind": "free_abelian", "rank": 1}, "tol": "-1"})") == "/tol");
    CHECK(schema_where(R"({"group": {"kind": "free_abelian", "rank": 1},
        "analyses": {"liouville": {"target": "e", "n_max": 3}}})") == "/analyses/liouville/target");
    CHECK(schema_where(R"({"group": {"kind": "cyclic", "moduli": [2]},
        "analyses": {"ore": {"alpha": [{"g": 5, "c": 1}], "sigma": []}}})") == "/analyses/ore/alpha/0/g");
}

TEST_CASE("hyphenated and finite group kinds") {
    CHECK(group_from_json(Json::parse(R"({"kind": "free-abelian", "rank": 3})")).rank() == 3);
    const auto c2 = group_from_json(Json::parse(R"({"kind": "finite", "table": [[0, 1], [1, 0]]})"));
    CHECK(c2.order() == 2);
}

TEST_CASE("syntax errors carry line and column") {
    const std::string text = "{\n  \"group\": {\"kind\": \"free\",\n    \"rank\": 2,,\n}";
    const auto where = schema_where(text);
    CHECK(where == "line 3, column 15");
}

TEST_CASE("quotient images must define a homomorphism") {
    const Problem p = parse_problem(R"({
      "group": {"kind": "free_abelian", "rank": 1},
      "scheme": {"kind": "quotient", "levels": [{"target": {"kind": "permutations", "generators": [[1, 0, 2], [1, 2, 0]]},
                                                 "images": [{"generator": 0}]}]}})");
    // one generator of Z to a transposition is a homomorphism onto Z/2 inside S_3
    CHECK(build_scheme(p).size() == 1);
    const Problem bad = parse_problem(R"({
      "group": {"kind": "free_abelian", "rank": 2},
      "scheme": {"kind": "quotient", "levels": [{"target": {"kind": "permutations", "generators": [[1, 0, 2], [1, 2, 0]]},
                                                 "images": [{"generator": 0}, {"generator": 1}]}]}})");
    CHECK_THROWS_AS(build_scheme(bad), SchemaError);
}

TEST_CASE("report values carry provenance") {
    const auto z = GroupSpec::free_abelian(1);
    const auto m = one_by_one(z, Scalars::rational(), laurent({{-1, -1}, {0, 2}, {1, -1}}));
    const Json k = kappa_to_json(m);
    CHECK(k["S"] == 3);
    CHECK(k["kappa"] == 6.0);
    CHECK(k["provenance"]["kappa"] == "exact");
    const auto halves = one_by_one(z, Scalars::rational(), laurent({{0, Rational(1, 3)}, {1, Rational(-1, 3)}}));
    CHECK(kappa_to_json(halves)["provenance"]["kappa"] == "float");

    const auto run = approximate_kernel_dim(m, ApproximationScheme::quotients(cyclic_quotients({2, 3})), RunOptions{});
    const Json j = run_to_json(run);
    CHECK(j["levels"][0]["dim"]["provenance"] == "exact");
    CHECK(j["levels"][0]["log_det"]["provenance"] == "float");
    CHECK_FALSE(j["levels"][0].contains("seconds"));
    CHECK(run_to_json(run, true)["levels"][0].contains("seconds"));
    CHECK(exact_value(Rational(1, 2)).dump() == R"({"value":"1/2","provenance":"exact"})");
}
