#pragma once

#include "l2approx/approx.hpp"
#include "l2approx/error.hpp"
#include "l2approx/orelocal.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace l2approx {

using Json = nlohmann::ordered_json;

/// Schema violation; `where` is a JSON pointer or "line L, column C".
class SchemaError : public Error {
public:
    SchemaError(std::string where, const std::string& what)
        : Error("schema error at " + where + ": " + what), where_(std::move(where)) {}
    const std::string& where() const { return where_; }

private:
    std::string where_;
};

struct QuotientLevelSpec {
    std::vector<std::int64_t> moduli;
    /// With a target group: images of the generators, each an element index or {"generator": i}.
    std::optional<Json> target;
    std::vector<Json> images;
};

struct SchemeSpec {
    Scheme kind = Scheme::Quotient;
    std::vector<QuotientLevelSpec> quotients;
    int first = 1;
    int last = 1;
};

struct OreSpec {
    GroupRingElement alpha;
    GroupRingElement sigma;
};

struct ZeroDivisorSpec {
    PolyGroupRingElement a;
    PolyGroupRingElement b;
    GroupElement g;
    GroupElement g_prime;
};

struct Problem {
    Json group_spec;
    Json field_spec;
    GroupSpec group = GroupSpec::free_abelian(1);
    Scalars scalars = Scalars::rational();
    std::optional<GroupRingMatrix> matrix;
    std::optional<SchemeSpec> scheme;
    Rational tol = Rational(1, 1000);

    std::optional<Rational> declared_limit;
    bool integrality = false;
    std::vector<double> grid;
    std::optional<std::pair<double, double>> gap;
    std::optional<int> liouville_n_max;
    std::optional<OreSpec> ore;
    std::optional<ZeroDivisorSpec> zero_divisor;
    std::string output_dir;
};

/// Parses text; syntax errors carry line and column, schema errors a JSON pointer.
Problem parse_problem(const std::string& text);
Problem load_problem(const std::string& path);
Problem problem_from_json(const Json& j);
Json problem_to_json(const Problem& p);

ApproximationScheme build_scheme(const Problem& p);

Json element_json(const GroupSpec& g, const GroupElement& e);
GroupSpec group_from_json(const Json& j, const std::string& where = "/group");
Json coefficient_to_json(const Coefficient& c);
Json element_to_json(const GroupSpec& g, const GroupRingElement& e);
Json matrix_to_json(const GroupRingMatrix& m);
Json poly_element_to_json(const GroupSpec& g, const PolyGroupRingElement& e);

/// Wall times are included only with `timing`, keeping exact outputs byte-identical across runs.
Json run_to_json(const ApproximationRun& run, bool timing = false);
Json verdict_to_json(const AtiyahVerdict& v);
Json kappa_to_json(const GroupRingMatrix& m);
Json det_bound_to_json(const DetBoundReport& r);
Json continuity_to_json(const ContinuityReport& r);
Json gap_to_json(const GapReport& r);
Json liouville_to_json(const LiouvilleCertificate& c);
Json ore_to_json(const GroupSpec& g, const OreSolution& s);
Json specialization_to_json(const GroupSpec& g, const Specialization& s);

/// {"value": v, "provenance": "exact" | "float"}
Json exact_value(const Rational& q);
Json float_value(double x);

}  // namespace l2approx
