#include "l2approx/io.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace l2approx {

namespace {

std::string join(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string join(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

std::string kind_name(const Json& j) {
    switch (j.type()) {
        case Json::value_t::object: return "an object";
        case Json::value_t::array: return "an array";
        case Json::value_t::string: return "a string";
        case Json::value_t::boolean: return "a boolean";
        case Json::value_t::null: return "null";
        default: return "a number";
    }
}

void expect_object(const Json& j, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path.empty() ? "/" : path, "expected an object, found " + kind_name(j));
}

void expect_array(const Json& j, const std::string& path) {
    if (!j.is_array()) throw SchemaError(path, "expected an array, found " + kind_name(j));
}

void check_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& path) {
    expect_object(j, path);
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) {
            std::string list;
            for (const char* a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
            throw SchemaError(join(path, key), "unknown field (allowed: " + list + ")");
        }
    }
}

const Json& require(const Json& j, const char* key, const std::string& path) {
    expect_object(j, path);
    const auto it = j.find(key);
    if (it == j.end()) throw SchemaError(join(path, key), "missing required field");
    return *it;
}

std::int64_t get_int(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) throw SchemaError(path, "expected an integer, found " + kind_name(j));
    return j.get<std::int64_t>();
}

std::string get_string(const Json& j, const std::string& path) {
    if (!j.is_string()) throw SchemaError(path, "expected a string, found " + kind_name(j));
    return j.get<std::string>();
}

double get_double(const Json& j, const std::string& path) {
    if (!j.is_number()) throw SchemaError(path, "expected a number, found " + kind_name(j));
    return j.get<double>();
}

Rational get_rational(const Json& j, const std::string& path) {
    try {
        if (j.is_string()) return parse_rational(j.get<std::string>());
        if (j.is_number_integer()) return Rational(Integer(j.dump()));
        if (j.is_number_float()) return parse_rational(j.dump());
    } catch (const SchemaError&) {
        throw;
    } catch (const Error& e) {
        throw SchemaError(path, e.what());
    }
    throw SchemaError(path, "expected a rational (string like \"3/4\" or a number), found " + kind_name(j));
}

std::vector<int> int_list(const Json& j, const std::string& path) {
    expect_array(j, path);
    std::vector<int> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(static_cast<int>(get_int(j[i], join(path, i))));
    return out;
}

Scalars field_from_json(const Json& j, const std::string& path) {
    check_keys(j, {"kind", "minpoly", "embedding"}, path);
    const std::string kind = get_string(require(j, "kind", path), join(path, "kind"));
    if (kind == "rational") return Scalars::rational();
    if (kind == "complex") return Scalars::complex();
    if (kind != "algebraic") {
        throw SchemaError(join(path, "kind"), "unknown field kind '" + kind + "' (expected rational, algebraic, complex)");
    }
    const Json& mp = require(j, "minpoly", path);
    expect_array(mp, join(path, "minpoly"));
    std::vector<Rational> coeffs;
    for (std::size_t i = 0; i < mp.size(); ++i) coeffs.push_back(get_rational(mp[i], join(join(path, "minpoly"), i)));
    FieldPtr field;
    try {
        field = NumberField::create(coeffs);
        if (j.contains("embedding")) {
            field = field->with_embedding(static_cast<int>(get_int(j["embedding"], join(path, "embedding"))));
        }
    } catch (const SchemaError&) {
        throw;
    } catch (const Error& e) {
        throw SchemaError(path, e.what());
    }
    return Scalars::algebraic(field);
}

GroupElement element_from_json(const GroupSpec& g, const Json& j, const std::string& path) {
    try {
        switch (g.kind()) {
            case GroupKind::FreeAbelian: {
                std::vector<std::int32_t> v;
                if (j.is_number_integer() && g.rank() == 1) {
                    v.push_back(static_cast<std::int32_t>(j.get<std::int64_t>()));
                } else {
                    for (int x : int_list(j, path)) v.push_back(x);
                }
                GroupElement e(std::move(v));
                g.check(e);
                return e;
            }
            case GroupKind::Free: return parse_word(get_string(j, path), g.rank());
            case GroupKind::Finite: {
                const auto idx = get_int(j, path);
                if (idx < 0 || idx >= g.order()) throw SchemaError(path, "element index out of range");
                return g.element(idx);
            }
        }
    } catch (const SchemaError&) {
        throw;
    } catch (const Error& e) {
        throw SchemaError(path, e.what());
    }
    throw SchemaError(path, "unsupported group");
}

Coefficient coefficient_from_json(const Scalars& s, const Json& j, const std::string& path) {
    switch (s.tag()) {
        case CoeffTag::Rational: return Coefficient(get_rational(j, path));
        case CoeffTag::Algebraic: {
            const int deg = s.field()->degree();
            std::vector<Rational> coords(static_cast<std::size_t>(deg), Rational(0));
            if (j.is_array()) {
                if (static_cast<int>(j.size()) > deg) throw SchemaError(path, "more coordinates than the field degree");
                for (std::size_t i = 0; i < j.size(); ++i) coords[i] = get_rational(j[i], join(path, i));
            } else {
                coords[0] = get_rational(j, path);
            }
            return Coefficient(AlgebraicNumber(s.field(), coords));
        }
        case CoeffTag::Complex: {
            if (j.is_array()) {
                if (j.size() != 2) throw SchemaError(path, "complex coefficient needs [re, im]");
                return Coefficient(Complex(get_double(j[0], join(path, 0)), get_double(j[1], join(path, 1))));
            }
            return Coefficient(Complex(get_double(j, path), 0.0));
        }
    }
    throw SchemaError(path, "unsupported coefficient");
}

GroupRingElement terms_from_json(const GroupSpec& g, const Scalars& s, const Json& j, const std::string& path) {
    expect_array(j, path);
    GroupRingElement out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto p = join(path, i);
        check_keys(j[i], {"g", "c"}, p);
        out.add_term(element_from_json(g, require(j[i], "g", p), join(p, "g")),
                     coefficient_from_json(s, require(j[i], "c", p), join(p, "c")));
    }
    return out;
}

GroupRingMatrix matrix_from_json(const GroupSpec& g, const Scalars& s, const Json& j, const std::string& path) {
    check_keys(j, {"rows", "cols", "entries"}, path);
    const auto rows = get_int(require(j, "rows", path), join(path, "rows"));
    const auto cols = get_int(require(j, "cols", path), join(path, "cols"));
    if (rows < 1 || cols < 1 || rows > 64 || cols > 64) throw SchemaError(join(path, "rows"), "matrix shape must be 1..64");
    const Json& entries = require(j, "entries", path);
    const auto ep = join(path, "entries");
    expect_array(entries, ep);
    if (static_cast<std::int64_t>(entries.size()) != rows) throw SchemaError(ep, "expected " + std::to_string(rows) + " rows");
    GroupRingMatrix m(g, s, static_cast<int>(rows), static_cast<int>(cols));
    for (std::size_t r = 0; r < entries.size(); ++r) {
        const auto rp = join(ep, r);
        expect_array(entries[r], rp);
        if (static_cast<std::int64_t>(entries[r].size()) != cols) {
            throw SchemaError(rp, "expected " + std::to_string(cols) + " columns");
        }
        for (std::size_t c = 0; c < entries[r].size(); ++c) {
            m.set(static_cast<int>(r), static_cast<int>(c), terms_from_json(g, s, entries[r][c], join(rp, c)));
        }
    }
    return m;
}

Polynomial poly_from_json(const Json& j, const std::string& path) {
    check_keys(j, {"poly"}, path);
    const Json& terms = require(j, "poly", path);
    const auto pp = join(path, "poly");
    expect_object(terms, pp);
    Polynomial out;
    for (const auto& [key, value] : terms.items()) {
        const auto kp = join(pp, key);
        if (key.size() < 2 || key.front() != '(' || key.back() != ')') {
            throw SchemaError(kp, "exponent key must look like \"(e1,...,en)\"");
        }
        std::vector<int> e;
        std::stringstream ss(key.substr(1, key.size() - 2));
        std::string part;
        while (std::getline(ss, part, ',')) {
            try {
                std::size_t used = 0;
                e.push_back(std::stoi(part, &used));
                if (used != part.size()) throw std::invalid_argument(part);
            } catch (const std::exception&) {
                throw SchemaError(kp, "malformed exponent '" + part + "'");
            }
        }
        try {
            out.add_term(e, get_rational(value, kp));
        } catch (const SchemaError&) {
            throw;
        } catch (const Error& err) {
            throw SchemaError(kp, err.what());
        }
    }
    return out;
}

PolyGroupRingElement poly_terms_from_json(const GroupSpec& g, const Json& j, const std::string& path) {
    expect_array(j, path);
    PolyGroupRingElement out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto p = join(path, i);
        check_keys(j[i], {"g", "c"}, p);
        out.add_term(element_from_json(g, require(j[i], "g", p), join(p, "g")),
                     poly_from_json(require(j[i], "c", p), join(p, "c")));
    }
    return out;
}

SchemeSpec scheme_from_json(const GroupSpec& g, const Json& j, const std::string& path) {
    check_keys(j, {"kind", "levels", "sizes", "first", "last"}, path);
    const std::string kind = get_string(require(j, "kind", path), join(path, "kind"));
    SchemeSpec s;
    if (kind == "folner") {
        s.kind = Scheme::Folner;
        s.first = static_cast<int>(get_int(require(j, "first", path), join(path, "first")));
        s.last = static_cast<int>(get_int(require(j, "last", path), join(path, "last")));
        if (s.first < 1 || s.last < s.first) throw SchemaError(join(path, "last"), "need 1 <= first <= last");
        if (!g.is_amenable_model()) throw SchemaError(join(path, "kind"), "no Følner exhaustion: free groups are not amenable");
        return s;
    }
    if (kind != "quotient") throw SchemaError(join(path, "kind"), "unknown scheme kind '" + kind + "' (expected quotient, folner)");
    s.kind = Scheme::Quotient;
    if (j.contains("sizes")) {
        for (int n : int_list(j["sizes"], join(path, "sizes"))) {
            QuotientLevelSpec q;
            q.moduli.assign(static_cast<std::size_t>(std::max(1, g.rank())), n);
            s.quotients.push_back(q);
        }
    }
    if (j.contains("levels")) {
        const auto lp = join(path, "levels");
        expect_array(j["levels"], lp);
        for (std::size_t i = 0; i < j["levels"].size(); ++i) {
            const Json& l = j["levels"][i];
            const auto p = join(lp, i);
            check_keys(l, {"moduli", "target", "images"}, p);
            QuotientLevelSpec q;
            if (l.contains("moduli")) {
                for (int m : int_list(l["moduli"], join(p, "moduli"))) q.moduli.push_back(m);
            } else {
                q.target = require(l, "target", p);
                group_from_json(*q.target, join(p, "target"));
                const Json& imgs = require(l, "images", p);
                expect_array(imgs, join(p, "images"));
                for (const auto& im : imgs) q.images.push_back(im);
            }
            s.quotients.push_back(std::move(q));
        }
    }
    if (s.quotients.empty()) throw SchemaError(join(path, "levels"), "quotient scheme needs levels or sizes");
    return s;
}

Json rational_json(const Rational& q) { return to_string(q); }

Json poly_to_json(const Polynomial& p) {
    Json terms = Json::object();
    for (const auto& [e, c] : p.terms()) {
        std::string key = "(";
        for (std::size_t i = 0; i < e.size(); ++i) key += (i ? "," : "") + std::to_string(e[i]);
        terms[key + ")"] = to_string(c);
    }
    return Json{{"poly", terms}};
}

Json kappa_json(const KappaReport& k) {
    return Json{{"S", k.S}, {"Sstar", k.Sstar}, {"inf", float_value(k.inf)}, {"kappa", float_value(k.kappa)}};
}

}  // namespace

GroupSpec group_from_json(const Json& j, const std::string& path) {
    check_keys(j, {"kind", "rank", "moduli", "table", "generators"}, path);
    std::string kind = get_string(require(j, "kind", path), join(path, "kind"));
    if (kind == "free-abelian") kind = "free_abelian";
    if (kind == "finite") kind = "table";
    try {
        if (kind == "free_abelian" || kind == "free") {
            const auto rank = get_int(require(j, "rank", path), join(path, "rank"));
            if (rank < 1 || rank > 26) throw SchemaError(join(path, "rank"), "rank must be 1..26");
            return kind == "free" ? GroupSpec::free(static_cast<int>(rank)) : GroupSpec::free_abelian(static_cast<int>(rank));
        }
        if (kind == "cyclic") {
            std::vector<std::int64_t> moduli;
            for (int m : int_list(require(j, "moduli", path), join(path, "moduli"))) moduli.push_back(m);
            return GroupSpec::cyclic_product(moduli);
        }
        if (kind == "table") {
            const Json& t = require(j, "table", path);
            expect_array(t, join(path, "table"));
            std::vector<std::vector<int>> table;
            for (std::size_t i = 0; i < t.size(); ++i) table.push_back(int_list(t[i], join(join(path, "table"), i)));
            return GroupSpec::finite_table(table);
        }
        if (kind == "permutations") {
            const Json& gens = require(j, "generators", path);
            expect_array(gens, join(path, "generators"));
            std::vector<std::vector<int>> perms;
            for (std::size_t i = 0; i < gens.size(); ++i) perms.push_back(int_list(gens[i], join(join(path, "generators"), i)));
            return GroupSpec::from_permutations(perms);
        }
    } catch (const SchemaError&) {
        throw;
    } catch (const Error& e) {
        throw SchemaError(path, e.what());
    }
    throw SchemaError(join(path, "kind"),
                      "unknown group kind '" + kind + "' (expected free_abelian, free, cyclic, table, permutations)");
}

Json element_json(const GroupSpec& g, const GroupElement& e) {
    switch (g.kind()) {
        case GroupKind::FreeAbelian: return Json(e.data());
        case GroupKind::Free: return format_word(e);
        case GroupKind::Finite: return g.index_of(e);
    }
    return nullptr;
}

Json coefficient_to_json(const Coefficient& c) {
    switch (c.tag()) {
        case CoeffTag::Rational: return rational_json(c.rational());
        case CoeffTag::Algebraic: {
            Json out = Json::array();
            for (const auto& q : c.algebraic().coords()) out.push_back(rational_json(q));
            return out;
        }
        case CoeffTag::Complex: return Json::array({c.complex().real(), c.complex().imag()});
    }
    return nullptr;
}

Json element_to_json(const GroupSpec& g, const GroupRingElement& e) {
    Json out = Json::array();
    for (const auto& [h, c] : e.terms()) out.push_back(Json{{"g", element_json(g, h)}, {"c", coefficient_to_json(c)}});
    return out;
}

Json matrix_to_json(const GroupRingMatrix& m) {
    Json entries = Json::array();
    for (int r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(element_to_json(m.group(), m.at(r, c)));
        entries.push_back(row);
    }
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

Json poly_element_to_json(const GroupSpec& g, const PolyGroupRingElement& e) {
    Json out = Json::array();
    for (const auto& [h, p] : e.terms()) out.push_back(Json{{"g", element_json(g, h)}, {"c", poly_to_json(p)}});
    return out;
}

Problem problem_from_json(const Json& j) {
    check_keys(j, {"group", "field", "matrix", "scheme", "tol", "analyses", "output"}, "");
    Problem p;
    p.group_spec = require(j, "group", "");
    p.group = group_from_json(p.group_spec, "/group");
    p.field_spec = j.contains("field") ? j["field"] : Json{{"kind", "rational"}};
    p.scalars = field_from_json(p.field_spec, "/field");
    if (j.contains("matrix")) p.matrix = matrix_from_json(p.group, p.scalars, j["matrix"], "/matrix");
    if (j.contains("scheme")) p.scheme = scheme_from_json(p.group, j["scheme"], "/scheme");
    if (j.contains("tol")) {
        p.tol = get_rational(j["tol"], "/tol");
        if (p.tol <= 0) throw SchemaError("/tol", "tolerance must be positive");
    }
    if (j.contains("output")) {
        check_keys(j["output"], {"dir"}, "/output");
        p.output_dir = get_string(require(j["output"], "dir", "/output"), "/output/dir");
    }
    if (!j.contains("analyses")) return p;
    const Json& a = j["analyses"];
    const std::string ap = "/analyses";
    check_keys(a, {"kernel", "density", "gap", "liouville", "ore", "zero_divisor"}, ap);
    if (a.contains("kernel")) {
        const Json& k = a["kernel"];
        check_keys(k, {"declared_limit", "integrality"}, ap + "/kernel");
        if (k.contains("declared_limit")) p.declared_limit = get_rational(k["declared_limit"], ap + "/kernel/declared_limit");
        if (k.contains("integrality")) {
            if (!k["integrality"].is_boolean()) throw SchemaError(ap + "/kernel/integrality", "expected a boolean");
            p.integrality = k["integrality"].get<bool>();
        }
    }
    if (a.contains("density")) {
        check_keys(a["density"], {"grid"}, ap + "/density");
        if (a["density"].contains("grid")) {
            const Json& g = a["density"]["grid"];
            expect_array(g, ap + "/density/grid");
            for (std::size_t i = 0; i < g.size(); ++i) p.grid.push_back(get_double(g[i], join(ap + "/density/grid", i)));
        }
    }
    if (a.contains("gap")) {
        check_keys(a["gap"], {"interval"}, ap + "/gap");
        const Json& iv = require(a["gap"], "interval", ap + "/gap");
        expect_array(iv, ap + "/gap/interval");
        if (iv.size() != 2) throw SchemaError(ap + "/gap/interval", "expected [lo, hi]");
        p.gap = {get_double(iv[0], ap + "/gap/interval/0"), get_double(iv[1], ap + "/gap/interval/1")};
        if (p.gap->first > p.gap->second) throw SchemaError(ap + "/gap/interval", "lo exceeds hi");
    }
    if (a.contains("liouville")) {
        const Json& l = a["liouville"];
        check_keys(l, {"target", "n_max"}, ap + "/liouville");
        const std::string target = get_string(require(l, "target", ap + "/liouville"), ap + "/liouville/target");
        if (target != "liouville_constant") {
            throw SchemaError(ap + "/liouville/target", "unknown target '" + target + "' (expected liouville_constant)");
        }
        p.liouville_n_max = static_cast<int>(get_int(require(l, "n_max", ap + "/liouville"), ap + "/liouville/n_max"));
        if (*p.liouville_n_max < 1 || *p.liouville_n_max > 7) throw SchemaError(ap + "/liouville/n_max", "n_max must be 1..7");
    }
    if (a.contains("ore")) {
        const Json& o = a["ore"];
        check_keys(o, {"alpha", "sigma"}, ap + "/ore");
        p.ore = OreSpec{terms_from_json(p.group, p.scalars, require(o, "alpha", ap + "/ore"), ap + "/ore/alpha"),
                        terms_from_json(p.group, p.scalars, require(o, "sigma", ap + "/ore"), ap + "/ore/sigma")};
    }
    if (a.contains("zero_divisor")) {
        const Json& z = a["zero_divisor"];
        const std::string zp = ap + "/zero_divisor";
        check_keys(z, {"a", "b", "g", "g_prime"}, zp);
        p.zero_divisor = ZeroDivisorSpec{poly_terms_from_json(p.group, require(z, "a", zp), zp + "/a"),
                                         poly_terms_from_json(p.group, require(z, "b", zp), zp + "/b"),
                                         element_from_json(p.group, require(z, "g", zp), zp + "/g"),
                                         element_from_json(p.group, require(z, "g_prime", zp), zp + "/g_prime")};
    }
    return p;
}

Json problem_to_json(const Problem& p) {
    Json j;
    j["group"] = p.group_spec;
    j["field"] = p.field_spec;
    if (p.matrix) j["matrix"] = matrix_to_json(*p.matrix);
    if (p.scheme) {
        Json s;
        if (p.scheme->kind == Scheme::Folner) {
            s = Json{{"kind", "folner"}, {"first", p.scheme->first}, {"last", p.scheme->last}};
        } else {
            Json levels = Json::array();
            for (const auto& q : p.scheme->quotients) {
                if (q.target) {
                    levels.push_back(Json{{"target", *q.target}, {"images", q.images}});
                } else {
                    levels.push_back(Json{{"moduli", q.moduli}});
                }
            }
            s = Json{{"kind", "quotient"}, {"levels", levels}};
        }
        j["scheme"] = s;
    }
    j["tol"] = rational_json(p.tol);
    Json a = Json::object();
    if (p.declared_limit || p.integrality) {
        Json k{{"integrality", p.integrality}};
        if (p.declared_limit) k["declared_limit"] = rational_json(*p.declared_limit);
        a["kernel"] = k;
    }
    if (!p.grid.empty()) a["density"] = Json{{"grid", p.grid}};
    if (p.gap) a["gap"] = Json{{"interval", {p.gap->first, p.gap->second}}};
    if (p.liouville_n_max) a["liouville"] = Json{{"target", "liouville_constant"}, {"n_max", *p.liouville_n_max}};
    if (p.ore) a["ore"] = Json{{"alpha", element_to_json(p.group, p.ore->alpha)}, {"sigma", element_to_json(p.group, p.ore->sigma)}};
    if (p.zero_divisor) {
        a["zero_divisor"] = Json{{"a", poly_element_to_json(p.group, p.zero_divisor->a)},
                                 {"b", poly_element_to_json(p.group, p.zero_divisor->b)},
                                 {"g", element_json(p.group, p.zero_divisor->g)},
                                 {"g_prime", element_json(p.group, p.zero_divisor->g_prime)}};
    }
    if (!a.empty()) j["analyses"] = a;
    if (!p.output_dir.empty()) j["output"] = Json{{"dir", p.output_dir}};
    return j;
}

Problem parse_problem(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1;
        std::size_t column = 1;
        const std::size_t stop = std::min(e.byte > 0 ? e.byte - 1 : 0, text.size());
        for (std::size_t i = 0; i < stop; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        std::string what = e.what();
        if (const auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
        throw SchemaError("line " + std::to_string(line) + ", column " + std::to_string(column), what);
    }
    return problem_from_json(j);
}

Problem load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open problem file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_problem(ss.str());
}

ApproximationScheme build_scheme(const Problem& p) {
    if (!p.scheme) throw SchemaError("/scheme", "this command needs a scheme");
    if (p.scheme->kind == Scheme::Folner) return ApproximationScheme::folner(p.group, p.scheme->first, p.scheme->last);
    std::vector<QuotientMap> maps;
    for (std::size_t i = 0; i < p.scheme->quotients.size(); ++i) {
        const auto& q = p.scheme->quotients[i];
        const auto path = "/scheme/levels/" + std::to_string(i);
        try {
            if (!q.target) {
                maps.push_back(QuotientMap::from_moduli(p.group, q.moduli));
                continue;
            }
            const GroupSpec target = group_from_json(*q.target, path + "/target");
            std::vector<GroupElement> images;
            for (std::size_t k = 0; k < q.images.size(); ++k) {
                const Json& im = q.images[k];
                const auto ip = path + "/images/" + std::to_string(k);
                if (im.is_object()) {
                    check_keys(im, {"generator"}, ip);
                    const auto gi = get_int(require(im, "generator", ip), ip + "/generator");
                    const auto gens = target.basic_generators();
                    if (gi < 0 || gi >= static_cast<std::int64_t>(gens.size())) throw SchemaError(ip, "generator index out of range");
                    images.push_back(gens[static_cast<std::size_t>(gi)]);
                } else {
                    images.push_back(element_from_json(target, im, ip));
                }
            }
            maps.push_back(QuotientMap::from_images(p.group, target, images));
        } catch (const SchemaError&) {
            throw;
        } catch (const Error& e) {
            throw SchemaError(path, e.what());
        }
    }
    return ApproximationScheme::quotients(std::move(maps));
}

Json exact_value(const Rational& q) { return Json{{"value", to_string(q)}, {"provenance", "exact"}}; }

Json float_value(double x) {
    Json v = x;
    if (std::isnan(x)) v = "nan";
    else if (std::isinf(x)) v = x > 0 ? "inf" : "-inf";
    return Json{{"value", v}, {"provenance", "float"}};
}

Json run_to_json(const ApproximationRun& run, bool timing) {
    Json levels = Json::array();
    for (const auto& l : run.levels) {
        Json rec{{"level", l.level},
                 {"N", l.N},
                 {"dim", Json{{"value", to_string(l.dim.value)},
                              {"provenance", l.dim.exact ? "exact" : "float"},
                              {"nullity", l.dim.nullity},
                              {"method", l.dim.method}}},
                 {"log_det", l.has_spectra ? float_value(l.log_det) : Json(nullptr)},
                 {"kappa", kappa_json(l.kappa)},
                 {"error_term", exact_value(l.error_term)}};
        if (!run.grid.empty()) {
            Json f = Json::array();
            for (std::size_t i = 0; i < l.F.size(); ++i) f.push_back(Json::array({run.grid[i], l.F[i]}));
            rec["F"] = Json{{"value", f}, {"provenance", "float"}};
        }
        if (l.in_bracket) rec["in_bracket"] = *l.in_bracket;
        if (timing) rec["seconds"] = l.seconds;
        levels.push_back(rec);
    }
    Json j{{"source_hash", run.source_hash},
           {"scheme", to_string(run.scheme)},
           {"d", run.d},
           {"tol", exact_value(run.tol)},
           {"levels", levels},
           {"converged", run.converged()},
           {"convergence", run.convergence_reason()}};
    if (auto c = run.cauchy_estimate()) j["cauchy_estimate"] = exact_value(*c);
    if (run.declared_limit) {
        j["declared_limit"] = exact_value(*run.declared_limit);
        if (run.scheme == Scheme::Folner) j["bracket_holds"] = run.bracket_holds();
    }
    return j;
}

Json verdict_to_json(const AtiyahVerdict& v) {
    return Json{{"status", to_string(v.status)},
                {"nearest", exact_value(Rational(v.nearest))},
                {"distance", exact_value(v.distance)},
                {"value", exact_value(v.value)},
                {"message", v.message}};
}

Json kappa_to_json(const GroupRingMatrix& m) {
    const KappaReport k = m.kappa();
    // inf and kappa are exact when the largest |coefficient| is a rational that a double holds exactly
    // and S * S* is a perfect square.
    bool inf_exact = m.scalars().tag() == CoeffTag::Rational;
    if (inf_exact) {
        Rational largest = 0;
        for (int r = 0; r < m.rows(); ++r) {
            for (int c = 0; c < m.cols(); ++c) {
                for (const auto& [g, x] : m.at(r, c).terms()) largest = std::max(largest, Rational(abs(x.rational())));
            }
        }
        inf_exact = std::isfinite(k.inf) && from_double(k.inf) == largest;
    }
    const auto ss = static_cast<std::int64_t>(k.S) * static_cast<std::int64_t>(k.Sstar);
    const auto root = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(ss))));
    const bool kappa_exact = inf_exact && root * root == ss && std::isfinite(k.kappa) &&
                             from_double(k.kappa) == Rational(root) * from_double(k.inf);
    Json j;
    j["S"] = k.S;
    j["Sstar"] = k.Sstar;
    j["inf"] = k.inf;
    j["kappa"] = k.kappa;
    j["log_kappa"] = k.log_kappa;
    j["provenance"] = Json{{"S", "exact"},
                           {"Sstar", "exact"},
                           {"inf", inf_exact ? "exact" : "float"},
                           {"kappa", kappa_exact ? "exact" : "float"},
                           {"log_kappa", "float"}};
    return j;
}

Json det_bound_to_json(const DetBoundReport& r) {
    Json levels = Json::array();
    for (const auto& l : r.levels) {
        Json rec{{"level", l.level}, {"N", l.N}, {"log_det", float_value(l.log_det)}, {"margin", float_value(l.margin)},
                 {"holds", l.holds}};
        if (l.density_checks > 0) {
            rec["density_checks"] = l.density_checks;
            rec["density_violations"] = l.density_violations;
            rec["density_margin"] = float_value(l.density_margin);
        }
        levels.push_back(rec);
    }
    Json lk = Json::array();
    for (double x : r.log_kappas) lk.push_back(float_value(x));
    return Json{{"clearing_factor", exact_value(Rational(r.clearing_factor))},
                {"integral_generator", r.integral_generator},
                {"normal_field", r.normal_field ? Json(*r.normal_field) : Json("unknown")},
                {"embeddings", r.embeddings},
                {"d", r.d},
                {"log_kappas", lk},
                {"rhs", float_value(r.rhs)},
                {"K", float_value(r.K)},
                {"levels", levels},
                {"holds", r.holds},
                {"margin", float_value(r.margin)}};
}

Json continuity_to_json(const ContinuityReport& r) {
    Json conj = Json::array();
    for (const auto& c : r.conjugates) {
        Json dims = Json::array();
        Json fdims = Json::array();
        for (std::size_t i = 0; i < c.run.levels.size(); ++i) {
            dims.push_back(exact_value(c.run.levels[i].dim.value));
            fdims.push_back(Json{{"value", to_string(c.float_dims[i])}, {"provenance", "float"}});
        }
        conj.push_back(Json{{"embedding", c.embedding}, {"dims", dims}, {"threshold_dims", fdims}, {"limit", exact_value(c.limit)}});
    }
    return Json{{"conjugates", conj}, {"exact_equal", r.exact_equal}, {"float_agrees", r.float_agrees}};
}

Json gap_to_json(const GapReport& r) {
    Json levels = Json::array();
    for (const auto& l : r.levels) {
        levels.push_back(Json{{"level", l.level}, {"N", l.N}, {"margin", float_value(l.margin)},
                              {"F_below", float_value(l.F_below)}, {"F_through", float_value(l.F_through)}});
    }
    return Json{{"interval", {r.lo, r.hi}}, {"levels", levels}, {"margin", float_value(r.margin)},
                {"norm_certified", r.norm_certified}, {"confirmed", r.confirmed}};
}

Json liouville_to_json(const LiouvilleCertificate& c) {
    Json levels = Json::array();
    for (const auto& l : c.levels) {
        Json lk = Json::array();
        for (double x : l.log_kappa_v) lk.push_back(float_value(x));
        levels.push_back(Json{{"n", l.n},
                              {"p", exact_value(Rational(l.p))},
                              {"q", exact_value(Rational(l.q))},
                              {"approximant_ok", l.approximant_ok},
                              {"log_s_bound", float_value(l.log_s)},
                              {"log_norm_bound", float_value(l.log_norm_bound)},
                              {"log_kappa_V", lk},
                              {"log_P", float_value(l.log_P)},
                              {"log_C", float_value(l.log_C)},
                              {"alpha", float_value(l.alpha)},
                              {"alpha_sharp", float_value(l.alpha_sharp)}});
    }
    Json ck = Json::array();
    for (double x : c.C_k) ck.push_back(float_value(x));
    return Json{{"target", c.target}, {"clearing_factor", exact_value(Rational(c.clearing_factor))}, {"d", c.d},
                {"r", c.r}, {"C_k", ck}, {"levels", levels}, {"decreasing", c.decreasing}};
}

Json ore_to_json(const GroupSpec& g, const OreSolution& s) {
    Json xs = Json::array();
    for (const auto& x : s.X) xs.push_back(element_json(g, x));
    return Json{{"alpha", element_to_json(g, s.alpha)},
                {"sigma", element_to_json(g, s.sigma)},
                {"beta", element_to_json(g, s.beta)},
                {"tau", element_to_json(g, s.tau)},
                {"level", s.level},
                {"X_size", s.X.size()},
                {"boundary_sum", s.boundary_sum},
                {"equations", s.equations},
                {"unknowns", s.unknowns},
                {"residual_zero", s.residual.is_zero()},
                {"provenance", "exact"}};
}

Json specialization_to_json(const GroupSpec& g, const Specialization& s) {
    Json pt = Json::array();
    for (const auto& q : s.point) pt.push_back(to_string(q));
    return Json{{"point", pt},
                {"A", element_to_json(g, s.A)},
                {"B", element_to_json(g, s.B)},
                {"rejected", s.rejected},
                {"AB_zero", GroupRingElement::multiply(g, s.A, s.B).is_zero()},
                {"provenance", "exact"}};
}

}  // namespace l2approx
