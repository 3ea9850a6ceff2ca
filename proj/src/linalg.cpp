#include "l2approx/linalg.hpp"

#include "l2approx/error.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace l2approx {

std::size_t SparseMatrix::nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : data) n += r.size();
    return n;
}

namespace {

constexpr std::uint64_t kPrime = 4611686018427387847ULL;  // 2^62 - 57

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % kPrime);
}
std::uint64_t addmod(std::uint64_t a, std::uint64_t b) {
    const std::uint64_t s = a + b;
    return s >= kPrime ? s - kPrime : s;
}
std::uint64_t submod(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kPrime - b; }
std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a);
        a = mulmod(a, a);
        e >>= 1;
    }
    return r;
}
std::uint64_t invmod(std::uint64_t a) { return powmod(a, kPrime - 2); }

std::optional<std::uint64_t> reduce_mod(const Rational& q) {
    Integer p(static_cast<unsigned long>(kPrime >> 1));
    p = p * 2 + 1;  // 2^62-57 does not fit an unsigned long on every platform
    Integer num = q.get_num() % p;
    if (num < 0) num += p;
    Integer den = q.get_den() % p;
    if (den == 0) return std::nullopt;
    auto to_u64 = [](const Integer& z) {
        std::uint64_t v = 0;
        mpz_export(&v, nullptr, -1, sizeof v, 0, 0, z.get_mpz_t());
        return v;
    };
    return mulmod(to_u64(num), invmod(to_u64(den)));
}

// Elements of F_p[z]/(m), m monic of degree d.
using ModPoly = std::vector<std::uint64_t>;

struct ModRing {
    ModPoly modulus;  // monic, size d+1
    int degree() const { return static_cast<int>(modulus.size()) - 1; }

    bool is_zero(const ModPoly& a) const {
        return std::all_of(a.begin(), a.end(), [](std::uint64_t v) { return v == 0; });
    }
    ModPoly sub(const ModPoly& a, const ModPoly& b) const {
        ModPoly r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = submod(a[i], b[i]);
        return r;
    }
    ModPoly mul(const ModPoly& a, const ModPoly& b) const {
        const int d = degree();
        std::vector<std::uint64_t> prod(static_cast<std::size_t>(2 * d - 1), 0);
        for (int i = 0; i < d; ++i) {
            if (!a[i]) continue;
            for (int j = 0; j < d; ++j) prod[i + j] = addmod(prod[i + j], mulmod(a[i], b[j]));
        }
        for (int i = 2 * d - 2; i >= d; --i) {
            const std::uint64_t c = prod[i];
            if (!c) continue;
            for (int j = 0; j < d; ++j) prod[i - d + j] = submod(prod[i - d + j], mulmod(c, modulus[j]));
        }
        prod.resize(static_cast<std::size_t>(d));
        return prod;
    }
    // Inverse when a is a unit of F_p[z]/(m).
    std::optional<ModPoly> inverse(const ModPoly& a) const {
        auto trim = [](ModPoly& p) {
            while (!p.empty() && p.back() == 0) p.pop_back();
        };
        ModPoly r0 = modulus, r1 = a, s0, s1{1};
        trim(r1);
        while (!r1.empty()) {
            // r0 = q r1 + r
            ModPoly r = r0;
            ModPoly q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 1, 0);
            const std::uint64_t lead_inv = invmod(r1.back());
            while (r.size() >= r1.size() && !r.empty()) {
                const std::size_t shift = r.size() - r1.size();
                const std::uint64_t c = mulmod(r.back(), lead_inv);
                q[shift] = c;
                for (std::size_t j = 0; j < r1.size(); ++j) r[shift + j] = submod(r[shift + j], mulmod(c, r1[j]));
                trim(r);
            }
            // s = s0 - q s1
            ModPoly qs(q.size() + s1.size(), 0);
            for (std::size_t i = 0; i < q.size(); ++i)
                for (std::size_t j = 0; j < s1.size(); ++j) qs[i + j] = addmod(qs[i + j], mulmod(q[i], s1[j]));
            ModPoly s(std::max(s0.size(), qs.size()), 0);
            for (std::size_t i = 0; i < s0.size(); ++i) s[i] = s0[i];
            for (std::size_t i = 0; i < qs.size(); ++i) s[i] = submod(s[i], qs[i]);
            trim(s);
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s);
        }
        if (r0.size() != 1) return std::nullopt;
        const std::uint64_t g = invmod(r0[0]);
        ModPoly out(static_cast<std::size_t>(degree()), 0);
        for (std::size_t i = 0; i < s0.size() && i < out.size(); ++i) out[i] = mulmod(s0[i], g);
        return out;
    }
};

template <class T>
using Row = std::vector<std::pair<int, T>>;

// Reduce `row` against pivot rows whose leading entry is 1; returns the reduced row.
template <class T, class Ops>
Row<T> reduce_row(Row<T> row, const std::map<int, Row<T>>& pivots, const Ops& ops) {
    Row<T> scratch;
    std::size_t start = 0;
    while (start < row.size()) {
        auto it = pivots.find(row[start].first);
        if (it == pivots.end()) {
            ++start;
            continue;
        }
        // row -= row[start] * pivot, merging from `start`.
        const T factor = row[start].second;
        const auto& piv = it->second;
        scratch.clear();
        scratch.insert(scratch.end(), row.begin(), row.begin() + static_cast<std::ptrdiff_t>(start));
        std::size_t i = start, j = 0;
        while (i < row.size() || j < piv.size()) {
            if (j == piv.size() || (i < row.size() && row[i].first < piv[j].first)) {
                scratch.push_back(std::move(row[i]));
                ++i;
            } else if (i == row.size() || piv[j].first < row[i].first) {
                scratch.emplace_back(piv[j].first, ops.neg(ops.mul(factor, piv[j].second)));
                ++j;
            } else {
                T v = ops.sub(row[i].second, ops.mul(factor, piv[j].second));
                if (!ops.is_zero(v)) scratch.emplace_back(row[i].first, std::move(v));
                ++i;
                ++j;
            }
        }
        std::swap(row, scratch);
    }
    return row;
}

// Echelon form with unit leading entries. Returns nullopt when a leading entry cannot be
// inverted (non-unit in a ring).
template <class T, class Ops>
std::optional<std::map<int, Row<T>>> echelon(std::vector<Row<T>> rows, const Ops& ops) {
    std::map<int, Row<T>> pivots;
    std::stable_sort(rows.begin(), rows.end(), [](const Row<T>& a, const Row<T>& b) { return a.size() < b.size(); });
    for (auto& r : rows) {
        Row<T> red = reduce_row(std::move(r), pivots, ops);
        // Leading entry is the first one with no pivot in its column; all earlier ones were
        // eliminated, so `red` starts at a new pivot column.
        if (red.empty()) continue;
        auto inv = ops.inverse(red.front().second);
        if (!inv) return std::nullopt;
        for (auto& [c, v] : red) v = ops.mul(*inv, v);
        red.front().second = ops.one();
        const int col = red.front().first;
        pivots.emplace(col, std::move(red));
    }
    return pivots;
}

struct RationalOps {
    bool is_zero(const Rational& a) const { return a == 0; }
    Rational neg(const Rational& a) const { return -a; }
    Rational sub(const Rational& a, const Rational& b) const { return a - b; }
    Rational mul(const Rational& a, const Rational& b) const { return a * b; }
    Rational one() const { return Rational(1); }
    std::optional<Rational> inverse(const Rational& a) const { return Rational(1) / a; }
};

struct AlgebraicOps {
    FieldPtr field;
    bool is_zero(const AlgebraicNumber& a) const { return a.is_zero(); }
    AlgebraicNumber neg(const AlgebraicNumber& a) const { return -a; }
    AlgebraicNumber sub(const AlgebraicNumber& a, const AlgebraicNumber& b) const { return a - b; }
    AlgebraicNumber mul(const AlgebraicNumber& a, const AlgebraicNumber& b) const { return a * b; }
    AlgebraicNumber one() const { return AlgebraicNumber::from_rational(field, Rational(1)); }
    std::optional<AlgebraicNumber> inverse(const AlgebraicNumber& a) const { return a.inverse(); }
};

struct ModOps {
    bool is_zero(std::uint64_t a) const { return a == 0; }
    std::uint64_t neg(std::uint64_t a) const { return a ? kPrime - a : 0; }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return submod(a, b); }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return mulmod(a, b); }
    std::uint64_t one() const { return 1; }
    std::optional<std::uint64_t> inverse(std::uint64_t a) const { return invmod(a); }
};

struct ModPolyOps {
    ModRing ring;
    bool is_zero(const ModPoly& a) const { return ring.is_zero(a); }
    ModPoly neg(const ModPoly& a) const { return ring.sub(ModPoly(a.size(), 0), a); }
    ModPoly sub(const ModPoly& a, const ModPoly& b) const { return ring.sub(a, b); }
    ModPoly mul(const ModPoly& a, const ModPoly& b) const { return ring.mul(a, b); }
    ModPoly one() const {
        ModPoly o(static_cast<std::size_t>(ring.degree()), 0);
        o[0] = 1;
        return o;
    }
    std::optional<ModPoly> inverse(const ModPoly& a) const { return ring.inverse(a); }
};

template <class T, class F>
std::optional<std::vector<Row<T>>> convert(const SparseMatrix& m, F&& f) {
    std::vector<Row<T>> rows;
    rows.reserve(m.data.size());
    for (const auto& r : m.data) {
        Row<T> out;
        out.reserve(r.size());
        for (const auto& [c, v] : r) {
            auto x = f(v);
            if (!x) return std::nullopt;
            out.emplace_back(c, std::move(*x));
        }
        rows.push_back(std::move(out));
    }
    return rows;
}

template <class T>
std::vector<Row<T>> canonicalize(std::vector<Row<T>> rows, const auto& ops) {
    for (auto& r : rows) {
        std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        Row<T> merged;
        for (auto& e : r) {
            if (!merged.empty() && merged.back().first == e.first) {
                merged.back().second = ops.sub(merged.back().second, ops.neg(e.second));
            } else {
                merged.push_back(std::move(e));
            }
        }
        std::erase_if(merged, [&](const auto& e) { return ops.is_zero(e.second); });
        r = std::move(merged);
    }
    return rows;
}

void require_exact(const SparseMatrix& m) {
    if (!m.scalars.exact()) throw Error("exact rank refuses float coefficients; use eigenvalue thresholding");
}

template <class T, class Ops>
std::vector<std::vector<T>> nullspace_from(const std::map<int, Row<T>>& pivots, int cols, const Ops& ops,
                                           const T& zero) {
    std::vector<std::vector<T>> basis;
    for (int f = 0; f < cols; ++f) {
        if (pivots.count(f)) continue;
        std::vector<T> x(static_cast<std::size_t>(cols), zero);
        x[static_cast<std::size_t>(f)] = ops.one();
        for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
            T acc = zero;
            for (std::size_t k = 1; k < it->second.size(); ++k) {
                const auto& [c, v] = it->second[k];
                if (!ops.is_zero(x[static_cast<std::size_t>(c)])) acc = ops.sub(acc, ops.mul(v, x[static_cast<std::size_t>(c)]));
            }
            x[static_cast<std::size_t>(it->first)] = acc;
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

}  // namespace

std::int64_t modular_rank_lower_bound(const SparseMatrix& m) {
    require_exact(m);
    if (m.scalars.tag() == CoeffTag::Rational) {
        auto rows = convert<std::uint64_t>(m, [](const Coefficient& c) { return reduce_mod(c.rational()); });
        if (!rows) return -1;
        ModOps ops;
        auto piv = echelon(canonicalize<std::uint64_t>(std::move(*rows), ops), ops);
        return piv ? static_cast<std::int64_t>(piv->size()) : -1;
    }
    ModRing ring;
    for (const auto& c : m.scalars.field()->minpoly()) {
        auto v = reduce_mod(c);
        if (!v) return -1;
        ring.modulus.push_back(*v);
    }
    auto rows = convert<ModPoly>(m, [&](const Coefficient& c) -> std::optional<ModPoly> {
        ModPoly out;
        for (const auto& q : c.algebraic().coords()) {
            auto v = reduce_mod(q);
            if (!v) return std::nullopt;
            out.push_back(*v);
        }
        return out;
    });
    if (!rows) return -1;
    ModPolyOps ops{ring};
    auto piv = echelon(canonicalize<ModPoly>(std::move(*rows), ops), ops);
    return piv ? static_cast<std::int64_t>(piv->size()) : -1;
}

RankResult exact_rank(const SparseMatrix& m) {
    require_exact(m);
    const std::int64_t full = std::min(m.rows, m.cols);
    const std::int64_t lower = modular_rank_lower_bound(m);
    if (lower == full) return {lower, true};
    if (m.scalars.tag() == CoeffTag::Rational) {
        RationalOps ops;
        auto rows = convert<Rational>(m, [](const Coefficient& c) { return std::optional<Rational>(c.rational()); });
        auto piv = echelon(canonicalize<Rational>(std::move(*rows), ops), ops);
        return {static_cast<std::int64_t>(piv->size()), false};
    }
    AlgebraicOps ops{m.scalars.field()};
    auto rows = convert<AlgebraicNumber>(m, [](const Coefficient& c) { return std::optional<AlgebraicNumber>(c.algebraic()); });
    auto piv = echelon(canonicalize<AlgebraicNumber>(std::move(*rows), ops), ops);
    return {static_cast<std::int64_t>(piv->size()), false};
}

std::vector<std::vector<Coefficient>> nullspace(const SparseMatrix& m) {
    require_exact(m);
    std::vector<std::vector<Coefficient>> out;
    if (m.scalars.tag() == CoeffTag::Rational) {
        RationalOps ops;
        auto rows = convert<Rational>(m, [](const Coefficient& c) { return std::optional<Rational>(c.rational()); });
        auto piv = echelon(canonicalize<Rational>(std::move(*rows), ops), ops);
        for (auto& v : nullspace_from(*piv, m.cols, ops, Rational(0))) out.emplace_back(v.begin(), v.end());
        return out;
    }
    AlgebraicOps ops{m.scalars.field()};
    auto rows = convert<AlgebraicNumber>(m, [](const Coefficient& c) { return std::optional<AlgebraicNumber>(c.algebraic()); });
    auto piv = echelon(canonicalize<AlgebraicNumber>(std::move(*rows), ops), ops);
    const AlgebraicNumber zero = AlgebraicNumber::from_rational(ops.field, Rational(0));
    for (auto& v : nullspace_from(*piv, m.cols, ops, zero)) out.emplace_back(v.begin(), v.end());
    return out;
}

}  // namespace l2approx
