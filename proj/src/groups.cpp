#include "l2approx/groups.hpp"

#include "l2approx/error.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace l2approx {

namespace {

constexpr std::int64_t kMaxFiniteOrder = 10'000'000;
constexpr std::int64_t kMaxExplicitTable = 512;
constexpr std::int64_t kMaxBoxSize = 10'000'000;

}  // namespace

struct FiniteGroupData {
    std::int64_t order = 0;
    std::vector<std::int64_t> moduli;  // implicit cyclic product when non-empty
    std::vector<std::int32_t> table;   // explicit: order*order, row-major
    std::vector<std::int32_t> inverse;
    std::int32_t identity = 0;
    std::vector<std::int32_t> basic_generators;
    std::vector<std::int32_t> generators;  // symmetric closure of basic_generators
    std::vector<std::int32_t> distance;

    std::int64_t mul(std::int64_t a, std::int64_t b) const {
        if (!moduli.empty()) {
            std::int64_t out = 0;
            std::int64_t stride = 1;
            for (auto m : moduli) {
                const std::int64_t da = a % m;
                const std::int64_t db = b % m;
                out += ((da + db) % m) * stride;
                stride *= m;
                a /= m;
                b /= m;
            }
            return out;
        }
        return table[static_cast<std::size_t>(a * order + b)];
    }

    std::int64_t inv(std::int64_t a) const {
        if (!moduli.empty()) {
            std::int64_t out = 0;
            std::int64_t stride = 1;
            for (auto m : moduli) {
                const std::int64_t da = a % m;
                out += ((m - da) % m) * stride;
                stride *= m;
                a /= m;
            }
            return out;
        }
        return inverse[static_cast<std::size_t>(a)];
    }

    void finish_generators() {
        std::vector<std::int32_t> sym;
        for (auto g : basic_generators) {
            if (g == identity) continue;
            sym.push_back(g);
            sym.push_back(static_cast<std::int32_t>(inv(g)));
        }
        std::sort(sym.begin(), sym.end());
        sym.erase(std::unique(sym.begin(), sym.end()), sym.end());
        generators = std::move(sym);

        distance.assign(static_cast<std::size_t>(order), -1);
        std::deque<std::int64_t> queue{identity};
        distance[static_cast<std::size_t>(identity)] = 0;
        std::int64_t seen = 1;
        while (!queue.empty()) {
            const auto x = queue.front();
            queue.pop_front();
            for (auto s : generators) {
                const auto y = mul(s, x);
                if (distance[static_cast<std::size_t>(y)] < 0) {
                    distance[static_cast<std::size_t>(y)] = distance[static_cast<std::size_t>(x)] + 1;
                    queue.push_back(y);
                    ++seen;
                }
            }
        }
        if (seen != order) throw Error("finite group: generators do not generate the group");
    }
};

std::string to_string(GroupKind kind) {
    switch (kind) {
        case GroupKind::FreeAbelian: return "free-abelian";
        case GroupKind::Free: return "free";
        case GroupKind::Finite: return "finite";
    }
    return "?";
}

std::size_t GroupElementHash::operator()(const GroupElement& g) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL ^ g.size();
    for (auto v : g.data()) {
        h ^= std::hash<std::int32_t>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

GroupSpec GroupSpec::free_abelian(int rank) {
    if (rank < 1) throw Error("free-abelian group needs rank >= 1");
    GroupSpec g;
    g.kind_ = GroupKind::FreeAbelian;
    g.rank_ = rank;
    g.build_generators();
    return g;
}

GroupSpec GroupSpec::free(int rank) {
    if (rank < 1 || rank > 26) throw Error("free group needs 1 <= rank <= 26");
    GroupSpec g;
    g.kind_ = GroupKind::Free;
    g.rank_ = rank;
    g.build_generators();
    return g;
}

GroupSpec GroupSpec::finite_table(const std::vector<std::vector<int>>& table, std::vector<int> generators) {
    const auto m = static_cast<std::int64_t>(table.size());
    if (m < 1) throw Error("finite group: empty multiplication table");
    if (m > kMaxExplicitTable) throw Error("finite group: explicit tables are limited to 512 elements");
    auto data = std::make_shared<FiniteGroupData>();
    data->order = m;
    data->table.reserve(static_cast<std::size_t>(m * m));
    for (const auto& row : table) {
        if (static_cast<std::int64_t>(row.size()) != m) throw Error("finite group: table is not square");
        for (int v : row) {
            if (v < 0 || v >= m) throw Error("finite group: table entry out of range");
            data->table.push_back(v);
        }
    }
    auto at = [&](std::int64_t a, std::int64_t b) { return data->table[static_cast<std::size_t>(a * m + b)]; };
    // Latin square.
    for (std::int64_t a = 0; a < m; ++a) {
        std::vector<char> row_seen(static_cast<std::size_t>(m), 0), col_seen(static_cast<std::size_t>(m), 0);
        for (std::int64_t b = 0; b < m; ++b) {
            if (row_seen[static_cast<std::size_t>(at(a, b))]++ || col_seen[static_cast<std::size_t>(at(b, a))]++) {
                throw Error("finite group: table is not a Latin square");
            }
        }
    }
    std::int64_t identity = -1;
    for (std::int64_t e = 0; e < m && identity < 0; ++e) {
        bool ok = true;
        for (std::int64_t a = 0; a < m && ok; ++a) ok = at(e, a) == a && at(a, e) == a;
        if (ok) identity = e;
    }
    if (identity < 0) throw Error("finite group: no identity element");
    for (std::int64_t a = 0; a < m; ++a) {
        for (std::int64_t b = 0; b < m; ++b) {
            const auto ab = at(a, b);
            for (std::int64_t c = 0; c < m; ++c) {
                if (at(ab, c) != at(a, at(b, c))) throw Error("finite group: multiplication is not associative");
            }
        }
    }
    data->identity = static_cast<std::int32_t>(identity);
    data->inverse.resize(static_cast<std::size_t>(m));
    for (std::int64_t a = 0; a < m; ++a) {
        for (std::int64_t b = 0; b < m; ++b) {
            if (at(a, b) == identity) data->inverse[static_cast<std::size_t>(a)] = static_cast<std::int32_t>(b);
        }
    }
    if (generators.empty()) {
        for (std::int64_t a = 0; a < m; ++a) {
            if (a != identity) generators.push_back(static_cast<int>(a));
        }
    }
    for (int s : generators) {
        if (s < 0 || s >= m) throw Error("finite group: generator out of range");
        data->basic_generators.push_back(s);
    }
    data->finish_generators();

    GroupSpec g;
    g.kind_ = GroupKind::Finite;
    g.finite_ = std::move(data);
    g.build_generators();
    return g;
}

GroupSpec GroupSpec::cyclic_product(std::vector<std::int64_t> moduli) {
    if (moduli.empty()) throw Error("cyclic product needs at least one modulus");
    auto data = std::make_shared<FiniteGroupData>();
    data->order = 1;
    for (auto m : moduli) {
        if (m < 1) throw Error("cyclic product: moduli must be positive");
        data->order *= m;
        if (data->order > kMaxFiniteOrder) throw Error("cyclic product: group too large");
    }
    data->moduli = std::move(moduli);
    data->identity = 0;
    std::int64_t stride = 1;
    for (auto m : data->moduli) {
        if (m > 1) data->basic_generators.push_back(static_cast<std::int32_t>(stride));
        stride *= m;
    }
    data->finish_generators();

    GroupSpec g;
    g.kind_ = GroupKind::Finite;
    g.finite_ = std::move(data);
    g.build_generators();
    return g;
}

GroupSpec GroupSpec::from_permutations(const std::vector<std::vector<int>>& generators) {
    if (generators.empty()) throw Error("permutation group needs at least one generator");
    const auto n = generators.front().size();
    for (const auto& p : generators) {
        if (p.size() != n) throw Error("permutation generators have different degrees");
        std::vector<int> sorted = p;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < n; ++i) {
            if (sorted[i] != static_cast<int>(i)) throw Error("permutation generator is not a permutation");
        }
    }
    using Perm = std::vector<int>;
    auto compose = [](const Perm& p, const Perm& q) {  // (p q)(i) = p(q(i))
        Perm r(q.size());
        for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[static_cast<std::size_t>(q[i])];
        return r;
    };
    Perm id(n);
    std::iota(id.begin(), id.end(), 0);
    std::map<Perm, int> index{{id, 0}};
    std::vector<Perm> elems{id};
    for (std::size_t head = 0; head < elems.size(); ++head) {
        for (const auto& s : generators) {
            Perm next = compose(s, elems[head]);
            if (!index.count(next)) {
                if (static_cast<std::int64_t>(elems.size()) >= kMaxExplicitTable) {
                    throw Error("permutation group exceeds 512 elements");
                }
                index.emplace(next, static_cast<int>(elems.size()));
                elems.push_back(std::move(next));
            }
        }
    }
    std::vector<std::vector<int>> table(elems.size(), std::vector<int>(elems.size()));
    for (std::size_t a = 0; a < elems.size(); ++a) {
        for (std::size_t b = 0; b < elems.size(); ++b) table[a][b] = index.at(compose(elems[a], elems[b]));
    }
    std::vector<int> gens;
    for (const auto& s : generators) gens.push_back(index.at(s));
    return finite_table(table, gens);
}

void GroupSpec::build_generators() {
    generators_.clear();
    switch (kind_) {
        case GroupKind::FreeAbelian:
            for (int i = 0; i < rank_; ++i) {
                for (int sign : {1, -1}) {
                    std::vector<std::int32_t> e(static_cast<std::size_t>(rank_), 0);
                    e[static_cast<std::size_t>(i)] = sign;
                    generators_.emplace_back(std::move(e));
                }
            }
            break;
        case GroupKind::Free:
            for (int i = 1; i <= rank_; ++i) {
                generators_.emplace_back(std::vector<std::int32_t>{i});
                generators_.emplace_back(std::vector<std::int32_t>{-i});
            }
            break;
        case GroupKind::Finite:
            for (auto s : finite_->generators) generators_.emplace_back(std::vector<std::int32_t>{s});
            break;
    }
    std::sort(generators_.begin(), generators_.end());
}

std::vector<GroupElement> GroupSpec::basic_generators() const {
    std::vector<GroupElement> out;
    switch (kind_) {
        case GroupKind::FreeAbelian:
            for (int i = 0; i < rank_; ++i) {
                std::vector<std::int32_t> e(static_cast<std::size_t>(rank_), 0);
                e[static_cast<std::size_t>(i)] = 1;
                out.emplace_back(std::move(e));
            }
            break;
        case GroupKind::Free:
            for (int i = 1; i <= rank_; ++i) out.emplace_back(std::vector<std::int32_t>{i});
            break;
        case GroupKind::Finite:
            for (auto s : finite_->basic_generators) out.emplace_back(std::vector<std::int32_t>{s});
            break;
    }
    return out;
}

std::int64_t GroupSpec::order() const {
    if (kind_ != GroupKind::Finite) throw Error("order() is only defined for finite groups");
    return finite_->order;
}

GroupElement GroupSpec::identity() const {
    switch (kind_) {
        case GroupKind::FreeAbelian: return GroupElement(std::vector<std::int32_t>(static_cast<std::size_t>(rank_), 0));
        case GroupKind::Free: return GroupElement();
        case GroupKind::Finite: return GroupElement({finite_->identity});
    }
    return {};
}

bool GroupSpec::is_valid(const GroupElement& a) const {
    switch (kind_) {
        case GroupKind::FreeAbelian: return static_cast<int>(a.size()) == rank_;
        case GroupKind::Free:
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (a[i] == 0 || std::abs(a[i]) > rank_) return false;
                if (i > 0 && a[i] == -a[i - 1]) return false;
            }
            return true;
        case GroupKind::Finite: return a.size() == 1 && a[0] >= 0 && a[0] < finite_->order;
    }
    return false;
}

void GroupSpec::check(const GroupElement& a) const {
    if (!is_valid(a)) throw Error("group element is not a valid canonical element of " + describe());
}

GroupElement GroupSpec::multiply(const GroupElement& a, const GroupElement& b) const {
    switch (kind_) {
        case GroupKind::FreeAbelian: {
            std::vector<std::int32_t> out(a.data());
            for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
            return GroupElement(std::move(out));
        }
        case GroupKind::Free: {
            std::vector<std::int32_t> out(a.data());
            for (auto letter : b.data()) {
                if (!out.empty() && out.back() == -letter) {
                    out.pop_back();
                } else {
                    out.push_back(letter);
                }
            }
            return GroupElement(std::move(out));
        }
        case GroupKind::Finite:
            return GroupElement({static_cast<std::int32_t>(finite_->mul(a[0], b[0]))});
    }
    return {};
}

GroupElement GroupSpec::inverse(const GroupElement& a) const {
    switch (kind_) {
        case GroupKind::FreeAbelian: {
            std::vector<std::int32_t> out(a.data());
            for (auto& v : out) v = -v;
            return GroupElement(std::move(out));
        }
        case GroupKind::Free: {
            std::vector<std::int32_t> out(a.data().rbegin(), a.data().rend());
            for (auto& v : out) v = -v;
            return GroupElement(std::move(out));
        }
        case GroupKind::Finite: return GroupElement({static_cast<std::int32_t>(finite_->inv(a[0]))});
    }
    return {};
}

GroupElement GroupSpec::power(const GroupElement& a, std::int64_t e) const {
    GroupElement base = e < 0 ? inverse(a) : a;
    std::uint64_t n = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
    GroupElement result = identity();
    while (n > 0) {
        if (n & 1U) result = multiply(result, base);
        n >>= 1U;
        if (n > 0) base = multiply(base, base);
    }
    return result;
}

int GroupSpec::word_length(const GroupElement& a) const {
    switch (kind_) {
        case GroupKind::FreeAbelian: {
            int s = 0;
            for (auto v : a.data()) s += std::abs(v);
            return s;
        }
        case GroupKind::Free: return static_cast<int>(a.size());
        case GroupKind::Finite: return finite_->distance[static_cast<std::size_t>(a[0])];
    }
    return 0;
}

std::vector<GroupElement> GroupSpec::elements() const {
    std::vector<GroupElement> out;
    out.reserve(static_cast<std::size_t>(order()));
    for (std::int64_t i = 0; i < order(); ++i) out.emplace_back(std::vector<std::int32_t>{static_cast<std::int32_t>(i)});
    return out;
}

GroupElement GroupSpec::element(std::int64_t index) const {
    if (kind_ != GroupKind::Finite || index < 0 || index >= order()) throw Error("element index out of range");
    return GroupElement({static_cast<std::int32_t>(index)});
}

std::int64_t GroupSpec::index_of(const GroupElement& a) const {
    if (kind_ != GroupKind::Finite) throw Error("index_of() is only defined for finite groups");
    check(a);
    return a[0];
}

const std::vector<std::int64_t>& GroupSpec::cyclic_moduli() const {
    static const std::vector<std::int64_t> none;
    return finite_ ? finite_->moduli : none;
}

std::vector<std::vector<int>> GroupSpec::table() const {
    const auto m = order();
    std::vector<std::vector<int>> t(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m)));
    for (std::int64_t a = 0; a < m; ++a) {
        for (std::int64_t b = 0; b < m; ++b) t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = static_cast<int>(finite_->mul(a, b));
    }
    return t;
}

bool GroupSpec::operator==(const GroupSpec& other) const {
    if (kind_ != other.kind_ || rank_ != other.rank_) return false;
    if (kind_ != GroupKind::Finite) return true;
    if (finite_ == other.finite_) return true;
    return finite_->order == other.finite_->order && finite_->moduli == other.finite_->moduli &&
           finite_->table == other.finite_->table;
}

std::string GroupSpec::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case GroupKind::FreeAbelian: os << "Z^" << rank_; break;
        case GroupKind::Free: os << "F_" << rank_; break;
        case GroupKind::Finite:
            if (!finite_->moduli.empty()) {
                for (std::size_t i = 0; i < finite_->moduli.size(); ++i) os << (i ? " x " : "") << "Z/" << finite_->moduli[i];
            } else {
                os << "finite group of order " << finite_->order;
            }
            break;
    }
    return os.str();
}

std::string format_word(const GroupElement& word) {
    if (word.size() == 0) return "1";
    std::string s;
    for (auto v : word.data()) {
        s.push_back(v > 0 ? static_cast<char>('a' + v - 1) : static_cast<char>('A' - v - 1));
    }
    return s;
}

GroupElement parse_word(const std::string& text, int rank) {
    std::vector<std::int32_t> letters;
    if (text == "1" || text.empty()) return GroupElement();
    for (char c : text) {
        std::int32_t v = 0;
        if (c >= 'a' && c <= 'z') {
            v = c - 'a' + 1;
        } else if (c >= 'A' && c <= 'Z') {
            v = -(c - 'A' + 1);
        } else {
            throw Error(std::string("invalid letter '") + c + "' in free-group word");
        }
        if (std::abs(v) > rank) throw Error(std::string("letter '") + c + "' exceeds the free rank");
        if (!letters.empty() && letters.back() == -v) {
            letters.pop_back();
        } else {
            letters.push_back(v);
        }
    }
    return GroupElement(std::move(letters));
}

// ---------------------------------------------------------------------------

QuotientMap QuotientMap::from_moduli(const GroupSpec& source, std::vector<std::int64_t> moduli) {
    if (source.kind() == GroupKind::Finite) throw Error("quotient source must be free-abelian or free");
    if (static_cast<int>(moduli.size()) != source.rank()) {
        throw Error("quotient: need one modulus per generator (" + std::to_string(source.rank()) + ")");
    }
    QuotientMap q(source, GroupSpec::cyclic_product(moduli));
    std::int64_t stride = 1;
    for (auto m : moduli) {
        q.images_.push_back(q.target_.element(m > 1 ? stride : 0));
        stride *= m;
    }
    q.moduli_ = std::move(moduli);
    q.close_image();
    return q;
}

QuotientMap QuotientMap::from_images(const GroupSpec& source, const GroupSpec& target, std::vector<GroupElement> images) {
    if (source.kind() == GroupKind::Finite) throw Error("quotient source must be free-abelian or free");
    if (target.kind() != GroupKind::Finite) throw Error("quotient target must be a finite group");
    if (static_cast<int>(images.size()) != source.rank()) {
        throw Error("quotient: need one image per generator (" + std::to_string(source.rank()) + ")");
    }
    for (const auto& im : images) target.check(im);
    if (source.kind() == GroupKind::FreeAbelian) {
        for (std::size_t i = 0; i < images.size(); ++i) {
            for (std::size_t j = i + 1; j < images.size(); ++j) {
                if (target.multiply(images[i], images[j]) != target.multiply(images[j], images[i])) {
                    throw Error("quotient: images of free-abelian generators must commute");
                }
            }
        }
    }
    QuotientMap q(source, target);
    q.images_ = std::move(images);
    q.close_image();
    return q;
}

void QuotientMap::close_image() {
    position_.assign(static_cast<std::size_t>(target_.order()), -1);
    std::vector<GroupElement> steps;
    for (const auto& im : images_) {
        steps.push_back(im);
        steps.push_back(target_.inverse(im));
    }
    std::vector<GroupElement> found{target_.identity()};
    position_[static_cast<std::size_t>(target_.identity()[0])] = 0;
    for (std::size_t head = 0; head < found.size(); ++head) {
        for (const auto& s : steps) {
            auto next = target_.multiply(s, found[head]);
            auto& slot = position_[static_cast<std::size_t>(next[0])];
            if (slot < 0) {
                slot = 0;
                found.push_back(std::move(next));
            }
        }
    }
    std::sort(found.begin(), found.end());
    for (std::size_t i = 0; i < found.size(); ++i) position_[static_cast<std::size_t>(found[i][0])] = static_cast<std::int64_t>(i);
    basis_ = std::move(found);
}

GroupElement QuotientMap::apply(const GroupElement& g) const {
    source_.check(g);
    GroupElement out = target_.identity();
    if (source_.kind() == GroupKind::FreeAbelian) {
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (g[i] != 0) out = target_.multiply(out, target_.power(images_[i], g[i]));
        }
    } else {
        for (auto letter : g.data()) {
            const auto& im = images_[static_cast<std::size_t>(std::abs(letter) - 1)];
            out = target_.multiply(out, letter > 0 ? im : target_.inverse(im));
        }
    }
    return out;
}

std::int64_t QuotientMap::position(const GroupElement& q) const {
    if (!target_.is_valid(q)) return -1;
    return position_[static_cast<std::size_t>(q[0])];
}

QuotientChain::QuotientChain(std::vector<QuotientMap> levels, bool separating, std::string class_tag)
    : levels_(std::move(levels)), separating_(separating), class_tag_(std::move(class_tag)) {
    if (levels_.empty()) throw Error("quotient chain needs at least one level");
    for (std::size_t i = 1; i < levels_.size(); ++i) {
        const auto& prev = levels_[i - 1];
        const auto& cur = levels_[i];
        if (cur.source() != prev.source()) throw Error("quotient chain: levels have different source groups");
        if (cur.image_size() <= prev.image_size()) {
            throw Error("quotient chain: image sizes must strictly increase (level " + std::to_string(i + 1) + ")");
        }
        if (cur.source().kind() == GroupKind::FreeAbelian) {
            if (!prev.moduli().empty() && !cur.moduli().empty()) {
                for (std::size_t j = 0; j < cur.moduli().size(); ++j) {
                    if (cur.moduli()[j] % prev.moduli()[j] != 0) {
                        throw Error("quotient chain: moduli at level " + std::to_string(i + 1) +
                                    " are not divisible by those at level " + std::to_string(i));
                    }
                }
            } else if (cur.image_size() % prev.image_size() != 0) {
                throw Error("quotient chain: image size at level " + std::to_string(i + 1) +
                            " is not divisible by the previous one");
            }
        }
    }
}

// ---------------------------------------------------------------------------

FolnerLevel::FolnerLevel(GroupSpec group, int level, std::vector<GroupElement> elements)
    : group_(std::move(group)), level_(level), elements_(std::move(elements)) {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    std::unordered_set<GroupElement, GroupElementHash> outside;
    for (const auto& x : elements_) {
        for (const auto& s : group_.generators()) {
            auto y = group_.multiply(s, x);
            if (!contains(y)) outside.insert(std::move(y));
        }
    }
    boundary_ = outside.size();
}

bool FolnerLevel::contains(const GroupElement& g) const {
    return std::binary_search(elements_.begin(), elements_.end(), g);
}

std::int64_t FolnerLevel::position(const GroupElement& g) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), g);
    if (it == elements_.end() || *it != g) return -1;
    return it - elements_.begin();
}

FolnerLevel build_folner(const GroupSpec& group, int level) {
    if (level < 1) throw Error("Følner level must be a positive integer");
    switch (group.kind()) {
        case GroupKind::Free: throw Error("no Følner exhaustion: free groups are not amenable");
        case GroupKind::Finite: return FolnerLevel(group, level, group.elements());
        case GroupKind::FreeAbelian: {
            const int n = group.rank();
            const std::int64_t side = 2 * static_cast<std::int64_t>(level) + 1;
            std::int64_t total = 1;
            for (int i = 0; i < n; ++i) {
                total *= side;
                if (total > kMaxBoxSize) throw Error("Følner box too large");
            }
            std::vector<GroupElement> elems;
            elems.reserve(static_cast<std::size_t>(total));
            for (std::int64_t idx = 0; idx < total; ++idx) {
                std::vector<std::int32_t> v(static_cast<std::size_t>(n));
                std::int64_t rest = idx;
                for (int i = n - 1; i >= 0; --i) {
                    v[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(rest % side) - level;
                    rest /= side;
                }
                elems.emplace_back(std::move(v));
            }
            return FolnerLevel(group, level, std::move(elems));
        }
    }
    throw Error("unsupported group kind");
}

std::vector<FolnerLevel> build_folner_exhaustion(const GroupSpec& group, int max_level) {
    std::vector<FolnerLevel> out;
    for (int k = 1; k <= max_level; ++k) out.push_back(build_folner(group, k));
    return out;
}

std::vector<GroupElement> ball(const GroupSpec& group, int r) {
    if (r < 0) throw Error("ball radius must be nonnegative");
    std::vector<GroupElement> frontier{group.identity()};
    std::unordered_set<GroupElement, GroupElementHash> seen(frontier.begin(), frontier.end());
    for (int step = 0; step < r; ++step) {
        std::vector<GroupElement> next;
        for (const auto& x : frontier) {
            for (const auto& s : group.generators()) {
                auto y = group.multiply(s, x);
                if (seen.insert(y).second) next.push_back(std::move(y));
            }
        }
        frontier = std::move(next);
    }
    std::vector<GroupElement> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t ball_boundary_size(const FolnerLevel& level, int r) {
    const auto& group = level.group();
    const auto b = ball(group, r);
    std::unordered_set<GroupElement, GroupElementHash> outside;
    for (const auto& x : level.elements()) {
        for (const auto& v : b) {
            auto y = group.multiply(v, x);
            if (!level.contains(y)) outside.insert(std::move(y));
        }
    }
    return outside.size();
}

std::vector<GroupElement> boundary_neighborhood(const FolnerLevel& level, int r) {
    const auto& group = level.group();
    if (!group.is_amenable_model()) throw Error("no Følner exhaustion: free groups are not amenable");
    const auto b = ball(group, r);
    std::unordered_set<GroupElement, GroupElementHash> candidates;
    for (const auto& x : level.elements()) {
        for (const auto& v : b) candidates.insert(group.multiply(v, x));
    }
    std::vector<GroupElement> out;
    for (const auto& y : candidates) {
        for (const auto& v : b) {
            if (!level.contains(group.multiply(v, y))) {
                out.push_back(y);
                break;
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace l2approx
