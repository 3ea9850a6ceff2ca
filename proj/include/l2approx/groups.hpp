#pragma once

#include "l2approx/rational.hpp"

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace l2approx {

enum class GroupKind { FreeAbelian, Free, Finite };

std::string to_string(GroupKind kind);

/// Canonical form of a group element.
///
/// free-abelian: exponent vector of length rank.
/// free: reduced word, letter +i / -i stands for generator i (1-based) or its inverse.
/// finite: a single index 0..order-1.
class GroupElement {
public:
    GroupElement() = default;
    explicit GroupElement(std::vector<std::int32_t> data) : data_(std::move(data)) {}

    const std::vector<std::int32_t>& data() const { return data_; }
    std::size_t size() const { return data_.size(); }
    std::int32_t operator[](std::size_t i) const { return data_[i]; }

    friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
    friend bool operator==(const GroupElement&, const GroupElement&) = default;

private:
    std::vector<std::int32_t> data_;
};

struct GroupElementHash {
    std::size_t operator()(const GroupElement& g) const noexcept;
};

struct FiniteGroupData;

/// One of the supported groups: Z^n, the free group F_k, or an explicit finite group
/// (multiplication table, or a product of cyclic groups kept implicit).
class GroupSpec {
public:
    static GroupSpec free_abelian(int rank);
    static GroupSpec free(int rank);
    /// Table over elements 0..m-1; `generators` defaults to all non-identity elements.
    static GroupSpec finite_table(const std::vector<std::vector<int>>& table,
                                  std::vector<int> generators = {});
    /// Z/m_1 x ... x Z/m_n, elements indexed in mixed radix (first coordinate fastest).
    static GroupSpec cyclic_product(std::vector<std::int64_t> moduli);
    /// Permutation group generated by the given permutations of {0..n-1}.
    static GroupSpec from_permutations(const std::vector<std::vector<int>>& generators);

    GroupKind kind() const { return kind_; }
    int rank() const { return rank_; }
    /// Number of elements; only for finite groups.
    std::int64_t order() const;
    bool is_amenable_model() const { return kind_ != GroupKind::Free; }

    GroupElement identity() const;
    GroupElement multiply(const GroupElement& a, const GroupElement& b) const;
    GroupElement inverse(const GroupElement& a) const;
    GroupElement power(const GroupElement& a, std::int64_t e) const;
    bool is_valid(const GroupElement& a) const;
    /// Throws unless `a` is a valid canonical element of this group.
    void check(const GroupElement& a) const;

    /// The symmetric generating set S.
    const std::vector<GroupElement>& generators() const { return generators_; }
    /// The positive generators, one per free generator (Z^n, F_k) or as supplied (finite).
    std::vector<GroupElement> basic_generators() const;

    /// Word length with respect to S.
    int word_length(const GroupElement& a) const;

    /// All elements in index order; only for finite groups.
    std::vector<GroupElement> elements() const;
    GroupElement element(std::int64_t index) const;
    std::int64_t index_of(const GroupElement& a) const;

    /// Non-empty when the finite group is an implicit product of cyclic groups.
    const std::vector<std::int64_t>& cyclic_moduli() const;
    /// Explicit multiplication table (finite groups), materialized on demand.
    std::vector<std::vector<int>> table() const;

    bool operator==(const GroupSpec& other) const;
    bool operator!=(const GroupSpec& other) const { return !(*this == other); }

    std::string describe() const;

private:
    GroupSpec() = default;
    void build_generators();

    GroupKind kind_ = GroupKind::FreeAbelian;
    int rank_ = 0;
    std::shared_ptr<const FiniteGroupData> finite_;
    std::vector<GroupElement> generators_;
};

/// Letters of a free-group word as text: a..z for generators, A..Z for inverses.
std::string format_word(const GroupElement& word);
GroupElement parse_word(const std::string& text, int rank);

/// Homomorphism p: G -> Q onto the subgroup Q generated by the generator images.
class QuotientMap {
public:
    /// Z^n (or F_n via abelianization) -> Z/m_1 x ... x Z/m_n, generator i -> e_i.
    static QuotientMap from_moduli(const GroupSpec& source, std::vector<std::int64_t> moduli);
    static QuotientMap from_images(const GroupSpec& source, const GroupSpec& target,
                                   std::vector<GroupElement> images);

    const GroupSpec& source() const { return source_; }
    const GroupSpec& target() const { return target_; }
    const std::vector<GroupElement>& images() const { return images_; }
    const std::vector<std::int64_t>& moduli() const { return moduli_; }

    GroupElement apply(const GroupElement& g) const;

    /// |Q|, the size of the image subgroup.
    std::size_t image_size() const { return basis_.size(); }
    /// Elements of Q in sorted canonical order; this is the basis order of finite models.
    const std::vector<GroupElement>& basis() const { return basis_; }
    /// Position of a target element in `basis()`, or -1 when outside Q.
    std::int64_t position(const GroupElement& q) const;

private:
    QuotientMap(GroupSpec source, GroupSpec target) : source_(std::move(source)), target_(std::move(target)) {}
    void close_image();

    GroupSpec source_;
    GroupSpec target_;
    std::vector<GroupElement> images_;
    std::vector<std::int64_t> moduli_;
    std::vector<GroupElement> basis_;
    std::vector<std::int64_t> position_;
};

/// Nested finite quotients with strictly increasing image sizes.
class QuotientChain {
public:
    QuotientChain(std::vector<QuotientMap> levels, bool separating, std::string class_tag = {});

    const std::vector<QuotientMap>& levels() const { return levels_; }
    std::size_t size() const { return levels_.size(); }
    const QuotientMap& operator[](std::size_t i) const { return levels_[i]; }
    bool separating() const { return separating_; }
    const std::string& class_tag() const { return class_tag_; }

private:
    std::vector<QuotientMap> levels_;
    bool separating_;
    std::string class_tag_;
};

/// One level X_k of a Følner exhaustion: the centered box [-k,k]^n in Z^n, or the whole
/// finite group.
class FolnerLevel {
public:
    FolnerLevel(GroupSpec group, int level, std::vector<GroupElement> elements);

    const GroupSpec& group() const { return group_; }
    int level() const { return level_; }
    const std::vector<GroupElement>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }
    bool contains(const GroupElement& g) const;
    /// Position of g in `elements()`, or -1.
    std::int64_t position(const GroupElement& g) const;

    /// |S X \ X|
    std::size_t boundary_size() const { return boundary_; }
    /// |S X \ X| / |X|
    Rational boundary_ratio() const { return ratio(Integer(static_cast<long>(boundary_)), Integer(static_cast<long>(size()))); }

private:
    GroupSpec group_;
    int level_;
    std::vector<GroupElement> elements_;
    std::size_t boundary_ = 0;
};

/// X_k for the given level; throws for free groups ("no Følner exhaustion").
FolnerLevel build_folner(const GroupSpec& group, int level);

/// Levels 1..max_level.
std::vector<FolnerLevel> build_folner_exhaustion(const GroupSpec& group, int max_level);

/// The ball of radius r (all words of length <= r), sorted.
std::vector<GroupElement> ball(const GroupSpec& group, int r);

/// |B_r X \ X| with B_r the ball of radius r.
std::size_t ball_boundary_size(const FolnerLevel& level, int r);

/// N_r(X) = B_r X ∩ B_r (G \ X), sorted.
std::vector<GroupElement> boundary_neighborhood(const FolnerLevel& level, int r);

}  // namespace l2approx
