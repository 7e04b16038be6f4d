#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tsr {

/// Isomorphism types of the finite groups occurring as cell stabilizers.
/// Dn denotes the dihedral group of order 2n, so D2 is the Klein four-group.
enum class GroupTag { C1, C2, C3, C4, C6, D2, D3, D4, D6, A4, S4 };

std::string_view to_string(GroupTag tag);
GroupTag parse_group_tag(std::string_view text);
int tag_order(GroupTag tag);
bool is_cyclic_tag(GroupTag tag);
std::span<const GroupTag> all_group_tags();

/// Largest group order the exhaustive subgroup machinery accepts (|S4|).
inline constexpr int kMaxSubgroupSearchOrder = 24;

/// A permutation of {0, ..., degree-1}; p[i] is the image of i.
using Perm = std::vector<std::uint8_t>;

Perm compose(const Perm& a, const Perm& b);  ///< apply b first, then a
Perm invert(const Perm& p);
Perm identity_perm(int degree);
std::string perm_to_cycles(const Perm& p);

/// A finite permutation group, stored as its full sorted element list with a
/// multiplication table over element indices. Element 0 is the identity.
class FiniteGroup {
public:
    /// Closure of the given generators. Throws ValidationError for bad input.
    static FiniteGroup generated_by(int degree, std::span<const Perm> generators,
                                    std::optional<GroupTag> tag = std::nullopt);
    static FiniteGroup from_elements(int degree, std::vector<Perm> elements,
                                     std::optional<GroupTag> tag = std::nullopt);

    int degree() const { return degree_; }
    int order() const { return static_cast<int>(elements_.size()); }
    const std::vector<Perm>& elements() const { return elements_; }
    const Perm& element(int i) const { return elements_[i]; }
    std::optional<GroupTag> tag() const { return tag_; }

    int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * order() + b]; }
    int inv(int a) const { return inverse_[a]; }
    int element_order(int a) const;
    /// Index of p, or -1 when p is not in the group.
    int index_of(const Perm& p) const;
    bool contains(const FiniteGroup& h) const;
    bool is_abelian() const;

    /// Subgroup on a subset of element indices (must be closed).
    FiniteGroup subgroup(const std::vector<int>& indices) const;
    std::vector<int> indices_of(const FiniteGroup& h) const;

    friend bool operator==(const FiniteGroup& a, const FiniteGroup& b)
    {
        return a.degree_ == b.degree_ && a.elements_ == b.elements_;
    }

private:
    FiniteGroup() = default;
    void build_tables();

    int degree_ = 0;
    std::vector<Perm> elements_;
    std::vector<int> table_;
    std::vector<int> inverse_;
    std::optional<GroupTag> tag_;
};

/// Pinned permutation realization of a catalog group.
///   C1 = {id} on 1 point        C2 = <(0 1)>            C3 = <(0 1 2)>
///   C4 = <(0 1 2 3)>            C6 = <(0 1 2)(3 4)>     D2 = <(0 1)(2 3), (0 2)(1 3)>
///   D3 = <(0 1 2), (0 1)>       D4 = <(0 1 2 3), (0 2)> D6 = <(0 1 2)(3 4), (0 1)>
///   A4 = <(0 1 2), (0 1)(2 3)>  S4 = <(0 1 2 3), (0 1)>
const FiniteGroup& catalog_group(GroupTag tag);

/// Dihedral group of order 2n acting on the n-gon (n >= 3). Not part of the
/// catalog; used as an oracle input for dihedral groups outside it.
FiniteGroup dihedral_group(int n);

bool is_prime(int n);

/// Every subgroup, ordered by (order, sorted element list).
std::vector<FiniteGroup> all_subgroups(const FiniteGroup& g);
std::vector<FiniteGroup> normal_subgroups(const FiniteGroup& g);
std::vector<FiniteGroup> sylow_subgroups(const FiniteGroup& g, int ell);
/// First Sylow ell-subgroup in subgroup order; the trivial group when ell does not divide |G|.
FiniteGroup sylow_subgroup(const FiniteGroup& g, int ell);
FiniteGroup center(const FiniteGroup& g);
FiniteGroup normalizer(const FiniteGroup& g, const FiniteGroup& h);
FiniteGroup derived_subgroup(const FiniteGroup& g);
bool is_normal_subgroup(const FiniteGroup& g, const FiniteGroup& h);
/// G/N realized on the left cosets of N.
FiniteGroup quotient(const FiniteGroup& g, const FiniteGroup& n);

/// Zassenhaus: the center of a Sylow ell-subgroup is the center of every
/// Sylow ell-subgroup containing it. Vacuously true when ell does not divide |G|.
bool is_ell_normal(const FiniteGroup& g, int ell);

/// Isomorphism G -> H as a map of element indices, if one exists.
std::optional<std::vector<int>> find_isomorphism(const FiniteGroup& g, const FiniteGroup& h);
bool are_isomorphic(const FiniteGroup& g, const FiniteGroup& h);
/// Catalog tag of a group isomorphic to g, if any.
std::optional<GroupTag> identify(const FiniteGroup& g);

/// One representative per conjugacy class of subgroups of G isomorphic to the
/// catalog group `sub`, in subgroup order. Index i is "embedding i".
std::vector<FiniteGroup> subgroup_class_representatives(const FiniteGroup& g, GroupTag sub);

/// Reduced mod-ell cohomology vanishes, decided as gcd(|G|, ell) = 1.
bool has_trivial_mod_ell_cohomology(const FiniteGroup& g, int ell);

/// dim over F_ell of H_q(D_n; Z/ell) for odd ell: 1 at q = 0, 1 at
/// q = 3, 4 mod 4 when ell | n, otherwise 0.
int dihedral_mod_ell_homology(int n, int ell, int q);

struct HomologyDims {
    int ell = 0;
    std::vector<int> dims;  ///< dims[q] = dim H_q(G; F_ell)

    friend bool operator==(const HomologyDims&, const HomologyDims&) = default;
};

/// Resource bound for the bar-resolution oracle: |G|^(q_max + 1).
inline constexpr long long kBarResolutionBudget = 100000;

/// H_q(G; F_ell) for q <= q_max from the normalized bar complex.
HomologyDims mod_ell_homology_bruteforce(const FiniteGroup& g, int ell, int q_max);

/// Rank of the map H_q(H_1) + ... + H_q(H_k) -> H_q(G) over F_ell induced by
/// inclusions of subgroups, computed on bar complexes (q >= 1).
int corestriction_rank_bruteforce(const FiniteGroup& g, std::span<const FiniteGroup> subgroups,
                                  int ell, int q);

}  // namespace tsr
