#pragma once

#include <map>
#include <string>
#include <vector>

#include "tsr/complexes.hpp"
#include "tsr/linalg.hpp"
#include "tsr/series.hpp"

namespace tsr {

/// a + b·ω with ω a primitive cube root of unity (ω² = -1 - ω).
struct Eisenstein {
    long long a = 0;
    long long b = 0;

    Eisenstein conj() const { return {a - b, -b}; }
    bool is_integer() const { return b == 0; }

    friend Eisenstein operator+(Eisenstein x, Eisenstein y) { return {x.a + y.a, x.b + y.b}; }
    friend Eisenstein operator-(Eisenstein x, Eisenstein y) { return {x.a - y.a, x.b - y.b}; }
    friend Eisenstein operator*(Eisenstein x, Eisenstein y)
    {
        return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a - x.b * y.b};
    }
    friend bool operator==(Eisenstein, Eisenstein) = default;
};

std::string to_string(Eisenstein z);

/// Pinned complex character table of a catalog group.
struct RepRing {
    GroupTag group = GroupTag::C1;
    std::vector<std::string> names;              ///< one per irreducible character
    std::vector<Perm> class_reps;                ///< elements of catalog_group(group)
    std::vector<int> class_sizes;
    std::vector<std::vector<Eisenstein>> chars;  ///< chars[i][k] = χ_i(class k)
    std::vector<int> element_class;              ///< by element index of catalog_group(group)

    int rank() const { return static_cast<int>(names.size()); }
    /// Degree χ_i(1).
    long long degree(int i) const { return chars[i][0].a; }
    /// Conjugacy class of an element of catalog_group(group).
    int class_of(const Perm& x) const;
};

/// Throws ValidationError for tags outside {C1, C2, C3, D2, D3, A4}. Both
/// orthogonality relations and the class data are checked on first use.
const RepRing& rep_ring(GroupTag tag);

struct InductionBlock {
    GroupTag source = GroupTag::C1;
    GroupTag target = GroupTag::C1;
    int embedding = 0;
    IntMatrix matrix;  ///< rank(target) x rank(source); column j is Ind χ_j
};

/// Induction R_C(source) -> R_C(target) along the `embedding`-th conjugacy
/// class of subgroups of type source (see subgroup_class_representatives).
/// Supported: G ⊂ G, C1 ⊂ G, and C2, C3 into D2, D3, A4 where they embed.
/// Frobenius reciprocity is cross-checked against the induced-character formula.
InductionBlock induction_matrix(GroupTag source, GroupTag target, int embedding = 0);

/// Columns are the new basis of R_C(tag) in irreducible-character coordinates.
/// The first vector is the regular representation.
IntMatrix splitting_basis(GroupTag tag);
/// Block of each new basis vector: 1 (regular), 2 (2-torsion part), 3 (3-torsion part).
std::vector<int> splitting_labels(GroupTag tag);

/// Abelian group Z^free_rank ⊕ Z/t_1 ⊕ ... with t_1 | t_2 | ...
struct AbelianGroup {
    int free_rank = 0;
    std::vector<long long> torsion;

    static AbelianGroup free(int r) { return {r, {}}; }
    bool is_zero() const { return free_rank == 0 && torsion.empty(); }
    friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

/// Normalizes torsion to invariant factors. Throws ValidationError for entries < 1.
AbelianGroup make_abelian_group(int free_rank, std::vector<long long> torsion);
AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b);
/// "0", "Z", "Z^3 ⊕ Z/2", "Z/2 ⊕ Z/6".
std::string to_string(const AbelianGroup& g);
/// Inverse of to_string.
AbelianGroup parse_abelian_group(std::string_view text);

/// Free chain complex C_0 <- C_1 <- C_2 with named generators.
struct ChainComplex {
    std::vector<std::vector<std::string>> generators;  ///< generators[n] spans C_n
    std::vector<IntMatrix> boundary;                   ///< boundary[n-1] : C_n -> C_{n-1}

    int top() const { return static_cast<int>(generators.size()) - 1; }
    int rank(int n) const { return n >= 0 && n <= top() ? static_cast<int>(generators[n].size()) : 0; }
};

/// Throws InvariantError when consecutive boundaries do not compose to zero
/// or shapes disagree.
void check_chain_complex(const ChainComplex& c);
/// H_n = ker / im via Smith normal form, n = 0 .. top.
std::vector<AbelianGroup> homology(const ChainComplex& c);

struct BredonComplex {
    ChainComplex chains;  ///< in irreducible-character coordinates
    /// Cells of each dimension in generator order with their stabilizers.
    std::vector<std::vector<std::pair<std::string, GroupTag>>> cells;
};

/// Bredon chain complex with coefficients in R_C. Edge ends are oriented by
/// (vertex id, embedding) order: the first end enters with -1, the second +1,
/// unless the incidence carries an explicit sign. Incidences of 2-cells must
/// carry explicit signs. Throws ValidationError for unsupported input.
BredonComplex bredon_complex(const OrbitComplex& x);

struct BlockSplit {
    ChainComplex trivial_block;
    ChainComplex block2;
    ChainComplex block3;
};

/// Changes every R_C(Γ_σ) to the splitting basis and separates the three
/// blocks. A nonzero entry between different blocks throws InvariantError.
BlockSplit split_blocks(const BredonComplex& b);

struct BredonFormula {
    AbelianGroup H0_2block;
    AbelianGroup H1_2block;
    AbelianGroup H0_3block;
    AbelianGroup H1_3block;
};

BredonFormula bredon_homology_formula(const SubgroupCensus& c);

struct KHomology {
    AbelianGroup K0;
    AbelianGroup K1;
};

KHomology k_homology(const SubgroupCensus& c, const AbelianGroup& H1_orbit, int beta2);

/// Adds the twisted-sector contributions to the dimensions of the quotient.
std::map<int, int> chen_ruan_dims(const SubgroupCensus& c, const std::map<int, int>& quotient_dims,
                                  bool complexified);

}  // namespace tsr
