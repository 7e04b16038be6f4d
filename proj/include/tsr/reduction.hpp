#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tsr/complexes.hpp"

namespace tsr {

enum class BPrimeClause { One = 1, Two = 2, Three = 3 };

/// "B'(1)", "B'(2)", "B'(3)"
std::string to_string(BPrimeClause c);

/// First clause of Condition B' that holds for the stabilizer pair, if any.
/// Searches all normal subgroups of ell-coprime order on both sides.
std::optional<BPrimeClause> check_condition_B_prime(GroupTag sigma, GroupTag tau, int ell);

struct MergeCandidate {
    std::string sigma;
    std::string tau1;
    std::string tau2;

    friend bool operator==(const MergeCandidate&, const MergeCandidate&) = default;
};

/// Adjacency clauses of Condition A: sigma lies on exactly the two distinct
/// cofaces tau1, tau2 (one record each, multiplicity 1), neither of which has
/// cofaces of its own or is self-identified. Isomorphism is not checked.
bool condition_A_shape(const OrbitComplex& x, const std::string& sigma, const std::string& tau1,
                       const std::string& tau2);

/// All clauses of Condition A, including Γ_τ1 ≅ Γ_τ2.
bool check_condition_A(const OrbitComplex& x, const std::string& sigma, const std::string& tau1,
                       const std::string& tau2);

/// Pairs (sigma, tau): sigma has the single coface tau with multiplicity 1 and
/// tau has no cofaces. Sorted by (dim sigma, sigma, tau).
std::vector<std::pair<std::string, std::string>> find_terminal_cells(const OrbitComplex& x);

/// Merge after checking Conditions A and B'. Throws ValidationError otherwise.
OrbitComplex merge(const OrbitComplex& x, const MergeCandidate& c, int ell);
/// Merge that only checks the adjacency shape; used for scripted steps.
OrbitComplex merge_unchecked(const OrbitComplex& x, const MergeCandidate& c);
/// Id given to the cell replacing tau1 and tau2.
std::string merged_id(const OrbitComplex& x, const std::string& tau1);

/// Removes a terminal pair after checking Condition B'.
OrbitComplex cut(const OrbitComplex& x, const std::string& sigma, const std::string& tau, int ell);

enum class MoveKind { Merge, Cut };

struct Move {
    MoveKind kind = MoveKind::Merge;
    std::vector<std::string> cells;  ///< sigma, tau1, tau2 for merges; sigma, tau for cuts
    std::string result;              ///< id of the merged cell; empty for cuts
    std::string condition;           ///< "B'(1)".."B'(3)" or "scripted"

    friend bool operator==(const Move&, const Move&) = default;
};

struct ReductionLog {
    std::vector<Move> moves;

    /// One JSON object per line.
    std::string to_jsonl() const;
    static ReductionLog from_jsonl(std::string_view text);

    friend bool operator==(const ReductionLog&, const ReductionLog&) = default;
};

struct ReductionResult {
    OrbitComplex complex;
    ReductionLog log;
};

/// Extracts the ell-torsion subcomplex, then applies cuts and merges until
/// none applies. Each round takes the first cut in (dim, id) order if there is
/// one, otherwise the first merge.
ReductionResult reduce(const OrbitComplex& x, int ell);

/// Applies a scripted merge to a reduction result and records it in the log.
void apply_scripted_merge(ReductionResult& r, const MergeCandidate& c);

/// Re-runs a log from the ell-torsion subcomplex of x, re-checking every
/// non-scripted move against its recorded clause.
OrbitComplex replay(const OrbitComplex& x, int ell, const ReductionLog& log);

}  // namespace tsr
