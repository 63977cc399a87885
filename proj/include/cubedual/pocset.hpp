#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cubedual/bitvec.hpp"
#include "cubedual/errors.hpp"

namespace cubedual::poc {

// A halfspace side. Encoding: 2 * pair_index + (0 = plus side, 1 = minus side).
using Elem = int;

inline Elem star(Elem e) { return e ^ 1; }
inline int pair_of(Elem e) { return e >> 1; }
inline bool minus_side(Elem e) { return e & 1; }
inline Elem side(int pair, bool minus) { return 2 * pair + (minus ? 1 : 0); }
inline Elem chosen(const BitVec& uf, int pair) { return side(pair, uf.get(pair)); }

// How two halfspace pairs sit relative to each other. For distinct pairs of a
// valid poc-set at most one containment can hold, so this is a total
// classification.
enum class Relation {
    same_pair,    // {a,a*} == {b,b*}
    leq,          // a <= b
    geq,          // b <= a        (equivalently a* <= b*)
    disjoint,     // a <= b*       (the two sides point away from each other)
    covering,     // a* <= b       (the two sides jointly cover everything)
    transverse,   // none of the four containments
};

std::string relation_name(Relation r);

// Finite poc-set over n halfspace pairs: a partial order on the 2n sides with
// the order-reversing involution *, no side below its own star.
//
// Ultrafilters are n-bit vectors (bit i set = minus side of pair i chosen).
class PocSet {
public:
    // Builds the smallest poc-set order containing the given relations:
    // closes under transitivity and a<=b => b*<=a*, then validates.
    // Throws PocViolation if the axioms fail, SchemaError on bad ids.
    static PocSet from_relations(int n_pairs,
                                 const std::vector<std::pair<Elem, Elem>>& leq_pairs,
                                 std::vector<std::string> labels = {});

    // Takes a complete order matrix (up[e] = {f : e <= f}); validates that it
    // is reflexive, antisymmetric, transitive, star-dual and proper.
    static PocSet from_up_sets(int n_pairs, std::vector<BitVec> up,
                               std::vector<std::string> labels = {});

    int n_pairs() const { return n_pairs_; }
    int n_elems() const { return 2 * n_pairs_; }

    const std::string& label(int pair) const { return labels_[pair]; }
    std::string elem_name(Elem e) const;

    bool leq(Elem a, Elem b) const { return up_[a].get(b); }
    Relation relation_of(Elem a, Elem b) const;
    bool transverse(Elem a, Elem b) const {
        return relation_of(a, b) == Relation::transverse;
    }

    const BitVec& up(Elem e) const { return up_[e]; }
    const BitVec& down(Elem e) const { return down_[e]; }
    // {f : e <= f*}; f chosen together with e breaks the filter property.
    // Symmetric in e and f.
    const BitVec& conflict(Elem e) const { return conflict_[e]; }

    // A truncated-chain tail: minimal in the order but below something, i.e.
    // the outward side of the last wall of a family with at least two walls.
    // Orientations choosing such a side sit at the cut edge of the instance.
    bool is_boundary(Elem e) const {
        return down_[e].count() == 1 && up_[e].count() >= 2;
    }

    // --- orientations -----------------------------------------------------

    // The chosen sides as a mask over the 2n elements.
    BitVec elem_mask(const BitVec& uf) const;

    // Some pair (e, f) of chosen sides with e <= f*, if any. An orientation is
    // an ultrafilter exactly when there is none.
    std::optional<std::pair<Elem, Elem>> ultrafilter_conflict(const BitVec& uf) const;
    bool is_ultrafilter(const BitVec& uf) const { return !ultrafilter_conflict(uf); }

    bool is_filter_base(const std::vector<Elem>& elems) const;

    // Greedy completion; deterministic (ascending pair index, plus side
    // preferred when free). Throws NotFilterBase.
    BitVec extend_to_ultrafilter(const std::vector<Elem>& base) const;

    // Chosen sides minimal within the orientation, ascending.
    std::vector<Elem> min_set(const BitVec& uf) const;
    bool is_minimal_in(const BitVec& uf, Elem a) const;

    // Replace a by a*; requires a chosen and minimal (else NotMinimal), which
    // is exactly the condition for the result to stay an ultrafilter.
    BitVec flip(const BitVec& uf, Elem a) const;

    // Coordinatewise majority. Always an ultrafilter when the inputs are;
    // cross-checked here and a CrossCheckFailed escape if that ever breaks.
    BitVec median(const BitVec& a, const BitVec& b, const BitVec& c) const;

    static int delta(const BitVec& a, const BitVec& b) { return a.count_xor(b); }

    struct TransverseSet {
        int size = 0;
        std::vector<int> pairs;  // witness, ascending
        bool exact = true;       // false if the node budget truncated the search
    };

    // Largest set of pairwise-transverse pairs (max clique in the
    // transversality graph), branch & bound with a greedy colouring bound.
    TransverseSet max_transverse(long node_budget = 2'000'000) const;

    // Pairwise transversality on pair indices.
    bool pairs_transverse(int p, int q) const { return transverse(side(p, false), side(q, false)); }

    // Empty poc-set (0 pairs); populated instances come from the factories.
    PocSet() = default;

private:
    void finish_build();  // fills down_/conflict_, validates axioms

    int n_pairs_ = 0;
    std::vector<std::string> labels_;
    std::vector<BitVec> up_;
    std::vector<BitVec> down_;
    std::vector<BitVec> conflict_;
};

// True if some bijection of pairs (with per-pair side swaps) carries the order
// of a onto the order of b exactly. Backtracking over pairs with
// degree-signature pruning; intended for the small instances the duality
// roundtrip uses.
bool pocsets_isomorphic(const PocSet& a, const PocSet& b);

// n chained squares: pairs a_1..a_n, b_1..b_n with b_i <= a_i and
// b_i <= b_{i+1}. The orientation {a_1..a_n, b_1*..b_n*} is an ultrafilter
// whose min-set contains the n pairwise-transverse a_i.
PocSet roller_chain_example(int n);

// n leaves, pairwise disjoint: leaf_i <= leaf_j* for i != j. Exactly n+1
// ultrafilters forming a star: the all-star center plus one petal per leaf.
PocSet star_tree_example(int n);

// k pairs, no relations: everything transverse, 2^k ultrafilters, one k-cube.
PocSet free_example(int k);

}  // namespace cubedual::poc
