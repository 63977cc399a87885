#include "cubedual/pocset.hpp"

#include <algorithm>
#include <cassert>

namespace cubedual::poc {

std::string relation_name(Relation r) {
    switch (r) {
        case Relation::same_pair: return "same_pair";
        case Relation::leq: return "leq";
        case Relation::geq: return "geq";
        case Relation::disjoint: return "disjoint";
        case Relation::covering: return "covering";
        case Relation::transverse: return "transverse";
    }
    return "?";
}

std::string PocSet::elem_name(Elem e) const {
    std::string s = labels_[pair_of(e)];
    if (minus_side(e)) s += "*";
    return s;
}

static std::vector<std::string> default_labels(int n_pairs, std::vector<std::string> labels) {
    if (labels.empty()) {
        labels.reserve(n_pairs);
        for (int i = 0; i < n_pairs; ++i) labels.push_back("h" + std::to_string(i));
    }
    if (int(labels.size()) != n_pairs)
        throw SchemaError("label count does not match pair count");
    return labels;
}

PocSet PocSet::from_relations(int n_pairs,
                              const std::vector<std::pair<Elem, Elem>>& leq_pairs,
                              std::vector<std::string> labels) {
    if (n_pairs < 0) throw SchemaError("negative pair count");
    const int m = 2 * n_pairs;
    std::vector<BitVec> up(m, BitVec(m));
    for (int e = 0; e < m; ++e) up[e].set(e, true);
    for (auto [a, b] : leq_pairs) {
        if (a < 0 || a >= m || b < 0 || b >= m)
            throw SchemaError("relation references side id out of range");
        up[a].set(b, true);
    }

    // Close under transitivity and star-duality until stable. One Warshall
    // sweep gives the transitive closure; star closure can create new chains,
    // hence the outer loop.
    bool changed = true;
    while (changed) {
        changed = false;
        for (int k = 0; k < m; ++k)
            for (int a = 0; a < m; ++a)
                if (up[a].get(k) && !up[k].is_subset_of(up[a])) {
                    up[a] |= up[k];
                    changed = true;
                }
        for (int a = 0; a < m; ++a)
            for (int b = up[a].first(); b >= 0; b = up[a].next(b))
                if (!up[star(b)].get(star(a))) {
                    up[star(b)].set(star(a), true);
                    changed = true;
                }
    }
    return from_up_sets(n_pairs, std::move(up), std::move(labels));
}

PocSet PocSet::from_up_sets(int n_pairs, std::vector<BitVec> up,
                            std::vector<std::string> labels) {
    PocSet p;
    p.n_pairs_ = n_pairs;
    p.labels_ = default_labels(n_pairs, std::move(labels));
    p.up_ = std::move(up);
    if (int(p.up_.size()) != 2 * n_pairs)
        throw SchemaError("up-set count does not match 2 * pair count");
    p.finish_build();
    return p;
}

void PocSet::finish_build() {
    const int m = n_elems();
    for (int e = 0; e < m; ++e) {
        if (up_[e].size() != m) throw SchemaError("up-set width mismatch");
        if (!up_[e].get(e)) throw PocViolation("order not reflexive at " + elem_name(e));
        if (up_[e].get(star(e)))
            throw PocViolation("side below its own complement: " + elem_name(e));
    }
    for (int a = 0; a < m; ++a)
        for (int b = up_[a].first(); b >= 0; b = up_[a].next(b)) {
            if (a != b && up_[b].get(a))
                throw PocViolation("antisymmetry fails between " + elem_name(a) +
                                   " and " + elem_name(b));
            if (!up_[star(b)].get(star(a)))
                throw PocViolation("order not star-dual at " + elem_name(a) +
                                   " <= " + elem_name(b));
            if (!up_[b].is_subset_of(up_[a]))
                throw PocViolation("order not transitive above " + elem_name(a));
        }

    down_.assign(m, BitVec(m));
    conflict_.assign(m, BitVec(m));
    for (int a = 0; a < m; ++a)
        for (int b = up_[a].first(); b >= 0; b = up_[a].next(b)) {
            down_[b].set(a, true);
            conflict_[a].set(star(b), true);  // a <= b  <=>  a conflicts b*
        }
}

Relation PocSet::relation_of(Elem a, Elem b) const {
    if (pair_of(a) == pair_of(b)) return Relation::same_pair;
    if (leq(a, b)) return Relation::leq;
    if (leq(b, a)) return Relation::geq;
    if (leq(a, star(b))) return Relation::disjoint;
    if (leq(star(a), b)) return Relation::covering;
    return Relation::transverse;
}

BitVec PocSet::elem_mask(const BitVec& uf) const {
    BitVec m(n_elems());
    for (int i = 0; i < n_pairs_; ++i) m.set(chosen(uf, i), true);
    return m;
}

std::optional<std::pair<Elem, Elem>> PocSet::ultrafilter_conflict(const BitVec& uf) const {
    BitVec m = elem_mask(uf);
    for (int i = 0; i < n_pairs_; ++i) {
        Elem e = chosen(uf, i);
        BitVec bad = conflict_[e] & m;
        if (bad.any()) return std::make_pair(e, Elem(bad.first()));
    }
    return std::nullopt;
}

bool PocSet::is_filter_base(const std::vector<Elem>& elems) const {
    for (Elem e : elems)
        if (e < 0 || e >= n_elems()) throw SchemaError("side id out of range");
    for (size_t i = 0; i < elems.size(); ++i)
        for (size_t j = i; j < elems.size(); ++j)
            if (conflict_[elems[i]].get(elems[j])) return false;
    return true;
}

BitVec PocSet::extend_to_ultrafilter(const std::vector<Elem>& base) const {
    for (Elem e : base)
        if (e < 0 || e >= n_elems()) throw SchemaError("side id out of range");
    BitVec decided(n_elems());
    for (Elem e : base) {
        BitVec bad = conflict_[e] & decided;
        if (bad.any() || conflict_[e].get(e))
            throw NotFilterBase("conflicting sides " + elem_name(e) + " and " +
                                elem_name(bad.any() ? bad.first() : e));
        decided.set(e, true);
    }
    for (int i = 0; i < n_pairs_; ++i) {
        Elem plus = side(i, false), minus = side(i, true);
        if (decided.get(plus) || decided.get(minus)) continue;
        bool plus_blocked = conflict_[plus].intersects(decided);
        [[maybe_unused]] bool minus_blocked = conflict_[minus].intersects(decided);
        // A filter base can block at most one side of any pair.
        assert(!(plus_blocked && minus_blocked));
        decided.set(plus_blocked ? minus : plus, true);
    }
    BitVec uf(n_pairs_);
    for (int i = 0; i < n_pairs_; ++i) uf.set(i, decided.get(side(i, true)));
    if (!is_ultrafilter(uf))
        throw CrossCheckFailed("greedy completion produced a non-ultrafilter");
    return uf;
}

bool PocSet::is_minimal_in(const BitVec& uf, Elem a) const {
    if (chosen(uf, pair_of(a)) != a) return false;
    BitVec below = down_[a] & elem_mask(uf);
    return below.count() == 1;  // just a itself
}

std::vector<Elem> PocSet::min_set(const BitVec& uf) const {
    BitVec m = elem_mask(uf);
    std::vector<Elem> out;
    for (int i = 0; i < n_pairs_; ++i) {
        Elem e = chosen(uf, i);
        if ((down_[e] & m).count() == 1) out.push_back(e);
    }
    return out;
}

BitVec PocSet::flip(const BitVec& uf, Elem a) const {
    if (!is_minimal_in(uf, a))
        throw NotMinimal("cannot flip across non-minimal side " + elem_name(a));
    BitVec out = uf;
    out.flip(pair_of(a));
    return out;
}

BitVec PocSet::median(const BitVec& a, const BitVec& b, const BitVec& c) const {
    BitVec m = (a & b) | (a & c) | (b & c);
    if (!is_ultrafilter(m))
        throw CrossCheckFailed("majority of ultrafilters failed the filter check");
    return m;
}

// ---------------------------------------------------------------------------
// max_transverse: branch & bound max clique on the pair transversality graph.

namespace {

struct CliqueSearch {
    const std::vector<BitVec>& adj;
    long budget;
    bool exact = true;
    std::vector<int> best;
    std::vector<int> cur;

    // Greedy colouring of cand; returns vertices ordered by colour with their
    // colour numbers (classic Tomita bound: clique <= |cur| + max colour).
    void colour(const BitVec& cand, std::vector<int>& order, std::vector<int>& col) {
        order.clear();
        col.clear();
        BitVec left = cand;
        int c = 0;
        while (left.any()) {
            ++c;
            BitVec avail = left;
            while (avail.any()) {
                int v = avail.first();
                order.push_back(v);
                col.push_back(c);
                left.set(v, false);
                avail.set(v, false);
                avail.subtract(adj[v]);
            }
        }
    }

    void expand(BitVec cand) {
        if (budget-- <= 0) {
            exact = false;
            return;
        }
        if (cand.none()) {
            if (cur.size() > best.size()) best = cur;
            return;
        }
        std::vector<int> order, col;
        colour(cand, order, col);
        for (int idx = int(order.size()) - 1; idx >= 0; --idx) {
            if (!exact) return;
            if (cur.size() + col[idx] <= best.size()) return;
            int v = order[idx];
            cur.push_back(v);
            expand(cand & adj[v]);
            cur.pop_back();
            cand.set(v, false);
        }
    }
};

}  // namespace

PocSet::TransverseSet PocSet::max_transverse(long node_budget) const {
    std::vector<BitVec> adj(n_pairs_, BitVec(n_pairs_));
    for (int p = 0; p < n_pairs_; ++p)
        for (int q = p + 1; q < n_pairs_; ++q)
            if (pairs_transverse(p, q)) {
                adj[p].set(q, true);
                adj[q].set(p, true);
            }
    CliqueSearch s{adj, node_budget, true, {}, {}};
    BitVec all(n_pairs_);
    for (int i = 0; i < n_pairs_; ++i) all.set(i, true);
    if (n_pairs_ > 0) s.expand(all);
    TransverseSet out;
    out.pairs = s.best;
    std::sort(out.pairs.begin(), out.pairs.end());
    out.size = int(out.pairs.size());
    out.exact = s.exact;
    return out;
}

// ---------------------------------------------------------------------------
// isomorphism

namespace {

struct ElemSig {
    int up, down, conflict;
    bool operator==(const ElemSig& o) const {
        return up == o.up && down == o.down && conflict == o.conflict;
    }
};

ElemSig sig_of(const PocSet& p, Elem e) {
    return {p.up(e).count(), p.down(e).count(), p.conflict(e).count()};
}

struct IsoSearch {
    const PocSet& a;
    const PocSet& b;
    std::vector<int> pair_map;   // a-pair -> b-pair, -1 unset
    std::vector<int> side_flip;  // 0/1
    std::vector<char> used;

    Elem map_elem(Elem e) const {
        int p = pair_of(e);
        return side(pair_map[p], minus_side(e) ^ side_flip[p]);
    }

    bool compatible(int p, int q, int flip) const {
        // Check every order relation between pair p and already-mapped pairs.
        for (int r = 0; r < int(pair_map.size()); ++r) {
            if (pair_map[r] < 0 || r == p) continue;
            for (int sp = 0; sp < 2; ++sp)
                for (int sr = 0; sr < 2; ++sr) {
                    Elem e = side(p, sp), f = side(r, sr);
                    Elem me = side(q, sp ^ flip);
                    Elem mf = side(pair_map[r], sr ^ side_flip[r]);
                    if (a.leq(e, f) != b.leq(me, mf)) return false;
                    if (a.leq(f, e) != b.leq(mf, me)) return false;
                }
        }
        return true;
    }

    bool go(int p) {
        if (p == int(pair_map.size())) return true;
        for (int q = 0; q < int(used.size()); ++q) {
            if (used[q]) continue;
            for (int flip = 0; flip < 2; ++flip) {
                if (!(sig_of(a, side(p, false)) == sig_of(b, side(q, flip != 0))))
                    continue;
                if (!(sig_of(a, side(p, true)) == sig_of(b, side(q, flip == 0))))
                    continue;
                if (!compatible(p, q, flip)) continue;
                pair_map[p] = q;
                side_flip[p] = flip;
                used[q] = 1;
                if (go(p + 1)) return true;
                used[q] = 0;
                pair_map[p] = -1;
            }
        }
        return false;
    }
};

}  // namespace

bool pocsets_isomorphic(const PocSet& a, const PocSet& b) {
    if (a.n_pairs() != b.n_pairs()) return false;
    IsoSearch s{a, b,
                std::vector<int>(a.n_pairs(), -1),
                std::vector<int>(a.n_pairs(), 0),
                std::vector<char>(a.n_pairs(), 0)};
    return s.go(0);
}

// ---------------------------------------------------------------------------
// stock examples

PocSet roller_chain_example(int n) {
    if (n < 1) throw SchemaError("roller chain needs n >= 1");
    // pairs 0..n-1 are a_1..a_n, pairs n..2n-1 are b_1..b_n
    std::vector<std::pair<Elem, Elem>> rel;
    std::vector<std::string> labels(2 * n);
    for (int i = 0; i < n; ++i) {
        labels[i] = "a" + std::to_string(i + 1);
        labels[n + i] = "b" + std::to_string(i + 1);
        rel.push_back({side(n + i, false), side(i, false)});  // b_i <= a_i
        if (i + 1 < n)
            rel.push_back({side(n + i, false), side(n + i + 1, false)});  // b_i <= b_{i+1}
    }
    return PocSet::from_relations(2 * n, rel, labels);
}

PocSet star_tree_example(int n) {
    if (n < 1) throw SchemaError("star tree needs n >= 1");
    std::vector<std::pair<Elem, Elem>> rel;
    std::vector<std::string> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = "leaf" + std::to_string(i + 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) rel.push_back({side(i, false), side(j, true)});
    return PocSet::from_relations(n, rel, labels);
}

PocSet free_example(int k) {
    if (k < 0) throw SchemaError("free poc-set needs k >= 0");
    return PocSet::from_relations(k, {});
}

}  // namespace cubedual::poc
