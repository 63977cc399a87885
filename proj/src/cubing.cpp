#include "cubedual/cubing.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <set>

#include "cubedual/errors.hpp"

namespace cubedual::cube {

using poc::Elem;
using poc::PocSet;

namespace {

bool has_edge(const MedianGraph& G, int u, int v) {
    for (auto& [w, p] : G.adj[u])
        if (w == v) return true;
    return false;
}

}  // namespace

MedianGraph enumerate_pi(const PocSet& P, const BitVec& seed, const Oracle& oracle,
                         const Budget& budget) {
    if (auto bad = P.ultrafilter_conflict(seed))
        throw PocViolation("enumerate_pi: seed is not an ultrafilter (pairs " +
                           std::to_string(bad->first) + ", " + std::to_string(bad->second) + ")");
    MedianGraph G;
    G.n_pairs = P.n_pairs();
    if (budget.max_vertices == 0) {
        G.complete = false;
        G.min_unexpanded_level = 0;
        return G;  // nothing fits, not even the seed
    }

    auto insert = [&](const BitVec& b, int lvl) {
        int id = G.n_verts();
        G.verts.push_back(b);
        G.consistent.push_back(oracle ? (oracle(b) ? Flag::yes : Flag::no) : Flag::unset);
        G.level.push_back(lvl);
        G.expanded.push_back(0);
        G.height.push_back(-1);
        G.height_trusted.push_back(0);
        G.adj.emplace_back();
        G.index.emplace(b, id);
        return id;
    };

    insert(seed, 0);
    std::deque<int> queue{0};
    bool out_of_budget = false;

    while (!queue.empty() && !out_of_budget) {
        int v = queue.front();
        queue.pop_front();
        if (budget.radius && G.level[v] >= *budget.radius) continue;

        bool cut = false;
        for (Elem a : P.min_set(G.verts[v])) {
            BitVec nb = G.verts[v];
            nb.flip(poc::pair_of(a));
            int nid = G.id_of(nb);
            if (nid < 0) {
                if (G.verts.size() >= budget.max_vertices) {
                    cut = true;
                    break;
                }
                nid = insert(nb, G.level[v] + 1);
                queue.push_back(nid);
            }
            if (!has_edge(G, v, nid)) {
                G.edges.push_back({std::min(v, nid), std::max(v, nid), poc::pair_of(a)});
                G.adj[v].push_back({nid, poc::pair_of(a)});
                G.adj[nid].push_back({v, poc::pair_of(a)});
            }
        }
        if (cut) {
            out_of_budget = true;  // v stays unexpanded, as does the rest of the queue
        } else {
            G.expanded[v] = 1;
        }
    }

    G.complete = true;
    for (int v = 0; v < G.n_verts(); ++v) {
        if (G.expanded[v]) continue;
        G.complete = false;
        if (G.min_unexpanded_level < 0 || G.level[v] < G.min_unexpanded_level)
            G.min_unexpanded_level = G.level[v];
    }

    std::sort(G.edges.begin(), G.edges.end(), [](const Edge& a, const Edge& b) {
        return std::tie(a.u, a.v) < std::tie(b.u, b.v);
    });
    for (auto& nbrs : G.adj)
        std::sort(nbrs.begin(), nbrs.end());
    return G;
}

std::vector<int> geodesic(const PocSet& P, const MedianGraph& G, int u, int v) {
    if (u < 0 || u >= G.n_verts() || v < 0 || v >= G.n_verts())
        throw SchemaError("geodesic: vertex id out of range");
    BitVec cur = G.verts[u];
    const BitVec& target = G.verts[v];
    std::vector<int> path{u};
    int expect = int(cur.count_xor(target));
    while (cur != target) {
        int flip_pair = -1;
        for (Elem a : P.min_set(cur)) {
            int p = poc::pair_of(a);
            if (cur.get(p) != target.get(p) && (flip_pair < 0 || p < flip_pair)) flip_pair = p;
        }
        if (flip_pair < 0)
            throw CrossCheckFailed("geodesic: no minimal side separates the endpoints");
        cur.flip(flip_pair);
        int id = G.id_of(cur);
        if (id < 0)
            throw FrontierClipped("geodesic: intermediate vertex not enumerated (pair " +
                                  std::to_string(flip_pair) + ")");
        path.push_back(id);
    }
    if (int(path.size()) != expect + 1)
        throw CrossCheckFailed("geodesic: path length != delta + 1");
    return path;
}

std::vector<int> consistent_geodesic(const walls::Arrangement& A, const MedianGraph& G,
                                     const Point& a_pt, const Point& b_pt) {
    const PocSet& P = A.pocset();
    if (!A.is_generic(a_pt) || !A.is_generic(b_pt)) {
        for (int i = 0; i < A.n_pairs(); ++i)
            if (sgn(walls::line_eval(A.line(i), a_pt)) == 0 &&
                sgn(walls::line_eval(A.line(i), b_pt)) == 0)
                throw DegenerateSegment("consistent_geodesic: segment lies inside wall " +
                                        A.labels()[i]);
        throw NotGeneric("consistent_geodesic: endpoint lies on a wall");
    }
    if (a_pt == b_pt) {
        int id = G.id_of(*walls::b_x(A, a_pt).orientation);
        if (id < 0) throw FrontierClipped("consistent_geodesic: endpoint not enumerated");
        return {id};
    }

    BitVec cur = *walls::b_x(A, a_pt).orientation;
    BitVec beta = *walls::b_x(A, b_pt).orientation;

    // Group crossed walls by parameter t along [a,b]; within a group,
    // concurrent walls are flipped by repeated minimal extraction.
    std::map<Rat, std::vector<int>> groups;
    for (int i = 0; i < A.n_pairs(); ++i) {
        Rat fa = walls::line_eval(A.line(i), a_pt);
        Rat fb = walls::line_eval(A.line(i), b_pt);
        if (sgn(fa) * sgn(fb) < 0) groups[fa / (fa - fb)].push_back(i);
    }

    int start = G.id_of(cur);
    if (start < 0) throw FrontierClipped("consistent_geodesic: start vertex not enumerated");
    std::vector<int> path{start};

    for (auto& [t, pairs] : groups) {
        std::vector<Elem> remaining;
        for (int p : pairs)
            remaining.push_back(poc::chosen(cur, p));
        while (!remaining.empty()) {
            // Any poc-minimal element of the remaining set is minimal in cur
            // (flip() revalidates); ties break by ascending pair index.
            Elem e = -1;
            for (Elem cand : remaining) {
                bool minimal = true;
                for (Elem other : remaining)
                    if (other != cand && P.leq(other, cand)) {
                        minimal = false;
                        break;
                    }
                if (minimal && (e < 0 || poc::pair_of(cand) < poc::pair_of(e))) e = cand;
            }
            if (e < 0) throw CrossCheckFailed("consistent_geodesic: crossing group has a cycle");
            cur = P.flip(cur, e);
            remaining.erase(std::find(remaining.begin(), remaining.end(), e));
            if (!walls::supports_orientation(A, cur))
                throw CrossCheckFailed("consistent_geodesic: intermediate orientation " +
                                       cur.to_string() + " is not supported");
            int id = G.id_of(cur);
            if (id < 0)
                throw FrontierClipped("consistent_geodesic: intermediate vertex not enumerated");
            path.push_back(id);
        }
    }

    if (cur != beta) throw CrossCheckFailed("consistent_geodesic: walk missed the endpoint");
    if (int(path.size()) != G.verts[path.front()].count_xor(beta) + 1)
        throw CrossCheckFailed("consistent_geodesic: path is not a geodesic");
    return path;
}

namespace {

// Bron-Kerbosch with pivoting over the transversality graph on a min-set.
struct CliqueCollector {
    const std::vector<std::vector<char>>& adj;
    int n;
    std::vector<std::vector<int>> out;

    void expand(std::vector<int>& R, std::vector<int> Pset, std::vector<int> X) {
        if (Pset.empty() && X.empty()) {
            out.push_back(R);
            return;
        }
        int pivot = -1, best = -1;
        for (int u : Pset) {
            int d = 0;
            for (int w : Pset)
                if (adj[u][w]) ++d;
            if (d > best) best = d, pivot = u;
        }
        for (int u : X) {
            int d = 0;
            for (int w : Pset)
                if (adj[u][w]) ++d;
            if (d > best) best = d, pivot = u;
        }
        std::vector<int> cands;
        for (int u : Pset)
            if (pivot < 0 || !adj[pivot][u]) cands.push_back(u);
        for (int u : cands) {
            std::vector<int> P2, X2;
            for (int w : Pset)
                if (adj[u][w]) P2.push_back(w);
            for (int w : X)
                if (adj[u][w]) X2.push_back(w);
            R.push_back(u);
            expand(R, std::move(P2), std::move(X2));
            R.pop_back();
            Pset.erase(std::find(Pset.begin(), Pset.end(), u));
            X.push_back(u);
        }
    }
};

// Check all 2^|pairs| corners of the cube spanned at `corner` exist; if so,
// return the smallest enumerated corner id (a canonical representative for
// dedup across corners). Returns nullopt when a corner is missing.
std::optional<int> cube_anchor(const MedianGraph& G, int corner, const std::vector<int>& pairs) {
    int k = int(pairs.size());
    int anchor = corner;
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
        BitVec b = G.verts[corner];
        for (int i = 0; i < k; ++i)
            if (mask & (1u << i)) b.flip(pairs[i]);
        int id = G.id_of(b);
        if (id < 0) return std::nullopt;
        anchor = std::min(anchor, id);
    }
    return anchor;
}

std::vector<std::vector<int>> maximal_transverse_subsets(const PocSet& P, const BitVec& v) {
    std::vector<Elem> mins = P.min_set(v);
    int m = int(mins.size());
    std::vector<std::vector<char>> adj(m, std::vector<char>(m, 0));
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (P.transverse(mins[i], mins[j])) adj[i][j] = adj[j][i] = 1;
    CliqueCollector cc{adj, m, {}};
    std::vector<int> R, Pset(m), X;
    for (int i = 0; i < m; ++i)
        Pset[i] = i;
    cc.expand(R, std::move(Pset), std::move(X));
    std::vector<std::vector<int>> out;
    for (auto& clique : cc.out) {
        std::vector<int> pairs;
        for (int i : clique)
            pairs.push_back(poc::pair_of(mins[i]));
        std::sort(pairs.begin(), pairs.end());
        out.push_back(std::move(pairs));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<CubeRecord> cubes_at(const PocSet& P, const MedianGraph& G, int v) {
    if (v < 0 || v >= G.n_verts()) throw SchemaError("cubes_at: vertex id out of range");
    if (!G.expanded[v]) throw FrontierClipped("cubes_at: vertex " + std::to_string(v) +
                                              " was not expanded");
    std::vector<CubeRecord> out;
    for (auto& pairs : maximal_transverse_subsets(P, G.verts[v])) {
        if (!cube_anchor(G, v, pairs)) {
            if (G.complete)
                throw CrossCheckFailed("cubes_at: cube corner missing from a complete graph");
            continue;
        }
        out.push_back({v, std::move(pairs)});
    }
    return out;  // maximal_transverse_subsets already sorts by pair list
}

std::vector<CubeRecord> all_maximal_cubes(const PocSet& P, const MedianGraph& G) {
    std::set<std::pair<int, std::vector<int>>> seen;
    for (int v = 0; v < G.n_verts(); ++v) {
        if (!G.expanded[v]) continue;
        for (auto& pairs : maximal_transverse_subsets(P, G.verts[v])) {
            auto anchor = cube_anchor(G, v, pairs);
            if (!anchor) {
                if (G.complete)
                    throw CrossCheckFailed("all_maximal_cubes: corner missing from a complete graph");
                continue;
            }
            seen.emplace(*anchor, std::move(pairs));
        }
    }
    std::vector<CubeRecord> out;
    for (auto& [base, pairs] : seen)
        out.push_back({base, pairs});
    return out;
}

int vertex_degree(const PocSet& P, const MedianGraph& G, int v) {
    if (v < 0 || v >= G.n_verts()) throw SchemaError("vertex_degree: vertex id out of range");
    if (!G.expanded[v])
        throw FrontierClipped("vertex_degree: vertex " + std::to_string(v) + " was not expanded");
    size_t mins = P.min_set(G.verts[v]).size();
    if (mins != G.adj[v].size())
        throw CrossCheckFailed("vertex_degree: adjacency disagrees with the min-set");
    return int(mins);
}

int complex_dimension(const PocSet& P, const MedianGraph& G) {
    int dim = 0;
    for (auto& rec : all_maximal_cubes(P, G))
        dim = std::max(dim, int(rec.pairs.size()));
    if (G.complete) {
        auto t = P.max_transverse();
        if (t.exact && t.size != dim)
            throw CrossCheckFailed("complex_dimension: " + std::to_string(dim) +
                                   " != max transverse set " + std::to_string(t.size));
    }
    return dim;
}

poc::PocSet hyperplane_dual(const MedianGraph& G) {
    if (!G.complete) throw IncompleteGraph("hyperplane_dual: graph has unexpanded vertices");
    int n = G.n_pairs, V = G.n_verts();
    // membership[e] = vertices on side e; plus side of pair p = bit p clear.
    std::vector<BitVec> membership(2 * n, BitVec(V));
    for (int v = 0; v < V; ++v)
        for (int p = 0; p < n; ++p)
            membership[poc::side(p, G.verts[v].get(p))].set(v, true);
    std::vector<BitVec> up(2 * n, BitVec(2 * n));
    for (int e = 0; e < 2 * n; ++e)
        for (int f = 0; f < 2 * n; ++f)
            if (membership[e].is_subset_of(membership[f])) up[e].set(f, true);
    return poc::PocSet::from_up_sets(n, up);
}

}  // namespace cubedual::cube
