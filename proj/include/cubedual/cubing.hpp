#pragma once

#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "cubedual/bitvec.hpp"
#include "cubedual/pocset.hpp"
#include "cubedual/walls2d.hpp"

namespace cubedual::cube {

enum class Flag : signed char { no = 0, yes = 1, unset = 2 };

struct Edge {
    int u, v;  // u < v
    int pair;
};

// The enumerated almost-equality class: vertices are ultrafilters, edges are
// single flips. Vertex ids are BFS discovery order (seed = 0).
struct MedianGraph {
    int n_pairs = 0;
    std::vector<BitVec> verts;
    std::vector<Flag> consistent;
    std::vector<int> level;          // BFS discovery level (= delta to seed when expanded)
    std::vector<char> expanded;      // neighborhood fully generated
    std::vector<int> height;         // -1 until analysis::heights fills them
    std::vector<char> height_trusted;
    std::vector<Edge> edges;
    std::vector<std::vector<std::pair<int, int>>> adj;  // (neighbor id, pair)
    bool complete = false;
    int min_unexpanded_level = -1;  // -1 when everything was expanded
    std::unordered_map<BitVec, int, BitVecHash> index;

    int id_of(const BitVec& b) const {
        auto it = index.find(b);
        return it == index.end() ? -1 : it->second;
    }
    int n_verts() const { return int(verts.size()); }
    bool is_consistent(int v) const { return consistent[v] == Flag::yes; }
};

struct Budget {
    size_t max_vertices = 1'000'000;
    std::optional<int> radius;  // delta-radius around the seed; unset = exhaust
};

// Empty function = no geometry; consistent flags stay unset.
using Oracle = std::function<bool(const BitVec&)>;

// Flip-BFS from the seed. complete=false exactly when some vertex was left
// unexpanded (budget or radius cut). Never throws for budget; callers read
// the flag (the CLI maps it to its own exit code).
MedianGraph enumerate_pi(const poc::PocSet& P, const BitVec& seed, const Oracle& oracle,
                         const Budget& budget = {});

// Path of vertex ids of length delta(u, v) + 1, flipping the lowest-index
// flippable pair that moves toward the target. FrontierClipped if an
// intermediate vertex is not enumerated.
std::vector<int> geodesic(const poc::PocSet& P, const MedianGraph& G, int u, int v);

// The constructive chamber-path geodesic: subdivide [a,b] at wall crossings,
// flip each crossing group by repeated minimal extraction, verify every
// intermediate orientation is supported on the segment. Returns vertex ids.
std::vector<int> consistent_geodesic(const walls::Arrangement& A, const MedianGraph& G,
                                     const Point& a_pt, const Point& b_pt);

struct CubeRecord {
    int base;                // base vertex id
    std::vector<int> pairs;  // spanning transverse pair set ⊆ min(base), ascending
};

// Maximal cubes at v: one record per maximal transverse subset of min_set(v),
// base = v. All 2^|pairs| corners must be enumerated (cubes with clipped
// corners are skipped on incomplete graphs). FrontierClipped if v unexpanded.
std::vector<CubeRecord> cubes_at(const poc::PocSet& P, const MedianGraph& G, int v);

// All maximal cubes of the enumerated graph, deduplicated, sorted.
// Cubes with missing corners (frontier) are skipped unless G is complete,
// in which case a missing corner is a CrossCheckFailed.
std::vector<CubeRecord> all_maximal_cubes(const poc::PocSet& P, const MedianGraph& G);

int vertex_degree(const poc::PocSet& P, const MedianGraph& G, int v);  // FrontierClipped

// Max cube dimension. On complete graphs cross-checked against
// max_transverse of the poc-set.
int complex_dimension(const poc::PocSet& P, const MedianGraph& G);

// Recover a poc-set from vertex membership: side e maps to the vertex set
// choosing e; order = set inclusion. IncompleteGraph unless G.complete.
poc::PocSet hyperplane_dual(const MedianGraph& G);

}  // namespace cubedual::cube
