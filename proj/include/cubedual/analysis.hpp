#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cubedual/cubing.hpp"
#include "cubedual/pocset.hpp"
#include "cubedual/walls2d.hpp"

namespace cubedual::ana {

struct HeightTable {
    std::vector<long> level_counts;  // index = height, trusted vertices only
    int max_height = 0;              // over trusted vertices
    long untrusted = 0;
};

// Fills G.height / G.height_trusted: exact Δ to the consistent vertex set
// among enumerated vertices. A height is trusted when no undiscovered vertex
// could beat it (always, on complete graphs).
HeightTable heights(cube::MedianGraph& G);

// Independent height route: smallest set of chosen sides whose removal
// leaves a supported partial orientation, searched by increasing size.
// Deliberately ignores G's consistency flags.
int height_oracle(const walls::Arrangement& A, const BitVec& pi, int cap);

struct MinSplit {
    std::vector<poc::Elem> plus, zero, minus;  // by neighbor height vs own
};

// plus: flip raises height; zero: keeps; minus: lowers. Needs heights().
MinSplit classify_min(const poc::PocSet& P, const cube::MedianGraph& G, int v);

struct ShadowRecord {
    int vertex;
    int height;
    std::vector<int> members;      // consistent vertices at Δ = height
    std::vector<poc::Elem> dual;   // sides chosen by every member
    bool whole_window;             // dual empty: region is the whole window
};

// UntrustedHeights unless the member list is provably complete.
ShadowRecord shadow(const poc::PocSet& P, const cube::MedianGraph& G, int v);

// Intersection of the dual's closed halfplanes with the window square.
std::vector<Point> shadow_region(const walls::Arrangement& A, const ShadowRecord& s);

struct ShadowCheckReport {
    long vertices_checked = 0;
    long skipped_untrusted = 0;
    long skipped_boundary = 0;
    std::vector<std::string> violations;  // empty expected
};

// Per inconsistent vertex: dual bounds (min_plus ∪ min_zero ⊆ dual ⊆ π and
// dual ∩ min = min_plus ∪ min_zero), strict shadow growth / dual shrink
// across min_plus flips, and the going-down property (all a,b ∈ π are kept
// by some shadow member).
//
// Vertices that choose a truncated-chain tail (a side that is minimal in the
// order yet sits below another side) are quarantined as skipped_boundary:
// such an orientation reaches past the outermost wall of a family, where the
// instance stops modelling whatever larger system it was cut from, and the
// growth laws genuinely fail there. Orders with no nesting at all (every
// minimal side is also maximal) have no tails and are checked in full.
ShadowCheckReport shadow_monotonicity_check(const poc::PocSet& P, cube::MedianGraph& G);

// Flip path from v to the nearest vertex containing m; flips exactly
// {h ∈ π : h ≤ m*}. MInPi when m is already chosen.
std::vector<int> project_to_side(const poc::PocSet& P, const cube::MedianGraph& G, int v,
                                 poc::Elem m);

struct GateRecord {
    int alpha, beta_star;  // vertex ids, lexicographically smallest argmin
    long delta;
    long interval;  // |{h : a ≤ h ≤ b}|, must equal delta
};

GateRecord gate(const poc::PocSet& P, const cube::MedianGraph& G, poc::Elem a, poc::Elem b);

struct SpecialPair {
    poc::Elem a, b;  // a < b with empty open interval, star-deduplicated
    Rat width2;      // squared wall-to-wall distance
};

std::vector<SpecialPair> special_pairs(const walls::Arrangement& A);

struct QiSample {
    Point x, y;
    double d;
    long delta;
};

struct QiReport {
    std::vector<QiSample> samples;
    double lambda_hat = 1.0;
    double eps_hat = 0.0;
};

// Seeded pairs on the 1/16 grid in the central 3/4 box, separation ≥
// radius/2; lambda = max ratio both ways over delta ≥ 1 samples, eps = max
// residual (only delta = 0 samples contribute).
QiReport qi_report(const walls::Arrangement& A, const cube::MedianGraph& G, int n_samples,
                   unsigned long long seed);

struct SlopeRow {
    long r;
    bool finite;
    long count;    // f(r) when finite
    double ratio;  // f(r)/r
};

struct ChainRow {
    poc::Elem e;  // chosen side of the basepointorientation
    long d_all;   // Δ(π₀, S_{e*})
    long d_cons;  // Δ(π₀, Π₀ ∩ S_{e*})
    bool trusted;
    bool ok;  // d_all ≤ d_cons ≤ 2·d_all
};

struct SlopeReport {
    std::vector<SlopeRow> rows;
    std::vector<ChainRow> chain;
    bool chain_ok = true;  // over trusted rows
    std::optional<std::pair<double, double>> band;  // [1/(2λ̂), λ̂]
    bool band_ok = true;
};

SlopeReport slope_report(const walls::Arrangement& A, const cube::MedianGraph& G,
                         const std::vector<long>& radii, const Rat& margin,
                         std::optional<double> lambda_hat = {});

}  // namespace cubedual::ana
