#include "cubedual/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "cubedual/errors.hpp"
#include "cubedual/lp2d.hpp"

namespace cubedual::ana {

using cube::Flag;
using cube::MedianGraph;
using poc::Elem;
using poc::PocSet;

namespace {

std::vector<int> consistent_ids(const MedianGraph& G) {
    std::vector<int> out;
    for (int v = 0; v < G.n_verts(); ++v) {
        if (G.consistent[v] == Flag::unset)
            throw SchemaError("consistency flags unset (enumerated without an oracle)");
        if (G.consistent[v] == Flag::yes) out.push_back(v);
    }
    if (out.empty()) throw NoConsistentVertex("no consistent vertex enumerated");
    return out;
}

int delta_to_set(const MedianGraph& G, int v, const std::vector<int>& ids) {
    int best = -1;
    for (int u : ids) {
        int d = int(G.verts[v].count_xor(G.verts[u]));
        if (best < 0 || d < best) best = d;
    }
    return best;
}

// Undiscovered vertices sit at Δ ≥ min_unexpanded_level + 1 − level(v) from v.
bool height_exact(const MedianGraph& G, int v, int hgt) {
    return G.complete || hgt <= G.min_unexpanded_level + 1 - G.level[v];
}

bool shadow_complete(const MedianGraph& G, int v, int hgt) {
    return G.complete || hgt < G.min_unexpanded_level + 1 - G.level[v];
}

lp::Constraint elem_halfplane(const walls::Arrangement& A, Elem e, bool strict) {
    const walls::Line& L = A.line(poc::pair_of(e));
    int s = A.plus_sign(poc::pair_of(e)) * (poc::minus_side(e) ? -1 : 1);
    return {Rat(s) * Rat(L.a), Rat(s) * Rat(L.b), Rat(s) * Rat(L.c), strict};
}

}  // namespace

HeightTable heights(MedianGraph& G) {
    std::vector<int> cons = consistent_ids(G);
    HeightTable t;
    for (int v = 0; v < G.n_verts(); ++v) {
        int h = delta_to_set(G, v, cons);
        G.height[v] = h;
        G.height_trusted[v] = height_exact(G, v, h) ? 1 : 0;
        if (!G.height_trusted[v]) {
            ++t.untrusted;
            continue;
        }
        if (h >= int(t.level_counts.size())) t.level_counts.resize(h + 1, 0);
        ++t.level_counts[h];
        t.max_height = std::max(t.max_height, h);
    }
    return t;
}

int height_oracle(const walls::Arrangement& A, const BitVec& pi, int cap) {
    if (cap < 0) throw SchemaError("height_oracle: negative cap");
    int n = A.n_pairs();
    for (int s = 0; s <= std::min(cap, n); ++s) {
        std::vector<int> comb(s);
        for (int i = 0; i < s; ++i)
            comb[i] = i;
        while (true) {
            std::vector<lp::Constraint> cons;
            for (int p = 0, c = 0; p < n; ++p) {
                if (c < s && comb[c] == p) {
                    ++c;  // side removed
                    continue;
                }
                cons.push_back(elem_halfplane(A, poc::chosen(pi, p), false));
            }
            if (lp::feasible_point(cons)) return s;
            int i = s - 1;
            while (i >= 0 && comb[i] == n - s + i)
                --i;
            if (i < 0) break;
            ++comb[i];
            for (int j = i + 1; j < s; ++j)
                comb[j] = comb[j - 1] + 1;
        }
    }
    throw CapExceeded("height_oracle: no supported sub-orientation within cap " +
                      std::to_string(cap));
}

MinSplit classify_min(const PocSet& P, const MedianGraph& G, int v) {
    if (v < 0 || v >= G.n_verts()) throw SchemaError("classify_min: vertex id out of range");
    if (G.height[v] < 0) throw SchemaError("classify_min: run heights() first");
    if (!G.expanded[v])
        throw UntrustedHeights("classify_min: vertex " + std::to_string(v) + " not expanded");
    if (!G.height_trusted[v])
        throw UntrustedHeights("classify_min: height of vertex " + std::to_string(v) +
                               " untrusted");
    MinSplit split;
    for (Elem a : P.min_set(G.verts[v])) {
        int nb = -1;
        for (auto& [u, p] : G.adj[v])
            if (p == poc::pair_of(a)) nb = u;
        if (nb < 0) throw CrossCheckFailed("classify_min: minimal side without an edge");
        if (!G.height_trusted[nb])
            throw UntrustedHeights("classify_min: neighbor height untrusted (pair " +
                                   std::to_string(poc::pair_of(a)) + ")");
        int diff = G.height[nb] - G.height[v];
        if (diff == 1)
            split.plus.push_back(a);
        else if (diff == 0)
            split.zero.push_back(a);
        else if (diff == -1)
            split.minus.push_back(a);
        else
            throw CrossCheckFailed("classify_min: heights differ by " + std::to_string(diff) +
                                   " across an edge");
    }
    return split;
}

ShadowRecord shadow(const PocSet& P, const MedianGraph& G, int v) {
    if (v < 0 || v >= G.n_verts()) throw SchemaError("shadow: vertex id out of range");
    std::vector<int> cons = consistent_ids(G);
    ShadowRecord s;
    s.vertex = v;
    s.height = delta_to_set(G, v, cons);
    if (G.height[v] >= 0 && G.height[v] != s.height)
        throw CrossCheckFailed("shadow: stored height disagrees with scan");
    if (!shadow_complete(G, v, s.height))
        throw UntrustedHeights("shadow: member set of vertex " + std::to_string(v) +
                               " may be clipped by the frontier");
    for (int u : cons)
        if (int(G.verts[v].count_xor(G.verts[u])) == s.height) s.members.push_back(u);
    for (int p = 0; p < P.n_pairs(); ++p) {
        bool bit = G.verts[s.members[0]].get(p);
        bool all = true;
        for (int u : s.members)
            if (G.verts[u].get(p) != bit) {
                all = false;
                break;
            }
        if (all) s.dual.push_back(poc::side(p, bit));
    }
    s.whole_window = s.dual.empty();
    return s;
}

std::vector<Point> shadow_region(const walls::Arrangement& A, const ShadowRecord& s) {
    const walls::Window& w = A.window();
    std::vector<Point> poly = {{w.center.x - w.radius, w.center.y - w.radius},
                               {w.center.x + w.radius, w.center.y - w.radius},
                               {w.center.x + w.radius, w.center.y + w.radius},
                               {w.center.x - w.radius, w.center.y + w.radius}};
    for (Elem e : s.dual) {
        lp::Constraint c = elem_halfplane(A, e, false);
        poly = lp::clip_polygon(poly, c.a, c.b, c.c);
        if (poly.empty()) break;
    }
    return poly;
}

ShadowCheckReport shadow_monotonicity_check(const PocSet& P, MedianGraph& G) {
    if (G.n_verts() > 0 && G.height[0] < 0) heights(G);
    ShadowCheckReport rep;
    auto chooses = [&](int u, Elem e) {
        return G.verts[u].get(poc::pair_of(e)) == bool(poc::minus_side(e));
    };
    BitVec boundary(P.n_elems());
    for (Elem e = 0; e < P.n_elems(); ++e)
        if (P.is_boundary(e)) boundary.set(e, true);
    for (int v = 0; v < G.n_verts(); ++v) {
        if (P.elem_mask(G.verts[v]).intersects(boundary)) {
            ++rep.skipped_boundary;
            continue;
        }
        ShadowRecord sv;
        MinSplit split;
        try {
            sv = shadow(P, G, v);
            split = classify_min(P, G, v);
        } catch (const UntrustedHeights&) {
            ++rep.skipped_untrusted;
            continue;
        }
        ++rep.vertices_checked;
        std::string tag = "vertex " + std::to_string(v) + " [" + G.verts[v].to_string() + "]: ";

        std::set<Elem> dual(sv.dual.begin(), sv.dual.end());
        for (Elem e : sv.dual)
            if (!chooses(v, e)) rep.violations.push_back(tag + "dual side not chosen by pi");
        for (Elem a : split.plus)
            if (!dual.count(a)) rep.violations.push_back(tag + "min_plus side outside dual");
        for (Elem a : split.zero)
            if (!dual.count(a)) rep.violations.push_back(tag + "min_zero side outside dual");
        for (Elem a : split.minus)
            if (dual.count(a)) rep.violations.push_back(tag + "min_minus side inside dual");

        for (Elem a : split.plus) {
            BitVec fb = G.verts[v];
            fb.flip(poc::pair_of(a));
            int f = G.id_of(fb);
            if (f < 0) {
                ++rep.skipped_untrusted;
                continue;
            }
            ShadowRecord sf;
            try {
                sf = shadow(P, G, f);
            } catch (const UntrustedHeights&) {
                ++rep.skipped_untrusted;
                continue;
            }
            if (!std::includes(sf.members.begin(), sf.members.end(), sv.members.begin(),
                               sv.members.end()) ||
                sf.members.size() <= sv.members.size())
                rep.violations.push_back(tag + "shadow did not grow strictly across min_plus");
            std::set<Elem> fdual(sf.dual.begin(), sf.dual.end());
            bool sub = true;
            for (Elem e : sf.dual)
                if (!dual.count(e)) sub = false;
            if (!sub || fdual.size() >= dual.size())
                rep.violations.push_back(tag + "dual did not shrink strictly across min_plus");
        }

        for (int p = 0; p < P.n_pairs(); ++p) {
            for (int q = p; q < P.n_pairs(); ++q) {
                Elem a = poc::chosen(G.verts[v], p), b = poc::chosen(G.verts[v], q);
                bool found = false;
                for (int u : sv.members)
                    if (chooses(u, a) && chooses(u, b)) {
                        found = true;
                        break;
                    }
                if (!found)
                    rep.violations.push_back(tag + "no shadow member keeps sides of pairs " +
                                             std::to_string(p) + "," + std::to_string(q));
            }
        }
    }
    return rep;
}

std::vector<int> project_to_side(const PocSet& P, const MedianGraph& G, int v, Elem m) {
    if (v < 0 || v >= G.n_verts()) throw SchemaError("project_to_side: vertex id out of range");
    if (m < 0 || m >= 2 * P.n_pairs()) throw SchemaError("project_to_side: bad halfspace id");
    BitVec cur = G.verts[v];
    auto chosen_elem = [&](Elem e) { return poc::chosen(cur, poc::pair_of(e)) == e; };
    if (chosen_elem(m)) throw MInPi("project_to_side: side already chosen");

    std::vector<Elem> block;  // {h ∈ π : h ≤ m*}; shrinks by one per flip
    for (int p = 0; p < P.n_pairs(); ++p) {
        Elem h = poc::chosen(cur, p);
        if (P.leq(h, poc::star(m))) block.push_back(h);
    }
    int expect = int(block.size());

    std::vector<int> path{v};
    while (!block.empty()) {
        Elem pick = -1;
        for (Elem h : block) {
            bool minimal = true;
            for (Elem g : block)
                if (g != h && P.leq(g, h)) {
                    minimal = false;
                    break;
                }
            if (minimal && (pick < 0 || poc::pair_of(h) < poc::pair_of(pick))) pick = h;
        }
        cur = P.flip(cur, pick);
        block.erase(std::find(block.begin(), block.end(), pick));
        int id = G.id_of(cur);
        if (id < 0) throw FrontierClipped("project_to_side: intermediate vertex not enumerated");
        path.push_back(id);
    }
    if (!chosen_elem(m) || G.verts[v].count_xor(cur) != expect)
        throw CrossCheckFailed("project_to_side: walk did not flip exactly the blocking set");
    return path;
}

GateRecord gate(const PocSet& P, const MedianGraph& G, Elem a, Elem b) {
    if (a == b || !P.leq(a, b)) throw SchemaError("gate: needs a < b");
    std::vector<int> sa, sb;
    for (int v = 0; v < G.n_verts(); ++v) {
        if (poc::chosen(G.verts[v], poc::pair_of(a)) == a) sa.push_back(v);
        if (poc::chosen(G.verts[v], poc::pair_of(b)) == poc::star(b)) sb.push_back(v);
    }
    if (sa.empty()) throw EmptySide("gate: no enumerated vertex contains side a");
    if (sb.empty()) throw EmptySide("gate: no enumerated vertex contains side b*");
    GateRecord g{-1, -1, -1, 0};
    for (int u : sa)
        for (int w : sb) {
            long d = long(G.verts[u].count_xor(G.verts[w]));
            if (g.delta < 0 || d < g.delta) g = {u, w, d, 0};
        }
    for (Elem h = 0; h < 2 * P.n_pairs(); ++h)
        if (P.leq(a, h) && P.leq(h, b)) ++g.interval;
    if (g.delta != g.interval)
        throw CrossCheckFailed("gate: Δ(α,β*) = " + std::to_string(g.delta) +
                               " but |[a,b]| = " + std::to_string(g.interval));
    return g;
}

std::vector<SpecialPair> special_pairs(const walls::Arrangement& A) {
    const PocSet& P = A.pocset();
    std::vector<SpecialPair> out;
    int n2 = 2 * P.n_pairs();
    for (Elem a = 0; a < n2; ++a) {
        for (Elem b = 0; b < n2; ++b) {
            if (a == b || b == poc::star(a) || !P.leq(a, b)) continue;
            std::pair<Elem, Elem> mirror{poc::star(b), poc::star(a)};
            if (std::pair<Elem, Elem>{a, b} > mirror) continue;
            bool open_empty = true;
            for (Elem h = 0; h < n2 && open_empty; ++h)
                if (h != a && h != b && P.leq(a, h) && P.leq(h, b)) open_empty = false;
            if (open_empty) out.push_back({a, b, walls::width2(A, a, b)});
        }
    }
    return out;
}

QiReport qi_report(const walls::Arrangement& A, const MedianGraph& G, int n_samples,
                   unsigned long long seed) {
    if (n_samples < 0) throw SchemaError("qi_report: negative sample count");
    const walls::Window& w = A.window();
    std::mt19937_64 rng(seed);
    Rat k16 = w.radius * 12;  // (3/4)·radius in 1/16 steps
    long K = Int(k16.get_num() / k16.get_den()).get_si();
    Rat min_d2 = w.radius * w.radius / 4;

    auto draw_point = [&]() {
        while (true) {
            long dx = long(rng() % (unsigned long)(2 * K + 1)) - K;
            long dy = long(rng() % (unsigned long)(2 * K + 1)) - K;
            Point p{w.center.x + make_rat(dx, 16), w.center.y + make_rat(dy, 16)};
            if (A.is_generic(p)) return p;
        }
    };

    QiReport rep;
    while (int(rep.samples.size()) < n_samples) {
        Point x = draw_point(), y = draw_point();
        if (dist2(x, y) < min_d2) continue;
        BitVec bx = *walls::b_x(A, x).orientation;
        BitVec by = *walls::b_x(A, y).orientation;
        if (G.id_of(bx) < 0 || G.id_of(by) < 0)
            throw FrontierClipped("qi_report: sampled orientation not enumerated");
        rep.samples.push_back(
            {x, y, std::sqrt(rat_double(dist2(x, y))), long(bx.count_xor(by))});
    }

    for (const QiSample& s : rep.samples)
        if (s.delta >= 1)
            rep.lambda_hat =
                std::max({rep.lambda_hat, double(s.delta) / s.d, s.d / double(s.delta)});
    rep.lambda_hat = std::nextafter(rep.lambda_hat, 2 * rep.lambda_hat + 1);
    for (const QiSample& s : rep.samples)
        rep.eps_hat = std::max({rep.eps_hat, double(s.delta) - rep.lambda_hat * s.d,
                                s.d / rep.lambda_hat - double(s.delta)});
    if (rep.eps_hat > 0) rep.eps_hat = std::nextafter(rep.eps_hat, 2 * rep.eps_hat);

    for (const QiSample& s : rep.samples)
        if (double(s.delta) > rep.lambda_hat * s.d + rep.eps_hat ||
            double(s.delta) < s.d / rep.lambda_hat - rep.eps_hat)
            throw CrossCheckFailed("qi_report: fitted constants fail on a sample");
    return rep;
}

SlopeReport slope_report(const walls::Arrangement& A, const MedianGraph& G,
                         const std::vector<long>& radii, const Rat& margin,
                         std::optional<double> lambda_hat) {
    SlopeReport rep;
    for (long r : radii) {
        walls::WallCount fc = walls::f_of_r(A, Rat(r), margin);
        SlopeRow row{r, fc.finite, fc.count, 0.0};
        if (fc.finite) row.ratio = double(fc.count) / double(r);
        rep.rows.push_back(row);
    }

    BitVec pi0 = *walls::b_x(A, A.basepoint()).orientation;
    int seed_id = G.id_of(pi0);
    if (seed_id < 0) throw FrontierClipped("slope_report: basepoint orientation not enumerated");
    long L1 = G.complete ? -1 : G.min_unexpanded_level + 1 - G.level[seed_id];
    for (int p = 0; p < A.n_pairs(); ++p) {
        Elem e = poc::chosen(pi0, p);
        long d_all = -1, d_cons = -1;
        for (int v = 0; v < G.n_verts(); ++v) {
            if (G.verts[v].get(p) == pi0.get(p)) continue;
            long d = long(pi0.count_xor(G.verts[v]));
            if (d_all < 0 || d < d_all) d_all = d;
            if (G.consistent[v] == Flag::yes && (d_cons < 0 || d < d_cons)) d_cons = d;
        }
        ChainRow row{e, d_all, d_cons, false, false};
        row.trusted = d_all >= 0 && d_cons >= 0 &&
                      (G.complete || (d_all <= L1 && d_cons <= L1));
        row.ok = row.trusted && d_all <= d_cons && d_cons <= 2 * d_all;
        if (row.trusted && !row.ok) rep.chain_ok = false;
        rep.chain.push_back(row);
    }

    if (lambda_hat) {
        rep.band = {1.0 / (2.0 * *lambda_hat), *lambda_hat};
        for (auto it = rep.rows.rbegin(); it != rep.rows.rend(); ++it)
            if (it->finite) {  // tail = largest tabulated finite radius
                rep.band_ok = it->ratio >= rep.band->first && it->ratio <= rep.band->second;
                break;
            }
    }
    return rep;
}

}  // namespace cubedual::ana
