#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "cubedual/analysis.hpp"
#include "cubedual/cubing.hpp"
#include "cubedual/errors.hpp"
#include "cubedual/pocset.hpp"
#include "cubedual/walls2d.hpp"

using namespace cubedual;
using cube::Budget;
using cube::Flag;
using cube::MedianGraph;
using poc::Elem;
using poc::side;

namespace {

BitVec bits(int n, std::initializer_list<int> ones) {
    BitVec b(n);
    for (int i : ones) b.set(i, true);
    return b;
}

cube::Oracle geometry_oracle(const walls::Arrangement& A) {
    return [&A](const BitVec& uf) { return walls::supports_orientation(A, uf).has_value(); };
}

MedianGraph enumerate_arrangement(const walls::Arrangement& A, const Budget& budget = {}) {
    auto base = walls::b_x(A, A.basepoint());
    REQUIRE(base.orientation.has_value());
    return cube::enumerate_pi(A.pocset(), *base.orientation, geometry_oracle(A), budget);
}

// min Hamming distance to the consistent set, straight from the definition
std::vector<int> hamming_heights(const MedianGraph& G) {
    std::vector<int> h(G.n_verts(), -1);
    for (int v = 0; v < G.n_verts(); ++v) {
        int best = -1;
        for (int u = 0; u < G.n_verts(); ++u) {
            if (!G.is_consistent(u)) continue;
            int d = G.verts[v].count_xor(G.verts[u]);
            if (best < 0 || d < best) best = d;
        }
        h[v] = best;
    }
    return h;
}

// x = 1, 2, 3 with plus side pointing left: the chain {x<1} <= {x<2} <= {x<3}
walls::Arrangement verticals123() {
    std::vector<walls::Line> lines = {walls::make_line(Rat(1), Rat(0), Rat(-1)),
                                      walls::make_line(Rat(1), Rat(0), Rat(-2)),
                                      walls::make_line(Rat(1), Rat(0), Rat(-3))};
    walls::Window win{Point{Rat(2), Rat(0)}, Rat(6)};
    return walls::Arrangement::make(std::move(lines), {-1, -1, -1}, win,
                                    Point{Rat(0), Rat(0)}, Rat(0), {"v1", "v2", "v3"});
}

std::set<std::pair<std::string, std::string>> point_set(const std::vector<Point>& poly) {
    std::set<std::pair<std::string, std::string>> out;
    for (const Point& p : poly) out.insert({rat_str(p.x), rat_str(p.y)});
    return out;
}

}  // namespace

TEST_CASE("heights: exact distances to the consistent set") {
    walls::Arrangement tri = walls::arrangement_triangle();
    MedianGraph G = enumerate_arrangement(tri);
    ana::HeightTable t = ana::heights(G);
    CHECK(t.level_counts == std::vector<long>{7, 1});
    CHECK(t.max_height == 1);
    CHECK(t.untrusted == 0);
    for (int v = 0; v < G.n_verts(); ++v) {
        CHECK(G.height_trusted[v]);
        CHECK((G.height[v] == 0) == G.is_consistent(v));
    }

    walls::Arrangement hex = walls::arrangement_hex(2);
    MedianGraph H = enumerate_arrangement(hex);
    ana::HeightTable th = ana::heights(H);
    CHECK(th.untrusted == 0);
    CHECK(th.level_counts.at(0) == 91);
    std::vector<int> ref = hamming_heights(H);
    for (int v = 0; v < H.n_verts(); ++v) CHECK(H.height[v] == ref[v]);
    for (const cube::Edge& e : H.edges)
        CHECK(std::abs(H.height[e.u] - H.height[e.v]) <= 1);

    // truncation: trusted heights still agree with the full graph
    MedianGraph cut = enumerate_arrangement(hex, Budget{80, {}});
    ana::HeightTable tc = ana::heights(cut);
    CHECK(tc.untrusted == 32);
    for (int v = 0; v < cut.n_verts(); ++v) {
        if (!cut.height_trusted[v]) continue;
        int full = H.id_of(cut.verts[v]);
        REQUIRE(full >= 0);
        CHECK(cut.height[v] == H.height[full]);
    }

    // flags must be decided before heights mean anything
    poc::PocSet F = poc::free_example(3);
    MedianGraph noflag = cube::enumerate_pi(F, BitVec(3), cube::Oracle{});
    CHECK_THROWS_AS(ana::heights(noflag), SchemaError);
    MedianGraph hopeless =
        cube::enumerate_pi(F, BitVec(3), [](const BitVec&) { return false; });
    CHECK_THROWS_AS(ana::heights(hopeless), NoConsistentVertex);
}

TEST_CASE("height oracle agrees with graph heights and honours its cap") {
    walls::Arrangement tri = walls::arrangement_triangle();
    MedianGraph G = enumerate_arrangement(tri);
    ana::heights(G);
    for (int v = 0; v < G.n_verts(); ++v)
        CHECK(ana::height_oracle(tri, G.verts[v], 2) == G.height[v]);

    walls::Arrangement grid = walls::arrangement_grid(3);
    MedianGraph Gg = enumerate_arrangement(grid);
    for (int v = 0; v < Gg.n_verts(); ++v)
        CHECK(ana::height_oracle(grid, Gg.verts[v], 1) == 0);

    walls::Arrangement hex = walls::arrangement_hex(2);
    MedianGraph H = enumerate_arrangement(hex);
    ana::heights(H);
    int deep = -1;
    for (int v = 0; v < H.n_verts(); ++v) {
        if (v % 9 == 0 && H.height[v] <= 2)
            CHECK(ana::height_oracle(hex, H.verts[v], 2) == H.height[v]);
        if (deep < 0 && H.height[v] == 2) deep = v;
    }
    REQUIRE(deep >= 0);
    CHECK_THROWS_AS(ana::height_oracle(hex, H.verts[deep], 1), CapExceeded);
    CHECK_THROWS_AS(ana::height_oracle(hex, H.verts[0], -1), SchemaError);
}

TEST_CASE("classify_min partitions the minimal sides by height step") {
    walls::Arrangement tri = walls::arrangement_triangle();
    MedianGraph G = enumerate_arrangement(tri);
    ana::heights(G);

    int bad = G.id_of(bits(3, {0, 1, 2}));
    ana::MinSplit split = ana::classify_min(tri.pocset(), G, bad);
    CHECK(split.minus.size() == 3);  // every flip reaches a chamber
    CHECK(split.plus.empty());
    CHECK(split.zero.empty());

    int seedv = 0;
    ana::MinSplit at_seed = ana::classify_min(tri.pocset(), G, seedv);
    CHECK(at_seed.minus.empty());  // height 0 cannot drop

    walls::Arrangement hex = walls::arrangement_hex(2);
    MedianGraph H = enumerate_arrangement(hex);
    ana::heights(H);
    const poc::PocSet& P = hex.pocset();
    for (int v = 0; v < H.n_verts(); ++v) {
        ana::MinSplit s = ana::classify_min(P, H, v);
        std::vector<Elem> mins = P.min_set(H.verts[v]);
        CHECK(s.plus.size() + s.zero.size() + s.minus.size() == mins.size());
        auto check_side = [&](const std::vector<Elem>& elems, int step) {
            for (Elem e : elems) {
                CHECK(std::find(mins.begin(), mins.end(), e) != mins.end());
                BitVec w = H.verts[v];
                w.flip(poc::pair_of(e));
                int u = H.id_of(w);
                REQUIRE(u >= 0);
                CHECK(H.height[u] == H.height[v] + step);
            }
        };
        check_side(s.plus, +1);
        check_side(s.zero, 0);
        check_side(s.minus, -1);
    }

    MedianGraph cutg = enumerate_arrangement(hex, Budget{80, {}});
    ana::heights(cutg);
    int untrusted = -1;
    for (int v = 0; v < cutg.n_verts() && untrusted < 0; ++v)
        if (!cutg.height_trusted[v]) untrusted = v;
    REQUIRE(untrusted >= 0);
    CHECK_THROWS_AS(ana::classify_min(hex.pocset(), cutg, untrusted), UntrustedHeights);
}

TEST_CASE("shadows: members, dual sides, regions") {
    walls::Arrangement tri = walls::arrangement_triangle();
    MedianGraph G = enumerate_arrangement(tri);
    ana::heights(G);

    ana::ShadowRecord at_seed = ana::shadow(tri.pocset(), G, 0);
    CHECK(at_seed.height == 0);
    CHECK(at_seed.members == std::vector<int>{0});
    CHECK(int(at_seed.dual.size()) == tri.n_pairs());
    CHECK(!at_seed.whole_window);
    for (Elem e : at_seed.dual) CHECK(poc::chosen(G.verts[0], poc::pair_of(e)) == e);
    CHECK(point_set(ana::shadow_region(tri, at_seed)) ==
          point_set(walls::chamber(tri, tri.basepoint()).polygon));

    int bad = G.id_of(bits(3, {0, 1, 2}));
    ana::ShadowRecord sh = ana::shadow(tri.pocset(), G, bad);
    CHECK(sh.height == 1);
    CHECK(sh.members.size() == 3);
    for (int m : sh.members) {
        CHECK(G.is_consistent(m));
        CHECK(G.verts[m].count_xor(G.verts[bad]) == 1);
    }
    CHECK(sh.dual.empty());
    CHECK(sh.whole_window);
    CHECK(ana::shadow_region(tri, sh).size() == 4);  // the window square

    walls::Arrangement hex = walls::arrangement_hex(2);
    MedianGraph cut = enumerate_arrangement(hex, Budget{80, {}});
    ana::heights(cut);
    int untrusted = -1;
    for (int v = 0; v < cut.n_verts() && untrusted < 0; ++v)
        if (!cut.height_trusted[v]) untrusted = v;
    REQUIRE(untrusted >= 0);
    CHECK_THROWS_AS(ana::shadow(hex.pocset(), cut, untrusted), UntrustedHeights);
}

TEST_CASE("shadow monotonicity sweep stays clean off the boundary") {
    walls::Arrangement tri = walls::arrangement_triangle();
    MedianGraph G = enumerate_arrangement(tri);
    ana::ShadowCheckReport r = ana::shadow_monotonicity_check(tri.pocset(), G);
    CHECK(r.vertices_checked == 8);
    CHECK(r.skipped_boundary == 0);
    CHECK(r.skipped_untrusted == 0);
    CHECK(r.violations.empty());

    walls::Arrangement hex1 = walls::arrangement_hex(1);
    MedianGraph G1 = enumerate_arrangement(hex1);
    ana::ShadowCheckReport r1 = ana::shadow_monotonicity_check(hex1.pocset(), G1);
    CHECK(r1.vertices_checked == 8);
    CHECK(r1.skipped_boundary == 56);
    CHECK(r1.skipped_untrusted == 0);
    CHECK(r1.violations.empty());

    walls::Arrangement hex2 = walls::arrangement_hex(2);
    MedianGraph G2 = enumerate_arrangement(hex2);
    ana::ShadowCheckReport r2 = ana::shadow_monotonicity_check(hex2.pocset(), G2);
    CHECK(r2.vertices_checked == 64);
    CHECK(r2.skipped_boundary == 152);
    CHECK(r2.skipped_untrusted == 0);
    CHECK(r2.violations.empty());
}

TEST_CASE("projection to a side flips exactly the chain below it") {
    walls::Arrangement V = verticals123();
    MedianGraph G = enumerate_arrangement(V);
    const poc::PocSet& P = V.pocset();
    int seedv = G.id_of(*walls::b_x(V, V.basepoint()).orientation);
    REQUIRE(seedv == 0);

    Elem beyond3 = poc::star(poc::chosen(G.verts[0], 2));  // {x > 3}
    auto path = ana::project_to_side(P, G, seedv, beyond3);
    REQUIRE(path.size() == 4);
    CHECK(path.front() == seedv);
    for (size_t i = 0; i + 1 < path.size(); ++i)
        CHECK(G.verts[path[i]].count_xor(G.verts[path[i + 1]]) == 1);
    int last = path.back();
    CHECK(poc::chosen(G.verts[last], 2) == beyond3);

    // the endpoint really is the nearest vertex holding that side
    int best = -1;
    for (int u = 0; u < G.n_verts(); ++u) {
        if (poc::chosen(G.verts[u], 2) != beyond3) continue;
        int d = G.verts[0].count_xor(G.verts[u]);
        if (best < 0 || d < best) best = d;
    }
    CHECK(best == 3);
    CHECK(G.verts[0].count_xor(G.verts[last]) == best);

    CHECK_THROWS_AS(ana::project_to_side(P, G, seedv, poc::chosen(G.verts[0], 0)), MInPi);

    // flip count equals the geometric chain S_k(x) under the co-side
    walls::Arrangement hex = walls::arrangement_hex(2);
    MedianGraph H = enumerate_arrangement(hex);
    const poc::PocSet& HP = hex.pocset();
    int h0 = H.id_of(*walls::b_x(hex, hex.basepoint()).orientation);
    std::mt19937_64 rng(41);
    for (int t = 0; t < 60; ++t) {
        int pair = int(rng() % hex.n_pairs());
        Elem keep = poc::chosen(H.verts[h0], pair);
        auto ids = ana::project_to_side(HP, H, h0, poc::star(keep));
        auto chain = walls::s_set(hex, hex.basepoint(), keep);
        CHECK(ids.size() == chain.size() + 1);
    }
}

TEST_CASE("gates realize the interval between nested sides") {
    walls::Arrangement V = verticals123();
    MedianGraph G = enumerate_arrangement(V);
    const poc::PocSet& P = V.pocset();
    Elem lt1 = poc::chosen(G.verts[0], 0), lt2 = poc::chosen(G.verts[0], 1),
         lt3 = poc::chosen(G.verts[0], 2);

    ana::GateRecord g12 = ana::gate(P, G, lt1, lt2);
    CHECK(g12.delta == 2);
    CHECK(g12.interval == 2);
    CHECK(poc::chosen(G.verts[g12.alpha], 0) == lt1);
    CHECK(poc::chosen(G.verts[g12.beta_star], 1) == poc::star(lt2));
    CHECK(G.verts[g12.alpha].count_xor(G.verts[g12.beta_star]) == g12.delta);

    ana::GateRecord g13 = ana::gate(P, G, lt1, lt3);
    CHECK(g13.delta == 3);
    CHECK(g13.interval == 3);

    walls::Arrangement tri = walls::arrangement_triangle();
    MedianGraph Gt = enumerate_arrangement(tri);
    CHECK_THROWS_AS(ana::gate(tri.pocset(), Gt, side(0, false), side(1, false)),
                    SchemaError);

    MedianGraph small = enumerate_arrangement(V, Budget{size_t(1'000'000), 1});
    CHECK_THROWS_AS(ana::gate(P, small, lt1, lt3), EmptySide);
}

TEST_CASE("special pairs carry the wall-to-wall widths") {
    walls::Arrangement grid = walls::arrangement_grid(3);
    auto sp = ana::special_pairs(grid);
    REQUIRE(sp.size() == 4);
    for (const auto& rec : sp) CHECK(rec.width2 == 1);

    walls::Arrangement two = walls::arrangement_two_parallel(Rat(10));
    auto sp2 = ana::special_pairs(two);
    REQUIRE(sp2.size() == 1);
    CHECK(sp2[0].width2 == 100);

    walls::Arrangement hex = walls::arrangement_hex(2);
    const poc::PocSet& P = hex.pocset();
    auto sph = ana::special_pairs(hex);
    REQUIRE(sph.size() == 12);
    int unit = 0, skew = 0;
    for (const auto& rec : sph) {
        CHECK(P.leq(rec.a, rec.b));
        CHECK(rec.a < rec.b);
        // the open interval is genuinely empty
        for (Elem h = 0; h < P.n_elems(); ++h) {
            if (h == rec.a || h == rec.b) continue;
            CHECK(!(P.leq(rec.a, h) && P.leq(h, rec.b)));
        }
        if (rec.width2 == 1)
            ++unit;
        else if (rec.width2 == make_rat(64, 65))
            ++skew;
    }
    CHECK(unit == 4);
    CHECK(skew == 8);
}

TEST_CASE("qi sampling: deterministic, bounded, exact on the grid") {
    walls::Arrangement grid = walls::arrangement_grid(4);
    MedianGraph G = enumerate_arrangement(grid);

    ana::QiReport r1 = ana::qi_report(grid, G, 80, 7);
    ana::QiReport r2 = ana::qi_report(grid, G, 80, 7);
    REQUIRE(r1.samples.size() == 80);
    CHECK(r1.lambda_hat == r2.lambda_hat);
    CHECK(r1.eps_hat == r2.eps_hat);
    for (size_t i = 0; i < r1.samples.size(); ++i) {
        CHECK(r1.samples[i].x == r2.samples[i].x);
        CHECK(r1.samples[i].y == r2.samples[i].y);
        CHECK(r1.samples[i].delta == r2.samples[i].delta);
    }

    for (const ana::QiSample& s : r1.samples) {
        long sep = 0;
        for (int p = 0; p < grid.n_pairs(); ++p) {
            int sx = sgn(walls::line_eval(grid.line(p), s.x));
            int sy = sgn(walls::line_eval(grid.line(p), s.y));
            REQUIRE(sx != 0);
            REQUIRE(sy != 0);
            sep += sx != sy;
        }
        CHECK(s.delta == sep);  // Δ counts exactly the separating walls
        if (s.delta >= 1) {
            CHECK(double(s.delta) <= r1.lambda_hat * s.d);
            CHECK(s.d <= r1.lambda_hat * double(s.delta));
        } else {
            CHECK(s.d <= r1.eps_hat);
        }
    }

    CHECK_THROWS_AS(ana::qi_report(grid, G, -1, 7), SchemaError);
}

TEST_CASE("slope report: linear wall growth and trusted chains") {
    walls::Arrangement grid = walls::arrangement_grid(12);
    MedianGraph G = enumerate_arrangement(grid);
    Rat margin = walls::default_margin(grid);

    ana::SlopeReport r = ana::slope_report(grid, G, {3, 4, 5}, margin);
    REQUIRE(r.rows.size() == 3);
    for (size_t i = 0; i < r.rows.size(); ++i) {
        CHECK(r.rows[i].finite);
        CHECK(r.rows[i].count == r.rows[i].r + 1);
        CHECK(r.rows[i].ratio == doctest::Approx(double(r.rows[i].r + 1) / double(r.rows[i].r)));
    }
    CHECK(int(r.chain.size()) == grid.n_pairs());
    for (const ana::ChainRow& c : r.chain) {
        CHECK(c.trusted);
        CHECK(c.ok);
        CHECK(c.d_all <= c.d_cons);
        CHECK(c.d_cons <= 2 * c.d_all);
    }
    CHECK(r.chain_ok);
    CHECK(!r.band.has_value());
    CHECK(r.band_ok);

    // the band check compares the tail ratio 6/5 against [1/(2λ), λ]
    ana::SlopeReport ok = ana::slope_report(grid, G, {3, 4, 5}, margin, 2.0);
    REQUIRE(ok.band.has_value());
    CHECK(ok.band->first == doctest::Approx(0.25));
    CHECK(ok.band->second == doctest::Approx(2.0));
    CHECK(ok.band_ok);
    ana::SlopeReport tight = ana::slope_report(grid, G, {3, 4, 5}, margin, 1.1);
    CHECK(!tight.band_ok);

    CHECK_THROWS_AS(ana::slope_report(grid, G, {100}, margin), WindowTooSmall);

    walls::Arrangement V = verticals123();
    MedianGraph GV = enumerate_arrangement(V);
    ana::SlopeReport rv = ana::slope_report(V, GV, {}, Rat(0));
    CHECK(rv.rows.empty());
    REQUIRE(rv.chain.size() == 3);
    CHECK(rv.chain[0].d_all == 1);
    CHECK(rv.chain[1].d_all == 2);
    CHECK(rv.chain[2].d_all == 3);
    for (const ana::ChainRow& c : rv.chain) CHECK(c.d_cons == c.d_all);
    CHECK(rv.chain_ok);
}
