#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "cubedual/errors.hpp"
#include "cubedual/io_json.hpp"
#include "cubedual/pocset.hpp"
#include "cubedual/rational.hpp"
#include "cubedual/walls2d.hpp"

using namespace cubedual;
using namespace cubedual::walls;
using poc::Elem;
using poc::side;

namespace {

// x = 1, 2, 3 with plus side pointing left: the chain {x<1} <= {x<2} <= {x<3}.
Arrangement verticals123() {
    std::vector<Line> lines = {make_line(Rat(1), Rat(0), Rat(-1)),
                               make_line(Rat(1), Rat(0), Rat(-2)),
                               make_line(Rat(1), Rat(0), Rat(-3))};
    Window win{Point{Rat(2), Rat(0)}, Rat(6)};
    return Arrangement::make(std::move(lines), {-1, -1, -1}, win, Point{Rat(0), Rat(0)},
                             Rat(0), {"v1", "v2", "v3"});
}

std::set<std::pair<std::string, std::string>> point_set(const std::vector<Point>& poly) {
    std::set<std::pair<std::string, std::string>> out;
    for (const Point& p : poly) out.insert({rat_str(p.x), rat_str(p.y)});
    return out;
}

// hex pair ids: r_{-N}..r_N, s_{-N}..s_N, t_{-N}..t_N in label order
int hex_pair(int N, char fam, int n) {
    int base = fam == 'r' ? 0 : fam == 's' ? 2 * N + 1 : 2 * (2 * N + 1);
    return base + n + N;
}

Point seeded_generic_point(const Arrangement& A, std::mt19937_64& rng) {
    const Window& w = A.window();
    for (int t = 0; t < 4096; ++t) {
        long dx = long(rng() % 129) - 64;
        long dy = long(rng() % 129) - 64;
        Point p{w.center.x + w.radius * Rat(dx) / 64, w.center.y + w.radius * Rat(dy) / 64};
        if (in_window(w, p, true) && A.is_generic(p)) return p;
    }
    throw GenerationFailed("no generic sample point");
}

}  // namespace

TEST_CASE("make_line canonicalizes coefficients") {
    CHECK(make_line(Rat(2), Rat(4), Rat(6)) == make_line(Rat(1), Rat(2), Rat(3)));
    CHECK(make_line(Rat(-1), Rat(-2), Rat(-3)) == make_line(Rat(1), Rat(2), Rat(3)));
    Line l = make_line(Rat(0), Rat(-3), Rat(6));
    CHECK(l.a == 0);
    CHECK(l.b == 1);
    CHECK(l.c == -2);
    Line frac = make_line(make_rat(1, 2), Rat(0), make_rat(3, 4));
    CHECK(frac.a == 2);
    CHECK(frac.b == 0);
    CHECK(frac.c == 3);
    CHECK_THROWS_AS(make_line(Rat(0), Rat(0), Rat(5)), SchemaError);

    Line m = make_line(Rat(1), Rat(2), Rat(-4));
    CHECK(line_eval(m, Point{Rat(2), Rat(1)}) == 0);
    CHECK(line_eval(m, Point{Rat(0), Rat(0)}) == -4);
    CHECK(lines_parallel(m, make_line(Rat(2), Rat(4), Rat(9))));
    CHECK(!lines_parallel(m, make_line(Rat(1), Rat(0), Rat(0))));
}

TEST_CASE("window containment, strict and closed") {
    Window w{Point{Rat(0), Rat(0)}, Rat(2)};
    Point corner{Rat(2), Rat(2)};
    CHECK(in_window(w, corner, false));
    CHECK(!in_window(w, corner, true));
    CHECK(in_window(w, Point{Rat(1), Rat(-1)}, true));
    CHECK(!in_window(w, Point{Rat(3), Rat(0)}, false));
}

TEST_CASE("arrangement construction validates its invariants") {
    Window win{Point{Rat(0), Rat(0)}, Rat(2)};
    Line v = make_line(Rat(1), Rat(0), Rat(0));
    Line h = make_line(Rat(0), Rat(1), Rat(0));
    Point bp{make_rat(1, 3), make_rat(1, 5)};

    CHECK_THROWS_AS(Arrangement::make({v, v}, {1, 1}, win, bp, Rat(0)), SchemaError);
    // scaled copy of the same wall counts as a duplicate too
    CHECK_THROWS_AS(
        Arrangement::make({v, make_line(Rat(3), Rat(0), Rat(0))}, {1, 1}, win, bp, Rat(0)),
        SchemaError);
    CHECK_THROWS_AS(
        Arrangement::make({v, make_line(Rat(1), Rat(0), Rat(-10))}, {1, 1}, win, bp, Rat(0)),
        SchemaError);  // x = 10 misses the window
    CHECK_THROWS_AS(Arrangement::make({v, h}, {1, 2}, win, bp, Rat(0)), SchemaError);
    CHECK_THROWS_AS(Arrangement::make({v, h}, {1}, win, bp, Rat(0)), SchemaError);
    CHECK_THROWS_AS(
        Arrangement::make({v, h}, {1, 1}, Window{Point{Rat(0), Rat(0)}, Rat(0)}, bp, Rat(0)),
        SchemaError);
    CHECK_THROWS_AS(Arrangement::make({v, h}, {1, 1}, win, Point{Rat(0), bp.y}, Rat(0)),
                    NotGeneric);
    CHECK_THROWS_AS(Arrangement::make({v, h}, {1, 1}, win, Point{Rat(3), Rat(3)}, Rat(0)),
                    SchemaError);  // basepoint outside the window

    Arrangement A = Arrangement::make({v, h}, {1, -1}, win, bp, Rat(0), {"v", "h"});
    CHECK(A.n_pairs() == 2);
    CHECK(A.plus_sign(1) == -1);
    CHECK(A.labels()[0] == "v");
    // eval_elem orientation: positive exactly on the chosen open side
    CHECK(A.eval_elem(side(0, false), Point{Rat(1), Rat(0)}) > 0);
    CHECK(A.eval_elem(side(0, true), Point{Rat(1), Rat(0)}) < 0);
    CHECK(A.eval_elem(side(1, false), Point{Rat(0), Rat(1)}) < 0);  // plus side is y < 0
}

TEST_CASE("generator shapes, labels and determinism") {
    Arrangement tri = arrangement_triangle();
    CHECK(tri.n_pairs() == 3);
    CHECK(tri.labels() == std::vector<std::string>{"a", "b", "c"});
    for (int p = 0; p < 3; ++p)
        for (int q = p + 1; q < 3; ++q) CHECK(tri.pocset().pairs_transverse(p, q));

    CHECK(arrangement_hex(1).n_pairs() == 9);
    CHECK(arrangement_hex(2).n_pairs() == 15);
    CHECK(arrangement_hex(1).labels()[0] == "r-1");
    CHECK_THROWS_AS(arrangement_hex(0), SchemaError);
    CHECK_THROWS_AS(arrangement_hex(2, {}, Rat(0)), SchemaError);

    Arrangement grid = arrangement_grid(2);
    CHECK(grid.n_pairs() == 4);
    CHECK(grid.labels() == std::vector<std::string>{"x0", "x1", "y0", "y1"});
    CHECK(grid.pocset().max_transverse().size == 2);
    CHECK_THROWS_AS(arrangement_grid(0), SchemaError);

    Arrangement two = arrangement_two_parallel(Rat(10));
    CHECK(two.n_pairs() == 2);
    CHECK(two.pocset().leq(side(1, false), side(0, false)));  // {x>10} <= {x>0}
    CHECK_THROWS_AS(arrangement_two_parallel(Rat(0)), SchemaError);

    Arrangement r1 = arrangement_random(5, 7);
    Arrangement r2 = arrangement_random(5, 7);
    CHECK(io::dump_sorted(io::arrangement_to_json(r1)) ==
          io::dump_sorted(io::arrangement_to_json(r2)));
    CHECK(r1.n_pairs() == 5);
    Arrangement r3 = arrangement_random(5, 8);
    CHECK(io::dump_sorted(io::arrangement_to_json(r1)) !=
          io::dump_sorted(io::arrangement_to_json(r3)));
}

TEST_CASE("hex families: cross-family transverse, in-family nested") {
    const int N = 2;
    Arrangement A = arrangement_hex(N);
    const poc::PocSet& P = A.pocset();
    for (int a = -N; a <= N; ++a)
        for (int b = -N; b <= N; ++b) {
            CHECK(P.pairs_transverse(hex_pair(N, 'r', a), hex_pair(N, 's', b)));
            CHECK(P.pairs_transverse(hex_pair(N, 'r', a), hex_pair(N, 't', b)));
            CHECK(P.pairs_transverse(hex_pair(N, 's', a), hex_pair(N, 't', b)));
        }
    for (char fam : {'r', 's', 't'})
        for (int m = -N; m <= N; ++m)
            for (int n = m + 1; n <= N; ++n) {
                // the plus side of a later line sits inside the plus side of
                // an earlier one (both plus sides face the same way)
                Elem em = side(hex_pair(N, fam, m), false);
                Elem en = side(hex_pair(N, fam, n), false);
                CHECK(P.leq(en, em));
                CHECK(P.relation_of(em, en) == poc::Relation::geq);
            }
}

TEST_CASE("containment order respects sampled geometry") {
    Arrangement A = arrangement_hex(2);
    const poc::PocSet& P = A.pocset();
    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; ++t) {
        Point p = seeded_generic_point(A, rng);
        for (Elem e = 0; e < P.n_elems(); ++e) {
            if (A.eval_elem(e, p) <= 0) continue;
            for (Elem f = P.up(e).first(); f >= 0; f = P.up(e).next(f))
                CHECK(A.eval_elem(f, p) > 0);
        }
    }
}

TEST_CASE("b_x: decided sides, undecided walls, genericity") {
    Arrangement grid = arrangement_grid(2);
    Point inner{make_rat(1, 2), make_rat(1, 3)};
    BaseAt base = b_x(grid, inner);
    CHECK(base.undecided_pairs.empty());
    REQUIRE(base.orientation.has_value());
    CHECK(grid.pocset().is_ultrafilter(*base.orientation));
    for (Elem e : base.decided) CHECK(grid.eval_elem(e, inner) > 0);
    CHECK(int(base.decided.size()) == grid.n_pairs());

    Point on_wall{Rat(0), make_rat(1, 2)};
    BaseAt cut = b_x(grid, on_wall);
    CHECK(cut.undecided_pairs == std::vector<int>{0});
    CHECK(!cut.orientation.has_value());
    CHECK(!grid.is_generic(on_wall));
    CHECK_THROWS_AS(chamber(grid, on_wall), NotGeneric);

    // basepoint orientation of the hex model is consistent and supported at x0
    Arrangement hex = arrangement_hex(2);
    BaseAt pi0 = b_x(hex, hex.basepoint());
    REQUIRE(pi0.orientation.has_value());
    auto witness = supports_orientation(hex, *pi0.orientation);
    REQUIRE(witness.has_value());
    for (int p = 0; p < hex.n_pairs(); ++p)
        CHECK(hex.eval_elem(poc::chosen(*pi0.orientation, p), *witness) >= 0);
}

TEST_CASE("chambers: bounded flags, clipping, the central hexagon") {
    Arrangement quad = arrangement_grid(1);  // lines x = 0, y = 0
    Chamber q = chamber(quad, Point{Rat(1), Rat(1)});
    CHECK(!q.bounded);
    CHECK(q.clipped);
    CHECK(!q.polygon.empty());

    Arrangement tri = arrangement_triangle();
    Chamber t = chamber(tri, Point{make_rat(1, 2), make_rat(1, 2)});
    CHECK(t.bounded);
    CHECK(!t.clipped);
    CHECK(t.polygon.size() == 3);
    CHECK(point_set(t.polygon) ==
          point_set({{Rat(0), Rat(0)}, {Rat(2), Rat(0)}, {Rat(0), Rat(2)}}));

    Arrangement hex = arrangement_hex(2);
    Chamber c = chamber(hex, hex.basepoint());
    CHECK(c.bounded);
    CHECK(!c.clipped);
    CHECK(c.polygon.size() == 6);
    CHECK(point_set(c.polygon) == point_set({{make_rat(4, 7), Rat(0)},
                                             {make_rat(-4, 7), Rat(0)},
                                             {make_rat(-6, 19), make_rat(17, 38)},
                                             {make_rat(6, 19), make_rat(17, 38)},
                                             {make_rat(34, 133), make_rat(-21, 38)},
                                             {make_rat(-34, 133), make_rat(-21, 38)}}));
}

TEST_CASE("supports: LP feasibility and the Helly cross-check") {
    Arrangement tri = arrangement_triangle();
    // outward sides of the inner triangle: {x<0}, {y<0}, {x+y>2}
    std::vector<Elem> outward = {side(0, true), side(1, true), side(2, true)};
    CHECK(!supports(tri, outward).has_value());
    CHECK(supports(tri, {side(0, false)}).has_value());
    CHECK_THROWS_AS(supports(tri, {}), SchemaError);

    // witness satisfies every closed constraint
    std::vector<Elem> inward = {side(0, false), side(1, false), side(2, false)};
    auto w = supports(tri, inward);
    REQUIRE(w.has_value());
    for (Elem e : inward) CHECK(tri.eval_elem(e, *w) >= 0);

    // Helly: a family of closed halfplanes has a common point iff every
    // triple does
    Arrangement hex = arrangement_hex(2);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 40; ++t) {
        size_t size = 3 + rng() % 10;
        std::vector<Elem> S;
        std::set<Elem> seen;
        while (S.size() < size) {
            Elem e = Elem(rng() % (2 * hex.n_pairs()));
            if (seen.insert(e).second) S.push_back(e);
        }
        bool all = supports(hex, S).has_value();
        bool triples = true;
        for (size_t i = 0; i < S.size() && triples; ++i)
            for (size_t j = i + 1; j < S.size() && triples; ++j)
                for (size_t k = j + 1; k < S.size(); ++k)
                    if (!supports(hex, {S[i], S[j], S[k]})) {
                        triples = false;
                        break;
                    }
        CHECK(all == triples);
    }
}

TEST_CASE("distances to complements and slab widths") {
    Arrangement V = verticals123();
    Elem lt1 = side(0, false), lt2 = side(1, false), lt3 = side(2, false);
    Point origin{Rat(0), Rat(0)};
    CHECK(dist2_to_complement(V, origin, lt3) == 9);  // cl({x>=3})
    CHECK(dist2_to_complement(V, origin, lt1) == 1);
    CHECK(dist2_to_complement(V, Point{Rat(5), Rat(0)}, lt3) == 0);   // already there
    CHECK(dist2_to_complement(V, Point{Rat(3), Rat(-2)}, lt3) == 0);  // on the wall

    CHECK(width2(V, lt1, lt3) == 4);
    CHECK(width2(V, lt1, lt2) == 1);
    CHECK(width2(V, poc::star(lt3), poc::star(lt1)) == 4);
    Arrangement tri = arrangement_triangle();
    CHECK_THROWS_AS(width2(tri, side(0, false), side(1, false)), SchemaError);

    Arrangement hex = arrangement_hex(2);
    const int N = 2;
    // r spacing is 1; the skew families sit at 2/|(7/4, -1)| apart
    Elem r0 = side(hex_pair(N, 'r', 0), false), r1 = side(hex_pair(N, 'r', 1), false);
    CHECK(width2(hex, r1, r0) == 1);
    Elem s0 = side(hex_pair(N, 's', 0), false), s1 = side(hex_pair(N, 's', 1), false);
    CHECK(width2(hex, s1, s0) == make_rat(64, 65));
}

TEST_CASE("s_set walks the halfspace chain under k") {
    Arrangement V = verticals123();
    Point origin{Rat(0), Rat(0)};
    Elem lt1 = side(0, false), lt2 = side(1, false), lt3 = side(2, false);
    CHECK(s_set(V, origin, lt3) == std::vector<Elem>{lt1, lt2, lt3});
    CHECK(s_set(V, origin, lt1) == std::vector<Elem>{lt1});
    CHECK_THROWS_AS(s_set(V, origin, poc::star(lt1)), XNotInK);
    CHECK_THROWS_AS(s_set(V, Point{Rat(1), Rat(0)}, lt1), XNotInK);  // on the wall

    const int N = 3;
    Arrangement hex = arrangement_hex(N);
    Elem r2_low = side(hex_pair(N, 'r', 2), true);  // the r_2 side containing x0
    CHECK(s_set(hex, hex.basepoint(), r2_low).size() == 3);
}

TEST_CASE("f_of_r: linear growth, infinity marker, window guard") {
    Arrangement grid = arrangement_grid(9);
    Rat margin = default_margin(grid);
    CHECK(margin == 2);  // bounded cells are unit squares
    for (long r = 1; r <= 4; ++r) {
        WallCount fc = f_of_r(grid, Rat(r), margin);
        CHECK(fc.finite);
        CHECK(fc.count == r + 1);
    }
    CHECK_THROWS_AS(f_of_r(grid, Rat(6), margin), WindowTooSmall);
    CHECK_THROWS_AS(f_of_r(grid, Rat(0), margin), SchemaError);

    Arrangement two = arrangement_two_parallel(Rat(10));
    CHECK(default_margin(two) == 0);  // no bounded cell
    WallCount small = f_of_r(two, Rat(3), Rat(0));
    CHECK(small.finite);
    CHECK(small.count == 1);
    WallCount big = f_of_r(two, Rat(6), Rat(0));
    CHECK(!big.finite);  // no halfspace contains the radius-6 ball
}

TEST_CASE("parallel walls check: clean grid, dirty gap") {
    Arrangement grid = arrangement_grid(6);
    CHECK(check_parallel_walls(grid, make_rat(3, 2), default_margin(grid)).empty());

    Arrangement two = arrangement_two_parallel(Rat(10));
    auto viols = check_parallel_walls(two, Rat(2), Rat(0));
    CHECK(!viols.empty());
    for (const PwViolation& v : viols) {
        CHECK(v.d2 > 4);  // beyond C^2
        // the far side really has no intermediate wall: the witness pair is
        // one of only two walls, so any h with x in k < h is impossible
        CHECK(dist2_to_complement(two, v.x, v.h) == v.d2);
    }
}

TEST_CASE("boundary directions and conical depth") {
    Arrangement grid = arrangement_grid(3);
    auto T = boundary_T(grid, Rat(1), Rat(0));
    // rightward direction: the {x > i} sides, horizontals contribute nothing
    CHECK(T == std::vector<Elem>{side(0, false), side(1, false), side(2, false)});
    CHECK(conical_depth(grid, Rat(1), Rat(0)) == 3);
    CHECK(boundary_T(grid, Rat(0), Rat(-1)) ==
          std::vector<Elem>{side(3, true), side(4, true), side(5, true)});
    CHECK(boundary_T(grid, Rat(1), Rat(1)).size() == 6);
    CHECK(conical_depth(grid, Rat(1), Rat(1)) == 3);  // chains stay in-family
    CHECK_THROWS_AS(boundary_T(grid, Rat(0), Rat(0)), ZeroDirection);

    // every sampled direction sees a nonempty T on the hex model
    Arrangement hex = arrangement_hex(2);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 60; ++t) {
        Rat xi_x = Rat(long(rng() % 41) - 20);
        Rat xi_y = Rat(long(rng() % 41) - 20);
        if (sgn(xi_x) == 0 && sgn(xi_y) == 0) continue;
        CHECK(!boundary_T(hex, xi_x, xi_y).empty());
        CHECK(conical_depth(hex, xi_x, xi_y) >= 1);
    }
}

TEST_CASE("cell enumeration covers every sign vector once") {
    Arrangement tri = arrangement_triangle();
    auto cells = enumerate_cells(tri);
    CHECK(cells.size() == 7);

    Arrangement grid = arrangement_grid(3);
    CHECK(enumerate_cells(grid).size() == 16);

    Arrangement two = arrangement_two_parallel(Rat(10));
    CHECK(enumerate_cells(two).size() == 3);

    Arrangement hex = arrangement_hex(2);
    auto hex_cells = enumerate_cells(hex);
    CHECK(hex_cells.size() == 91);  // 1 + 3(2N+1) + 3(2N+1)^2

    std::set<std::string> signs;
    for (const Cell& c : hex_cells) {
        signs.insert(c.signs.to_string());
        CHECK(hex.is_generic(c.rep));
        CHECK(*b_x(hex, c.rep).orientation == c.signs);
    }
    CHECK(signs.size() == hex_cells.size());

    // enumeration is deterministic
    auto again = enumerate_cells(hex);
    REQUIRE(again.size() == hex_cells.size());
    for (size_t i = 0; i < again.size(); ++i) {
        CHECK(again[i].signs == hex_cells[i].signs);
        CHECK(again[i].rep == hex_cells[i].rep);
    }
}

TEST_CASE("lattice translations permute the hex families") {
    const int N = 2;
    Arrangement hex = arrangement_hex(N);
    const poc::PocSet& P = hex.pocset();

    // v1 = (8/7, 0) maps s_n -> s_{n+1}, t_n -> t_{n+1}, fixes every r_n;
    // v2 = (4/7, 1) maps r_n -> r_{n+1}, t_n -> t_{n+1}, fixes every s_n.
    Point v1{make_rat(8, 7), Rat(0)};
    Point v2{make_rat(4, 7), Rat(1)};
    std::mt19937_64 rng(17);
    auto eval_shifted = [&](int pair, const Point& p, const Point& v) {
        return line_eval(hex.line(pair), Point{p.x + v.x, p.y + v.y});
    };
    for (int t = 0; t < 50; ++t) {
        Point p = seeded_generic_point(hex, rng);
        for (int n = -N; n < N; ++n) {
            CHECK(eval_shifted(hex_pair(N, 's', n + 1), p, v1) ==
                  line_eval(hex.line(hex_pair(N, 's', n)), p));
            CHECK(eval_shifted(hex_pair(N, 't', n + 1), p, v1) ==
                  line_eval(hex.line(hex_pair(N, 't', n)), p));
            CHECK(eval_shifted(hex_pair(N, 'r', n + 1), p, v2) ==
                  line_eval(hex.line(hex_pair(N, 'r', n)), p));
            CHECK(eval_shifted(hex_pair(N, 't', n + 1), p, v2) ==
                  line_eval(hex.line(hex_pair(N, 't', n)), p));
        }
        for (int n = -N; n <= N; ++n) {
            CHECK(eval_shifted(hex_pair(N, 'r', n), p, v1) ==
                  line_eval(hex.line(hex_pair(N, 'r', n)), p));
            CHECK(eval_shifted(hex_pair(N, 's', n), p, v2) ==
                  line_eval(hex.line(hex_pair(N, 's', n)), p));
        }
    }

    // the induced index map is a partial poc-set automorphism: relations are
    // preserved wherever both images exist
    auto shift = [&](int pair) -> int {
        int fam = pair / (2 * N + 1), idx = pair % (2 * N + 1);
        if (fam == 0) return pair;                              // r fixed by v1
        return idx + 1 <= 2 * N ? pair + 1 : -1;                // s, t advance
    };
    for (int p = 0; p < hex.n_pairs(); ++p)
        for (int q = 0; q < hex.n_pairs(); ++q) {
            int sp = shift(p), sq = shift(q);
            if (p == q || sp < 0 || sq < 0) continue;
            CHECK(P.relation_of(side(p, false), side(q, false)) ==
                  P.relation_of(side(sp, false), side(sq, false)));
        }
}
