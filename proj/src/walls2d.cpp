#include "cubedual/walls2d.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>

#include "cubedual/lp2d.hpp"

namespace cubedual::walls {

// ---------------------------------------------------------------------------
// lines

Line make_line(const Rat& a, const Rat& b, const Rat& c) {
    if (sgn(a) == 0 && sgn(b) == 0) throw SchemaError("line with zero normal");
    Int da = a.get_den(), db = b.get_den(), dc = c.get_den();
    Int l;
    mpz_lcm(l.get_mpz_t(), da.get_mpz_t(), db.get_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), dc.get_mpz_t());
    Int ia = a.get_num() * (l / da);
    Int ib = b.get_num() * (l / db);
    Int ic = c.get_num() * (l / dc);
    Int g;
    mpz_gcd(g.get_mpz_t(), ia.get_mpz_t(), ib.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ic.get_mpz_t());
    ia /= g;
    ib /= g;
    ic /= g;
    int lead = sgn(ia) != 0 ? sgn(ia) : sgn(ib);
    if (lead < 0) {
        ia = -ia;
        ib = -ib;
        ic = -ic;
    }
    return Line{ia, ib, ic};
}

Rat line_eval(const Line& l, const Point& p) {
    return Rat(l.a) * p.x + Rat(l.b) * p.y + Rat(l.c);
}

bool lines_parallel(const Line& l, const Line& m) { return l.a * m.b == m.a * l.b; }

bool in_window(const Window& w, const Point& p, bool strict) {
    Rat d = linf(p, w.center);
    return strict ? d < w.radius : d <= w.radius;
}

static std::vector<Point> window_corners(const Window& w) {
    const Rat& R = w.radius;
    const Point& c = w.center;
    return {{c.x - R, c.y - R}, {c.x + R, c.y - R}, {c.x + R, c.y + R}, {c.x - R, c.y + R}};
}

// ---------------------------------------------------------------------------
// arrangement construction

Rat Arrangement::eval_elem(poc::Elem e, const Point& p) const {
    int pair = poc::pair_of(e);
    int sign = sides_[pair] * (poc::minus_side(e) ? -1 : 1);
    return Rat(sign) * line_eval(lines_[pair], p);
}

bool Arrangement::is_generic(const Point& p) const {
    for (const Line& l : lines_)
        if (sgn(line_eval(l, p)) == 0) return false;
    return true;
}

Arrangement Arrangement::make(std::vector<Line> lines, std::vector<int> sides,
                              Window window, Point basepoint, Rat base_radius,
                              std::vector<std::string> labels) {
    Arrangement A;
    const int n = int(lines.size());
    if (int(sides.size()) != n) throw SchemaError("sides count != line count");
    for (int s : sides)
        if (s != 1 && s != -1) throw SchemaError("side sign must be +1 or -1");
    if (sgn(window.radius) <= 0) throw SchemaError("window radius must be positive");
    if (sgn(base_radius) < 0) throw SchemaError("base radius must be nonnegative");
    if (labels.empty())
        for (int i = 0; i < n; ++i) labels.push_back("w" + std::to_string(i));
    if (int(labels.size()) != n) throw SchemaError("label count != line count");

    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (lines[i] == lines[j])
                throw SchemaError("duplicate wall: lines " + std::to_string(i) + " and " +
                                  std::to_string(j));
    auto corners = window_corners(window);
    for (int i = 0; i < n; ++i) {
        int pos = 0, neg = 0;
        for (const Point& q : corners) {
            int s = sgn(line_eval(lines[i], q));
            pos += s > 0;
            neg += s < 0;
        }
        if (pos == 4 || neg == 4)
            throw SchemaError("line " + std::to_string(i) + " misses the window");
    }
    if (!in_window(window, basepoint, true))
        throw SchemaError("basepoint outside the window");

    A.lines_ = std::move(lines);
    A.sides_ = std::move(sides);
    A.labels_ = labels;
    A.window_ = window;
    A.basepoint_ = basepoint;
    A.base_radius_ = base_radius;
    if (!A.is_generic(basepoint)) throw NotGeneric("basepoint lies on a wall");

    // Geometric containment order. Sides e of pair p define the open region
    // {u . (x,y) > d} with u the inward normal; among parallel same-direction
    // normals, containment is an offset comparison.
    const int m = 2 * n;
    std::vector<BitVec> up(m, BitVec(m));
    auto normal = [&](poc::Elem e) {
        int pair = poc::pair_of(e);
        Int s(A.sides_[pair] * (poc::minus_side(e) ? -1 : 1));
        return std::pair<Int, Int>{s * A.lines_[pair].a, s * A.lines_[pair].b};
    };
    auto offset = [&](poc::Elem e) {
        int pair = poc::pair_of(e);
        Int s(A.sides_[pair] * (poc::minus_side(e) ? -1 : 1));
        return Int(-s * A.lines_[pair].c);
    };
    for (int e = 0; e < m; ++e) {
        up[e].set(e, true);
        auto [uex, uey] = normal(e);
        for (int f = 0; f < m; ++f) {
            if (poc::pair_of(e) == poc::pair_of(f)) continue;
            auto [ufx, ufy] = normal(f);
            if (uex * ufy != uey * ufx) continue;           // crossing: transverse
            if (sgn(uex * ufx + uey * ufy) <= 0) continue;  // opposite directions
            // u_f = lambda * u_e with lambda > 0; e <= f iff lambda*d_e >= d_f.
            Rat lambda = make_rat(uex * ufx + uey * ufy, uex * uex + uey * uey);
            Rat lhs = lambda * Rat(offset(e));
            Rat rhs = Rat(offset(f));
            if (lhs == rhs)
                throw CrossCheckFailed("distinct lines produced an equal halfplane");
            if (lhs > rhs) up[e].set(f, true);
        }
    }
    A.poc_ = poc::PocSet::from_up_sets(n, std::move(up), std::move(labels));
    return A;
}

// ---------------------------------------------------------------------------
// generators

Arrangement arrangement_hex(int N, WindowOverride w, const Rat& shear) {
    if (N < 1) throw SchemaError("hex arrangement needs N >= 1");
    if (sgn(shear) <= 0) throw SchemaError("hex arrangement needs a positive shear");
    std::vector<Line> lines;
    std::vector<int> sides;
    std::vector<std::string> labels;
    // r_n: y = n + 17/38; s_n: k·x - y = 2n + 1; t_n: k·x + y = 2n + 1.
    // s∩t crossings sit at integer heights, which no r-line hits; at any
    // r∩s point the t-value is 2(n + n') + 1 + 17/19, never an odd integer,
    // and symmetrically for r∩t. So no three lines are concurrent, for any
    // shear k. Each s/t rhombus spans exactly two vertical units and is cut
    // by exactly two r-lines, so every wall minimal for a chamber actually
    // bounds it — in particular the basepoint cell is a hexagon on
    // r_{-1}, r_0, s_{-1}, s_0, t_{-1}, t_0.
    for (int n = -N; n <= N; ++n) {
        lines.push_back(make_line(Rat(0), Rat(38), Rat(-(38 * n + 17))));
        sides.push_back(1);
        labels.push_back("r" + std::to_string(n));
    }
    for (int n = -N; n <= N; ++n) {
        lines.push_back(make_line(shear, Rat(-1), Rat(-(2 * n + 1))));
        sides.push_back(1);
        labels.push_back("s" + std::to_string(n));
    }
    for (int n = -N; n <= N; ++n) {
        lines.push_back(make_line(shear, Rat(1), Rat(-(2 * n + 1))));
        sides.push_back(1);
        labels.push_back("t" + std::to_string(n));
    }
    Window win{w.center.value_or(Point{Rat(0), Rat(0)}),
               w.radius.value_or(Rat(N + 2))};
    Point bp{make_rat(1, 64), make_rat(1, 128)};
    return Arrangement::make(std::move(lines), std::move(sides), win, bp, Rat(0),
                             std::move(labels));
}

Arrangement arrangement_triangle(WindowOverride w) {
    std::vector<Line> lines = {make_line(Rat(1), Rat(0), Rat(0)),
                               make_line(Rat(0), Rat(1), Rat(0)),
                               make_line(Rat(1), Rat(1), Rat(-2))};
    std::vector<int> sides = {1, 1, -1};  // {x>0}, {y>0}, {x+y<2}
    Window win{w.center.value_or(Point{make_rat(1, 2), make_rat(1, 2)}),
               w.radius.value_or(Rat(4))};
    Point bp{make_rat(1, 3), make_rat(1, 4)};
    return Arrangement::make(std::move(lines), std::move(sides), win, bp, Rat(0),
                             {"a", "b", "c"});
}

Arrangement arrangement_grid(int N, WindowOverride w, Rat base_radius) {
    if (N < 1) throw SchemaError("grid arrangement needs N >= 1");
    std::vector<Line> lines;
    std::vector<int> sides;
    std::vector<std::string> labels;
    for (int i = 0; i < N; ++i) {
        lines.push_back(make_line(Rat(1), Rat(0), Rat(-i)));
        sides.push_back(1);
        labels.push_back("x" + std::to_string(i));
    }
    for (int i = 0; i < N; ++i) {
        lines.push_back(make_line(Rat(0), Rat(1), Rat(-i)));
        sides.push_back(1);
        labels.push_back("y" + std::to_string(i));
    }
    Rat mid = make_rat(N - 1, 2);
    Window win{w.center.value_or(Point{mid, mid}), w.radius.value_or(mid + 3)};
    Point bp{mid + make_rat(1, 64), mid + make_rat(1, 128)};
    return Arrangement::make(std::move(lines), std::move(sides), win, bp, base_radius,
                             std::move(labels));
}

Arrangement arrangement_two_parallel(const Rat& gap, WindowOverride w) {
    if (sgn(gap) <= 0) throw SchemaError("gap must be positive");
    std::vector<Line> lines = {make_line(Rat(1), Rat(0), Rat(0)),
                               make_line(Rat(1), Rat(0), -gap)};
    Window win{w.center.value_or(Point{gap / 2, Rat(0)}), w.radius.value_or(gap * 2)};
    Point bp{gap / 2 + make_rat(1, 64), make_rat(1, 128)};
    return Arrangement::make(std::move(lines), {1, 1}, win, bp, Rat(0), {"l", "r"});
}

Arrangement arrangement_random(int n, uint64_t seed, WindowOverride w) {
    if (n < 1) throw SchemaError("random arrangement needs n >= 1");
    Window win{w.center.value_or(Point{Rat(0), Rat(0)}), w.radius.value_or(Rat(4))};
    std::mt19937_64 rng(seed);
    // Coordinates on the 1/8 grid inside the window; modulo keeps the draw
    // independent of library distributions (bit-identical regeneration).
    Rat r8 = win.radius * 8;
    long K = Int(r8.get_num() / r8.get_den()).get_si();
    if (K < 1) throw SchemaError("window too small for random generation");
    // -> Rat forces evaluation before the make_rat temporary dies; the
    // deduced type would be a gmp expression template holding a dangling ref
    auto draw_coord = [&](const Rat& c) -> Rat {
        return c + make_rat(long(rng() % (2 * K + 1)) - K, 8);
    };

    std::vector<Line> lines;
    std::vector<Point> isect;  // pairwise intersection points of accepted lines
    long attempts = 0, cap = 200L * n + 200;
    while (int(lines.size()) < n) {
        if (++attempts > cap) throw GenerationFailed("could not place distinct lines");
        Point p{draw_coord(win.center.x), draw_coord(win.center.y)};
        Point q{draw_coord(win.center.x), draw_coord(win.center.y)};
        if (p == q) continue;
        Line cand = make_line(p.y - q.y, q.x - p.x, p.x * q.y - q.x * p.y);
        bool bad = false;
        for (const Line& l : lines)
            if (l == cand) bad = true;
        for (const Point& v : isect)
            if (!bad && sgn(line_eval(cand, v)) == 0) bad = true;  // concurrent triple
        if (bad) continue;
        for (const Line& l : lines) {
            if (lines_parallel(l, cand)) continue;
            Rat det = Rat(l.a) * Rat(cand.b) - Rat(cand.a) * Rat(l.b);
            Rat x = (Rat(l.b) * Rat(cand.c) - Rat(cand.b) * Rat(l.c)) / det;
            Rat y = (Rat(cand.a) * Rat(l.c) - Rat(l.a) * Rat(cand.c)) / det;
            isect.push_back({x, y});
        }
        lines.push_back(cand);
    }
    std::vector<int> sides(n, 1);
    Point bp = win.center;
    for (long j = 1;; ++j) {
        if (j > 1000) throw GenerationFailed("could not find a generic basepoint");
        bp = Point{win.center.x + make_rat(j, 1031), win.center.y + make_rat(j, 2063)};
        bool ok = true;
        for (const Line& l : lines)
            if (sgn(line_eval(l, bp)) == 0) ok = false;
        if (ok) break;
    }
    return Arrangement::make(std::move(lines), std::move(sides), win, bp, Rat(0));
}

// ---------------------------------------------------------------------------
// supports / b_x / chamber

static lp::Constraint elem_constraint(const Arrangement& A, poc::Elem e, bool strict) {
    int pair = poc::pair_of(e);
    const Line& l = A.line(pair);
    Rat s(A.plus_sign(pair) * (poc::minus_side(e) ? -1 : 1));
    return {s * Rat(l.a), s * Rat(l.b), s * Rat(l.c), strict};
}

std::optional<Point> supports(const Arrangement& A, const std::vector<poc::Elem>& S) {
    if (S.empty()) throw SchemaError("supports: empty set is inconsistent by definition");
    std::vector<lp::Constraint> cons;
    cons.reserve(S.size());
    for (poc::Elem e : S) cons.push_back(elem_constraint(A, e, false));
    return lp::feasible_point_near(cons, A.window().center, A.window().radius);
}

std::optional<Point> supports_orientation(const Arrangement& A, const BitVec& uf) {
    std::vector<lp::Constraint> cons;
    cons.reserve(A.n_pairs());
    for (int i = 0; i < A.n_pairs(); ++i)
        cons.push_back(elem_constraint(A, poc::side(i, uf.get(i)), false));
    return lp::feasible_point_near(cons, A.window().center, A.window().radius);
}

std::function<bool(const BitVec&)> consistency_oracle(const Arrangement& A) {
    const Arrangement* a = &A;  // caller keeps the arrangement alive
    return [a](const BitVec& uf) { return supports_orientation(*a, uf).has_value(); };
}

BaseAt b_x(const Arrangement& A, const Point& x) {
    BaseAt out;
    BitVec bits(A.n_pairs());
    bool generic = true;
    for (int i = 0; i < A.n_pairs(); ++i) {
        int s = sgn(A.eval_elem(poc::side(i, false), x));
        if (s == 0) {
            generic = false;
            out.undecided_pairs.push_back(i);
        } else {
            bool minus = s < 0;
            bits.set(i, minus);
            out.decided.push_back(poc::side(i, minus));
        }
    }
    if (generic) {
        if (!A.pocset().is_ultrafilter(bits))
            throw CrossCheckFailed("point orientation failed the filter check");
        out.orientation = bits;
    }
    return out;
}

namespace {

// Direction candidates orthogonal to the active constraints; the recession
// cone {d : u_i . d >= 0} of a 2D cell is nontrivial iff one of them fits
// (or there are no constraints at all).
bool cell_unbounded(const std::vector<std::pair<Int, Int>>& normals) {
    if (normals.empty()) return true;
    for (const auto& [ux, uy] : normals)
        for (int s : {1, -1}) {
            Int dx = -Int(s) * uy, dy = Int(s) * ux;
            bool ok = true;
            for (const auto& [vx, vy] : normals)
                if (sgn(vx * dx + vy * dy) < 0) {
                    ok = false;
                    break;
                }
            if (ok) return true;
        }
    return false;
}

}  // namespace

Chamber chamber(const Arrangement& A, const Point& x) {
    if (!A.is_generic(x)) throw NotGeneric("chamber of a point on a wall");
    Chamber out;
    std::vector<Point> poly = window_corners(A.window());
    std::vector<std::pair<Int, Int>> normals;
    for (int i = 0; i < A.n_pairs(); ++i) {
        int s = sgn(A.eval_elem(poc::side(i, false), x));
        Int sign(A.plus_sign(i) * s);
        const Line& l = A.line(i);
        poly = lp::clip_polygon(poly, Rat(sign * l.a), Rat(sign * l.b), Rat(sign * l.c));
        normals.push_back({sign * l.a, sign * l.b});
    }
    out.bounded = !cell_unbounded(normals);
    bool touches = false;
    for (const Point& v : poly)
        if (linf(v, A.window().center) == A.window().radius) touches = true;
    out.clipped = !out.bounded || touches || poly.empty();
    out.polygon = std::move(poly);
    return out;
}

// ---------------------------------------------------------------------------
// metric queries

Rat dist2_to_complement(const Arrangement& A, const Point& x, poc::Elem e) {
    Rat v = A.eval_elem(e, x);
    if (sgn(v) <= 0) return Rat(0);
    const Line& l = A.line(poc::pair_of(e));
    return v * v / Rat(l.a * l.a + l.b * l.b);
}

Rat width2(const Arrangement& A, poc::Elem e, poc::Elem f) {
    if (!A.pocset().leq(e, f) || e == f)
        throw SchemaError("width requires a properly nested pair");
    const Line& le = A.line(poc::pair_of(e));
    const Line& lf = A.line(poc::pair_of(f));
    // Nested => parallel; rescale lf onto le's normal and compare offsets.
    Rat lambda = sgn(lf.a) != 0 ? make_rat(le.a, lf.a) : make_rat(le.b, lf.b);
    Rat dc = Rat(le.c) - lambda * Rat(lf.c);
    return dc * dc / Rat(le.a * le.a + le.b * le.b);
}

std::vector<poc::Elem> s_set(const Arrangement& A, const Point& x, poc::Elem k) {
    if (sgn(A.eval_elem(k, x)) <= 0) throw XNotInK("s_set: x not strictly inside k");
    std::vector<poc::Elem> out;
    for (poc::Elem e = 0; e < 2 * A.n_pairs(); ++e)
        if (A.pocset().leq(e, k) && sgn(A.eval_elem(e, x)) > 0) out.push_back(e);
    return out;
}

// ---------------------------------------------------------------------------
// cell enumeration

std::vector<Cell> enumerate_cells(const Arrangement& A) {
    const int n = A.n_pairs();
    auto strict_witness = [&](const BitVec& signs) -> std::optional<Point> {
        // Cheap reject: a sign vector violating the pair order cannot bound a cell.
        if (!A.pocset().is_ultrafilter(signs)) return std::nullopt;
        std::vector<lp::Constraint> cons;
        cons.reserve(n);
        for (int i = 0; i < n; ++i)
            cons.push_back(elem_constraint(A, poc::side(i, signs.get(i)), true));
        return lp::feasible_point_near(cons, A.window().center, A.window().radius);
    };

    std::vector<Cell> cells;
    std::unordered_map<BitVec, bool, BitVecHash> seen;  // value: feasible?
    BitVec start = *b_x(A, A.basepoint()).orientation;
    auto w0 = strict_witness(start);
    if (!w0) throw CrossCheckFailed("basepoint cell has no interior witness");
    seen[start] = true;
    cells.push_back({start, *w0});
    for (size_t head = 0; head < cells.size(); ++head) {
        BitVec cur = cells[head].signs;  // copy: cells grows below
        for (int i = 0; i < n; ++i) {
            BitVec nb = cur;
            nb.flip(i);
            auto it = seen.find(nb);
            if (it != seen.end()) continue;
            auto wit = strict_witness(nb);
            seen[nb] = wit.has_value();
            if (wit) cells.push_back({nb, *wit});
        }
    }
    return cells;
}

Rat default_margin(const Arrangement& A) {
    Rat best(0);
    for (const Cell& c : enumerate_cells(A)) {
        Chamber ch = chamber(A, c.rep);
        if (!ch.bounded || ch.polygon.empty()) continue;
        Rat xmin = ch.polygon[0].x, xmax = xmin, ymin = ch.polygon[0].y, ymax = ymin;
        for (const Point& v : ch.polygon) {
            xmin = std::min(xmin, v.x);
            xmax = std::max(xmax, v.x);
            ymin = std::min(ymin, v.y);
            ymax = std::max(ymax, v.y);
        }
        Rat diam = std::max(xmax - xmin, ymax - ymin);
        best = std::max(best, diam);
    }
    return 2 * best;
}

// ---------------------------------------------------------------------------
// wall counting and the parallel-walls check

bool ball_in_halfplane(const Arrangement& A, poc::Elem e, const Point& center,
                       const Rat& r2) {
    Rat v = A.eval_elem(e, center);
    if (sgn(v) <= 0) return false;
    const Line& l = A.line(poc::pair_of(e));
    return v * v > r2 * Rat(l.a * l.a + l.b * l.b);
}

WallCount f_of_r(const Arrangement& A, const Rat& r, const Rat& margin) {
    if (sgn(r) <= 0) throw SchemaError("f(r) needs r > 0");
    const Window& w = A.window();
    Rat slack_x = w.radius - abs(A.basepoint().x - w.center.x);
    Rat slack_y = w.radius - abs(A.basepoint().y - w.center.y);
    if (r + margin > slack_x || r + margin > slack_y)
        throw WindowTooSmall("ball of radius r + margin leaves the window");
    Rat r2 = r * r;
    Rat R02 = A.base_radius() * A.base_radius();
    WallCount out;
    for (poc::Elem k = 0; k < 2 * A.n_pairs(); ++k) {
        if (!ball_in_halfplane(A, k, A.basepoint(), r2)) continue;
        long cnt = 0;
        for (poc::Elem h = 0; h < 2 * A.n_pairs(); ++h)
            if (A.pocset().leq(h, k) && ball_in_halfplane(A, h, A.basepoint(), R02)) ++cnt;
        if (!out.finite || cnt < out.count) {
            out.finite = true;
            out.count = cnt;
            out.argmin_k = k;
        }
    }
    return out;
}

std::vector<PwViolation> check_parallel_walls(const Arrangement& A, const Rat& C,
                                              const Rat& margin) {
    if (sgn(C) <= 0) throw SchemaError("parallel-walls check needs C > 0");
    std::vector<PwViolation> out;
    Rat trusted = A.window().radius - (C + margin);
    if (sgn(trusted) < 0) return out;
    Rat C2 = C * C;
    for (const Cell& cell : enumerate_cells(A)) {
        const Point& x = cell.rep;
        if (linf(x, A.window().center) > trusted) continue;
        for (poc::Elem h = 0; h < 2 * A.n_pairs(); ++h) {
            Rat v = A.eval_elem(h, x);
            if (sgn(v) <= 0) continue;
            const Line& l = A.line(poc::pair_of(h));
            Rat nn(l.a * l.a + l.b * l.b);
            if (!(v * v > C2 * nn)) continue;
            Rat f = line_eval(l, x);
            Point foot{x.x - Rat(l.a) * f / nn, x.y - Rat(l.b) * f / nn};
            if (linf(foot, A.window().center) > trusted) continue;
            bool has_k = false;
            for (poc::Elem k = 0; k < 2 * A.n_pairs() && !has_k; ++k)
                if (k != h && A.pocset().leq(k, h) && sgn(A.eval_elem(k, x)) > 0)
                    has_k = true;
            if (!has_k) out.push_back({x, h, v * v / nn});
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// boundary directions

std::vector<poc::Elem> boundary_T(const Arrangement& A, const Rat& xi_x, const Rat& xi_y) {
    if (sgn(xi_x) == 0 && sgn(xi_y) == 0) throw ZeroDirection("zero direction vector");
    std::vector<poc::Elem> out;
    for (poc::Elem e = 0; e < 2 * A.n_pairs(); ++e) {
        int pair = poc::pair_of(e);
        const Line& l = A.line(pair);
        Rat s(A.plus_sign(pair) * (poc::minus_side(e) ? -1 : 1));
        if (sgn(s * (Rat(l.a) * xi_x + Rat(l.b) * xi_y)) > 0) out.push_back(e);
    }
    return out;
}

int conical_depth(const Arrangement& A, const Rat& xi_x, const Rat& xi_y) {
    std::vector<poc::Elem> T = boundary_T(A, xi_x, xi_y);
    std::vector<int> depth(T.size(), 0);
    const auto& P = A.pocset();
    // leq restricted to T is a DAG; longest path by increasing processing of
    // elements sorted so that smaller ones come first.
    std::vector<int> order(T.size());
    for (size_t i = 0; i < T.size(); ++i) order[i] = int(i);
    std::sort(order.begin(), order.end(), [&](int i, int j) {
        return P.down(T[i]).count() < P.down(T[j]).count();
    });
    int best = 0;
    for (int i : order) {
        depth[i] = 1;
        for (size_t j = 0; j < T.size(); ++j)
            if (T[j] != T[i] && P.leq(T[j], T[i])) depth[i] = std::max(depth[i], depth[j] + 1);
        best = std::max(best, depth[i]);
    }
    return best;
}

}  // namespace cubedual::walls
