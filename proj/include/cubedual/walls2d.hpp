#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cubedual/bitvec.hpp"
#include "cubedual/pocset.hpp"
#include "cubedual/rational.hpp"

namespace cubedual::walls {

// ax + by + c = 0 with integer coefficients, canonical: gcd(|a|,|b|,|c|) = 1
// and the first nonzero of (a, b) positive.
struct Line {
    Int a, b, c;
    bool operator==(const Line& o) const { return a == o.a && b == o.b && c == o.c; }
};

Line make_line(const Rat& a, const Rat& b, const Rat& c);  // SchemaError if a=b=0
Rat line_eval(const Line& l, const Point& p);
bool lines_parallel(const Line& l, const Line& m);

// Closed axis-aligned square: L-infinity ball around center.
struct Window {
    Point center;
    Rat radius;
};

bool in_window(const Window& w, const Point& p, bool strict);

// A planar wall system: one line per halfspace pair; the plus side of pair i
// is {p : sides[i] * line_eval(lines[i], p) > 0}. Carries the truncation
// window, the basepoint x0 and the base radius R0.
class Arrangement {
public:
    // Validates: no duplicate lines, every line meets the window, basepoint
    // generic; then derives the containment order as a PocSet (element ids
    // are the poc-set side ids, the correspondence is the identity).
    static Arrangement make(std::vector<Line> lines, std::vector<int> sides,
                            Window window, Point basepoint, Rat base_radius,
                            std::vector<std::string> labels = {});

    int n_pairs() const { return int(lines_.size()); }
    const Line& line(int pair) const { return lines_[pair]; }
    int plus_sign(int pair) const { return sides_[pair]; }
    const std::vector<std::string>& labels() const { return labels_; }
    const Window& window() const { return window_; }
    const Point& basepoint() const { return basepoint_; }
    const Rat& base_radius() const { return base_radius_; }

    // Signed value, positive exactly on the open halfplane of side element e.
    Rat eval_elem(poc::Elem e, const Point& p) const;

    // The containment poc-set; side ids match eval_elem orientation.
    const poc::PocSet& pocset() const { return poc_; }

    bool is_generic(const Point& p) const;

private:
    std::vector<Line> lines_;
    std::vector<int> sides_;
    std::vector<std::string> labels_;
    Window window_;
    Point basepoint_;
    Rat base_radius_;
    poc::PocSet poc_;
};

// --- generators ------------------------------------------------------------

struct WindowOverride {
    std::optional<Point> center;
    std::optional<Rat> radius;
};

// Three families of parallels (directions (1,0), (1,7/4), (-1,7/4)), indices
// -N..N, offsets chosen so that no three lines are concurrent and the
// basepoint cell is a hexagon. 3*(2N+1) pairs.
Arrangement arrangement_hex(int N, WindowOverride w = {}, const Rat& shear = Rat(7) / 4);

// x = 0, y = 0, x + y = 2: three lines in general position; the plus sides
// point at the inner triangle, so exactly one orientation is inconsistent.
Arrangement arrangement_triangle(WindowOverride w = {});

// Verticals x = 0..N-1 and horizontals y = 0..N-1.
Arrangement arrangement_grid(int N, WindowOverride w = {}, Rat base_radius = Rat(0));

// n distinct lines through random rational point pairs in the window; rejects
// duplicates, concurrent triples and non-generic basepoints deterministically.
Arrangement arrangement_random(int n, uint64_t seed, WindowOverride w = {});

// x = 0 and x = gap: the no-intermediate-wall negative control.
Arrangement arrangement_two_parallel(const Rat& gap, WindowOverride w = {});

// --- point/halfspace queries ------------------------------------------------

// A common supporting point of the closed halfplanes of S, if any. S must be
// nonempty (the empty set is inconsistent by definition; callers handle it).
// Witness preferred inside the window.
std::optional<Point> supports(const Arrangement& A, const std::vector<poc::Elem>& S);

// Same test for an orientation given as an ultrafilter bit vector.
std::optional<Point> supports_orientation(const Arrangement& A, const BitVec& uf);

// All sides strictly containing x; pairs whose wall passes through x stay
// undecided. `orientation` is set exactly when x is generic.
struct BaseAt {
    std::vector<poc::Elem> decided;
    std::vector<int> undecided_pairs;
    std::optional<BitVec> orientation;
};
BaseAt b_x(const Arrangement& A, const Point& x);

struct Chamber {
    std::vector<Point> polygon;  // CCW, clipped to the window; empty if the
                                 // cell misses the window entirely
    bool bounded;                // before clipping
    bool clipped;                // unbounded, or the clip touched the window edge
};
Chamber chamber(const Arrangement& A, const Point& x);  // NotGeneric

// Squared distance from x to cl(complement of e); 0 when x is already there.
Rat dist2_to_complement(const Arrangement& A, const Point& x, poc::Elem e);

// Squared width of the slab between the (parallel) walls of e < f.
Rat width2(const Arrangement& A, poc::Elem e, poc::Elem f);

// {h : x in h, h <= k}, ascending; k included. XNotInK unless x strictly in k.
std::vector<poc::Elem> s_set(const Arrangement& A, const Point& x, poc::Elem k);

// --- cells -------------------------------------------------------------------

// One record per cell of the whole arrangement (not only those meeting the
// window), found by single-sign-flip BFS from the basepoint's cell.
// Representatives are deterministic exact LP witnesses, preferred inside the
// window.
struct Cell {
    BitVec signs;  // bit i = minus side of pair i
    Point rep;
};
std::vector<Cell> enumerate_cells(const Arrangement& A);

// 2 * max L-infinity diameter over bounded cells; 0 when none is bounded.
// The default truncation margin.
Rat default_margin(const Arrangement& A);

// --- wall counting / PWP ------------------------------------------------------

// Strict containment of the closed Euclidean ball B(center, r) in the open
// halfplane of e; radius given squared.
bool ball_in_halfplane(const Arrangement& A, poc::Elem e, const Point& center,
                       const Rat& r2);

struct WallCount {
    bool finite = false;
    long count = 0;        // min over k >= B(x0,r) of |{h : B0 <= h <= k}|
    poc::Elem argmin_k = -1;
};
// WindowTooSmall when the ball of radius r + margin leaves the window.
WallCount f_of_r(const Arrangement& A, const Rat& r, const Rat& margin);

struct PwViolation {
    Point x;        // chamber representative
    poc::Elem h;    // far halfspace with no intermediate wall
    Rat d2;         // squared distance witness d(x, h*)^2 > C^2
};
// Checks every (cell representative x, side h) with d(x,h*) > C whose x and
// whose perpendicular foot on W(h) both sit >= C+margin inside the window;
// reports the pairs with no k satisfying x in k < h.
std::vector<PwViolation> check_parallel_walls(const Arrangement& A, const Rat& C,
                                              const Rat& margin);

// --- boundary directions -------------------------------------------------------

// T(xi): sides whose inward normal has positive inner product with xi.
std::vector<poc::Elem> boundary_T(const Arrangement& A, const Rat& xi_x, const Rat& xi_y);

// Longest strictly descending chain inside T(xi).
int conical_depth(const Arrangement& A, const Rat& xi_x, const Rat& xi_y);

// Consistency oracle for cubing enumeration over this arrangement.
std::function<bool(const BitVec&)> consistency_oracle(const Arrangement& A);

}  // namespace cubedual::walls
