#pragma once

#include <optional>
#include <vector>

#include "cubedual/rational.hpp"

namespace cubedual::lp {

// One linear condition a*x + b*y + c >= 0 (or > 0 when strict).
struct Constraint {
    Rat a, b, c;
    bool strict = false;
};

// Exact satisfiability of a conjunction of halfplane conditions, by
// Fourier-Motzkin elimination of y. Returns a rational witness point when
// feasible. Deterministic: the witness is a function of the constraint list
// only (interval midpoints, or bound +/- 1 on rays, 0 when unconstrained).
std::optional<Point> feasible_point(const std::vector<Constraint>& cons);

// Same, but prefers a witness inside the closed axis-aligned square
// [center +- radius]^2 when the feasible set meets it; falls back to the
// unconstrained witness otherwise.
std::optional<Point> feasible_point_near(const std::vector<Constraint>& cons,
                                         const Point& center, const Rat& radius);

// Clips a convex polygon (CCW vertex list) by the closed halfplane
// a*x + b*y + c >= 0 (Sutherland-Hodgman step, exact).
std::vector<Point> clip_polygon(const std::vector<Point>& poly,
                                const Rat& a, const Rat& b, const Rat& c);

}  // namespace cubedual::lp
