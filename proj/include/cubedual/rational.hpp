#pragma once

#include <gmpxx.h>

#include <string>

#include "cubedual/errors.hpp"

namespace cubedual {

// Exact rational scalar used by every geometric predicate. Doubles appear
// only when numbers leave the library (reports, SVG coordinates).
using Rat = mpq_class;
using Int = mpz_class;

// mpq_class(num, den) does not canonicalize on its own; route construction
// through here.
inline Rat make_rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat make_rat(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Accepts "p", "p/q", "-p/q".
inline Rat parse_rat(const std::string& s) {
    Rat r;
    if (s.empty() || r.set_str(s, 10) != 0)
        throw SchemaError("bad rational literal: '" + s + "'");
    if (r.get_den() == 0)
        throw SchemaError("zero denominator in rational literal: '" + s + "'");
    r.canonicalize();
    return r;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline double rat_double(const Rat& r) { return r.get_d(); }

inline int sgn(const Rat& r) { return ::sgn(r); }

struct Point {
    Rat x;
    Rat y;

    bool operator==(const Point& o) const { return x == o.x && y == o.y; }
};

// Squared Euclidean distance; exact.
inline Rat dist2(const Point& p, const Point& q) {
    Rat dx = p.x - q.x;
    Rat dy = p.y - q.y;
    return dx * dx + dy * dy;
}

// L-infinity distance; exact. Window containment checks live in this metric.
inline Rat linf(const Point& p, const Point& q) {
    Rat dx = abs(p.x - q.x);
    Rat dy = abs(p.y - q.y);
    return dx > dy ? dx : dy;
}

}  // namespace cubedual
