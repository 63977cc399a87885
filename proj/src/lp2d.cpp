#include "cubedual/lp2d.hpp"

#include "cubedual/errors.hpp"

namespace cubedual::lp {

namespace {

// y >(=) slope*x + icept (lower) or y <(=) slope*x + icept (upper).
struct YBound {
    Rat slope, icept;
    bool strict;
};

// p*x + q >= 0 (or > 0).
struct XCon {
    Rat p, q;
    bool strict;
};

struct Bound {
    Rat v;
    bool strict;
};

// Tightens a lower bound: larger value wins; on ties strict wins.
void raise(std::optional<Bound>& lo, const Rat& v, bool strict) {
    if (!lo || v > lo->v)
        lo = Bound{v, strict};
    else if (v == lo->v)
        lo->strict = lo->strict || strict;
}

void lower(std::optional<Bound>& hi, const Rat& v, bool strict) {
    if (!hi || v < hi->v)
        hi = Bound{v, strict};
    else if (v == hi->v)
        hi->strict = hi->strict || strict;
}

// Picks a point of the (nonempty) interval; midpoint inside, bound +- 1 on
// rays, 0 when unconstrained.
Rat pick(const std::optional<Bound>& lo, const std::optional<Bound>& hi) {
    if (lo && hi) {
        if (lo->v == hi->v) return lo->v;
        return (lo->v + hi->v) / 2;
    }
    if (lo) return lo->v + 1;
    if (hi) return hi->v - 1;
    return Rat(0);
}

bool interval_nonempty(const std::optional<Bound>& lo, const std::optional<Bound>& hi) {
    if (!lo || !hi) return true;
    if (lo->v < hi->v) return true;
    return lo->v == hi->v && !lo->strict && !hi->strict;
}

}  // namespace

std::optional<Point> feasible_point(const std::vector<Constraint>& cons) {
    std::vector<YBound> los, his;
    std::vector<XCon> xcons;
    for (const auto& c : cons) {
        int sb = sgn(c.b);
        if (sb > 0)
            los.push_back({-c.a / c.b, -c.c / c.b, c.strict});
        else if (sb < 0)
            his.push_back({-c.a / c.b, -c.c / c.b, c.strict});
        else
            xcons.push_back({c.a, c.c, c.strict});
    }
    // Eliminate y: every lower line must sit below every upper line.
    for (const auto& l : los)
        for (const auto& u : his)
            xcons.push_back({u.slope - l.slope, u.icept - l.icept, l.strict || u.strict});

    std::optional<Bound> xlo, xhi;
    for (const auto& xc : xcons) {
        int sp = sgn(xc.p);
        if (sp > 0)
            raise(xlo, -xc.q / xc.p, xc.strict);
        else if (sp < 0)
            lower(xhi, -xc.q / xc.p, xc.strict);
        else if (sgn(xc.q) < 0 || (xc.q == 0 && xc.strict))
            return std::nullopt;
    }
    if (!interval_nonempty(xlo, xhi)) return std::nullopt;
    Rat x = pick(xlo, xhi);

    std::optional<Bound> ylo, yhi;
    for (const auto& l : los) raise(ylo, l.slope * x + l.icept, l.strict);
    for (const auto& u : his) lower(yhi, u.slope * x + u.icept, u.strict);
    if (!interval_nonempty(ylo, yhi))
        throw CrossCheckFailed("elimination promised a feasible y and lied");
    Point w{x, pick(ylo, yhi)};
    for (const auto& c : cons) {
        Rat v = c.a * w.x + c.b * w.y + c.c;
        if (sgn(v) < 0 || (v == 0 && c.strict))
            throw CrossCheckFailed("witness fails a constraint it was built from");
    }
    return w;
}

std::optional<Point> feasible_point_near(const std::vector<Constraint>& cons,
                                         const Point& center, const Rat& radius) {
    std::vector<Constraint> boxed = cons;
    boxed.push_back({Rat(1), Rat(0), radius - center.x, false});   //  x >= cx - R
    boxed.push_back({Rat(-1), Rat(0), radius + center.x, false});  //  x <= cx + R
    boxed.push_back({Rat(0), Rat(1), radius - center.y, false});
    boxed.push_back({Rat(0), Rat(-1), radius + center.y, false});
    if (auto w = feasible_point(boxed)) return w;
    return feasible_point(cons);
}

std::vector<Point> clip_polygon(const std::vector<Point>& poly,
                                const Rat& a, const Rat& b, const Rat& c) {
    std::vector<Point> out;
    const size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        const Point& p = poly[i];
        const Point& q = poly[(i + 1) % n];
        Rat fp = a * p.x + b * p.y + c;
        Rat fq = a * q.x + b * q.y + c;
        bool pin = sgn(fp) >= 0, qin = sgn(fq) >= 0;
        if (pin) out.push_back(p);
        if (pin != qin) {
            Rat t = fp / (fp - fq);  // fp != fq since signs differ strictly on one side
            out.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
        }
    }
    // Collapse duplicate consecutive vertices the crossing insertion can make.
    std::vector<Point> dedup;
    for (const auto& p : out) {
        if (dedup.empty() || !(dedup.back() == p)) dedup.push_back(p);
    }
    while (dedup.size() > 1 && dedup.front() == dedup.back()) dedup.pop_back();
    return dedup;
}

}  // namespace cubedual::lp
