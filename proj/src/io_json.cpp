#include "cubedual/io_json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cubedual/errors.hpp"
#include "cubedual/lp2d.hpp"

namespace cubedual::io {

using cube::Flag;
using poc::Elem;

namespace {

json rat_json(const Rat& r) { return rat_str(r); }

Rat rat_from(const json& j) {
    if (!j.is_string()) throw SchemaError("expected rational as \"p/q\" string");
    return parse_rat(j.get<std::string>());
}

json point_json(const Point& p) { return json::array({rat_json(p.x), rat_json(p.y)}); }

Point point_from(const json& j) {
    if (!j.is_array() || j.size() != 2) throw SchemaError("expected point as [x, y]");
    return {rat_from(j[0]), rat_from(j[1])};
}

void need(const json& j, const char* key) {
    if (!j.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
}

void check_schema(const json& j, const std::string& want) {
    need(j, "schema");
    if (j["schema"] != want)
        throw SchemaError("expected schema '" + want + "', got '" +
                          j["schema"].dump() + "'");
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

json pocset_to_json(const poc::PocSet& P) {
    json j;
    j["schema"] = "pocset/1";
    j["n_pairs"] = P.n_pairs();
    json labels = json::array();
    for (int i = 0; i < P.n_pairs(); ++i)
        labels.push_back(P.label(i));
    j["labels"] = labels;
    json rel = json::array();
    for (Elem e = 0; e < P.n_elems(); ++e)
        for (Elem f = 0; f < P.n_elems(); ++f)
            if (e != f && P.leq(e, f)) rel.push_back(json::array({e, f}));
    j["relations"] = rel;
    return j;
}

poc::PocSet pocset_from_json(const json& j) {
    check_schema(j, "pocset/1");
    need(j, "n_pairs");
    need(j, "relations");
    int n = j["n_pairs"].get<int>();
    std::vector<std::pair<Elem, Elem>> rel;
    for (const json& r : j["relations"]) {
        if (!r.is_array() || r.size() != 2) throw SchemaError("relation entries are [e, f]");
        rel.push_back({r[0].get<Elem>(), r[1].get<Elem>()});
    }
    std::vector<std::string> labels;
    if (j.contains("labels"))
        for (const json& l : j["labels"])
            labels.push_back(l.get<std::string>());
    return poc::PocSet::from_relations(n, rel, labels);
}

json arrangement_to_json(const walls::Arrangement& A) {
    json j;
    j["schema"] = "arrangement/1";
    json lines = json::array(), sides = json::array(), labels = json::array();
    for (int i = 0; i < A.n_pairs(); ++i) {
        const walls::Line& L = A.line(i);
        lines.push_back(json::array(
            {L.a.get_str(), L.b.get_str(), L.c.get_str()}));
        sides.push_back(A.plus_sign(i));
        labels.push_back(A.pocset().label(i));
    }
    j["lines"] = lines;
    j["sides"] = sides;
    j["labels"] = labels;
    j["window"] = {{"center", point_json(A.window().center)},
                   {"radius", rat_json(A.window().radius)}};
    j["basepoint"] = point_json(A.basepoint());
    j["base_radius"] = rat_json(A.base_radius());
    return j;
}

walls::Arrangement arrangement_from_json(const json& j) {
    check_schema(j, "arrangement/1");
    for (const char* k : {"lines", "sides", "window", "basepoint", "base_radius"})
        need(j, k);
    std::vector<walls::Line> lines;
    for (const json& l : j["lines"]) {
        if (!l.is_array() || l.size() != 3) throw SchemaError("line entries are [a, b, c]");
        lines.push_back(walls::make_line(rat_from(l[0]), rat_from(l[1]), rat_from(l[2])));
    }
    std::vector<int> sides = j["sides"].get<std::vector<int>>();
    std::vector<std::string> labels;
    if (j.contains("labels"))
        labels = j["labels"].get<std::vector<std::string>>();
    need(j["window"], "center");
    need(j["window"], "radius");
    walls::Window win{point_from(j["window"]["center"]), rat_from(j["window"]["radius"])};
    return walls::Arrangement::make(std::move(lines), std::move(sides), win,
                                    point_from(j["basepoint"]), rat_from(j["base_radius"]),
                                    std::move(labels));
}

json graph_to_json(const poc::PocSet* P, const cube::MedianGraph& G) {
    json j;
    j["schema"] = "graph/1";
    j["n_pairs"] = G.n_pairs;
    j["complete"] = G.complete;
    json nodes = json::array();
    for (int v = 0; v < G.n_verts(); ++v) {
        json n;
        n["id"] = v;
        n["bits"] = G.verts[v].to_string();
        if (G.consistent[v] == Flag::unset)
            n["consistent"] = nullptr;
        else
            n["consistent"] = G.consistent[v] == Flag::yes;
        if (G.height[v] < 0)
            n["height"] = nullptr;
        else
            n["height"] = G.height[v];
        nodes.push_back(n);
    }
    j["nodes"] = nodes;
    json edges = json::array();
    for (const cube::Edge& e : G.edges)
        edges.push_back({{"u", e.u}, {"v", e.v}, {"pair", e.pair}});
    j["edges"] = edges;
    json cubes = json::array();
    if (P)
        for (const cube::CubeRecord& c : cube::all_maximal_cubes(*P, G))
            cubes.push_back({{"base", c.base}, {"pairs", c.pairs}});
    j["cubes"] = cubes;
    return j;
}

std::string graph_to_dot(const cube::MedianGraph& G) {
    std::ostringstream out;
    out << "graph pi {\n";
    if (G.n_verts() > 0) out << "  node [shape=circle fontsize=10];\n";
    for (int v = 0; v < G.n_verts(); ++v) {
        out << "  v" << v;
        if (G.consistent[v] == Flag::yes)
            out << " [style=filled fillcolor=lightblue]";
        else if (G.consistent[v] == Flag::no)
            out << " [style=filled fillcolor=lightgray]";
        out << ";\n";
    }
    for (const cube::Edge& e : G.edges)
        out << "  v" << e.u << " -- v" << e.v << " [label=\"" << e.pair << "\"];\n";
    out << "}\n";
    return out.str();
}

namespace {

// Visible piece of a line inside the window square, as draw endpoints.
std::vector<Point> line_in_window(const walls::Line& L, const walls::Window& w) {
    Rat x0 = w.center.x - w.radius, x1 = w.center.x + w.radius;
    Rat y0 = w.center.y - w.radius, y1 = w.center.y + w.radius;
    std::vector<Point> pts;
    auto push = [&](const Point& p) {
        if (p.x < x0 || p.x > x1 || p.y < y0 || p.y > y1) return;
        for (const Point& q : pts)
            if (q == p) return;
        pts.push_back(p);
    };
    Rat a(L.a), b(L.b), c(L.c);
    if (sgn(b) != 0) {
        push({x0, (-c - a * x0) / b});
        push({x1, (-c - a * x1) / b});
    }
    if (sgn(a) != 0) {
        push({(-c - b * y0) / a, y0});
        push({(-c - b * y1) / a, y1});
    }
    return pts;
}

const char* kHeat[] = {"#4575b4", "#74add1", "#abd9e9", "#e0f3f8", "#ffffbf",
                       "#fee090", "#fdae61", "#f46d43", "#d73027", "#a50026"};

}  // namespace

std::string svg_overlay(const walls::Arrangement& A, const poc::PocSet& P,
                        const cube::MedianGraph& G, int target) {
    if (target < 0 || target >= G.n_verts())
        throw SchemaError("svg_overlay: target vertex out of range");
    const walls::Window& w = A.window();
    double r = rat_double(w.radius), cx = rat_double(w.center.x), cy = rat_double(w.center.y);
    double pad = 0.04 * r;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt(cx - r - pad) << " "
        << fmt(-(cy + r + pad)) << " " << fmt(2 * (r + pad)) << " " << fmt(2 * (r + pad))
        << "\">\n<g transform=\"scale(1,-1)\">\n";
    out << "<rect x=\"" << fmt(cx - r) << "\" y=\"" << fmt(cy - r) << "\" width=\"" << fmt(2 * r)
        << "\" height=\"" << fmt(2 * r) << "\" fill=\"white\" stroke=\"black\" stroke-width=\""
        << fmt(r / 200) << "\"/>\n";

    // chambers tinted by flip distance to the target orientation
    for (const walls::Cell& cell : walls::enumerate_cells(A)) {
        walls::Chamber ch = walls::chamber(A, cell.rep);
        if (ch.polygon.size() < 3) continue;
        size_t d = cell.signs.count_xor(G.verts[target]);
        out << "<polygon points=\"";
        for (const Point& p : ch.polygon)
            out << fmt(rat_double(p.x)) << "," << fmt(rat_double(p.y)) << " ";
        out << "\" fill=\"" << kHeat[std::min(d, size_t(9))]
            << "\" fill-opacity=\"0.55\" stroke=\"none\"/>\n";
    }

    // the target's geometric shadow, when its member set is trustworthy
    try {
        ana::ShadowRecord sh = ana::shadow(P, G, target);
        std::vector<Point> region = ana::shadow_region(A, sh);
        if (region.size() >= 3) {
            out << "<polygon points=\"";
            for (const Point& p : region)
                out << fmt(rat_double(p.x)) << "," << fmt(rat_double(p.y)) << " ";
            out << "\" fill=\"none\" stroke=\"#6a0dad\" stroke-width=\"" << fmt(r / 80)
                << "\" stroke-dasharray=\"" << fmt(r / 40) << "\"/>\n";
        }
    } catch (const Error&) {
        // partial enumeration: draw without the overlay
    }

    for (int i = 0; i < A.n_pairs(); ++i) {
        std::vector<Point> seg = line_in_window(A.line(i), w);
        if (seg.size() < 2) continue;
        out << "<line x1=\"" << fmt(rat_double(seg.front().x)) << "\" y1=\""
            << fmt(rat_double(seg.front().y)) << "\" x2=\"" << fmt(rat_double(seg.back().x))
            << "\" y2=\"" << fmt(rat_double(seg.back().y))
            << "\" stroke=\"black\" stroke-width=\"" << fmt(r / 300) << "\"/>\n";
    }

    out << "<circle cx=\"" << fmt(rat_double(A.basepoint().x)) << "\" cy=\""
        << fmt(rat_double(A.basepoint().y)) << "\" r=\"" << fmt(r / 100)
        << "\" fill=\"red\"/>\n";
    out << "</g>\n</svg>\n";
    return out.str();
}

std::string dump_sorted(const json& j) { return j.dump(2) + "\n"; }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SchemaError("cannot write '" + path + "'");
    out << data;
}

json load_json(const std::string& path) {
    try {
        return json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw SchemaError("bad JSON in '" + path + "': " + e.what());
    }
}

}  // namespace cubedual::io
