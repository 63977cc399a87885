// Command-line front end: generate inputs, enumerate dual cubings, build
// analysis reports, run invariant suites, export figures.
//
// Exit codes: 0 pass, 1 suite violation, 2 usage/schema error, 3 budget cut.

#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cubedual/analysis.hpp"
#include "cubedual/cubing.hpp"
#include "cubedual/errors.hpp"
#include "cubedual/io_json.hpp"
#include "cubedual/pocset.hpp"
#include "cubedual/rational.hpp"
#include "cubedual/walls2d.hpp"

namespace {

using namespace cubedual;
using nlohmann::json;

struct Budgets {
    size_t vertices = 1'000'000;
    std::optional<int> radius;
    int height_cap = 2;
};

void add_budget_flags(CLI::App* cmd, Budgets& b) {
    cmd->add_option("--budget-vertices", b.vertices, "enumeration vertex budget");
    cmd->add_option("--budget-radius", b.radius, "enumeration delta-radius around the seed");
    cmd->add_option("--height-cap", b.height_cap, "height cap for oracle checks");
}

// A loaded input file: an arrangement (with its derived poc-set) or a bare
// poc-set. `doc` keeps the original document so violation records can embed
// a self-contained reproducer.
struct Input {
    std::optional<walls::Arrangement> arr;
    poc::PocSet P;
    json doc;
    std::string path;
};

Input input_from_doc(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("schema") || !j["schema"].is_string())
        throw SchemaError(path + ": missing schema tag");
    Input in;
    in.doc = j;
    in.path = path;
    std::string s = j["schema"];
    if (s == "arrangement/1") {
        in.arr = io::arrangement_from_json(j);
        in.P = in.arr->pocset();
    } else if (s == "pocset/1") {
        in.P = io::pocset_from_json(j);
    } else {
        throw SchemaError(path + ": unsupported schema '" + s + "'");
    }
    return in;
}

Input load_input(const std::string& path) { return input_from_doc(io::load_json(path), path); }

cube::MedianGraph enumerate_input(const Input& in, const Budgets& b) {
    cube::Budget budget{b.vertices, b.radius};
    if (in.arr) {
        auto base = walls::b_x(*in.arr, in.arr->basepoint());
        return cube::enumerate_pi(in.P, *base.orientation, walls::consistency_oracle(*in.arr),
                                  budget);
    }
    BitVec seed = in.P.extend_to_ultrafilter({});
    return cube::enumerate_pi(in.P, seed, {}, budget);
}

void emit(const std::string& data, const std::string& out) {
    if (out.empty())
        std::cout << data;
    else
        io::write_file(out, data);
}

// --- generate ----------------------------------------------------------------

struct GenOpts {
    std::string kind;
    int N = 2;
    int n = 4;
    int k = 3;
    uint64_t seed = 1;
    std::string gap = "10";
    std::string shear;
    std::string base_radius = "0";
    std::string wcx, wcy, wrad;
    std::string out;
};

json do_generate(const GenOpts& g) {
    walls::WindowOverride w;
    if (!g.wcx.empty() || !g.wcy.empty()) {
        if (g.wcx.empty() || g.wcy.empty())
            throw SchemaError("window center needs both --window-cx and --window-cy");
        w.center = Point{parse_rat(g.wcx), parse_rat(g.wcy)};
    }
    if (!g.wrad.empty()) w.radius = parse_rat(g.wrad);

    if (g.kind == "hex")
        return io::arrangement_to_json(g.shear.empty()
                                           ? walls::arrangement_hex(g.N, w)
                                           : walls::arrangement_hex(g.N, w, parse_rat(g.shear)));
    if (g.kind == "triangle") return io::arrangement_to_json(walls::arrangement_triangle(w));
    if (g.kind == "grid")
        return io::arrangement_to_json(walls::arrangement_grid(g.N, w, parse_rat(g.base_radius)));
    if (g.kind == "random")
        return io::arrangement_to_json(walls::arrangement_random(g.n, g.seed, w));
    if (g.kind == "two-parallel")
        return io::arrangement_to_json(walls::arrangement_two_parallel(parse_rat(g.gap), w));
    if (g.kind == "roller-chain") return io::pocset_to_json(poc::roller_chain_example(g.n));
    if (g.kind == "star-tree") return io::pocset_to_json(poc::star_tree_example(g.n));
    if (g.kind == "free") return io::pocset_to_json(poc::free_example(g.k));
    throw SchemaError("unknown generator kind '" + g.kind + "'");
}

// --- analyze -----------------------------------------------------------------

struct AnaOpts {
    std::string input, out, svg;
    bool qi = false;
    int samples = 500;
    uint64_t seed = 1;
    std::vector<long> radii;
    std::string margin;
    int target = 0;
};

int do_analyze(const AnaOpts& o, const Budgets& b) {
    Input in = load_input(o.input);
    if (!in.arr) throw SchemaError("analyze needs an arrangement input");
    const walls::Arrangement& A = *in.arr;
    auto G = enumerate_input(in, b);

    json rep;
    rep["schema"] = "report/1";
    rep["input"] = in.doc;
    rep["complete"] = G.complete;
    rep["n_pairs"] = G.n_pairs;
    rep["n_vertices"] = G.n_verts();
    long ncons = 0;
    for (int v = 0; v < G.n_verts(); ++v) ncons += G.is_consistent(v);
    rep["n_consistent"] = ncons;

    auto H = ana::heights(G);
    rep["heights"] = {{"histogram", H.level_counts},
                      {"max", H.max_height},
                      {"untrusted", H.untrusted}};

    auto sp = ana::special_pairs(A);
    json sps = json::array();
    Rat maxw(0);
    for (auto& s : sp) {
        sps.push_back({{"a", s.a}, {"b", s.b}, {"width2", rat_str(s.width2)}});
        if (s.width2 > maxw) maxw = s.width2;
    }
    rep["special_pairs"] = sps;
    rep["max_width2"] = rat_str(maxw);

    std::optional<double> lam;
    if (o.qi) {
        auto q = ana::qi_report(A, G, o.samples, o.seed);
        lam = q.lambda_hat;
        rep["qi"] = {{"lambda", q.lambda_hat},
                     {"eps", q.eps_hat},
                     {"n_samples", long(q.samples.size())},
                     {"seed", o.seed}};
    }
    if (!o.radii.empty()) {
        Rat margin = o.margin.empty() ? walls::default_margin(A) : parse_rat(o.margin);
        auto srep = ana::slope_report(A, G, o.radii, margin, lam);
        json rows = json::array();
        for (auto& r : srep.rows)
            rows.push_back({{"r", r.r}, {"finite", r.finite}, {"f", r.count}, {"ratio", r.ratio}});
        json chain = json::array();
        for (auto& c : srep.chain)
            chain.push_back({{"e", c.e},
                             {"d_all", c.d_all},
                             {"d_cons", c.d_cons},
                             {"trusted", c.trusted},
                             {"ok", c.ok}});
        rep["slope"] = {{"rows", rows},
                        {"chain", chain},
                        {"chain_ok", srep.chain_ok},
                        {"band_ok", srep.band_ok}};
    }
    if (!o.svg.empty()) io::write_file(o.svg, io::svg_overlay(A, in.P, G, o.target));
    emit(io::dump_sorted(rep), o.out);
    return G.complete ? 0 : 3;
}

// --- check suites --------------------------------------------------------------

struct CheckOpts {
    std::vector<std::string> inputs;
    std::string suite, out, replay;
    std::string C;
    std::string margin;
    int samples = 100;
    uint64_t seed = 1;
    std::vector<long> radii{3, 4, 5, 6, 7, 8};
};

struct SuiteOutcome {
    json violations = json::array();
    long checked = 0;
    long skipped = 0;         // out of scope (truncation-boundary quarantine)
    bool budget_cut = false;  // enumeration truncated where the suite needs all of it
};

std::vector<int> bfs_dist(const cube::MedianGraph& G, int src) {
    std::vector<int> d(G.n_verts(), -1);
    std::vector<int> q{src};
    d[src] = 0;
    for (size_t i = 0; i < q.size(); ++i) {
        int v = q[i];
        for (auto [w, p] : G.adj[v])
            if (d[w] < 0) {
                d[w] = d[v] + 1;
                q.push_back(w);
            }
    }
    return d;
}

// Median axioms, graph metric = Δ, flip involution, interval equality.
// Exhaustive on small graphs, seeded samples past the caps.
SuiteOutcome suite_median_axioms(const Input& in, const CheckOpts& o, const Budgets& b) {
    SuiteOutcome r;
    auto G = enumerate_input(in, b);
    if (!G.complete) {
        r.budget_cut = true;
        return r;
    }
    const poc::PocSet& P = in.P;
    const int n = G.n_verts();
    std::mt19937_64 rng(o.seed);
    auto pick = [&]() { return int(rng() % n); };
    auto viol = [&](const char* kind, json extra) {
        extra["kind"] = kind;
        r.violations.push_back(std::move(extra));
    };

    // Degree = |min set|; flipping forth and back across every edge is the identity.
    for (int v = 0; v < n; ++v) {
        auto mins = P.min_set(G.verts[v]);
        if (mins.size() != G.adj[v].size()) viol("degree", {{"vertex", v}});
        for (poc::Elem a : mins) {
            BitVec w = P.flip(G.verts[v], a);
            if (P.flip(w, poc::star(a)) != G.verts[v])
                viol("flip-involution", {{"vertex", v}, {"elem", a}});
            ++r.checked;
        }
    }

    // Graph metric vs Δ, all pairs when the distance matrix fits.
    std::vector<int> sources;
    if (n <= 2000)
        for (int v = 0; v < n; ++v) sources.push_back(v);
    else
        for (int i = 0; i < 64; ++i) sources.push_back(pick());
    for (int s : sources) {
        auto d = bfs_dist(G, s);
        for (int v = 0; v < n; ++v) {
            if (d[v] != G.verts[s].count_xor(G.verts[v]))
                viol("graph-metric", {{"u", s}, {"v", v}, {"bfs", d[v]}});
            ++r.checked;
        }
    }

    // Constructive geodesics on sampled pairs (lengths are covered above).
    long n_pairs_checked = 0;
    auto check_geo = [&](int u, int v) {
        auto path = cube::geodesic(P, G, u, v);
        if (int(path.size()) != G.verts[u].count_xor(G.verts[v]) + 1)
            viol("geodesic-length", {{"u", u}, {"v", v}});
        ++n_pairs_checked;
    };
    if (long(n) * n <= 4000)
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) check_geo(u, v);
    else
        for (int i = 0; i < 2000; ++i) check_geo(pick(), pick());
    r.checked += n_pairs_checked;

    // Median triples: the majority orientation is an enumerated vertex and
    // lies in all three intervals. Exhaustive up to ~2.5e7 triples.
    bool exhaustive = n >= 3 && (long(n) * (n - 1) * (n - 2)) / 6 <= 25'000'000;
    auto check_triple = [&](int i, int j, int k) {
        BitVec m = P.median(G.verts[i], G.verts[j], G.verts[k]);
        int id = G.id_of(m);
        if (id < 0) {
            viol("median-missing", {{"a", i}, {"b", j}, {"c", k}});
            return;
        }
        auto between = [&](const BitVec& a, const BitVec& bb) {
            return a.count_xor(m) + m.count_xor(bb) == a.count_xor(bb);
        };
        if (!between(G.verts[i], G.verts[j]) || !between(G.verts[j], G.verts[k]) ||
            !between(G.verts[i], G.verts[k]))
            viol("median-interval", {{"a", i}, {"b", j}, {"c", k}});
        ++r.checked;
    };
    if (exhaustive) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                for (int k = j + 1; k < n; ++k) check_triple(i, j, k);
    } else {
        for (int t = 0; t < 20'000; ++t) check_triple(pick(), pick(), pick());
    }

    // m(a, a, b) = a and the interval scan: metric interval from BFS distances
    // agrees with the Δ interval, on sampled pairs.
    for (int t = 0; t < std::min(512L, long(n) * n); ++t) {
        int u = pick(), v = pick();
        if (P.median(G.verts[u], G.verts[u], G.verts[v]) != G.verts[u])
            viol("median-absorb", {{"u", u}, {"v", v}});
        auto du = bfs_dist(G, u), dv = bfs_dist(G, v);
        int duv = G.verts[u].count_xor(G.verts[v]);
        for (int w = 0; w < n; ++w) {
            bool metric = du[w] + dv[w] == duv;
            bool bits = G.verts[u].count_xor(G.verts[w]) + G.verts[w].count_xor(G.verts[v]) == duv;
            if (metric != bits) viol("interval", {{"u", u}, {"v", v}, {"w", w}});
        }
        ++r.checked;
    }
    return r;
}

SuiteOutcome suite_shadow_lemmas(const Input& in, const CheckOpts&, const Budgets& b) {
    if (!in.arr) throw SchemaError("shadow-lemmas needs an arrangement input");
    SuiteOutcome r;
    auto G = enumerate_input(in, b);
    auto rep = ana::shadow_monotonicity_check(in.P, G);
    r.checked = rep.vertices_checked;
    r.skipped = rep.skipped_boundary;
    r.budget_cut = rep.skipped_untrusted > 0;
    for (auto& s : rep.violations)
        r.violations.push_back({{"kind", "shadow"}, {"detail", s}});
    return r;
}

SuiteOutcome suite_height_oracle(const Input& in, const CheckOpts&, const Budgets& b) {
    if (!in.arr) throw SchemaError("height-oracle needs an arrangement input");
    SuiteOutcome r;
    auto G = enumerate_input(in, b);
    ana::heights(G);
    r.budget_cut = !G.complete;
    for (int v = 0; v < G.n_verts(); ++v) {
        if (!G.height_trusted[v] || G.height[v] > b.height_cap) continue;
        int by_oracle = -1;
        try {
            by_oracle = ana::height_oracle(*in.arr, G.verts[v], b.height_cap);
        } catch (const CapExceeded&) {
            // leave -1: the oracle found no small deletion set where BFS did
        }
        if (by_oracle != G.height[v])
            r.violations.push_back({{"kind", "height-oracle"},
                                    {"vertex", v},
                                    {"bfs", G.height[v]},
                                    {"oracle", by_oracle}});
        ++r.checked;
    }
    return r;
}

SuiteOutcome suite_duality(const Input& in, const CheckOpts&, const Budgets& b) {
    SuiteOutcome r;
    auto G = enumerate_input(in, b);
    if (!G.complete) {
        r.budget_cut = true;
        return r;
    }
    poc::PocSet Q = cube::hyperplane_dual(G);
    if (!poc::pocsets_isomorphic(in.P, Q))
        r.violations.push_back(
            {{"kind", "duality"}, {"detail", "recovered poc-set is not isomorphic to the input"}});
    r.checked = 1;
    return r;
}

SuiteOutcome suite_pwp(const Input& in, const CheckOpts& o, const Budgets&) {
    if (!in.arr) throw SchemaError("pwp needs an arrangement input");
    if (o.C.empty()) throw SchemaError("pwp needs --C");
    const walls::Arrangement& A = *in.arr;
    SuiteOutcome r;
    Rat C = parse_rat(o.C);
    Rat margin = o.margin.empty() ? walls::default_margin(A) : parse_rat(o.margin);
    for (auto& v : walls::check_parallel_walls(A, C, margin))
        r.violations.push_back({{"kind", "pwp"},
                                {"x", {rat_str(v.x.x), rat_str(v.x.y)}},
                                {"h", v.h},
                                {"d2", rat_str(v.d2)}});
    r.checked = 1;
    return r;
}

SuiteOutcome suite_distance_to_wall(const Input& in, const CheckOpts& o, const Budgets& b) {
    if (!in.arr) throw SchemaError("distance-to-wall needs an arrangement input");
    const walls::Arrangement& A = *in.arr;
    SuiteOutcome r;
    auto G = enumerate_input(in, b);
    if (!G.complete) {
        r.budget_cut = true;
        return r;
    }
    std::mt19937_64 rng(o.seed);
    const walls::Window& w = A.window();
    auto draw = [&]() {
        for (int t = 0; t < 4096; ++t) {
            long kx = long(rng() % 25) - 12, ky = long(rng() % 25) - 12;
            Point p{w.center.x + Rat(kx) * w.radius / 16, w.center.y + Rat(ky) * w.radius / 16};
            if (A.is_generic(p)) return p;
        }
        throw GenerationFailed("distance-to-wall: no generic sample point found");
    };
    for (int i = 0; i < o.samples; ++i) {
        Point x = draw();
        int pair = int(rng() % A.n_pairs());
        BitVec pix = *walls::b_x(A, x).orientation;
        poc::Elem e = poc::chosen(pix, pair);
        long expected = long(walls::s_set(A, x, e).size());
        long best = -1;
        for (int v = 0; v < G.n_verts(); ++v) {
            if (poc::chosen(G.verts[v], pair) != poc::star(e)) continue;
            long d = pix.count_xor(G.verts[v]);
            if (best < 0 || d < best) best = d;
        }
        if (best != expected)
            r.violations.push_back({{"kind", "distance-to-wall"},
                                    {"x", {rat_str(x.x), rat_str(x.y)}},
                                    {"pair", pair},
                                    {"expected", expected},
                                    {"delta", best}});
        ++r.checked;
    }
    return r;
}

SuiteOutcome suite_slope_chain(const Input& in, const CheckOpts& o, const Budgets& b) {
    if (!in.arr) throw SchemaError("slope-chain needs an arrangement input");
    const walls::Arrangement& A = *in.arr;
    SuiteOutcome r;
    auto G = enumerate_input(in, b);
    Rat margin = o.margin.empty() ? walls::default_margin(A) : parse_rat(o.margin);
    auto rep = ana::slope_report(A, G, o.radii, margin, {});
    for (auto& c : rep.chain) {
        if (!c.trusted) {
            r.budget_cut = true;
            continue;
        }
        if (!c.ok)
            r.violations.push_back({{"kind", "slope-chain"},
                                    {"e", c.e},
                                    {"d_all", c.d_all},
                                    {"d_cons", c.d_cons}});
        ++r.checked;
    }
    return r;
}

SuiteOutcome run_suite(const std::string& suite, const Input& in, const CheckOpts& o,
                       const Budgets& b) {
    if (suite == "median-axioms") return suite_median_axioms(in, o, b);
    if (suite == "shadow-lemmas") return suite_shadow_lemmas(in, o, b);
    if (suite == "height-oracle") return suite_height_oracle(in, o, b);
    if (suite == "duality-roundtrip") return suite_duality(in, o, b);
    if (suite == "pwp") return suite_pwp(in, o, b);
    if (suite == "distance-to-wall") return suite_distance_to_wall(in, o, b);
    if (suite == "slope-chain") return suite_slope_chain(in, o, b);
    throw SchemaError("unknown suite '" + suite + "'");
}

json params_json(const CheckOpts& o, const Budgets& b) {
    json radii = json::array();
    for (long r : o.radii) radii.push_back(r);
    return {{"C", o.C},
            {"margin", o.margin},
            {"samples", o.samples},
            {"seed", o.seed},
            {"radii", radii},
            {"budget_vertices", b.vertices},
            {"budget_radius", b.radius ? json(*b.radius) : json()},
            {"height_cap", b.height_cap}};
}

void params_load(const json& p, CheckOpts& o, Budgets& b) {
    o.C = p.at("C").get<std::string>();
    o.margin = p.at("margin").get<std::string>();
    o.samples = p.at("samples").get<int>();
    o.seed = p.at("seed").get<uint64_t>();
    o.radii.clear();
    for (auto& r : p.at("radii")) o.radii.push_back(r.get<long>());
    b.vertices = p.at("budget_vertices").get<size_t>();
    if (p.at("budget_radius").is_null())
        b.radius.reset();
    else
        b.radius = p.at("budget_radius").get<int>();
    b.height_cap = p.at("height_cap").get<int>();
}

int do_check(const CheckOpts& o, const Budgets& b) {
    if (o.suite.empty()) throw SchemaError("check needs --suite (or --replay)");
    if (o.inputs.empty()) throw SchemaError("check needs at least one input file");
    json runs = json::array();
    bool any_viol = false, any_cut = false;
    for (auto& path : o.inputs) {
        Input in = load_input(path);
        auto out = run_suite(o.suite, in, o, b);
        any_viol |= !out.violations.empty();
        any_cut |= out.budget_cut;
        runs.push_back({{"suite", o.suite},
                        {"path", path},
                        {"input", in.doc},
                        {"params", params_json(o, b)},
                        {"checked", out.checked},
                        {"skipped", out.skipped},
                        {"budget_cut", out.budget_cut},
                        {"violations", out.violations}});
        std::cerr << o.suite << " on " << path << ": " << out.violations.size() << " violation(s), "
                  << out.checked << " checked, " << out.skipped << " out of scope"
                  << (out.budget_cut ? " [budget cut]" : "") << "\n";
    }
    json rep = {{"schema", "check-report/1"}, {"runs", runs}};
    emit(io::dump_sorted(rep), o.out);
    return any_cut ? 3 : (any_viol ? 1 : 0);
}

// Re-run every recorded suite on its embedded input; exit 0 iff all runs
// reproduce their recorded violation lists exactly.
int do_replay(const std::string& path) {
    json rep = io::load_json(path);
    if (rep.value("schema", "") != "check-report/1")
        throw SchemaError(path + ": not a check report");
    bool all_match = true;
    for (auto& run : rep.at("runs")) {
        Input in = input_from_doc(run.at("input"), run.value("path", "<embedded>"));
        CheckOpts o;
        Budgets b;
        params_load(run.at("params"), o, b);
        auto out = run_suite(run.at("suite").get<std::string>(), in, o, b);
        bool match = out.violations == run.at("violations");
        all_match &= match;
        std::cout << (match ? "reproduced" : "differs") << ": " << run.at("suite").get<std::string>()
                  << " on " << run.value("path", "<embedded>") << "\n";
    }
    return all_match ? 0 : 1;
}

// --- export ------------------------------------------------------------------

int do_export(const std::string& input, const std::string& format, const std::string& out,
              const Budgets& b, int target) {
    Input in = load_input(input);
    auto G = enumerate_input(in, b);
    std::string data;
    if (format == "dot") {
        data = io::graph_to_dot(G);
    } else if (format == "json") {
        data = io::dump_sorted(io::graph_to_json(G.complete ? &in.P : nullptr, G));
    } else if (format == "svg") {
        if (!in.arr) throw SchemaError("svg export needs an arrangement input");
        data = io::svg_overlay(*in.arr, in.P, G, target);
    } else {
        throw SchemaError("unknown export format '" + format + "'");
    }
    emit(data, out);
    return G.complete ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dual cubings of planar wall systems"};
    app.require_subcommand(1);

    GenOpts g;
    auto* gen = app.add_subcommand("generate", "write an arrangement or poc-set file");
    gen->add_option("kind", g.kind, "hex|triangle|grid|random|two-parallel|roller-chain|star-tree|free")
        ->required();
    gen->add_option("--N", g.N, "family index bound (hex) / line count per family (grid)");
    gen->add_option("--n", g.n, "size parameter (random, roller-chain, star-tree)");
    gen->add_option("--k", g.k, "pair count (free)");
    gen->add_option("--seed", g.seed, "rng seed (random)");
    gen->add_option("--gap", g.gap, "wall separation (two-parallel), rational");
    gen->add_option("--shear", g.shear, "slope of the skew families (hex), rational");
    gen->add_option("--base-radius", g.base_radius, "R0 around the basepoint (grid), rational");
    gen->add_option("--window-cx", g.wcx, "window center x, rational");
    gen->add_option("--window-cy", g.wcy, "window center y, rational");
    gen->add_option("--window-radius", g.wrad, "window half-side, rational");
    gen->add_option("--out", g.out, "output path (default stdout)");

    std::string enum_input, enum_out;
    Budgets enum_b;
    auto* enu = app.add_subcommand("enumerate", "flip-BFS the dual cubing, write a graph file");
    enu->add_option("input", enum_input, "arrangement or poc-set file")->required();
    enu->add_option("--out", enum_out, "output path (default stdout)");
    add_budget_flags(enu, enum_b);

    AnaOpts ao;
    Budgets ana_b;
    auto* ana_cmd = app.add_subcommand("analyze", "heights, special pairs, QI and slope reports");
    ana_cmd->add_option("input", ao.input, "arrangement file")->required();
    ana_cmd->add_flag("--qi", ao.qi, "fit the quasi-isometry constants");
    ana_cmd->add_option("--samples", ao.samples, "QI sample count");
    ana_cmd->add_option("--seed", ao.seed, "sampling seed");
    ana_cmd->add_option("--radii", ao.radii, "radii for the wall-count rows")->delimiter(',');
    ana_cmd->add_option("--margin", ao.margin, "truncation margin, rational (default from cells)");
    ana_cmd->add_option("--svg", ao.svg, "also write an SVG overlay here");
    ana_cmd->add_option("--target", ao.target, "SVG heat-map target vertex");
    ana_cmd->add_option("--out", ao.out, "output path (default stdout)");
    add_budget_flags(ana_cmd, ana_b);

    CheckOpts co;
    Budgets check_b;
    auto* chk = app.add_subcommand("check", "run an invariant suite, report violations");
    chk->add_option("inputs", co.inputs, "input files");
    chk->add_option("--suite", co.suite,
                    "median-axioms|shadow-lemmas|height-oracle|duality-roundtrip|pwp|"
                    "distance-to-wall|slope-chain");
    chk->add_option("--replay", co.replay, "re-run a recorded check report instead");
    chk->add_option("--C", co.C, "PWP scale, rational");
    chk->add_option("--margin", co.margin, "truncation margin, rational");
    chk->add_option("--samples", co.samples, "sample count for sampled suites");
    chk->add_option("--seed", co.seed, "sampling seed");
    chk->add_option("--radii", co.radii, "slope-chain radii")->delimiter(',');
    chk->add_option("--out", co.out, "violations report path (default stdout)");
    add_budget_flags(chk, check_b);

    std::string exp_input, exp_format = "json", exp_out;
    int exp_target = 0;
    Budgets exp_b;
    auto* exp = app.add_subcommand("export", "render a graph as dot, json or svg");
    exp->add_option("input", exp_input, "arrangement or poc-set file")->required();
    exp->add_option("--format", exp_format, "dot|json|svg");
    exp->add_option("--target", exp_target, "SVG heat-map target vertex");
    exp->add_option("--out", exp_out, "output path (default stdout)");
    add_budget_flags(exp, exp_b);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (gen->parsed()) {
            emit(io::dump_sorted(do_generate(g)), g.out);
            return 0;
        }
        if (enu->parsed()) {
            Input in = load_input(enum_input);
            auto G = enumerate_input(in, enum_b);
            emit(io::dump_sorted(io::graph_to_json(G.complete ? &in.P : nullptr, G)), enum_out);
            return G.complete ? 0 : 3;
        }
        if (ana_cmd->parsed()) return do_analyze(ao, ana_b);
        if (chk->parsed()) {
            if (!co.replay.empty()) return do_replay(co.replay);
            return do_check(co, check_b);
        }
        if (exp->parsed()) return do_export(exp_input, exp_format, exp_out, exp_b, exp_target);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
