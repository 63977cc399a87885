#pragma once

#include <string>

#include <json.hpp>

#include "cubedual/analysis.hpp"
#include "cubedual/cubing.hpp"
#include "cubedual/pocset.hpp"
#include "cubedual/walls2d.hpp"

namespace cubedual::io {

using nlohmann::json;

// Rationals travel as "p/q" strings so files stay exact.
json pocset_to_json(const poc::PocSet& P);
poc::PocSet pocset_from_json(const json& j);

json arrangement_to_json(const walls::Arrangement& A);
walls::Arrangement arrangement_from_json(const json& j);

// P drives the cube records; pass nullptr to skip them (e.g. partial graphs).
json graph_to_json(const poc::PocSet* P, const cube::MedianGraph& G);
std::string graph_to_dot(const cube::MedianGraph& G);

// Walls + window; chambers tinted by Δ to the target vertex (default: seed),
// the target's shadow region overlaid when heights allow it.
std::string svg_overlay(const walls::Arrangement& A, const poc::PocSet& P,
                        const cube::MedianGraph& G, int target = 0);

std::string dump_sorted(const json& j);  // stable key order + trailing newline

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& data);
json load_json(const std::string& path);  // SchemaError on parse failure

}  // namespace cubedual::io
