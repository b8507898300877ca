#pragma once

#include <algorithm>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "graph.hpp"

namespace pathdec {

// A path decomposition is a sequence of bags. Axioms:
//   (1) every vertex is in some bag
//   (2) every edge has both ends in some common bag
//   (3) the bags containing any fixed vertex form a contiguous run
struct PathDecomposition {
    std::vector<VertexSet> bags;

    int length() const { return int(bags.size()); }
    int width() const {
        int w = -1;
        for (const auto& b : bags) w = std::max(w, b.count() - 1);
        return w;
    }
    int size() const {
        int s = 0;
        for (const auto& b : bags) s += b.count();
        return s;
    }
    VertexSet span(int universe) const {
        VertexSet s(universe);
        for (const auto& b : bags) s |= b;
        return s;
    }
};

enum class Axiom { vertices_covered, edges_covered, contiguity };

struct Violation {
    Axiom axiom;
    int vertex = -1;               // vertices_covered, contiguity
    std::pair<int, int> edge{-1, -1};  // edges_covered
    int bag = -1;                  // contiguity: index of the bag inside a gap
    std::string describe() const {
        switch (axiom) {
            case Axiom::vertices_covered:
                return "vertex " + std::to_string(vertex) + " is in no bag";
            case Axiom::edges_covered:
                return "edge {" + std::to_string(edge.first) + "," + std::to_string(edge.second) +
                       "} is in no bag";
            case Axiom::contiguity:
                return "vertex " + std::to_string(vertex) + " missing from bag " + std::to_string(bag) +
                       " inside its run";
        }
        return "";
    }
};

// First violated axiom in the order above, lexicographically-first witness.
inline std::optional<Violation> validate(const Graph& g, const PathDecomposition& p) {
    int n = g.num_vertices();
    VertexSet covered = p.span(n);
    for (int v = 0; v < n; ++v)
        if (!covered.test(v)) return Violation{Axiom::vertices_covered, v};
    for (auto [u, v] : g.edges()) {
        bool ok = false;
        for (const auto& b : p.bags)
            if (b.test(u) && b.test(v)) {
                ok = true;
                break;
            }
        if (!ok) return Violation{Axiom::edges_covered, -1, {u, v}};
    }
    for (int v = 0; v < n; ++v) {
        int first = -1, last = -1;
        for (int i = 0; i < p.length(); ++i)
            if (p.bags[i].test(v)) {
                if (first < 0) first = i;
                last = i;
            }
        for (int i = first; i >= 0 && i <= last; ++i)
            if (!p.bags[i].test(v)) return Violation{Axiom::contiguity, v, {-1, -1}, i};
    }
    return std::nullopt;
}

inline bool is_valid(const Graph& g, const PathDecomposition& p) { return !validate(g, p); }

// Span of a bag prefix plus its frontier (span vertices with a neighbor
// outside the span). Fails if the prefix is not a valid partial
// decomposition of its own span.
struct SpanFrontier {
    VertexSet span;
    VertexSet frontier;
};

inline std::optional<SpanFrontier> span_and_frontier(const Graph& g, const PathDecomposition& p,
                                                     int prefix_len) {
    PathDecomposition prefix{{p.bags.begin(), p.bags.begin() + prefix_len}};
    VertexSet span = prefix.span(g.num_vertices());
    auto sub = induced_subgraph(g, span);
    PathDecomposition relabeled;
    std::vector<int> from_parent(g.num_vertices(), -1);
    for (size_t i = 0; i < sub.to_parent.size(); ++i) from_parent[sub.to_parent[i]] = int(i);
    for (const auto& b : prefix.bags) {
        VertexSet rb(sub.graph.num_vertices());
        for (int v : b.members()) rb.set(from_parent[v]);
        relabeled.bags.push_back(rb);
    }
    if (validate(sub.graph, relabeled)) return std::nullopt;
    return SpanFrontier{span, border(g, span)};
}

inline PathDecomposition reverse(const PathDecomposition& p) {
    PathDecomposition r = p;
    std::reverse(r.bags.begin(), r.bags.end());
    return r;
}

// Concatenation for decompositions of disjoint vertex sets. When `merge` is
// set and both boundary bags have at most 2 vertices, they fuse into one bag.
inline PathDecomposition concat(const PathDecomposition& a, const PathDecomposition& b,
                                bool merge = true) {
    if (a.bags.empty()) return b;
    if (b.bags.empty()) return a;
    PathDecomposition out = a;
    size_t start = 0;
    if (merge && a.bags.back().count() <= 2 && b.bags.front().count() <= 2) {
        out.bags.back() |= b.bags.front();
        start = 1;
    }
    out.bags.insert(out.bags.end(), b.bags.begin() + start, b.bags.end());
    return out;
}

// Boundary type: small means the bag has at most 2 vertices.
enum class DecompositionType { A, B1, B2, C };

inline DecompositionType classify_type(const PathDecomposition& p) {
    if (p.bags.empty()) return DecompositionType::A;
    bool sf = p.bags.front().count() <= 2;
    bool sl = p.bags.back().count() <= 2;
    if (sf && sl) return DecompositionType::A;
    if (sf) return DecompositionType::B1;
    if (sl) return DecompositionType::B2;
    return DecompositionType::C;
}

// First and last bag index (0-based) meeting `vs`, or nullopt.
inline std::optional<std::pair<int, int>> alpha_beta(const PathDecomposition& p, const VertexSet& vs) {
    int a = -1, b = -1;
    for (int i = 0; i < p.length(); ++i)
        if (p.bags[i].intersects(vs)) {
            if (a < 0) a = i;
            b = i;
        }
    if (a < 0) return std::nullopt;
    return std::make_pair(a, b);
}

// Interval [t1, t2] of a vertex set S with branches:
//   t1 = min alpha(H) over branches H with S inside both bag alpha(H) and the
//        bag before it; t2 symmetric with beta(H) and the bag after.
inline std::optional<std::pair<int, int>> bottleneck_interval(const Graph& g,
                                                              const PathDecomposition& p,
                                                              const VertexSet& s) {
    auto sc = s_components(g, s);
    int t1 = -1, t2 = -1;
    for (const auto& h : sc.branches) {
        auto ab = alpha_beta(p, h);
        if (!ab) continue;
        auto [a, b] = *ab;
        if (a >= 1 && p.bags[a].contains(s) && p.bags[a - 1].contains(s))
            t1 = (t1 < 0) ? a : std::min(t1, a);
        if (b + 1 < p.length() && p.bags[b].contains(s) && p.bags[b + 1].contains(s))
            t2 = std::max(t2, b);
    }
    if (t1 < 0 || t2 < 0) return std::nullopt;
    return std::make_pair(t1, t2);
}

enum class BranchColor { green, red, blue, purple, gray, black };

// Colors aligned with s_components(g,s).branches, relative to [t1,t2].
inline std::optional<std::vector<BranchColor>> color_branches(const Graph& g,
                                                              const PathDecomposition& p,
                                                              const VertexSet& s) {
    auto interval = bottleneck_interval(g, p, s);
    if (!interval) return std::nullopt;
    auto [t1, t2] = *interval;
    std::vector<BranchColor> out;
    for (const auto& h : s_components(g, s).branches) {
        auto ab = alpha_beta(p, h);
        if (!ab) return std::nullopt;  // branch not covered: not a valid input
        auto [a, b] = *ab;
        if (b < t1)
            out.push_back(BranchColor::gray);
        else if (a > t2)
            out.push_back(BranchColor::black);
        else if (a >= t1 && b <= t2)
            out.push_back(BranchColor::green);
        else if (a < t1 && b <= t2)
            out.push_back(BranchColor::red);
        else if (a >= t1 && b > t2)
            out.push_back(BranchColor::blue);
        else
            out.push_back(BranchColor::purple);
    }
    return out;
}

// Repeatedly delete the first bag contained in one of its neighbors. (A bag
// merely contained in the *union* of its neighbors is not always deletable:
// it can be the only bag covering an edge.)
inline PathDecomposition remove_redundant_bags(PathDecomposition p) {
    bool changed = true;
    while (changed && !p.bags.empty()) {
        changed = false;
        for (size_t i = 0; i < p.bags.size(); ++i) {
            bool in_prev = i > 0 && p.bags[i - 1].contains(p.bags[i]);
            bool in_next = i + 1 < p.bags.size() && p.bags[i + 1].contains(p.bags[i]);
            if (in_prev || in_next || p.bags[i].empty()) {
                p.bags.erase(p.bags.begin() + i);
                changed = true;
                break;
            }
        }
    }
    return p;
}

// File format: one bag per line, space-separated vertex ids; empty file is
// the empty decomposition.
inline PathDecomposition parse_decomposition(std::istream& in, int universe) {
    PathDecomposition p;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos || line[pos] == '#') continue;
        std::istringstream iss(line);
        VertexSet bag(universe);
        int v;
        while (iss >> v) {
            if (v < 0 || v >= universe)
                throw std::runtime_error("decomposition: vertex out of range at line " +
                                         std::to_string(lineno));
            bag.set(v);
        }
        if (!iss.eof())
            throw std::runtime_error("decomposition: bad token at line " + std::to_string(lineno));
        p.bags.push_back(bag);
    }
    return p;
}

inline void write_decomposition(std::ostream& out, const PathDecomposition& p) {
    for (const auto& b : p.bags) {
        auto m = b.members();
        for (size_t i = 0; i < m.size(); ++i) out << (i ? " " : "") << m[i];
        out << '\n';
    }
}

}  // namespace pathdec
