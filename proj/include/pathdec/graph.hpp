#pragma once

#include <algorithm>
#include <istream>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vertex_set.hpp"

namespace pathdec {

// Simple undirected graph on dense 0-based vertex ids, immutable after
// construction.
class Graph {
public:
    Graph() = default;
    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
        Graph g;
        g.n_ = n;
        g.adj_.assign(n, VertexSet(n));
        for (auto [u, v] : edges) {
            if (u < 0 || u >= n || v < 0 || v >= n)
                throw std::invalid_argument("Graph: endpoint out of range");
            if (u == v) throw std::invalid_argument("Graph: self-loop");
            g.adj_[u].set(v);
            g.adj_[v].set(u);
        }
        return g;
    }

    int num_vertices() const { return n_; }
    int num_edges() const {
        int m = 0;
        for (const auto& a : adj_) m += a.count();
        return m / 2;
    }
    bool has_edge(int u, int v) const { return adj_[u].test(v); }
    const VertexSet& neighbors(int v) const { return adj_[v]; }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (int u = 0; u < n_; ++u)
            for (int v : adj_[u].members())
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    VertexSet vertex_set() const { return VertexSet::full(n_); }

private:
    int n_ = 0;
    std::vector<VertexSet> adj_;
};

// Edge-list format: "n m" header line, then m lines "u v". Blank lines and
// lines starting with '#' are skipped. Duplicate edges collapse.
inline Graph parse_graph(std::istream& in) {
    std::string line;
    int n = -1, m = -1;
    std::vector<std::pair<int, int>> edges;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos || line[pos] == '#') continue;
        std::istringstream iss(line);
        if (n < 0) {
            if (!(iss >> n >> m) || n < 0 || m < 0)
                throw std::runtime_error("parse_graph: bad header at line " + std::to_string(lineno));
        } else {
            int u, v;
            if (!(iss >> u >> v))
                throw std::runtime_error("parse_graph: bad edge at line " + std::to_string(lineno));
            edges.emplace_back(u, v);
        }
    }
    if (n < 0) throw std::runtime_error("parse_graph: missing header");
    if (int(edges.size()) != m)
        throw std::runtime_error("parse_graph: header declares " + std::to_string(m) + " edges, found " +
                                 std::to_string(edges.size()));
    return Graph::from_edges(n, edges);  // throws on range errors / self-loops
}

inline Graph parse_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_graph(in);
}

inline void write_graph(std::ostream& out, const Graph& g) {
    auto es = g.edges();
    out << g.num_vertices() << ' ' << es.size() << '\n';
    for (auto [u, v] : es) out << u << ' ' << v << '\n';
}

// Components of g restricted to `within`, ordered by smallest vertex.
inline std::vector<VertexSet> connected_components(const Graph& g, const VertexSet& within) {
    std::vector<VertexSet> out;
    VertexSet seen(g.num_vertices());
    for (int s : within.members()) {
        if (seen.test(s)) continue;
        VertexSet comp(g.num_vertices());
        std::vector<int> stack{s};
        comp.set(s);
        seen.set(s);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : (g.neighbors(u) & within).members())
                if (!comp.test(w)) {
                    comp.set(w);
                    seen.set(w);
                    stack.push_back(w);
                }
        }
        out.push_back(comp);
    }
    return out;
}

inline std::vector<VertexSet> connected_components(const Graph& g) {
    return connected_components(g, g.vertex_set());
}

// Induced subgraph with dense relabeling; to_parent[i] = original id.
struct InducedSubgraph {
    Graph graph;
    std::vector<int> to_parent;
};

inline InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& vs) {
    InducedSubgraph out;
    out.to_parent = vs.members();
    std::vector<int> from_parent(g.num_vertices(), -1);
    for (size_t i = 0; i < out.to_parent.size(); ++i) from_parent[out.to_parent[i]] = int(i);
    std::vector<std::pair<int, int>> edges;
    for (int u : out.to_parent)
        for (int v : (g.neighbors(u) & vs).members())
            if (u < v) edges.emplace_back(from_parent[u], from_parent[v]);
    out.graph = Graph::from_edges(int(out.to_parent.size()), edges);
    return out;
}

// Vertices of h with a neighbor outside h.
inline VertexSet border(const Graph& g, const VertexSet& h) {
    VertexSet out(g.num_vertices());
    VertexSet rest = g.vertex_set() - h;
    for (int v : h.members())
        if (g.neighbors(v).intersects(rest)) out.set(v);
    return out;
}

// Neighborhood of a vertex set (outside the set itself).
inline VertexSet neighborhood(const Graph& g, const VertexSet& h) {
    VertexSet out(g.num_vertices());
    for (int v : h.members()) out |= g.neighbors(v);
    return out - h;
}

// Components H of G - S whose neighborhood is exactly S. Singletons
// ("leaves", ascending id) and larger ones ("branches", by smallest vertex).
struct SComponents {
    std::vector<int> leaves;
    std::vector<VertexSet> branches;
};

inline SComponents s_components(const Graph& g, const VertexSet& s) {
    SComponents out;
    for (const VertexSet& comp : connected_components(g, g.vertex_set() - s)) {
        if (neighborhood(g, comp) != s) continue;
        if (comp.count() == 1)
            out.leaves.push_back(comp.first());
        else
            out.branches.push_back(comp);
    }
    std::sort(out.leaves.begin(), out.leaves.end());
    return out;  // component order already sorts branches by smallest vertex
}

inline bool is_bottleneck(const Graph& g, const VertexSet& s) {
    return !s.empty() && s_components(g, s).branches.size() >= 13;
}

// Split into big components (>= 3 vertices), isolated vertices and isolated
// edges.
struct ComponentSplit {
    std::vector<VertexSet> big;
    std::vector<int> isolated;
    std::vector<std::pair<int, int>> edge_pairs;
};

inline ComponentSplit classify_components(const Graph& g) {
    ComponentSplit out;
    for (const VertexSet& comp : connected_components(g)) {
        int c = comp.count();
        if (c == 1)
            out.isolated.push_back(comp.first());
        else if (c == 2) {
            auto m = comp.members();
            out.edge_pairs.emplace_back(m[0], m[1]);
        } else
            out.big.push_back(comp);
    }
    return out;
}

// New vertex gets id n, adjacent to everything.
inline Graph add_universal_vertex(const Graph& g) {
    int n = g.num_vertices();
    auto edges = g.edges();
    for (int v = 0; v < n; ++v) edges.emplace_back(v, n);
    return Graph::from_edges(n + 1, edges);
}

// All subsets of `s` (including empty), grouped by nothing in particular but
// deterministic. Intended for small sets only.
inline std::vector<VertexSet> subsets_of(const VertexSet& s) {
    auto m = s.members();
    std::vector<VertexSet> out;
    out.reserve(size_t(1) << m.size());
    for (uint64_t mask = 0; mask < (uint64_t(1) << m.size()); ++mask) {
        VertexSet sub(s.universe());
        for (size_t i = 0; i < m.size(); ++i)
            if (mask >> i & 1) sub.set(m[i]);
        out.push_back(sub);
    }
    return out;
}

}  // namespace pathdec
