#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "decomposition.hpp"
#include "graph.hpp"

namespace pathdec {

// Number-partitioning instance: 3m weights to split into m triples of sum b.
struct ThreePartitionInstance {
    std::vector<int> weights;
    int b = 0;

    int m() const { return int(weights.size()) / 3; }
    bool well_formed() const {
        if (weights.empty() || weights.size() % 3 != 0) return false;
        for (int w : weights)
            if (w < 1) return false;
        return true;
    }
    // the classic restriction making triples the only viable parts
    bool strict() const {
        for (int w : weights)
            if (4 * w <= b || 2 * w >= b) return false;
        return true;
    }
};

// The reduction graph: one clique chain per weight plus a clique-and-path
// spine, every clique labeled. All identifications pick the lowest-id vertex
// of a clique not already shared, which fixes one canonical member of the
// isomorphism class.
struct GadgetGraph {
    Graph graph;
    int m = 0, b = 0;
    int l = 0;                              // 1 - 2m + 2*sum(w)
    std::vector<std::vector<VertexSet>> tri;   // tri[i][q], q < w_i
    std::vector<std::vector<VertexSet>> quad;  // quad[i][q], q < w_i - 1
    std::vector<VertexSet> k5;                 // spine cliques, m+1 of them
    std::vector<std::vector<int>> path;        // path[j]: b+1 vertices between k5[j], k5[j+1]

    std::vector<VertexSet> cliques() const {
        std::vector<VertexSet> out;
        for (const auto& ts : tri) out.insert(out.end(), ts.begin(), ts.end());
        for (const auto& qs : quad) out.insert(out.end(), qs.begin(), qs.end());
        out.insert(out.end(), k5.begin(), k5.end());
        return out;
    }
};

namespace detail {

struct LabeledPart {
    std::vector<std::pair<int, int>> edges;
    int n = 0;
};

inline void add_clique(LabeledPart& g, const std::vector<int>& vs) {
    for (size_t i = 0; i < vs.size(); ++i)
        for (size_t j = i + 1; j < vs.size(); ++j) g.edges.emplace_back(vs[i], vs[j]);
}

}  // namespace detail

// Chain of w triangles alternating with w-1 four-cliques; each four-clique
// shares its two lowest slots with the flanking triangles. Vertex ids:
// triangle q owns 3q..3q+2, the fresh pair of four-clique q follows after
// all triangles. 5w-2 vertices total.
inline GadgetGraph build_Hi(int w) {
    if (w < 1) throw std::invalid_argument("weight must be positive");
    GadgetGraph out;
    detail::LabeledPart part;
    part.n = 5 * w - 2;
    out.tri.emplace_back();
    out.quad.emplace_back();
    for (int q = 0; q < w; ++q) {
        std::vector<int> t{3 * q, 3 * q + 1, 3 * q + 2};
        detail::add_clique(part, t);
        out.tri[0].push_back(VertexSet::of(part.n, t));
    }
    for (int q = 0; q + 1 < w; ++q) {
        // lowest free triangle vertices: 3q for the left one (its slot 3q is
        // taken by the previous four-clique only when q > 0), 3(q+1) right
        int left = q == 0 ? 0 : 3 * q + 1;
        std::vector<int> f{left, 3 * (q + 1), 3 * w + 2 * q, 3 * w + 2 * q + 1};
        detail::add_clique(part, f);
        out.quad[0].push_back(VertexSet::of(part.n, f));
    }
    out.graph = Graph::from_edges(part.n, part.edges);
    return out;
}

// Spine: m+1 five-cliques, consecutive ones joined by a path with b edges
// whose endpoints are identified with distinct five-clique vertices.
// Vertex ids: five-clique j owns 5j..5j+4, path interiors follow.
inline GadgetGraph build_Hmb(int m, int b) {
    if (m < 1 || b < 1) throw std::invalid_argument("need m >= 1 and b >= 1");
    GadgetGraph out;
    out.m = m;
    out.b = b;
    detail::LabeledPart part;
    part.n = 5 * (m + 1) + m * (b - 1);
    for (int j = 0; j <= m; ++j) {
        std::vector<int> c{5 * j, 5 * j + 1, 5 * j + 2, 5 * j + 3, 5 * j + 4};
        detail::add_clique(part, c);
        out.k5.push_back(VertexSet::of(part.n, c));
    }
    for (int j = 0; j < m; ++j) {
        // clique j hosts the endpoint of path j-1 at slot 0 (when j > 0), so
        // its lowest free vertex is slot 1; clique j+1 is still untouched
        std::vector<int> p{j == 0 ? 0 : 5 * j + 1};
        int base = 5 * (m + 1) + j * (b - 1);
        for (int t = 0; t < b - 1; ++t) p.push_back(base + t);
        p.push_back(5 * (j + 1));
        for (int t = 0; t < b; ++t) part.edges.emplace_back(p[t], p[t + 1]);
        out.path.push_back(p);
    }
    out.graph = Graph::from_edges(part.n, part.edges);
    return out;
}

// Disjoint union of the weight chains H_1..H_3m and the spine H_{m,b},
// relabeled into one id space in that order.
inline GadgetGraph build_gadget(const ThreePartitionInstance& inst) {
    if (!inst.well_formed()) throw std::invalid_argument("malformed instance");
    int m = inst.m();
    int total = 0;
    for (int w : inst.weights) total += w;
    GadgetGraph out;
    out.m = m;
    out.b = inst.b;
    out.l = 1 - 2 * m + 2 * total;

    std::vector<std::pair<int, int>> edges;
    int offset = 0;
    int n = 0;
    for (int w : inst.weights) n += 5 * w - 2;
    n += 5 * (m + 1) + m * (inst.b - 1);

    auto shift = [&](const VertexSet& s) {
        VertexSet r(n);
        for (int v : s.members()) r.set(v + offset);
        return r;
    };
    for (int w : inst.weights) {
        GadgetGraph hi = build_Hi(w);
        for (auto [u, v] : hi.graph.edges()) edges.emplace_back(u + offset, v + offset);
        out.tri.emplace_back();
        out.quad.emplace_back();
        for (const auto& t : hi.tri[0]) out.tri.back().push_back(shift(t));
        for (const auto& q : hi.quad[0]) out.quad.back().push_back(shift(q));
        offset += hi.graph.num_vertices();
    }
    GadgetGraph spine = build_Hmb(m, inst.b);
    for (auto [u, v] : spine.graph.edges()) edges.emplace_back(u + offset, v + offset);
    for (const auto& c : spine.k5) out.k5.push_back(shift(c));
    for (const auto& p : spine.path) {
        std::vector<int> sp;
        for (int v : p) sp.push_back(v + offset);
        out.path.push_back(sp);
    }
    out.graph = Graph::from_edges(n, edges);
    return out;
}

// The witness decomposition of a solved instance: per part, the opening
// five-clique bag, then for each weight in ascending index order the
// triangle bags (each with two consecutive path vertices) interleaved with
// the four-clique bags (each with one), and a closing five-clique bag at the
// very end. Every bag has exactly 5 vertices and the length comes out to l.
inline PathDecomposition decomposition_from_partition(const GadgetGraph& gg,
                                                      const std::vector<std::vector<int>>& parts) {
    if (int(parts.size()) != gg.m) throw std::invalid_argument("need one triple per spine path");
    std::vector<char> used(gg.tri.size(), 0);
    for (const auto& part : parts) {
        int sum = 0;
        for (int i : part) {
            if (i < 0 || i >= int(gg.tri.size()) || used[i])
                throw std::invalid_argument("parts must partition the weight indices");
            used[i] = 1;
            sum += int(gg.tri[i].size());
        }
        if (sum != gg.b) throw std::invalid_argument("part does not sum to the target");
    }
    int n = gg.graph.num_vertices();
    PathDecomposition out;
    for (int j = 0; j < gg.m; ++j) {
        out.bags.push_back(gg.k5[j]);
        std::vector<int> part = parts[j];
        std::sort(part.begin(), part.end());
        int p = 0;
        for (int i : part) {
            int w = int(gg.tri[i].size());
            for (int q = 0; q < w; ++q) {
                VertexSet bag = gg.tri[i][q];
                bag.set(gg.path[j][p + q]);
                bag.set(gg.path[j][p + q + 1]);
                out.bags.push_back(bag);
                if (q + 1 < w) {
                    VertexSet qb = gg.quad[i][q];
                    qb.set(gg.path[j][p + q + 1]);
                    out.bags.push_back(qb);
                }
            }
            p += w;
        }
    }
    out.bags.push_back(gg.k5[gg.m]);
    (void)n;
    return out;
}

// What the structural lemmas promise of every width-4 length-l decomposition
// of the gadget, checked directly.
struct GadgetReport {
    bool valid = false;             // decomposition axioms hold
    bool width_ok = false;          // width <= 4
    bool length_matches = false;    // length == l
    bool one_clique_per_bag = false;
    bool k5_monotone = false;       // spine clique bags ascend or descend
    bool chains_contiguous = false;  // each H_i sits in a spine-free interval

    bool ok() const {
        return valid && width_ok && length_matches && one_clique_per_bag && k5_monotone &&
               chains_contiguous;
    }
};

inline GadgetReport verify_gadget_properties(const GadgetGraph& gg, const PathDecomposition& p) {
    GadgetReport r;
    r.valid = is_valid(gg.graph, p);
    r.width_ok = p.width() <= 4;
    r.length_matches = p.length() == gg.l;
    if (!r.valid || !r.width_ok || !r.length_matches) return r;

    auto cliques = gg.cliques();
    r.one_clique_per_bag = true;
    for (const VertexSet& bag : p.bags) {
        int hosted = 0;
        for (const VertexSet& c : cliques)
            if (bag.contains(c)) ++hosted;
        if (hosted != 1) r.one_clique_per_bag = false;
    }

    std::vector<int> c_at;  // bag index hosting each spine clique
    for (const VertexSet& c : gg.k5) {
        int at = -1;
        for (int t = 0; t < p.length(); ++t)
            if (p.bags[t].contains(c)) at = at < 0 ? t : at;
        if (at < 0) return r;
        c_at.push_back(at);
    }
    bool asc = true, desc = true;
    for (size_t j = 0; j + 1 < c_at.size(); ++j) {
        asc = asc && c_at[j] < c_at[j + 1];
        desc = desc && c_at[j] > c_at[j + 1];
    }
    r.k5_monotone = asc || desc;

    r.chains_contiguous = true;
    for (size_t i = 0; i < gg.tri.size(); ++i) {
        VertexSet hi(gg.graph.num_vertices());
        for (const auto& t : gg.tri[i]) hi |= t;
        for (const auto& q : gg.quad[i]) hi |= q;
        auto ab = alpha_beta(p, hi);
        if (!ab) {
            r.chains_contiguous = false;
            continue;
        }
        for (int t = ab->first; t <= ab->second; ++t) {
            if (!p.bags[t].intersects(hi)) r.chains_contiguous = false;
            for (const VertexSet& c : gg.k5)
                if (p.bags[t].contains(c)) r.chains_contiguous = false;
        }
    }
    return r;
}

// Read the partition back off a conforming decomposition: orient it so the
// spine cliques ascend, then collect per gap the chains fully contained in
// the bags strictly between consecutive spine-clique bags.
inline std::vector<std::vector<int>> extract_partition(const GadgetGraph& gg,
                                                       const PathDecomposition& p0) {
    GadgetReport r = verify_gadget_properties(gg, p0);
    if (!r.ok()) throw std::invalid_argument("decomposition fails the structural checks");
    PathDecomposition p = p0;
    std::vector<int> c_at(gg.k5.size(), -1);
    auto locate = [&]() {
        for (size_t j = 0; j < gg.k5.size(); ++j)
            for (int t = 0; t < p.length(); ++t)
                if (p.bags[t].contains(gg.k5[j])) {
                    c_at[j] = t;
                    break;
                }
    };
    locate();
    if (c_at.front() > c_at.back()) {
        p = reverse(p);
        locate();
    }

    std::vector<std::vector<int>> parts;
    for (int j = 0; j < gg.m; ++j) {
        VertexSet between(gg.graph.num_vertices());
        for (int t = c_at[j] + 1; t < c_at[j + 1]; ++t) between |= p.bags[t];
        std::vector<int> part;
        int sum = 0;
        for (size_t i = 0; i < gg.tri.size(); ++i) {
            VertexSet hi(gg.graph.num_vertices());
            for (const auto& t : gg.tri[i]) hi |= t;
            for (const auto& q : gg.quad[i]) hi |= q;
            if (between.contains(hi)) {
                part.push_back(int(i));
                sum += int(gg.tri[i].size());
            }
        }
        if (sum != gg.b) throw std::invalid_argument("a spine gap does not sum to the target");
        parts.push_back(part);
    }
    return parts;
}

// Brute-force partition into triples of sum b; demonstration scale only.
inline std::optional<std::vector<std::vector<int>>> solve_three_partition(
    const ThreePartitionInstance& inst) {
    if (!inst.well_formed()) throw std::invalid_argument("malformed instance");
    int m = inst.m();
    if (m > 4) throw std::invalid_argument("brute-force partitioning is capped at 12 weights");
    int nw = 3 * m;
    std::vector<int> left;
    for (int i = 0; i < nw; ++i) left.push_back(i);
    std::vector<std::vector<int>> parts;

    std::function<bool()> go = [&]() {
        if (left.empty()) return true;
        int a = left[0];
        for (size_t x = 1; x < left.size(); ++x)
            for (size_t y = x + 1; y < left.size(); ++y) {
                int u = left[x], v = left[y];
                if (inst.weights[a] + inst.weights[u] + inst.weights[v] != inst.b) continue;
                std::vector<int> rest;
                for (int i : left)
                    if (i != a && i != u && i != v) rest.push_back(i);
                parts.push_back({a, u, v});
                std::swap(left, rest);
                if (go()) return true;
                std::swap(left, rest);
                parts.pop_back();
            }
        return false;
    };
    if (!go()) return std::nullopt;
    return parts;
}

}  // namespace pathdec
