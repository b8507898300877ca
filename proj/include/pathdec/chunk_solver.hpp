#pragma once

#include <algorithm>
#include <optional>
#include <queue>
#include <stdexcept>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "connected_solver.hpp"
#include "decomposition.hpp"
#include "graph.hpp"

namespace pathdec {

// A chunk is one big connected component plus counts of isolated vertices
// (q1) and isolated edges (q2) to be woven into its decomposition. In the
// realized graph the big component keeps its ids, isolated vertices follow,
// then the edge pairs.
struct ChunkGraph {
    Graph big;
    int q1 = 0;
    int q2 = 0;

    int num_vertices() const { return big.num_vertices() + q1 + 2 * q2; }
    int single_id(int t) const { return big.num_vertices() + t; }
    std::pair<int, int> pair_ids(int t) const {
        int base = big.num_vertices() + q1 + 2 * t;
        return {base, base + 1};
    }
};

inline Graph realize(const ChunkGraph& c) {
    auto edges = c.big.edges();
    for (int t = 0; t < c.q2; ++t) edges.push_back(c.pair_ids(t));
    return Graph::from_edges(c.num_vertices(), edges);
}

struct ChunkState {
    AuxState base;  // state over the big component
    int i = 0;      // isolated vertices already placed
    int j = 0;      // edge pairs already placed
    bool operator==(const ChunkState&) const = default;
};

struct ChunkStateHash {
    size_t operator()(const ChunkState& s) const {
        return (AuxStateHash{}(s.base) * 31 + size_t(s.i)) * 31 + size_t(s.j);
    }
};

// Minimum-length width-k decomposition of a chunk with the first bag capped
// at lambda1 and the last at lambda2 (defaults k+1). Search edges: the big
// component's step and jump moves, each optionally padded with fresh small
// vertices, plus pure fill bags (frontier + smalls). A closing bag larger
// than lambda2 gets a one-bag tail (a subset of it) appended instead.
class ChunkSolver {
public:
    ChunkSolver(const ChunkGraph& c, int k, int lambda1, int lambda2, LowerSolver lower)
        : c_(c),
          k_(k),
          l1_(lambda1 < 0 ? k + 1 : lambda1),
          l2_(lambda2 < 0 ? k + 1 : lambda2),
          base_(c_.big, k, lower),
          lower_(std::move(lower)) {}

    struct Edge {
        ChunkState to;
        int weight;
        std::vector<VertexSet> bags;  // realized-graph ids
    };

    // min_branches as in ConnectedSolver::jump_candidates: the search raises
    // it to 26, where step and fill edges stop being complete on their own.
    std::vector<Edge> successors(const ChunkState& x, int min_branches = 13) {
        std::vector<Edge> out;
        bool initial = x.base.cover.empty() && x.i == 0 && x.j == 0;
        int theta = initial ? l1_ : k_ + 1;
        VertexSet big_all = c_.big.vertex_set();

        auto add_filled = [&](const AuxState& to, const VertexSet& big_bag, int di, int dj) {
            int a = big_bag.count() + di + 2 * dj;
            if (a == 0 || a > theta || a > k_ + 1) return;
            ChunkState nxt{to, x.i + di, x.j + dj};
            VertexSet bag = lift(big_bag);
            for (int t = x.i; t < x.i + di; ++t) bag.set(c_.single_id(t));
            for (int t = x.j; t < x.j + dj; ++t) {
                auto [u, w] = c_.pair_ids(t);
                bag.set(u);
                bag.set(w);
            }
            emit(out, nxt, 1, {bag}, big_all);
        };

        auto steps = base_.step_successors(x.base);
        VertexSet frontier = border(c_.big, x.base.cover);
        for (int di = 0; di <= c_.q1 - x.i; ++di)
            for (int dj = 0; dj <= c_.q2 - x.j; ++dj) {
                if (di + dj > 0)  // fill bag, big component untouched
                    add_filled(x.base, frontier, di, dj);
                for (const StepEdge& e : steps) add_filled(e.to, e.bag, di, dj);
            }

        for (const auto& cand : base_.jump_candidates(x.base, min_branches)) {
            int w = k_ - cand.sbar.count();
            int ny = cand.added.count();
            VertexSet pad = lift(cand.sbar);
            std::vector<int> parent = cand.added.members();  // sub id -> big id
            for (int di = 0; di <= c_.q1 - x.i; ++di)
                for (int dj = 0; dj <= c_.q2 - x.j; ++dj) {
                    auto sub = jump_sub(cand.added, w, di, dj);
                    if (!sub) continue;
                    std::vector<VertexSet> bags;
                    for (const VertexSet& b : *sub) {
                        VertexSet mapped = pad;
                        for (int v : b.members()) {
                            if (v < ny)
                                mapped.set(parent[v]);
                            else if (v < ny + di)
                                mapped.set(c_.single_id(x.i + (v - ny)));
                            else {
                                int t = (v - ny - di) / 2;
                                auto [u, w2] = c_.pair_ids(x.j + t);
                                mapped.set((v - ny - di) % 2 == 0 ? u : w2);
                            }
                        }
                        bags.push_back(mapped);
                    }
                    ChunkState nxt{AuxState{cand.sbar, x.base.cover | cand.added}, x.i + di,
                                   x.j + dj};
                    int weight = int(bags.size());  // before the move below
                    emit(out, nxt, weight, std::move(bags), big_all);
                }
        }
        return out;
    }

    // A bag never covers more than k+1 fresh vertices, and bags advancing the
    // big component are bounded by its own solver's estimate; admissible.
    int remaining_bound(const ChunkState& x) const {
        int u = c_.big.num_vertices() - x.base.cover.count() + (c_.q1 - x.i) +
                2 * (c_.q2 - x.j);
        return std::max((u + k_) / (k_ + 1), base_.remaining_bound(x.base));
    }

    std::optional<PathDecomposition> solve() {
        if (c_.num_vertices() == 0) return PathDecomposition{};
        int nb = c_.big.num_vertices();
        VertexSet big_all = c_.big.vertex_set();

        struct Node {
            ChunkState state;
            int parent;
            std::vector<VertexSet> bags;
        };
        std::vector<Node> nodes;
        // successors and the goal read only (cover, i, j), so the distance
        // map drops the bag from the key (see ConnectedSolver::solve)
        auto key = [nb](const ChunkState& s) {
            return ChunkState{AuxState{VertexSet(nb), s.base.cover}, s.i, s.j};
        };
        std::unordered_map<ChunkState, int, ChunkStateHash> best;
        // as in ConnectedSolver::solve: best bound first, then deepest
        using QItem = std::tuple<int, int, int>;
        std::priority_queue<QItem, std::vector<QItem>, std::greater<>> pq;

        ChunkState start{AuxState{VertexSet(nb), VertexSet(nb)}, 0, 0};
        nodes.push_back({start, -1, {}});
        best[key(start)] = 0;
        pq.emplace(remaining_bound(start), 0, 0);

        while (!pq.empty()) {
            auto [prio, negg, idx] = pq.top();
            pq.pop();
            ChunkState cur = nodes[idx].state;
            auto it = best.find(key(cur));
            if (it == best.end() || it->second + remaining_bound(cur) != prio) continue;
            int dist = it->second;

            if (cur.base.cover == big_all && cur.i == c_.q1 && cur.j == c_.q2) {
                PathDecomposition out;
                std::vector<int> chain;
                for (int i = idx; i > 0; i = nodes[i].parent) chain.push_back(i);
                for (auto ci = chain.rbegin(); ci != chain.rend(); ++ci)
                    for (const auto& b : nodes[*ci].bags) out.bags.push_back(b);
                return out;
            }

            for (Edge& e : successors(cur, 26)) {
                auto found = best.find(key(e.to));
                if (found != best.end() && found->second <= dist + e.weight) continue;
                best[key(e.to)] = dist + e.weight;
                nodes.push_back({e.to, idx, std::move(e.bags)});
                pq.emplace(dist + e.weight + remaining_bound(e.to), -(dist + e.weight),
                           int(nodes.size()) - 1);
            }
        }
        return std::nullopt;
    }

private:
    // map a big-component vertex set into the realized graph (ids coincide)
    VertexSet lift(const VertexSet& s) const {
        VertexSet out(c_.num_vertices());
        for (int v : s.members()) out.set(v);
        return out;
    }

    // Append the edge; if it closes the instance with an oversized last bag,
    // append a one-bag tail instead of rejecting.
    void emit(std::vector<Edge>& out, const ChunkState& to, int weight,
              std::vector<VertexSet> bags, const VertexSet& big_all) {
        bool full = to.base.cover == big_all && to.i == c_.q1 && to.j == c_.q2;
        if (full && bags.back().count() > l2_) {
            VertexSet tail(c_.num_vertices());
            auto m = bags.back().members();
            for (int i = 0; i < l2_ && i < int(m.size()); ++i) tail.set(m[i]);
            bags.push_back(tail);
            ++weight;
        }
        out.push_back({to, weight, std::move(bags)});
    }

    // Bags of a width-w decomposition of the induced subgraph on `y` plus di
    // fresh isolated vertices and dj fresh edges, in sub-instance ids
    // ([0,|y|) maps to ascending members of y, singles and pairs follow),
    // memoized. Callers remap into realized ids per current fill counts.
    std::optional<std::vector<VertexSet>> jump_sub(const VertexSet& y, int w, int di, int dj) {
        auto key = std::make_tuple(y, w, di, dj);
        auto memo = jump_memo_.find(key);
        if (memo == jump_memo_.end()) {
            std::optional<std::vector<VertexSet>> val;
            if (w >= 0) {
                auto sub = induced_subgraph(c_.big, y);
                int ny = sub.graph.num_vertices();
                auto edges = sub.graph.edges();
                for (int t = 0; t < dj; ++t)
                    edges.emplace_back(ny + di + 2 * t, ny + di + 2 * t + 1);
                Graph inst = Graph::from_edges(ny + di + 2 * dj, edges);
                if (auto p = lower_(inst, w)) val = p->bags;
            }
            memo = jump_memo_.emplace(std::move(key), std::move(val)).first;
        }
        return memo->second;
    }

    ChunkGraph c_;
    int k_, l1_, l2_;
    ConnectedSolver base_;
    LowerSolver lower_;
    std::map<std::tuple<VertexSet, int, int, int>, std::optional<std::vector<VertexSet>>>
        jump_memo_;
};

// Boundary caps must lie in 2..k+1; -1 means k+1. Infeasible exactly when the
// big component has pathwidth above k.
inline std::optional<PathDecomposition> solve_chunk(const ChunkGraph& c, int k, int lambda1,
                                                    int lambda2, LowerSolver lower) {
    if (k < 0) return std::nullopt;
    int l1 = lambda1 < 0 ? k + 1 : lambda1;
    int l2 = lambda2 < 0 ? k + 1 : lambda2;
    if (l1 < 2 || l1 > k + 1 || l2 < 2 || l2 > k + 1)
        throw std::invalid_argument("boundary caps must lie in 2..k+1");
    return ChunkSolver(c, k, l1, l2, std::move(lower)).solve();
}

struct TypedDecomposition {
    PathDecomposition decomposition;
    DecompositionType type;  // A, B2 or C; B1 arises later by reversal
};

// Minimum-length decomposition together with the strongest boundary shape
// that still attains the minimum: both boundary bags small (A), only the
// last one small (B2), or neither (C). Witness choice makes the fallbacks
// genuine: a free witness with any small boundary bag would have certified
// the stronger type, possibly after reversal.
inline std::optional<TypedDecomposition> type_optimal(const ChunkGraph& c, int k,
                                                      const LowerSolver& lower) {
    auto best = solve_chunk(c, k, -1, -1, lower);
    if (!best) return std::nullopt;
    int len = best->length();
    auto a = solve_chunk(c, k, 2, 2, lower);
    if (a && a->length() == len) return TypedDecomposition{*a, DecompositionType::A};
    auto b2 = solve_chunk(c, k, -1, 2, lower);
    if (b2 && b2->length() == len) return TypedDecomposition{*b2, DecompositionType::B2};
    return TypedDecomposition{*best, DecompositionType::C};
}

}  // namespace pathdec
