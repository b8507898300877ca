#pragma once

#include <algorithm>
#include <deque>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "decomposition.hpp"
#include "graph.hpp"

namespace pathdec {

// Exhaustive minimum-length search over states (covered vertices, last bag).
// A successor appends one bag whose covered part lies inside the previous bag;
// states keep every frontier vertex (one with an uncovered neighbor) in the
// last bag, otherwise some edge could never be covered later. Works for any
// width bound; exponential in n, meant for cross-checking and small inputs.
//
// lambda1 / lambda2 cap the first / last bag size; -1 means k+1.
// Returns the lexicographically smallest bag sequence among the shortest.
namespace detail {

struct GenericState {
    VertexSet covered;
    VertexSet last;
    bool operator==(const GenericState&) const = default;
};

struct GenericStateHash {
    size_t operator()(const GenericState& s) const { return s.covered.hash() * 31 + s.last.hash(); }
};

inline void combinations_upto(const std::vector<int>& pool, int maxk, std::vector<int>& cur,
                              size_t start, const std::function<void(const std::vector<int>&)>& emit) {
    emit(cur);
    if (int(cur.size()) == maxk) return;
    for (size_t i = start; i < pool.size(); ++i) {
        cur.push_back(pool[i]);
        combinations_upto(pool, maxk, cur, i + 1, emit);
        cur.pop_back();
    }
}

}  // namespace detail

inline std::optional<PathDecomposition> solve_exact(const Graph& g, int k, int lambda1 = -1,
                                                    int lambda2 = -1) {
    int n = g.num_vertices();
    if (n == 0) return PathDecomposition{};
    if (k < 0) return std::nullopt;
    int cap = k + 1;
    if (lambda1 < 0) lambda1 = cap;
    if (lambda2 < 0) lambda2 = cap;

    struct Node {
        detail::GenericState state;
        int parent;
        VertexSet bag;
    };
    std::vector<Node> nodes;
    std::unordered_map<detail::GenericState, int, detail::GenericStateHash> seen;
    VertexSet all = g.vertex_set();

    detail::GenericState start{VertexSet(n), VertexSet(n)};
    nodes.push_back({start, -1, VertexSet(n)});
    seen.emplace(start, 0);
    std::deque<int> queue{0};

    while (!queue.empty()) {
        int idx = queue.front();
        queue.pop_front();
        detail::GenericState cur = nodes[idx].state;  // copy: nodes may reallocate

        if (cur.covered == all && cur.last.count() <= lambda2) {
            PathDecomposition out;
            for (int i = idx; i > 0; i = nodes[i].parent) out.bags.push_back(nodes[i].bag);
            std::reverse(out.bags.begin(), out.bags.end());
            return out;
        }

        bool first = cur.covered.empty();
        std::vector<int> uncovered = (all - cur.covered).members();
        VertexSet frontier = border(g, cur.covered);  // must persist into the next bag

        // candidate bags frontier + K + N, K kept from the previous bag,
        // N new vertices; covered neighbors of N are all in the frontier,
        // so every edge gets a common bag exactly when frontiers persist
        std::vector<VertexSet> cands;
        for (const VertexSet& ksub : subsets_of(cur.last - frontier)) {
            if (first && !ksub.empty()) continue;
            VertexSet kept = frontier | ksub;
            int room = cap - kept.count();
            if (first) room = std::min(room, lambda1);
            if (room < 0) continue;
            std::vector<int> buf;
            detail::combinations_upto(uncovered, room, buf, 0, [&](const std::vector<int>& nsel) {
                if (kept.empty() && nsel.empty()) return;
                VertexSet bag = kept;
                for (int v : nsel) bag.set(v);
                cands.push_back(bag);
            });
        }
        std::sort(cands.begin(), cands.end(),
                  [](const VertexSet& a, const VertexSet& b) { return a.members() < b.members(); });

        for (const VertexSet& bag : cands) {
            detail::GenericState nxt{cur.covered | bag, bag};
            if (seen.contains(nxt)) continue;
            seen.emplace(nxt, int(nodes.size()));
            nodes.push_back({nxt, idx, bag});
            queue.push_back(int(nodes.size()) - 1);
        }
    }
    return std::nullopt;
}

inline bool is_pathwidth_at_most(const Graph& g, int k) { return solve_exact(g, k).has_value(); }

}  // namespace pathdec
