#pragma once

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "chunk_solver.hpp"
#include "decomposition.hpp"
#include "graph.hpp"

namespace pathdec {

// Merge opportunities available when a small-boundary chunk decompositions
// (type A) and b flippable one-small-side ones (type B) are ordered and
// oriented best among any number of big-boundary ones (type C).
inline int mu(int a, int b) { return b == 0 ? std::max(0, a - 1) : a + b / 2; }

// Configuration of a multiset of chunk types, determined by the counts alone.
inline int config_of(int a, int b) {
    if (b == 0) return a == 0 ? 1 : 2;
    return b % 2 == 1 ? 3 : 4;
}

enum class ChunkClass { A, B, C };

struct Transition {
    int next = 1;  // configuration after adding one chunk of the class
    int gain = 0;  // change of mu, i.e. merges earned by the addition
};

// Derived from mu on a representative count pair per configuration; the
// effect of adding one chunk is the same for every pair with that
// configuration, so the representative is immaterial.
inline Transition transition(int t, ChunkClass cls) {
    static constexpr std::array<std::pair<int, int>, 4> rep{{{0, 0}, {1, 0}, {0, 1}, {0, 2}}};
    auto [a, b] = rep.at(size_t(t) - 1);
    int a2 = a + (cls == ChunkClass::A);
    int b2 = b + (cls == ChunkClass::B);
    return {config_of(a2, b2), mu(a2, b2) - mu(a, b)};
}

// Fewest bags of capacity k+1 holding q1 single vertices and q2 unsplittable
// vertex pairs, over the canonical layout (singles first, then pairs). The
// bag count is found by trying counts upward; a count works exactly when the
// pairs fit pairwise and everything fits in total.
inline std::optional<PathDecomposition> solve_small_only(int q1, int q2, int k) {
    if (k < 0) return std::nullopt;
    int cap = k + 1;
    if (q2 > 0 && cap < 2) return std::nullopt;
    int n = q1 + 2 * q2;
    PathDecomposition out;
    if (n == 0) return out;
    int pairs_per_bag = cap / 2;
    int bag_count = 1;
    while (q2 > bag_count * pairs_per_bag || n > bag_count * cap) ++bag_count;

    int s = 0, p = 0;
    for (int b = 0; b < bag_count; ++b) {
        VertexSet bag(n);
        int room = cap;
        while (p < q2 && room >= 2) {
            bag.set(q1 + 2 * p);
            bag.set(q1 + 2 * p + 1);
            room -= 2;
            ++p;
        }
        while (s < q1 && room >= 1) {
            bag.set(s);
            --room;
            ++s;
        }
        out.bags.push_back(bag);
    }
    return out;
}

inline std::optional<PathDecomposition> solve(const Graph& g, int k);

namespace detail {

// Chunk decomposition in its private ids, rewritten into parent-graph ids:
// big part via to_parent, then the assigned isolated vertices and edge pairs.
inline PathDecomposition globalize(const PathDecomposition& p, int n, const ChunkGraph& c,
                                   const std::vector<int>& to_parent,
                                   const std::vector<int>& singles,
                                   const std::vector<std::pair<int, int>>& pairs) {
    int nb = c.big.num_vertices();
    PathDecomposition out;
    for (const VertexSet& b : p.bags) {
        VertexSet mapped(n);
        for (int v : b.members()) {
            if (v < nb)
                mapped.set(to_parent[v]);
            else if (v < nb + c.q1)
                mapped.set(singles[v - nb]);
            else {
                int t = (v - nb - c.q1) / 2;
                mapped.set((v - nb - c.q1) % 2 == 0 ? pairs[t].first : pairs[t].second);
            }
        }
        out.bags.push_back(mapped);
    }
    return out;
}

// Order and orient typed chunk decompositions so that every mu(a,b) merge
// happens under the greedy small-small fuse of concat. Type B items are
// stored last-bag-small; reversal turns one into its first-bag-small mirror.
inline std::vector<PathDecomposition> normal_form_order(
    std::vector<std::pair<PathDecomposition, ChunkClass>> items) {
    std::vector<PathDecomposition> as, bs, cs;
    for (auto& [p, cls] : items) {
        if (cls == ChunkClass::A)
            as.push_back(std::move(p));
        else if (cls == ChunkClass::B)
            bs.push_back(std::move(p));
        else
            cs.push_back(std::move(p));
    }
    std::vector<PathDecomposition> out;
    auto take = [&](std::vector<PathDecomposition>& v) {
        for (auto& p : v) out.push_back(std::move(p));
    };
    int b = int(bs.size());
    if (b == 0) {
        take(as);
        take(cs);
    } else if (b == 1) {
        take(cs);
        out.push_back(std::move(bs[0]));
        take(as);
    } else {
        out.push_back(std::move(bs[0]));
        take(as);
        out.push_back(reverse(bs[1]));
        take(cs);
        if (b % 2 == 0) {
            for (int i = 2; i < b; i += 2) {
                out.push_back(std::move(bs[i]));
                out.push_back(reverse(bs[i + 1]));
            }
        } else {
            out.push_back(std::move(bs[2]));
            for (int i = 3; i < b; i += 2) {
                out.push_back(reverse(bs[i]));
                out.push_back(std::move(bs[i + 1]));
            }
        }
    }
    return out;
}

}  // namespace detail

// Minimum-length width-k decomposition of an arbitrary graph, k <= 3.
// Big components become chunks; a DP distributes the K1/K2 pool over them,
// tracking the boundary-type configuration at k = 3 so that mu(a,b) merges
// are credited, and the chosen chunk decompositions are concatenated in
// normal-form order. Infeasible exactly when some big component has
// pathwidth above k.
inline std::optional<PathDecomposition> solve(const Graph& g, int k) {
    if (k < 0) return std::nullopt;
    if (k > 3) throw std::invalid_argument("width bounds above 3 are not supported");
    int n = g.num_vertices();
    if (n == 0) return PathDecomposition{};
    ComponentSplit split = classify_components(g);
    int c = int(split.big.size());
    int q1 = int(split.isolated.size());
    int q2 = int(split.edge_pairs.size());
    LowerSolver lower = [](const Graph& gg, int w) { return solve(gg, w); };

    if (c == 0) {
        auto packed = solve_small_only(q1, q2, k);
        if (!packed) return std::nullopt;
        PathDecomposition out;
        for (const VertexSet& b : packed->bags) {
            VertexSet mapped(n);
            for (int v : b.members()) {
                if (v < q1)
                    mapped.set(split.isolated[v]);
                else {
                    int t = (v - q1) / 2;
                    const auto& e = split.edge_pairs[t];
                    mapped.set((v - q1) % 2 == 0 ? e.first : e.second);
                }
            }
            out.bags.push_back(mapped);
        }
        return out;
    }
    if (k == 0) return std::nullopt;  // a big component always has an edge

    std::vector<InducedSubgraph> bigs;
    for (const VertexSet& comp : split.big) bigs.push_back(induced_subgraph(g, comp));

    // typed minimum-length solve per (component, assigned K1's, assigned K2's)
    std::map<std::tuple<int, int, int>, std::optional<TypedDecomposition>> chunk_memo;
    auto chunk = [&](int m, int i, int j) -> const std::optional<TypedDecomposition>& {
        auto key = std::make_tuple(m, i, j);
        auto it = chunk_memo.find(key);
        if (it == chunk_memo.end()) {
            ChunkGraph cg{bigs[m].graph, i, j};
            std::optional<TypedDecomposition> td;
            if (k == 3) {
                td = type_optimal(cg, k, lower);
            } else if (auto p = solve_chunk(cg, k, -1, -1, lower)) {
                // below k = 3 types never pay off, any minimum-length solve does
                td = TypedDecomposition{*p, classify_type(*p)};
            }
            it = chunk_memo.emplace(std::move(key), std::move(td)).first;
        }
        return it->second;
    };
    for (int m = 0; m < c; ++m)
        if (!chunk(m, 0, 0)) return std::nullopt;

    auto cls_of = [](DecompositionType t) {
        if (t == DecompositionType::A) return ChunkClass::A;
        if (t == DecompositionType::C) return ChunkClass::C;
        return ChunkClass::B;
    };

    // dp[m][r1][r2][t]: shortest total length using the first m components,
    // r1/r2 small components spent, boundary-type configuration t; at k < 3
    // only t = 1 is used and no merge credit is taken
    constexpr int inf = std::numeric_limits<int>::max() / 2;
    struct Back {
        int i = -1, j = -1, tprev = -1;
    };
    auto idx = [&](int m, int r1, int r2, int t) {
        return ((m * (q1 + 1) + r1) * (q2 + 1) + r2) * 4 + (t - 1);
    };
    std::vector<int> dp((c + 1) * (q1 + 1) * (q2 + 1) * 4, inf);
    std::vector<Back> back(dp.size());
    dp[idx(0, 0, 0, 1)] = 0;

    for (int m = 1; m <= c; ++m)
        for (int r1 = 0; r1 <= q1; ++r1)
            for (int r2 = 0; r2 <= q2; ++r2)
                for (int i = 0; i <= r1; ++i)
                    for (int j = 0; j <= r2; ++j) {
                        const auto& td = chunk(m - 1, i, j);
                        if (!td) continue;
                        int len = td->decomposition.length();
                        ChunkClass cls = cls_of(td->type);
                        for (int tprev = 1; tprev <= 4; ++tprev) {
                            int prev = dp[idx(m - 1, r1 - i, r2 - j, tprev)];
                            if (prev >= inf) continue;
                            Transition tr =
                                k == 3 ? transition(tprev, cls) : Transition{1, 0};
                            int cand = prev + len - tr.gain;
                            int& cell = dp[idx(m, r1, r2, tr.next)];
                            if (cand < cell) {  // scan order breaks ties low
                                cell = cand;
                                back[idx(m, r1, r2, tr.next)] = {i, j, tprev};
                            }
                        }
                    }

    int best_t = -1;
    for (int t = 1; t <= 4; ++t)
        if (best_t < 0 || dp[idx(c, q1, q2, t)] < dp[idx(c, q1, q2, best_t)]) best_t = t;
    if (dp[idx(c, q1, q2, best_t)] >= inf) return std::nullopt;

    // walk the back-pointers, then hand out concrete small components in
    // ascending id order along the component order
    std::vector<std::pair<int, int>> assign(c);
    {
        int r1 = q1, r2 = q2, t = best_t;
        for (int m = c; m >= 1; --m) {
            Back b = back[idx(m, r1, r2, t)];
            assign[m - 1] = {b.i, b.j};
            r1 -= b.i;
            r2 -= b.j;
            t = b.tprev;
        }
    }
    std::vector<std::pair<PathDecomposition, ChunkClass>> items;
    int s_at = 0, p_at = 0;
    for (int m = 0; m < c; ++m) {
        auto [i, j] = assign[m];
        const auto& td = chunk(m, i, j);
        std::vector<int> singles(split.isolated.begin() + s_at, split.isolated.begin() + s_at + i);
        std::vector<std::pair<int, int>> pairs(split.edge_pairs.begin() + p_at,
                                               split.edge_pairs.begin() + p_at + j);
        s_at += i;
        p_at += j;
        ChunkGraph cg{bigs[m].graph, i, j};
        items.emplace_back(
            detail::globalize(td->decomposition, n, cg, bigs[m].to_parent, singles, pairs),
            cls_of(td->type));
    }

    PathDecomposition out;
    if (k == 3) {
        for (PathDecomposition& p : detail::normal_form_order(std::move(items)))
            out = concat(out, p);  // small-small fuses realize the mu credits
    } else {
        for (auto& [p, cls] : items) out = concat(out, p, false);
    }
    return out;
}

}  // namespace pathdec
