#pragma once

#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <unordered_map>
#include <vector>

#include "decomposition.hpp"
#include "generic_solver.hpp"
#include "graph.hpp"

namespace pathdec {

// Minimum-length width-k decompositions of connected graphs, k <= 3, as a
// shortest path over lazily generated states.
//
// A state is (bag, cover): the current bag and the set of vertices already
// placed. Per anchored set S inside the bag the state induces a triple
// (greens, branch flags, covered-leaf count); the cover determines flags and
// the leaf count, while greens only matter when a jump is taken and are
// enumerated there. Two edge kinds:
//   step: append one bag = frontier + fresh vertices, weight 1
//   jump: for a bottleneck S inside the frontier, cover a chosen family of
//         untouched S-branches plus some S-leaves by a width-(k - |frontier|)
//         sub-decomposition, every sub-bag padded with the frontier; weight =
//         sub-decomposition length
// Covered leaves are kept as a prefix of the ascending-id leaf order; a
// pruned non-prefix state always has an automorphic twin that survives.

struct CoverTriple {
    std::vector<int> greens;     // indices into s_components(g,s).branches
    std::vector<uint8_t> flags;  // 1 = branch fully covered
    int leaf_count = 0;          // covered leaves (prefix of ascending order)
};

struct AuxState {
    VertexSet bag;
    VertexSet cover;
    bool operator==(const AuxState&) const = default;
};

struct AuxStateHash {
    size_t operator()(const AuxState& s) const { return s.bag.hash() * 1000003 + s.cover.hash(); }
};

using TripleMap = std::map<VertexSet, CoverTriple>;
using LowerSolver = std::function<std::optional<PathDecomposition>(const Graph&, int)>;

// Reconstruct the cover from (bag, triples): the bag, the first leaf_count
// leaves and every flagged branch of each anchored set.
inline VertexSet cover_set(const Graph& g, const VertexSet& bag, const TripleMap& triples) {
    VertexSet out = bag;
    for (const auto& [s, t] : triples) {
        auto sc = s_components(g, s);
        for (int i = 0; i < t.leaf_count && i < int(sc.leaves.size()); ++i) out.set(sc.leaves[i]);
        for (size_t h = 0; h < sc.branches.size(); ++h)
            if (h < t.flags.size() && t.flags[h]) out |= sc.branches[h];
    }
    return out;
}

// Derive the triple view of a state. Greens are a canonical admissible
// choice: all untouched branches when enough exist, else all covered ones.
inline TripleMap cover_triples(const Graph& g, const AuxState& v) {
    TripleMap out;
    for (const VertexSet& s : subsets_of(v.bag)) {
        if (s.empty()) continue;
        auto sc = s_components(g, s);
        CoverTriple t;
        for (int leaf : sc.leaves)
            if (v.cover.test(leaf)) ++t.leaf_count;
        std::vector<int> untouched, covered;
        for (size_t h = 0; h < sc.branches.size(); ++h) {
            bool full = v.cover.contains(sc.branches[h]);
            t.flags.push_back(full);
            if (full)
                covered.push_back(int(h));
            else if (!v.cover.intersects(sc.branches[h]))
                untouched.push_back(int(h));
        }
        if (sc.branches.size() >= 13) {
            int need = int(sc.branches.size()) - 12;
            t.greens = (int(untouched.size()) >= std::max(need, 1)) ? untouched : covered;
        }
        out.emplace(s, std::move(t));
    }
    return out;
}

// True if swapping the two branches (components of G - S with neighborhood
// exactly S) extends to an automorphism of G: a bijection preserving the
// internal edges and the exact attachment to S. Branches above the size cap
// are treated as inequivalent, which only costs pruning power.
inline bool branches_interchangeable(const Graph& g, const VertexSet& a, const VertexSet& b) {
    if (a.count() != b.count() || a.count() > 10) return false;
    std::vector<int> va = a.members(), vb = b.members();
    int m = int(va.size());
    std::vector<int> image(m, -1);
    std::vector<char> used(m, 0);
    auto outside = [&](int v, const VertexSet& inside) { return g.neighbors(v) - inside; };
    std::function<bool(int)> match = [&](int i) {
        if (i == m) return true;
        for (int j = 0; j < m; ++j) {
            if (used[j]) continue;
            if (outside(va[i], a) != outside(vb[j], b)) continue;
            bool ok = true;
            for (int p = 0; p < i && ok; ++p)
                ok = g.has_edge(va[i], va[p]) == g.has_edge(vb[j], vb[image[p]]);
            if (!ok) continue;
            image[i] = j;
            used[j] = 1;
            if (match(i + 1)) return true;
            used[j] = 0;
            image[i] = -1;
        }
        return false;
    };
    return match(0);
}

// Class id per branch under the interchangeability relation, grouped against
// the first representative of each class.
inline std::vector<int> branch_classes(const Graph& g, const std::vector<VertexSet>& branches) {
    std::vector<int> cls(branches.size(), -1);
    for (size_t i = 0; i < branches.size(); ++i) {
        for (size_t j = 0; j < i; ++j)
            if (cls[j] == int(j) && branches_interchangeable(g, branches[i], branches[j])) {
                cls[i] = int(j);
                break;
            }
        if (cls[i] < 0) cls[i] = int(i);
    }
    return cls;
}

namespace detail {

// Leaf and branch canonical-order rules shared by expressible and the cached
// solver check. Covered leaves must form a prefix of the ascending order, and
// within every class of interchangeable branches the fully covered members
// must come first: sorting the class by completion time is an automorphism
// of G, so some minimum decomposition passes through sorted states only.
inline bool anchored_rules_ok(const Graph& g, const SComponents& sc, const std::vector<int>& cls,
                              const VertexSet& cover) {
    bool seen_uncovered = false;
    for (int leaf : sc.leaves) {
        if (!cover.test(leaf))
            seen_uncovered = true;
        else if (seen_uncovered)
            return false;
    }
    int c = int(sc.branches.size());
    int flag1 = 0;
    unsigned char small[64];
    std::vector<unsigned char> big;
    unsigned char* nonfull_seen = small;  // per class representative
    if (c > 64) {
        big.assign(c, 0);
        nonfull_seen = big.data();
    } else {
        std::fill_n(small, c, 0);
    }
    for (int h = 0; h < c; ++h) {
        if (cover.contains(sc.branches[h])) {
            ++flag1;
            if (nonfull_seen[cls[h]]) return false;  // full after a non-full class member
        } else {
            nonfull_seen[cls[h]] = 1;
        }
    }
    if (c >= 13 && std::max(flag1, c - flag1) < c - 12) return false;
    return true;
}

}  // namespace detail

// A state is representable when, for every anchored set inside the bag,
// covered leaves form a prefix, fully covered branches form a prefix of
// their interchangeability class, and (for bottleneck sets) one flag value
// occurs on all but at most 12 branches.
inline bool expressible(const Graph& g, const AuxState& v) {
    for (const VertexSet& s : subsets_of(v.bag)) {
        if (s.empty()) continue;
        auto sc = s_components(g, s);
        if (!detail::anchored_rules_ok(g, sc, branch_classes(g, sc.branches), v.cover))
            return false;
    }
    return true;
}

struct StepEdge {
    AuxState to;
    VertexSet bag;
};

struct JumpEdge {
    AuxState to;
    int weight = 0;
    std::vector<VertexSet> bags;  // already padded with the frontier
    VertexSet anchor;             // the bottleneck set S
    VertexSet added;              // newly covered vertices
};

class ConnectedSolver {
public:
    ConnectedSolver(const Graph& g, int k, LowerSolver lower)
        : g_(g), k_(k), lower_(std::move(lower)) {}

    std::vector<StepEdge> step_successors(const AuxState& v) {
        std::vector<StepEdge> out;
        VertexSet frontier = border(g_, v.cover);
        std::vector<int> uncovered = (g_.vertex_set() - v.cover).members();
        int room = k_ + 1 - frontier.count();
        if (room < 0) return out;
        std::vector<int> buf;
        detail::combinations_upto(uncovered, room, buf, 0, [&](const std::vector<int>& nsel) {
            // a vertex can wait until a bag realizes one of its edges, so
            // fresh vertices without a neighbor in the bag are never needed
            for (int x : nsel) {
                const VertexSet& nb = g_.neighbors(x);
                if (nb.intersects(frontier)) continue;
                bool attached = nb.empty();
                for (int y : nsel)
                    if (y != x && nb.test(y)) {
                        attached = true;
                        break;
                    }
                if (!attached) return;
            }
            VertexSet bag = frontier;
            for (int x : nsel) bag.set(x);
            if (bag.empty()) return;
            AuxState nxt{bag, v.cover | bag};
            if (nxt == v) return;
            if (!state_ok(nxt)) return;
            out.push_back({nxt, bag});
        });
        return out;
    }

    struct JumpCandidate {
        VertexSet sbar;    // frontier = shared bag of the whole jump
        VertexSet anchor;  // bottleneck set S
        VertexSet added;   // chosen branches plus leaf prefix, disjoint from cover
    };

    // Jump shapes available from v, before solving the sub-instance. The
    // chosen family takes all untouched branches except at most 2k left-outs:
    // branches skipped by a jump are traversed around the bottleneck interval
    // later, and at most 2k branches fit on that side. min_branches tightens
    // the bottleneck threshold; the search raises it to 26, below which the
    // flag-homogeneity pruning is vacuous and step edges alone are complete.
    std::vector<JumpCandidate> jump_candidates(const AuxState& v, int min_branches = 13) {
        std::vector<JumpCandidate> out;
        VertexSet sbar = border(g_, v.cover);
        if (sbar.empty() || sbar.count() > k_) return out;
        for (const VertexSet& s : subsets_of(sbar)) {
            if (s.empty()) continue;
            const SComponents& sc = comps(s);
            int c = int(sc.branches.size());
            if (c < std::max(min_branches, 13)) continue;  // not a bottleneck
            std::vector<int> eligible;  // untouched branches, flippable to covered
            for (size_t h = 0; h < sc.branches.size(); ++h)
                if (!v.cover.intersects(sc.branches[h])) eligible.push_back(int(h));
            std::vector<int> fresh_leaves;
            for (int leaf : sc.leaves)
                if (!v.cover.test(leaf)) fresh_leaves.push_back(leaf);
            int need = std::max(c - 12, 1);
            VertexSet all_eligible(g_.num_vertices());
            for (int h : eligible) all_eligible |= sc.branches[h];
            int max_leave = std::min(int(eligible.size()), 2 * k_);
            std::vector<int> buf;
            detail::combinations_upto(eligible, max_leave, buf, 0,
                                      [&](const std::vector<int>& leave) {
                if (int(eligible.size()) - int(leave.size()) < need) return;
                VertexSet greens = all_eligible;
                for (int h : leave) greens -= sc.branches[h];
                for (int take = 0; take <= int(fresh_leaves.size()); ++take) {
                    VertexSet y = greens;
                    for (int i = 0; i < take; ++i) y.set(fresh_leaves[i]);
                    if (y.empty()) continue;
                    if (!state_ok(AuxState{sbar, v.cover | y})) continue;
                    out.push_back({sbar, s, y});
                }
            });
        }
        return out;
    }

    std::vector<JumpEdge> jump_successors(const AuxState& v, int min_branches = 13) {
        std::vector<JumpEdge> out;
        for (const JumpCandidate& cand : jump_candidates(v, min_branches)) {
            auto sub = solve_lower(cand.added, k_ - cand.sbar.count());
            if (!sub) continue;
            JumpEdge e;
            e.to = AuxState{cand.sbar, v.cover | cand.added};
            e.weight = sub->first;
            e.bags = sub->second;
            for (auto& b : e.bags) b |= cand.sbar;
            e.anchor = cand.anchor;
            e.added = cand.added;
            out.push_back(std::move(e));
        }
        return out;
    }

    // Bags still needed: the first bag takes at most k+1 fresh vertices, and
    // on a connected graph every later bag carries a frontier vertex, so it
    // takes at most k. Admissible, hence usable as an A* bound.
    int remaining_bound(const AuxState& v) const {
        int u = g_.num_vertices() - v.cover.count();
        if (u == 0) return 0;
        int per = std::max(1, k_);
        if (!v.cover.empty()) return (u + per - 1) / per;
        if (u <= k_ + 1) return 1;
        return 1 + (u - k_ - 1 + per - 1) / per;
    }

    std::optional<PathDecomposition> solve() {
        int n = g_.num_vertices();
        if (n == 0) return PathDecomposition{};
        VertexSet all = g_.vertex_set();

        struct Node {
            AuxState state;
            int parent;
            std::vector<VertexSet> bags;
        };
        std::vector<Node> nodes;
        // Successors and the goal test read only the cover (steps and jumps
        // both rebuild the frontier from it), so states with equal covers are
        // interchangeable and the distance map can ignore the bag.
        std::unordered_map<VertexSet, int, VertexSetHash> best;  // cover -> distance
        // (distance + remaining bound, -distance, node index): equal bounds
        // break toward deeper states, which dives straight down tight paths
        using QItem = std::tuple<int, int, int>;
        std::priority_queue<QItem, std::vector<QItem>, std::greater<>> pq;

        AuxState start{VertexSet(n), VertexSet(n)};
        nodes.push_back({start, -1, {}});
        best[start.cover] = 0;
        pq.emplace(remaining_bound(start), 0, 0);

        while (!pq.empty()) {
            auto [prio, negg, idx] = pq.top();
            pq.pop();
            AuxState cur = nodes[idx].state;
            auto it = best.find(cur.cover);
            if (it == best.end() || it->second + remaining_bound(cur) != prio)
                continue;  // stale entry
            int dist = it->second;

            if (cur.cover == all) {
                PathDecomposition out;
                std::vector<int> chain;
                for (int i = idx; i > 0; i = nodes[i].parent) chain.push_back(i);
                for (auto ci = chain.rbegin(); ci != chain.rend(); ++ci)
                    for (const auto& b : nodes[*ci].bags) out.bags.push_back(b);
                return out;
            }

            auto relax = [&](const AuxState& to, int w, std::vector<VertexSet> bags) {
                auto found = best.find(to.cover);
                if (found != best.end() && found->second <= dist + w) return;
                best[to.cover] = dist + w;
                nodes.push_back({to, idx, std::move(bags)});
                pq.emplace(dist + w + remaining_bound(to), -(dist + w), int(nodes.size()) - 1);
            };
            for (auto& e : step_successors(cur)) relax(e.to, 1, {e.bag});
            for (auto& e : jump_successors(cur, 26)) relax(e.to, e.weight, std::move(e.bags));
        }
        return std::nullopt;
    }

    // Minimum length and bags (in g's ids) of a width-w decomposition of the
    // induced subgraph on y, memoized.
    std::optional<std::pair<int, std::vector<VertexSet>>> solve_lower(const VertexSet& y, int w) {
        auto key = std::make_pair(w, y);
        auto it = sub_memo_.find(key);
        if (it == sub_memo_.end()) {
            std::optional<std::pair<int, std::vector<VertexSet>>> val;
            if (w >= 0) {
                auto sub = induced_subgraph(g_, y);
                if (auto p = lower_(sub.graph, w)) {
                    std::vector<VertexSet> bags;
                    for (const auto& b : p->bags) {
                        VertexSet mapped(g_.num_vertices());
                        for (int x : b.members()) mapped.set(sub.to_parent[x]);
                        bags.push_back(mapped);
                    }
                    val = std::make_pair(p->length(), std::move(bags));
                }
            }
            it = sub_memo_.emplace(std::move(key), std::move(val)).first;
        }
        return it->second;
    }

private:
    const SComponents& comps(const VertexSet& s) {
        auto it = sc_memo_.find(s);
        if (it == sc_memo_.end()) it = sc_memo_.emplace(s, s_components(g_, s)).first;
        return it->second;
    }

    struct AnchorInfo {
        SComponents sc;
        std::vector<int> cls;
        bool trivial = false;  // no leaves, no bottleneck, no repeated class
    };

    const AnchorInfo& anchor_info(const VertexSet& s) {
        auto it = anchor_memo_.find(s);
        if (it == anchor_memo_.end()) {
            AnchorInfo info{s_components(g_, s), {}, false};
            info.cls = branch_classes(g_, info.sc.branches);
            bool repeated = false;
            for (size_t h = 0; h < info.cls.size(); ++h) repeated |= info.cls[h] != int(h);
            info.trivial =
                info.sc.leaves.empty() && info.sc.branches.size() < 13 && !repeated;
            it = anchor_memo_.emplace(s, std::move(info)).first;
        }
        return it->second;
    }

    // expressible(), but with a per-anchor cache and no subset allocation
    bool state_ok(const AuxState& v) {
        std::vector<int> m = v.bag.members();
        VertexSet sub(g_.num_vertices());
        for (uint64_t mask = 1; mask < (uint64_t(1) << m.size()); ++mask) {
            for (size_t i = 0; i < m.size(); ++i) {
                if (mask >> i & 1)
                    sub.set(m[i]);
                else
                    sub.reset(m[i]);
            }
            const AnchorInfo& info = anchor_info(sub);
            if (info.trivial) continue;
            if (!detail::anchored_rules_ok(g_, info.sc, info.cls, v.cover)) return false;
        }
        return true;
    }

    const Graph& g_;
    int k_;
    LowerSolver lower_;
    std::map<std::pair<int, VertexSet>, std::optional<std::pair<int, std::vector<VertexSet>>>>
        sub_memo_;
    std::unordered_map<VertexSet, SComponents, VertexSetHash> sc_memo_;
    std::unordered_map<VertexSet, AnchorInfo, VertexSetHash> anchor_memo_;
};

inline std::optional<PathDecomposition> solve_connected(const Graph& g, int k, LowerSolver lower) {
    if (k < 0) return std::nullopt;
    return ConnectedSolver(g, k, std::move(lower)).solve();
}

}  // namespace pathdec
