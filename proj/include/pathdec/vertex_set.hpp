#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace pathdec {

// Subset of {0,...,n-1} as a fixed-universe bitset. All binary ops require
// equal universes.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(int universe) : n_(universe), w_((universe + 63) / 64, 0) {}

    static VertexSet of(int universe, std::initializer_list<int> vs) {
        VertexSet s(universe);
        for (int v : vs) s.set(v);
        return s;
    }

    static VertexSet of(int universe, const std::vector<int>& vs) {
        VertexSet s(universe);
        for (int v : vs) s.set(v);
        return s;
    }
    static VertexSet full(int universe) {
        VertexSet s(universe);
        for (int v = 0; v < universe; ++v) s.set(v);
        return s;
    }

    int universe() const { return n_; }

    bool test(int v) const {
        check(v);
        return (w_[v >> 6] >> (v & 63)) & 1u;
    }
    void set(int v) {
        check(v);
        w_[v >> 6] |= uint64_t{1} << (v & 63);
    }
    void reset(int v) {
        check(v);
        w_[v >> 6] &= ~(uint64_t{1} << (v & 63));
    }

    int count() const {
        int c = 0;
        for (uint64_t w : w_) c += std::popcount(w);
        return c;
    }
    bool empty() const {
        for (uint64_t w : w_)
            if (w) return false;
        return true;
    }

    // smallest member, or -1 if empty
    int first() const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i]) return int(i * 64 + std::countr_zero(w_[i]));
        return -1;
    }

    bool contains(const VertexSet& o) const {  // superset test
        for (size_t i = 0; i < w_.size(); ++i)
            if (o.w_[i] & ~w_[i]) return false;
        return true;
    }
    bool intersects(const VertexSet& o) const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    VertexSet operator|(const VertexSet& o) const { return zip(o, [](uint64_t a, uint64_t b) { return a | b; }); }
    VertexSet operator&(const VertexSet& o) const { return zip(o, [](uint64_t a, uint64_t b) { return a & b; }); }
    VertexSet operator-(const VertexSet& o) const { return zip(o, [](uint64_t a, uint64_t b) { return a & ~b; }); }
    VertexSet& operator|=(const VertexSet& o) { return *this = *this | o; }
    VertexSet& operator&=(const VertexSet& o) { return *this = *this & o; }
    VertexSet& operator-=(const VertexSet& o) { return *this = *this - o; }

    bool operator==(const VertexSet& o) const { return n_ == o.n_ && w_ == o.w_; }
    auto operator<=>(const VertexSet& o) const = default;

    std::vector<int> members() const {
        std::vector<int> out;
        out.reserve(count());
        for (size_t i = 0; i < w_.size(); ++i) {
            uint64_t w = w_[i];
            while (w) {
                out.push_back(int(i * 64 + std::countr_zero(w)));
                w &= w - 1;
            }
        }
        return out;
    }

    size_t hash() const {
        size_t h = std::hash<int>{}(n_);
        for (uint64_t w : w_) h = h * 1099511628211ull ^ std::hash<uint64_t>{}(w);
        return h;
    }

private:
    template <class F>
    VertexSet zip(const VertexSet& o, F f) const {
        if (n_ != o.n_) throw std::invalid_argument("VertexSet: universe mismatch");
        VertexSet r(n_);
        for (size_t i = 0; i < w_.size(); ++i) r.w_[i] = f(w_[i], o.w_[i]);
        return r;
    }
    void check(int v) const {
        if (v < 0 || v >= n_) throw std::out_of_range("VertexSet: vertex out of range");
    }

    int n_ = 0;
    std::vector<uint64_t> w_;
};

struct VertexSetHash {
    size_t operator()(const VertexSet& s) const { return s.hash(); }
};

}  // namespace pathdec
