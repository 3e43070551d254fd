#pragma once

#include <map>
#include <set>

#include "choc/chocolate.hpp"
#include "choc/core.hpp"

// Test-only reference evaluators. These deliberately share no move
// iteration, memoization, or mex code with the engine:
//   - naive_grundy: memo-free recursion straight off the definitions,
//     usable only at tiny bounds (the call tree is exponential);
//   - DpOracle: bottom-up evaluation over positions sorted by coordinate
//     sum, std::map storage, mex by sorted scan.

namespace oracle {

using choc::BaseFn;
using choc::Coord;
using choc::Position;

// mex via sorted scan, unlike the engine's presence bitmap
inline Coord slow_mex(const std::set<Coord>& s) {
    Coord m = 0;
    for (Coord v : s) {
        if (v > m) break;
        if (v == m) ++m;
    }
    return m;
}

// move set of CB(F, x1..xs, y), re-derived from the definitions
inline std::set<Position> choc_moves(const BaseFn& f, int s, const Position& p) {
    std::set<Position> out;
    Coord y = p.back();
    for (int axis = 0; axis < s; ++axis) {
        for (Coord u = 0; u < p[static_cast<std::size_t>(axis)]; ++u) {
            Position q = p;
            q[static_cast<std::size_t>(axis)] = u;
            Coord limit = f(std::span<const Coord>(q.data(), static_cast<std::size_t>(s)));
            q.back() = y < limit ? y : limit;
            out.insert(q);
        }
    }
    for (Coord w = 0; w < y; ++w) {
        Position q = p;
        q.back() = w;
        out.insert(q);
    }
    return out;
}

// Memo-free. Exponential call tree; keep coordinates tiny.
inline Coord naive_grundy(const BaseFn& f, int s, const Position& p) {
    std::set<Coord> child;
    for (const Position& q : choc_moves(f, s, p)) child.insert(naive_grundy(f, s, q));
    return slow_mex(child);
}

// Bottom-up table over all valid positions with base within bounds.
class DpOracle {
public:
    DpOracle(BaseFn f, int s, std::vector<Coord> bounds) : f_(std::move(f)), s_(s) {
        std::vector<std::pair<Coord, Position>> order;  // (coordinate sum, position)
        Position p(static_cast<std::size_t>(s_) + 1, 0);
        enumerate(p, 0, bounds, order);
        std::sort(order.begin(), order.end());
        for (auto& [sum, pos] : order) {
            std::set<Coord> child;
            for (const Position& q : choc_moves(f_, s_, pos)) child.insert(table_.at(q));
            table_[pos] = slow_mex(child);
        }
    }

    Coord at(const Position& p) const { return table_.at(p); }
    const std::map<Position, Coord>& table() const { return table_; }

private:
    void enumerate(Position& p, int axis, const std::vector<Coord>& bounds,
                   std::vector<std::pair<Coord, Position>>& order) {
        if (axis == s_) {
            Coord limit = f_(std::span<const Coord>(p.data(), static_cast<std::size_t>(s_)));
            for (Coord y = 0; y <= limit; ++y) {
                p.back() = y;
                Coord sum = 0;
                for (Coord c : p) sum += c;
                order.emplace_back(sum, p);
            }
            return;
        }
        for (Coord v = 0; v <= bounds[static_cast<std::size_t>(axis)]; ++v) {
            p[static_cast<std::size_t>(axis)] = v;
            enumerate(p, axis + 1, bounds, order);
        }
    }

    BaseFn f_;
    int s_;
    std::map<Position, Coord> table_;
};

// Retrograde P/N labeling for pass-Nim, independent of Grundy values:
// a state is P iff every move leads to an N state.
class PassNimRetrograde {
public:
    PassNimRetrograde(int k, Coord t, Coord bound) : k_(k), t_(t) {
        std::vector<std::pair<Coord, Position>> order;
        Position s(static_cast<std::size_t>(k_) + 1, 0);
        enumerate(s, 0, bound, order);
        std::sort(order.begin(), order.end());
        for (auto& [sum, state] : order) {
            bool has_p_move = false;
            for (const Position& q : moves(state))
                if (is_p_.at(q)) has_p_move = true;
            is_p_[state] = !has_p_move;
        }
    }

    bool is_p(const Position& state) const { return is_p_.at(state); }
    const std::map<Position, bool>& table() const { return is_p_; }

    std::set<Position> moves(const Position& state) const {
        std::set<Position> out;
        for (int i = 0; i < k_; ++i) {
            for (Coord r = 0; r < state[static_cast<std::size_t>(i)]; ++r) {
                Position q = state;
                q[static_cast<std::size_t>(i)] = r;
                out.insert(normalize(q));
            }
        }
        if (state.back() == 1) {
            Position q = state;
            q.back() = 0;
            out.insert(q);
        }
        return out;
    }

    Position normalize(Position state) const {
        bool any_big = false;
        for (int i = 0; i < k_; ++i)
            if (state[static_cast<std::size_t>(i)] > t_) any_big = true;
        if (!any_big) state.back() = 0;
        return state;
    }

private:
    void enumerate(Position& s, int axis, Coord bound,
                   std::vector<std::pair<Coord, Position>>& order) {
        if (axis == k_) {
            for (Coord p = 0; p <= 1; ++p) {
                s.back() = p;
                if (normalize(s) != s) continue;
                Coord sum = 0;
                for (Coord c : s) sum += c;
                order.emplace_back(sum, s);
            }
            return;
        }
        for (Coord v = 0; v <= bound; ++v) {
            s[static_cast<std::size_t>(axis)] = v;
            enumerate(s, axis + 1, bound, order);
        }
    }

    int k_;
    Coord t_;
    std::map<Position, bool> is_p_;
};

}  // namespace oracle
