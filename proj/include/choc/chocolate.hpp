#pragma once

#include <functional>
#include <sstream>

#include "choc/core.hpp"
#include "choc/fdsl.hpp"

// Chocolate-bar games CB(F, x1..xs, y). A bar over base tuple (x1..xs)
// has column heights min(F(u1..us), y) + 1 with a bitter box at the
// origin. Moves cut along one groove: reducing a base coordinate clamps
// the height coordinate to the new ceiling, reducing y is a horizontal
// cut.
//
// Positions are stored canonically as (x1, .., xs, y) with the height
// coordinate last and y <= F(x1..xs) enforced. The conventional
// orderings for low dimensions ({y,z} for 2D bars, {x,y,z} for 3D) are
// handled by the display_order helpers at the API boundary.

namespace choc {

class ChocGame : public ImpartialGame {
public:
    ChocGame(int s, BaseFn f, std::string description, std::vector<Coord> bounds = {})
        : s_(s), f_(std::move(f)), desc_(std::move(description)), bounds_(std::move(bounds)) {
        if (s_ < 1) throw ArityError("base dimension must be >= 1");
    }

    static ChocGame from_spec(const fdsl::FunctionSpec& spec, std::vector<Coord> bounds = {}) {
        return ChocGame(
            spec.arity(), [spec](std::span<const Coord> base) { return spec.eval(base); },
            spec.print(), std::move(bounds));
    }

    int s() const { return s_; }
    const std::string& description() const { return desc_; }
    const std::vector<Coord>& bounds() const { return bounds_; }

    // F on base tuples, memoized: F dominates move-generation cost in sweeps.
    Coord height_limit(std::span<const Coord> base) const {
        __uint128_t key = 1;
        bool packable = base.size() <= GrundyTable::kMaxLen;
        for (Coord c : base) {
            if (c >= GrundyTable::kMaxCoord) packable = false;
            key = (key << 16) | (c & 0xffff);
        }
        if (!packable) return f_(base);
        auto it = fmemo_.find(key);
        if (it != fmemo_.end()) return it->second;
        Coord v = f_(base);
        fmemo_.emplace(key, v);
        return v;
    }

    bool is_valid(const Position& p) const {
        if (p.size() != static_cast<std::size_t>(s_) + 1)
            throw ArityError("position must have " + std::to_string(s_ + 1) + " coordinates");
        std::span<const Coord> base(p.data(), static_cast<std::size_t>(s_));
        return p.back() <= height_limit(base);
    }

    void check_position(const Position& p) const override {
        if (!is_valid(p))
            throw InvalidPositionError("invalid position: height coordinate y = " +
                                       std::to_string(p.back()) +
                                       " exceeds F(base), violating y <= F");
    }

    // Clamps y to F(base); arbitrary input becomes canonical.
    Position normalize(Position p) const {
        if (p.size() != static_cast<std::size_t>(s_) + 1)
            throw ArityError("position must have " + std::to_string(s_ + 1) + " coordinates");
        std::span<const Coord> base(p.data(), static_cast<std::size_t>(s_));
        p.back() = std::min(p.back(), height_limit(base));
        return p;
    }

    // Deduplicated: distinct cuts can clamp to the same position.
    std::vector<Position> moves(const Position& p) const override {
        check_position(p);
        std::vector<Position> out;
        const Coord y = p.back();
        for (int i = 0; i < s_; ++i) {
            Position q = p;
            for (Coord u = 0; u < p[static_cast<std::size_t>(i)]; ++u) {
                q[static_cast<std::size_t>(i)] = u;
                std::span<const Coord> base(q.data(), static_cast<std::size_t>(s_));
                q.back() = std::min(y, height_limit(base));
                out.push_back(q);
            }
        }
        for (Coord w = 0; w < y; ++w) {
            Position q = p;
            q.back() = w;
            out.push_back(q);
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

private:
    int s_;
    BaseFn f_;
    std::string desc_;
    std::vector<Coord> bounds_;
    mutable std::unordered_map<__uint128_t, Coord, PackedKeyHash> fmemo_;
};

// Conversions between canonical storage (base.., y) and the conventional
// coordinate orderings: {y,z} for s=1, {x,y,z} for s=2, identity for s>=3.
inline Position from_display_order(int s, const Position& p) {
    if (p.size() != static_cast<std::size_t>(s) + 1)
        throw ArityError("expected " + std::to_string(s + 1) + " coordinates");
    if (s == 1) return {p[1], p[0]};        // {y,z} -> (z, y)
    if (s == 2) return {p[0], p[2], p[1]};  // {x,y,z} -> (x, z, y)
    return p;
}

inline Position to_display_order(int s, const Position& p) {
    if (p.size() != static_cast<std::size_t>(s) + 1)
        throw ArityError("expected " + std::to_string(s + 1) + " coordinates");
    if (s == 1) return {p[1], p[0]};
    if (s == 2) return {p[0], p[2], p[1]};
    return p;
}

// 2D bars: positions {y,z}.
inline std::vector<Position> moves_2d(const ChocGame& game, const Position& yz) {
    if (game.s() != 1) throw ArityError("moves_2d requires a 1-ary base function");
    std::vector<Position> out;
    for (const Position& q : game.moves(from_display_order(1, yz)))
        out.push_back(to_display_order(1, q));
    std::sort(out.begin(), out.end());
    return out;
}

// 3D bars: positions {x,y,z}.
inline std::vector<Position> moves_3d(const ChocGame& game, const Position& xyz) {
    if (game.s() != 2) throw ArityError("moves_3d requires a 2-ary base function");
    std::vector<Position> out;
    for (const Position& q : game.moves(from_display_order(2, xyz)))
        out.push_back(to_display_order(2, q));
    std::sort(out.begin(), out.end());
    return out;
}

// Canonical order for any s.
inline std::vector<Position> moves_multi(const ChocGame& game, const Position& p) {
    return game.moves(p);
}

struct UnsupportedDimensionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct HeightMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Coord> data;  // row-major; heights are >= 1

    Coord at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    // the bitter box sits at (0,0)
    bool is_bitter(std::size_t r, std::size_t c) const { return r == 0 && c == 0; }
};

// Physical column heights min(F(u..), y) + 1. Rendering only, so s <= 2.
inline HeightMatrix column_heights(const ChocGame& game, const Position& p) {
    game.check_position(p);
    if (game.s() > 2)
        throw UnsupportedDimensionError("column_heights supports base dimension <= 2");
    HeightMatrix m;
    const Coord y = p.back();
    if (game.s() == 1) {
        m.rows = 1;
        m.cols = p[0] + 1;
        for (Coord w = 0; w <= p[0]; ++w) {
            Coord base[1] = {w};
            m.data.push_back(std::min(game.height_limit(base), y) + 1);
        }
    } else {
        m.rows = static_cast<std::size_t>(p[0]) + 1;
        m.cols = static_cast<std::size_t>(p[1]) + 1;
        for (Coord u = 0; u <= p[0]; ++u)
            for (Coord w = 0; w <= p[1]; ++w) {
                Coord base[2] = {u, w};
                m.data.push_back(std::min(game.height_limit(base), y) + 1);
            }
    }
    return m;
}

// ASCII side view of a 2D bar; 'X' marks the bitter box.
inline std::string render_ascii_2d(const ChocGame& game, const Position& p) {
    HeightMatrix m = column_heights(game, p);
    Coord maxh = *std::max_element(m.data.begin(), m.data.end());
    std::ostringstream os;
    for (Coord row = maxh; row-- > 0;) {
        for (std::size_t c = 0; c < m.cols; ++c) {
            if (m.data[c] > row)
                os << (row == 0 && c == 0 ? 'X' : '#');
            else
                os << ' ';
        }
        os << '\n';
    }
    return os.str();
}

// Header-first CSV, LF line endings.
inline std::string heights_csv(const HeightMatrix& m) {
    std::ostringstream os;
    for (std::size_t c = 0; c < m.cols; ++c) os << (c ? "," : "") << 'c' << c;
    os << '\n';
    for (std::size_t r = 0; r < m.rows; ++r) {
        for (std::size_t c = 0; c < m.cols; ++c) os << (c ? "," : "") << m.at(r, c);
        os << '\n';
    }
    return os.str();
}

// Built-in base functions used across tests and sweeps.
struct NamedFn {
    std::string name;
    int arity;
    BaseFn fn;
};

inline NamedFn constant_fn(int arity, Coord c) {
    return {std::to_string(c), arity, [c](std::span<const Coord>) { return c; }};
}

// floor(x1 / 2^k), ignoring the other base coordinates
inline NamedFn floor_shift_fn(int arity, unsigned k) {
    return {"x1/" + std::to_string(1u << k), arity,
            [k](std::span<const Coord> b) { return b[0] >> k; }};
}

inline NamedFn max_halves_fn(int arity) {
    std::string name = "max(";
    for (int i = 1; i <= arity; ++i)
        name += (i > 1 ? ", x" : "x") + std::to_string(i) + "/2";
    name += ")";
    return {name, arity, [](std::span<const Coord> b) {
                Coord m = 0;
                for (Coord v : b) m = std::max(m, v / 2);
                return m;
            }};
}

// [max(x1..xs) > t], the pass-Nim encoding
inline NamedFn threshold_fn(int arity, Coord t) {
    std::string name = "[max(";
    for (int i = 1; i <= arity; ++i) name += (i > 1 ? ", x" : "x") + std::to_string(i);
    name += ") > " + std::to_string(t) + "]";
    return {name, arity, [t](std::span<const Coord> b) -> Coord {
                Coord m = 0;
                for (Coord v : b) m = std::max(m, v);
                return m > t ? 1 : 0;
            }};
}

// identity on x1: a known non-NS function, kept as a negative control
inline NamedFn identity_fn(int arity) {
    return {"x1", arity, [](std::span<const Coord> b) { return b[0]; }};
}

inline std::vector<NamedFn> builtin_library(int arity) {
    std::vector<NamedFn> lib;
    lib.push_back(constant_fn(arity, 0));
    lib.push_back(constant_fn(arity, 2));
    lib.push_back(constant_fn(arity, 5));
    lib.push_back(floor_shift_fn(arity, 1));
    lib.push_back(floor_shift_fn(arity, 2));
    lib.push_back(max_halves_fn(arity));
    lib.push_back(threshold_fn(arity, 1));
    lib.push_back(threshold_fn(arity, 2));
    lib.push_back(threshold_fn(arity, 3));
    lib.push_back(identity_fn(arity));
    return lib;
}

}  // namespace choc
