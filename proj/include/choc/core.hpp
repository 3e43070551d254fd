#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

// Sprague-Grundy machinery for finite impartial games: nim-sum, mex,
// a memoized Grundy engine over an abstract move relation, P/N
// classification, and disjunctive sums.

namespace choc {

using Coord = std::uint32_t;
using Position = std::vector<Coord>;

// monotone base function F on s-tuples
using BaseFn = std::function<Coord(std::span<const Coord>)>;

struct InvalidPositionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SizeGuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ArityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Coord nim_sum(std::span<const Coord> values) {
    Coord acc = 0;
    for (Coord v : values) acc ^= v;
    return acc;
}

inline Coord nim_sum(std::initializer_list<Coord> values) {
    return nim_sum(std::span<const Coord>(values.begin(), values.size()));
}

// mex(S) <= |S|, so a presence bitmap of |S|+1 bits suffices.
inline Coord mex(std::span<const Coord> values) {
    std::vector<bool> seen(values.size() + 1, false);
    for (Coord v : values)
        if (v < seen.size()) seen[v] = true;
    Coord m = 0;
    while (seen[m]) ++m;
    return m;
}

inline Coord mex(const std::vector<Coord>& values) {
    return mex(std::span<const Coord>(values));
}

// Finite impartial game under normal play. moves() must be well-founded:
// every move strictly decreases some nonnegative measure.
class ImpartialGame {
public:
    virtual ~ImpartialGame() = default;

    virtual std::vector<Position> moves(const Position& p) const = 0;

    // Throws InvalidPositionError when p violates the game's invariants.
    virtual void check_position(const Position& p) const { (void)p; }

    bool is_terminal(const Position& p) const { return moves(p).empty(); }
};

// Memo keyed by packed coordinates. Coordinates and tuple length are
// bounded so every in-scope position packs into 128 bits.
struct PackedKeyHash {
    std::size_t operator()(__uint128_t k) const {
        std::uint64_t lo = static_cast<std::uint64_t>(k);
        std::uint64_t hi = static_cast<std::uint64_t>(k >> 64);
        std::uint64_t h = lo * 0x9e3779b97f4a7c15ull ^ (hi + 0x9e3779b97f4a7c15ull + (lo << 6));
        return static_cast<std::size_t>(h ^ (h >> 32));
    }
};

class GrundyTable {
public:
    static constexpr Coord kMaxCoord = 1u << 16;
    static constexpr std::size_t kMaxLen = 8;

    static __uint128_t pack(const Position& p) {
        if (p.size() > kMaxLen)
            throw SizeGuardError("position tuple longer than supported");
        __uint128_t key = 1;  // length sentinel, distinguishes (0) from (0,0)
        for (Coord c : p) {
            if (c >= kMaxCoord)
                throw SizeGuardError("coordinate exceeds bounded state space");
            key = (key << 16) | c;
        }
        return key;
    }

    bool lookup(const Position& p, Coord& out) const {
        auto it = table_.find(pack(p));
        if (it == table_.end()) return false;
        out = it->second;
        return true;
    }

    void store(const Position& p, Coord g) { table_.emplace(pack(p), g); }

    std::size_t size() const { return table_.size(); }

private:
    std::unordered_map<__uint128_t, Coord, PackedKeyHash> table_;
};

// G(p) = mex{ G(h) : h in moves(p) }. Order-insensitive by construction.
inline Coord grundy(const ImpartialGame& game, const Position& p, GrundyTable& memo) {
    Coord cached;
    if (memo.lookup(p, cached)) return cached;
    game.check_position(p);
    std::vector<Coord> child;
    for (const Position& q : game.moves(p)) child.push_back(grundy(game, q, memo));
    Coord g = mex(child);
    memo.store(p, g);
    return g;
}

inline bool is_p_position(const ImpartialGame& game, const Position& p, GrundyTable& memo) {
    return grundy(game, p, memo) == 0;
}

// Disjunctive sum: positions are the two component tuples concatenated;
// a move is a move in exactly one component.
class SumGame : public ImpartialGame {
public:
    SumGame(std::shared_ptr<const ImpartialGame> left, std::size_t left_len,
            std::shared_ptr<const ImpartialGame> right, std::size_t right_len)
        : left_(std::move(left)), right_(std::move(right)),
          left_len_(left_len), right_len_(right_len) {}

    std::vector<Position> moves(const Position& p) const override {
        check_position(p);
        Position l(p.begin(), p.begin() + left_len_);
        Position r(p.begin() + left_len_, p.end());
        std::vector<Position> out;
        for (const Position& lm : left_->moves(l)) {
            Position q = lm;
            q.insert(q.end(), r.begin(), r.end());
            out.push_back(std::move(q));
        }
        for (const Position& rm : right_->moves(r)) {
            Position q = l;
            q.insert(q.end(), rm.begin(), rm.end());
            out.push_back(std::move(q));
        }
        return out;
    }

    void check_position(const Position& p) const override {
        if (p.size() != left_len_ + right_len_)
            throw ArityError("sum position has wrong tuple length");
        Position l(p.begin(), p.begin() + left_len_);
        Position r(p.begin() + left_len_, p.end());
        left_->check_position(l);
        right_->check_position(r);
    }

    Position join(const Position& l, const Position& r) const {
        Position p = l;
        p.insert(p.end(), r.begin(), r.end());
        return p;
    }

private:
    std::shared_ptr<const ImpartialGame> left_, right_;
    std::size_t left_len_, right_len_;
};

inline SumGame sum_game(std::shared_ptr<const ImpartialGame> left, std::size_t left_len,
                        std::shared_ptr<const ImpartialGame> right, std::size_t right_len) {
    return SumGame(std::move(left), left_len, std::move(right), right_len);
}

}  // namespace choc
