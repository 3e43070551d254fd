#pragma once

#include <random>

#include "choc/chocolate.hpp"
#include "choc/core.hpp"
#include "choc/verify.hpp"

// Nim with a one-time pass that is only available while some pile
// exceeds a threshold t. States are (piles.., p) with p in {0,1}.
// The game is exactly the threshold chocolate bar CB([max > t], piles, p):
// the pass token is the height coordinate, and normalization of a stale
// pass token is the chocolate clamp y <= F.

namespace choc::nimpass {

// Direct rule implementation, independent of the chocolate encoding.
class PassNimGame : public ImpartialGame {
public:
    PassNimGame(int piles, Coord threshold) : k_(piles), t_(threshold) {
        if (k_ < 1) throw ArityError("need at least one pile");
    }

    int piles() const { return k_; }
    Coord threshold() const { return t_; }

    // pass_available = 1 with all piles <= t is unreachable in play but
    // arises transiently from pile reductions; clear the token.
    Position normalize(Position state) const {
        if (state.size() != static_cast<std::size_t>(k_) + 1)
            throw ArityError("state must have " + std::to_string(k_ + 1) + " entries");
        if (state.back() > 1) throw InvalidPositionError("pass token must be 0 or 1");
        bool any_big = false;
        for (int i = 0; i < k_; ++i)
            if (state[static_cast<std::size_t>(i)] > t_) any_big = true;
        if (!any_big) state.back() = 0;
        return state;
    }

    bool is_normalized(const Position& state) const {
        Position n = normalize(state);
        return n == state;
    }

    void check_position(const Position& state) const override {
        if (!is_normalized(state))
            throw InvalidPositionError("pass token set although all piles are <= t");
    }

    std::vector<Position> moves(const Position& state) const override {
        check_position(state);
        std::vector<Position> out;
        for (int i = 0; i < k_; ++i) {
            Position q = state;
            for (Coord r = 0; r < state[static_cast<std::size_t>(i)]; ++r) {
                q[static_cast<std::size_t>(i)] = r;
                out.push_back(normalize(q));
            }
        }
        if (state.back() == 1) {
            Position q = state;
            q.back() = 0;
            out.push_back(std::move(q));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

private:
    int k_;
    Coord t_;
};

inline ChocGame encode_as_chocolate(Coord t, int k) {
    NamedFn f = threshold_fn(k, t);
    return ChocGame(k, f.fn, f.name);
}

// State (piles, p) maps to chocolate position (piles, y = p); the
// identification is the identity on tuples.
inline verify::VerificationReport verify_isomorphism(Coord t, int k, Coord bound,
                                                     std::uint64_t seed = 0x5eed) {
    PassNimGame direct(k, t);
    ChocGame encoded = encode_as_chocolate(t, k);
    verify::VerificationReport report;
    report.game = "pass-nim k=" + std::to_string(k) + " t=" + std::to_string(t) +
                  " vs " + encoded.description();
    report.bounds.assign(static_cast<std::size_t>(k), bound);
    GrundyTable direct_memo, choc_memo;

    Position state(static_cast<std::size_t>(k) + 1, 0);
    auto scan = [&](auto&& self, int axis) -> void {
        if (axis == k) {
            for (Coord p = 0; p <= 1; ++p) {
                state.back() = p;
                if (!direct.is_normalized(state)) continue;
                ++report.positions_checked;
                Coord gd = grundy(direct, state, direct_memo);
                Coord gc = grundy(encoded, state, choc_memo);
                if (gd != gc && report.mismatches.size() < 32)
                    report.mismatches.push_back({state, gd, gc});
            }
            return;
        }
        for (Coord v = 0; v <= bound; ++v) {
            state[static_cast<std::size_t>(axis)] = v;
            self(self, axis + 1);
        }
    };
    scan(scan, 0);

    // move-set bijection spot-check on random normalized states
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Coord> pile(0, bound);
    std::uniform_int_distribution<Coord> tok(0, 1);
    for (int trial = 0; trial < 1000; ++trial) {
        Position s(static_cast<std::size_t>(k) + 1);
        for (int i = 0; i < k; ++i) s[static_cast<std::size_t>(i)] = pile(rng);
        s.back() = tok(rng);
        s = direct.normalize(s);
        auto md = direct.moves(s);
        auto mc = encoded.moves(s);
        if (md != mc && report.mismatches.size() < 32) {
            report.mismatches.push_back({s, static_cast<Coord>(md.size()),
                                         static_cast<Coord>(mc.size())});
        }
    }

    report.verdict = report.mismatches.empty() ? verify::Verdict::ConsistentWithTheorem
                                               : verify::Verdict::CounterexampleFound;
    report.note = report.mismatches.empty() ? "direct and encoded games agree"
                                            : "direct and encoded games disagree";
    return report;
}

struct PassTableRow {
    Position state;  // (piles.., p)
    Coord grundy_value = 0;
};

struct PassTheoremReport {
    int k = 0;
    Coord t = 0;
    Coord bound = 0;
    bool t_odd = false;
    bool characterization_holds = false;  // P-positions == {nim-sum of (piles, p) = 0} on bounds
    std::optional<Position> witness;      // state where the characterization fails
    std::uint64_t states_checked = 0;
    std::vector<PassTableRow> table;      // full Grundy table when requested
    verify::Verdict verdict = verify::Verdict::ConsistentWithTheorem;
    std::string note;
};

// The nim-sum characterization of P-positions holds for odd t and fails
// for even t; both directions are checked against that prediction.
inline PassTheoremReport verify_pass_theorem(Coord t, int k, Coord bound,
                                             bool collect_table = false) {
    PassNimGame game(k, t);
    GrundyTable memo;
    PassTheoremReport report;
    report.k = k;
    report.t = t;
    report.bound = bound;
    report.t_odd = (t % 2 == 1);
    report.characterization_holds = true;

    Position state(static_cast<std::size_t>(k) + 1, 0);
    auto scan = [&](auto&& self, int axis) -> void {
        if (axis == k) {
            for (Coord p = 0; p <= 1; ++p) {
                state.back() = p;
                if (!game.is_normalized(state)) continue;
                ++report.states_checked;
                Coord g = grundy(game, state, memo);
                if (collect_table) report.table.push_back({state, g});
                bool is_p = (g == 0);
                bool zero_sum = (nim_sum(std::span<const Coord>(state)) == 0);
                if (is_p != zero_sum && !report.witness) {
                    report.characterization_holds = false;
                    report.witness = state;
                }
            }
            return;
        }
        for (Coord v = 0; v <= bound; ++v) {
            state[static_cast<std::size_t>(axis)] = v;
            self(self, axis + 1);
        }
    };
    scan(scan, 0);

    bool matches_theorem = (report.characterization_holds == report.t_odd);
    report.verdict = matches_theorem ? verify::Verdict::ConsistentWithTheorem
                                     : verify::Verdict::CounterexampleFound;
    if (report.t_odd)
        report.note = report.characterization_holds
                          ? "holds (t odd): P-positions are exactly the zero nim-sums"
                          : "t odd but characterization fails";
    else
        report.note = report.characterization_holds
                          ? "t even but no counterexample within bounds"
                          : "fails (t even): witness found";
    return report;
}

}  // namespace choc::nimpass
