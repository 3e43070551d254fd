#pragma once

#include <atomic>
#include <cstdint>
#include <limits>
#include <thread>
#include <utility>

#include "choc/chocolate.hpp"
#include "choc/core.hpp"
#include "choc/nsprop.hpp"

// Theorem-verification harness. Sweeps compare engine Grundy values
// against the nim-sum of all s+1 coordinates over every valid position
// within bounds; the sufficiency and necessity checkers tie those sweeps
// to the NS status of the axis slices. All verdicts are bounded.

namespace choc::verify {

struct Mismatch {
    Position position;  // canonical order (base.., y)
    Coord grundy_value = 0;
    Coord nim_sum_value = 0;
};

enum class Verdict { ConsistentWithTheorem, CounterexampleFound, Inconclusive };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::ConsistentWithTheorem: return "consistent-with-theorem";
        case Verdict::CounterexampleFound: return "counterexample-found";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

struct VerificationReport {
    std::string game;
    std::vector<Coord> bounds;
    std::uint64_t positions_checked = 0;
    std::vector<Mismatch> mismatches;
    nsprop::SliceSweep ns_summary;
    Verdict verdict = Verdict::ConsistentWithTheorem;
    std::string note;
};

constexpr Coord kNoYCap = std::numeric_limits<Coord>::max();

namespace detail {

// Enumerates base tuples within bounds and, per tuple, y in
// 0..min(F(base), y_cap); calls visit(position).
template <typename Visit>
void for_each_valid_position(const ChocGame& game, std::span<const Coord> bounds, Coord y_cap,
                             Visit&& visit) {
    const int s = game.s();
    if (bounds.size() != static_cast<std::size_t>(s))
        throw ArityError("bounds must cover the base axes only");
    Position p(static_cast<std::size_t>(s) + 1, 0);
    for (;;) {
        std::span<const Coord> base(p.data(), static_cast<std::size_t>(s));
        Coord ymax = std::min(game.height_limit(base), y_cap);
        for (Coord y = 0; y <= ymax; ++y) {
            p.back() = y;
            visit(const_cast<const Position&>(p));
        }
        int i = 0;
        while (i < s && p[static_cast<std::size_t>(i)] == bounds[static_cast<std::size_t>(i)])
            p[static_cast<std::size_t>(i++)] = 0;
        if (i == s) break;
        ++p[static_cast<std::size_t>(i)];
    }
}

}  // namespace detail

inline VerificationReport sweep_grundy_vs_nimsum(const ChocGame& game,
                                                 std::span<const Coord> bounds,
                                                 Coord y_cap = kNoYCap,
                                                 std::size_t mismatch_limit = 32) {
    VerificationReport report;
    report.game = game.description();
    report.bounds.assign(bounds.begin(), bounds.end());
    GrundyTable memo;
    detail::for_each_valid_position(game, bounds, y_cap, [&](const Position& p) {
        ++report.positions_checked;
        Coord g = grundy(game, p, memo);
        Coord n = nim_sum(std::span<const Coord>(p));
        if (g != n && report.mismatches.size() < mismatch_limit)
            report.mismatches.push_back({p, g, n});
    });
    report.verdict = report.mismatches.empty() ? Verdict::ConsistentWithTheorem
                                               : Verdict::CounterexampleFound;
    return report;
}

// NS on all slices implies Grundy = nim-sum: when the slices hold on the
// bounds, any mismatch is evidence against the theorem.
inline VerificationReport verify_sufficiency(const ChocGame& game, std::span<const Coord> bounds,
                                             Coord y_cap = kNoYCap) {
    VerificationReport report = sweep_grundy_vs_nimsum(game, bounds, y_cap);
    report.ns_summary = nsprop::check_all_slices(
        [&game](std::span<const Coord> b) { return game.height_limit(b); }, game.s(), bounds);
    if (report.ns_summary.all_hold) {
        report.verdict = report.mismatches.empty() ? Verdict::ConsistentWithTheorem
                                                   : Verdict::CounterexampleFound;
        report.note = report.mismatches.empty()
                          ? "all slices NS on bounds and zero mismatches"
                          : "slices NS on bounds but Grundy mismatch found";
    } else {
        report.verdict = Verdict::ConsistentWithTheorem;
        report.note = "hypothesis fails on bounds (some slice not NS); sufficiency vacuous";
    }
    return report;
}

// Contrapositive of necessity: a slice failing NS predicts a Grundy
// mismatch somewhere. The sweep bound may be too small to contain one,
// so a miss escalates the bounds once (x2) before reporting inconclusive.
inline VerificationReport verify_necessity(const ChocGame& game, std::span<const Coord> bounds,
                                           Coord y_cap = kNoYCap) {
    VerificationReport report = sweep_grundy_vs_nimsum(game, bounds, y_cap);
    report.ns_summary = nsprop::check_all_slices(
        [&game](std::span<const Coord> b) { return game.height_limit(b); }, game.s(), bounds);
    if (report.ns_summary.all_hold) {
        report.verdict = Verdict::ConsistentWithTheorem;
        report.note = "all slices NS on bounds; necessity vacuously consistent";
        return report;
    }
    if (!report.mismatches.empty()) {
        report.verdict = Verdict::ConsistentWithTheorem;
        report.note = "non-NS slice and Grundy mismatch witness found (theorem-consistent refutation)";
        return report;
    }
    std::vector<Coord> doubled(bounds.begin(), bounds.end());
    for (Coord& b : doubled) b *= 2;
    VerificationReport wide = sweep_grundy_vs_nimsum(game, doubled, y_cap);
    report.positions_checked += wide.positions_checked;
    if (!wide.mismatches.empty()) {
        report.bounds = doubled;
        report.mismatches = std::move(wide.mismatches);
        report.verdict = Verdict::ConsistentWithTheorem;
        report.note = "mismatch witness found after doubling bounds";
        return report;
    }
    report.verdict = Verdict::Inconclusive;
    report.note = "non-NS slice but no Grundy mismatch within bounds (even after doubling)";
    return report;
}

// ---------------------------------------------------------------------------
// Monotone table enumeration

// A monotone h: [0..D] -> [0..V] stored as its value table.
using MonotoneTable = std::vector<Coord>;

inline std::uint64_t monotone_table_count(Coord domain_bound, Coord value_bound) {
    // C(D + V + 1, V): choose the step positions
    std::uint64_t n = domain_bound + value_bound + 1, k = value_bound;
    std::uint64_t c = 1;
    for (std::uint64_t i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

// Yields every monotone table exactly once, lexicographically.
template <typename Visit>
void enumerate_monotone_functions(Coord domain_bound, Coord value_bound, Visit&& visit,
                                  std::uint64_t cap = 1'000'000) {
    if (monotone_table_count(domain_bound, value_bound) > cap)
        throw SizeGuardError("monotone table count exceeds configured cap");
    MonotoneTable table(domain_bound + 1, 0);
    auto rec = [&](auto&& self, std::size_t idx, Coord lo) -> void {
        if (idx == table.size()) {
            visit(const_cast<const MonotoneTable&>(table));
            return;
        }
        for (Coord v = lo; v <= value_bound; ++v) {
            table[idx] = v;
            self(self, idx + 1, v);
        }
    };
    rec(rec, 0, 0);
}

struct BiconditionalEntry {
    MonotoneTable table;
    bool ns_holds = false;
    bool sweep_clean = false;
};

struct BiconditionalReport {
    Coord domain_bound = 0, value_bound = 0;
    std::uint64_t tables_checked = 0;
    std::vector<BiconditionalEntry> asymmetries;  // entries where NS != clean sweep
    Verdict verdict = Verdict::ConsistentWithTheorem;
};

// Empirical both-directions check on 2D bars: over every monotone table,
// bounded NS at B = D must coincide with a mismatch-free sweep at z <= D.
// The NS bound is deliberately coupled to the sweep bound so both sides
// quantify over the same finite world. Workers each own their games and
// memo tables; results merge in enumeration order, so the report is
// identical for any job count.
inline BiconditionalReport check_biconditional(Coord domain_bound, Coord value_bound,
                                               unsigned jobs = 1) {
    BiconditionalReport report;
    report.domain_bound = domain_bound;
    report.value_bound = value_bound;

    std::vector<MonotoneTable> tables;
    enumerate_monotone_functions(domain_bound, value_bound,
                                 [&](const MonotoneTable& t) { tables.push_back(t); });
    report.tables_checked = tables.size();

    auto classify = [&](const MonotoneTable& table) -> std::pair<bool, bool> {
        // table lookup saturates past D: monotone continuation, invisible
        // to the bounded sweep
        BaseFn f = [&table](std::span<const Coord> b) {
            return table[std::min<std::size_t>(b[0], table.size() - 1)];
        };
        bool ns = nsprop::check_ns(
                      [&table](Coord z) { return table[std::min<std::size_t>(z, table.size() - 1)]; },
                      domain_bound)
                      .holds_on_bound;
        ChocGame game(1, f, "table");
        Coord bounds[1] = {domain_bound};
        bool clean = sweep_grundy_vs_nimsum(game, bounds).mismatches.empty();
        return {ns, clean};
    };

    std::vector<std::pair<bool, bool>> results(tables.size());
    if (jobs <= 1) {
        for (std::size_t i = 0; i < tables.size(); ++i) results[i] = classify(tables[i]);
    } else {
        std::vector<std::thread> workers;
        std::atomic<std::size_t> next{0};
        for (unsigned w = 0; w < jobs; ++w)
            workers.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < tables.size(); i = next.fetch_add(1))
                    results[i] = classify(tables[i]);
            });
        for (auto& t : workers) t.join();
    }
    for (std::size_t i = 0; i < tables.size(); ++i) {
        auto [ns, clean] = results[i];
        if (ns != clean) report.asymmetries.push_back({tables[i], ns, clean});
    }
    report.verdict = report.asymmetries.empty() ? Verdict::ConsistentWithTheorem
                                                : Verdict::CounterexampleFound;
    return report;
}

}  // namespace choc::verify
