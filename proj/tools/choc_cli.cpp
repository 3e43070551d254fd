// choc: solvers and verifiers for multi-dimensional chocolate-bar games
// and Nim with a restricted pass. Machine-readable output via --json /
// --csv; exit codes: 0 success / theorem-consistent, 1 counterexample,
// 2 usage or parse error, 3 invalid position.

#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "choc/chocolate.hpp"
#include "choc/core.hpp"
#include "choc/nimpass.hpp"
#include "choc/nsprop.hpp"
#include "choc/report.hpp"
#include "choc/verify.hpp"

namespace {

using namespace choc;

constexpr int kExitOk = 0;
constexpr int kExitCounterexample = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInvalidPosition = 3;

int log_level() {
    const char* v = std::getenv("CHOC_LOG");
    return v ? std::atoi(v) : 0;
}

void diag(const std::string& msg) {
    if (log_level() > 0) std::cerr << "[choc] " << msg << "\n";
}

std::vector<Coord> parse_csv_ints(const std::string& text) {
    std::vector<Coord> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        unsigned long v = std::stoul(item, &pos);
        if (pos != item.size()) throw std::invalid_argument("bad integer '" + item + "'");
        out.push_back(static_cast<Coord>(v));
    }
    return out;
}

std::string command_echo(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

struct CommonFnArgs {
    std::string fn_text;
    int arity = 1;
};

ChocGame make_game(const CommonFnArgs& a, std::span<const Coord> monotone_bounds) {
    fdsl::FunctionSpec spec = fdsl::parse(a.fn_text, a.arity);
    if (auto w = fdsl::check_monotone(spec, monotone_bounds)) {
        throw fdsl::ParseError({0, "function is not monotone on the requested bounds"});
    }
    return ChocGame::from_spec(spec);
}

int cmd_grundy(const CommonFnArgs& fa, const std::string& pos_text, bool json,
               const std::string& cmd) {
    fdsl::FunctionSpec spec = fdsl::parse(fa.fn_text, fa.arity);
    ChocGame game = ChocGame::from_spec(spec);
    Position display = parse_csv_ints(pos_text);
    Position p = from_display_order(game.s(), display);
    if (!game.is_valid(p)) {
        std::cerr << "invalid position: y = " << p.back()
                  << " exceeds F(base) = " << game.height_limit(std::span<const Coord>(
                         p.data(), static_cast<std::size_t>(game.s())))
                  << " (positions must satisfy y <= F)\n";
        return kExitInvalidPosition;
    }
    GrundyTable memo;
    Coord g = grundy(game, p, memo);
    if (json) {
        report::json payload{{"fn", spec.print()}, {"position", display}, {"grundy", g}};
        std::cout << report::envelope(cmd, "grundy_table", payload).dump(2) << "\n";
    } else {
        std::cout << g << "\n";
    }
    return kExitOk;
}

int cmd_moves(const CommonFnArgs& fa, const std::string& pos_text) {
    fdsl::FunctionSpec spec = fdsl::parse(fa.fn_text, fa.arity);
    ChocGame game = ChocGame::from_spec(spec);
    Position p = from_display_order(game.s(), parse_csv_ints(pos_text));
    if (!game.is_valid(p)) {
        std::cerr << "invalid position (y <= F violated)\n";
        return kExitInvalidPosition;
    }
    for (const Position& q : game.moves(p)) {
        Position out = to_display_order(game.s(), q);
        for (std::size_t i = 0; i < out.size(); ++i) std::cout << (i ? "," : "") << out[i];
        std::cout << "\n";
    }
    return kExitOk;
}

int cmd_check_ns(const std::string& fn_text, Coord bound, bool json, const std::string& cmd) {
    fdsl::FunctionSpec spec = fdsl::parse(fn_text, 1);
    nsprop::NSReport r = nsprop::check_ns([&spec](Coord z) { return spec.eval({z}); }, bound);
    if (json) {
        std::cout << report::envelope(cmd, "ns_report", report::to_json(r)).dump(2) << "\n";
    } else if (r.holds_on_bound) {
        std::cout << "NS holds up to " << bound << " (bounded certificate only)\n";
    } else {
        std::cout << "NS fails: witness z=" << r.witness->z << " z'=" << r.witness->z_prime
                  << " i=" << r.witness->i << "\n";
    }
    return r.holds_on_bound ? kExitOk : kExitCounterexample;
}

int cmd_verify(const CommonFnArgs& fa, const std::string& bounds_text, const std::string& mode,
               Coord y_cap, Coord enum_d, Coord enum_v, unsigned jobs, std::uint64_t seed,
               bool json, const std::string& cmd) {
    if (mode == "biconditional") {
        verify::BiconditionalReport r = verify::check_biconditional(enum_d, enum_v, jobs);
        if (json)
            std::cout << report::envelope(cmd, "biconditional_report", report::to_json(r), seed)
                             .dump(2)
                      << "\n";
        else
            std::cout << r.tables_checked << " functions classified, "
                      << verify::verdict_name(r.verdict) << "\n";
        return r.verdict == verify::Verdict::ConsistentWithTheorem ? kExitOk : kExitCounterexample;
    }

    std::vector<Coord> bounds = parse_csv_ints(bounds_text);
    ChocGame game = make_game(fa, bounds);
    if (bounds.size() != static_cast<std::size_t>(game.s()))
        throw fdsl::ParseError({0, "--bounds must list one bound per base axis"});

    verify::VerificationReport r;
    if (mode == "sweep")
        r = verify::sweep_grundy_vs_nimsum(game, bounds, y_cap);
    else if (mode == "sufficiency")
        r = verify::verify_sufficiency(game, bounds, y_cap);
    else if (mode == "necessity")
        r = verify::verify_necessity(game, bounds, y_cap);
    else
        throw fdsl::ParseError({0, "unknown mode '" + mode + "'"});

    if (json)
        std::cout << report::envelope(cmd, "verification_report", report::to_json(r), seed).dump(2)
                  << "\n";
    else
        std::cout << verify::verdict_name(r.verdict) << ": " << r.positions_checked
                  << " positions, " << r.mismatches.size() << " mismatches"
                  << (r.note.empty() ? "" : " (" + r.note + ")") << "\n";
    return r.verdict == verify::Verdict::CounterexampleFound ? kExitCounterexample : kExitOk;
}

int cmd_nim_pass(int piles, Coord t, Coord bound, std::uint64_t seed, bool json, bool csv,
                 const std::string& cmd) {
    if (piles != 2 && piles != 3) throw fdsl::ParseError({0, "--piles must be 2 or 3"});
    nimpass::PassTheoremReport r = nimpass::verify_pass_theorem(t, piles, bound, csv);
    if (csv) {
        std::cout << report::pass_table_csv(r);
    } else if (json) {
        std::cout << report::envelope(cmd, "pass_theorem_report", report::to_json(r), seed).dump(2)
                  << "\n";
    } else {
        std::cout << r.note << "\n";
        if (r.witness) {
            std::cout << "witness:";
            for (Coord c : *r.witness) std::cout << ' ' << c;
            std::cout << "\n";
        }
    }
    return r.verdict == verify::Verdict::ConsistentWithTheorem ? kExitOk : kExitCounterexample;
}

int cmd_render(const CommonFnArgs& fa, const std::string& pos_text, bool csv) {
    fdsl::FunctionSpec spec = fdsl::parse(fa.fn_text, fa.arity);
    ChocGame game = ChocGame::from_spec(spec);
    Position p = from_display_order(game.s(), parse_csv_ints(pos_text));
    if (!game.is_valid(p)) {
        std::cerr << "invalid position (y <= F violated)\n";
        return kExitInvalidPosition;
    }
    if (csv)
        std::cout << heights_csv(column_heights(game, p));
    else if (game.s() == 1)
        std::cout << render_ascii_2d(game, p);
    else
        std::cout << heights_csv(column_heights(game, p));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"chocolate-bar game solver and theorem verifier"};
    app.require_subcommand(1);
    std::string cmd = command_echo(argc, argv);

    CommonFnArgs fa;
    std::string pos_text, bounds_text, mode = "sweep";
    Coord bound = 64, y_cap = verify::kNoYCap, t = 1, enum_d = 10, enum_v = 3;
    int piles = 2;
    std::uint64_t seed = 0x5eed;
    unsigned jobs = 1;
    bool json = false, csv = false;

    auto* g = app.add_subcommand("grundy", "Grundy value of a position");
    g->add_option("--fn", fa.fn_text)->required();
    g->add_option("--arity", fa.arity)->required();
    g->add_option("--pos", pos_text)->required();
    g->add_flag("--json", json);

    auto* mv = app.add_subcommand("moves", "list the moves of a position");
    mv->add_option("--fn", fa.fn_text)->required();
    mv->add_option("--arity", fa.arity)->required();
    mv->add_option("--pos", pos_text)->required();

    auto* ns = app.add_subcommand("check-ns", "bounded NS-property check of a unary function");
    ns->add_option("--fn", fa.fn_text)->required();
    ns->add_option("--bound", bound);
    ns->add_flag("--json", json);

    auto* vf = app.add_subcommand("verify", "theorem verification sweeps");
    vf->add_option("--fn", fa.fn_text);
    vf->add_option("--arity", fa.arity);
    vf->add_option("--bounds", bounds_text);
    vf->add_option("--mode", mode)
        ->check(CLI::IsMember({"sweep", "sufficiency", "necessity", "biconditional"}));
    vf->add_option("--y-cap", y_cap);
    vf->add_option("--enum-d", enum_d);
    vf->add_option("--enum-v", enum_v);
    vf->add_option("--seed", seed);
    vf->add_option("--jobs", jobs);
    vf->add_flag("--json", json);

    auto* np = app.add_subcommand("nim-pass", "Nim with a threshold-restricted pass");
    np->add_option("--piles", piles)->required();
    np->add_option("--t", t)->required();
    np->add_option("--bounds", bound);
    np->add_option("--seed", seed);
    np->add_flag("--json", json);
    np->add_flag("--csv", csv);

    auto* rd = app.add_subcommand("render", "ASCII or CSV picture of a bar");
    rd->add_option("--fn", fa.fn_text)->required();
    rd->add_option("--arity", fa.arity)->required();
    rd->add_option("--pos", pos_text)->required();
    rd->add_flag("--csv", csv);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (g->parsed()) return cmd_grundy(fa, pos_text, json, cmd);
        if (mv->parsed()) return cmd_moves(fa, pos_text);
        if (ns->parsed()) return cmd_check_ns(fa.fn_text, bound, json, cmd);
        if (vf->parsed())
            return cmd_verify(fa, bounds_text, mode, y_cap, enum_d, enum_v, jobs, seed, json, cmd);
        if (np->parsed()) return cmd_nim_pass(piles, t, bound, seed, json, csv, cmd);
        if (rd->parsed()) return cmd_render(fa, pos_text, csv);
    } catch (const fdsl::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ArityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidPositionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidPosition;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    diag("no subcommand handled");
    return kExitUsage;
}
