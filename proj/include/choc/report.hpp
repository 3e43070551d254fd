#pragma once

#include <chrono>
#include <ctime>

#include <json.hpp>

#include "choc/nimpass.hpp"
#include "choc/nsprop.hpp"
#include "choc/verify.hpp"

// JSON report emission. Every CLI JSON output is wrapped in a
// ReportEnvelope; the schema lives in share/choc_report.schema.json.

namespace choc::report {

using nlohmann::json;

constexpr int kSchemaVersion = 1;
constexpr const char* kToolName = "choc";
constexpr const char* kToolVersion = "0.1.0";

inline json to_json(const nsprop::NSReport& r) {
    json j{{"holds_on_bound", r.holds_on_bound},
           {"bound", r.bound},
           {"i_range", {{"min", 1}, {"max", r.i_max}}}};
    if (r.witness)
        j["witness"] = {{"z", r.witness->z}, {"z_prime", r.witness->z_prime}, {"i", r.witness->i}};
    return j;
}

inline json to_json(const nsprop::SliceSweep& s) {
    json slices = json::array();
    for (const auto& sr : s.slices)
        slices.push_back({{"axis", sr.axis}, {"fixed", sr.fixed}, {"ns", to_json(sr.ns)}});
    return json{{"all_hold", s.all_hold}, {"slices", slices}};
}

inline json to_json(const verify::VerificationReport& r) {
    json mismatches = json::array();
    for (const auto& m : r.mismatches)
        mismatches.push_back({{"position", m.position},
                              {"grundy", m.grundy_value},
                              {"nim_sum", m.nim_sum_value}});
    return json{{"game", r.game},
                {"bounds", r.bounds},
                {"positions_checked", r.positions_checked},
                {"mismatches", mismatches},
                {"ns_summary", to_json(r.ns_summary)},
                {"verdict", verify::verdict_name(r.verdict)},
                {"note", r.note}};
}

inline json to_json(const verify::BiconditionalReport& r) {
    json asym = json::array();
    for (const auto& e : r.asymmetries)
        asym.push_back({{"table", e.table}, {"ns_holds", e.ns_holds}, {"sweep_clean", e.sweep_clean}});
    return json{{"domain_bound", r.domain_bound},
                {"value_bound", r.value_bound},
                {"tables_checked", r.tables_checked},
                {"asymmetries", asym},
                {"verdict", verify::verdict_name(r.verdict)}};
}

inline json to_json(const nimpass::PassTheoremReport& r) {
    json j{{"piles", r.k},
           {"t", r.t},
           {"bound", r.bound},
           {"t_odd", r.t_odd},
           {"characterization_holds", r.characterization_holds},
           {"states_checked", r.states_checked},
           {"verdict", verify::verdict_name(r.verdict)},
           {"note", r.note}};
    if (r.witness) j["witness"] = *r.witness;
    return j;
}

inline std::string iso_timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
    return buf;
}

inline json envelope(const std::string& command, const std::string& payload_type, json payload,
                     std::optional<std::uint64_t> seed = std::nullopt) {
    json j{{"schema_version", kSchemaVersion},
           {"tool", {{"name", kToolName}, {"version", kToolVersion}}},
           {"command", command},
           {"timestamp", iso_timestamp()},
           {"payload_type", payload_type},
           {"payload", std::move(payload)}};
    if (seed) j["seed"] = *seed;
    return j;
}

// CSV tables: header first, comma separated, LF endings, coordinates
// before the grundy column.
inline std::string pass_table_csv(const nimpass::PassTheoremReport& r) {
    std::string out;
    if (r.k == 2)
        out = "x,y,p,grundy\n";
    else
        out = "x,y,z,p,grundy\n";
    for (const auto& row : r.table) {
        for (Coord c : row.state) {
            out += std::to_string(c);
            out += ',';
        }
        out += std::to_string(row.grundy_value);
        out += '\n';
    }
    return out;
}

}  // namespace choc::report
