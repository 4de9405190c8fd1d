// ============================================================================
// cpn/json_io.hpp — JSON renderings of valuations, verdicts, and results
// ============================================================================
//
// Design notes:
//
//   A valuation serializes as one record per world, ascending,
//
//     [ {"world": 1, "assign": {"p": true, "q": false}},
//       {"world": 2, "assign": {"p": false, "q": false}} ]
//
//   with keys in sorted order throughout (nlohmann objects keep their keys
//   sorted, which pins the rendering).  valuation_from_json inverts exactly
//   this shape; the pair is the machine-readable countermodel format, so a
//   consumer can feed a reported countermodel back to eval.
//
//   Verdicts, countermodels, entailment, and proof-check results each get a
//   small record type mirroring their library struct.  Absent optionals are
//   omitted rather than serialized as null.
//
// ============================================================================

#ifndef CPN_JSON_IO_HPP
#define CPN_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "cpn/proof.hpp"
#include "cpn/semantics.hpp"
#include "cpn/syntax.hpp"

namespace cpn {

using Json = nlohmann::json;

// ── Valuation ───────────────────────────────────────────────────────────────

inline Json valuation_json(const Valuation& v) {
    Json worlds = Json::array();
    for (int i = 1; i <= v.n; ++i) {
        Json assign = Json::object();
        for (const auto& [atom, values] : v.assign) assign[atom] = v.value(atom, i);
        worlds.push_back(Json{{"world", i}, {"assign", std::move(assign)}});
    }
    return worlds;
}

inline Valuation valuation_from_json(const Json& j) {
    if (!j.is_array() || j.empty())
        fail(Errc::invalid_input, "valuation JSON must be a nonempty list of world records");
    Valuation v;
    v.n = static_cast<int>(j.size());
    for (int i = 1; i <= v.n; ++i) {
        const Json& rec = j[static_cast<std::size_t>(i - 1)];
        if (!rec.is_object() || !rec.contains("world") || !rec.contains("assign") ||
            rec["world"] != i)
            fail(Errc::invalid_input,
                 "valuation JSON record " + std::to_string(i) +
                     " must carry {\"world\": " + std::to_string(i) + ", \"assign\": {...}}");
        for (const auto& [atom, value] : rec["assign"].items()) {
            if (!value.is_boolean())
                fail(Errc::invalid_input, "assignment for '" + atom + "' must be boolean");
            auto [it, inserted] = v.assign.try_emplace(atom);
            if (inserted) it->second.resize(static_cast<std::size_t>(v.n));
            it->second[static_cast<std::size_t>(i - 1)] = value.get<bool>();
        }
    }
    for (const Json& rec : j)
        if (rec["assign"].size() != v.assign.size())
            fail(Errc::invalid_input, "every world record must assign the same atoms");
    return v;
}

// ── Verdicts and countermodels ──────────────────────────────────────────────

inline Json verdict_json(const Verdict& v) {
    Json out{{"kind", verdict_name(v.kind)}};
    if (v.witness_false) out["witness_false"] = valuation_json(*v.witness_false);
    if (v.witness_true) out["witness_true"] = valuation_json(*v.witness_true);
    return out;
}

inline Json countermodel_json(const Countermodel& cm) {
    return Json{{"world", cm.world}, {"valuation", valuation_json(cm.valuation)}};
}

inline Json entail_json(const EntailResult& r) {
    Json out{{"holds", r.holds}};
    if (r.countermodel) out["countermodel"] = countermodel_json(*r.countermodel);
    return out;
}

// ── Proof checking ──────────────────────────────────────────────────────────

inline Json check_result_json(const CheckResult& r) {
    Json out{{"ok", r.ok}};
    if (!r.ok) {
        out["line"] = r.line;
        out["reason"] = reason_name(r.reason);
        if (!r.detail.empty()) out["detail"] = r.detail;
    }
    return out;
}

}  // namespace cpn

#endif  // CPN_JSON_IO_HPP
