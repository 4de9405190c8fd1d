// ============================================================================
// cpnc — command-line front end
// ============================================================================
//
// Subcommands:
//
//   parse        -n N "<formula>"                 canonical rendering
//   check        -n N "<formula>"                 tautology | contradiction | neither
//   countermodel -n N "<formula>"                 falsifying valuation or `none`
//   entail       -n N [-p "<f>"]... "<goal>"      yes | no with countermodel
//   prove check  <file>                           run the proof checker
//   prove synth  -n N [-o <file>] "<formula>"     synthesize and emit a proof
//   audit        -n N                             corpus pass/fail table
//
// Exit codes: 0 success or positive answer, 1 decided negative answer
// (non-tautology, failed check, no countermodel found), 2 usage or input
// error.  `--format json` switches the answer to a machine-readable record;
// valuations serialize as the documented per-world list.
//
// ============================================================================

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cpn/cpn.hpp"

namespace {

using namespace cpn;

void print_valuation(std::ostream& os, const Valuation& v) {
    for (int i = 1; i <= v.n; ++i) {
        os << "  world " << i << ":";
        for (const auto& [atom, values] : v.assign)
            os << ' ' << atom << '=' << (v.value(atom, i) ? "true" : "false");
        os << '\n';
    }
}

int run_parse(const std::string& text, int n, bool json) {
    Store st;
    FormulaId f = parse(st, text, n);
    if (json)
        std::cout << Json{{"formula", print(st, f)}}.dump() << '\n';
    else
        std::cout << print(st, f) << '\n';
    return 0;
}

int run_check(const std::string& text, int n, bool json) {
    Store st;
    FormulaId f = parse(st, text, n);
    Verdict v = classify(st, f, n);
    if (json) {
        std::cout << verdict_json(v).dump() << '\n';
    } else {
        std::cout << verdict_name(v.kind) << '\n';
        if (v.witness_false) {
            std::cout << "falsifying valuation:\n";
            print_valuation(std::cout, *v.witness_false);
        }
        if (v.witness_true) {
            std::cout << "satisfying valuation:\n";
            print_valuation(std::cout, *v.witness_true);
        }
    }
    return v.kind == VerdictKind::Tautology ? 0 : 1;
}

int run_countermodel(const std::string& text, int n, bool json) {
    Store st;
    FormulaId f = parse(st, text, n);
    auto cm = find_countermodel(st, f, n);
    if (json) {
        Json out{{"found", cm.has_value()}};
        if (cm) {
            out["world"] = cm->world;
            out["valuation"] = valuation_json(cm->valuation);
        }
        std::cout << out.dump() << '\n';
    } else if (cm) {
        std::cout << "false at world " << cm->world << ":\n";
        print_valuation(std::cout, cm->valuation);
    } else {
        std::cout << "none\n";
    }
    return cm ? 0 : 1;
}

int run_entail(const std::vector<std::string>& premise_texts, const std::string& goal_text,
               int n, bool json) {
    Store st;
    std::vector<FormulaId> premises;
    for (const std::string& t : premise_texts) premises.push_back(parse(st, t, n));
    FormulaId goal = parse(st, goal_text, n);
    EntailResult r = entails(st, premises, goal, n);
    if (json) {
        std::cout << entail_json(r).dump() << '\n';
    } else if (r.holds) {
        std::cout << "yes\n";
    } else {
        std::cout << "no\n";
        if (r.countermodel) {
            std::cout << "premises hold but the goal fails at world "
                      << r.countermodel->world << ":\n";
            print_valuation(std::cout, r.countermodel->valuation);
        }
    }
    return r.holds ? 0 : 1;
}

int run_prove_check(const std::string& path, bool json) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "cannot read proof file '" << path << "'\n";
        return 2;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    Store st;
    Proof p = parse_proof(st, buf.str());
    CheckResult r = check_proof(st, p);
    if (json)
        std::cout << check_result_json(r).dump() << '\n';
    else
        std::cout << r.message() << '\n';
    if (!r.ok && !r.detail.empty()) std::cerr << r.detail << '\n';
    return r.ok ? 0 : 1;
}

int run_prove_synth(const std::string& text, int n, const std::string& out_path) {
    Store st;
    FormulaId f = parse(st, text, n);
    Proof p = synthesize_proof(st, f, n);
    std::string serialized = serialize_proof(st, p);
    if (out_path.empty()) {
        std::cout << serialized;
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "cannot write proof file '" << out_path << "'\n";
            return 2;
        }
        out << serialized;
        std::cout << p.lines.size() << " lines written to " << out_path << '\n';
    }
    return 0;
}

int run_audit(int n, bool json) {
    Store st;
    std::size_t failures = 0, instances = 0;
    Json rows = Json::array();
    std::ostringstream table;
    for (const Scheme& s : scheme_corpus()) {
        FMap fm;
        for (const std::string& name : s.schema.fvars)
            fm[name] = st.make_atom(name == "psi" ? "q" : "p");
        std::size_t count = 0, bad = 0;
        for (const CMap& cm : admissible_chain_maps(s, n)) {
            FormulaId f = instantiate_scheme(st, s.schema.id, fm, cm, n);
            bool ok;
            if (s.derivable) {
                ok = classify(st, f, n).kind == VerdictKind::Tautology;
            } else {
                auto witness = find_countermodel(st, f, n);
                ok = witness && !eval_world(st, f, witness->world, witness->valuation);
            }
            count += 1;
            bad += ok ? 0 : 1;
        }
        instances += count;
        failures += bad;
        if (json) {
            rows.push_back(Json{{"id", s.schema.id},
                                {"derivable", s.derivable},
                                {"instances", count},
                                {"failures", bad}});
        } else {
            char line[128];
            std::snprintf(line, sizeof line, "%-26s %-14s %9zu  %s\n", s.schema.id.c_str(),
                          s.derivable ? "derivable" : "non-derivable", count,
                          bad == 0 ? "ok" : "FAIL");
            table << line;
        }
    }
    if (json) {
        std::cout << Json{{"worlds", n},
                          {"schemes", std::move(rows)},
                          {"instances", instances},
                          {"failures", failures}}
                         .dump()
                  << '\n';
    } else {
        std::cout << "scheme                     kind           instances  result\n"
                  << table.str() << scheme_corpus().size() << " schemes, " << instances
                  << " instances, " << failures << " failures\n";
    }
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-world propositional logic toolkit"};
    app.require_subcommand(1);

    int n = 0;
    std::string formula, goal, path, out_path, format = "text";
    std::vector<std::string> premise_texts;

    auto add_worlds = [&n](CLI::App* cmd) {
        cmd->add_option("-n,--worlds", n, "number of worlds")
            ->required()
            ->check(CLI::Range(1, cpn::kMaxWorlds));
    };
    auto add_format = [&format](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"text", "json"}));
    };

    CLI::App* parse_cmd = app.add_subcommand("parse", "parse and reprint a formula");
    add_worlds(parse_cmd);
    add_format(parse_cmd);
    parse_cmd->add_option("formula", formula, "formula text")->required();

    CLI::App* check_cmd = app.add_subcommand("check", "classify a formula");
    add_worlds(check_cmd);
    add_format(check_cmd);
    check_cmd->add_option("formula", formula, "formula text")->required();

    CLI::App* cm_cmd = app.add_subcommand("countermodel", "search for a falsifying valuation");
    add_worlds(cm_cmd);
    add_format(cm_cmd);
    cm_cmd->add_option("formula", formula, "formula text")->required();

    CLI::App* entail_cmd = app.add_subcommand("entail", "decide semantic entailment");
    add_worlds(entail_cmd);
    add_format(entail_cmd);
    entail_cmd->add_option("-p,--premise", premise_texts, "premise (repeatable)");
    entail_cmd->add_option("goal", goal, "goal formula")->required();

    CLI::App* prove_cmd = app.add_subcommand("prove", "check or synthesize proofs");
    prove_cmd->require_subcommand(1);
    CLI::App* prove_check_cmd = prove_cmd->add_subcommand("check", "check a proof file");
    add_format(prove_check_cmd);
    prove_check_cmd->add_option("file", path, "proof file")->required();
    CLI::App* prove_synth_cmd =
        prove_cmd->add_subcommand("synth", "synthesize a proof of a tautology");
    add_worlds(prove_synth_cmd);
    prove_synth_cmd->add_option("-o,--output", out_path, "write the proof here");
    prove_synth_cmd->add_option("formula", formula, "formula text")->required();

    CLI::App* audit_cmd = app.add_subcommand("audit", "run the scheme corpus audit");
    add_worlds(audit_cmd);
    add_format(audit_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    bool json = format == "json";
    try {
        if (parse_cmd->parsed()) return run_parse(formula, n, json);
        if (check_cmd->parsed()) return run_check(formula, n, json);
        if (cm_cmd->parsed()) return run_countermodel(formula, n, json);
        if (entail_cmd->parsed()) return run_entail(premise_texts, goal, n, json);
        if (prove_check_cmd->parsed()) return run_prove_check(path, json);
        if (prove_synth_cmd->parsed()) return run_prove_synth(formula, n, out_path);
        if (audit_cmd->parsed()) return run_audit(n, json);
    } catch (const cpn::Error& e) {
        std::cerr << errc_name(e.code()) << ": " << e.what() << '\n';
        return e.code() == cpn::Errc::not_a_tautology ? 1 : 2;
    }
    return 2;
}
