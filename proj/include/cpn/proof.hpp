// ============================================================================
// cpn/proof.hpp — Hilbert-style proof objects, axiom matching, checking,
//                 and the line-oriented proof file format
// ============================================================================
//
// Design notes:
//
//   A proof is a list of lines over the expanded core language (atoms, ⊥_c,
//   ¬_c, →); sugar is expanded when proofs are ingested.  Each line carries a
//   1-based index (strictly increasing, gaps allowed) and one justification:
//
//     premise k     the k-th premise, 1-based
//     axiom Aj      an instance of schema A1..A7
//     mp i j        modus ponens: line i reads  (line j's formula) -> (this)
//
//   The axioms, with c ranging over nonempty chains and ¬ at the full chain
//   written ¬ω here:
//
//     A1  φ → (ψ → φ)
//     A2  (φ → (ψ → χ)) → ((φ → ψ) → (φ → χ))
//     A3  (¬ωψ → ¬ωφ) → ((¬ωψ → φ) → ψ)
//     A4  φ → (⊥_k → ¬_k φ)
//     A5  ¬_k ¬_r φ ↔ ¬_{k⊗r} φ
//     A6  ¬_k ⊥_r ↔ ⊥_{k⊗r}
//     A7  ⊥_k → ⊥_r      where r ⊆ k
//
//   When k⊗r is empty the right side of A5 is plain φ and the right side of
//   A6 is the expanded top, ⊥ω → ⊥ω.  Matching is first-match in id order,
//   so a formula fitting several schemas reports the lowest id; an
//   explicitly declared id is accepted whenever that schema fits.
//
// ============================================================================

#ifndef CPN_PROOF_HPP
#define CPN_PROOF_HPP

#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cpn/schema.hpp"
#include "cpn/syntax.hpp"

namespace cpn {

// ── Proof objects ───────────────────────────────────────────────────────────

enum class JustKind { Premise, Axiom, MP };

struct AxiomBindings {
    FMap fbind;
    CMap cbind;
};

struct Just {
    JustKind kind = JustKind::Premise;
    int premise = 0;  // Premise: 1-based index into Proof::premises
    int axiom = 0;    // Axiom: 1..7
    std::shared_ptr<const AxiomBindings> bindings;  // Axiom: optional metavariable record
    int imp = 0;  // MP: index of the implication line
    int ant = 0;  // MP: index of the antecedent line

    static Just from_premise(int k) { return Just{JustKind::Premise, k, 0, nullptr, 0, 0}; }
    static Just from_axiom(int id, std::shared_ptr<const AxiomBindings> b = nullptr) {
        return Just{JustKind::Axiom, 0, id, std::move(b), 0, 0};
    }
    static Just from_mp(int imp, int ant) { return Just{JustKind::MP, 0, 0, nullptr, imp, ant}; }
};

struct ProofLine {
    int index = 0;
    FormulaId formula = kInvalidId;
    Just just;
};

struct Proof {
    int n = 0;
    std::vector<FormulaId> premises;
    std::vector<ProofLine> lines;

    FormulaId conclusion() const {
        if (lines.empty()) fail(Errc::invalid_input, "proof has no lines");
        return lines.back().formula;
    }
};

// ── Axiom matching ──────────────────────────────────────────────────────────

struct AxiomMatch {
    int id = 0;
    FMap fbind;
    CMap cbind;
};

namespace detail {

inline bool is_imp(const Store& st, FormulaId f) { return st.kind(f) == Kind::Imp; }

inline bool is_neg_mask(const Store& st, FormulaId f, std::uint32_t mask) {
    return st.kind(f) == Kind::Neg && st.node(f).mask == mask;
}

// Expanded ↔ has the shape ¬ω((L → R) → ¬ω(R → L)); returns {L, R}.
struct IffParts {
    FormulaId l, r;
};

inline std::optional<IffParts> match_iff_shape(const Store& st, FormulaId f, std::uint32_t full) {
    if (!is_neg_mask(st, f, full)) return std::nullopt;
    FormulaId body = st.lhs(f);
    if (!is_imp(st, body)) return std::nullopt;
    FormulaId fwd = st.lhs(body), wrapped = st.rhs(body);
    if (!is_imp(st, fwd) || !is_neg_mask(st, wrapped, full)) return std::nullopt;
    FormulaId bwd = st.lhs(wrapped);
    if (!is_imp(st, bwd)) return std::nullopt;
    if (st.lhs(bwd) != st.rhs(fwd) || st.rhs(bwd) != st.lhs(fwd)) return std::nullopt;
    return IffParts{st.lhs(fwd), st.rhs(fwd)};
}

inline std::optional<AxiomMatch> match_a1(const Store& st, FormulaId f) {
    if (!is_imp(st, f) || !is_imp(st, st.rhs(f))) return std::nullopt;
    if (st.rhs(st.rhs(f)) != st.lhs(f)) return std::nullopt;
    return AxiomMatch{1, {{"phi", st.lhs(f)}, {"psi", st.lhs(st.rhs(f))}}, {}};
}

inline std::optional<AxiomMatch> match_a2(const Store& st, FormulaId f) {
    if (!is_imp(st, f)) return std::nullopt;
    FormulaId l = st.lhs(f), r = st.rhs(f);
    if (!is_imp(st, l) || !is_imp(st, st.rhs(l))) return std::nullopt;
    FormulaId phi = st.lhs(l), psi = st.lhs(st.rhs(l)), chi = st.rhs(st.rhs(l));
    if (!is_imp(st, r) || !is_imp(st, st.lhs(r)) || !is_imp(st, st.rhs(r))) return std::nullopt;
    if (st.lhs(st.lhs(r)) != phi || st.rhs(st.lhs(r)) != psi) return std::nullopt;
    if (st.lhs(st.rhs(r)) != phi || st.rhs(st.rhs(r)) != chi) return std::nullopt;
    return AxiomMatch{2, {{"phi", phi}, {"psi", psi}, {"chi", chi}}, {}};
}

inline std::optional<AxiomMatch> match_a3(const Store& st, FormulaId f, std::uint32_t full) {
    if (!is_imp(st, f)) return std::nullopt;
    FormulaId l = st.lhs(f), r = st.rhs(f);
    if (!is_imp(st, l) || !is_neg_mask(st, st.lhs(l), full) || !is_neg_mask(st, st.rhs(l), full))
        return std::nullopt;
    FormulaId psi = st.lhs(st.lhs(l)), phi = st.lhs(st.rhs(l));
    if (!is_imp(st, r) || !is_imp(st, st.lhs(r))) return std::nullopt;
    if (!is_neg_mask(st, st.lhs(st.lhs(r)), full)) return std::nullopt;
    if (st.lhs(st.lhs(st.lhs(r))) != psi || st.rhs(st.lhs(r)) != phi) return std::nullopt;
    if (st.rhs(r) != psi) return std::nullopt;
    return AxiomMatch{3, {{"phi", phi}, {"psi", psi}}, {}};
}

inline std::optional<AxiomMatch> match_a4(const Store& st, FormulaId f, int n) {
    if (!is_imp(st, f) || !is_imp(st, st.rhs(f))) return std::nullopt;
    FormulaId phi = st.lhs(f), bot = st.lhs(st.rhs(f)), neg = st.rhs(st.rhs(f));
    if (st.kind(bot) != Kind::Bottom || st.kind(neg) != Kind::Neg) return std::nullopt;
    if (st.node(bot).mask != st.node(neg).mask || st.lhs(neg) != phi) return std::nullopt;
    return AxiomMatch{4, {{"phi", phi}}, {{"k", Chain::from_mask(st.node(bot).mask, n)}}};
}

inline std::optional<AxiomMatch> match_a5(const Store& st, FormulaId f, int n) {
    std::uint32_t full = Chain::full(n).mask();
    auto parts = match_iff_shape(st, f, full);
    if (!parts) return std::nullopt;
    FormulaId l = parts->l;
    if (st.kind(l) != Kind::Neg || st.kind(st.lhs(l)) != Kind::Neg) return std::nullopt;
    std::uint32_t k = st.node(l).mask, r = st.node(st.lhs(l)).mask;
    FormulaId phi = st.lhs(st.lhs(l));
    std::uint32_t kr = k ^ r;
    if (kr == 0) {
        if (parts->r != phi) return std::nullopt;
    } else if (st.kind(parts->r) != Kind::Neg || st.node(parts->r).mask != kr ||
               st.lhs(parts->r) != phi) {
        return std::nullopt;
    }
    return AxiomMatch{
        5, {{"phi", phi}}, {{"k", Chain::from_mask(k, n)}, {"r", Chain::from_mask(r, n)}}};
}

inline std::optional<AxiomMatch> match_a6(const Store& st, FormulaId f, int n) {
    std::uint32_t full = Chain::full(n).mask();
    auto parts = match_iff_shape(st, f, full);
    if (!parts) return std::nullopt;
    FormulaId l = parts->l;
    if (st.kind(l) != Kind::Neg || st.kind(st.lhs(l)) != Kind::Bottom) return std::nullopt;
    std::uint32_t k = st.node(l).mask, r = st.node(st.lhs(l)).mask;
    std::uint32_t kr = k ^ r;
    bool ok;
    if (kr == 0) {
        // expanded top: ⊥ω → ⊥ω
        FormulaId rr = parts->r;
        ok = is_imp(st, rr) && st.kind(st.lhs(rr)) == Kind::Bottom &&
             st.node(st.lhs(rr)).mask == full && st.rhs(rr) == st.lhs(rr);
    } else {
        ok = st.kind(parts->r) == Kind::Bottom && st.node(parts->r).mask == kr;
    }
    if (!ok) return std::nullopt;
    return AxiomMatch{6, {}, {{"k", Chain::from_mask(k, n)}, {"r", Chain::from_mask(r, n)}}};
}

inline std::optional<AxiomMatch> match_a7(const Store& st, FormulaId f, int n) {
    if (!is_imp(st, f)) return std::nullopt;
    FormulaId l = st.lhs(f), r = st.rhs(f);
    if (st.kind(l) != Kind::Bottom || st.kind(r) != Kind::Bottom) return std::nullopt;
    std::uint32_t k = st.node(l).mask, rm = st.node(r).mask;
    if ((rm & ~k) != 0) return std::nullopt;  // r must be a subchain of k
    return AxiomMatch{7, {}, {{"k", Chain::from_mask(k, n)}, {"r", Chain::from_mask(rm, n)}}};
}

}  // namespace detail

inline std::optional<AxiomMatch> match_axiom_as(const Store& st, FormulaId f, int id, int n) {
    if (!st.is_expanded(f)) return std::nullopt;
    std::uint32_t full = Chain::full(n).mask();
    switch (id) {
        case 1: return detail::match_a1(st, f);
        case 2: return detail::match_a2(st, f);
        case 3: return detail::match_a3(st, f, full);
        case 4: return detail::match_a4(st, f, n);
        case 5: return detail::match_a5(st, f, n);
        case 6: return detail::match_a6(st, f, n);
        case 7: return detail::match_a7(st, f, n);
        default: fail(Errc::invalid_input, "axiom id must be 1..7");
    }
}

inline std::optional<AxiomMatch> match_axiom(const Store& st, FormulaId f, int n) {
    for (int id = 1; id <= 7; ++id)
        if (auto m = match_axiom_as(st, f, id, n)) return m;
    return std::nullopt;
}

// ── Checking ────────────────────────────────────────────────────────────────

enum class Reason { BadPremiseIndex, AxiomMismatch, BadMP, ForwardReference };

inline const char* reason_name(Reason r) noexcept {
    switch (r) {
        case Reason::BadPremiseIndex:  return "BadPremiseIndex";
        case Reason::AxiomMismatch:    return "AxiomMismatch";
        case Reason::BadMP:            return "BadMP";
        case Reason::ForwardReference: return "ForwardReference";
    }
    return "?";
}

struct CheckResult {
    bool ok = true;
    int line = 0;  // offending line index when !ok
    Reason reason = Reason::BadMP;
    std::string detail;

    std::string message() const {
        if (ok) return "ok";
        return "error line " + std::to_string(line) + ": " + reason_name(reason);
    }
};

namespace detail {

inline void check_proof_formula(const Store& st, FormulaId f, int n, const char* where) {
    if (!st.is_expanded(f))
        fail(Errc::invalid_input, std::string(where) + " formula is not in expanded core form");
    int a = st.alpha(f);
    if (a != 0 && a != n)
        fail(Errc::alphabet_mismatch, std::string(where) + " formula is over [" +
                                          std::to_string(a) + "], proof states n=" +
                                          std::to_string(n));
}

}  // namespace detail

inline CheckResult check_proof(const Store& st, const Proof& p) {
    check_alphabet_size(p.n);
    for (FormulaId f : p.premises) detail::check_proof_formula(st, f, p.n, "premise");

    auto failed = [](int line, Reason r, std::string d) {
        return CheckResult{false, line, r, std::move(d)};
    };

    std::map<int, FormulaId> by_index;
    int prev = 0;
    for (const ProofLine& ln : p.lines) {
        if (ln.index <= prev)
            fail(Errc::invalid_input, "line indices must be 1-based and strictly increasing");
        prev = ln.index;
        detail::check_proof_formula(st, ln.formula, p.n, "line");

        switch (ln.just.kind) {
            case JustKind::Premise: {
                int k = ln.just.premise;
                if (k < 1 || k > static_cast<int>(p.premises.size()))
                    return failed(ln.index, Reason::BadPremiseIndex,
                                  "no premise " + std::to_string(k));
                if (p.premises[static_cast<std::size_t>(k - 1)] != ln.formula)
                    return failed(ln.index, Reason::BadPremiseIndex,
                                  "line formula differs from premise " + std::to_string(k));
                break;
            }
            case JustKind::Axiom: {
                if (!match_axiom_as(st, ln.formula, ln.just.axiom, p.n))
                    return failed(ln.index, Reason::AxiomMismatch,
                                  "not an instance of A" + std::to_string(ln.just.axiom));
                break;
            }
            case JustKind::MP: {
                for (int ref : {ln.just.imp, ln.just.ant}) {
                    if (ref >= ln.index)
                        return failed(ln.index, Reason::ForwardReference,
                                      "reference to line " + std::to_string(ref));
                    if (!by_index.count(ref))
                        return failed(ln.index, Reason::BadMP,
                                      "no line " + std::to_string(ref));
                }
                FormulaId imp = by_index[ln.just.imp], ant = by_index[ln.just.ant];
                if (st.kind(imp) != Kind::Imp)
                    return failed(ln.index, Reason::BadMP,
                                  "line " + std::to_string(ln.just.imp) + " is not an implication");
                if (st.lhs(imp) != ant || st.rhs(imp) != ln.formula)
                    return failed(ln.index, Reason::BadMP, "implication shape mismatch");
                break;
            }
        }
        by_index[ln.index] = ln.formula;
    }
    return CheckResult{};
}

// ── Proof file format ───────────────────────────────────────────────────────
//
//   worlds N
//   premise <formula>           zero or more
//   <idx>. <formula> ; premise <k> | axiom A<j> | mp <i> <j>
//
// Blank lines and lines starting with '#' are skipped.  Formulas are parsed
// in the surface grammar and expanded on ingestion.

inline Proof parse_proof(Store& st, const std::string& text) {
    std::istringstream in(text);
    Proof p;
    std::string raw;
    bool seen_worlds = false;
    int lineno = 0, prev_index = 0;

    auto trim = [](std::string s) {
        std::size_t a = s.find_first_not_of(" \t\r");
        if (a == std::string::npos) return std::string();
        std::size_t b = s.find_last_not_of(" \t\r");
        return s.substr(a, b - a + 1);
    };

    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        auto bad = [&](const std::string& why) -> void {
            fail(Errc::syntax_error, "proof file line " + std::to_string(lineno) + ": " + why);
        };

        if (!seen_worlds) {
            std::istringstream ls(line);
            std::string kw;
            int n = 0;
            if (!(ls >> kw >> n) || kw != "worlds") bad("expected 'worlds N'");
            check_alphabet_size(n);
            p.n = n;
            seen_worlds = true;
            continue;
        }
        if (line.rfind("premise ", 0) == 0) {
            if (!p.lines.empty()) bad("premise after proof steps");
            p.premises.push_back(st.expand(parse(st, line.substr(8), p.n)));
            continue;
        }

        std::size_t dot = line.find('.');
        if (dot == std::string::npos) bad("expected '<idx>. <formula> ; <justification>'");
        int idx = 0;
        try {
            std::size_t used = 0;
            idx = std::stoi(line.substr(0, dot), &used);
            if (trim(line.substr(0, dot)).size() != used) bad("bad step index");
        } catch (const std::exception&) {
            bad("bad step index");
        }
        if (idx <= prev_index) bad("step indices must be 1-based and strictly increasing");
        prev_index = idx;

        std::size_t semi = line.find(';', dot);
        if (semi == std::string::npos) bad("missing ';' before justification");
        FormulaId f = st.expand(parse(st, line.substr(dot + 1, semi - dot - 1), p.n));

        std::istringstream js(line.substr(semi + 1));
        std::string kw;
        js >> kw;
        Just just;
        if (kw == "premise") {
            int k;
            if (!(js >> k)) bad("expected 'premise <k>'");
            just = Just::from_premise(k);
        } else if (kw == "axiom") {
            std::string a;
            if (!(js >> a) || a.size() != 2 || a[0] != 'A' || a[1] < '1' || a[1] > '7')
                bad("expected 'axiom A1'..'axiom A7'");
            just = Just::from_axiom(a[1] - '0');
        } else if (kw == "mp") {
            int i, j;
            if (!(js >> i >> j)) bad("expected 'mp <i> <j>'");
            just = Just::from_mp(i, j);
        } else {
            bad("unknown justification '" + kw + "'");
        }
        std::string rest;
        if (js >> rest) bad("trailing tokens after justification");
        p.lines.push_back(ProofLine{idx, f, just});
    }
    if (!seen_worlds) fail(Errc::syntax_error, "proof file is empty (expected 'worlds N')");
    return p;
}

inline std::string serialize_proof(const Store& st, const Proof& p) {
    std::ostringstream out;
    out << "worlds " << p.n << "\n";
    for (FormulaId f : p.premises) out << "premise " << print(st, f) << "\n";
    for (const ProofLine& ln : p.lines) {
        out << ln.index << ". " << print(st, ln.formula) << " ; ";
        switch (ln.just.kind) {
            case JustKind::Premise: out << "premise " << ln.just.premise; break;
            case JustKind::Axiom:   out << "axiom A" << ln.just.axiom; break;
            case JustKind::MP:      out << "mp " << ln.just.imp << " " << ln.just.ant; break;
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace cpn

#endif  // CPN_PROOF_HPP
