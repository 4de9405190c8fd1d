// ============================================================================
// cpn/deduction.hpp — deduction theorem and reductio as proof transformers
// ============================================================================
//
// Design notes:
//
//   deduction_transform discharges the last premise φ of a checked proof of
//   Σ, φ ⊢ χ and returns a proof of Σ ⊢ φ → χ.  The construction is the
//   textbook one: each input line χᵢ becomes a line φ → χᵢ, with
//
//     retained premise / axiom χᵢ    the original line, then A1 and MP
//     the discharged premise        the A1/A2 template for φ → φ
//     MP from lines i, j            an A2 instance and two MPs
//
//   The input is pruned first, so only lines the conclusion needs are
//   carried over; the builder's deduplication then collapses repeated
//   templates.
//
//   detail::deduct is a sparse variant with the same contract, used by the
//   derivation engine where repeated discharges would otherwise triple a
//   proof per application: lines independent of φ are copied verbatim and
//   implications are only woven along the spine that actually uses φ.
//
//   reductio turns two proofs over Σ, ¬ωχ — one concluding ψ, one ¬ωψ —
//   into a proof of Σ ⊢ χ: both are discharged, and an A3 instance with two
//   MPs closes the argument.
//
// ============================================================================

#ifndef CPN_DEDUCTION_HPP
#define CPN_DEDUCTION_HPP

#include "cpn/builder.hpp"

namespace cpn {

namespace detail {

// Textbook construction; every surviving line χᵢ becomes a line φ → χᵢ.
// Assumes p is checker-valid with nonempty premises.
inline Proof deduct_lines(Store& st, const Proof& input) {
    if (input.premises.empty()) fail(Errc::empty_premises, "no premise to discharge");
    Proof p = prune(input);
    int k_d = static_cast<int>(p.premises.size());
    FormulaId phi = p.premises.back();

    std::vector<FormulaId> kept(p.premises.begin(), p.premises.end() - 1);
    ProofBuilder b(st, p.n, std::move(kept));

    std::map<int, int> at;  // input line index -> line of (φ → χᵢ)
    for (const ProofLine& ln : p.lines) {
        FormulaId chi = ln.formula;
        switch (ln.just.kind) {
            case JustKind::Premise: {
                if (ln.just.premise == k_d) {
                    at[ln.index] = derive::identity(b, phi);
                } else {
                    int l0 = b.premise(ln.just.premise);
                    at[ln.index] = derive::weaken(b, l0, phi);
                }
                break;
            }
            case JustKind::Axiom: {
                int l0 = b.axiom_instance(ln.just.axiom, chi, ln.just.bindings);
                at[ln.index] = derive::weaken(b, l0, phi);
                break;
            }
            case JustKind::MP: {
                at[ln.index] = derive::imp_distr(b, at.at(ln.just.imp), at.at(ln.just.ant));
                break;
            }
        }
    }
    return prune(b.build_to(at.at(p.lines.back().index)));
}

// Sparse construction used by the derivation engine.  Lines that never flow
// through the discharged premise are copied verbatim; only the spine that
// touches φ is wrapped, and a verbatim conclusion is weakened once at the
// end.  Spliced premise-free theorems thus survive a discharge at original
// size instead of tripling.
inline Proof deduct(Store& st, const Proof& input) {
    if (input.premises.empty()) fail(Errc::empty_premises, "no premise to discharge");
    Proof p = prune(input);
    int k_d = static_cast<int>(p.premises.size());
    FormulaId phi = p.premises.back();

    std::vector<FormulaId> kept(p.premises.begin(), p.premises.end() - 1);
    ProofBuilder b(st, p.n, std::move(kept));

    std::map<int, bool> touched;  // derivation uses the discharged premise
    std::map<int, int> raw;       // untouched: line holding χᵢ itself
    std::map<int, int> wrapped;   // touched: line holding φ → χᵢ
    for (const ProofLine& ln : p.lines) {
        switch (ln.just.kind) {
            case JustKind::Premise: {
                if (ln.just.premise == k_d) {
                    touched[ln.index] = true;
                    wrapped[ln.index] = derive::identity(b, phi);
                } else {
                    raw[ln.index] = b.premise(ln.just.premise);
                }
                break;
            }
            case JustKind::Axiom: {
                raw[ln.index] = b.axiom_instance(ln.just.axiom, ln.formula, ln.just.bindings);
                break;
            }
            case JustKind::MP: {
                int i = ln.just.imp, j = ln.just.ant;
                if (!touched[i] && !touched[j]) {
                    raw[ln.index] = b.mp(raw.at(i), raw.at(j));
                    break;
                }
                touched[ln.index] = true;
                if (touched[i] && touched[j]) {
                    wrapped[ln.index] = derive::imp_distr(b, wrapped.at(i), wrapped.at(j));
                } else if (touched[i]) {
                    int wj = derive::weaken(b, raw.at(j), phi);
                    wrapped[ln.index] = derive::imp_distr(b, wrapped.at(i), wj);
                } else {
                    // φ → χⱼ composed with the untouched χⱼ → χᵢ
                    wrapped[ln.index] = derive::compose(b, wrapped.at(j), raw.at(i));
                }
                break;
            }
        }
    }
    int c = p.lines.back().index;
    int lc = touched[c] ? wrapped.at(c) : derive::weaken(b, raw.at(c), phi);
    return prune(b.build_to(lc));
}

}  // namespace detail

inline Proof deduction_transform(Store& st, const Proof& p) {
    CheckResult r = check_proof(st, p);
    if (!r.ok) fail(Errc::invalid_input, "input proof fails checking: " + r.message());
    if (p.premises.empty()) fail(Errc::empty_premises, "no premise to discharge");
    return detail::deduct_lines(st, p);
}

// From Σ, ¬ωχ ⊢ ψ and Σ, ¬ωχ ⊢ ¬ωψ conclude Σ ⊢ χ.
inline Proof reductio(Store& st, const Proof& pos, const Proof& neg) {
    if (pos.n != neg.n) fail(Errc::alphabet_mismatch, "reductio inputs have different n");
    if (pos.premises != neg.premises)
        fail(Errc::invalid_input, "reductio inputs must share their premise list");
    if (pos.premises.empty()) fail(Errc::empty_premises, "reductio needs the ¬χ premise");

    int n = pos.n;
    FormulaId hyp = pos.premises.back();
    std::uint32_t full = Chain::full(n).mask();
    if (st.kind(hyp) != Kind::Neg || st.node(hyp).mask != full)
        fail(Errc::invalid_input, "last premise must be a full-chain negation");
    FormulaId chi = st.lhs(hyp);
    FormulaId psi = pos.conclusion();
    if (neg.conclusion() != st.make_neg(Chain::full(n), psi))
        fail(Errc::invalid_input, "conclusions must be ψ and ¬ωψ");

    Proof dpos = detail::deduct(st, pos);  // Σ ⊢ ¬ωχ → ψ
    Proof dneg = detail::deduct(st, neg);  // Σ ⊢ ¬ωχ → ¬ωψ

    std::vector<FormulaId> sigma = dpos.premises;
    ProofBuilder b(st, n, sigma);
    std::vector<int> plines;
    for (int k = 1; k <= static_cast<int>(sigma.size()); ++k) plines.push_back(b.premise(k));
    int lp = b.splice(dpos, plines);
    int ln = b.splice(dneg, plines);

    int a3 = b.axiom(3, {{"phi", psi}, {"psi", chi}}, {});
    int step = b.mp(a3, ln);
    int lchi = b.mp(step, lp);
    return prune(b.build_to(lchi));
}

}  // namespace cpn

#endif  // CPN_DEDUCTION_HPP
