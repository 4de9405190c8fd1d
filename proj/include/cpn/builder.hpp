// ============================================================================
// cpn/builder.hpp — incremental proof construction with deduplication
// ============================================================================
//
// Design notes:
//
//   ProofBuilder appends checker-valid lines one at a time and hands back
//   1-based line numbers.  Every line is recorded in a formula -> line map;
//   re-deriving a formula that is already on some line returns that line
//   instead of appending, which keeps combinator-generated proofs from
//   exploding.  splice() copies another proof in (premise lines bound to
//   existing lines of this builder), renumbering as it goes.
//
//   prune() drops lines unreachable from the conclusion and renumbers.
//
//   The derive:: helpers below are the A1/A2-only combinators everything
//   else builds on.
//
// ============================================================================

#ifndef CPN_BUILDER_HPP
#define CPN_BUILDER_HPP

#include <map>
#include <unordered_map>
#include <vector>

#include "cpn/proof.hpp"

namespace cpn {

class ProofBuilder {
  public:
    ProofBuilder(Store& st, int n, std::vector<FormulaId> premises = {})
        : st_(st), n_(n), premises_(std::move(premises)) {
        check_alphabet_size(n);
        for (FormulaId f : premises_) detail::check_proof_formula(st_, f, n_, "premise");
    }

    Store& store() { return st_; }
    const Store& store() const { return st_; }
    int n() const { return n_; }
    const std::vector<FormulaId>& premises() const { return premises_; }
    int size() const { return static_cast<int>(lines_.size()); }

    FormulaId formula_at(int line) const {
        if (line < 1 || line > size()) fail(Errc::invalid_input, "no such proof line");
        return lines_[static_cast<std::size_t>(line - 1)].formula;
    }

    // Line already holding f, or 0.
    int have(FormulaId f) const {
        auto it = known_.find(f);
        return it == known_.end() ? 0 : it->second;
    }

    int premise(int k) {
        if (k < 1 || k > static_cast<int>(premises_.size()))
            fail(Errc::invalid_input, "no premise " + std::to_string(k));
        FormulaId f = premises_[static_cast<std::size_t>(k - 1)];
        if (int l = have(f)) return l;
        return add(f, Just::from_premise(k));
    }

    int axiom_instance(int id, FormulaId inst,
                       std::shared_ptr<const AxiomBindings> bindings = nullptr) {
        if (int l = have(inst)) return l;
        if (!match_axiom_as(st_, inst, id, n_))
            fail(Errc::invalid_input,
                 print(st_, inst) + " is not an instance of A" + std::to_string(id));
        return add(inst, Just::from_axiom(id, std::move(bindings)));
    }

    int axiom(int id, const FMap& fbind, const CMap& cbind) {
        const Schema& ax = axiom_schemas()[static_cast<std::size_t>(id - 1)];
        FormulaId inst = st_.expand(substitute(st_, ax.body, fbind, cbind, n_));
        if (int l = have(inst)) return l;
        return axiom_instance(id, inst,
                              std::make_shared<const AxiomBindings>(AxiomBindings{fbind, cbind}));
    }

    int mp(int imp, int ant) {
        FormulaId fi = formula_at(imp), fa = formula_at(ant);
        if (st_.kind(fi) != Kind::Imp || st_.lhs(fi) != fa)
            fail(Errc::invalid_input, "modus ponens shape mismatch");
        FormulaId concl = st_.rhs(fi);
        if (int l = have(concl)) return l;
        return add(concl, Just::from_mp(imp, ant));
    }

    // Copies sub in, binding sub's premise k to line premise_lines[k-1] of
    // this builder.  Returns the line holding sub's conclusion.
    int splice(const Proof& sub, const std::vector<int>& premise_lines = {}) {
        if (sub.n != n_) fail(Errc::alphabet_mismatch, "spliced proof has a different n");
        if (premise_lines.size() != sub.premises.size())
            fail(Errc::invalid_input, "premise binding count mismatch");
        for (std::size_t k = 0; k < premise_lines.size(); ++k)
            if (formula_at(premise_lines[k]) != sub.premises[k])
                fail(Errc::invalid_input, "premise binding formula mismatch");
        if (sub.lines.empty()) fail(Errc::invalid_input, "cannot splice an empty proof");

        std::map<int, int> at;  // sub line index -> line here
        for (const ProofLine& ln : sub.lines) {
            switch (ln.just.kind) {
                case JustKind::Premise:
                    at[ln.index] = premise_lines[static_cast<std::size_t>(ln.just.premise - 1)];
                    break;
                case JustKind::Axiom:
                    at[ln.index] = axiom_instance(ln.just.axiom, ln.formula, ln.just.bindings);
                    break;
                case JustKind::MP:
                    at[ln.index] = mp(at.at(ln.just.imp), at.at(ln.just.ant));
                    break;
            }
        }
        return at.at(sub.lines.back().index);
    }

    Proof build() const { return Proof{n_, premises_, lines_}; }

    // Snapshot truncated after `line`, so the proof concludes there even
    // when later lines exist or the line was deduplicated backwards.
    Proof build_to(int line) const {
        if (line < 1 || line > size()) fail(Errc::invalid_input, "no such proof line");
        Proof p = build();
        p.lines.resize(static_cast<std::size_t>(line));
        return p;
    }

  private:
    int add(FormulaId f, Just j) {
        lines_.push_back(ProofLine{size() + 1, f, std::move(j)});
        known_.emplace(f, size());
        return size();
    }

    Store& st_;
    int n_;
    std::vector<FormulaId> premises_;
    std::vector<ProofLine> lines_;
    std::unordered_map<FormulaId, int> known_;
};

// ── prune ───────────────────────────────────────────────────────────────────
// Keeps only lines the conclusion depends on, renumbering densely.

inline Proof prune(const Proof& p) {
    if (p.lines.empty()) fail(Errc::invalid_input, "cannot prune an empty proof");
    std::map<int, const ProofLine*> by_index;
    for (const ProofLine& ln : p.lines) by_index[ln.index] = &ln;

    std::map<int, bool> needed;
    std::vector<int> stack = {p.lines.back().index};
    while (!stack.empty()) {
        int idx = stack.back();
        stack.pop_back();
        if (needed[idx]) continue;
        needed[idx] = true;
        const ProofLine* ln = by_index.at(idx);
        if (ln->just.kind == JustKind::MP) {
            stack.push_back(ln->just.imp);
            stack.push_back(ln->just.ant);
        }
    }

    Proof out;
    out.n = p.n;
    out.premises = p.premises;
    std::map<int, int> renumber;
    for (const ProofLine& ln : p.lines) {
        if (!needed[ln.index]) continue;
        ProofLine copy = ln;
        copy.index = static_cast<int>(out.lines.size()) + 1;
        if (copy.just.kind == JustKind::MP) {
            copy.just.imp = renumber.at(ln.just.imp);
            copy.just.ant = renumber.at(ln.just.ant);
        }
        renumber[ln.index] = copy.index;
        out.lines.push_back(std::move(copy));
    }
    return out;
}

// ── A1/A2 combinators ───────────────────────────────────────────────────────

namespace derive {

// ⊢ φ → φ
inline int identity(ProofBuilder& b, FormulaId phi) {
    Store& st = b.store();
    FormulaId goal = st.make_imp(phi, phi);
    if (int l = b.have(goal)) return l;
    FormulaId pp = st.make_imp(phi, goal);                      // φ→(φ→φ)
    FormulaId ppp = st.make_imp(phi, st.make_imp(goal, phi));   // φ→((φ→φ)→φ)
    int a2 = b.axiom_instance(2, st.make_imp(ppp, st.make_imp(pp, goal)));
    int a1 = b.axiom_instance(1, ppp);
    int step = b.mp(a2, a1);
    int a1b = b.axiom_instance(1, pp);
    return b.mp(step, a1b);
}

// from ⊢ χ:  ⊢ hyp → χ
inline int weaken(ProofBuilder& b, int line, FormulaId hyp) {
    Store& st = b.store();
    FormulaId chi = b.formula_at(line);
    int a1 = b.axiom_instance(1, st.make_imp(chi, st.make_imp(hyp, chi)));
    return b.mp(a1, line);
}

// from ⊢ A→(B→C) and ⊢ A→B:  ⊢ A→C
inline int imp_distr(ProofBuilder& b, int abc, int ab) {
    Store& st = b.store();
    FormulaId fabc = b.formula_at(abc);
    if (st.kind(fabc) != Kind::Imp || st.kind(st.rhs(fabc)) != Kind::Imp)
        fail(Errc::invalid_input, "imp_distr expects A->(B->C)");
    FormulaId a = st.lhs(fabc), bc = st.rhs(fabc);
    FormulaId fb = st.lhs(bc), fc = st.rhs(bc);
    int a2 = b.axiom_instance(
        2, st.make_imp(fabc, st.make_imp(st.make_imp(a, fb), st.make_imp(a, fc))));
    int step = b.mp(a2, abc);
    return b.mp(step, ab);
}

// from ⊢ A→B and ⊢ B→C:  ⊢ A→C
inline int compose(ProofBuilder& b, int ab, int bc) {
    FormulaId fab = b.formula_at(ab);
    Store& st = b.store();
    if (st.kind(fab) != Kind::Imp) fail(Errc::invalid_input, "compose expects implications");
    int weak = weaken(b, bc, st.lhs(fab));  // A→(B→C)
    return imp_distr(b, weak, ab);
}

}  // namespace derive

}  // namespace cpn

#endif  // CPN_BUILDER_HPP
