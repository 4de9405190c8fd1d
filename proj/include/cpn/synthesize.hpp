// ============================================================================
// cpn/synthesize.hpp — proof synthesis for tautologies
// ============================================================================
//
// Design notes:
//
//   The construction mirrors the completeness argument.  Fix a valuation V
//   and write cls(g) for the chain of worlds where g is false; the signed
//   form of g under V is ¬_{cls(g)}g (g itself when cls is empty).  Then:
//
//     letters lemma    from signed atoms, the signed form of any core
//                      formula is derivable, by recursion on its shape
//     elimination      a tautology's signed form is the formula itself, so
//                      deriving it under all sign choices and discharging
//                      letter by letter (deduction theorem + the case rule
//                      ψ→χ, ¬ωψ→χ ⊢ χ) leaves a premise-free proof
//
//   One complementary sign pair per atom suffices for the case rule; the
//   empty/full pair is used, so each atom enters as p or ¬ωp and the leaves
//   are the 2^m constant valuations.
//
//   The recursion steps package each connective case as a memoized
//   premise-free theorem (A → (B → signed-result)) built with the chain
//   rules from derivations.hpp, spliced and cut with MP at use sites.
//
//   Bounds: at most 3 distinct atoms and n ≤ 3 by default; the output grows
//   roughly as 2^m with extra blowup per discharge, and these limits keep
//   synthesis at interactive speed.
//
// ============================================================================

#ifndef CPN_SYNTHESIZE_HPP
#define CPN_SYNTHESIZE_HPP

#include "cpn/derivations.hpp"
#include "cpn/semantics.hpp"

namespace cpn {

class Synthesizer {
  public:
    Synthesizer(Store& st, int n, int max_atoms = 3, int max_n = 3)
        : st_(st), n_(n), max_atoms_(max_atoms), max_n_(max_n), full_(Chain::full(n)),
          lib_(st, n) {
        check_alphabet_size(n);
    }

    Proof synthesize(FormulaId f0) {
        FormulaId f = st_.expand(f0);
        detail::check_proof_formula(st_, f, n_, "goal");
        if (n_ > max_n_) fail(Errc::bound_exceeded, "alphabet size exceeds the synthesis bound");
        std::vector<std::string> atoms = st_.atoms(f);
        if (static_cast<int>(atoms.size()) > max_atoms_)
            fail(Errc::bound_exceeded, "distinct atom count exceeds the synthesis bound");
        if (classify(st_, f, n_).kind != VerdictKind::Tautology)
            fail(Errc::not_a_tautology, print(st_, f) + " is not a tautology");

        if (auto m = match_axiom(st_, f, n_)) {
            Proof p;
            p.n = n_;
            p.lines = {ProofLine{1, f, Just::from_axiom(m->id)}};
            return p;
        }

        goal_ = f;
        atoms_.clear();
        for (const std::string& name : atoms) atoms_.push_back(st_.make_atom(name));
        std::vector<bool> sign(atoms_.size(), true);
        return prune(eliminate(atoms_.size(), sign));
    }

  private:
    FormulaId wrap(std::uint32_t cls, FormulaId g) {
        return cls == 0 ? g : st_.make_neg(Chain::from_mask(cls, n_), g);
    }

    Chain chain(std::uint32_t mask) const { return Chain::from_mask(mask, n_); }

    template <typename F>
    int splice_thm(ProofBuilder& b, FormulaId goal, F&& make) {
        if (int l = b.have(goal)) return l;
        auto it = thms_.find(goal);
        if (it == thms_.end()) {
            Proof p = prune(make());
            if (p.conclusion() != goal || !p.premises.empty())
                fail(Errc::invalid_input, "synthesis template produced the wrong theorem");
            it = thms_.emplace(goal, std::move(p)).first;
        }
        return b.splice(it->second);
    }

    // Proof with premises [sₘ, ..., s_{j+1}] (atoms j..m-1 still signed per
    // `sign`, earlier atoms already eliminated) concluding the goal.
    Proof eliminate(std::size_t j, std::vector<bool>& sign) {
        if (j == 0) return leaf(sign);
        FormulaId p = atoms_[j - 1];

        sign[j - 1] = true;
        Proof dT = detail::deduct(st_, eliminate(j - 1, sign));
        sign[j - 1] = false;
        Proof dF = detail::deduct(st_, eliminate(j - 1, sign));

        std::vector<FormulaId> prem;
        for (std::size_t i = atoms_.size(); i > j; --i)
            prem.push_back(sign[i - 1] ? atoms_[i - 1] : st_.make_neg(full_, atoms_[i - 1]));
        ProofBuilder b(st_, n_, prem);
        std::vector<int> plines;
        for (int k = 1; k <= static_cast<int>(prem.size()); ++k) plines.push_back(b.premise(k));
        int lT = b.splice(dT, plines);
        int lF = b.splice(dF, plines);
        int ct = lib_.cases_thm(b, p, goal_);
        int lg = b.mp(b.mp(ct, lT), lF);
        return b.build_to(lg);
    }

    // Full assignment: premises [sₘ, ..., s₁], conclusion the goal itself
    // (its signed form, which is the bare formula since it is a tautology).
    Proof leaf(const std::vector<bool>& sign) {
        std::vector<FormulaId> prem;
        for (std::size_t i = atoms_.size(); i > 0; --i)
            prem.push_back(sign[i - 1] ? atoms_[i - 1] : st_.make_neg(full_, atoms_[i - 1]));
        ProofBuilder b(st_, n_, prem);
        auto [line, cls] = walk(b, goal_, sign);
        if (cls != 0)
            fail(Errc::invalid_input, "signed goal is not the bare formula at a leaf");
        return b.build_to(line);
    }

    // Letters lemma: derives the signed form of g under the constant
    // valuation given by `sign`; returns its line and false-world mask.
    std::pair<int, std::uint32_t> walk(ProofBuilder& b, FormulaId g,
                                       const std::vector<bool>& sign) {
        switch (st_.kind(g)) {
            case Kind::Atom: {
                for (std::size_t i = 0; i < atoms_.size(); ++i)
                    if (atoms_[i] == g) {
                        int slot = static_cast<int>(atoms_.size() - i);
                        return {b.premise(slot), sign[i] ? 0u : full_.mask()};
                    }
                fail(Errc::invalid_input, "atom missing from the elimination order");
            }
            case Kind::Bottom:
                return {bottom_signed(b, st_.chain_of(g)), st_.node(g).mask};
            case Kind::Neg: {
                auto [lh, ch] = walk(b, st_.lhs(g), sign);
                std::uint32_t cs = st_.node(g).mask;
                if (ch == cs) return {lh, 0u};
                std::uint32_t cg = ch ^ cs;
                return {lib_.a5_bwd(b, lh, chain(cg), st_.chain_of(g)), cg};
            }
            case Kind::Imp: {
                FormulaId a = st_.lhs(g), bb = st_.rhs(g);
                auto [la, ca] = walk(b, a, sign);
                auto [lb, cb] = walk(b, bb, sign);
                std::uint32_t cp = cb & ~ca;
                if (cb == 0) return {derive::weaken(b, lb, a), 0u};
                if (cp == 0) return {imp_subset(b, la, lb, a, bb, ca, cb), 0u};
                if (ca == 0 && cp == full_.mask()) {
                    int ni = lib_.nimp_intro_thm(b, a, bb);
                    return {b.mp(b.mp(ni, la), lb), cp};
                }
                return {imp_general(b, la, lb, a, bb, ca, cb), cp};
            }
            default:
                fail(Errc::invalid_input, "synthesis walks the expanded core only");
        }
    }

    // ⊢ ¬_c⊥_c via the A6 instance ¬_c⊥_c ↔ ⊤ω.
    int bottom_signed(ProofBuilder& b, Chain c) {
        FormulaId bot = st_.make_bottom(c);
        FormulaId goal = st_.make_neg(c, bot);
        return splice_thm(b, goal, [&] {
            ProofBuilder d(st_, n_);
            int a6 = d.axiom(6, {}, {{"k", c}, {"r", c}});
            int top = derive::identity(d, st_.make_bottom(full_));
            int l = d.mp(lib_.iff_bwd(d, a6), top);
            return d.build_to(l);
        });
    }

    // For ⊥-free-world implications: cls(b) ⊆ cls(a) nonempty, so a → b is
    // true everywhere.  ⊢ ¬_{ca}a → (¬_{cb}b → (a → b)).
    int imp_subset(ProofBuilder& b, int la, int lb, FormulaId a, FormulaId bb, std::uint32_t ca,
                   std::uint32_t cb) {
        FormulaId A = wrap(ca, a), B = wrap(cb, bb);
        FormulaId goal = st_.make_imp(A, st_.make_imp(B, st_.make_imp(a, bb)));
        int thm = splice_thm(b, goal, [&] {
            ProofBuilder d(st_, n_, {A, B, a});
            int col = lib_.collide(d, d.premise(3), d.premise(1));  // ⊥_{ca}
            int sh = lib_.bot_shrink(d, col, chain(cb));            // ⊥_{cb}
            int r3 = lib_.rule_iii(d, d.premise(2));                // ⊥_{cb} → b
            int l = d.mp(r3, sh);                                   // b
            Proof once = detail::deduct(st_, d.build_to(l));        // {A,B} ⊢ a → b
            return detail::deduct(st_, detail::deduct(st_, once));
        });
        return b.mp(b.mp(thm, la), lb);
    }

    // General contingent implication: cp = cls(b) \ cls(a) proper nonempty.
    // ⊢ ¬_{ca}a → (¬_{cb}b → ¬_{cp}(a → b)), by reductio: assuming
    // ¬ω¬_{cp}(a → b) gives ¬_{cp'}(a → b), and case analysis on a → b
    // yields ⊥ω either way, contradicting ⊥_{cp}'s negation.
    int imp_general(ProofBuilder& b, int la, int lb, FormulaId a, FormulaId bb, std::uint32_t ca,
                    std::uint32_t cb) {
        std::uint32_t cp = cb & ~ca;
        std::uint32_t cpc = full_.mask() ^ cp;
        FormulaId A = wrap(ca, a), B = wrap(cb, bb);
        FormulaId S = st_.make_imp(a, bb);
        FormulaId G = wrap(cp, S);
        FormulaId goal = st_.make_imp(A, st_.make_imp(B, G));
        int thm = splice_thm(b, goal, [&] {
            FormulaId h = st_.make_neg(full_, G);
            FormulaId nS = st_.make_neg(full_, S);
            FormulaId botw = st_.make_bottom(full_);

            // branch: S holds
            ProofBuilder cT(st_, n_, {A, B, h, S});
            int uT = lib_.a5_fwd(cT, cT.premise(3));                 // ¬_{cp'}S
            int col1 = lib_.collide(cT, cT.premise(4), uT);          // ⊥_{cp'}
            int laT;
            if (ca == 0) {
                laT = cT.premise(1);
            } else {
                int sha = lib_.bot_shrink(cT, col1, chain(ca));      // ⊥_{ca}
                laT = cT.mp(lib_.rule_iii(cT, cT.premise(1)), sha);  // a
            }
            int lbT = cT.mp(cT.premise(4), laT);                     // b
            int col2 = lib_.collide(cT, lbT, cT.premise(2));         // ⊥_{cb}
            int shp = lib_.bot_shrink(cT, col2, chain(cp));          // ⊥_{cp}
            int jT = lib_.bottom_join(cT, col1, shp);                // ⊥ω
            Proof dT = detail::deduct(st_, cT.build_to(jT));

            // branch: ¬ωS holds
            ProofBuilder cF(st_, n_, {A, B, h, nS});
            int uF = lib_.a5_fwd(cF, cF.premise(3));                 // ¬_{cp'}S
            int r3 = lib_.rule_iii(cF, uF);                          // ⊥_{cp'} → S
            int mtl = lib_.mt(cF, r3, cF.premise(4));                // ¬ω⊥_{cp'}
            int bp = lib_.negbot_to_bot(cF, mtl);                    // ⊥_{cp}
            int lbot;
            if (ca == 0) {
                lbot = bp;  // cp == cb here
            } else {
                int laF = lib_.by_classical(cF, a, {cF.premise(4)});
                int col3 = lib_.collide(cF, laF, cF.premise(1));     // ⊥_{ca}
                int jF = lib_.bottom_join(cF, bp, col3);             // ⊥_{cp⊗ca}
                lbot = lib_.bot_shrink(cF, jF, chain(cb));
            }
            int lbF = cF.mp(lib_.rule_iii(cF, cF.premise(2)), lbot);  // b
            int nb2 = lib_.by_classical(cF, st_.make_neg(full_, bb), {cF.premise(4)});
            int colF = lib_.collide(cF, lbF, nb2);                    // ⊥ω
            Proof dF = detail::deduct(st_, cF.build_to(colF));

            // case rule closes ⊥ω, then the reductio pair ⊥_{cp} / ¬ω⊥_{cp}
            ProofBuilder c(st_, n_, {A, B, h});
            std::vector<int> plines = {c.premise(1), c.premise(2), c.premise(3)};
            int lT = c.splice(dT, plines);
            int lF = c.splice(dF, plines);
            int ct = lib_.cases_thm(c, S, botw);
            int lw = c.mp(c.mp(ct, lT), lF);                          // ⊥ω
            int pos = lib_.bot_shrink(c, lw, chain(cp));
            int shc = lib_.bot_shrink(c, lw, chain(cpc));
            int neg = lib_.bot_to_negbot(c, shc, chain(cp));          // ¬ω⊥_{cp}
            Proof ra = reductio(st_, c.build_to(pos), c.build_to(neg));
            return detail::deduct(st_, detail::deduct(st_, ra));
        });
        return b.mp(b.mp(thm, la), lb);
    }

    Store& st_;
    int n_;
    int max_atoms_;
    int max_n_;
    Chain full_;
    Derivations lib_;
    FormulaId goal_ = kInvalidId;
    std::vector<FormulaId> atoms_;
    std::unordered_map<FormulaId, Proof> thms_;
};

inline Proof synthesize_proof(Store& st, FormulaId f, int n) {
    Synthesizer s(st, n);
    return s.synthesize(f);
}

}  // namespace cpn

#endif  // CPN_SYNTHESIZE_HPP
