// ============================================================================
// cpn/derivations.hpp — template library of derived rules
// ============================================================================
//
// Design notes:
//
//   Derivations owns a cache of premise-free theorem proofs keyed by their
//   conclusion, all derived from A1–A7 plus modus ponens via the deduction
//   and reductio transformers.  Line-level combinators splice a cached
//   theorem into the caller's builder and apply MPs, so re-deriving the same
//   instance costs a lookup.
//
//   Layers, bottom to top:
//
//     1. hand-built classical templates: identity (builder.hpp), double
//        negation both ways, ex falso, contraposition, negated-implication
//        introduction, and case elimination  (A1–A3, DT, reductio)
//     2. classical(): any implicational/¬ω formula that is classically valid
//        when its non-classical subterms are read as opaque leaves gets a
//        proof by the Kalmár truth-table construction — per leaf assignment
//        a signed derivation, then case elimination leaf by leaf
//     3. chain rules: collide (φ, ¬_cφ ⊢ ⊥_c), falsum transport along A4/A5/
//        A6/A7, and ↔ unpacking, used by the completeness construction
//
//   Everything is instance-level: callers pass concrete formulas and chains,
//   not metavariables.
//
// ============================================================================

#ifndef CPN_DERIVATIONS_HPP
#define CPN_DERIVATIONS_HPP

#include <functional>
#include <unordered_map>

#include "cpn/deduction.hpp"

namespace cpn {

class Derivations {
  public:
    Derivations(Store& st, int n) : st_(st), n_(n), full_(Chain::full(n)) {
        check_alphabet_size(n);
    }

    Store& store() { return st_; }
    int n() const { return n_; }

    // ── classical layer ─────────────────────────────────────────────────

    // ⊢ ¬ω¬ωφ → φ
    int dneg_elim_thm(ProofBuilder& b, FormulaId phi) {
        FormulaId np = wneg(phi), nnp = wneg(wneg(phi));
        return splice_thm(b, imp(nnp, phi), [&] {
            ProofBuilder c(st_, n_, {nnp});
            int w = derive::weaken(c, c.premise(1), np);  // ¬φ → ¬¬φ
            int i = derive::identity(c, np);              // ¬φ → ¬φ
            int a3 = c.axiom(3, {{"phi", np}, {"psi", phi}}, {});
            int l = c.mp(c.mp(a3, w), i);
            return detail::deduct(st_, c.build_to(l));
        });
    }

    // ⊢ φ → ¬ω¬ωφ
    int dneg_intro_thm(ProofBuilder& b, FormulaId phi) {
        FormulaId np = wneg(phi), nnp = wneg(np), nnnp = wneg(nnp);
        return splice_thm(b, imp(phi, nnp), [&] {
            ProofBuilder c(st_, n_, {phi});
            int d = dneg_elim_thm(c, np);                   // ¬¬¬φ → ¬φ
            int w = derive::weaken(c, c.premise(1), nnnp);  // ¬¬¬φ → φ
            int a3 = c.axiom(3, {{"phi", phi}, {"psi", nnp}}, {});
            int l = c.mp(c.mp(a3, d), w);
            return detail::deduct(st_, c.build_to(l));
        });
    }

    // ⊢ ¬ωa → (a → b)
    int efq_thm(ProofBuilder& b, FormulaId a, FormulaId bb) {
        FormulaId na = wneg(a), nb = wneg(bb);
        return splice_thm(b, imp(na, imp(a, bb)), [&] {
            ProofBuilder c(st_, n_, {na, a});
            int w1 = derive::weaken(c, c.premise(1), nb);  // ¬b → ¬a
            int w2 = derive::weaken(c, c.premise(2), nb);  // ¬b → a
            int a3 = c.axiom(3, {{"phi", a}, {"psi", bb}}, {});
            int l = c.mp(c.mp(a3, w1), w2);
            return detail::deduct(st_, detail::deduct(st_, c.build_to(l)));
        });
    }

    // ⊢ (x → y) → (¬ωy → ¬ωx)
    int contrapose_thm(ProofBuilder& b, FormulaId x, FormulaId y) {
        FormulaId nx = wneg(x), ny = wneg(y);
        return splice_thm(b, imp(imp(x, y), imp(ny, nx)), [&] {
            std::vector<FormulaId> prem = {imp(x, y), ny, wneg(nx)};
            ProofBuilder pos(st_, n_, prem);
            int gx = pos.mp(dneg_elim_thm(pos, x), pos.premise(3));
            int ly = pos.mp(pos.premise(1), gx);  // y
            ProofBuilder neg(st_, n_, prem);
            int ln = neg.premise(2);  // ¬y
            Proof ra = reductio(st_, pos.build_to(ly), neg.build_to(ln));
            return detail::deduct(st_, detail::deduct(st_, ra));
        });
    }

    // ⊢ a → (¬ωb → ¬ω(a → b))
    int nimp_intro_thm(ProofBuilder& b, FormulaId a, FormulaId bb) {
        FormulaId ab = imp(a, bb), nb = wneg(bb);
        return splice_thm(b, imp(a, imp(nb, wneg(ab))), [&] {
            std::vector<FormulaId> prem = {a, nb, wneg(wneg(ab))};
            ProofBuilder pos(st_, n_, prem);
            int gab = pos.mp(dneg_elim_thm(pos, ab), pos.premise(3));
            int lb = pos.mp(gab, pos.premise(1));  // b
            ProofBuilder neg(st_, n_, prem);
            int ln = neg.premise(2);  // ¬b
            Proof ra = reductio(st_, pos.build_to(lb), neg.build_to(ln));
            return detail::deduct(st_, detail::deduct(st_, ra));
        });
    }

    // ⊢ (a → c) → ((¬ωa → c) → c)
    int cases_thm(ProofBuilder& b, FormulaId a, FormulaId cc) {
        FormulaId na = wneg(a), nc = wneg(cc);
        return splice_thm(b, imp(imp(a, cc), imp(imp(na, cc), cc)), [&] {
            std::vector<FormulaId> prem = {imp(a, cc), imp(na, cc), nc};
            ProofBuilder pos(st_, n_, prem);
            int lna = mt(pos, pos.premise(1), pos.premise(3));  // ¬a
            int lc = pos.mp(pos.premise(2), lna);               // c
            ProofBuilder neg(st_, n_, prem);
            int ln = neg.premise(3);  // ¬c
            Proof ra = reductio(st_, pos.build_to(lc), neg.build_to(ln));
            return detail::deduct(st_, detail::deduct(st_, ra));
        });
    }

    // from lines ⊢ x→y and ⊢ ¬ωy:  ⊢ ¬ωx
    int mt(ProofBuilder& b, int imp_line, int negy_line) {
        FormulaId f = b.formula_at(imp_line);
        if (st_.kind(f) != Kind::Imp) fail(Errc::invalid_input, "mt expects an implication");
        FormulaId x = st_.lhs(f), y = st_.rhs(f);
        if (b.formula_at(negy_line) != wneg(y))
            fail(Errc::invalid_input, "mt expects the negated consequent");
        int cp = contrapose_thm(b, x, y);
        return b.mp(b.mp(cp, imp_line), negy_line);
    }

    // ⊢ goal for any goal valid classically when its non-→/¬ω subterms are
    // read as opaque propositional leaves.
    int classical(ProofBuilder& b, FormulaId goal) {
        if (int l = b.have(goal)) return l;
        return splice_thm(b, goal, [&] { return classical_proof(goal); });
    }

    // Derives goal from hypothesis lines via the classical theorem
    // h1 → (h2 → ... → goal) and MPs.
    int by_classical(ProofBuilder& b, FormulaId goal, const std::vector<int>& hyps) {
        FormulaId thm = goal;
        for (auto it = hyps.rbegin(); it != hyps.rend(); ++it)
            thm = imp(b.formula_at(*it), thm);
        int l = classical(b, thm);
        for (int h : hyps) l = b.mp(l, h);
        return l;
    }

    // ── ↔ unpacking ─────────────────────────────────────────────────────
    // iff lines hold the expanded form ¬ω((L→R) → ¬ω(R→L)).

    int iff_fwd(ProofBuilder& b, int iff_line) {  // L → R
        auto parts = detail::match_iff_shape(st_, b.formula_at(iff_line), full_.mask());
        if (!parts) fail(Errc::invalid_input, "line is not an expanded equivalence");
        return by_classical(b, imp(parts->l, parts->r), {iff_line});
    }

    int iff_bwd(ProofBuilder& b, int iff_line) {  // R → L
        auto parts = detail::match_iff_shape(st_, b.formula_at(iff_line), full_.mask());
        if (!parts) fail(Errc::invalid_input, "line is not an expanded equivalence");
        return by_classical(b, imp(parts->r, parts->l), {iff_line});
    }

    // ── chain rules ─────────────────────────────────────────────────────

    // from lines φ and ¬_cφ:  ⊥_c
    int collide(ProofBuilder& b, int pos_line, int neg_line) {
        FormulaId nf = b.formula_at(neg_line);
        if (st_.kind(nf) != Kind::Neg || st_.lhs(nf) != b.formula_at(pos_line))
            fail(Errc::invalid_input, "collide expects φ and ¬_c φ");
        FormulaId phi = st_.lhs(nf);
        Chain c = st_.chain_of(nf);
        int thm = collide_thm(b, phi, c);  // φ → (¬_cφ → ⊥_c)
        return b.mp(b.mp(thm, pos_line), neg_line);
    }

    // ⊢ φ → (¬_cφ → ⊥_c)
    int collide_thm(ProofBuilder& b, FormulaId phi, Chain c) {
        FormulaId goal = imp(phi, imp(negc(c, phi), botc(c)));
        return splice_thm(b, goal, [&] {
            if (c.is_full()) {
                ProofBuilder d(st_, n_, {phi, wneg(phi)});
                int ef = efq_thm(d, phi, botc(c));  // ¬φ → (φ → ⊥ω)
                int l = d.mp(d.mp(ef, d.premise(2)), d.premise(1));
                return detail::deduct(st_, detail::deduct(st_, d.build_to(l)));
            }
            Chain cc = complement(c);
            std::vector<FormulaId> prem = {phi, negc(c, phi), wneg(botc(c))};
            ProofBuilder pos(st_, n_, prem);
            int lpos = pos.premise(2);  // ¬_cφ
            ProofBuilder neg(st_, n_, prem);
            int lb = negbot_to_bot(neg, neg.premise(3));  // ⊥_{c'}
            int a4 = neg.axiom(4, {{"phi", phi}}, {{"k", cc}});
            int lnc = neg.mp(neg.mp(a4, neg.premise(1)), lb);  // ¬_{c'}φ
            int a5 = neg.axiom(5, {{"phi", phi}}, {{"k", full_}, {"r", c}});
            int lneg = neg.mp(iff_bwd(neg, a5), lnc);  // ¬ω¬_cφ
            Proof ra = reductio(st_, pos.build_to(lpos), neg.build_to(lneg));
            return detail::deduct(st_, detail::deduct(st_, ra));
        });
    }

    // from line ¬_cX:  ⊥_c → X
    int rule_iii(ProofBuilder& b, int negc_line) {
        FormulaId nf = b.formula_at(negc_line);
        if (st_.kind(nf) != Kind::Neg) fail(Errc::invalid_input, "rule_iii expects ¬_c X");
        FormulaId x = st_.lhs(nf);
        Chain c = st_.chain_of(nf);
        FormulaId goal = imp(nf, imp(botc(c), x));
        int thm = splice_thm(b, goal, [&] {
            ProofBuilder d(st_, n_, {nf, botc(c)});
            int a4 = d.axiom(4, {{"phi", nf}}, {{"k", c}});
            int dn = d.mp(d.mp(a4, d.premise(1)), d.premise(2));  // ¬_c¬_cX
            int a5 = d.axiom(5, {{"phi", x}}, {{"k", c}, {"r", c}});
            int l = d.mp(iff_fwd(d, a5), dn);  // X
            return detail::deduct(st_, detail::deduct(st_, d.build_to(l)));
        });
        return b.mp(thm, negc_line);
    }

    // from line ¬_cX with c ≠ ω:  ⊥_{c'} → ¬ωX
    int rule_iv(ProofBuilder& b, int negc_line) {
        FormulaId nf = b.formula_at(negc_line);
        if (st_.kind(nf) != Kind::Neg || st_.node(nf).mask == full_.mask())
            fail(Errc::invalid_input, "rule_iv expects ¬_c X with c proper");
        FormulaId x = st_.lhs(nf);
        Chain c = st_.chain_of(nf), cc = complement(c);
        FormulaId goal = imp(nf, imp(botc(cc), wneg(x)));
        int thm = splice_thm(b, goal, [&] {
            ProofBuilder d(st_, n_, {nf, botc(cc)});
            int a4 = d.axiom(4, {{"phi", nf}}, {{"k", cc}});
            int dn = d.mp(d.mp(a4, d.premise(1)), d.premise(2));  // ¬_{c'}¬_cX
            int a5 = d.axiom(5, {{"phi", x}}, {{"k", cc}, {"r", c}});
            int l = d.mp(iff_fwd(d, a5), dn);  // ¬ωX
            return detail::deduct(st_, detail::deduct(st_, d.build_to(l)));
        });
        return b.mp(thm, negc_line);
    }

    // from lines ⊥_a and ⊥_b with a ≠ b:  ⊥_{a⊗b}
    int bottom_join(ProofBuilder& b, int la, int lb) {
        FormulaId fa = b.formula_at(la), fb = b.formula_at(lb);
        if (st_.kind(fa) != Kind::Bottom || st_.kind(fb) != Kind::Bottom || fa == fb)
            fail(Errc::invalid_input, "bottom_join expects two distinct falsum lines");
        Chain a = st_.chain_of(fa), bb = st_.chain_of(fb);
        FormulaId goal = imp(fa, imp(fb, botc(coconcat(a, bb))));
        int thm = splice_thm(b, goal, [&] {
            ProofBuilder d(st_, n_, {fa, fb});
            int a4 = d.axiom(4, {{"phi", fb}}, {{"k", a}});
            int nb = d.mp(d.mp(a4, d.premise(2)), d.premise(1));  // ¬_a⊥_b
            int a6 = d.axiom(6, {}, {{"k", a}, {"r", bb}});
            int l = d.mp(iff_fwd(d, a6), nb);  // ⊥_{a⊗b}
            return detail::deduct(st_, detail::deduct(st_, d.build_to(l)));
        });
        return b.mp(b.mp(thm, la), lb);
    }

    // from line ⊥_k:  ⊥_r for r ⊆ k
    int bot_shrink(ProofBuilder& b, int l, Chain r) {
        FormulaId f = b.formula_at(l);
        if (st_.kind(f) != Kind::Bottom) fail(Errc::invalid_input, "bot_shrink expects a falsum");
        Chain k = st_.chain_of(f);
        if (r == k) return l;
        int a7 = b.axiom(7, {}, {{"k", k}, {"r", r}});
        return b.mp(a7, l);
    }

    // from line ¬ω⊥_c with c ≠ ω:  ⊥_{c'}
    int negbot_to_bot(ProofBuilder& b, int l) {
        FormulaId f = b.formula_at(l);
        if (st_.kind(f) != Kind::Neg || st_.node(f).mask != full_.mask() ||
            st_.kind(st_.lhs(f)) != Kind::Bottom)
            fail(Errc::invalid_input, "negbot_to_bot expects ¬ω⊥_c");
        Chain c = st_.chain_of(st_.lhs(f));
        if (c.is_full()) fail(Errc::invalid_input, "negbot_to_bot needs a proper chain");
        int a6 = b.axiom(6, {}, {{"k", full_}, {"r", c}});
        return b.mp(iff_fwd(b, a6), l);
    }

    // from line ⊥_{c'} with c ≠ ω:  ¬ω⊥_c
    int bot_to_negbot(ProofBuilder& b, int l, Chain c) {
        if (c.is_full()) fail(Errc::invalid_input, "bot_to_negbot needs a proper chain");
        if (b.formula_at(l) != botc(complement(c)))
            fail(Errc::invalid_input, "bot_to_negbot expects ⊥ at the complement chain");
        int a6 = b.axiom(6, {}, {{"k", full_}, {"r", c}});
        return b.mp(iff_bwd(b, a6), l);
    }

    // from line ¬_k¬_rφ:  ¬_{k⊗r}φ, which is plain φ when k = r
    int a5_fwd(ProofBuilder& b, int l) {
        FormulaId f = b.formula_at(l);
        if (st_.kind(f) != Kind::Neg || st_.kind(st_.lhs(f)) != Kind::Neg)
            fail(Errc::invalid_input, "a5_fwd expects ¬_k¬_rφ");
        Chain k = st_.chain_of(f), r = st_.chain_of(st_.lhs(f));
        FormulaId phi = st_.lhs(st_.lhs(f));
        int a5 = b.axiom(5, {{"phi", phi}}, {{"k", k}, {"r", r}});
        return b.mp(iff_fwd(b, a5), l);
    }

    // from line ¬_{k⊗r}φ (plain φ when k = r):  ¬_k¬_rφ
    int a5_bwd(ProofBuilder& b, int l, Chain k, Chain r) {
        std::uint32_t kr = k.mask() ^ r.mask();
        FormulaId f = b.formula_at(l);
        FormulaId phi;
        if (kr == 0) {
            phi = f;
        } else {
            if (st_.kind(f) != Kind::Neg || st_.node(f).mask != kr)
                fail(Errc::invalid_input, "a5_bwd expects ¬ at the coconcat chain");
            phi = st_.lhs(f);
        }
        int a5 = b.axiom(5, {{"phi", phi}}, {{"k", k}, {"r", r}});
        return b.mp(iff_bwd(b, a5), l);
    }

  private:
    FormulaId imp(FormulaId a, FormulaId bb) { return st_.make_imp(a, bb); }
    FormulaId negc(Chain c, FormulaId a) { return st_.make_neg(c, a); }
    FormulaId wneg(FormulaId a) { return st_.make_neg(full_, a); }
    FormulaId botc(Chain c) { return st_.make_bottom(c); }

    template <typename F>
    int splice_thm(ProofBuilder& b, FormulaId goal, F&& make) {
        if (int l = b.have(goal)) return l;
        auto it = thms_.find(goal);
        if (it == thms_.end()) {
            Proof p = prune(make());
            if (p.conclusion() != goal || !p.premises.empty())
                fail(Errc::invalid_input, "template construction produced the wrong theorem");
            it = thms_.emplace(goal, std::move(p)).first;
        }
        return b.splice(it->second);
    }

    // ── Kalmár construction ─────────────────────────────────────────────

    void collect_leaves(FormulaId f, std::vector<FormulaId>& out) {
        if (st_.kind(f) == Kind::Imp) {
            collect_leaves(st_.lhs(f), out);
            collect_leaves(st_.rhs(f), out);
            return;
        }
        if (st_.kind(f) == Kind::Neg && st_.node(f).mask == full_.mask()) {
            collect_leaves(st_.lhs(f), out);
            return;
        }
        for (FormulaId g : out)
            if (g == f) return;
        out.push_back(f);
    }

    bool eval_leaves(FormulaId f, const std::unordered_map<FormulaId, bool>& env) const {
        auto it = env.find(f);
        if (it != env.end()) return it->second;
        if (st_.kind(f) == Kind::Imp)
            return !eval_leaves(st_.lhs(f), env) || eval_leaves(st_.rhs(f), env);
        return !eval_leaves(st_.lhs(f), env);  // ¬ω
    }

    // Signed derivation: given premise lines for each leaf (the leaf itself
    // when true, ¬ω(leaf) when false), derives X when X evaluates true and
    // ¬ωX when false; returns the line.
    int kalmar_line(ProofBuilder& c, FormulaId x, const std::unordered_map<FormulaId, bool>& env,
                    const std::unordered_map<FormulaId, int>& leaf_line) {
        auto at = leaf_line.find(x);
        if (at != leaf_line.end()) return at->second;
        if (st_.kind(x) == Kind::Neg && st_.node(x).mask == full_.mask()) {
            FormulaId y = st_.lhs(x);
            int ly = kalmar_line(c, y, env, leaf_line);
            if (!eval_leaves(y, env)) return ly;  // ly holds ¬y = x
            return c.mp(dneg_intro_thm(c, y), ly);
        }
        FormulaId a = st_.lhs(x), bb = st_.rhs(x);
        if (eval_leaves(bb, env)) {
            int lb = kalmar_line(c, bb, env, leaf_line);
            return derive::weaken(c, lb, a);
        }
        if (!eval_leaves(a, env)) {
            int la = kalmar_line(c, a, env, leaf_line);  // holds ¬a
            return c.mp(efq_thm(c, a, bb), la);
        }
        int la = kalmar_line(c, a, env, leaf_line);
        int lb = kalmar_line(c, bb, env, leaf_line);  // holds ¬b
        return c.mp(c.mp(nimp_intro_thm(c, a, bb), la), lb);
    }

    Proof classical_proof(FormulaId goal) {
        std::vector<FormulaId> leaves;
        collect_leaves(goal, leaves);
        std::size_t m = leaves.size();
        if (m > 12) fail(Errc::bound_exceeded, "too many distinct leaves for a truth-table proof");
        for (std::uint32_t bits = 0; bits < (1u << m); ++bits) {
            std::unordered_map<FormulaId, bool> env;
            for (std::size_t i = 0; i < m; ++i) env[leaves[i]] = (bits >> i) & 1;
            if (!eval_leaves(goal, env))
                fail(Errc::invalid_input,
                     print(st_, goal) + " is not classically valid over its leaves");
        }

        std::function<Proof(std::uint32_t, std::size_t)> go = [&](std::uint32_t bits,
                                                                  std::size_t k) -> Proof {
            std::vector<FormulaId> prem;
            for (std::size_t i = 0; i < k; ++i)
                prem.push_back((bits >> i) & 1 ? leaves[i] : wneg(leaves[i]));
            if (k == m) {
                std::unordered_map<FormulaId, bool> env;
                std::unordered_map<FormulaId, int> leaf_line;
                ProofBuilder c(st_, n_, prem);
                for (std::size_t i = 0; i < m; ++i) {
                    env[leaves[i]] = (bits >> i) & 1;
                    leaf_line[leaves[i]] = c.premise(static_cast<int>(i) + 1);
                }
                int l = kalmar_line(c, goal, env, leaf_line);
                return prune(c.build_to(l));
            }
            Proof dT = detail::deduct(st_, go(bits | (1u << k), k + 1));
            Proof dF = detail::deduct(st_, go(bits & ~(1u << k), k + 1));
            ProofBuilder c(st_, n_, prem);
            std::vector<int> plines;
            for (std::size_t i = 0; i < k; ++i) plines.push_back(c.premise(static_cast<int>(i) + 1));
            int lT = c.splice(dT, plines);
            int lF = c.splice(dF, plines);
            int ct = cases_thm(c, leaves[k], goal);
            int lg = c.mp(c.mp(ct, lT), lF);
            return prune(c.build_to(lg));
        };
        return go(0, 0);
    }

    Store& st_;
    int n_;
    Chain full_;
    std::unordered_map<FormulaId, Proof> thms_;
};

}  // namespace cpn

#endif  // CPN_DERIVATIONS_HPP
