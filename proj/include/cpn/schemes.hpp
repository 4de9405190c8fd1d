// ============================================================================
// cpn/schemes.hpp — named corpus of derivable and non-derivable schemes
// ============================================================================
//
// Design notes:
//
//   Beyond the seven axiom schemas, the calculus carries a catalogue of
//   derived laws (and a companion catalogue of classically familiar laws
//   that fail once a negation's chain stops covering every world).  Each is
//   recorded as a Schema plus a derivability flag:
//
//     - derivable schemes instantiate to tautologies for every admissible
//       chain tuple;
//     - non-derivable schemes admit a countermodel whenever their chains are
//       proper (nonempty and not the full chain), which the guard enforces.
//
//   Ids are descriptive, grouped by family:
//
//     neg.*     composition and cancellation of indexed negations
//     falsum.*  composition of negations with indexed falsums
//     factor.*  factoring one negation (or falsum) through another
//     contra.*  interplay of a formula, its negations, and falsums
//     dist.*    distribution of a negation over conjunction/disjunction
//     imp.*     pushing paired negations through an implication
//     nd.*      the non-derivable catalogue
//
//   Chain slots range over nonempty chains; derived chains inside a body may
//   still come out empty (a complement of the full chain, say) and then read
//   through the identity wrapper and the plain-truth falsum as usual.
//
//   scheme_pattern renders a schema body with its metavariables in place,
//   for tables and usage listings.  Full-chain operators print bare (~, bot)
//   as in the concrete syntax; other chain expressions print as a bare name
//   for a slot, k' for the complement, k(x)r for the coconcatenation, and
//   k&r for the common part.
//
// ============================================================================

#ifndef CPN_SCHEMES_HPP
#define CPN_SCHEMES_HPP

#include <string>
#include <vector>

#include "cpn/chains.hpp"
#include "cpn/formula.hpp"
#include "cpn/schema.hpp"

namespace cpn {

struct Scheme {
    Schema schema;
    bool derivable;
};

// ── The corpus ──────────────────────────────────────────────────────────────

inline const std::vector<Scheme>& scheme_corpus() {
    static const std::vector<Scheme> corpus = [] {
        SchemaPtr P = smeta("phi"), Q = smeta("psi");
        ChainExprPtr K = cvar("k"), R = cvar("r"), S = cvar("s");
        ChainExprPtr N = cfull(), E = cempty(), Kc = ccomp(cvar("k"));

        auto proper = [](const Chain& c) { return !c.is_empty() && !c.is_full(); };
        auto k_proper = [proper](const CMap& m) { return proper(m.at("k")); };
        auto kr_proper_distinct = [proper](const CMap& m) {
            return proper(m.at("k")) && proper(m.at("r")) && !(m.at("k") == m.at("r"));
        };
        auto s_sub_k = [](const CMap& m) { return is_subchain(m.at("s"), m.at("k")); };
        auto k_sub_s = [](const CMap& m) { return is_subchain(m.at("k"), m.at("s")); };
        auto k_s_disjoint = [](const CMap& m) {
            return intersect(m.at("k"), m.at("s")).is_empty();
        };

        std::vector<Scheme> v;
        auto add = [&v](const char* id, std::vector<std::string> fv, std::vector<std::string> cv,
                        SchemaPtr body, std::function<bool(const CMap&)> guard, bool derivable) {
            v.push_back(Scheme{Schema{id, std::move(fv), std::move(cv), std::move(body),
                                      std::move(guard)},
                               derivable});
        };
        auto law = [&add](const char* id, std::vector<std::string> fv,
                          std::vector<std::string> cv, SchemaPtr body,
                          std::function<bool(const CMap&)> guard = nullptr) {
            add(id, std::move(fv), std::move(cv), std::move(body), std::move(guard), true);
        };
        auto gap = [&add](const char* id, std::vector<std::string> fv,
                          std::vector<std::string> cv, SchemaPtr body,
                          std::function<bool(const CMap&)> guard) {
            add(id, std::move(fv), std::move(cv), std::move(body), std::move(guard), false);
        };

        // Negation composition.
        law("neg.swap", {"phi"}, {"k", "r"},
            siff(sneg(K, sneg(R, P)), sneg(R, sneg(K, P))));
        law("neg.strong-of-weak", {"phi"}, {"k"},
            siff(sneg(N, sneg(K, P)), sneg(Kc, P)));
        law("neg.strong-of-complement", {"phi"}, {"k"},
            siff(sneg(N, sneg(Kc, P)), sneg(K, P)));
        law("neg.complement-pair", {"phi"}, {"k"},
            siff(sneg(K, sneg(Kc, P)), sneg(N, P)));
        law("neg.involution", {"phi"}, {"k"},
            siff(sneg(K, sneg(K, P)), P));

        // Falsum composition.
        law("falsum.swap", {}, {"k", "r"},
            siff(sneg(R, sbot(K)), sneg(K, sbot(R))));
        law("falsum.strong-of-weak", {}, {"k"},
            siff(sneg(N, sbot(K)), sbot(Kc)));
        law("falsum.strong-of-complement", {}, {"k"},
            siff(sneg(N, sbot(Kc)), sbot(K)));
        law("falsum.complement-pair", {}, {"k"},
            siff(sneg(K, sbot(Kc)), sbot(N)));
        law("falsum.self-neg", {}, {"k"},
            siff(sneg(K, sbot(K)), sbot(E)));

        // Factorization through a second chain (witness chain k(x)r).
        law("factor.neg", {"phi"}, {"k", "r"},
            siff(sneg(K, P), sneg(ccoco(K, R), sneg(R, P))));
        law("factor.falsum", {}, {"k", "r"},
            siff(sbot(K), sneg(ccoco(K, R), sbot(R))));

        // Formula/negation/falsum interplay.
        law("contra.pair-falsum", {"phi"}, {"k"},
            simp(sand(P, sneg(K, P)), sbot(K)));
        law("contra.excluded-middle", {"phi"}, {"k"},
            simp(sbot(Kc), sor(P, sneg(K, P))));
        law("contra.recover", {"phi"}, {"k"},
            simp(sneg(K, P), simp(sbot(K), P)));
        law("contra.strengthen", {"phi"}, {"k"},
            simp(sneg(K, P), simp(sbot(Kc), sneg(N, P))));
        law("contra.iff-falsum", {"phi"}, {"k"},
            simp(sneg(K, P), siff(P, sbot(K))));
        law("contra.neg-pair", {"phi"}, {"k"},
            simp(sand(sneg(K, P), sneg(Kc, P)), sbot(N)));
        law("contra.falsum-pair", {}, {"k"},
            simp(sand(sbot(K), sbot(Kc)), sbot(N)));
        law("contra.guarded-nc", {"phi"}, {"k"},
            simp(sbot(K), sneg(Kc, sand(P, sneg(Kc, P)))));

        // Distribution over conjunction and disjunction.
        law("dist.and-intro", {"phi", "psi"}, {"k"},
            simp(sand(sneg(K, P), sneg(K, Q)), sneg(K, sand(P, Q))));
        law("dist.or-elim", {"phi", "psi"}, {"k"},
            simp(sneg(K, sor(P, Q)), sor(sneg(K, P), sneg(K, Q))));
        law("dist.and-elim", {"phi", "psi"}, {"k"},
            simp(sneg(K, sand(P, Q)), sor(sneg(K, P), sneg(K, Q))));
        law("dist.or-intro", {"phi", "psi"}, {"k"},
            simp(sand(sneg(K, P), sneg(K, Q)), sneg(K, sor(P, Q))));

        // Negated implication from negated parts; the target chain drops the
        // symbols shared with the antecedent's chain.
        law("imp.compose", {"phi", "psi"}, {"k", "s"},
            simp(sneg(K, P),
                 simp(sneg(S, Q), sneg(ccoco(S, ccommon(K, S)), simp(P, Q)))));
        law("imp.compose-sub", {"phi", "psi"}, {"k", "s"},
            simp(sneg(K, P), simp(sneg(S, Q), simp(P, Q))), s_sub_k);
        law("imp.compose-super", {"phi", "psi"}, {"k", "s"},
            simp(sneg(K, P), simp(sneg(S, Q), sneg(ccoco(K, S), simp(P, Q)))), k_sub_s);
        law("imp.compose-disjoint", {"phi", "psi"}, {"k", "s"},
            simp(sneg(K, P), simp(sneg(S, Q), sneg(S, simp(P, Q)))), k_s_disjoint);

        // Classical laws that fail for proper chains.
        gap("nd.explosion", {"phi", "psi"}, {"k"},
            simp(sand(P, sneg(K, P)), Q), k_proper);
        gap("nd.pair-strong-falsum", {"phi"}, {"k"},
            simp(sand(P, sneg(K, P)), sbot(N)), k_proper);
        gap("nd.non-contradiction", {"phi"}, {"k"},
            sneg(K, sand(P, sneg(K, P))), k_proper);
        gap("nd.excluded-middle", {"phi"}, {"k"},
            sor(P, sneg(K, P)), k_proper);
        gap("nd.ex-falso", {"phi"}, {"k"},
            simp(sbot(K), P), k_proper);
        gap("nd.mixed-involution", {"phi"}, {"k", "r"},
            simp(sneg(R, sneg(K, P)), P), kr_proper_distinct);
        gap("nd.weak-explosion", {"phi", "psi"}, {"k"},
            simp(sneg(K, P), simp(P, Q)), k_proper);
        gap("nd.contrapose-elim", {"phi", "psi"}, {"k"},
            simp(simp(sneg(K, P), sneg(K, Q)), simp(Q, P)), k_proper);
        gap("nd.contrapose-intro", {"phi", "psi"}, {"k"},
            simp(simp(P, Q), simp(sneg(K, Q), sneg(K, P))), k_proper);
        gap("nd.disjunctive-syllogism", {"phi", "psi"}, {"k"},
            simp(sand(sor(P, Q), sneg(K, P)), Q), k_proper);
        gap("nd.modus-tollens", {"phi", "psi"}, {"k"},
            simp(sand(simp(P, Q), sneg(K, Q)), sneg(K, P)), k_proper);
        gap("nd.and-weaken", {"phi", "psi"}, {"k"},
            simp(sneg(K, P), sneg(K, sand(P, Q))), k_proper);
        gap("nd.demorgan-and", {"phi", "psi"}, {"k"},
            simp(sor(sneg(K, P), sneg(K, Q)), sneg(K, sand(P, Q))), k_proper);
        gap("nd.demorgan-or", {"phi", "psi"}, {"k"},
            simp(sneg(K, sor(P, Q)), sand(sneg(K, P), sneg(K, Q))), k_proper);

        return v;
    }();
    return corpus;
}

inline const Scheme* find_scheme(const std::string& id) {
    for (const Scheme& s : scheme_corpus())
        if (s.schema.id == id) return &s;
    return nullptr;
}

// ── instantiate_scheme ──────────────────────────────────────────────────────

inline FormulaId instantiate_scheme(Store& store, const std::string& id, const FMap& fmap,
                                    const CMap& cmap, int n) {
    const Scheme* s = find_scheme(id);
    if (!s) fail(Errc::invalid_input, "unknown scheme id '" + id + "'");
    const Schema& sc = s->schema;
    if (fmap.size() != sc.fvars.size() || cmap.size() != sc.cvars.size())
        fail(Errc::arity_mismatch,
             "scheme '" + id + "' takes " + std::to_string(sc.fvars.size()) +
                 " formula and " + std::to_string(sc.cvars.size()) +
                 " chain bindings, got " + std::to_string(fmap.size()) + " and " +
                 std::to_string(cmap.size()));
    for (const std::string& name : sc.fvars)
        if (!fmap.count(name))
            fail(Errc::unbound_metavariable, "formula metavariable '" + name + "' unbound");
    for (const std::string& name : sc.cvars)
        if (!cmap.count(name))
            fail(Errc::unbound_metavariable, "chain metavariable '" + name + "' unbound");
    check_alphabet_size(n);
    for (const auto& [name, ch] : cmap)
        if (ch.alphabet() != n)
            fail(Errc::alphabet_mismatch,
                 "chain bound to '" + name + "' lives over [" +
                     std::to_string(ch.alphabet()) + "], expected [" + std::to_string(n) + "]");
    if (!sc.admits(cmap))
        fail(Errc::invalid_input,
             "scheme '" + id + "' side condition fails for the bound chains");
    return substitute(store, sc.body, fmap, cmap, n);
}

// Alphabet size taken from the bound chains, which must agree.
inline FormulaId instantiate_scheme(Store& store, const std::string& id, const FMap& fmap,
                                    const CMap& cmap) {
    int n = 0;
    for (const auto& [name, ch] : cmap) {
        if (n == 0)
            n = ch.alphabet();
        else if (n != ch.alphabet())
            fail(Errc::alphabet_mismatch, "bound chains carry different alphabets");
    }
    if (n == 0)
        fail(Errc::unbound_metavariable, "alphabet size undetermined by the bindings");
    return instantiate_scheme(store, id, fmap, cmap, n);
}

// ── Enumeration for audits ──────────────────────────────────────────────────

// Every assignment of nonempty chains over [n] to the scheme's chain slots
// that passes its side condition, in slot-major chain-enumeration order.
inline std::vector<CMap> admissible_chain_maps(const Scheme& s, int n) {
    std::vector<Chain> pool;
    for (const Chain& c : enumerate_chains(n))
        if (!c.is_empty()) pool.push_back(c);

    const std::vector<std::string>& slots = s.schema.cvars;
    std::vector<CMap> out;
    std::vector<std::size_t> pick(slots.size(), 0);
    while (true) {
        CMap m;
        for (std::size_t j = 0; j < slots.size(); ++j)
            m.insert_or_assign(slots[j], pool[pick[j]]);
        if (s.schema.admits(m)) out.push_back(std::move(m));
        std::size_t j = slots.size();
        while (j > 0 && ++pick[j - 1] == pool.size()) pick[--j] = 0;
        if (j == 0) break;
    }
    return out;
}

// ── Pattern rendering ───────────────────────────────────────────────────────

namespace detail {

inline std::string chain_expr_text(const ChainExprPtr& e) {
    auto operand = [](const ChainExprPtr& x) {
        std::string t = chain_expr_text(x);
        bool binary = x->op == ChainExpr::Op::Coconcat || x->op == ChainExpr::Op::Common;
        return binary ? "(" + std::move(t) + ")" : std::move(t);
    };
    switch (e->op) {
        case ChainExpr::Op::Var:        return e->name;
        case ChainExpr::Op::Full:       return "(n)";
        case ChainExpr::Op::Empty:      return "{}";
        case ChainExpr::Op::Coconcat:   return operand(e->x) + "(x)" + operand(e->y);
        case ChainExpr::Op::Complement: return operand(e->x) + "'";
        case ChainExpr::Op::Common:     return operand(e->x) + "&" + operand(e->y);
    }
    fail(Errc::invalid_input, "corrupt chain expression");
}

// Ranks mirror the formula grammar: <-> binds loosest, then ->, |, &, and
// the unary wrappers bind tightest.
inline std::string pattern_rec(const SchemaPtr& s, int rank) {
    auto wrap = [rank](int own, std::string text) {
        return own < rank ? "(" + std::move(text) + ")" : std::move(text);
    };
    switch (s->kind) {
        case SchemaF::SKind::Meta:
            return s->meta;
        case SchemaF::SKind::Bottom:
            if (s->chain->op == ChainExpr::Op::Empty) return "top";
            if (s->chain->op == ChainExpr::Op::Full) return "bot";
            return "bot{" + chain_expr_text(s->chain) + "}";
        case SchemaF::SKind::Neg: {
            std::string c = s->chain->op == ChainExpr::Op::Full
                                ? "~"
                                : "~{" + chain_expr_text(s->chain) + "}";
            return c + " " + pattern_rec(s->a, 5);
        }
        case SchemaF::SKind::Imp:
            return wrap(2, pattern_rec(s->a, 3) + " -> " + pattern_rec(s->b, 2));
        case SchemaF::SKind::And:
            return wrap(4, pattern_rec(s->a, 4) + " & " + pattern_rec(s->b, 5));
        case SchemaF::SKind::Or:
            return wrap(3, pattern_rec(s->a, 3) + " | " + pattern_rec(s->b, 4));
        case SchemaF::SKind::Iff:
            return wrap(1, pattern_rec(s->a, 2) + " <-> " + pattern_rec(s->b, 2));
    }
    fail(Errc::invalid_input, "corrupt schema node");
}

}  // namespace detail

inline std::string scheme_pattern(const Schema& s) { return detail::pattern_rec(s.body, 0); }

}  // namespace cpn

#endif  // CPN_SCHEMES_HPP
