// ============================================================================
// cpn/schema.hpp — formula schemas, chain-metavariable expressions,
//                  substitution, and the axiom schemas A1–A7
// ============================================================================
//
// A schema is a formula pattern over formula metavariables (phi, psi, chi)
// and chain metavariables (k, r, s).  Chain slots may hold expressions —
// coconcatenation, complement, the full/empty chain, common symbols — which
// substitution evaluates through the chain algebra.  Substitution yields an
// ordinary (possibly sugared) formula in a Store.
//
// The seven axiom schemas:
//
//   A1  φ → (ψ → φ)
//   A2  (φ → (ψ → χ)) → ((φ → ψ) → (φ → χ))
//   A3  (¬ψ → ¬φ) → ((¬ψ → φ) → ψ)            ¬ strong
//   A4  φ → (⊥_k → ¬_k φ)
//   A5  ¬_k ¬_r φ ↔ ¬_{k⊗r} φ
//   A6  ¬_k ⊥_r ↔ ⊥_{k⊗r}
//   A7  ⊥_k → ⊥_r                              r subchain of k
//
// Chain slots range over nonempty chains; the computed chain k⊗r on the
// right of A5/A6 may come out empty, in which case the result reads through
// the identity wrapper: plain φ for A5 and the expanded top for A6.
//
// ============================================================================

#ifndef CPN_SCHEMA_HPP
#define CPN_SCHEMA_HPP

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cpn/formula.hpp"

namespace cpn {

using FMap = std::map<std::string, FormulaId>;
using CMap = std::map<std::string, Chain>;

// ── ChainExpr ───────────────────────────────────────────────────────────────

struct ChainExpr;
using ChainExprPtr = std::shared_ptr<const ChainExpr>;

struct ChainExpr {
    enum class Op { Var, Full, Empty, Coconcat, Complement, Common };

    Op op;
    std::string name;     // Var
    ChainExprPtr x, y;    // operands
};

inline ChainExprPtr cvar(std::string name) {
    return std::make_shared<ChainExpr>(ChainExpr{ChainExpr::Op::Var, std::move(name), nullptr, nullptr});
}
inline ChainExprPtr cfull() {
    return std::make_shared<ChainExpr>(ChainExpr{ChainExpr::Op::Full, {}, nullptr, nullptr});
}
inline ChainExprPtr cempty() {
    return std::make_shared<ChainExpr>(ChainExpr{ChainExpr::Op::Empty, {}, nullptr, nullptr});
}
inline ChainExprPtr ccoco(ChainExprPtr a, ChainExprPtr b) {
    return std::make_shared<ChainExpr>(ChainExpr{ChainExpr::Op::Coconcat, {}, std::move(a), std::move(b)});
}
inline ChainExprPtr ccomp(ChainExprPtr a) {
    return std::make_shared<ChainExpr>(ChainExpr{ChainExpr::Op::Complement, {}, std::move(a), nullptr});
}
inline ChainExprPtr ccommon(ChainExprPtr a, ChainExprPtr b) {
    return std::make_shared<ChainExpr>(ChainExpr{ChainExpr::Op::Common, {}, std::move(a), std::move(b)});
}

inline Chain eval_chain(const ChainExprPtr& e, const CMap& cmap, int n) {
    switch (e->op) {
        case ChainExpr::Op::Var: {
            auto it = cmap.find(e->name);
            if (it == cmap.end())
                fail(Errc::unbound_metavariable, "chain metavariable '" + e->name + "' unbound");
            return it->second;
        }
        case ChainExpr::Op::Full:       return Chain::full(n);
        case ChainExpr::Op::Empty:      return Chain::empty(n);
        case ChainExpr::Op::Coconcat:   return coconcat(eval_chain(e->x, cmap, n), eval_chain(e->y, cmap, n));
        case ChainExpr::Op::Complement: return complement(eval_chain(e->x, cmap, n));
        case ChainExpr::Op::Common:     return intersect(eval_chain(e->x, cmap, n), eval_chain(e->y, cmap, n));
    }
    fail(Errc::invalid_input, "corrupt chain expression");
}

// ── SchemaF ─────────────────────────────────────────────────────────────────

struct SchemaF;
using SchemaPtr = std::shared_ptr<const SchemaF>;

struct SchemaF {
    enum class SKind { Meta, Bottom, Neg, Imp, And, Or, Iff };

    SKind kind;
    std::string meta;    // Meta
    ChainExprPtr chain;  // Bottom/Neg
    SchemaPtr a, b;
};

inline SchemaPtr smeta(std::string name) {
    return std::make_shared<SchemaF>(SchemaF{SchemaF::SKind::Meta, std::move(name), nullptr, nullptr, nullptr});
}
inline SchemaPtr sbot(ChainExprPtr c) {
    return std::make_shared<SchemaF>(SchemaF{SchemaF::SKind::Bottom, {}, std::move(c), nullptr, nullptr});
}
inline SchemaPtr sneg(ChainExprPtr c, SchemaPtr body) {
    return std::make_shared<SchemaF>(SchemaF{SchemaF::SKind::Neg, {}, std::move(c), std::move(body), nullptr});
}
inline SchemaPtr simp(SchemaPtr a, SchemaPtr b) {
    return std::make_shared<SchemaF>(SchemaF{SchemaF::SKind::Imp, {}, nullptr, std::move(a), std::move(b)});
}
inline SchemaPtr sand(SchemaPtr a, SchemaPtr b) {
    return std::make_shared<SchemaF>(SchemaF{SchemaF::SKind::And, {}, nullptr, std::move(a), std::move(b)});
}
inline SchemaPtr sor(SchemaPtr a, SchemaPtr b) {
    return std::make_shared<SchemaF>(SchemaF{SchemaF::SKind::Or, {}, nullptr, std::move(a), std::move(b)});
}
inline SchemaPtr siff(SchemaPtr a, SchemaPtr b) {
    return std::make_shared<SchemaF>(SchemaF{SchemaF::SKind::Iff, {}, nullptr, std::move(a), std::move(b)});
}

// ── substitute ──────────────────────────────────────────────────────────────

namespace detail {

inline FormulaId substitute_rec(Store& store, const SchemaPtr& s, const FMap& fmap,
                                const CMap& cmap, int n) {
    switch (s->kind) {
        case SchemaF::SKind::Meta: {
            auto it = fmap.find(s->meta);
            if (it == fmap.end())
                fail(Errc::unbound_metavariable, "formula metavariable '" + s->meta + "' unbound");
            return it->second;
        }
        case SchemaF::SKind::Bottom:
            return store.make_bottom(eval_chain(s->chain, cmap, n));
        case SchemaF::SKind::Neg:
            return store.make_neg(eval_chain(s->chain, cmap, n),
                                  substitute_rec(store, s->a, fmap, cmap, n));
        case SchemaF::SKind::Imp:
            return store.make_imp(substitute_rec(store, s->a, fmap, cmap, n),
                                  substitute_rec(store, s->b, fmap, cmap, n));
        case SchemaF::SKind::And:
            return store.make_and(substitute_rec(store, s->a, fmap, cmap, n),
                                  substitute_rec(store, s->b, fmap, cmap, n), n);
        case SchemaF::SKind::Or:
            return store.make_or(substitute_rec(store, s->a, fmap, cmap, n),
                                 substitute_rec(store, s->b, fmap, cmap, n), n);
        case SchemaF::SKind::Iff:
            return store.make_iff(substitute_rec(store, s->a, fmap, cmap, n),
                                  substitute_rec(store, s->b, fmap, cmap, n), n);
    }
    fail(Errc::invalid_input, "corrupt schema node");
}

// True when the schema can be instantiated without knowing the alphabet:
// no sugar node and no chain expression other than plain variables.
inline bool alphabet_free(const SchemaPtr& s) {
    switch (s->kind) {
        case SchemaF::SKind::Meta:   return true;
        case SchemaF::SKind::Bottom: return s->chain->op == ChainExpr::Op::Var;
        case SchemaF::SKind::Neg:
            return s->chain->op == ChainExpr::Op::Var && alphabet_free(s->a);
        case SchemaF::SKind::Imp:    return alphabet_free(s->a) && alphabet_free(s->b);
        default:                     return false;
    }
}

}  // namespace detail

// Simultaneous substitution.  The alphabet size is inferred from the bound
// chains (which must agree) or, failing that, from the bound formulas; it is
// only required when the schema mentions (n) or sugar.
inline FormulaId substitute(Store& store, const SchemaPtr& schema, const FMap& fmap,
                            const CMap& cmap) {
    int n = 0;
    for (const auto& [name, ch] : cmap) {
        if (n == 0)
            n = ch.alphabet();
        else if (n != ch.alphabet())
            fail(Errc::alphabet_mismatch, "bound chains carry different alphabets");
    }
    if (n == 0)
        for (const auto& [name, f] : fmap)
            if (store.alpha(f) != 0) { n = store.alpha(f); break; }
    if (n == 0 && !detail::alphabet_free(schema))
        fail(Errc::unbound_metavariable, "alphabet size undetermined by the bindings");
    return detail::substitute_rec(store, schema, fmap, cmap, n);
}

inline FormulaId substitute(Store& store, const SchemaPtr& schema, const FMap& fmap,
                            const CMap& cmap, int n) {
    check_alphabet_size(n);
    return detail::substitute_rec(store, schema, fmap, cmap, n);
}

// ── Schema record ───────────────────────────────────────────────────────────
// A named schema with its slot lists and an optional side condition on the
// bound chains.

struct Schema {
    std::string id;
    std::vector<std::string> fvars;
    std::vector<std::string> cvars;
    SchemaPtr body;
    std::function<bool(const CMap&)> guard;  // null = unconditional

    bool admits(const CMap& cmap) const { return !guard || guard(cmap); }
};

// ── Axiom schemas ───────────────────────────────────────────────────────────

inline const std::array<Schema, 7>& axiom_schemas() {
    static const std::array<Schema, 7> axioms = [] {
        SchemaPtr P = smeta("phi"), Q = smeta("psi"), R = smeta("chi");
        ChainExprPtr K = cvar("k"), Rv = cvar("r"), N = cfull();
        auto sub_r_k = [](const CMap& m) { return is_subchain(m.at("r"), m.at("k")); };
        return std::array<Schema, 7>{
            Schema{"A1", {"phi", "psi"}, {}, simp(P, simp(Q, P)), nullptr},
            Schema{"A2",
                   {"phi", "psi", "chi"},
                   {},
                   simp(simp(P, simp(Q, R)), simp(simp(P, Q), simp(P, R))),
                   nullptr},
            Schema{"A3",
                   {"phi", "psi"},
                   {},
                   simp(simp(sneg(N, Q), sneg(N, P)), simp(simp(sneg(N, Q), P), Q)),
                   nullptr},
            Schema{"A4", {"phi"}, {"k"}, simp(P, simp(sbot(K), sneg(K, P))), nullptr},
            Schema{"A5",
                   {"phi"},
                   {"k", "r"},
                   siff(sneg(K, sneg(Rv, P)), sneg(ccoco(K, Rv), P)),
                   nullptr},
            Schema{"A6", {}, {"k", "r"}, siff(sneg(K, sbot(Rv)), sbot(ccoco(K, Rv))), nullptr},
            Schema{"A7", {}, {"k", "r"}, simp(sbot(K), sbot(Rv)), sub_r_k},
        };
    }();
    return axioms;
}

}  // namespace cpn

#endif  // CPN_SCHEMA_HPP
