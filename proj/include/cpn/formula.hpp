// ============================================================================
// cpn/formula.hpp — formula AST as an interned DAG
// ============================================================================
//
// Design notes:
//
//   Formulas are nodes in an interned DAG owned by a Store.  Structurally
//   identical formulas share one FormulaId, so equality is O(1) and the
//   representation is canonical.
//
//   Node kinds:
//     - Atom          propositional letter (name in the store's atom table)
//     - Bottom(c)     indexed falsum ⊥_c; Bottom(ε) denotes top, Bottom((n))
//                     is the strong falsum
//     - Neg(c, φ)     indexed negation ¬_c φ; Neg(ε, ·) is an identity
//                     wrapper, Neg((n), ·) is strong negation
//     - Imp(φ, ψ)     implication
//     - And/Or/Iff    n-indexed sugar; first-class for evaluation, removed
//                     by expand() for the proof layer
//
//   Every node carries an alphabet tag: 0 when the subtree mentions no chain
//   and no n-indexed connective, otherwise the common alphabet size n of
//   everything below.  Mixing alphabets is rejected at construction, so a
//   malformed formula is unrepresentable.
//
//   And/Or/Iff carry the alphabet explicitly (they abbreviate formulas that
//   mention ¬_(n)), which is why make_and/make_or/make_iff take n.
//
// ============================================================================

#ifndef CPN_FORMULA_HPP
#define CPN_FORMULA_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "cpn/chains.hpp"
#include "cpn/error.hpp"

namespace cpn {

using FormulaId = std::uint32_t;
inline constexpr FormulaId kInvalidId = static_cast<FormulaId>(-1);

enum class Kind : std::uint8_t { Atom, Bottom, Neg, Imp, And, Or, Iff };

inline const char* kind_name(Kind k) noexcept {
    switch (k) {
        case Kind::Atom:   return "Atom";
        case Kind::Bottom: return "Bottom";
        case Kind::Neg:    return "Neg";
        case Kind::Imp:    return "Imp";
        case Kind::And:    return "And";
        case Kind::Or:     return "Or";
        case Kind::Iff:    return "Iff";
    }
    return "?";
}

// ── Node ────────────────────────────────────────────────────────────────────
// Immutable stored node.  `mask` is the chain bitmask for Bottom/Neg, `a` is
// the atom-table index for Atom or the first child otherwise, `b` the second
// child.  `alpha` is the alphabet tag described above.

struct Node {
    Kind          kind{};
    std::uint8_t  alpha = 0;
    std::uint32_t mask  = 0;
    FormulaId     a = kInvalidId;
    FormulaId     b = kInvalidId;

    bool operator==(const Node&) const noexcept = default;
};

struct NodeHash {
    std::size_t operator()(const Node& n) const noexcept {
        std::size_t h = static_cast<std::size_t>(n.kind);
        h = h * 1000003u ^ n.alpha;
        h = h * 1000003u ^ n.mask;
        h = h * 1000003u ^ n.a;
        h = h * 1000003u ^ n.b;
        return h;
    }
};

// ── Store ───────────────────────────────────────────────────────────────────
// Owns nodes and the interning table.  Single-threaded construction; the ids
// handed out are immutable values.

class Store {
public:
    // ── Constructors ────────────────────────────────────────────────────
    FormulaId make_atom(const std::string& name) {
        auto it = atom_ids_.find(name);
        std::uint32_t idx;
        if (it != atom_ids_.end()) {
            idx = it->second;
        } else {
            idx = static_cast<std::uint32_t>(atom_names_.size());
            atom_names_.push_back(name);
            atom_ids_.emplace(name, idx);
        }
        return intern({Kind::Atom, 0, 0, idx, kInvalidId});
    }

    FormulaId make_bottom(const Chain& c) {
        return intern({Kind::Bottom, alpha_of(c), c.mask(), kInvalidId, kInvalidId});
    }

    FormulaId make_neg(const Chain& c, FormulaId body) {
        std::uint8_t al = merge_alpha(alpha_of(c), alpha(body));
        return intern({Kind::Neg, al, c.mask(), body, kInvalidId});
    }

    FormulaId make_imp(FormulaId lhs, FormulaId rhs) {
        std::uint8_t al = merge_alpha(alpha(lhs), alpha(rhs));
        return intern({Kind::Imp, al, 0, lhs, rhs});
    }

    FormulaId make_and(FormulaId lhs, FormulaId rhs, int n) {
        return make_sugar(Kind::And, lhs, rhs, n);
    }
    FormulaId make_or(FormulaId lhs, FormulaId rhs, int n) {
        return make_sugar(Kind::Or, lhs, rhs, n);
    }
    FormulaId make_iff(FormulaId lhs, FormulaId rhs, int n) {
        return make_sugar(Kind::Iff, lhs, rhs, n);
    }

    // ── Accessors ───────────────────────────────────────────────────────
    const Node& node(FormulaId id) const { return nodes_[id]; }
    Kind kind(FormulaId id) const { return nodes_[id].kind; }
    std::uint8_t alpha(FormulaId id) const { return nodes_[id].alpha; }
    FormulaId lhs(FormulaId id) const { return nodes_[id].a; }
    FormulaId rhs(FormulaId id) const { return nodes_[id].b; }

    const std::string& atom_name(FormulaId id) const { return atom_names_[nodes_[id].a]; }

    // Chain of a Bottom/Neg node.  The node's alpha is the chain's alphabet.
    Chain chain_of(FormulaId id) const {
        return Chain::from_mask(nodes_[id].mask, nodes_[id].alpha);
    }

    std::size_t size() const noexcept { return nodes_.size(); }

    // ── Derived views ───────────────────────────────────────────────────

    // Atom names in order of first occurrence (leftmost-innermost walk).
    std::vector<std::string> atoms(FormulaId id) const {
        std::vector<std::string> out;
        std::vector<char> seen(atom_names_.size(), 0);
        atoms_walk(id, seen, out);
        return out;
    }

    // Rewrites sugar away: the result uses only Atom, Bottom and Neg with
    // nonempty chains, and Imp.
    //   Neg(ε, a)  → a
    //   Bottom(ε)  → Imp(Bottom((n)), Bottom((n)))
    //   Or(a, b)   → Imp(Neg((n), a), b)
    //   And(a, b)  → Neg((n), Imp(a, Neg((n), b)))
    //   Iff(a, b)  → And(Imp(a, b), Imp(b, a)), then the And rule
    FormulaId expand(FormulaId id) {
        const Node nd = nodes_[id];
        switch (nd.kind) {
            case Kind::Atom:
                return id;
            case Kind::Bottom: {
                if (nd.mask != 0) return id;
                FormulaId strong = make_bottom(Chain::full(nd.alpha));
                return make_imp(strong, strong);
            }
            case Kind::Neg: {
                FormulaId body = expand(nd.a);
                if (nd.mask == 0) return body;
                return make_neg(chain_of(id), body);
            }
            case Kind::Imp:
                return make_imp(expand(nd.a), expand(nd.b));
            case Kind::And:
                return expand_and(expand(nd.a), expand(nd.b), nd.alpha);
            case Kind::Or:
                return make_imp(make_neg(Chain::full(nd.alpha), expand(nd.a)), expand(nd.b));
            case Kind::Iff: {
                FormulaId fwd = make_imp(expand(nd.a), expand(nd.b));
                FormulaId bwd = make_imp(expand(nd.b), expand(nd.a));
                return expand_and(fwd, bwd, nd.alpha);
            }
        }
        fail(Errc::invalid_input, "corrupt node kind");
    }

    bool is_expanded(FormulaId id) const {
        const Node& nd = nodes_[id];
        switch (nd.kind) {
            case Kind::Atom:   return true;
            case Kind::Bottom: return nd.mask != 0;
            case Kind::Neg:    return nd.mask != 0 && is_expanded(nd.a);
            case Kind::Imp:    return is_expanded(nd.a) && is_expanded(nd.b);
            default:           return false;
        }
    }

    // Reinterprets an expanded formula over a wider alphabet: chain masks are
    // kept, only the alphabet size changes.  Sugar must be expanded first —
    // its implicit ¬_(n) is fixed at the original alphabet.
    FormulaId widen_alphabet(FormulaId id, int n_new) {
        const Node nd = nodes_[id];
        if (nd.alpha > n_new)
            fail(Errc::alphabet_mismatch,
                 "cannot widen alphabet " + std::to_string(nd.alpha) + " to " + std::to_string(n_new));
        switch (nd.kind) {
            case Kind::Atom:
                return id;
            case Kind::Bottom:
                return make_bottom(Chain::from_mask(nd.mask, n_new));
            case Kind::Neg:
                return make_neg(Chain::from_mask(nd.mask, n_new), widen_alphabet(nd.a, n_new));
            case Kind::Imp:
                return make_imp(widen_alphabet(nd.a, n_new), widen_alphabet(nd.b, n_new));
            default:
                fail(Errc::invalid_input, "widen_alphabet expects an expanded formula");
        }
    }

private:
    static std::uint8_t alpha_of(const Chain& c) {
        return static_cast<std::uint8_t>(c.alphabet());
    }

    static std::uint8_t merge_alpha(std::uint8_t x, std::uint8_t y) {
        if (x == 0) return y;
        if (y == 0 || x == y) return x;
        fail(Errc::alphabet_mismatch, "subformulas over [" + std::to_string(x) + "] and [" +
                                          std::to_string(y) + "] in one formula");
    }

    FormulaId make_sugar(Kind k, FormulaId lhs, FormulaId rhs, int n) {
        check_alphabet_size(n);
        std::uint8_t al = merge_alpha(static_cast<std::uint8_t>(n),
                                      merge_alpha(alpha(lhs), alpha(rhs)));
        return intern({k, al, 0, lhs, rhs});
    }

    FormulaId expand_and(FormulaId ea, FormulaId eb, std::uint8_t n) {
        Chain full = Chain::full(n);
        return make_neg(full, make_imp(ea, make_neg(full, eb)));
    }

    void atoms_walk(FormulaId id, std::vector<char>& seen, std::vector<std::string>& out) const {
        const Node& nd = nodes_[id];
        switch (nd.kind) {
            case Kind::Atom:
                if (!seen[nd.a]) {
                    seen[nd.a] = 1;
                    out.push_back(atom_names_[nd.a]);
                }
                return;
            case Kind::Bottom:
                return;
            case Kind::Neg:
                atoms_walk(nd.a, seen, out);
                return;
            default:
                atoms_walk(nd.a, seen, out);
                atoms_walk(nd.b, seen, out);
                return;
        }
    }

    FormulaId intern(Node nd) {
        auto it = intern_.find(nd);
        if (it != intern_.end()) return it->second;
        auto id = static_cast<FormulaId>(nodes_.size());
        nodes_.push_back(nd);
        intern_.emplace(nd, id);
        return id;
    }

    std::vector<Node> nodes_;
    std::unordered_map<Node, FormulaId, NodeHash> intern_;
    std::vector<std::string> atom_names_;
    std::unordered_map<std::string, std::uint32_t> atom_ids_;
};

}  // namespace cpn

#endif  // CPN_FORMULA_HPP
