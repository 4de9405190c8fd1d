// ============================================================================
// cpn/semantics.hpp — valuations, evaluation, classification, countermodels,
//                     entailment, and the hierarchy check
// ============================================================================
//
// Design notes:
//
//   A valuation assigns each atom a boolean per world; the n worlds are
//   independent.  Evaluation is per world:
//
//     Bottom(c)   false at world i iff i ∈ c
//     Neg(c, φ)   flips the value at world i iff i ∈ c, else passes through
//     Imp/And/Or/Iff   classical at each world
//
//   A formula is a tautology when the value vector is all-true under every
//   valuation, a contradiction when all-false under every valuation.
//
//   Because no connective crosses worlds, the tautology decision factorizes:
//   f is a tautology iff for each world i the classical projection of f at i
//   is a classical tautology over its atoms.  classify() implements the
//   factorized sweep (n independent 2^m truth tables, bit-parallel 64
//   assignments at a time); classify_product() runs the plain 2^(n·m)
//   product enumeration and stays around as the test oracle.
//
//   Deterministic enumeration order everywhere: atoms in first-occurrence
//   order, then worlds ascending, false before true, with (atom₁, world₁)
//   most significant.  Countermodels are the first falsifying valuation in
//   this order.
//
//   Entailment is per world: Σ ⊨ f iff every (valuation, world) making all
//   of Σ true makes f true there.  This is the reading under which weak
//   negation is paraconsistent: {p, ¬₁p} ⊭ q.
//
// ============================================================================

#ifndef CPN_SEMANTICS_HPP
#define CPN_SEMANTICS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cpn/formula.hpp"

namespace cpn {

inline constexpr int kMaxSweepAtoms = 16;

// ── Valuation ───────────────────────────────────────────────────────────────

struct Valuation {
    int n = 0;
    // atom name -> values for worlds 1..n (index 0 is world 1)
    std::map<std::string, std::vector<bool>> assign;

    bool value(const std::string& atom, int world) const {
        if (world < 1 || world > n)
            fail(Errc::world_out_of_range,
                 "world " + std::to_string(world) + " outside 1.." + std::to_string(n));
        auto it = assign.find(atom);
        if (it == assign.end() || static_cast<int>(it->second.size()) < world)
            fail(Errc::unassigned_atom, "atom '" + atom + "' unassigned at world " + std::to_string(world));
        return it->second[static_cast<std::size_t>(world - 1)];
    }

    bool operator==(const Valuation&) const = default;
};

// ── Verdict ─────────────────────────────────────────────────────────────────

enum class VerdictKind { Tautology, Contradiction, Neither };

inline const char* verdict_name(VerdictKind k) noexcept {
    switch (k) {
        case VerdictKind::Tautology:     return "tautology";
        case VerdictKind::Contradiction: return "contradiction";
        case VerdictKind::Neither:       return "neither";
    }
    return "?";
}

struct Verdict {
    VerdictKind kind = VerdictKind::Neither;
    std::optional<Valuation> witness_false;  // falsifies some coordinate
    std::optional<Valuation> witness_true;   // satisfies some coordinate
};

struct Countermodel {
    Valuation valuation;
    int world = 0;  // a world the valuation falsifies
};

// ── eval ────────────────────────────────────────────────────────────────────

namespace detail {

inline void check_formula_alphabet(const Store& store, FormulaId f, int n) {
    int a = store.alpha(f);
    if (a != 0 && a != n)
        fail(Errc::alphabet_mismatch, "formula over [" + std::to_string(a) +
                                          "] evaluated with n=" + std::to_string(n));
}

inline bool eval_rec(const Store& store, FormulaId f, int world, const Valuation& v) {
    const Node& nd = store.node(f);
    switch (nd.kind) {
        case Kind::Atom:
            return v.value(store.atom_name(f), world);
        case Kind::Bottom:
            return !(nd.mask & (1u << (world - 1)));
        case Kind::Neg: {
            bool b = eval_rec(store, nd.a, world, v);
            return (nd.mask & (1u << (world - 1))) ? !b : b;
        }
        case Kind::Imp:
            return !eval_rec(store, nd.a, world, v) || eval_rec(store, nd.b, world, v);
        case Kind::And:
            return eval_rec(store, nd.a, world, v) && eval_rec(store, nd.b, world, v);
        case Kind::Or:
            return eval_rec(store, nd.a, world, v) || eval_rec(store, nd.b, world, v);
        case Kind::Iff:
            return eval_rec(store, nd.a, world, v) == eval_rec(store, nd.b, world, v);
    }
    fail(Errc::invalid_input, "corrupt node kind");
}

}  // namespace detail

inline bool eval_world(const Store& store, FormulaId f, int world, const Valuation& v) {
    if (world < 1 || world > v.n)
        fail(Errc::world_out_of_range,
             "world " + std::to_string(world) + " outside 1.." + std::to_string(v.n));
    detail::check_formula_alphabet(store, f, v.n);
    return detail::eval_rec(store, f, world, v);
}

inline std::vector<bool> eval(const Store& store, FormulaId f, const Valuation& v) {
    std::vector<bool> out;
    out.reserve(static_cast<std::size_t>(v.n));
    for (int i = 1; i <= v.n; ++i) out.push_back(eval_world(store, f, i, v));
    return out;
}

// Chain of exactly the worlds where f evaluates false; ε when all-true.
inline Chain contingency_class(const Store& store, FormulaId f, const Valuation& v) {
    std::uint32_t mask = 0;
    for (int i = 1; i <= v.n; ++i)
        if (!eval_world(store, f, i, v)) mask |= 1u << (i - 1);
    return Chain::from_mask(mask, v.n);
}

// ── Per-world truth tables ──────────────────────────────────────────────────
// A table holds one bit per assignment of the m atoms, packed into 64-bit
// words; assignment index bit j is the value of atom j (first-occurrence
// order).  Everything above bit 2^m in the last word is junk and masked
// where tested; ops stay full-word.

namespace detail {

using Table = std::vector<std::uint64_t>;

inline std::size_t table_words(int m) {
    return m >= 6 ? (std::size_t{1} << (m - 6)) : 1;
}

// Bits valid in the last word.
inline std::uint64_t last_word_mask(int m) {
    if (m >= 6) return ~std::uint64_t{0};
    return (std::uint64_t{1} << (1u << m)) - 1;
}

inline constexpr std::uint64_t kVarPattern[6] = {
    0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull,
};

inline Table atom_table(int j, int m) {
    Table t(table_words(m));
    for (std::size_t w = 0; w < t.size(); ++w)
        t[w] = j < 6 ? kVarPattern[j] : ((w >> (j - 6)) & 1 ? ~std::uint64_t{0} : 0);
    return t;
}

// Classical projection of f at `world` as a truth table over the atoms in
// `index` (atom name -> bit position), m atoms total.
inline Table world_table(const Store& store, FormulaId f, int world,
                         const std::map<std::string, int>& index, int m) {
    const Node& nd = store.node(f);
    std::uint32_t wbit = 1u << (world - 1);
    switch (nd.kind) {
        case Kind::Atom:
            return atom_table(index.at(store.atom_name(f)), m);
        case Kind::Bottom:
            return Table(table_words(m), (nd.mask & wbit) ? 0 : ~std::uint64_t{0});
        case Kind::Neg: {
            Table t = world_table(store, nd.a, world, index, m);
            if (nd.mask & wbit)
                for (auto& w : t) w = ~w;
            return t;
        }
        case Kind::Imp: {
            Table a = world_table(store, nd.a, world, index, m);
            Table b = world_table(store, nd.b, world, index, m);
            for (std::size_t w = 0; w < a.size(); ++w) a[w] = ~a[w] | b[w];
            return a;
        }
        case Kind::And: {
            Table a = world_table(store, nd.a, world, index, m);
            Table b = world_table(store, nd.b, world, index, m);
            for (std::size_t w = 0; w < a.size(); ++w) a[w] &= b[w];
            return a;
        }
        case Kind::Or: {
            Table a = world_table(store, nd.a, world, index, m);
            Table b = world_table(store, nd.b, world, index, m);
            for (std::size_t w = 0; w < a.size(); ++w) a[w] |= b[w];
            return a;
        }
        case Kind::Iff: {
            Table a = world_table(store, nd.a, world, index, m);
            Table b = world_table(store, nd.b, world, index, m);
            for (std::size_t w = 0; w < a.size(); ++w) a[w] = ~(a[w] ^ b[w]);
            return a;
        }
    }
    fail(Errc::invalid_input, "corrupt node kind");
}

inline bool table_all_true(const Table& t, int m) {
    for (std::size_t w = 0; w + 1 < t.size(); ++w)
        if (t[w] != ~std::uint64_t{0}) return false;
    return (t.back() | ~last_word_mask(m)) == ~std::uint64_t{0};
}

inline bool table_all_false(const Table& t, int m) {
    for (std::size_t w = 0; w + 1 < t.size(); ++w)
        if (t[w] != 0) return false;
    return (t.back() & last_word_mask(m)) == 0;
}

inline bool table_bit(const Table& t, std::uint32_t a) {
    return (t[a >> 6] >> (a & 63)) & 1;
}

// First assignment (in the documented order: atom 0 most significant, false
// before true) whose table bit satisfies `want`; -1 if none.  Assignment
// index bit j = atom j, so the enumeration key is the bit-reversed index.
inline long first_assignment(const Table& t, int m, bool want) {
    std::uint32_t count = 1u << m;
    for (std::uint32_t key = 0; key < count; ++key) {
        std::uint32_t a = 0;
        for (int j = 0; j < m; ++j)
            if (key & (1u << (m - 1 - j))) a |= 1u << j;
        if (table_bit(t, a) == want) return a;
    }
    return -1;
}

inline std::vector<std::string> collect_atoms(const Store& store,
                                              const std::vector<FormulaId>& fs) {
    std::vector<std::string> order;
    for (FormulaId f : fs)
        for (const auto& name : store.atoms(f)) {
            bool known = false;
            for (const auto& o : order)
                if (o == name) { known = true; break; }
            if (!known) order.push_back(name);
        }
    return order;
}

inline void check_sweep_bound(std::size_t m) {
    if (m > kMaxSweepAtoms)
        fail(Errc::bound_exceeded,
             std::to_string(m) + " atoms exceed the exhaustive sweep bound of " +
                 std::to_string(kMaxSweepAtoms));
}

// Valuation with all atoms false everywhere except atom j's value at one
// world taken from `bits`.
inline Valuation single_world_valuation(const std::vector<std::string>& atoms, int n, int world,
                                        std::uint32_t bits) {
    Valuation v;
    v.n = n;
    for (std::size_t j = 0; j < atoms.size(); ++j) {
        std::vector<bool> row(static_cast<std::size_t>(n), false);
        if ((bits >> j) & 1) row[static_cast<std::size_t>(world - 1)] = true;
        v.assign[atoms[j]] = row;
    }
    return v;
}

// Key of a valuation in the global enumeration order, as the concatenated
// coordinate bits, most significant first.
inline std::vector<char> valuation_key(const Valuation& v, const std::vector<std::string>& atoms) {
    std::vector<char> key;
    key.reserve(atoms.size() * static_cast<std::size_t>(v.n));
    for (const auto& a : atoms)
        for (int i = 1; i <= v.n; ++i) key.push_back(v.value(a, i) ? 1 : 0);
    return key;
}

// First valuation in enumeration order with some world satisfying `want` in
// that world's table.  Tables indexed by world-1.
inline std::optional<Countermodel> first_single_world_hit(
    const std::vector<std::string>& atoms, int n,
    const std::vector<Table>& tables, bool want) {
    int m = static_cast<int>(atoms.size());
    std::optional<Countermodel> best;
    std::vector<char> best_key;
    for (int world = 1; world <= n; ++world) {
        long a = first_assignment(tables[static_cast<std::size_t>(world - 1)], m, want);
        if (a < 0) continue;
        Valuation v = single_world_valuation(atoms, n, world, static_cast<std::uint32_t>(a));
        std::vector<char> key = valuation_key(v, atoms);
        if (!best || key < best_key) {
            best = Countermodel{std::move(v), world};
            best_key = std::move(key);
        }
    }
    return best;
}

}  // namespace detail

// ── classify / find_countermodel ────────────────────────────────────────────

inline Verdict classify(const Store& store, FormulaId f, int n) {
    check_alphabet_size(n);
    detail::check_formula_alphabet(store, f, n);
    std::vector<std::string> atoms = store.atoms(f);
    detail::check_sweep_bound(atoms.size());
    int m = static_cast<int>(atoms.size());
    std::map<std::string, int> index;
    for (int j = 0; j < m; ++j) index[atoms[static_cast<std::size_t>(j)]] = j;

    std::vector<detail::Table> tables;
    tables.reserve(static_cast<std::size_t>(n));
    bool taut = true, contra = true;
    for (int i = 1; i <= n; ++i) {
        tables.push_back(detail::world_table(store, f, i, index, m));
        taut &= detail::table_all_true(tables.back(), m);
        contra &= detail::table_all_false(tables.back(), m);
    }

    Verdict out;
    if (taut) {
        out.kind = VerdictKind::Tautology;
        return out;
    }
    if (contra) {
        out.kind = VerdictKind::Contradiction;
        if (auto cm = detail::first_single_world_hit(atoms, n, tables, false))
            out.witness_false = std::move(cm->valuation);
        return out;
    }
    out.kind = VerdictKind::Neither;
    if (auto cm = detail::first_single_world_hit(atoms, n, tables, false))
        out.witness_false = std::move(cm->valuation);
    if (auto cm = detail::first_single_world_hit(atoms, n, tables, true))
        out.witness_true = std::move(cm->valuation);
    return out;
}

inline std::optional<Countermodel> find_countermodel(const Store& store, FormulaId f, int n) {
    check_alphabet_size(n);
    detail::check_formula_alphabet(store, f, n);
    std::vector<std::string> atoms = store.atoms(f);
    detail::check_sweep_bound(atoms.size());
    int m = static_cast<int>(atoms.size());
    std::map<std::string, int> index;
    for (int j = 0; j < m; ++j) index[atoms[static_cast<std::size_t>(j)]] = j;
    std::vector<detail::Table> tables;
    for (int i = 1; i <= n; ++i) tables.push_back(detail::world_table(store, f, i, index, m));
    return detail::first_single_world_hit(atoms, n, tables, false);
}

// ── entails ─────────────────────────────────────────────────────────────────

struct EntailResult {
    bool holds = false;
    std::optional<Countermodel> countermodel;
};

inline EntailResult entails(const Store& store, const std::vector<FormulaId>& premises,
                            FormulaId f, int n) {
    check_alphabet_size(n);
    for (FormulaId p : premises) detail::check_formula_alphabet(store, p, n);
    detail::check_formula_alphabet(store, f, n);

    std::vector<FormulaId> all = premises;
    all.push_back(f);
    std::vector<std::string> atoms = detail::collect_atoms(store, all);
    detail::check_sweep_bound(atoms.size());
    int m = static_cast<int>(atoms.size());
    std::map<std::string, int> index;
    for (int j = 0; j < m; ++j) index[atoms[static_cast<std::size_t>(j)]] = j;

    // bad = all premises true, goal false, per world
    std::vector<detail::Table> bad;
    for (int i = 1; i <= n; ++i) {
        detail::Table t = detail::world_table(store, f, i, index, m);
        for (auto& w : t) w = ~w;
        for (FormulaId p : premises) {
            detail::Table pt = detail::world_table(store, p, i, index, m);
            for (std::size_t w = 0; w < t.size(); ++w) t[w] &= pt[w];
        }
        bad.push_back(std::move(t));
    }

    EntailResult out;
    auto cm = detail::first_single_world_hit(atoms, n, bad, true);
    out.holds = !cm.has_value();
    out.countermodel = std::move(cm);
    return out;
}

// ── Product-enumeration oracle ──────────────────────────────────────────────
// The straightforward 2^(n·m) sweep in the documented valuation order.  Kept
// deliberately naive; classify() must agree with it.

inline Verdict classify_product(const Store& store, FormulaId f, int n) {
    check_alphabet_size(n);
    detail::check_formula_alphabet(store, f, n);
    std::vector<std::string> atoms = store.atoms(f);
    int m = static_cast<int>(atoms.size());
    if (static_cast<std::size_t>(m) * static_cast<std::size_t>(n) > 24)
        fail(Errc::bound_exceeded, "product sweep too large");

    int bits = m * n;
    bool taut = true, contra = true;
    Verdict out;
    for (std::uint64_t key = 0; key < (std::uint64_t{1} << bits); ++key) {
        Valuation v;
        v.n = n;
        for (int j = 0; j < m; ++j) {
            std::vector<bool> row;
            for (int i = 0; i < n; ++i) {
                int rank = j * n + i;  // (atom j, world i+1); rank 0 most significant
                row.push_back((key >> (bits - 1 - rank)) & 1);
            }
            v.assign[atoms[static_cast<std::size_t>(j)]] = row;
        }
        bool any_false = false, any_true = false;
        for (int i = 1; i <= n; ++i)
            (eval_world(store, f, i, v) ? any_true : any_false) = true;
        if (any_false) {
            taut = false;
            if (!out.witness_false) out.witness_false = v;
        }
        if (any_true) {
            contra = false;
            if (!out.witness_true) out.witness_true = v;
        }
    }
    out.kind = taut ? VerdictKind::Tautology
                    : (contra ? VerdictKind::Contradiction : VerdictKind::Neither);
    if (out.kind == VerdictKind::Tautology) out = Verdict{VerdictKind::Tautology, {}, {}};
    if (out.kind == VerdictKind::Contradiction) out.witness_true.reset();
    return out;
}

// ── hierarchy_check ─────────────────────────────────────────────────────────
// Conservativity harness: true iff (tautology over [n+1] ⇒ tautology over
// [n]) holds for f.  The n+1 reading widens the expanded formula's chains
// mask-preserving, so world n+1 lies outside every chain.

inline bool hierarchy_check(Store& store, FormulaId f, int n) {
    check_alphabet_size(n);
    check_alphabet_size(n + 1);
    detail::check_formula_alphabet(store, f, n);
    FormulaId core = store.expand(f);
    FormulaId wide = store.widen_alphabet(core, n + 1);
    if (classify(store, wide, n + 1).kind != VerdictKind::Tautology) return true;
    return classify(store, core, n).kind == VerdictKind::Tautology;
}

}  // namespace cpn

#endif  // CPN_SEMANTICS_HPP
