// ============================================================================
// cpn/chains.hpp — chain algebra over the alphabet [n] = {1,…,n}
// ============================================================================
//
// Design notes:
//
//   A chain is a set of world indices drawn from [n].  Order and repetition
//   are quotiented away, so the canonical representative is the sorted symbol
//   set; internally a Chain is a fixed-width bitmask plus the alphabet size.
//   Bit i-1 set means world i belongs to the chain.
//
//   Operations:
//     - concat    (·)  set union; ε is a two-sided identity
//     - coconcat  (⊗)  symmetric difference; ε is a two-sided identity,
//                      every chain is self-inverse
//     - complement (') symbols not in the chain; concat(a,a') == full
//     - is_subchain    subset test
//
//   The alphabet size n is carried on every chain and checked on every
//   binary operation, so chains from different systems cannot be mixed
//   silently.  n is capped at 16: enumeration of 2^n chains and the
//   valuation sweeps built on top stay desk-scale.
//
// ============================================================================

#ifndef CPN_CHAINS_HPP
#define CPN_CHAINS_HPP

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "cpn/error.hpp"

namespace cpn {

inline constexpr int kMaxWorlds = 16;

inline void check_alphabet_size(int n) {
    if (n < 1) fail(Errc::out_of_alphabet, "alphabet size must be positive, got " + std::to_string(n));
    if (n > kMaxWorlds)
        fail(Errc::bound_exceeded,
             "alphabet size " + std::to_string(n) + " exceeds bound " + std::to_string(kMaxWorlds));
}

// ── Chain ───────────────────────────────────────────────────────────────────

class Chain {
public:
    // The empty chain ε over [n].
    static Chain empty(int n) {
        check_alphabet_size(n);
        return Chain(0, n);
    }

    // The full chain (n) = {1,…,n}.
    static Chain full(int n) {
        check_alphabet_size(n);
        return Chain(static_cast<std::uint32_t>((1u << n) - 1), n);
    }

    // Canonical representative of a symbol sequence.  Rejects repeated
    // symbols rather than deduplicating them.
    static Chain canonical(std::span<const int> raw, int n) {
        check_alphabet_size(n);
        std::uint32_t mask = 0;
        for (int s : raw) {
            if (s < 1 || s > n)
                fail(Errc::out_of_alphabet,
                     "symbol " + std::to_string(s) + " outside alphabet [" + std::to_string(n) + "]");
            std::uint32_t bit = 1u << (s - 1);
            if (mask & bit)
                fail(Errc::duplicate_symbol, "symbol " + std::to_string(s) + " repeated in chain");
            mask |= bit;
        }
        return Chain(mask, n);
    }

    static Chain canonical(std::initializer_list<int> raw, int n) {
        return canonical(std::span<const int>(raw.begin(), raw.size()), n);
    }

    // Reassemble from a raw bitmask (low n bits significant).
    static Chain from_mask(std::uint32_t mask, int n) {
        check_alphabet_size(n);
        return Chain(mask & ((1u << n) - 1), n);
    }

    std::uint32_t mask() const noexcept { return mask_; }
    int alphabet() const noexcept { return n_; }

    bool is_empty() const noexcept { return mask_ == 0; }
    bool is_full() const noexcept { return mask_ == (1u << n_) - 1; }
    int length() const noexcept { return std::popcount(mask_); }

    bool contains(int world) const noexcept {
        return world >= 1 && world <= n_ && (mask_ & (1u << (world - 1)));
    }

    std::vector<int> symbols() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(length()));
        for (int i = 1; i <= n_; ++i)
            if (mask_ & (1u << (i - 1))) out.push_back(i);
        return out;
    }

    // Concrete syntax: "{}" for ε, "{1,3}" otherwise.
    std::string to_string() const {
        std::string out = "{";
        bool first = true;
        for (int i = 1; i <= n_; ++i) {
            if (!(mask_ & (1u << (i - 1)))) continue;
            if (!first) out += ',';
            out += std::to_string(i);
            first = false;
        }
        out += '}';
        return out;
    }

    bool operator==(const Chain&) const noexcept = default;

private:
    Chain(std::uint32_t mask, int n) : mask_(mask), n_(n) {}

    std::uint32_t mask_;
    int n_;
};

// ── Algebra ─────────────────────────────────────────────────────────────────

inline void check_same_alphabet(const Chain& a, const Chain& b) {
    if (a.alphabet() != b.alphabet())
        fail(Errc::alphabet_mismatch,
             "chains over [" + std::to_string(a.alphabet()) + "] and [" +
                 std::to_string(b.alphabet()) + "] cannot be combined");
}

// Union of symbols; each appears only once.
inline Chain concat(const Chain& a, const Chain& b) {
    check_same_alphabet(a, b);
    return Chain::from_mask(a.mask() | b.mask(), a.alphabet());
}

// Symmetric difference: symbols occurring in exactly one operand.
inline Chain coconcat(const Chain& a, const Chain& b) {
    check_same_alphabet(a, b);
    return Chain::from_mask(a.mask() ^ b.mask(), a.alphabet());
}

inline Chain complement(const Chain& a) {
    return Chain::from_mask(~a.mask(), a.alphabet());
}

inline bool is_subchain(const Chain& a, const Chain& b) {
    check_same_alphabet(a, b);
    return (a.mask() & ~b.mask()) == 0;
}

inline Chain intersect(const Chain& a, const Chain& b) {
    check_same_alphabet(a, b);
    return Chain::from_mask(a.mask() & b.mask(), a.alphabet());
}

// All 2^n chains over [n], ordered by cardinality then lexicographically by
// symbol sequence ({} , {1}, {2}, …, {1,2}, {1,3}, …, {1,…,n}).
inline std::vector<Chain> enumerate_chains(int n) {
    check_alphabet_size(n);
    std::vector<Chain> out;
    out.reserve(std::size_t{1} << n);
    for (std::uint32_t m = 0; m < (1u << n); ++m) out.push_back(Chain::from_mask(m, n));
    std::stable_sort(out.begin(), out.end(), [](const Chain& a, const Chain& b) {
        if (a.length() != b.length()) return a.length() < b.length();
        return a.symbols() < b.symbols();
    });
    return out;
}

}  // namespace cpn

#endif  // CPN_CHAINS_HPP
