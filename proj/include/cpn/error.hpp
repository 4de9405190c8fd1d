// ============================================================================
// cpn/error.hpp — error codes and the library exception type
// ============================================================================

#ifndef CPN_ERROR_HPP
#define CPN_ERROR_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace cpn {

// ── SourceSpan ──────────────────────────────────────────────────────────────
// Byte range into a parsed text, attached to syntax errors.

struct SourceSpan {
    std::size_t start = 0;
    std::size_t end   = 0;  // start <= end

    bool operator==(const SourceSpan&) const = default;
};

// ── Errc ────────────────────────────────────────────────────────────────────

enum class Errc {
    duplicate_symbol,     // chain literal repeats a world index
    out_of_alphabet,      // world index outside 1..n
    alphabet_mismatch,    // operands carry different alphabet sizes
    bound_exceeded,       // n > 16, or a sweep over too many atoms/worlds
    syntax_error,         // formula or proof-file parse failure
    unbound_metavariable, // substitution map misses a metavariable
    arity_mismatch,       // scheme instantiation with wrong slot count
    world_out_of_range,   // evaluation at a world outside 1..n
    unassigned_atom,      // valuation misses an atom of the formula
    empty_premises,       // deduction transform on a premise-free proof
    invalid_input,        // malformed proof handed to a transformer
    not_a_tautology,      // synthesis on a formula with a countermodel
};

inline const char* errc_name(Errc c) noexcept {
    switch (c) {
        case Errc::duplicate_symbol:     return "DuplicateSymbol";
        case Errc::out_of_alphabet:      return "OutOfAlphabet";
        case Errc::alphabet_mismatch:    return "AlphabetMismatch";
        case Errc::bound_exceeded:       return "BoundExceeded";
        case Errc::syntax_error:         return "SyntaxError";
        case Errc::unbound_metavariable: return "UnboundMetavariable";
        case Errc::arity_mismatch:       return "ArityMismatch";
        case Errc::world_out_of_range:   return "WorldOutOfRange";
        case Errc::unassigned_atom:      return "UnassignedAtom";
        case Errc::empty_premises:       return "EmptyPremises";
        case Errc::invalid_input:        return "InvalidInput";
        case Errc::not_a_tautology:      return "NotATautology";
    }
    return "?";
}

// ── Error ───────────────────────────────────────────────────────────────────
// Single exception type; tests discriminate on code(), messages are for
// humans.  Parse errors carry the offending span.

class Error : public std::runtime_error {
public:
    Error(Errc code, std::string msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + std::move(msg)),
          code_(code) {}

    Error(Errc code, std::string msg, SourceSpan span)
        : std::runtime_error(std::string(errc_name(code)) + ": " + std::move(msg)),
          code_(code), span_(span) {}

    Errc code() const noexcept { return code_; }
    const std::optional<SourceSpan>& span() const noexcept { return span_; }

private:
    Errc code_;
    std::optional<SourceSpan> span_;
};

[[noreturn]] inline void fail(Errc code, std::string msg) {
    throw Error(code, std::move(msg));
}

[[noreturn]] inline void fail(Errc code, std::string msg, SourceSpan span) {
    throw Error(code, std::move(msg), span);
}

}  // namespace cpn

#endif  // CPN_ERROR_HPP
