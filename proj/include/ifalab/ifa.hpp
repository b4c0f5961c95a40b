#pragma once

// Iterated finite automata over price-change signs.
//
// A rule with k states maps every (state, sign) pair to (next state, action).
// Rules are numbered by writing one base-2k digit per transition, in order
// (S1,UP),(S1,DOWN),(S2,UP),... most significant first, where the digit is
// 2*(next_state-1) + action with SELL=0 and BUY=1. Under this layout rule 54
// with k=2 is the digit string 0,3,1,2.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ifalab {

enum class Sign : std::uint8_t { up = 0, down = 1 };
enum class Action : std::uint8_t { sell = 0, buy = 1 };

constexpr Sign operator!(Sign s) noexcept { return s == Sign::up ? Sign::down : Sign::up; }
constexpr Action operator!(Action a) noexcept { return a == Action::buy ? Action::sell : Action::buy; }

/// The price move produced when the market follows an action.
constexpr Sign sign_of(Action a) noexcept { return a == Action::buy ? Sign::up : Sign::down; }
constexpr int tick_of(Action a) noexcept { return a == Action::buy ? 1 : -1; }

char to_char(Sign s) noexcept;
std::string_view to_string(Action a) noexcept;

struct Transition {
    std::uint8_t next;  // zero-based state index
    Action action;

    friend bool operator==(const Transition&, const Transition&) = default;
};

struct RuleNumber {
    std::uint64_t value = 0;
    unsigned state_count = 2;

    friend bool operator==(const RuleNumber&, const RuleNumber&) = default;
};

/// Largest supported state count; (2k)^(2k) must fit in 64 bits.
inline constexpr unsigned max_state_count = 7;

/// Number of distinct k-state rules; throws a capacity error when it overflows.
std::uint64_t rule_count(unsigned state_count);

class IfaRule {
public:
    /// `table[2*s + input]` is the transition out of zero-based state s.
    IfaRule(unsigned state_count, std::vector<Transition> table);

    unsigned state_count() const noexcept { return state_count_; }
    std::span<const Transition> table() const noexcept { return table_; }

    const Transition& at(unsigned state, Sign input) const noexcept {
        return table_[2 * state + static_cast<unsigned>(input)];
    }

    /// Zero-based; the automaton always starts in its first state.
    static constexpr unsigned start_state = 0;

    friend bool operator==(const IfaRule&, const IfaRule&) = default;

private:
    unsigned state_count_;
    std::vector<Transition> table_;
};

IfaRule decode_rule(RuleNumber number);
RuleNumber encode_rule(const IfaRule& rule);

/// Consume `window` (most recent first) from the start state and return the
/// action emitted by the last transition taken.
Action run_ifa(const IfaRule& rule, std::span<const Sign> window);

/// Same walk over a packed window: bit i holds the sign i ticks ago (1 = DOWN).
Action run_ifa_packed(const IfaRule& rule, std::uint64_t window, unsigned length) noexcept;

/// Negate every input and every output.
IfaRule mirror(const IfaRule& rule);

/// Rename states by `perm` (old index -> new index). Start state index stays 0.
IfaRule relabel_states(const IfaRule& rule, std::span<const unsigned> perm);

/// All distinct images of `rule` under state relabeling and mirroring.
std::vector<RuleNumber> symmetry_orbit(const IfaRule& rule);

/// Least-numbered member of the orbit.
IfaRule canonical_form(const IfaRule& rule);

/// Ascending rule numbers for a state count, as a lazy range.
class RuleRange {
public:
    class iterator {
    public:
        using value_type = RuleNumber;
        using difference_type = std::ptrdiff_t;

        iterator() = default;
        iterator(std::uint64_t v, unsigned k) : value_(v), k_(k) {}

        RuleNumber operator*() const noexcept { return {value_, k_}; }
        iterator& operator++() noexcept { ++value_; return *this; }
        iterator operator++(int) noexcept { auto old = *this; ++value_; return old; }
        friend bool operator==(const iterator& a, const iterator& b) noexcept { return a.value_ == b.value_; }

    private:
        std::uint64_t value_ = 0;
        unsigned k_ = 0;
    };

    explicit RuleRange(unsigned state_count);

    iterator begin() const noexcept { return {0, k_}; }
    iterator end() const noexcept { return {count_, k_}; }
    std::uint64_t size() const noexcept { return count_; }

private:
    unsigned k_;
    std::uint64_t count_;
};

RuleRange enumerate_rules(unsigned state_count);

/// `k=<k>;<digit list>` with comma-separated base-2k digits, most significant first.
std::string format_rule(const IfaRule& rule);

/// Accepts either the textual form or a bare integer (read with `default_states`).
IfaRule parse_rule(std::string_view text, unsigned default_states = 2);

}  // namespace ifalab
