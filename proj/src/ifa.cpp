#include "ifalab/ifa.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>

#include "ifalab/error.hpp"

namespace ifalab {

char to_char(Sign s) noexcept { return s == Sign::up ? 'U' : 'D'; }

std::string_view to_string(Action a) noexcept { return a == Action::buy ? "BUY" : "SELL"; }

std::uint64_t rule_count(unsigned state_count) {
    if (state_count == 0) throw Error(ErrorCode::precondition, "state count must be at least 1");
    if (state_count > max_state_count) {
        throw Error(ErrorCode::capacity,
                    "rule count (2k)^(2k) overflows 64 bits for k=" + std::to_string(state_count) +
                        "; largest supported k is " + std::to_string(max_state_count));
    }
    const std::uint64_t base = 2ULL * state_count;
    std::uint64_t count = 1;
    for (unsigned i = 0; i < 2 * state_count; ++i) count *= base;
    return count;
}

IfaRule::IfaRule(unsigned state_count, std::vector<Transition> table)
    : state_count_(state_count), table_(std::move(table)) {
    require(state_count_ >= 1, "an automaton needs at least one state");
    require(table_.size() == 2 * std::size_t{state_count_},
            "transition table must cover all 2k (state, input) pairs");
    for (const auto& t : table_) {
        require(t.next < state_count_, "next-state index out of range");
    }
}

IfaRule decode_rule(RuleNumber number) {
    const std::uint64_t bound = rule_count(number.state_count);
    if (number.value >= bound) {
        throw Error(ErrorCode::range, "rule number " + std::to_string(number.value) +
                                          " out of range; must be < " + std::to_string(bound) +
                                          " for k=" + std::to_string(number.state_count));
    }
    const unsigned k = number.state_count;
    const std::uint64_t base = 2ULL * k;
    std::vector<Transition> table(2 * k);
    std::uint64_t rest = number.value;
    for (std::size_t i = table.size(); i-- > 0;) {
        const auto digit = static_cast<unsigned>(rest % base);
        rest /= base;
        table[i] = {static_cast<std::uint8_t>(digit / 2), static_cast<Action>(digit % 2)};
    }
    return IfaRule(k, std::move(table));
}

RuleNumber encode_rule(const IfaRule& rule) {
    const std::uint64_t base = 2ULL * rule.state_count();
    std::uint64_t value = 0;
    for (const auto& t : rule.table()) {
        value = value * base + 2ULL * t.next + static_cast<unsigned>(t.action);
    }
    return {value, rule.state_count()};
}

Action run_ifa(const IfaRule& rule, std::span<const Sign> window) {
    require(!window.empty(), "run_ifa needs a non-empty window");
    unsigned state = IfaRule::start_state;
    Action last = Action::sell;
    for (Sign s : window) {
        const auto& t = rule.at(state, s);
        state = t.next;
        last = t.action;
    }
    return last;
}

Action run_ifa_packed(const IfaRule& rule, std::uint64_t window, unsigned length) noexcept {
    const auto table = rule.table();
    unsigned state = IfaRule::start_state;
    Action last = Action::sell;
    for (unsigned i = 0; i < length; ++i) {
        const auto& t = table[2 * state + ((window >> i) & 1U)];
        state = t.next;
        last = t.action;
    }
    return last;
}

IfaRule mirror(const IfaRule& rule) {
    std::vector<Transition> table(rule.table().begin(), rule.table().end());
    for (unsigned s = 0; s < rule.state_count(); ++s) {
        for (Sign in : {Sign::up, Sign::down}) {
            const auto& src = rule.at(s, !in);
            table[2 * s + static_cast<unsigned>(in)] = {src.next, !src.action};
        }
    }
    return IfaRule(rule.state_count(), std::move(table));
}

IfaRule relabel_states(const IfaRule& rule, std::span<const unsigned> perm) {
    require(perm.size() == rule.state_count(), "permutation size must equal the state count");
    std::vector<Transition> table(rule.table().size());
    for (unsigned s = 0; s < rule.state_count(); ++s) {
        for (unsigned in = 0; in < 2; ++in) {
            const auto& src = rule.table()[2 * s + in];
            table[2 * perm[s] + in] = {static_cast<std::uint8_t>(perm[src.next]), src.action};
        }
    }
    return IfaRule(rule.state_count(), std::move(table));
}

std::vector<RuleNumber> symmetry_orbit(const IfaRule& rule) {
    std::vector<unsigned> perm(rule.state_count());
    std::iota(perm.begin(), perm.end(), 0U);
    std::vector<std::uint64_t> values;
    do {
        const IfaRule relabeled = relabel_states(rule, perm);
        values.push_back(encode_rule(relabeled).value);
        values.push_back(encode_rule(mirror(relabeled)).value);
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    std::vector<RuleNumber> orbit;
    orbit.reserve(values.size());
    for (auto v : values) orbit.push_back({v, rule.state_count()});
    return orbit;
}

IfaRule canonical_form(const IfaRule& rule) {
    return decode_rule(symmetry_orbit(rule).front());
}

RuleRange::RuleRange(unsigned state_count) : k_(state_count), count_(rule_count(state_count)) {}

RuleRange enumerate_rules(unsigned state_count) { return RuleRange(state_count); }

std::string format_rule(const IfaRule& rule) {
    std::string out = "k=" + std::to_string(rule.state_count()) + ";";
    bool first = true;
    for (const auto& t : rule.table()) {
        if (!first) out += ',';
        first = false;
        out += std::to_string(2U * t.next + static_cast<unsigned>(t.action));
    }
    return out;
}

namespace {

template <typename T>
T parse_unsigned(std::string_view text, std::string_view what) {
    T value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty()) {
        throw Error(ErrorCode::parse, "invalid " + std::string(what) + ": '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace

IfaRule parse_rule(std::string_view text, unsigned default_states) {
    if (!text.starts_with("k=")) {
        return decode_rule({parse_unsigned<std::uint64_t>(text, "rule number"), default_states});
    }
    const auto semi = text.find(';');
    if (semi == std::string_view::npos) {
        throw Error(ErrorCode::parse, "rule text must look like k=<k>;<digits>");
    }
    const auto k = parse_unsigned<unsigned>(text.substr(2, semi - 2), "state count");
    rule_count(k);

    std::vector<Transition> table;
    std::string_view digits = text.substr(semi + 1);
    while (!digits.empty()) {
        const auto comma = digits.find(',');
        const auto d = parse_unsigned<unsigned>(digits.substr(0, comma), "digit");
        if (d >= 2 * k) {
            throw Error(ErrorCode::range, "digit " + std::to_string(d) + " must be < " + std::to_string(2 * k));
        }
        table.push_back({static_cast<std::uint8_t>(d / 2), static_cast<Action>(d % 2)});
        if (comma == std::string_view::npos) break;
        digits.remove_prefix(comma + 1);
    }
    if (table.size() != 2 * std::size_t{k}) {
        throw Error(ErrorCode::parse, "expected " + std::to_string(2 * k) + " digits, got " +
                                          std::to_string(table.size()));
    }
    return IfaRule(k, std::move(table));
}

}  // namespace ifalab
