#include "ifalab/survey.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "ifalab/error.hpp"
#include "ifalab/market.hpp"
#include "ifalab/parallel.hpp"
#include "ifalab/stats.hpp"

namespace ifalab {

std::string_view to_string(Label label) noexcept {
    switch (label) {
        case Label::trivial: return "TRIVIAL";
        case Label::periodic: return "PERIODIC";
        case Label::complex: return "COMPLEX";
    }
    return "UNKNOWN";
}

void SurveyConfig::validate() const {
    require(!lookbacks.empty(), "survey needs at least one lookback");
    for (auto n : lookbacks) require(n >= 2 && n <= 30, "survey lookbacks must lie in 2..30");
    require(std::is_sorted(lookbacks.begin(), lookbacks.end()), "lookbacks must be ascending");
    require(horizon >= 64, "survey horizon must be at least 64 ticks");
    require(bucket_size >= 1, "bucket size must be at least 1");
}

Label label_for(std::span<const std::pair<unsigned, std::uint64_t>> period_by_n, double tick_complexity,
                double complexity_threshold) {
    const auto [largest, period] = period_by_n.back();
    // period >= 2^n / n, kept in integers.
    if (tick_complexity >= complexity_threshold && period * largest >= (std::uint64_t{1} << largest)) {
        return Label::complex;
    }
    const bool short_cycles = std::all_of(period_by_n.begin(), period_by_n.end(),
                                          [](const auto& entry) { return entry.second <= 2; });
    return short_cycles ? Label::trivial : Label::periodic;
}

namespace {

RuleClassification measure(const IfaRule& rule, Sign seed, const SurveyConfig& config) {
    RuleClassification out;
    out.seed = seed;
    for (auto n : config.lookbacks) {
        const auto info = cycle_length({rule, n, std::vector<Sign>(n, seed)});
        out.period_by_n.emplace_back(n, info.period);
    }
    const unsigned largest = config.lookbacks.back();
    const auto path = simulate({rule, largest, std::vector<Sign>(largest, seed)}, config.horizon);

    std::vector<std::uint8_t> bits(path.ticks.size());
    std::transform(path.ticks.begin(), path.ticks.end(), bits.begin(), [](std::int8_t t) { return t > 0 ? 1 : 0; });
    out.tick_complexity = complexity_score(bits);

    out.excess_kurtosis = std::numeric_limits<double>::quiet_NaN();
    const auto returns = bucket_returns(path, config.bucket_size);
    if (returns.returns.size() >= 4) {
        try {
            out.excess_kurtosis = moments(returns).excess_kurtosis;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::degenerate_series) throw;
        }
    }
    out.label = label_for(out.period_by_n, out.tick_complexity, config.complexity_threshold);
    return out;
}

}  // namespace

RuleClassification classify_rule(RuleNumber number, const SurveyConfig& config) {
    config.validate();
    const IfaRule rule = decode_rule(number);
    RuleClassification best = measure(rule, Sign::up, config);
    RuleClassification other = measure(rule, Sign::down, config);
    if (other.label > best.label) best = std::move(other);
    best.rule = number;
    best.canonical = encode_rule(canonical_form(rule));
    return best;
}

std::vector<RuleNumber> SurveyReport::complex_classes() const {
    std::vector<RuleNumber> out;
    for (const auto& c : classes) {
        if (c.label == Label::complex) out.push_back(c.canonical);
    }
    return out;
}

bool SurveyReport::unique_complex_class_contains(std::uint64_t rule) const {
    const auto complex = complex_classes();
    if (complex.size() != 1) return false;
    const auto it = std::find_if(classes.begin(), classes.end(),
                                 [&](const RuleClass& c) { return c.canonical == complex.front(); });
    return std::any_of(it->members.begin(), it->members.end(), [&](RuleNumber r) { return r.value == rule; });
}

SurveyReport survey_rules(unsigned state_count, const SurveyConfig& config) {
    config.validate();
    const bool supported = (state_count >= 1 && state_count <= 3) || (state_count == 4 && config.allow_large);
    if (!supported) {
        throw Error(ErrorCode::capacity, "survey supports k in 1..3 (k=4 only with the large-sweep opt-in); got k=" +
                                             std::to_string(state_count));
    }
    const auto count = rule_count(state_count);

    SurveyReport report;
    report.state_count = state_count;
    report.config = config;
    report.rules.resize(count);
    parallel_for(count, [&](std::size_t i) { report.rules[i] = classify_rule({i, state_count}, config); });

    std::map<std::uint64_t, RuleClass> grouped;
    for (const auto& r : report.rules) {
        auto [it, inserted] = grouped.try_emplace(r.canonical.value, RuleClass{r.canonical, {}, Label::trivial});
        it->second.members.push_back(r.rule);
        it->second.label = std::max(it->second.label, r.label);
    }
    for (auto& [_, c] : grouped) report.classes.push_back(std::move(c));
    return report;
}

}  // namespace ifalab
