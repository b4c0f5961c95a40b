#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "ifalab/ifa.hpp"

namespace ifalab {

enum class Label { trivial = 0, periodic = 1, complex = 2 };

std::string_view to_string(Label label) noexcept;

struct SurveyConfig {
    std::vector<unsigned> lookbacks{6, 10, 14};
    std::uint64_t horizon = std::uint64_t{1} << 16;
    std::size_t bucket_size = 22;
    double complexity_threshold = 0.5;
    bool allow_large = false;  // permits the k = 4 sweep

    void validate() const;
};

struct RuleClassification {
    RuleNumber rule;
    RuleNumber canonical;
    std::vector<std::pair<unsigned, std::uint64_t>> period_by_n;  // ascending lookback
    double tick_complexity = 0;
    double excess_kurtosis = 0;  // NaN when the bucketed returns are constant
    Label label = Label::trivial;
    Sign seed = Sign::up;  // uniform seed the measurements come from
};

/// COMPLEX: complexity >= threshold and period at the largest lookback n is at
/// least 2^n / n. TRIVIAL: period <= 2 at every lookback. Otherwise PERIODIC.
Label label_for(std::span<const std::pair<unsigned, std::uint64_t>> period_by_n, double tick_complexity,
                double complexity_threshold);

/// Measures the rule from the all-UP and the all-DOWN seed and keeps the more
/// complex outcome (all-UP on ties), so a rule and its up/down mirror image
/// always share a label.
RuleClassification classify_rule(RuleNumber rule, const SurveyConfig& config);

struct RuleClass {
    RuleNumber canonical;
    std::vector<RuleNumber> members;
    Label label;  // most complex member label
};

struct SurveyReport {
    unsigned state_count = 0;
    SurveyConfig config;
    std::vector<RuleClassification> rules;  // ascending rule number
    std::vector<RuleClass> classes;         // ascending canonical number

    std::vector<RuleNumber> complex_classes() const;

    /// Exactly one COMPLEX class, and it holds rule 54 (k = 2).
    bool unique_complex_class_contains(std::uint64_t rule) const;
};

SurveyReport survey_rules(unsigned state_count, const SurveyConfig& config);

}  // namespace ifalab
