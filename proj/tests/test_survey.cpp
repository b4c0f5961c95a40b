#include <doctest.h>

#include <cstdlib>

#include "ifalab/error.hpp"
#include "ifalab/market.hpp"
#include "ifalab/survey.hpp"

using namespace ifalab;

namespace {

const SurveyReport& k2_report() {
    static const SurveyReport report = survey_rules(2, SurveyConfig{});
    return report;
}

}  // namespace

TEST_CASE("label thresholds") {
    using Periods = std::vector<std::pair<unsigned, std::uint64_t>>;
    CHECK(label_for(Periods{{6, 1}, {10, 2}}, 0.9, 0.5) == Label::trivial);
    CHECK(label_for(Periods{{6, 12}, {10, 20}}, 0.9, 0.5) == Label::periodic);
    // 2^10 / 10 = 102.4, so 103 qualifies and 102 does not.
    CHECK(label_for(Periods{{10, 103}}, 0.5, 0.5) == Label::complex);
    CHECK(label_for(Periods{{10, 102}}, 0.9, 0.5) == Label::periodic);
    CHECK(label_for(Periods{{10, 900}}, 0.49, 0.5) == Label::periodic);
}

TEST_CASE("constant-BUY rule is TRIVIAL with period 1") {
    const auto c = classify_rule({255, 2}, SurveyConfig{});
    CHECK(c.label == Label::trivial);
    for (const auto& [n, period] : c.period_by_n) CHECK(period == 1);
}

TEST_CASE("rule 54 is COMPLEX with near-full periods") {
    const auto c = classify_rule({54, 2}, SurveyConfig{});
    CHECK(c.label == Label::complex);
    CHECK(c.seed == Sign::up);
    CHECK(c.canonical.value == 54);
    REQUIRE(c.period_by_n.size() == 3);
    CHECK(c.period_by_n[1].first == 10);
    CHECK(c.period_by_n[1].second > 1024 / 4);
    CHECK(c.tick_complexity >= 0.5);
}

TEST_CASE("input-echo rules have short cycles") {
    // Single-state rules whose action is a function of the input only, and
    // the two-state rules that ignore state.
    for (auto number : enumerate_rules(2)) {
        const IfaRule r = decode_rule(number);
        bool ignores_state = true;
        for (Sign s : {Sign::up, Sign::down}) {
            ignores_state = ignores_state && r.at(0, s).action == r.at(1, s).action;
        }
        if (!ignores_state) continue;
        const auto c = classify_rule(number, SurveyConfig{});
        CHECK(c.label != Label::complex);
        for (const auto& [n, period] : c.period_by_n) CHECK(period <= 2 * n);
    }
}

TEST_CASE("k=2 survey: exactly one COMPLEX class and it holds rule 54") {
    const auto& report = k2_report();
    REQUIRE(report.rules.size() == 256);
    const auto complex = report.complex_classes();
    REQUIRE(complex.size() == 1);
    CHECK(complex.front().value == 54);
    CHECK(report.unique_complex_class_contains(54));

    std::size_t total = 0;
    for (const auto& c : report.classes) total += c.members.size();
    CHECK(total == 256);
}

TEST_CASE("k=1 survey has no COMPLEX class") {
    const auto report = survey_rules(1, SurveyConfig{});
    CHECK(report.rules.size() == 4);
    CHECK(report.complex_classes().empty());
}

TEST_CASE("labels are mirror-invariant and COMPLEX membership is orbit-invariant") {
    const auto& report = k2_report();
    for (const auto& r : report.rules) {
        const IfaRule rule = decode_rule(r.rule);
        const auto mirrored = encode_rule(mirror(rule)).value;
        CHECK(report.rules[mirrored].label == r.label);
        for (auto member : symmetry_orbit(rule)) {
            CHECK((report.rules[member.value].label == Label::complex) == (r.label == Label::complex));
        }
        CHECK(r.canonical == encode_rule(canonical_form(rule)));
    }
}

TEST_CASE("TRIVIAL implies period at most 2 everywhere") {
    for (const auto& r : k2_report().rules) {
        if (r.label != Label::trivial) continue;
        for (const auto& [n, period] : r.period_by_n) CHECK(period <= 2);
    }
}

TEST_CASE("survey is independent of worker count") {
    setenv("IFA_LAB_THREADS", "1", 1);
    SurveyConfig quick;
    quick.horizon = 4096;
    const auto serial = survey_rules(2, quick);
    setenv("IFA_LAB_THREADS", "4", 1);
    const auto parallel = survey_rules(2, quick);
    unsetenv("IFA_LAB_THREADS");
    REQUIRE(serial.rules.size() == parallel.rules.size());
    for (std::size_t i = 0; i < serial.rules.size(); ++i) {
        CHECK(serial.rules[i].label == parallel.rules[i].label);
        CHECK(serial.rules[i].period_by_n == parallel.rules[i].period_by_n);
        CHECK(serial.rules[i].tick_complexity == parallel.rules[i].tick_complexity);
    }
}

TEST_CASE("unsupported state counts") {
    try {
        survey_rules(5, SurveyConfig{});
        FAIL("expected capacity error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::capacity);
    }
    CHECK_THROWS_AS(survey_rules(4, SurveyConfig{}), Error);
    SurveyConfig bad;
    bad.lookbacks = {1};
    CHECK_THROWS_AS(classify_rule({54, 2}, bad), Error);
}
