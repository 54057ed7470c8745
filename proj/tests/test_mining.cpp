// Rule mining over the weather dataset (support, window-fitting confidence,
// canonical candidate enumeration) and redundancy reduction of theories.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "support/data.hpp"
#include "support/gen.hpp"
#include "tai/tai.hpp"

using namespace tai;

namespace {

MiningParams weatherParams() {
    MiningParams p;
    p.maxspan = 5;
    p.minSupport = 5;
    p.minConfidence = {1, 1};
    return p;
}

bool containsRule(const std::vector<MinedRule>& rules, const Implication& f) {
    return std::any_of(rules.begin(), rules.end(),
                       [&](const MinedRule& r) { return r.rule == f; });
}

}  // namespace

// ---------------------------------------------------------------------------
// Rational

TEST_CASE("rationals reduce, print, and parse", "[mining]") {
    CHECK(Rational{4, 8}.reduced().num == 1);
    CHECK(Rational{4, 8}.reduced().den == 2);
    CHECK(Rational{0, 7}.reduced().den == 1);
    CHECK(Rational{5, 5}.str() == "1");
    CHECK(Rational{4, 5}.str() == "4/5");
    CHECK(Rational{6, 8}.str() == "3/4");
    CHECK(Rational{3, 4}.value() == 0.75);

    CHECK(parseRational("1").num == 1);
    CHECK(parseRational("1").den == 1);
    CHECK(parseRational("4/5").num == 4);
    CHECK(parseRational("4/5").den == 5);
    Rational r = parseRational("0.8").reduced();
    CHECK(r.num == 4);
    CHECK(r.den == 5);
    Rational q = parseRational("0.75").reduced();
    CHECK(q.num == 3);
    CHECK(q.den == 4);

    CHECK_THROWS_AS(parseRational(""), Error);
    CHECK_THROWS_AS(parseRational("x"), Error);
    CHECK_THROWS_AS(parseRational("1/0"), Error);
    CHECK_THROWS_AS(parseRational("1/"), Error);
    CHECK_THROWS_AS(parseRational("/5"), Error);
    CHECK_THROWS_AS(parseRational("0.x"), Error);
    CHECK_THROWS_AS(parseRational("-1"), Error);
}

// ---------------------------------------------------------------------------
// support

TEST_CASE("support counts embeddings of a set into the dataset", "[mining]") {
    const AttributeSet& m = taigen::weatherData();

    CHECK(support(m, parseSet("{Wl@0}")) == 5);
    CHECK(support(m, parseSet("{Wl@0, Wm@1}")) == 5);
    // Canonical shift does not matter.
    CHECK(support(m, parseSet("{Wl@15}")) == 5);
    // Absent attribute: no embedding at all.
    CHECK(support(m, parseSet("{Zz@0}")) == 0);
    CHECK_THROWS_AS(support(m, AttributeSet{}), EmptySetError);
}

TEST_CASE("support is shift-invariant", "[mining][prop]") {
    std::mt19937_64 rng(0x5abu);
    for (int n = 0; n < 200; ++n) {
        AttributeSet m = taigen::randomSet(rng, 5, 12, 0, 15);
        AttributeSet s = taigen::randomSet(rng, 5, 3, 0, 6);
        Time j = taigen::pick(rng, -10, 10);
        CHECK(support(m, s) == support(m, s.shifted(j)));
    }
}

// ---------------------------------------------------------------------------
// mine

TEST_CASE("mining the weather data covers the bundled eleven-rule set", "[mining]") {
    const AttributeSet& m = taigen::weatherData();
    std::vector<MinedRule> rules = mine(m, weatherParams());

    CHECK(rules.size() == 22);

    CHECK(containsRule(rules, parseImplication("{Wm@0} => {Tc@4}")));
    CHECK(containsRule(rules, parseImplication("{Wl@0} => {Tc@3, Wm@1}")));
    // Row 29 has Rn without Tc, so this one cannot reach confidence 1.
    CHECK_FALSE(containsRule(rules, parseImplication("{Rn@0} => {Tc@0}")));

    // The full eleven-formula reference theory is a subset of the output.
    for (const Implication& f : taigen::loadTheory("weather11.tai")) {
        INFO(serializeImplication(f));
        CHECK(containsRule(rules, f));
    }
}

TEST_CASE("mined rules respect every threshold and canon", "[mining]") {
    const AttributeSet& m = taigen::weatherData();
    MiningParams params = weatherParams();
    std::vector<MinedRule> rules = mine(m, params);
    REQUIRE_FALSE(rules.empty());

    for (const MinedRule& r : rules) {
        INFO(serializeImplication(r.rule));
        CHECK(isPredictive(r.rule));
        CHECK(r.rule.antecedent.lower() == 0);
        CHECK(r.rule.antecedent.intersect(r.rule.consequent).empty());
        AttributeSet both = r.rule.antecedent.unionWith(r.rule.consequent);
        CHECK(both.upper() - both.lower() <= params.maxspan);
        CHECK(r.support >= params.minSupport);
        CHECK(r.support <= r.anchors);
        // minConfidence = 1 forces support == anchors.
        CHECK(r.support == r.anchors);
    }

    // Output is sorted canonically and duplicate-free.
    for (std::size_t i = 1; i < rules.size(); ++i)
        CHECK(rules[i - 1].rule < rules[i].rule);
}

TEST_CASE("perfect-confidence rules are true on the fitting window", "[mining]") {
    const AttributeSet& m = taigen::weatherData();
    std::vector<MinedRule> rules = mine(m, weatherParams());
    REQUIRE_FALSE(rules.empty());

    for (const MinedRule& r : rules) {
        AttributeSet both = r.rule.antecedent.unionWith(r.rule.consequent);
        std::size_t fitting = 0;
        for (Time i : embeddings(m, r.rule.antecedent)) {
            if (i + both.upper() > m.upper()) continue;
            ++fitting;
            INFO(serializeImplication(r.rule) << " at shift " << i);
            CHECK(r.rule.consequent.shifted(i).isSubsetOf(m));
        }
        CHECK(fitting == r.anchors);
        CHECK(support(m, both) >= r.support);
    }
}

TEST_CASE("mining a small series by hand", "[mining]") {
    // a fires at even days, b one day later.
    AttributeSet m = parseSet("{a@0, b@1, a@2, b@3, a@4, b@5}");

    MiningParams p;
    p.maxspan = 1;
    p.minSupport = 3;
    p.minConfidence = {1, 1};
    p.maxAntecedentSize = 1;
    p.maxConsequentSize = 1;

    std::vector<MinedRule> rules = mine(m, p);
    REQUIRE(rules.size() == 1);
    CHECK(rules[0].rule == parseImplication("{a@0} => {b@1}"));
    CHECK(rules[0].support == 3);
    CHECK(rules[0].anchors == 3);
    CHECK(rules[0].confidence().str() == "1");

    // Lower thresholds let the reverse direction in: b predicts the next a
    // on the two anchors that fit the window.
    p.minSupport = 2;
    p.minConfidence = {2, 3};
    rules = mine(m, p);
    REQUIRE(rules.size() == 2);
    CHECK(rules[0].rule == parseImplication("{a@0} => {b@1}"));
    CHECK(rules[1].rule == parseImplication("{b@0} => {a@1}"));
    CHECK(rules[1].support == 2);
    CHECK(rules[1].anchors == 2);
}

TEST_CASE("mining degenerate inputs", "[mining]") {
    CHECK(mine(AttributeSet{}, weatherParams()).empty());

    MiningParams p = weatherParams();
    // A dataset narrower than any rule span yields nothing above threshold.
    CHECK(mine(parseSet("{a@0}"), p).empty());
}

TEST_CASE("mining parameters are validated", "[mining]") {
    const AttributeSet m = parseSet("{a@0}");

    MiningParams p;
    p.maxspan = -1;
    CHECK_THROWS_AS(mine(m, p), Error);

    p = MiningParams{};
    p.minSupport = 0;
    CHECK_THROWS_AS(mine(m, p), Error);

    p = MiningParams{};
    p.minConfidence = {0, 1};
    CHECK_THROWS_AS(mine(m, p), Error);

    p = MiningParams{};
    p.minConfidence = {3, 2};
    CHECK_THROWS_AS(mine(m, p), Error);

    p = MiningParams{};
    p.maxAntecedentSize = 0;
    CHECK_THROWS_AS(mine(m, p), Error);

    p = MiningParams{};
    p.maxConsequentSize = 0;
    CHECK_THROWS_AS(mine(m, p), Error);
}

TEST_CASE("parallel mining is deterministic", "[mining]") {
    const AttributeSet& m = taigen::weatherData();

    MiningParams serial = weatherParams();
    serial.jobs = 1;
    MiningParams parallel = weatherParams();
    parallel.jobs = 4;

    std::vector<MinedRule> a = mine(m, serial);
    std::vector<MinedRule> b = mine(m, parallel);

    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].rule == b[i].rule);
        CHECK(a[i].support == b[i].support);
        CHECK(a[i].anchors == b[i].anchors);
    }
}

// ---------------------------------------------------------------------------
// reduceTheory

TEST_CASE("reducing the bundled eleven-rule set yields the five-formula basis",
          "[mining]") {
    Theory sigma = taigen::loadTheory("weather11.tai");
    Theory reduced = reduceTheory(sigma);
    Theory expected = taigen::loadTheory("weather_rules.tai");

    REQUIRE(reduced.size() == expected.size());
    for (std::size_t i = 0; i < reduced.size(); ++i)
        CHECK(reduced[i] == expected[i]);
}

TEST_CASE("the reduced basis is equivalent to its input", "[mining]") {
    Theory sigma = taigen::loadTheory("weather11.tai");
    Theory reduced = reduceTheory(sigma);

    for (const Implication& f : sigma) {
        INFO(serializeImplication(f));
        CHECK(decidePredictiveEntailment(reduced, f).status ==
              EntailStatus::Entailed);
    }
    for (const Implication& g : reduced) {
        INFO(serializeImplication(g));
        CHECK(decidePredictiveEntailment(sigma, g).status ==
              EntailStatus::Entailed);
    }
}

TEST_CASE("reduction removes duplicates and shifted copies", "[mining]") {
    Implication f = parseImplication("{a@0} => {b@1}");

    Theory dup{f, f};
    CHECK(reduceTheory(dup).size() == 1);

    Theory shifted{f, f.shifted(3)};
    CHECK(reduceTheory(shifted).size() == 1);

    Theory empty;
    CHECK(reduceTheory(empty).empty());

    Theory independent{parseImplication("{a@0} => {b@1}"),
                       parseImplication("{c@0} => {d@1}")};
    CHECK(reduceTheory(independent).size() == 2);

    Theory notPredictive{parseImplication("{a@3} => {b@1}")};
    CHECK_THROWS_AS(reduceTheory(notPredictive), NotPredictive);
}

TEST_CASE("reduction is idempotent and equivalence-preserving",
          "[mining][prop]") {
    std::mt19937_64 rng(0x4ed0u);
    for (int n = 0; n < 200; ++n) {
        Theory sigma = taigen::randomPredictiveTheory(rng, 5, 4, 3);
        Theory reduced = reduceTheory(sigma);

        CHECK(reduced.size() <= sigma.size());
        for (const Implication& f : sigma)
            CHECK(decidePredictiveEntailment(reduced, f).status ==
                  EntailStatus::Entailed);

        Theory again = reduceTheory(reduced);
        REQUIRE(again.size() == reduced.size());
        for (std::size_t i = 0; i < again.size(); ++i)
            CHECK(again[i] == reduced[i]);
    }
}

// ---------------------------------------------------------------------------
// Report format

TEST_CASE("the mining report is a stable tab-separated table", "[mining]") {
    std::vector<MinedRule> rules;
    rules.push_back({parseImplication("{a@0} => {b@1}"), 5, 5});
    rules.push_back({parseImplication("{a@0} => {c@2}"), 4, 5});

    CHECK(formatMiningReport(rules) ==
          "rule\tsupport\tconfidence\n"
          "{a@0} => {b@1}\t5\t1\n"
          "{a@0} => {c@2}\t4\t4/5\n");

    CHECK(formatMiningReport({}) == "rule\tsupport\tconfidence\n");
}
