// Subset-sum hardness instances, the independent dynamic-programming oracle,
// and the linear-temporal-logic exporter.

#include <catch2/catch_amalgamated.hpp>

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "support/gen.hpp"
#include "tai/tai.hpp"

using namespace tai;

// ---------------------------------------------------------------------------
// genSubsetSumTheory

TEST_CASE("subset-sum instances map onto single-attribute theories",
          "[complexity]") {
    auto [sigma, query] = genSubsetSumTheory({{5, 7, 11}, 31});
    REQUIRE(sigma.size() == 3);
    CHECK(sigma[0] == parseImplication("{y@0} => {y@5}"));
    CHECK(sigma[1] == parseImplication("{y@0} => {y@7}"));
    CHECK(sigma[2] == parseImplication("{y@0} => {y@11}"));
    CHECK(query == parseImplication("{y@0} => {y@31}"));
    CHECK(decidePredictiveEntailment(sigma, query).status ==
          EntailStatus::Entailed);
}

TEST_CASE("degenerate subset-sum instances", "[complexity]") {
    SECTION("no values, zero target: trivially reachable") {
        auto [sigma, query] = genSubsetSumTheory({{}, 0});
        CHECK(sigma.empty());
        CHECK(query == parseImplication("{y@0} => {y@0}"));
        CHECK(decidePredictiveEntailment(sigma, query).status ==
              EntailStatus::Entailed);
    }

    SECTION("a single value that misses the target") {
        auto [sigma, query] = genSubsetSumTheory({{4}, 2});
        CHECK(query == parseImplication("{y@0} => {y@2}"));
        CHECK(decidePredictiveEntailment(sigma, query).status ==
              EntailStatus::NotEntailed);
    }

    SECTION("zero values become tautologies and duplicates are kept") {
        auto [sigma, query] = genSubsetSumTheory({{0, 3, 3}, 3});
        REQUIRE(sigma.size() == 3);
        CHECK(sigma[0] == parseImplication("{y@0} => {y@0}"));
        CHECK(sigma[1] == sigma[2]);
        CHECK(decidePredictiveEntailment(sigma, query).status ==
              EntailStatus::Entailed);
    }

    SECTION("negative inputs are rejected") {
        CHECK_THROWS_AS(genSubsetSumTheory({{5, -1}, 3}), Error);
        CHECK_THROWS_AS(genSubsetSumTheory({{5}, -3}), Error);
    }
}

// ---------------------------------------------------------------------------
// solveSubsetSumDP

TEST_CASE("the dynamic-programming oracle answers the worked instance",
          "[complexity]") {
    CHECK(solveSubsetSumDP({{5, 7, 11}, 31}));
    CHECK_FALSE(solveSubsetSumDP({{5, 7, 11}, 13}));

    // 31 = 5*4 + 11 = 5 + 7 + 8? Enumerate the small gaps explicitly.
    CHECK(solveSubsetSumDP({{5, 7, 11}, 12}));
    CHECK(solveSubsetSumDP({{5, 7, 11}, 23}));
    CHECK_FALSE(solveSubsetSumDP({{5, 7, 11}, 1}));
    CHECK_FALSE(solveSubsetSumDP({{5, 7, 11}, 6}));
}

TEST_CASE("oracle edge cases", "[complexity]") {
    CHECK(solveSubsetSumDP({{9}, 0}));
    CHECK(solveSubsetSumDP({{}, 0}));
    CHECK_FALSE(solveSubsetSumDP({{}, 5}));
    // Zero values never advance the sum.
    CHECK(solveSubsetSumDP({{0}, 0}));
    CHECK_FALSE(solveSubsetSumDP({{0}, 5}));
    CHECK(solveSubsetSumDP({{0, 5}, 5}));

    CHECK_THROWS_AS(solveSubsetSumDP({{5}, -1}), Error);
    CHECK_THROWS_AS(solveSubsetSumDP({{3}, 10}, 5), CapExceeded);
    CHECK_THROWS_AS(solveSubsetSumDP({{3}, 1'000'001}), CapExceeded);
    // a cap equal to the target is allowed
    CHECK(solveSubsetSumDP({{5}, 10}, 10));
    CHECK_FALSE(solveSubsetSumDP({{3}, 10}, 10));
}

TEST_CASE("the oracle and the entailment engine agree on the reduction",
          "[complexity][prop]") {
    std::mt19937_64 rng(0x55b5e75u);
    int yes = 0;
    for (int n = 0; n < 200; ++n) {
        SubsetSumInstance inst = taigen::randomSubsetSum(rng);
        bool solvable = solveSubsetSumDP(inst);
        auto [sigma, query] = genSubsetSumTheory(inst);
        EntailmentVerdict verdict = decidePredictiveEntailment(sigma, query);
        REQUIRE(verdict.status != EntailStatus::Unknown);
        CHECK(solvable == (verdict.status == EntailStatus::Entailed));
        if (solvable) ++yes;
    }
    // The generator must exercise both answers.
    CHECK(yes > 20);
    CHECK(yes < 180);
}

// ---------------------------------------------------------------------------
// exportLTL

TEST_CASE("the exporter renders past and future chains", "[complexity]") {
    Theory sigma;
    Implication query = parseImplication("{x@-1, y@0} => {z@1}");
    LTLDocument doc = exportLTL(sigma, query);

    CHECK(doc.text == "! (G (((Y x) & y) -> (X z)))\n");
    CHECK(doc.countG == 1);
    CHECK(doc.countX == 1);
    CHECK(doc.countY == 1);
    CHECK(doc.maxXChain == 1);
    CHECK(doc.maxYChain == 1);
}

TEST_CASE("chain depth equals the encoded time value", "[complexity]") {
    Theory sigma{parseImplication("{y@0} => {y@2}")};
    LTLDocument doc = exportLTL(sigma, sigma[0]);

    CHECK(doc.text ==
          "G (y -> (X (X y))) &\n"
          "! (G (y -> (X (X y))))\n");
    CHECK(doc.countG == 2);
    CHECK(doc.countX == 4);
    CHECK(doc.countY == 0);
    CHECK(doc.maxXChain == 2);
    CHECK(doc.maxYChain == 0);
}

TEST_CASE("empty sides render as true", "[complexity]") {
    Theory sigma{Implication{AttributeSet{}, parseSet("{a@0}")}};
    Implication query{AttributeSet{}, AttributeSet{}};
    LTLDocument doc = exportLTL(sigma, query);

    CHECK(doc.text ==
          "G (true -> a) &\n"
          "! (G (true -> true))\n");
    CHECK(doc.countG == 2);
    CHECK(doc.countX == 0);
    CHECK(doc.countY == 0);
}

TEST_CASE("the subset-sum export carries a target-deep chain", "[complexity]") {
    auto [sigma, query] = genSubsetSumTheory({{5, 7, 11}, 31});
    LTLDocument doc = exportLTL(sigma, query);

    CHECK(doc.countG == 4);
    CHECK(doc.countX == 5 + 7 + 11 + 31);
    CHECK(doc.countY == 0);
    CHECK(doc.maxXChain == 31);

    // The deepest chain appears verbatim in the negated query.
    std::string chain;
    for (int k = 0; k < 31; ++k) chain += "(X ";
    chain += "y";
    CHECK(doc.text.find(chain) != std::string::npos);
}

TEST_CASE("operator counts follow the atoms exactly", "[complexity][prop]") {
    std::mt19937_64 rng(0x17e5u);
    for (int n = 0; n < 200; ++n) {
        Theory sigma = taigen::randomPredictiveTheory(rng, 4, 4, 5);
        Implication query = taigen::randomPredictiveFormula(
            rng, 4, 5, taigen::pick(rng, -6, 2));

        LTLDocument doc = exportLTL(sigma, query);

        std::size_t expectX = 0, expectY = 0;
        Time maxX = 0, maxY = 0;
        auto account = [&](const AttributeSet& s) {
            for (const TimedAttribute& a : s) {
                if (a.time > 0) {
                    expectX += static_cast<std::size_t>(a.time);
                    maxX = std::max(maxX, a.time);
                } else if (a.time < 0) {
                    expectY += static_cast<std::size_t>(-a.time);
                    maxY = std::max(maxY, -a.time);
                }
            }
        };
        for (const Implication& f : sigma) {
            account(f.antecedent);
            account(f.consequent);
        }
        account(query.antecedent);
        account(query.consequent);

        CHECK(doc.countG == sigma.size() + 1);
        CHECK(doc.countX == expectX);
        CHECK(doc.countY == expectY);
        CHECK(doc.maxXChain == maxX);
        CHECK(doc.maxYChain == maxY);

        // Balanced parentheses: the grammar nests but never dangles.
        long depth = 0;
        bool balanced = true;
        for (char c : doc.text) {
            if (c == '(') ++depth;
            if (c == ')') --depth;
            balanced = balanced && depth >= 0;
        }
        CHECK(balanced);
        CHECK(depth == 0);
    }
}
