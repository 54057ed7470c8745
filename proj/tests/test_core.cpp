// Core domain types: interned attributes, timed atoms, immutable sorted
// sets, implications, bounds, and the shift laws.

#include <catch2/catch_amalgamated.hpp>

#include <limits>
#include <random>
#include <vector>

#include "support/gen.hpp"
#include "tai/tai.hpp"

using namespace tai;

TEST_CASE("attribute interning gives one identity per name", "[core]") {
    Attr a1 = Attr::intern("Tc");
    Attr a2 = Attr::intern("Tc");
    Attr b = Attr::intern("Wl");
    CHECK(a1 == a2);
    CHECK(a1.name() == "Tc");
    CHECK_FALSE(a1 == b);
    CHECK(a1 < b);  // by name: "Tc" < "Wl"
}

TEST_CASE("timed attributes order by attribute then time", "[core]") {
    TimedAttribute a0{"a", 0};
    TimedAttribute a5{"a", 5};
    TimedAttribute b0{"b", 0};
    CHECK(a0 < a5);
    CHECK(a5 < b0);
    CHECK(a0.shifted(5) == a5);
    CHECK((TimedAttribute{"a", -3}.shifted(3) == a0));
}

TEST_CASE("attribute sets deduplicate and stay sorted", "[core]") {
    AttributeSet s{{"b", 1}, {"a", 0}, {"b", 1}, {"a", 0}};
    CHECK(s.size() == 2);
    std::vector<TimedAttribute> seen(s.begin(), s.end());
    REQUIRE(seen.size() == 2);
    CHECK((seen[0] == TimedAttribute{"a", 0}));
    CHECK((seen[1] == TimedAttribute{"b", 1}));
    CHECK(s.contains(TimedAttribute{"a", 0}));
    CHECK_FALSE(s.contains(TimedAttribute{"a", 1}));
}

TEST_CASE("set algebra: union, intersection, difference, subset", "[core]") {
    AttributeSet s{{"a", 0}, {"b", 1}};
    AttributeSet t{{"b", 1}, {"c", 2}};
    AttributeSet all{{"a", 0}, {"b", 1}, {"c", 2}};
    AttributeSet onlyB{{"b", 1}};
    AttributeSet onlyA{{"a", 0}};
    CHECK(s.unionWith(t) == all);
    CHECK(s.intersect(t) == onlyB);
    CHECK(s.difference(t) == onlyA);
    CHECK(onlyB.isSubsetOf(s));
    CHECK_FALSE(s.isSubsetOf(t));
    CHECK(AttributeSet{}.isSubsetOf(s));
    CHECK(AttributeSet{}.empty());
}

TEST_CASE("bounds are defined only on non-empty sets", "[core]") {
    AttributeSet s{{"a", -4}, {"b", 7}, {"c", 0}};
    CHECK(s.lower() == -4);
    CHECK(s.upper() == 7);
    CHECK(bounds(s).l == -4);
    CHECK(bounds(s).u == 7);
    CHECK_THROWS_AS(AttributeSet{}.lower(), EmptySetError);
    CHECK_THROWS_AS(AttributeSet{}.upper(), EmptySetError);
}

TEST_CASE("checked arithmetic reports overflow", "[core]") {
    CHECK(checkedAdd(3, 4) == 7);
    CHECK(checkedMul(-3, 4) == -12);
    Time big = std::numeric_limits<Time>::max();
    CHECK_THROWS_AS(checkedAdd(big, 1), IntegerOverflow);
    CHECK_THROWS_AS(checkedMul(big, 2), IntegerOverflow);
    AttributeSet atTop{{"a", big}};
    CHECK_THROWS_AS(atTop.shifted(1), IntegerOverflow);
}

TEST_CASE("predictive formulas and spans", "[core]") {
    Implication good{{{"a", 0}}, {{"b", 1}}};
    CHECK(isPredictive(good));
    CHECK(formulaSpan(good) == 1);

    Implication overlap{{{"a", 0}, {"b", 2}}, {{"c", 1}}};
    CHECK_FALSE(isPredictive(overlap));  // u(A)=2 > l(B)=1

    Implication emptyAnt{{}, {{"b", 0}}};
    CHECK_FALSE(isPredictive(emptyAnt));
    Implication emptyCons{{{"a", 0}}, {}};
    CHECK_FALSE(isPredictive(emptyCons));

    Implication touching{{{"a", 0}, {"b", 3}}, {{"c", 3}}};
    CHECK(isPredictive(touching));  // u(A) = l(B) allowed
}

TEST_CASE("implication equality and shift", "[core]") {
    Implication f{{{"a", 0}}, {{"b", 2}}};
    Implication fUp{{{"a", 3}}, {{"b", 5}}};
    Implication g{{{"a", 0}}, {{"b", 1}}};
    CHECK(f.shifted(3) == fUp);
    CHECK(f.shifted(0) == f);
    CHECK_FALSE(f == g);
}

TEST_CASE("equalAsSets ignores order and multiplicity", "[core]") {
    Implication f{{{"a", 0}}, {{"b", 1}}};
    Implication g{{{"c", 0}}, {{"d", 1}}};
    Theory fg{f, g};
    Theory gff{g, f, f};
    Theory onlyF{f};
    Theory onlyG{g};
    CHECK(equalAsSets(fg, gff));
    CHECK_FALSE(equalAsSets(onlyF, onlyG));
}

TEST_CASE("shift laws hold on random sets", "[core]") {
    std::mt19937_64 rng(20260814);
    for (int n = 0; n < 200; ++n) {
        AttributeSet s = taigen::randomSet(rng, 6, 5, -10, 10);
        AttributeSet t = taigen::randomSet(rng, 6, 5, -10, 10);
        Time i = taigen::pick(rng, -8, 8);
        Time j = taigen::pick(rng, -8, 8);

        // shift composes and inverts
        CHECK(s.shifted(i).shifted(j) == s.shifted(i + j));
        CHECK(s.shifted(0) == s);
        CHECK(s.shifted(i).shifted(-i) == s);

        // monotone: S inside T implies S+i inside T+i
        AttributeSet st = s.unionWith(t);
        CHECK(s.shifted(i).isSubsetOf(st.shifted(i)));

        // shift distributes over union and intersection
        CHECK(s.unionWith(t).shifted(i) == s.shifted(i).unionWith(t.shifted(i)));
        CHECK(s.intersect(t).shifted(i) == s.shifted(i).intersect(t.shifted(i)));

        // bounds translate
        CHECK(s.shifted(i).lower() == s.lower() + i);
        CHECK(s.shifted(i).upper() == s.upper() + i);

        CHECK(shiftSet(s, i) == s.shifted(i));
    }
}
