#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "eternalbar/errors.hpp"
#include "eternalbar/filtered_complex.hpp"

using namespace eternalbar;

namespace {

Generator gen(const std::string& id, int action, const std::string& hclass = "0") {
    return {id, Rational(action), hclass, std::nullopt};
}

NovikovScalar tau(int a) { return NovikovScalar::tau(Rational(a)); }

} // namespace

TEST_CASE("verify: zero differential passes") {
    FilteredComplex c({gen("x", 0), gen("y", 1)}, {});
    CHECK(verify_complex(c).ok);
}

TEST_CASE("verify: d squared nonzero fails with the witness chain") {
    FilteredComplex c({gen("xp", 0), gen("x", 1), gen("y", 2)},
                      {{"y", {{"x", tau(0)}}}, {"x", {{"xp", tau(0)}}}});
    VerifyReport r = verify_complex(c);
    CHECK_FALSE(r.ok);
    CHECK(r.witness == "y -> x -> xp");
}

TEST_CASE("verify: negative area fails") {
    FilteredComplex c({gen("x", 0), gen("y", 1)}, {{"y", {{"x", tau(-1)}}}});
    VerifyReport r = verify_complex(c);
    CHECK_FALSE(r.ok);
    CHECK(r.violation == "negative area");
}

TEST_CASE("verify: cross-class boundary fails") {
    FilteredComplex c({gen("x", 0, "0"), gen("y", 1, "k1")}, {{"y", {{"x", tau(0)}}}});
    CHECK_FALSE(verify_complex(c).ok);
}

TEST_CASE("filtration level") {
    FilteredComplex c({gen("x", 0), gen("y", 0)}, {});
    Chain z;
    z.add_term("x", tau(0));
    CHECK(filtration_level(c, z) == Extended(0));

    Chain w;
    w.add_term("x", tau(2));
    w.add_term("y", tau(5));
    CHECK(filtration_level(c, w) == Extended(-2));

    CHECK(filtration_level(c, Chain{}) == Extended::neg_inf());
}

TEST_CASE("filtration level relates the two sign conventions") {
    // l(tau^b x) = -(b + action(x))
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> d(0, 6);
    for (int it = 0; it < 50; ++it) {
        int action = d(rng), b = d(rng);
        FilteredComplex c({gen("x", action)}, {});
        Chain z;
        z.add_term("x", tau(b));
        CHECK(filtration_level(c, z) == Extended(Rational(-(b + action))));
    }
}

TEST_CASE("non-archimedean inequality") {
    FilteredComplex c({gen("x", 0), gen("y", 1)}, {});
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> d(0, 4);
    for (int it = 0; it < 100; ++it) {
        Chain z, w;
        if (d(rng) < 4) z.add_term("x", tau(d(rng)));
        if (d(rng) < 2) z.add_term("y", tau(d(rng)));
        if (d(rng) < 4) w.add_term("y", tau(d(rng)));
        if (d(rng) < 2) w.add_term("x", tau(d(rng)));
        Extended lz = filtration_level(c, z), lw = filtration_level(c, w);
        Extended lsum = filtration_level(c, z + w);
        CHECK(lsum <= std::max(lz, lw, [](const Extended& a, const Extended& b) { return a < b; }));
        if (lz != lw)
            CHECK(lsum == std::max(lz, lw, [](const Extended& a, const Extended& b) { return a < b; }));
    }
}

TEST_CASE("homology ranks") {
    FilteredComplex free2({gen("x", 0), gen("y", 1)}, {});
    CHECK(homology(free2).rank == 2);

    FilteredComplex acyclic({gen("x", 0), gen("y", 1)}, {{"y", {{"x", tau(0)}}}});
    CHECK(homology(acyclic).rank == 0);

    FilteredComplex three({gen("x1", 0), gen("x2", 0), gen("y", 1)},
                          {{"y", {{"x1", tau(1)}, {"x2", tau(1)}}}});
    CHECK(homology(three).rank == 1);
}

TEST_CASE("homology rank is invariant under generator reordering") {
    std::vector<Generator> gens = {gen("x1", 0), gen("x2", 0), gen("y", 1)};
    std::map<std::string, std::map<std::string, NovikovScalar>> bd = {
        {"y", {{"x1", tau(1)}, {"x2", tau(1)}}}};
    size_t base = homology(FilteredComplex(gens, bd)).rank;
    std::reverse(gens.begin(), gens.end());
    CHECK(homology(FilteredComplex(gens, bd)).rank == base);
}

TEST_CASE("min_filtration: zero differential returns the class level") {
    FilteredComplex c({gen("x", 0)}, {});
    Chain z;
    z.add_term("x", tau(0));
    CHECK(min_filtration(c, z) == Extended(0));
}

TEST_CASE("min_filtration: a boundary shift lowers the level") {
    // d(y) = tau^0 x1 + tau^1 x2; [tau^0 x1] also represented by tau^1 x2.
    FilteredComplex c({gen("x1", 0), gen("x2", 0), gen("y", 1)},
                      {{"y", {{"x1", tau(0)}, {"x2", tau(1)}}}});
    Chain z;
    z.add_term("x1", tau(0));
    CHECK(min_filtration(c, z) == Extended(-1));
}

TEST_CASE("min_filtration: zero class reported distinctly") {
    FilteredComplex c({gen("x", 0), gen("y", 1)}, {{"y", {{"x", tau(0)}}}});
    Chain z;
    z.add_term("x", tau(0));
    CHECK_THROWS_AS(min_filtration(c, z), ZeroClass);
}

TEST_CASE("split_by_class") {
    FilteredComplex one({gen("x", 0), gen("y", 1)}, {{"y", {{"x", tau(0)}}}});
    CHECK(split_by_class(one).size() == 1);

    FilteredComplex two({gen("x", 0, "0"), gen("y", 1, "0"), gen("z", 0, "k1")},
                        {{"y", {{"x", tau(0)}}}});
    auto parts = split_by_class(two);
    REQUIRE(parts.size() == 2);
    CHECK(parts.at("0").generators().size() + parts.at("k1").generators().size() == 3);
    CHECK(parts.at("k1").boundary().empty());
}
