#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <random>

#include "eternalbar/errors.hpp"
#include "eternalbar/novikov.hpp"

using namespace eternalbar;

namespace {

NovikovScalar nov(std::initializer_list<int> exps) {
    std::vector<Rational> e;
    for (int x : exps) e.push_back(Rational(x));
    return NovikovScalar::from_exponents(std::move(e));
}

} // namespace

TEST_CASE("valuation basics") {
    CHECK(nov({3, 5}).valuation() == Extended(3));
    CHECK(NovikovScalar::zero().valuation() == Extended::pos_inf());
    CHECK(NovikovScalar::one().valuation() == Extended(0));
}

TEST_CASE("characteristic 2 and duplicate cancellation") {
    NovikovScalar x = nov({0, 2});
    CHECK((x + x).is_zero());
    CHECK(NovikovScalar::from_exponents({Rational(1), Rational(1)}).is_zero());
    CHECK(NovikovScalar::from_exponents({Rational(1), Rational(1), Rational(2)}) == nov({2}));
}

TEST_CASE("serialization as sorted lowest-terms exponent strings") {
    NovikovScalar x = NovikovScalar::from_exponents({Rational(5), Rational(3, 2), Rational(0)});
    CHECK(x.exponent_strings() == std::vector<std::string>{"0", "3/2", "5"});
}

TEST_CASE("monomial windowed division is exact") {
    NovikovScalar q = nov_div_window(nov({2}), nov({1}), Rational(10));
    CHECK(q == nov({1}));
    CHECK((nov({2}) + q * nov({1})).is_zero());
}

TEST_CASE("geometric-series division truncates at the window") {
    NovikovScalar x = nov({0}), y = nov({0, 1});
    NovikovScalar q = nov_div_window(x, y, Rational(3));
    CHECK(q == nov({0, 1, 2}));
    NovikovScalar r = x + q * y;
    CHECK(r == nov({3}));
    CHECK(r.valuation() >= Extended(Rational(0) + 3));
}

TEST_CASE("division edge cases") {
    CHECK(nov_div_window(NovikovScalar::zero(), nov({0, 1}), Rational(5)).is_zero());
    CHECK_THROWS_AS(nov_div_window(nov({0}), NovikovScalar::zero(), Rational(5)),
                    DivisionByZero);
}

TEST_CASE("default window") {
    if (!std::getenv("ETERNALBAR_WINDOW")) CHECK(default_window() == 64);
}

TEST_CASE("field axioms and valuation multiplicativity on random elements") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> num(-20, 20), den(1, 3), sz(0, 5);
    auto rand_scalar = [&] {
        std::vector<Rational> e;
        int n = sz(rng);
        for (int i = 0; i < n; ++i) e.push_back(Rational(num(rng), den(rng)));
        return NovikovScalar::from_exponents(std::move(e));
    };
    for (int it = 0; it < 1000; ++it) {
        NovikovScalar x = rand_scalar(), y = rand_scalar(), z = rand_scalar();
        CHECK((x + y) + z == x + (y + z));
        CHECK(x + y == y + x);
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
        CHECK(NovikovScalar::one() * x == x);
        if (!x.is_zero() && !y.is_zero())
            CHECK((x * y).valuation() == x.valuation() + y.valuation());
        if (!y.is_zero()) {
            Rational w = 4;
            NovikovScalar q = nov_div_window(x, y, w);
            NovikovScalar r = x + q * y;
            if (!x.is_zero() && !r.is_zero())
                CHECK(r.valuation() >= Extended(x.valuation().finite() + w));
        }
    }
}
