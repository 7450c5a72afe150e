#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eternalbar/algebra.hpp"
#include "eternalbar/errors.hpp"
#include "eternalbar/torus.hpp"

using namespace eternalbar;

namespace {

Barcode bars(std::vector<std::pair<Extended, Extended>> spec) {
    Barcode b;
    for (auto& [birth, death] : spec) b.bars.push_back({birth, death});
    return b;
}

PersistenceAlgebra torus_algebra() {
    std::vector<SphereHamiltonian> hams = {
        SphereHamiltonian::zero(1),
        SphereHamiltonian::linear({Rational(1)}),
        SphereHamiltonian::linear({Rational(-1)}),
    };
    std::vector<LatticeClass> classes;
    for (int k = -2; k <= 2; ++k) classes.push_back({Int(k)});
    return build_algebra(hams, classes);
}

} // namespace

TEST_CASE("spectral invariant") {
    CHECK(spectral_invariant(bars({{Extended(2), Extended::pos_inf()}}),
                             ColimitClass::from_indices({0})) == Extended(2));

    Barcode full = bars({{Extended::neg_inf(), Extended::pos_inf()},
                         {Extended::neg_inf(), Extended::pos_inf()}});
    CHECK(spectral_invariant(full, ColimitClass::from_indices({0, 1})) == Extended::neg_inf());

    Barcode mixed = bars({{Extended::neg_inf(), Extended::pos_inf()},
                          {Extended(1), Extended::pos_inf()},
                          {Extended(3), Extended::pos_inf()}});
    ColimitClass z = ColimitClass::from_indices({0, 1, 2});
    CHECK(spectral_invariant(mixed, z) == Extended(3));
    // endpoint-rule oracle: the invariant is the first grid level hit
    for (int s = -4; s <= 6; ++s)
        CHECK(hits_at(mixed, z, Extended(s)) == (Extended(s) >= Extended(3)));

    CHECK_THROWS_AS(spectral_invariant(mixed, ColimitClass{}), ZeroClass);
    CHECK_THROWS_AS(spectral_invariant(mixed, ColimitClass::from_indices({9})), BasisMismatch);
}

TEST_CASE("strict load rejects a shift-rule violation") {
    PersistenceAlgebra a;
    a.labels = {"e"};
    a.identity = "e";
    a.modules["e"] = bars({{Extended(0), Extended::pos_inf()}, {Extended(5), Extended::pos_inf()}});
    a.compose[{"e", "e"}] = "e";
    a.unit = ColimitClass::from_indices({0});
    a.products.push_back({"e", "e", 0, 0, {1}});
    CHECK_NOTHROW(a.validate_structure());
    CHECK_THROWS_AS(a.validate_strict(), MalformedInput);
}

TEST_CASE("subadditivity: vacuous pass on an empty product table") {
    PersistenceAlgebra a;
    a.labels = {"e"};
    a.identity = "e";
    a.modules["e"] = bars({{Extended(0), Extended::pos_inf()}});
    a.unit = ColimitClass::from_indices({0});
    CHECK(check_subadditivity(a).ok);
    CHECK(check_ideal(a).ok);
}

TEST_CASE("torus algebra: subadditivity, ideal, oscillation, pseudo-norm") {
    PersistenceAlgebra a = torus_algebra();
    CHECK(check_subadditivity(a).ok);
    CHECK(check_ideal(a).ok);
    CHECK(oscillation(a, a.identity) == Extended(0));
    CHECK(oscillation(a, "linear:1") == Extended(2));
    CHECK(pseudo_norm(a, a.identity) == Extended(0));
    CHECK(pseudo_norm(a, "linear:1") == Extended(1));
    // nu >= gamma/2 on every label with an inverse
    for (const auto& l : a.labels) {
        Extended g = oscillation(a, l), n = pseudo_norm(a, l);
        CHECK(n + n >= g);
    }
}

TEST_CASE("missing inverse") {
    PersistenceAlgebra a;
    a.labels = {"e", "g"};
    a.identity = "e";
    a.modules["e"] = bars({{Extended(0), Extended::pos_inf()}});
    a.modules["g"] = bars({{Extended(1), Extended::pos_inf()}});
    a.unit = ColimitClass::from_indices({0});
    a.inverse["e"] = "e";
    CHECK_THROWS_AS(oscillation(a, "g"), MissingInverse);
    CHECK_THROWS_AS(pseudo_norm(a, "g"), MissingInverse);
}

TEST_CASE("integer invariant") {
    auto one_bar = [&](Rational birth) {
        PersistenceAlgebra a;
        a.labels = {"e"};
        a.identity = "e";
        a.modules["e"] = bars({{Extended(birth), Extended::pos_inf()}});
        a.unit = ColimitClass::from_indices({0});
        return a;
    };
    ColimitClass z = ColimitClass::from_indices({0});
    CHECK(integer_invariant(one_bar(Rational(1)), "e", z, Rational(1)) == 1);
    CHECK(integer_invariant(one_bar(Rational(3, 2)), "e", z, Rational(1)) == 2);
    CHECK(integer_invariant(one_bar(Rational(-1, 2)), "e", z, Rational(1)) == 0);

    PersistenceAlgebra a;
    a.labels = {"e"};
    a.identity = "e";
    a.modules["e"] = bars({{Extended::neg_inf(), Extended::pos_inf()}});
    a.unit = ColimitClass::from_indices({0});
    CHECK_THROWS_AS(integer_invariant(a, "e", z, Rational(1)), EternalClass);
}

TEST_CASE("unit eternal criterion") {
    PersistenceAlgebra full;
    full.labels = {"e"};
    full.identity = "e";
    full.modules["e"] = bars({{Extended::neg_inf(), Extended::pos_inf()}});
    full.compose[{"e", "e"}] = "e";
    full.unit = ColimitClass::from_indices({0});
    full.products.push_back({"e", "e", 0, 0, {0}}); // 1*1 = 1, the odd-Euler shape
    CHECK(unit_eternal_criterion(full).eternal);
    CHECK(check_ideal(full).ok);

    PersistenceAlgebra half;
    half.labels = {"e"};
    half.identity = "e";
    half.modules["e"] = bars({{Extended(0), Extended::pos_inf()}});
    half.unit = ColimitClass::from_indices({0});
    CHECK_FALSE(unit_eternal_criterion(half).eternal);

    CHECK_FALSE(unit_eternal_criterion(torus_algebra()).eternal);
}

TEST_CASE("planted ideal violation is reported") {
    PersistenceAlgebra p;
    p.labels = {"e"};
    p.identity = "e";
    p.modules["e"] = bars({{Extended::neg_inf(), Extended::pos_inf()},
                           {Extended(1), Extended::pos_inf()}});
    p.compose[{"e", "e"}] = "e";
    p.unit = ColimitClass::from_indices({0});
    p.products.push_back({"e", "e", 0, 0, {1}});
    CheckReport r = check_ideal(p);
    CHECK_FALSE(r.ok);
    CHECK(r.witness.find("(e,e,0,0)") != std::string::npos);
}
