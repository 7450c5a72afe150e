#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "eternalbar/errors.hpp"
#include "eternalbar/torus.hpp"

using namespace eternalbar;

namespace {

std::vector<std::vector<Rational>> axis_dirs() {
    return {{Rational(1), Rational(0)},
            {Rational(0), Rational(1)},
            {Rational(-1), Rational(0)},
            {Rational(0), Rational(-1)}};
}

} // namespace

TEST_CASE("sqrt enclosures") {
    CHECK(sqrt_value(Rational(25)).value == 5);
    CHECK(sqrt_value(Rational(25)).exact());
    CHECK(sqrt_value(Rational(9, 4)).value == Rational(3, 2));
    SphereValue s2 = sqrt_value(Rational(2));
    CHECK_FALSE(s2.exact());
    CHECK((s2.value - s2.tol) * (s2.value - s2.tol) <= 2);
    CHECK((s2.value + s2.tol) * (s2.value + s2.tol) >= 2);
    CHECK(s2.tol < Rational(1, Int(1) << 40));
}

TEST_CASE("shape invariant on the circle loop H = p") {
    SphereHamiltonian h = SphereHamiltonian::linear({Rational(1)});
    CHECK(shape_spectral(h).value == 1);
    CHECK(shape_spectral(h).exact());
    CHECK(oscillation_exact(h).value == 2);
    CHECK(shape_spectral(SphereHamiltonian::zero(3)).value == 0);
}

TEST_CASE("class formula on linear data") {
    // H = 0, k = (3,4): c = |k| = 5 (Cauchy-Schwarz equality case).
    SphereValue c = class_spectral(SphereHamiltonian::zero(2), {Int(3), Int(4)});
    CHECK(c.exact());
    CHECK(c.value == 5);
    CHECK(class_spectral(SphereHamiltonian::zero(2), {Int(0), Int(0)}).value == 0);

    // dense-grid double-precision oracle for a nontrivial linear shape
    SphereHamiltonian h = SphereHamiltonian::linear({Rational(1), Rational(-2)});
    LatticeClass k = {Int(2), Int(1)};
    SphereValue ck = class_spectral(h, k);
    double best = -1e18;
    for (int a = 0; a < 4096; ++a) {
        double th = 2 * M_PI * a / 4096;
        best = std::max(best, 2 * std::cos(th) + 1 * std::sin(th) + std::cos(th) -
                                  2 * std::sin(th));
    }
    CHECK(std::abs(best - to_double(ck.value)) < 1e-5);
}

TEST_CASE("piecewise-linear shape is the clipped analytic extremum") {
    // Values of the linear function w.u with w = (3,4): the PL maximum is
    // |w| = 5, attained inside the first-quadrant arc, not at a vertex.
    std::vector<Rational> w = {Rational(3), Rational(4)};
    auto dirs = axis_dirs();
    std::vector<Rational> vals;
    for (const auto& d : dirs) vals.push_back(w[0] * d[0] + w[1] * d[1]);
    SphereHamiltonian h = SphereHamiltonian::piecewise_linear(2, dirs, vals);
    SphereValue c = shape_spectral(h);
    CHECK(c.exact());
    CHECK(c.value == 5);
    CHECK(oscillation_exact(h).value == 10);
    CHECK(h.value_at({Rational(1), Rational(0)}) == 3);
}

TEST_CASE("spectrum on the 0-sphere") {
    SphereHamiltonian zero1 = SphereHamiltonian::zero(1);
    auto s = spectrum(zero1, {Int(2)});
    REQUIRE(s.size() == 2);
    CHECK(s[0].value == -2);
    CHECK(s[1].value == 2);

    SphereHamiltonian p = SphereHamiltonian::linear({Rational(1)});
    auto sp = spectrum(p, {Int(0)});
    REQUIRE(sp.size() == 2);
    CHECK(sp[0].value == -1);
    CHECK(sp[1].value == 1);
}

TEST_CASE("class_spectral lies in the spectrum") {
    SphereHamiltonian h = SphereHamiltonian::linear({Rational(1), Rational(2)});
    for (auto k : {LatticeClass{Int(1), Int(1)}, LatticeClass{Int(-3), Int(0)}}) {
        SphereValue c = class_spectral(h, k);
        bool member = false;
        for (const auto& s : spectrum(h, k)) {
            Rational d = s.value - c.value;
            if (d < 0) d = -d;
            if (d <= s.tol + c.tol) member = true;
        }
        CHECK(member);
    }
}

TEST_CASE("systole") {
    CHECK(systole(2, std::nullopt).value == 1);
    CHECK(systole(2, LatticeClass{Int(3), Int(4)}).value == 5);
    CHECK_THROWS_AS(systole(2, LatticeClass{Int(0), Int(0)}), ContractibleClass);
}

TEST_CASE("systolic bound on the circle") {
    for (int k : {1, 3, -2}) {
        SystolicReport r = check_systolic_bound(Int(k));
        CHECK(r.ok);
        CHECK(r.c == (k < 0 ? -k : k));
        CHECK(r.margin == 0);
    }
    CHECK_THROWS_AS(check_systolic_bound(Int(0)), ContractibleClass);
}

TEST_CASE("order comparison") {
    SphereHamiltonian p = SphereHamiltonian::linear({Rational(1)});
    SphereHamiltonian zero = SphereHamiltonian::zero(1);
    CHECK_FALSE(order_leq(p, zero)); // H(1) = 1 > 0
    CHECK(order_leq(p, p));
    CHECK(order_leq(zero, zero));
}

TEST_CASE("build_algebra: single zero label over three classes") {
    std::vector<LatticeClass> classes = {{Int(0), Int(0)}, {Int(1), Int(0)}, {Int(-1), Int(0)}};
    PersistenceAlgebra a = build_algebra({SphereHamiltonian::zero(2)}, classes);
    REQUIRE(a.labels.size() == 1);
    const Barcode& bc = a.module_of(a.labels[0]);
    REQUIRE(bc.bars.size() == 3);
    std::multiset<Rational> births;
    for (const auto& b : bc.bars) births.insert(b.birth.finite());
    CHECK(births == std::multiset<Rational>{Rational(0), Rational(1), Rational(1)});
}

TEST_CASE("build_algebra closure violations") {
    std::vector<LatticeClass> classes = {{Int(0)}};
    CHECK_THROWS_AS(build_algebra({SphereHamiltonian::linear({Rational(1)})}, classes),
                    ClosureViolation);
    CHECK_THROWS_AS(
        build_algebra({SphereHamiltonian::zero(1)}, std::vector<LatticeClass>{{Int(1)}}),
        ClosureViolation);
}

TEST_CASE("torus-model algebra has no eternal classes") {
    std::vector<SphereHamiltonian> hams = {SphereHamiltonian::zero(1),
                                           SphereHamiltonian::linear({Rational(1)}),
                                           SphereHamiltonian::linear({Rational(-1)})};
    std::vector<LatticeClass> classes;
    for (int k = -2; k <= 2; ++k) classes.push_back({Int(k)});
    PersistenceAlgebra a = build_algebra(hams, classes);
    for (const auto& l : a.labels) CHECK(eternal_subspace(a.module_of(l)).empty());
}

TEST_CASE("Hamiltonian arithmetic and validation") {
    CHECK_THROWS_AS(SphereHamiltonian::piecewise_linear(
                        2, {{Rational(1, 2), Rational(1, 2)}}, {Rational(0)}),
                    MalformedInput); // not a unit vector
    SphereHamiltonian a = SphereHamiltonian::linear({Rational(1), Rational(0)});
    SphereHamiltonian b = SphereHamiltonian::linear({Rational(0), Rational(2)});
    CHECK((a + b) == SphereHamiltonian::linear({Rational(1), Rational(2)}));
    CHECK((-a) == SphereHamiltonian::linear({Rational(-1), Rational(0)}));
    CHECK((a + (-a)).is_zero());
}
