#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "eternalbar/errors.hpp"
#include "eternalbar/persistence.hpp"

using namespace eternalbar;

namespace {

Presentation pres(std::vector<std::pair<std::string, Extended>> gens,
                  std::vector<std::pair<Extended, std::vector<std::string>>> rels = {}) {
    Presentation p;
    for (auto& [id, b] : gens) p.generators.push_back({id, b});
    for (auto& [lvl, sup] : rels) p.relations.push_back({lvl, sup});
    return p;
}

// Figure-style fixture: three full bars and two finite bars.
Barcode figure1() {
    Barcode b;
    b.bars.push_back({Extended::neg_inf(), Extended::pos_inf()});
    b.bars.push_back({Extended::neg_inf(), Extended::pos_inf()});
    b.bars.push_back({Extended::neg_inf(), Extended::pos_inf()});
    b.bars.push_back({Extended(0), Extended(2)});
    b.bars.push_back({Extended(1), Extended(3)});
    return b;
}

} // namespace

TEST_CASE("barcode: free rank-1 module") {
    Barcode b = barcode(pres({{"g1", Extended(0)}}));
    REQUIRE(b.bars.size() == 1);
    CHECK(b.bars[0] == Bar{Extended(0), Extended::pos_inf()});
}

TEST_CASE("barcode: one relation pairs the youngest generator") {
    Barcode b = barcode(pres({{"g1", Extended(0)}, {"g2", Extended(1)}},
                             {{Extended(3), {"g1", "g2"}}}));
    REQUIRE(b.bars.size() == 2);
    CHECK(b.bars[0] == Bar{Extended(0), Extended::pos_inf()});
    CHECK(b.bars[1] == Bar{Extended(1), Extended(3)});
}

TEST_CASE("barcode: constant module") {
    Barcode b = barcode(pres({{"e1", Extended::neg_inf()}}));
    REQUIRE(b.bars.size() == 1);
    CHECK(b.bars[0].fully_infinite());
}

TEST_CASE("barcode: relation level before a support birth is malformed") {
    CHECK_THROWS_AS(barcode(pres({{"g1", Extended(2)}}, {{Extended(1), {"g1"}}})),
                    MalformedPresentation);
    CHECK_THROWS_AS(validate(pres({{"g1", Extended(0)}}, {{Extended(1), {}}})),
                    MalformedPresentation);
    CHECK_THROWS_AS(validate(pres({{"g1", Extended(0)}, {"g1", Extended(1)}})),
                    MalformedPresentation);
}

TEST_CASE("barcode is invariant under permutation of generators and relations") {
    Presentation p = pres({{"a", Extended(0)}, {"b", Extended(1)}, {"c", Extended(-1)}},
                          {{Extended(2), {"a", "b"}}, {Extended(4), {"a", "c"}}});
    Barcode base = barcode(p);
    std::mt19937 rng(3);
    for (int it = 0; it < 10; ++it) {
        Presentation q = p;
        std::shuffle(q.generators.begin(), q.generators.end(), rng);
        std::shuffle(q.relations.begin(), q.relations.end(), rng);
        Barcode b = barcode(q);
        REQUIRE(b.bars.size() == base.bars.size());
        for (size_t i = 0; i < b.bars.size(); ++i) CHECK(b.bars[i] == base.bars[i]);
    }
}

TEST_CASE("colim basis filters right-infinite bars") {
    Barcode b;
    b.bars.push_back({Extended::neg_inf(), Extended::pos_inf()});
    b.bars.push_back({Extended(0), Extended::pos_inf()});
    b.bars.push_back({Extended(1), Extended(3)});
    auto basis = colim_basis(b);
    REQUIRE(basis.size() == 2);
    CHECK(basis[0].fully_infinite());
    CHECK(basis[1].birth == Extended(0));

    CHECK(colim_basis(Barcode{}).empty());
    CHECK(colim_basis(figure1()).size() == 3);
}

TEST_CASE("eternal subspace of the figure fixture") {
    Barcode b = figure1();
    CHECK(eternal_subspace(b).size() == 3);
    // e1 + e2 + e3 is eternal
    CHECK(is_eternal(b, ColimitClass::from_indices({0, 1, 2})));

    Barcode half;
    half.bars.push_back({Extended(0), Extended::pos_inf()});
    CHECK(eternal_subspace(half).empty());

    Barcode two;
    two.bars.push_back({Extended::neg_inf(), Extended::pos_inf()});
    two.bars.push_back({Extended::neg_inf(), Extended::pos_inf()});
    CHECK(eternal_subspace(two).size() == 2);
}

TEST_CASE("hits_at") {
    Barcode b;
    b.bars.push_back({Extended(2), Extended::pos_inf()});
    ColimitClass z = ColimitClass::from_indices({0});
    CHECK(hits_at(b, z, Extended(3)));
    CHECK_FALSE(hits_at(b, z, Extended(1)));

    Barcode full;
    full.bars.push_back({Extended::neg_inf(), Extended::pos_inf()});
    for (int s = -5; s <= 5; ++s)
        CHECK(hits_at(full, ColimitClass::from_indices({0}), Extended(s)));

    CHECK_THROWS_AS(hits_at(b, ColimitClass::from_indices({7}), Extended(0)), BasisMismatch);
}

TEST_CASE("rfh rank") {
    Barcode full;
    full.bars.push_back({Extended::neg_inf(), Extended::pos_inf()});
    CHECK(rfh_rank(full) == 0);

    Barcode right;
    right.bars.push_back({Extended(0), Extended::pos_inf()});
    CHECK(rfh_rank(right) == 1);

    Barcode left;
    left.bars.push_back({Extended::neg_inf(), Extended(3)});
    CHECK(rfh_rank(left) == 1);

    // additive under disjoint union
    Barcode both = full;
    both.bars.insert(both.bars.end(), right.bars.begin(), right.bars.end());
    both.bars.insert(both.bars.end(), left.bars.begin(), left.bars.end());
    CHECK(rfh_rank(both) == rfh_rank(full) + rfh_rank(right) + rfh_rank(left));
}

TEST_CASE("colimit class arithmetic") {
    ColimitClass a = ColimitClass::from_indices({0, 2});
    ColimitClass b = ColimitClass::from_indices({2, 3});
    CHECK((a + b) == ColimitClass::from_indices({0, 3}));
    CHECK((a + a).is_zero());
    CHECK(ColimitClass::from_indices({1, 1}).is_zero());
}
