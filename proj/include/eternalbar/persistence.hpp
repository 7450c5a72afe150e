#pragma once

#include <string>
#include <vector>

#include "eternalbar/rational.hpp"

namespace eternalbar {

// Interval [birth, death); birth may be -inf, death may be +inf.
struct Bar {
    Extended birth;
    Extended death = Extended::pos_inf();

    bool fully_infinite() const { return birth.is_neg_inf() && death.is_pos_inf(); }
    bool right_infinite() const { return death.is_pos_inf(); }
    bool contains(const Extended& s) const { return birth <= s && s < death; }

    friend bool operator==(const Bar& a, const Bar& b) {
        return a.birth == b.birth && a.death == b.death;
    }
};

struct Barcode {
    std::vector<Bar> bars;
};

struct PresGenerator {
    std::string id;
    Extended birth; // finite or -inf
};

struct PresRelation {
    Extended level; // finite or +inf (absent: never applies)
    std::vector<std::string> support; // nonempty set of generator ids
};

// Finite presentation of a one-parameter persistence module over Z/2.
struct Presentation {
    std::vector<PresGenerator> generators;
    std::vector<PresRelation> relations;
};

// Throws MalformedPresentation on duplicate ids, unknown/empty supports, or a
// relation level preceding a support birth.
void validate(const Presentation& p);

// Interval decomposition by column reduction of the relation matrix ordered
// by level; each relation pairs with the youngest generator in its reduced
// support, unpaired generators give death = +inf.  Output sorted by
// (birth, death).
Barcode barcode(const Presentation& p);

// Z/2-combination of right-infinite bars, as indices into colim_basis order.
struct ColimitClass {
    std::vector<size_t> bars; // strictly increasing

    static ColimitClass from_indices(std::vector<size_t> idx);
    bool is_zero() const { return bars.empty(); }
    friend ColimitClass operator+(const ColimitClass& a, const ColimitClass& b);
    friend bool operator==(const ColimitClass& a, const ColimitClass& b) {
        return a.bars == b.bars;
    }
};

// Right-infinite bars in deterministic order (birth, then insertion order).
std::vector<Bar> colim_basis(const Barcode& b);
// Positions of the colim basis bars inside b.bars.
std::vector<size_t> colim_basis_positions(const Barcode& b);

// Fully infinite bars, as indices into colim_basis order.
std::vector<size_t> eternal_subspace(const Barcode& b);

bool is_eternal(const Barcode& b, const ColimitClass& z);

// True iff z lies in the image of V_s -> colim, i.e. every constituent bar
// contains s.  Throws BasisMismatch on out-of-range indices.
bool hits_at(const Barcode& b, const ColimitClass& z, const Extended& s);

// Rank of the cone of lim -> colim: half-infinite bars of either kind count
// one, fully infinite and finite bars count zero.
size_t rfh_rank(const Barcode& b);

} // namespace eternalbar
