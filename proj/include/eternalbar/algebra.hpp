#pragma once

#include <map>
#include <string>
#include <vector>

#include "eternalbar/persistence.hpp"
#include "eternalbar/rational.hpp"

namespace eternalbar {

// Product table entry on colim basis bars: (bar in1 of label g) * (bar in2 of
// label h) = sum of bars `out` of label compose(g,h).
struct ProductEntry {
    std::string g, h;
    size_t in1 = 0, in2 = 0;
    std::vector<size_t> out;
};

// A "persistence algebra": one barcode per label of a (partial) monoid, a
// designated unit class, and a filtration-subadditive product table on colim
// bases.
struct PersistenceAlgebra {
    std::vector<std::string> labels;
    std::map<std::pair<std::string, std::string>, std::string> compose; // partial
    std::map<std::string, std::string> inverse;                         // partial
    std::string identity;
    std::map<std::string, Barcode> modules;
    // Expansion of the SH unit in each label's colim basis.  Every label
    // shares the identity-label expansion unless overridden.
    ColimitClass unit;
    std::map<std::string, ColimitClass> unit_overrides;
    std::vector<ProductEntry> products;

    const Barcode& module_of(const std::string& label) const;
    const ColimitClass& unit_in(const std::string& label) const;
    // Output label of a product entry; throws MalformedInput when the
    // composition is not declared.
    const std::string& product_label(const ProductEntry& e) const;

    // Structural checks: labels/identity exist, tables reference labels,
    // indices reference colim basis bars, unit nonzero.
    void validate_structure() const;
    // Load invariants: the product shift rule on every entry, and unitality
    // on entries involving the unit.  Throws MalformedInput with a witness.
    void validate_strict() const;
};

struct CheckReport {
    bool ok = true;
    std::string witness; // first counterexample, lexicographic entry order
};

// Greatest birth among half-infinite bars of the combination; -inf when the
// class is eternal.  Throws ZeroClass / BasisMismatch.
Extended spectral_invariant(const Barcode& b, const ColimitClass& z);

Extended spectral_invariant(const PersistenceAlgebra& A, const std::string& label,
                            const ColimitClass& z);

// c(z0*z1; gh) <= c(z0; g) + c(z1; h) on every product table entry.
CheckReport check_subadditivity(const PersistenceAlgebra& A);

// Eternal inputs must produce outputs inside the eternal span.
CheckReport check_ideal(const PersistenceAlgebra& A);

// c(1; g) + c(1; g^{-1}).  Throws MissingInverse.
Extended oscillation(const PersistenceAlgebra& A, const std::string& g);

// max{c(1; g), c(1; g^{-1})}.  Throws MissingInverse.
Extended pseudo_norm(const PersistenceAlgebra& A, const std::string& g);

// ceil(c(z; g) / loop_period).  Throws EternalClass when z is eternal.
Int integer_invariant(const PersistenceAlgebra& A, const std::string& g,
                      const ColimitClass& z, const Rational& loop_period);

struct UnitEternalReport {
    bool eternal = false;
    std::string witness;
};

// True iff the unit class lies in the eternal span; cross-checks the power
// trick on the unit self-product entry when the table contains one.
UnitEternalReport unit_eternal_criterion(const PersistenceAlgebra& A);

} // namespace eternalbar
