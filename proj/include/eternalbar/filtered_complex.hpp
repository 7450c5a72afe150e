#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eternalbar/novikov.hpp"
#include "eternalbar/rational.hpp"

namespace eternalbar {

struct Generator {
    std::string id;
    Rational action;
    std::string hclass = "0"; // "0" = contractible
    std::optional<int> grading; // Conley-Zehnder metadata, uninterpreted
};

// Z/2 chain over the Novikov field, keyed by generator id.
struct Chain {
    std::map<std::string, NovikovScalar> terms;

    bool is_zero() const;
    void add_term(const std::string& id, const NovikovScalar& coeff);
    friend Chain operator+(const Chain& a, const Chain& b);
};

// Filtered Z/2 chain complex over the Novikov field.  Boundary columns are
// Novikov combinations of target generators; monomial entries correspond to
// (target id, area) pairs of the interchange format.
class FilteredComplex {
public:
    FilteredComplex(std::vector<Generator> generators,
                    std::map<std::string, std::map<std::string, NovikovScalar>> boundary);

    const std::vector<Generator>& generators() const { return generators_; }
    const std::map<std::string, std::map<std::string, NovikovScalar>>& boundary() const {
        return boundary_;
    }

    bool has_generator(const std::string& id) const;
    const Generator& generator(const std::string& id) const;
    size_t index_of(const std::string& id) const;

    // d applied to a single generator (empty chain when no column present).
    Chain boundary_of(const std::string& id) const;
    // d extended Novikov-linearly to chains.
    Chain boundary_of(const Chain& z) const;

private:
    std::vector<Generator> generators_;
    std::map<std::string, std::map<std::string, NovikovScalar>> boundary_;
    std::map<std::string, size_t> index_;
};

struct VerifyReport {
    bool ok = true;
    std::string violation; // empty when ok
    std::string witness;
};

// Checks generator-id uniqueness, boundary target existence, area
// non-negativity, homotopy-class preservation and d*d = 0.  Returns the
// first violation with a witness.
VerifyReport verify_complex(const FilteredComplex& c);

// The non-archimedean filtration: l(sum tau^b_i x_i) = -inf_i (b_i + action(x_i)),
// with l(0) = -inf.
Extended filtration_level(const FilteredComplex& c, const Chain& z);

struct HomologyBasis {
    size_t rank = 0;
    std::vector<Chain> representatives; // exact cycle representatives
    size_t cycle_rank = 0;
    size_t boundary_rank = 0;
};

// Homology over the Novikov field by exact column reduction (characteristic-2
// cross-multiplication, no truncation).  Pre: verify_complex passes.
HomologyBasis homology(const FilteredComplex& c);

// Minimal filtration level over all representatives of the class of the
// cycle z.  Computed by reducing z against an l-orthogonalized basis of the
// boundary space (windowed Novikov division).  Throws ZeroClass when [z] = 0
// and TruncationOverflow when the working window cannot certify the result.
Extended min_filtration(const FilteredComplex& c, const Chain& z,
                        const Rational& window = default_window());

// Restriction to each homotopy label.  Pre: verify_complex passes.
std::map<std::string, FilteredComplex> split_by_class(const FilteredComplex& c);

} // namespace eternalbar
