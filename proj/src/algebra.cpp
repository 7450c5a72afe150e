#include "eternalbar/algebra.hpp"

#include <algorithm>
#include <sstream>

#include "eternalbar/errors.hpp"

namespace eternalbar {

namespace {

std::string entry_str(const ProductEntry& e) {
    std::ostringstream os;
    os << "(" << e.g << "," << e.h << "," << e.in1 << "," << e.in2 << ")";
    return os.str();
}

bool entry_less(const ProductEntry& a, const ProductEntry& b) {
    return std::tie(a.g, a.h, a.in1, a.in2) < std::tie(b.g, b.h, b.in1, b.in2);
}

} // namespace

const Barcode& PersistenceAlgebra::module_of(const std::string& label) const {
    auto it = modules.find(label);
    if (it == modules.end()) throw MalformedInput("no module for label: " + label);
    return it->second;
}

const ColimitClass& PersistenceAlgebra::unit_in(const std::string& label) const {
    auto it = unit_overrides.find(label);
    return it == unit_overrides.end() ? unit : it->second;
}

const std::string& PersistenceAlgebra::product_label(const ProductEntry& e) const {
    auto it = compose.find({e.g, e.h});
    if (it == compose.end())
        throw MalformedInput("product entry " + entry_str(e) + " has no declared composition");
    return it->second;
}

void PersistenceAlgebra::validate_structure() const {
    auto known = [&](const std::string& l) {
        return std::find(labels.begin(), labels.end(), l) != labels.end();
    };
    if (!known(identity)) throw MalformedInput("identity label not in label set");
    for (const auto& l : labels)
        if (!modules.count(l)) throw MalformedInput("label without module: " + l);
    for (const auto& [gh, r] : compose)
        if (!known(gh.first) || !known(gh.second) || !known(r))
            throw MalformedInput("compose table references unknown label");
    for (const auto& [g, gi] : inverse)
        if (!known(g) || !known(gi)) throw MalformedInput("inverse table references unknown label");
    if (unit.is_zero()) throw MalformedInput("unit class is zero");
    auto check_class = [&](const std::string& l, const ColimitClass& z, const char* what) {
        size_t n = colim_basis(module_of(l)).size();
        for (size_t i : z.bars)
            if (i >= n)
                throw MalformedInput(std::string(what) + " references absent colim bar of " + l);
    };
    check_class(identity, unit, "unit");
    for (const auto& [l, z] : unit_overrides) check_class(l, z, "unit override");
    for (const auto& e : products) {
        if (!known(e.g) || !known(e.h))
            throw MalformedInput("product entry " + entry_str(e) + " on unknown label");
        const std::string& gh = product_label(e);
        size_t n1 = colim_basis(module_of(e.g)).size();
        size_t n2 = colim_basis(module_of(e.h)).size();
        size_t no = colim_basis(module_of(gh)).size();
        if (e.in1 >= n1 || e.in2 >= n2)
            throw MalformedInput("product entry " + entry_str(e) + " input out of range");
        for (size_t o : e.out)
            if (o >= no)
                throw MalformedInput("product entry " + entry_str(e) + " output out of range");
    }
}

void PersistenceAlgebra::validate_strict() const {
    validate_structure();
    for (const auto& e : products) {
        const std::string& gh = product_label(e);
        const Extended b1 = colim_basis(module_of(e.g))[e.in1].birth;
        const Extended b2 = colim_basis(module_of(e.h))[e.in2].birth;
        std::vector<Bar> basis_out = colim_basis(module_of(gh));
        for (size_t o : e.out)
            if (!(basis_out[o].birth <= b1 + b2))
                throw MalformedInput("shift rule violated at entry " + entry_str(e) +
                                     ": output birth " + basis_out[o].birth.str() +
                                     " > " + (b1 + b2).str());
    }
    // Unitality on table entries involving the unit (single-bar units only;
    // a combination unit cannot be checked entrywise).
    if (unit.bars.size() == 1) {
        size_t u = unit.bars[0];
        for (const auto& e : products) {
            if (e.g == identity && e.in1 == u) {
                ColimitClass expect = ColimitClass::from_indices({e.in2});
                if (product_label(e) != e.h || !(ColimitClass::from_indices(e.out) == expect))
                    throw MalformedInput("unit fails as left unit at entry " + entry_str(e));
            }
            if (e.h == identity && e.in2 == u) {
                ColimitClass expect = ColimitClass::from_indices({e.in1});
                if (product_label(e) != e.g || !(ColimitClass::from_indices(e.out) == expect))
                    throw MalformedInput("unit fails as right unit at entry " + entry_str(e));
            }
        }
    }
}

Extended spectral_invariant(const Barcode& b, const ColimitClass& z) {
    if (z.is_zero()) throw ZeroClass("spectral invariant of the zero class");
    std::vector<Bar> basis = colim_basis(b);
    Extended best = Extended::neg_inf();
    for (size_t i : z.bars) {
        if (i >= basis.size()) throw BasisMismatch("colimit class references absent bar");
        if (basis[i].birth > best) best = basis[i].birth;
    }
    return best; // -inf iff all constituents are fully infinite
}

Extended spectral_invariant(const PersistenceAlgebra& A, const std::string& label,
                            const ColimitClass& z) {
    return spectral_invariant(A.module_of(label), z);
}

CheckReport check_subadditivity(const PersistenceAlgebra& A) {
    std::vector<ProductEntry> entries = A.products;
    std::sort(entries.begin(), entries.end(), entry_less);
    for (const auto& e : entries) {
        const std::string& gh = A.product_label(e);
        Extended c1 = colim_basis(A.module_of(e.g))[e.in1].birth;
        Extended c2 = colim_basis(A.module_of(e.h))[e.in2].birth;
        ColimitClass out = ColimitClass::from_indices(e.out);
        if (out.is_zero()) continue; // c(0) = -inf vacuously
        Extended c = spectral_invariant(A.module_of(gh), out);
        if (!(c <= c1 + c2))
            return {false, "entry " + entry_str(e) + ": c(out)=" + c.str() + " > " +
                               c1.str() + "+" + c2.str()};
    }
    return {};
}

CheckReport check_ideal(const PersistenceAlgebra& A) {
    std::vector<ProductEntry> entries = A.products;
    std::sort(entries.begin(), entries.end(), entry_less);
    for (const auto& e : entries) {
        bool e1 = colim_basis(A.module_of(e.g))[e.in1].fully_infinite();
        bool e2 = colim_basis(A.module_of(e.h))[e.in2].fully_infinite();
        if (!e1 && !e2) continue;
        const std::string& gh = A.product_label(e);
        std::vector<Bar> basis = colim_basis(A.module_of(gh));
        for (size_t o : ColimitClass::from_indices(e.out).bars)
            if (!basis[o].fully_infinite())
                return {false, "entry " + entry_str(e) + ": eternal input, non-eternal output bar " +
                                   std::to_string(o)};
    }
    return {};
}

namespace {

Extended unit_spectral(const PersistenceAlgebra& A, const std::string& g) {
    return spectral_invariant(A.module_of(g), A.unit_in(g));
}

std::string require_inverse(const PersistenceAlgebra& A, const std::string& g) {
    auto it = A.inverse.find(g);
    if (it == A.inverse.end()) throw MissingInverse("no inverse declared for label: " + g);
    return it->second;
}

} // namespace

Extended oscillation(const PersistenceAlgebra& A, const std::string& g) {
    std::string gi = require_inverse(A, g);
    return unit_spectral(A, g) + unit_spectral(A, gi);
}

Extended pseudo_norm(const PersistenceAlgebra& A, const std::string& g) {
    std::string gi = require_inverse(A, g);
    return std::max(unit_spectral(A, g), unit_spectral(A, gi));
}

Int integer_invariant(const PersistenceAlgebra& A, const std::string& g,
                      const ColimitClass& z, const Rational& loop_period) {
    if (loop_period <= 0) throw std::invalid_argument("loop period must be > 0");
    Extended c = spectral_invariant(A.module_of(g), z);
    if (!c.is_finite()) throw EternalClass();
    return ceil_rational(c.finite() / loop_period);
}

UnitEternalReport unit_eternal_criterion(const PersistenceAlgebra& A) {
    const Barcode& idmod = A.module_of(A.identity);
    std::vector<Bar> basis = colim_basis(idmod);
    bool eternal = is_eternal(idmod, A.unit);

    std::ostringstream w;
    if (eternal) {
        w << "unit is spanned by fully infinite bars:";
        for (size_t i : A.unit.bars) w << " " << i;
    } else {
        for (size_t i : A.unit.bars)
            if (!basis[i].fully_infinite()) {
                w << "unit uses half-infinite bar " << i << " born at "
                  << basis[i].birth.str();
                break;
            }
    }

    // Power-trick cross check on the unit self-product, when present: since
    // 1 = 1^k, hitting at one level must propagate to k-fold powers.
    if (A.unit.bars.size() == 1) {
        size_t u = A.unit.bars[0];
        for (const auto& e : A.products) {
            if (e.g != A.identity || e.h != A.identity || e.in1 != u || e.in2 != u) continue;
            Extended b = basis[u].birth;
            ColimitClass out = ColimitClass::from_indices(e.out);
            const Barcode& mod_out = A.module_of(A.product_label(e));
            if (!out.is_zero() && !hits_at(mod_out, out, b + b))
                w << "; power cross-check failed: 1*1 misses level " << (b + b).str();
        }
    }
    return {eternal, w.str()};
}

} // namespace eternalbar
