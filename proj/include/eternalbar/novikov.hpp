#pragma once

#include <vector>

#include "eternalbar/rational.hpp"

namespace eternalbar {

// Element of the universal Novikov field over Z/2, restricted to finite
// support.  Stored as the strictly increasing list of exponents carrying
// coefficient 1; the zero element has empty support.
class NovikovScalar {
public:
    NovikovScalar() = default;

    static NovikovScalar zero() { return {}; }
    static NovikovScalar one() { return tau(0); }
    static NovikovScalar tau(Rational a);

    // Builds from an arbitrary exponent list; duplicate pairs cancel (char 2).
    static NovikovScalar from_exponents(std::vector<Rational> exps);

    bool is_zero() const { return support_.empty(); }
    const std::vector<Rational>& support() const { return support_; }

    // Minimal exponent; +inf for zero.
    Extended valuation() const;

    friend NovikovScalar operator+(const NovikovScalar& x, const NovikovScalar& y);
    friend NovikovScalar operator*(const NovikovScalar& x, const NovikovScalar& y);
    friend bool operator==(const NovikovScalar& x, const NovikovScalar& y) {
        return x.support_ == y.support_;
    }
    friend bool operator!=(const NovikovScalar& x, const NovikovScalar& y) {
        return !(x == y);
    }

    // Multiplication by a single monomial tau^a.
    NovikovScalar shifted(const Rational& a) const;

    // Serialization as sorted exponent strings, e.g. ["0","3/2","5"].
    std::vector<std::string> exponent_strings() const;

private:
    std::vector<Rational> support_;
};

// Windowed division: returns q supported in
// [val(x)-val(y), val(x)-val(y)+window) such that val(x - q*y) >= val(x)+window.
// q is the truncation of the exact series x/y to that window.
// Throws DivisionByZero when y = 0.  Requires window > 0.
NovikovScalar nov_div_window(const NovikovScalar& x, const NovikovScalar& y,
                             const Rational& window);

// Default working window for valuation-sensitive reductions; overridable via
// the ETERNALBAR_WINDOW environment variable.
Rational default_window();

} // namespace eternalbar
