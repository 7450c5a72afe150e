#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace eternalbar {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "3/2", "-5", "0.25", "inf", "-inf" is NOT accepted here (see Extended).
Rational parse_rational(std::string_view s);

// Lowest-terms "p/q" (or "p" when q == 1).
std::string format_rational(const Rational& q);

// Decimal rendering with the given number of digits after the point.
std::string format_decimal(const Rational& q, int digits);

double to_double(const Rational& q);

// Rational extended by -inf and +inf.  Used for valuations, filtration
// levels, births and deaths.
class Extended {
public:
    enum class Kind { NegInf, Finite, PosInf };

    Extended() : kind_(Kind::Finite), value_(0) {}
    Extended(Rational v) : kind_(Kind::Finite), value_(std::move(v)) {}
    Extended(int v) : kind_(Kind::Finite), value_(v) {}

    static Extended neg_inf() { return Extended(Kind::NegInf); }
    static Extended pos_inf() { return Extended(Kind::PosInf); }

    bool is_finite() const { return kind_ == Kind::Finite; }
    bool is_neg_inf() const { return kind_ == Kind::NegInf; }
    bool is_pos_inf() const { return kind_ == Kind::PosInf; }

    const Rational& finite() const {
        if (!is_finite()) throw std::logic_error("Extended: not finite");
        return value_;
    }

    friend bool operator==(const Extended& a, const Extended& b) {
        if (a.kind_ != b.kind_) return false;
        return a.kind_ != Kind::Finite || a.value_ == b.value_;
    }
    friend bool operator!=(const Extended& a, const Extended& b) { return !(a == b); }
    friend bool operator<(const Extended& a, const Extended& b) {
        if (a.kind_ == b.kind_) return a.kind_ == Kind::Finite && a.value_ < b.value_;
        return rank(a.kind_) < rank(b.kind_);
    }
    friend bool operator<=(const Extended& a, const Extended& b) { return a < b || a == b; }
    friend bool operator>(const Extended& a, const Extended& b) { return b < a; }
    friend bool operator>=(const Extended& a, const Extended& b) { return b <= a; }

    // Addition with absorbing infinities; inf + (-inf) is a logic error.
    friend Extended operator+(const Extended& a, const Extended& b) {
        if (a.is_finite() && b.is_finite()) return Extended(a.value_ + b.value_);
        if (a.is_neg_inf() || b.is_neg_inf()) {
            if (a.is_pos_inf() || b.is_pos_inf())
                throw std::logic_error("Extended: inf + (-inf)");
            return neg_inf();
        }
        return pos_inf();
    }
    Extended operator-() const {
        switch (kind_) {
        case Kind::NegInf: return pos_inf();
        case Kind::PosInf: return neg_inf();
        default: return Extended(-value_);
        }
    }

    // "-inf" / "inf" / rational string.
    static Extended parse(std::string_view s);
    std::string str() const;

private:
    explicit Extended(Kind k) : kind_(k), value_(0) {}
    static int rank(Kind k) {
        return k == Kind::NegInf ? 0 : (k == Kind::Finite ? 1 : 2);
    }
    Kind kind_;
    Rational value_;
};

// Smallest integer >= q.
Int ceil_rational(const Rational& q);

} // namespace eternalbar
