#include "eternalbar/novikov.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

#include "eternalbar/errors.hpp"

namespace eternalbar {

NovikovScalar NovikovScalar::tau(Rational a) {
    NovikovScalar s;
    s.support_.push_back(std::move(a));
    return s;
}

NovikovScalar NovikovScalar::from_exponents(std::vector<Rational> exps) {
    std::sort(exps.begin(), exps.end());
    NovikovScalar s;
    for (auto& e : exps) {
        if (!s.support_.empty() && s.support_.back() == e)
            s.support_.pop_back(); // pairs cancel in characteristic 2
        else
            s.support_.push_back(std::move(e));
    }
    return s;
}

Extended NovikovScalar::valuation() const {
    if (support_.empty()) return Extended::pos_inf();
    return Extended(support_.front());
}

NovikovScalar operator+(const NovikovScalar& x, const NovikovScalar& y) {
    NovikovScalar r;
    std::set_symmetric_difference(x.support_.begin(), x.support_.end(),
                                  y.support_.begin(), y.support_.end(),
                                  std::back_inserter(r.support_));
    return r;
}

NovikovScalar operator*(const NovikovScalar& x, const NovikovScalar& y) {
    std::map<Rational, bool> acc;
    for (const auto& a : x.support_)
        for (const auto& b : y.support_)
            acc[a + b] ^= true;
    NovikovScalar r;
    for (auto& [e, on] : acc)
        if (on) r.support_.push_back(e);
    return r;
}

NovikovScalar NovikovScalar::shifted(const Rational& a) const {
    NovikovScalar r;
    r.support_.reserve(support_.size());
    for (const auto& e : support_) r.support_.push_back(e + a);
    return r;
}

std::vector<std::string> NovikovScalar::exponent_strings() const {
    std::vector<std::string> out;
    out.reserve(support_.size());
    for (const auto& e : support_) out.push_back(format_rational(e));
    return out;
}

NovikovScalar nov_div_window(const NovikovScalar& x, const NovikovScalar& y,
                             const Rational& window) {
    if (y.is_zero()) throw DivisionByZero();
    if (window <= 0) throw std::invalid_argument("nov_div_window: window must be > 0");
    if (x.is_zero()) return NovikovScalar::zero();

    const Rational vx = x.valuation().finite();
    const Rational vy = y.valuation().finite();
    const Rational bound = vx - vy + window; // q support strictly below this

    NovikovScalar q;
    NovikovScalar r = x;
    while (!r.is_zero()) {
        Rational lead = r.valuation().finite() - vy;
        if (lead >= bound) break;
        NovikovScalar t = NovikovScalar::tau(lead);
        q = q + t;
        r = r + t * y; // leading terms cancel exactly
    }
    return q;
}

Rational default_window() {
    if (const char* env = std::getenv("ETERNALBAR_WINDOW")) {
        try {
            Rational w = parse_rational(env);
            if (w > 0) return w;
        } catch (const std::exception&) {
        }
    }
    return Rational(64);
}

} // namespace eternalbar
