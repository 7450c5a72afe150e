#include "eternalbar/rational.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace eternalbar {

namespace {

Int pow10(size_t k) {
    Int r = 1;
    for (size_t i = 0; i < k; ++i) r *= 10;
    return r;
}

} // namespace

Rational parse_rational(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    std::string str(s);
    auto slash = str.find('/');
    if (slash != std::string::npos) {
        Int num(str.substr(0, slash));
        Int den(str.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator: " + str);
        return Rational(num, den);
    }
    auto dot = str.find('.');
    if (dot != std::string::npos) {
        std::string head = str.substr(0, dot);
        std::string tail = str.substr(dot + 1);
        if (tail.empty()) return Rational(Int(head));
        bool neg = !head.empty() && head[0] == '-';
        if (head == "-" || head.empty()) head = "0";
        Int whole(head);
        Int frac(tail);
        Int den = pow10(tail.size());
        Rational r = Rational(boost::multiprecision::abs(whole)) + Rational(frac, den);
        return (neg || whole < 0) ? -r : r;
    }
    return Rational(Int(str));
}

std::string format_rational(const Rational& q) {
    std::string s = boost::multiprecision::numerator(q).str();
    if (boost::multiprecision::denominator(q) != 1)
        s += "/" + boost::multiprecision::denominator(q).str();
    return s;
}

std::string format_decimal(const Rational& q, int digits) {
    Rational a = q < 0 ? -q : q;
    Int scale = pow10(static_cast<size_t>(digits));
    Int scaled = boost::multiprecision::numerator(a) * scale * 2;
    Int den = boost::multiprecision::denominator(a);
    Int v = (scaled / den + 1) / 2; // round half up
    Int whole = v / scale, frac = v % scale;
    std::string fs = frac.str();
    if (digits > 0) fs.insert(fs.begin(), digits - fs.size(), '0');
    std::string out = whole.str();
    if (digits > 0) out += "." + fs;
    if (q < 0 && v != 0) out.insert(out.begin(), '-');
    return out;
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

Extended Extended::parse(std::string_view s) {
    if (s == "inf" || s == "+inf") return pos_inf();
    if (s == "-inf") return neg_inf();
    return Extended(parse_rational(s));
}

std::string Extended::str() const {
    switch (kind_) {
    case Kind::NegInf: return "-inf";
    case Kind::PosInf: return "inf";
    default: return format_rational(value_);
    }
}

Int ceil_rational(const Rational& q) {
    Int num = boost::multiprecision::numerator(q);
    Int den = boost::multiprecision::denominator(q);
    Int d = num / den;
    if (num > 0 && num % den != 0) d += 1;
    return d;
}

} // namespace eternalbar
