#include "stccpm/rational.hpp"

#include <numeric>
#include <ostream>
#include <stdexcept>

namespace stccpm {

namespace {

__extension__ typedef __int128 wide;

std::int64_t narrow(wide v) {
    if (v > INT64_MAX || v < INT64_MIN) {
        throw std::overflow_error("rational overflow");
    }
    return static_cast<std::int64_t>(v);
}

Rational make(wide num, wide den) {
    if (den == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    wide a = num < 0 ? -num : num;
    wide b = den;
    while (b != 0) {
        wide t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) {
        num /= a;
        den /= a;
    }
    return Rational(narrow(num), narrow(den));
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = std::gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    num_ = num;
    den_ = den;
}

Rational Rational::mod1() const {
    std::int64_t r = num_ % den_;
    if (r < 0) r += den_;
    return Rational(r, den_);
}

Rational& Rational::operator+=(const Rational& o) {
    *this = make(static_cast<wide>(num_) * o.den_ + static_cast<wide>(o.num_) * den_,
                 static_cast<wide>(den_) * o.den_);
    return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
    *this = make(static_cast<wide>(num_) * o.num_, static_cast<wide>(den_) * o.den_);
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    *this = make(static_cast<wide>(num_) * o.den_, static_cast<wide>(den_) * o.num_);
    return *this;
}

bool operator<(const Rational& a, const Rational& b) {
    return static_cast<wide>(a.num_) * b.den_ < static_cast<wide>(b.num_) * a.den_;
}

Rational Rational::parse(const std::string& text) {
    auto slash = text.find('/');
    try {
        std::size_t used = 0;
        if (slash == std::string::npos) {
            std::int64_t n = std::stoll(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return Rational(n);
        }
        std::string a = text.substr(0, slash);
        std::string b = text.substr(slash + 1);
        std::int64_t n = std::stoll(a, &used);
        if (used != a.size()) throw std::invalid_argument(text);
        std::int64_t d = std::stoll(b, &used);
        if (used != b.size()) throw std::invalid_argument(text);
        return Rational(n, d);
    } catch (const std::logic_error&) {
        throw std::invalid_argument("not a fraction: '" + text + "'");
    }
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace stccpm
