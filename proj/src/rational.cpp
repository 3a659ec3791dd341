#include "fairnom/rational.hpp"

#include <cctype>
#include <ostream>

namespace fairnom {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Rational::Rational(std::int64_t value) {
    // mpq_class has no int64 constructor on every platform; go through mpz.
    mpz_class z;
    mpz_set_si(z.get_mpz_t(), static_cast<long>(value));
    value_ = mpq_class(z);
}

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    mpz_class n, d;
    mpz_set_si(n.get_mpz_t(), static_cast<long>(num));
    mpz_set_si(d.get_mpz_t(), static_cast<long>(den));
    value_ = mpq_class(n, d);
    value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
    const std::string_view s = trim(text);
    if (s.empty()) throw ParseError("empty rational literal");

    std::string_view body = s;
    bool negative = false;
    if (body.front() == '-' || body.front() == '+') {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }

    mpq_class q;
    if (const auto slash = body.find('/'); slash != std::string_view::npos) {
        const auto num = body.substr(0, slash);
        const auto den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw ParseError("malformed fraction: '" + std::string(s) + "'");
        mpz_class d(std::string(den), 10);
        if (d == 0) throw ParseError("zero denominator: '" + std::string(s) + "'");
        q = mpq_class(mpz_class(std::string(num), 10), d);
    } else if (const auto dot = body.find('.'); dot != std::string_view::npos) {
        auto whole = body.substr(0, dot);
        const auto frac = body.substr(dot + 1);
        if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac))
            throw ParseError("malformed decimal: '" + std::string(s) + "'");
        const std::string digits = std::string(whole.empty() ? "0" : whole) + std::string(frac);
        mpz_class den = 1;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
        q = mpq_class(mpz_class(digits, 10), den);
    } else {
        if (!all_digits(body)) throw ParseError("malformed number: '" + std::string(s) + "'");
        q = mpq_class(mpz_class(std::string(body), 10));
    }
    q.canonicalize();
    if (negative) q = -q;
    return Rational(std::move(q));
}

std::string Rational::to_string() const { return value_.get_str(); }
std::string Rational::numerator_string() const { return value_.get_num().get_str(); }
std::string Rational::denominator_string() const { return value_.get_den().get_str(); }
bool Rational::is_integer() const { return value_.get_den() == 1; }

Rational& Rational::operator+=(const Rational& rhs) {
    value_ += rhs.value_;
    return *this;
}
Rational& Rational::operator-=(const Rational& rhs) {
    value_ -= rhs.value_;
    return *this;
}
Rational& Rational::operator*=(const Rational& rhs) {
    value_ *= rhs.value_;
    return *this;
}
Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.is_zero()) throw std::domain_error("Rational: division by zero");
    value_ /= rhs.value_;
    return *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

Rational abs(const Rational& r) { return r.is_negative() ? -r : r; }
Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace fairnom
