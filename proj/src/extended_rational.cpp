#include "negcf/extended_rational.hpp"

#include "negcf/errors.hpp"

#include <utility>

namespace negcf {

ExtendedRational::ExtendedRational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (num_ == 0 && den_ == 0) throw PreconditionViolated("0/0 is not an extended rational");
    if (den_ == 0) {
        num_ = 1;
        return;
    }
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    BigInt g;
    mpz_gcd(g.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
    if (g != 1) {
        mpz_divexact(num_.get_mpz_t(), num_.get_mpz_t(), g.get_mpz_t());
        mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
    }
}

std::string ExtendedRational::str() const {
    if (is_infinite()) return "inf";
    return num_.get_str() + "/" + den_.get_str();
}

std::string ExtendedRational::pretty() const {
    if (is_infinite()) return "inf";
    if (den_ == 1) return num_.get_str();
    return str();
}

std::strong_ordering compare(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.is_infinite() || b.is_infinite()) {
        if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
        return a.is_infinite() ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    const int c = cmp(a.num() * b.den(), b.num() * a.den());
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

namespace {
void require_finite(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.is_infinite() || b.is_infinite())
        throw PreconditionViolated("arithmetic on the point at infinity");
}
}  // namespace

ExtendedRational operator+(const ExtendedRational& a, const ExtendedRational& b) {
    require_finite(a, b);
    return {a.num() * b.den() + b.num() * a.den(), a.den() * b.den()};
}

ExtendedRational operator-(const ExtendedRational& a, const ExtendedRational& b) {
    require_finite(a, b);
    return {a.num() * b.den() - b.num() * a.den(), a.den() * b.den()};
}

ExtendedRational abs_of(const ExtendedRational& a) {
    if (a.is_infinite()) return a;
    return {abs(a.num()), a.den()};
}

std::string to_decimal(const ExtendedRational& x, int digits, bool round_up) {
    if (x.is_infinite()) return "inf";
    if (digits < 0) digits = 0;
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    BigInt scaled = x.num() * scale;
    BigInt q;
    if (round_up)
        mpz_cdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), x.den().get_mpz_t());
    else
        mpz_fdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), x.den().get_mpz_t());

    const bool negative = q < 0;
    std::string digits_str = BigInt(abs(q)).get_str();
    if (digits == 0) return (negative ? "-" : "") + digits_str;
    if (digits_str.size() <= static_cast<std::size_t>(digits))
        digits_str.insert(0, static_cast<std::size_t>(digits) + 1 - digits_str.size(), '0');
    digits_str.insert(digits_str.size() - static_cast<std::size_t>(digits), ".");
    return (negative ? "-" : "") + digits_str;
}

std::size_t ExtendedRationalHash::operator()(const ExtendedRational& x) const {
    return hash_value(x.num()) * 1000003u ^ hash_value(x.den());
}

}  // namespace negcf
