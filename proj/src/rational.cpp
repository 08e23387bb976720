#include "migratepack/rational.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace migratepack {

Rational make_rat(long num, long den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::optional<Rational> parse_rational(const std::string& text) {
    if (text.empty()) return std::nullopt;
    std::string s = text;
    // strip surrounding whitespace
    size_t a = s.find_first_not_of(" \t\r\n");
    size_t b = s.find_last_not_of(" \t\r\n");
    if (a == std::string::npos) return std::nullopt;
    s = s.substr(a, b - a + 1);

    auto valid_int = [](const std::string& t) {
        if (t.empty()) return false;
        size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };

    size_t slash = s.find('/');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!valid_int(num) || !valid_int(den)) return std::nullopt;
        mpz_class p(num), q(den);
        if (q == 0) return std::nullopt;
        Rational r(p);
        r /= Rational(q);
        return r;
    }
    size_t dot = s.find('.');
    if (dot != std::string::npos) {
        std::string head = s.substr(0, dot), tail = s.substr(dot + 1);
        if (head.empty() || head == "-" || head == "+") head += "0";
        if (!valid_int(head)) return std::nullopt;
        if (tail.empty()) tail = "0";
        for (char c : tail)
            if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
        mpz_class ipart(head);
        mpz_class frac(tail);
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, tail.size());
        bool neg = (s[0] == '-');
        Rational r(ipart);
        Rational f(frac);
        f /= Rational(scale);
        r += neg ? -f : f;
        return r;
    }
    if (!valid_int(s)) return std::nullopt;
    return Rational(mpz_class(s));
}

std::string rat_to_fraction(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string rat_to_decimal(const Rational& r, int digits) {
    // round-half-away via scaled integer division
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    mpz_class num = r.get_num() * scale * 2;
    mpz_class q = num / r.get_den();
    bool neg = q < 0;
    if (neg) q = -q;
    q = (q + 1) / 2;
    std::string digits_str = q.get_str();
    if (static_cast<int>(digits_str.size()) <= digits)
        digits_str = std::string(digits + 1 - digits_str.size(), '0') + digits_str;
    std::string ip = digits_str.substr(0, digits_str.size() - digits);
    std::string fp = digits_str.substr(digits_str.size() - digits);
    // trim trailing zeros but keep at least one decimal
    size_t last = fp.find_last_not_of('0');
    fp = (last == std::string::npos) ? "0" : fp.substr(0, last + 1);
    return (neg ? "-" : "") + ip + "." + fp;
}

bool rat_is_integer(const Rational& r) { return r.get_den() == 1; }

namespace {
long to_long_checked(const mpz_class& z) {
    if (!z.fits_slong_p()) throw std::overflow_error("rational exceeds long range");
    return z.get_si();
}
}  // namespace

long rat_floor(const Rational& r) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return to_long_checked(q);
}

long rat_ceil(const Rational& r) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return to_long_checked(q);
}

}  // namespace migratepack
