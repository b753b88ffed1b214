#include "treehom/rational.hpp"

#include "treehom/errors.hpp"

#include <cctype>

namespace treehom {

Rational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw invalid_argument_error("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

namespace {

bool plausible_integer_text(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

} // namespace

BigInt parse_bigint(const std::string& text) {
    if (!plausible_integer_text(text))
        throw invalid_argument_error("not a base 10 integer: '" + text + "'");
    return BigInt(text, 10);
}

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) {
        return Rational(parse_bigint(text));
    }
    BigInt num = parse_bigint(text.substr(0, slash));
    std::string den_text = text.substr(slash + 1);
    if (!den_text.empty() && den_text[0] == '-')
        throw invalid_argument_error("denominator must be positive: '" + text + "'");
    BigInt den = parse_bigint(den_text);
    return make_rational(num, den);
}

std::string format_rational(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string format_bigint(const BigInt& n) {
    return n.get_str();
}

Rational round_down(const Rational& q, const BigInt& denom) {
    if (denom <= 0) throw invalid_argument_error("rounding denominator must be positive");
    BigInt scaled;
    mpz_fdiv_q(scaled.get_mpz_t(), BigInt(q.get_num() * denom).get_mpz_t(),
               q.get_den().get_mpz_t());
    return make_rational(scaled, denom);
}

Rational round_up(const Rational& q, const BigInt& denom) {
    if (denom <= 0) throw invalid_argument_error("rounding denominator must be positive");
    BigInt scaled;
    mpz_cdiv_q(scaled.get_mpz_t(), BigInt(q.get_num() * denom).get_mpz_t(),
               q.get_den().get_mpz_t());
    return make_rational(scaled, denom);
}

Rational rational_pow(const Rational& q, unsigned long e) {
    Rational out;
    mpz_pow_ui(out.get_num().get_mpz_t(), q.get_num().get_mpz_t(), e);
    mpz_pow_ui(out.get_den().get_mpz_t(), q.get_den().get_mpz_t(), e);
    // num/den already coprime, so the power is canonical too
    return out;
}

BigInt bigint_pow(const BigInt& base, unsigned long e) {
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

Rational rational_abs(const Rational& q) {
    return q < 0 ? Rational(-q) : q;
}

} // namespace treehom
