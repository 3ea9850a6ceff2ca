#include "l2approx/rational.hpp"

#include "l2approx/error.hpp"

#include <cmath>
#include <limits>

namespace l2approx {

Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto trim = [](std::string& t) {
        const auto b = t.find_first_not_of(" \t");
        const auto e = t.find_last_not_of(" \t");
        t = b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
    };
    trim(s);
    if (s.empty()) throw Error("empty rational literal");
    try {
        if (auto slash = s.find('/'); slash != std::string::npos) {
            Integer num(s.substr(0, slash), 10);
            Integer den(s.substr(slash + 1), 10);
            if (den == 0) throw Error("zero denominator in '" + s + "'");
            Rational q(num, den);
            q.canonicalize();
            return q;
        }
        // Decimal with optional exponent: mantissa digits are kept exactly.
        std::string mant = s;
        long exp10 = 0;
        if (auto e = s.find_first_of("eE"); e != std::string::npos) {
            mant = s.substr(0, e);
            exp10 = std::stol(s.substr(e + 1));
        }
        bool negative = false;
        if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
            negative = mant[0] == '-';
            mant.erase(0, 1);
        }
        std::string digits;
        for (char c : mant) {
            if (c == '.') {
                continue;
            }
            if (c < '0' || c > '9') throw Error("malformed rational literal '" + s + "'");
            digits.push_back(c);
        }
        if (digits.empty()) throw Error("malformed rational literal '" + s + "'");
        if (auto dot = mant.find('.'); dot != std::string::npos) {
            exp10 -= static_cast<long>(mant.size() - dot - 1);
        }
        Integer num(digits, 10);
        if (negative) num = -num;
        Integer scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
        Rational q = exp10 >= 0 ? Rational(num * scale) : Rational(num, scale);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw Error("malformed rational literal '" + s + "'");
    } catch (const std::out_of_range&) {
        throw Error("exponent out of range in '" + s + "'");
    }
}

Rational ratio(const Integer& num, const Integer& den) {
    if (den == 0) throw Error("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }
std::string to_string(const Integer& z) { return z.get_str(10); }

double to_double(const Rational& q) { return mpq_get_d(q.get_mpq_t()); }

double abs_upper(const Rational& q) {
    if (q == 0) return 0.0;
    const double l = log_abs(q);
    if (l > 709.0) return std::numeric_limits<double>::infinity();
    const double v = std::fabs(to_double(q));
    if (from_double(v) == abs(q)) return v;
    // mpq_get_d truncates toward zero.
    return std::nextafter(v, INFINITY);
}

double log_abs(const Integer& z) {
    if (z == 0) return -std::numeric_limits<double>::infinity();
    long exp2 = 0;
    const double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
    return std::log(std::fabs(mant)) + static_cast<double>(exp2) * std::log(2.0);
}

double log_abs(const Rational& q) {
    return log_abs(Integer(q.get_num())) - log_abs(Integer(q.get_den()));
}

Integer lcm(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

Rational from_double(double x) {
    if (!std::isfinite(x)) throw Error("non-finite value cannot be made exact");
    Rational q;
    mpq_set_d(q.get_mpq_t(), x);
    return q;
}

Rational round_to_bits(const Rational& q, int bits) {
    if (q == 0) return q;
    // Scale by 2^shift so that the integer part has `bits` bits, then round.
    const long mag = static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2)) -
                     static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2));
    const long shift = bits - mag;
    Rational scaled = q;
    if (shift >= 0) {
        mpq_mul_2exp(scaled.get_mpq_t(), scaled.get_mpq_t(), static_cast<unsigned long>(shift));
    } else {
        mpq_div_2exp(scaled.get_mpq_t(), scaled.get_mpq_t(), static_cast<unsigned long>(-shift));
    }
    Integer rounded;
    Integer twice_num = 2 * Integer(scaled.get_num()) + Integer(scaled.get_den());
    Integer twice_den = 2 * Integer(scaled.get_den());
    mpz_fdiv_q(rounded.get_mpz_t(), twice_num.get_mpz_t(), twice_den.get_mpz_t());
    Rational out(rounded);
    if (shift >= 0) {
        mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<unsigned long>(shift));
    } else {
        mpq_mul_2exp(out.get_mpq_t(), out.get_mpq_t(), static_cast<unsigned long>(-shift));
    }
    return out;
}

}  // namespace l2approx
