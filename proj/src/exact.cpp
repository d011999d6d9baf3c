#include "qhiso/exact.hpp"

#include <cctype>

namespace qhiso {

std::string ExactReal::str() const {
    std::string out = a.get_str();
    if (b != 0) {
        std::string bs = b.get_str();
        if (a == 0) {
            out = bs + "*sqrt2";
        } else if (bs[0] == '-') {
            out += bs + "*sqrt2";
        } else {
            out += "+" + bs + "*sqrt2";
        }
    }
    return out;
}

namespace {

mpq_class rational_from_decimal(const std::string& s) {
    // [sign] digits [. digits]  — read exactly as p / 10^k
    size_t pos = 0;
    bool neg = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        neg = s[pos] == '-';
        ++pos;
    }
    std::string digits;
    long frac = 0;
    bool seen_dot = false, seen_digit = false;
    for (; pos < s.size(); ++pos) {
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits += c;
            seen_digit = true;
            if (seen_dot) ++frac;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else {
            throw std::invalid_argument("parse_exact_real: bad character in '" + s + "'");
        }
    }
    if (!seen_digit) throw std::invalid_argument("parse_exact_real: no digits in '" + s + "'");
    mpz_class num(digits.empty() ? "0" : digits);
    mpz_class den = 1;
    for (long i = 0; i < frac; ++i) den *= 10;
    mpq_class q(num, den);
    q.canonicalize();
    return neg ? mpq_class(-q) : q;
}

} // namespace

ExactReal parse_exact_real(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("parse_exact_real: empty");
    size_t slash = s.find('/');
    if (slash != std::string::npos) {
        mpq_class num = rational_from_decimal(s.substr(0, slash));
        mpq_class den = rational_from_decimal(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("parse_exact_real: zero denominator");
        mpq_class q = num / den;
        q.canonicalize();
        return ExactReal(q);
    }
    return ExactReal(rational_from_decimal(s));
}

XQuat parse_exact_quaternion(const std::string& text) {
    // Reuse the term grammar of parse_quaternion, but keep coefficients exact.
    XQuat acc;
    size_t pos = 0, n = text.size();
    bool any = false;
    while (pos < n) {
        while (pos < n && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos >= n) break;
        bool neg = false;
        if (text[pos] == '+' || text[pos] == '-') {
            neg = text[pos] == '-';
            ++pos;
        }
        size_t start = pos;
        while (pos < n && (std::isdigit(static_cast<unsigned char>(text[pos])) ||
                           text[pos] == '.' || text[pos] == '/'))
            ++pos;
        std::string num = text.substr(start, pos - start);
        ExactReal value = num.empty() ? ExactReal(1) : parse_exact_real(num);
        if (neg) value = -value;
        int slot = 0;
        if (pos < n && (text[pos] == 'i' || text[pos] == 'j' || text[pos] == 'k')) {
            slot = text[pos] == 'i' ? 1 : (text[pos] == 'j' ? 2 : 3);
            ++pos;
        } else if (num.empty()) {
            throw std::invalid_argument("parse_exact_quaternion: dangling sign");
        }
        switch (slot) {
            case 0: acc.w += value; break;
            case 1: acc.x += value; break;
            case 2: acc.y += value; break;
            case 3: acc.z += value; break;
        }
        any = true;
    }
    if (!any) throw std::invalid_argument("parse_exact_quaternion: empty input");
    return acc;
}

} // namespace qhiso
