#include "qhiso/quaternion.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <sstream>

namespace qhiso {

SimilarityClass similarity_representative(const Quaternion& q) {
    double n = abs(q);
    if (n == 0.0) throw std::domain_error("similarity_representative: zero quaternion");
    double c = q.w / n;
    c = std::clamp(c, -1.0, 1.0);
    return SimilarityClass{n, std::acos(c)};
}

bool same_class(const Quaternion& p, const Quaternion& q, double tol) {
    double np = abs(p), nq = abs(q);
    if (np == 0.0 || nq == 0.0) throw std::domain_error("same_class: zero quaternion");
    if (std::fabs(np - nq) > tol * std::max(1.0, np)) return false;
    return std::fabs(p.w / np - q.w / nq) <= tol;
}

Quaternion conjugator_to_upper_complex(const Quaternion& q) {
    double im = std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z);
    if (im == 0.0) return Quaternion::one();
    Quaternion n(0.0, q.x / im, q.y / im, q.z / im);
    // u = normalize(1 - i*n) rotates the axis n onto i; degenerate when n = -i.
    Quaternion u = Quaternion::one() - Quaternion::i() * n;
    double nu = abs(u);
    if (nu < 1e-12) return Quaternion::j();
    return u * (1.0 / nu);
}

std::string format_quaternion(const Quaternion& q) {
    const double comp[4] = {q.w, q.x, q.y, q.z};
    const char* unit[4] = {"", "i", "j", "k"};
    std::string out;
    for (int t = 0; t < 4; ++t) {
        if (comp[t] == 0.0) continue;
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", comp[t]);
        std::string term = buf;
        if (!out.empty() && term[0] != '-') out += "+";
        out += term;
        out += unit[t];
    }
    if (out.empty()) out = "0";
    return out;
}

namespace {

// One term: [sign][digits][i|j|k].  A bare unit letter means coefficient 1.
bool parse_term(const std::string& s, size_t& pos, Quaternion& acc) {
    size_t n = s.size();
    while (pos < n && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos >= n) return false;
    double sign = 1.0;
    if (s[pos] == '+' || s[pos] == '-') {
        if (s[pos] == '-') sign = -1.0;
        ++pos;
        while (pos < n && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    size_t start = pos;
    while (pos < n && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.' ||
                       s[pos] == 'e' || s[pos] == 'E' ||
                       ((s[pos] == '+' || s[pos] == '-') && pos > start &&
                        (s[pos - 1] == 'e' || s[pos - 1] == 'E')) ||
                       s[pos] == '/'))
        ++pos;
    std::string num = s.substr(start, pos - start);
    double value;
    if (num.empty()) {
        value = 1.0; // bare unit like "i" or "-j"
    } else if (num.find('/') != std::string::npos) {
        size_t slash = num.find('/');
        double p = std::stod(num.substr(0, slash));
        double qd = std::stod(num.substr(slash + 1));
        if (qd == 0.0) throw std::invalid_argument("parse_quaternion: zero denominator");
        value = p / qd;
    } else {
        size_t used = 0;
        value = std::stod(num, &used);
        if (used != num.size()) throw std::invalid_argument("parse_quaternion: bad number '" + num + "'");
    }
    int slot = 0;
    if (pos < n && (s[pos] == 'i' || s[pos] == 'j' || s[pos] == 'k')) {
        slot = s[pos] == 'i' ? 1 : (s[pos] == 'j' ? 2 : 3);
        ++pos;
    } else if (num.empty()) {
        throw std::invalid_argument("parse_quaternion: dangling sign");
    }
    double v = sign * value;
    switch (slot) {
        case 0: acc.w += v; break;
        case 1: acc.x += v; break;
        case 2: acc.y += v; break;
        case 3: acc.z += v; break;
    }
    return true;
}

} // namespace

Quaternion parse_quaternion(const std::string& text) {
    Quaternion acc;
    size_t pos = 0;
    bool any = false;
    while (pos < text.size()) {
        size_t before = pos;
        if (!parse_term(text, pos, acc)) break;
        any = true;
        if (pos == before) throw std::invalid_argument("parse_quaternion: stuck at '" + text + "'");
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    if (!any) throw std::invalid_argument("parse_quaternion: empty input");
    return acc;
}

} // namespace qhiso
