#pragma once

// Numeric codings shared by the whole library: Cantor pairing, cons-list
// sequence codes, canonical finite-set codes, and exact rationals.
// Every structured object (interval, tree node, CNF index) round-trips
// through these encoders so presentations serialize bit-exactly.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace cscs {

using Code = long long;

struct CodeOverflow : std::runtime_error {
    explicit CodeOverflow(const std::string& what) : std::runtime_error(what) {}
};

// Cantor pairing pi(a,b) = (a+b)(a+b+1)/2 + b.
inline Code pair_code(Code a, Code b) {
    if (a < 0 || b < 0) throw CodeOverflow("pair_code: negative argument");
    unsigned __int128 s = static_cast<unsigned __int128>(a) + static_cast<unsigned __int128>(b);
    unsigned __int128 v = s * (s + 1) / 2 + static_cast<unsigned __int128>(b);
    if (v > static_cast<unsigned __int128>(INT64_MAX)) throw CodeOverflow("pair_code: overflow");
    return static_cast<Code>(v);
}

inline std::pair<Code, Code> unpair_code(Code n) {
    if (n < 0) throw CodeOverflow("unpair_code: negative argument");
    // w = floor((sqrt(8n+1)-1)/2), then b = n - w(w+1)/2, a = w - b.
    unsigned __int128 nn = static_cast<unsigned __int128>(n);
    Code w = static_cast<Code>((std::sqrt(8.0 * static_cast<double>(n) + 1.0) - 1.0) / 2.0);
    while (static_cast<unsigned __int128>(w) * (w + 1) / 2 > nn) --w;
    while (static_cast<unsigned __int128>(w + 1) * (w + 2) / 2 <= nn) ++w;
    Code b = n - static_cast<Code>(static_cast<unsigned __int128>(w) * (w + 1) / 2);
    return {w - b, b};
}

// Zigzag bijection Z -> N, used for integer-valued point coordinates.
inline Code zigzag(long long z) { return z >= 0 ? 2 * z : -2 * z - 1; }
inline long long unzigzag(Code n) { return (n % 2 == 0) ? n / 2 : -(n + 1) / 2; }

// Sequence codes: nil = 0, cons(h, t) = pair(h, t) + 1.  Front of the list
// is the first element of the sequence.
inline Code seq_code(const std::vector<Code>& xs) {
    Code c = 0;
    for (auto it = xs.rbegin(); it != xs.rend(); ++it) c = pair_code(*it, c) + 1;
    return c;
}

inline std::vector<Code> seq_decode(Code c) {
    std::vector<Code> out;
    while (c != 0) {
        auto [h, t] = unpair_code(c - 1);
        out.push_back(h);
        c = t;
    }
    return out;
}

inline bool seq_valid(Code c) { return c >= 0; }

// Canonical finite sets: strictly increasing sequences.
inline Code set_code(std::vector<Code> xs) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return seq_code(xs);
}

inline std::vector<Code> set_decode(Code c) { return seq_decode(c); }

inline bool set_code_valid(Code c) {
    auto xs = seq_decode(c);
    for (size_t i = 1; i < xs.size(); ++i)
        if (xs[i - 1] >= xs[i]) return false;
    return true;
}

// Exact rationals on 64-bit numerator/denominator with 128-bit intermediates.
struct Rat {
    long long num = 0;
    long long den = 1;

    Rat() = default;
    Rat(long long n) : num(n), den(1) {}
    Rat(long long n, long long d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw CodeOverflow("Rat: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    static Rat from128(__int128 n, __int128 d) {
        if (d < 0) { n = -n; d = -d; }
        __int128 a = n < 0 ? -n : n;
        __int128 b = d;
        while (b) { __int128 t = a % b; a = b; b = t; }
        if (a > 1) { n /= a; d /= a; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw CodeOverflow("Rat: magnitude exceeds 64-bit after reduction");
        Rat r;
        r.num = static_cast<long long>(n);
        r.den = static_cast<long long>(d);
        return r;
    }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return from128(static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den,
                       static_cast<__int128>(a.den) * b.den);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return from128(static_cast<__int128>(a.num) * b.den - static_cast<__int128>(b.num) * a.den,
                       static_cast<__int128>(a.den) * b.den);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return from128(static_cast<__int128>(a.num) * b.num,
                       static_cast<__int128>(a.den) * b.den);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num == 0) throw CodeOverflow("Rat: division by zero");
        return from128(static_cast<__int128>(a.num) * b.den,
                       static_cast<__int128>(a.den) * b.num);
    }
    Rat operator-() const { Rat r; r.num = -num; r.den = den; return r; }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator<=(const Rat& a, const Rat& b) { return a < b || a == b; }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator>=(const Rat& a, const Rat& b) { return b <= a; }

    Rat abs() const { Rat r = *this; if (r.num < 0) r.num = -r.num; return r; }
    bool is_zero() const { return num == 0; }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

inline Rat pow2(int k) {
    // 2^k for possibly negative k
    if (k >= 0) {
        if (k > 62) throw CodeOverflow("pow2: exponent too large");
        return Rat(1LL << k);
    }
    if (k < -62) throw CodeOverflow("pow2: exponent too small");
    return Rat(1, 1LL << (-k));
}

// Compares q against d*sqrt(2) exactly (q, d rational, d >= 0): returns
// -1, 0, +1.  Used by the Lynn cylinder intervals and surd-tagged reals.
inline int cmp_rat_vs_sqrt2(const Rat& q, const Rat& d) {
    if (d.num == 0) return q.num < 0 ? -1 : (q.num == 0 ? 0 : 1);
    if (d.num < 0) throw CodeOverflow("cmp_rat_vs_sqrt2: negative scale");
    if (q.num <= 0) return -1;  // d*sqrt2 > 0
    // q^2 vs 2 d^2, cross multiplied
    __int128 lhs = static_cast<__int128>(q.num) * q.num * (static_cast<__int128>(d.den) * d.den);
    __int128 rhs = 2 * static_cast<__int128>(d.num) * d.num * (static_cast<__int128>(q.den) * q.den);
    if (lhs < rhs) return -1;
    if (lhs > rhs) return 1;
    return 0;  // only possible when d = 0 handled above; sqrt2 irrational
}

// Fixed enumeration of the positive rationals: n-th valid (num, den)
// coprime pair under the Cantor unpairing scan.
inline Rat nth_positive_rational(long long n) {
    long long seen = -1;
    for (Code c = 0;; ++c) {
        auto [a, b] = unpair_code(c);
        long long num = a + 1, den = b + 1;
        if (std::gcd(num, den) != 1) continue;
        if (++seen == n) return Rat(num, den);
    }
}

}  // namespace cscs
