#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <ostream>
#include <string>

#include "inapprox/error.hpp"

namespace inapprox {

using Int = mpz_class;
using Rat = mpq_class;

/// 2^-bits as an exact rational.
inline Rat pow2_inv(unsigned bits) {
    Rat r = 1;
    mpz_ui_pow_ui(r.get_den().get_mpz_t(), 2, bits);
    return r;
}

inline Rat abs_rat(const Rat& x) { return x < 0 ? Rat(-x) : x; }

/// Closed interval with exact rational endpoints.  Encloses irrational
/// quantities (theta, mu_i, lambda(S)) to a requested width.
struct RationalInterval {
    Rat lo, hi;

    RationalInterval() = default;
    RationalInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw domain_error("RationalInterval: lo > hi");
    }
    static RationalInterval point(const Rat& v) { return {v, v}; }
    static RationalInterval hull(const Rat& a, const Rat& b) {
        return a <= b ? RationalInterval(a, b) : RationalInterval(b, a);
    }

    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }
    bool contains(const Rat& v) const { return lo <= v && v <= hi; }
    bool overlaps(const RationalInterval& o) const {
        return lo <= o.hi && o.lo <= hi;
    }

    RationalInterval operator+(const RationalInterval& o) const {
        return {lo + o.lo, hi + o.hi};
    }
    RationalInterval operator-(const RationalInterval& o) const {
        return {lo - o.hi, hi - o.lo};
    }
    RationalInterval operator*(const RationalInterval& o) const {
        Rat a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
        return {std::min({a, b, c, d}), std::max({a, b, c, d})};
    }
    /// Reciprocal; requires 0 outside the interval.
    RationalInterval inv() const {
        if (lo <= 0 && hi >= 0)
            throw domain_error("RationalInterval::inv: interval contains 0");
        return {1 / hi, 1 / lo};
    }
    RationalInterval abs() const {
        if (lo >= 0) return *this;
        if (hi <= 0) return {-hi, -lo};
        return {Rat(0), std::max<Rat>(-lo, hi)};
    }
};

inline std::ostream& operator<<(std::ostream& os, const RationalInterval& iv) {
    return os << "[" << iv.lo << ", " << iv.hi << "]";
}

/// A rational or +infinity (mu-limits along leaping classes are infinite).
struct ExtendedRat {
    bool is_inf = false;
    Rat value;  // meaningful when !is_inf

    static ExtendedRat inf() { return {true, Rat(0)}; }
    static ExtendedRat finite(Rat v) { return {false, std::move(v)}; }

    friend bool operator==(const ExtendedRat& a, const ExtendedRat& b) {
        if (a.is_inf || b.is_inf) return a.is_inf == b.is_inf;
        return a.value == b.value;
    }
    friend bool operator<(const ExtendedRat& a, const ExtendedRat& b) {
        if (b.is_inf) return !a.is_inf;
        if (a.is_inf) return false;
        return a.value < b.value;
    }
};

inline std::ostream& operator<<(std::ostream& os, const ExtendedRat& x) {
    if (x.is_inf) return os << "inf";
    return os << x.value;
}

} // namespace inapprox
