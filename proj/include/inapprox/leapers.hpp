#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "inapprox/periods.hpp"

namespace inapprox {

namespace detail {

inline std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t n) {
    return static_cast<std::int64_t>(
        static_cast<__int128>(a) * b % n);
}

} // namespace detail

/// Streams the leapers L_j = P_{3j} of e^{1/s} reduced mod n:
///   L_{-1} = (1, -1), L_0 = (1, 1), L_{j+1} = A_j L_j + L_{j-1},
/// with k = 2s and A_j = (2j+1) k  (Perron's pattern recurrence for
/// (a_i, 1, 1) gives the coefficient 2 a_i + 2 = (2j+1) 2s).
struct LeaperState {
    std::int64_t s, n, k;
    std::int64_t j = 0;       // index of `cur`
    ModPair prev, cur;        // L_{j-1}, L_j

    LeaperState(std::int64_t s_, std::int64_t n_)
        : s(s_), n(n_), k((2 * s_) % n_) {
        if (s < 1) throw domain_error("leaper: s < 1");
        if (n < 2) throw domain_error("leaper: modulus < 2");
        prev = {1 % n, (n - 1) % n};
        cur = {1 % n, 1 % n};
    }

    std::int64_t coeff() const {  // A_j mod n
        return detail::mulmod((2 * j + 1) % n, k, n);
    }

    void step() {
        std::int64_t a = coeff();
        ModPair next{(detail::mulmod(a, cur.a, n) + prev.a) % n,
                     (detail::mulmod(a, cur.b, n) + prev.b) % n};
        prev = cur;
        cur = next;
        ++j;
    }
};

/// j-th leaper of e^{1/s} mod n (j >= -1).
inline ModPair leaper_mod(std::int64_t s, std::int64_t n, std::int64_t j) {
    if (j < -1) throw domain_error("leaper_mod: index < -1");
    LeaperState st(s, n);
    if (j == -1) return st.prev;
    while (st.j < j) st.step();
    return st.cur;
}

/// (P_j, -Q_j) mod n.
inline ModPair star(const ModPair& p, std::int64_t n) {
    return {p.a, (n - p.b) % n};
}

/// Completely periodic period of the leapers of e^{1/s} mod n.  The period
/// length always divides 2n (and divides n for even n); this is verified by
/// direct simulation, never assumed.
inline PeriodInfo<ModPair> leaper_period(std::int64_t s, std::int64_t n) {
    LeaperState st(s, n);
    std::vector<ModPair> seq;  // seq[j] = L_j
    std::size_t span = static_cast<std::size_t>(2 * n);
    seq.reserve(2 * span + 2);
    for (std::size_t t = 0; t < 2 * span + 2; ++t) {
        seq.push_back(st.cur);
        st.step();
    }
    // confirm 2n is a period (A_j has j-period n, so checking one full
    // window plus the wrap of the seed pair suffices)
    for (std::size_t t = 0; t + span < seq.size(); ++t)
        if (seq[t] != seq[t + span])
            throw budget_exceeded("leaper_period: 2n is not a period (unexpected)");
    auto info = detail::minimize_period(seq, 0, span);
    info.completely_periodic = true;
    return info;
}

/// (-1)^j (Q_j, P_j) mod n for the j-th leaper (P_j, Q_j) of e^{1/s};
/// equals the j-th leaper of e^{1/(n-s)}.
inline ModPair leaper_reflect(std::int64_t s, std::int64_t n, std::int64_t j) {
    if (s < 1 || s >= n) throw domain_error("leaper_reflect: requires 1 <= s < n");
    ModPair L = leaper_mod(s, n, j);
    ModPair m{L.b, L.a};
    if (j >= 0 && j % 2 == 1) m = {(n - m.a) % n, (n - m.b) % n};
    if (j == -1) m = {(n - m.a) % n, (n - m.b) % n};
    return m;
}

/// Zero-witness index modulo one prime-power (or composite) factor.
struct CrtWitness {
    std::int64_t r;        // witness residue (j = 2r is the leaper index)
    std::int64_t modulus;  // n_i
};

/// CRT composition of two even-index zero witnesses: r == r_i (mod n_i)
/// for coprime n_1, n_2, so Q_{2r} == 0 mod n_1 n_2.
inline CrtWitness crt_combine(const CrtWitness& w1, const CrtWitness& w2) {
    std::int64_t n1 = w1.modulus, n2 = w2.modulus;
    if (n1 < 1 || n2 < 1) throw domain_error("crt_combine: modulus < 1");
    if (std::gcd(n1, n2) != 1)
        throw domain_error("crt_combine: moduli not coprime");
    // extended gcd: u*n1 + v*n2 = 1
    std::int64_t a = n1, b = n2, u0 = 1, u1 = 0;
    while (b != 0) {
        std::int64_t q = a / b;
        std::int64_t t = a - q * b; a = b; b = t;
        t = u0 - q * u1; u0 = u1; u1 = t;
    }
    // a == 1, u0 * n1 == 1 (mod n2)
    std::int64_t nn = n1 * n2;
    std::int64_t diff = ((w2.r - w1.r) % n2 + n2) % n2;
    std::int64_t step = detail::mulmod(((u0 % n2) + n2) % n2, diff, n2);
    std::int64_t r = (w1.r % n1 + detail::mulmod(step, n1 % nn, nn)) % nn;
    r = ((r % nn) + nn) % nn;
    return {r, nn};
}

} // namespace inapprox
