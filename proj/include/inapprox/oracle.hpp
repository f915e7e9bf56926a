#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "inapprox/approx.hpp"
#include "inapprox/convergent.hpp"

namespace inapprox {

/// lambda(S) = |S - r/n| * ||S theta - phi|| with certified enclosures.
struct LambdaResult {
    RationalInterval lambda;  // lambda(S)
    RationalInterval plain;   // |S| * ||S theta - phi||
    Int nearest;              // R, nearest integer to S theta - phi
    unsigned bits_used = 0;
};

/// Certified interval for lambda(S) of width < tolerance.  Precision doubles
/// until the distance-to-nearest-integer is unambiguous; if S theta - phi is
/// provably within 2^-max_bits of a half-integer the escalation fails.
inline LambdaResult lambda_S(const HurwitzianDescriptor& d,
                             const ReducedTarget& t, const Int& S,
                             const Rat& tolerance, unsigned max_bits = 4096) {
    if (S == 0) throw domain_error("lambda_S: S = 0");
    if (tolerance <= 0) throw domain_error("lambda_S: tolerance <= 0");
    for (unsigned bits = 96; bits <= max_bits; bits *= 2) {
        RationalInterval th = eval_interval(d, bits);
        // X = S theta - phi = ((S n - r) theta - m) / n
        Rat c = Rat(S * t.n - t.r) / t.n;
        RationalInterval X =
            RationalInterval::point(c) * th -
            RationalInterval::point(Rat(t.m, t.n));
        Rat mid = X.mid();
        Int R = mid.get_num() / mid.get_den();  // trunc; fix to nearest below
        {
            Rat fr = mid - Rat(R);
            if (fr >= Rat(1, 2)) R += 1;
            else if (fr < Rat(-1, 2)) R -= 1;
        }
        RationalInterval dist = (X - RationalInterval::point(Rat(R))).abs();
        if (dist.hi >= Rat(1, 2)) continue;  // straddles a half-integer: retry
        Rat wS = abs_rat(Rat(S) - Rat(t.r, t.n));
        RationalInterval lam{wS * dist.lo, wS * dist.hi};
        if (lam.width() >= tolerance) continue;
        Rat aS = abs_rat(Rat(S));
        return {lam, {aS * dist.lo, aS * dist.hi}, R, bits};
    }
    throw precision_exceeded(
        "lambda_S: S theta - phi is within 2^-max_bits of a half-integer");
}

/// One dyadic window of the liminf scan: the certified minimum of
/// |q| ||q theta - phi|| over |q| in [2^w, 2^{w+1}).
struct WindowMin {
    unsigned exponent = 0;
    RationalInterval min;
    std::int64_t argmin_q = 0;
};

struct ScanRecord {
    std::int64_t q_max = 0;
    std::vector<WindowMin> windows;
    std::vector<RationalInterval> envelope;  // running minima, per window
    RationalInterval global_min;
    std::int64_t global_argmin = 0;
};

/// Scans all q with 1 <= |q| <= q_max (both signs) in fixed point,
/// certifying every window minimum to width < tolerance.
inline ScanRecord liminf_scan(const HurwitzianDescriptor& d,
                              const ReducedTarget& t, std::int64_t q_max,
                              double tolerance = 1e-6) {
    if (q_max < 16) throw domain_error("liminf_scan: q_max < 16");
    if (tolerance <= 0) throw domain_error("liminf_scan: tolerance <= 0");
    // fixed-point scale: per-value slack is (2|q|+4) units, value slack
    // |q|(2|q|+4); pick F with 2 * q_max * (2 q_max + 4) < tol * 2^F
    unsigned F = 64;
    {
        double need = std::log2(2.0 * q_max * (2.0 * q_max + 4.0) / tolerance);
        while (F < need + 2) F += 32;
    }
    RationalInterval th = eval_interval(d, F + 4);
    Int scale = Int(1) << F;
    Int A;  // theta in [A, A+2] / 2^F
    mpz_fdiv_q(A.get_mpz_t(), Int(th.lo.get_num() * scale).get_mpz_t(),
               th.lo.get_den().get_mpz_t());
    Int B;  // phi in [B, B+4] / 2^F
    {
        Int num = t.r * A + t.m * scale;
        mpz_fdiv_q(B.get_mpz_t(), num.get_mpz_t(), Int(t.n).get_mpz_t());
    }

    ScanRecord rec;
    rec.q_max = q_max;
    Int tpos = -B, tneg = -B;  // q*A - B for q = 0 on both branches
    Int rem, d0, half = scale / 2, vlo, vhi;
    unsigned w = 0;
    Int best_lo, best_hi;
    std::int64_t best_q = 0;
    bool have = false;
    auto flush = [&](unsigned wexp) {
        WindowMin wm;
        wm.exponent = wexp;
        wm.argmin_q = best_q;
        wm.min = {Rat(best_lo, scale), Rat(best_hi, scale)};
        wm.min.lo.canonicalize();
        wm.min.hi.canonicalize();
        rec.windows.push_back(wm);
        have = false;
    };
    for (std::int64_t q = 1; q <= q_max; ++q) {
        if (q == (std::int64_t(1) << (w + 1))) { flush(w); ++w; }
        tpos += A;
        tneg -= A;
        Int slack = 2 * q + 4;
        for (int sgn = 0; sgn < 2; ++sgn) {
            const Int& T = sgn ? tneg : tpos;
            mpz_fdiv_r_2exp(rem.get_mpz_t(), T.get_mpz_t(), F);
            d0 = rem <= half ? rem : scale - rem;
            vhi = q * (d0 + slack);
            vlo = d0 > slack ? Int(q * (d0 - slack)) : Int(0);
            if (!have || vhi < best_hi) {
                best_hi = vhi;
                best_q = sgn ? -q : q;
            }
            if (!have || vlo < best_lo) best_lo = vlo;
            have = true;
        }
    }
    // only keep the trailing window if the scan covered all of it
    if (have && q_max == (std::int64_t(1) << (w + 1)) - 1) flush(w);
    // running-minimum envelope
    RationalInterval run;
    for (std::size_t i = 0; i < rec.windows.size(); ++i) {
        const auto& m = rec.windows[i].min;
        if (i == 0) {
            run = m;
            rec.global_argmin = rec.windows[i].argmin_q;
        } else {
            if (m.hi < run.hi) {
                run.hi = m.hi;
                rec.global_argmin = rec.windows[i].argmin_q;
            }
            if (m.lo < run.lo) run.lo = m.lo;
        }
        rec.envelope.push_back(run);
    }
    rec.global_min = run;
    return rec;
}

/// Outcome of the small-value classification of lambda(S).
struct Classification {
    bool first_alternative = false;  // (m+Rn, Sn-r) = g P_i held
    std::int64_t index = 0;          // i
    Int g;                           // multiplier (signed; |g| mod n is a unit)
    RationalInterval mu_i;           // mu interval when first_alternative
    Int d;                           // combination depth for the alternative
    Rat slack_bound;                 // w <= [0; b_{i+1}] for the alternative
    Int nearest;                     // R
    RationalInterval n2_lambda;
};

/// Classifies a certified small value n^2 lambda(S) < 1: finds (i, g) with
/// (m+Rn, Sn-r) = g P_i and checks n^2 lambda(S) = g^2 / mu_i, or (for
/// values in [1/2, 1)) the alternative (M,N) = g(d P_i + P_{i-1}).  The
/// search is an independent exhaustive scan over all convergents with
/// q_i <= |Sn - r|.
inline Classification classify_small(const HurwitzianDescriptor& d,
                                     const ReducedTarget& t, const Int& S,
                                     const Rat& tolerance = Rat(1, 1000000000)) {
    LambdaResult lr = lambda_S(d, t, S, tolerance / (2 * t.n * t.n));
    RationalInterval n2lam{t.n * t.n * lr.lambda.lo, t.n * t.n * lr.lambda.hi};
    if (n2lam.lo >= 1 || n2lam.hi <= 0)
        throw domain_error("classify_small: certified n^2 lambda(S) outside (0,1)");
    Int N = S * t.n - t.r;
    Int M = t.m + lr.nearest * t.n;
    Int absN = abs(N);

    Classification c;
    c.nearest = lr.nearest;
    c.n2_lambda = n2lam;

    std::vector<Convergent> convs;
    {
        Int pm1 = 0, qm1 = 1, p = 1, q = 0;
        for (long long i = 0; q <= absN; ++i) {
            Int b = d.partial_quotient(i);
            Int pn = b * p + pm1, qn = b * q + qm1;
            pm1 = p; qm1 = q; p = pn; q = qn;
            if (q > absN) break;
            convs.push_back({i, p, q});
        }
    }
    auto unit_g = [&](const Int& g) {
        return gcd(g, Int(t.n)) == 1;
    };
    // first alternative: exact multiple of a convergent
    for (const auto& cv : convs) {
        if (cv.q == 0 || N % cv.q != 0) continue;
        Int g = N / cv.q;
        if (g * cv.p != M || !unit_g(g)) continue;
        unsigned bits = 64;
        RationalInterval mu_iv = mu(d, cv.index, bits);
        while (mu_iv.width() * Rat(g * g) >= tolerance / 4 && bits < 4096) {
            bits *= 2;
            mu_iv = mu(d, cv.index, bits);
        }
        RationalInterval rhs{Rat(g * g) / mu_iv.hi, Rat(g * g) / mu_iv.lo};
        // the identity is exact; enclosures of the same value must overlap
        if (!n2lam.overlaps(rhs))
            throw std::logic_error("classify_small: mu identity violated");
        c.first_alternative = true;
        c.index = cv.index;
        c.g = g;
        c.mu_i = mu_iv;
        return c;
    }
    if (n2lam.hi < Rat(1, 2))
        throw std::logic_error(
            "classify_small: no convergent match for n^2 lambda(S) < 1/2 "
            "(the lemma guarantees one; implementation bug)");
    // second alternative: (M,N) = g (d P_i + P_{i-1}), d = 1 or b_{i+1}-1
    for (std::size_t u = 1; u < convs.size(); ++u) {
        const auto& cv = convs[u];
        const auto& pv = convs[u - 1];
        Int b_next = d.partial_quotient(cv.index + 1);
        if (b_next == 1) continue;
        for (int which = 0; which < 2; ++which) {
            Int dd = which == 0 ? Int(1) : Int(b_next - 1);
            Int cq = dd * cv.q + pv.q, cp = dd * cv.p + pv.p;
            if (cq == 0 || N % cq != 0) continue;
            Int g = N / cq;
            if (g * cp != M || !unit_g(g)) continue;
            c.first_alternative = false;
            c.index = cv.index;
            c.g = g;
            c.d = dd;
            c.slack_bound = Rat(1) / Rat(b_next);
            // n^2 lambda >= g^2 (1 - w) for some 0 <= w <= [0; b_{i+1}]
            if (n2lam.hi < Rat(g * g) * (1 - c.slack_bound))
                throw std::logic_error(
                    "classify_small: alternative bound violated");
            return c;
        }
    }
    throw std::logic_error("classify_small: no classification found");
}

} // namespace inapprox
