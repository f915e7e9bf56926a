#pragma once

#include <vector>

#include "inapprox/descriptor.hpp"
#include "inapprox/rational.hpp"

namespace inapprox {

/// Exact convergent P_i = (p_i, q_i).  Seeds: P_{-2} = (0,1), P_{-1} = (1,0).
struct Convergent {
    long long index;
    Int p, q;
};

/// P_i via the recurrence P_{i+1} = b_{i+1} P_i + P_{i-1}.
inline Convergent convergent(const HurwitzianDescriptor& d, long long i) {
    if (i < -2) throw domain_error("convergent: index < -2");
    if (i == -2) return {-2, 0, 1};
    Int pm1 = 0, qm1 = 1;  // P_{-2}
    Int p = 1, q = 0;      // P_{-1}
    for (long long t = 0; t <= i; ++t) {
        Int b = d.partial_quotient(t);
        Int pn = b * p + pm1, qn = b * q + qm1;
        pm1 = p; qm1 = q; p = pn; q = qn;
    }
    return {i, p, q};
}

/// Evaluates the finite fraction [x0; x1, ..., xk].  All x_t >= 1 for t >= 1.
inline Rat finite_cf(const std::vector<Int>& x) {
    if (x.empty()) throw domain_error("finite_cf: empty");
    Rat v = x.back();
    for (std::size_t t = x.size() - 1; t-- > 0;) v = Rat(x[t]) + 1 / v;
    return v;
}

/// Interval containing theta with width < 2^-precision.  Endpoints are
/// consecutive convergents (theta lies strictly between them).
inline RationalInterval eval_interval(const HurwitzianDescriptor& d,
                                      unsigned precision) {
    if (precision < 1) throw domain_error("eval_interval: precision < 1");
    Rat eps = pow2_inv(precision);
    Int pm1 = 0, qm1 = 1, p = 1, q = 0;
    for (long long i = 0;; ++i) {
        Int b = d.partial_quotient(i);
        Int pn = b * p + pm1, qn = b * q + qm1;
        pm1 = p; qm1 = q; p = pn; q = qn;
        // width between P_{i-1} and P_i is 1/(q_{i-1} q_i)
        if (i >= 1 && Rat(Int(1), qm1 * q) < eps)
            return RationalInterval::hull(Rat(pm1, qm1), Rat(p, q));
    }
}

/// Interval of width < 2^-precision around
///   mu_i = [b_{i+1}; b_{i+2}, ...] + [0; b_i, ..., b_1]   (i >= 0).
/// The backward part is exact; the forward tail is bracketed by consecutive
/// truncations (they alternate around the value).
inline RationalInterval mu(const HurwitzianDescriptor& d, long long i,
                           unsigned precision) {
    if (i < 0) throw domain_error("mu: index < 0");
    Rat eps = pow2_inv(precision);
    // [0; b_i, b_{i-1}, ..., b_1]: innermost term is b_1
    Rat back = 0;
    for (long long t = 1; t <= i; ++t)
        back = 1 / (Rat(d.partial_quotient(t)) + back);
    // forward truncations via the convergent recurrence of the tail
    Int pm1 = 0, qm1 = 1, p = 1, q = 0;
    for (long long t = i + 1;; ++t) {
        Int b = d.partial_quotient(t);
        Int pn = b * p + pm1, qn = b * q + qm1;
        pm1 = p; qm1 = q; p = pn; q = qn;
        if (t > i + 1 && Rat(Int(1), qm1 * q) < eps) {
            auto fwd = RationalInterval::hull(Rat(pm1, qm1), Rat(p, q));
            return {fwd.lo + back, fwd.hi + back};
        }
    }
}

/// Exact limit of mu_i along the class of indices i with
/// cycle_pos(i) == offset.  An entry tending to infinity truncates the
/// fraction just before it; a Progression at position offset+1 makes the
/// whole limit infinite (the leaping classes).
inline ExtendedRat mu_limit(const HurwitzianDescriptor& d, std::size_t offset) {
    if (!d.has_progression())
        throw domain_error(
            "mu_limit: all-Const cycle (quadratic irrational) has bounded "
            "quotients; the limit classification does not apply");
    std::size_t len = d.cycle_length();
    if (offset >= len) throw domain_error("mu_limit: offset out of range");
    if (d.cycle[(offset + 1) % len].is_progression()) return ExtendedRat::inf();
    // forward: constants at offset+1, offset+2, ... up to the next Progression
    std::vector<Int> fwd;
    for (std::size_t t = 1; t <= len; ++t) {
        const auto& e = d.cycle[(offset + t) % len];
        if (e.is_progression()) break;
        fwd.push_back(std::get<CycleEntry::Const>(e.entry).value);
    }
    Rat forward = finite_cf(fwd);  // nonempty: offset+1 is a Const
    // backward: constants at offset, offset-1, ... down to the previous
    // Progression; empty when offset itself is a Progression position
    Rat backward = 0;
    std::vector<Int> bwd;
    for (std::size_t t = 0; t < len; ++t) {
        const auto& e = d.cycle[(offset + len - t) % len];
        if (e.is_progression()) break;
        bwd.push_back(std::get<CycleEntry::Const>(e.entry).value);
    }
    for (auto it = bwd.rbegin(); it != bwd.rend(); ++it)
        backward = 1 / (Rat(*it) + backward);
    return ExtendedRat::finite(forward + backward);
}

} // namespace inapprox
