#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "inapprox/convergent.hpp"
#include "inapprox/descriptor.hpp"

namespace inapprox {

/// Residue pair (a, b) mod n; stores the paper's (1,-1) as (1, n-1).
struct ModPair {
    std::int64_t a = 0, b = 0;

    friend bool operator==(const ModPair&, const ModPair&) = default;
    friend auto operator<=>(const ModPair&, const ModPair&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const ModPair& p) {
    return os << "(" << p.a << "," << p.b << ")";
}

/// Eventually periodic sequence summary: entries hold one minimal period
/// starting right after the preperiod.
template <typename T>
struct PeriodInfo {
    std::size_t preperiod_len = 0;
    std::vector<T> entries;
    bool completely_periodic = false;

    std::size_t period_len() const { return entries.size(); }

    /// Element at sequence position i (0-based from the first term).
    const T& at(std::size_t i, const std::vector<T>& prefix) const {
        if (i < preperiod_len) return prefix[i];
        return entries[(i - preperiod_len) % entries.size()];
    }
};

namespace detail {

/// Minimal period of seq on [start, start+known) given that `known` is a
/// period from `start` onward, then the minimal preperiod.
template <typename T>
PeriodInfo<T> minimize_period(const std::vector<T>& seq, std::size_t start,
                              std::size_t known) {
    std::size_t best = known;
    for (std::size_t d = 1; d <= known / 2; ++d) {
        if (known % d != 0) continue;
        bool ok = true;
        for (std::size_t i = start; i + d < start + known + d; ++i) {
            if (seq[i] != seq[i + d]) { ok = false; break; }
        }
        if (ok) { best = d; break; }
    }
    while (start > 0 && seq[start - 1] == seq[start - 1 + best]) --start;
    PeriodInfo<T> info;
    info.preperiod_len = start;
    info.completely_periodic = (start == 0);
    info.entries.assign(seq.begin() + static_cast<std::ptrdiff_t>(start),
                        seq.begin() + static_cast<std::ptrdiff_t>(start + best));
    return info;
}

inline std::int64_t mod_of(const Int& v, std::int64_t n) {
    Int r = v % n;
    if (r < 0) r += n;
    return r.get_si();
}

} // namespace detail

/// Period of the partial quotients {b_i mod n}, i >= 1.  A progression f of
/// denominator lcm D satisfies f(j+Dn) == f(j) (mod n), so
/// cycle_len * lcm_f(D_f * n) is a guaranteed period; the minimal one is
/// extracted from it.  `budget` caps that guaranteed period length.
inline PeriodInfo<std::int64_t> quotient_mod_period(
    const HurwitzianDescriptor& d, std::int64_t n,
    std::uint64_t budget = 1u << 22) {
    if (n < 2) throw domain_error("quotient_mod_period: modulus < 2");
    std::uint64_t jper = 1;
    for (const auto& e : d.cycle) {
        if (!e.is_progression()) continue;
        Int den = 1;
        for (const auto& c : e.progression().coeffs)
            den = den * c.get_den() / gcd(den, Int(c.get_den()));
        Int p = den * n;
        std::uint64_t pu = p.fits_ulong_p() ? p.get_ui() : budget + 1;
        jper = std::lcm(jper, pu);
        if (jper > budget)
            throw budget_exceeded("quotient_mod_period: guaranteed period " +
                                  std::to_string(jper) + " exceeds budget");
    }
    std::uint64_t guaranteed = jper * d.cycle_length();
    std::size_t pre = d.preperiod.size();
    if (guaranteed > budget || pre + 2 * guaranteed > budget * 4)
        throw budget_exceeded("quotient_mod_period: budget exceeded");
    std::vector<std::int64_t> seq;  // seq[t] = b_{t+1} mod n
    std::size_t need = pre + 2 * static_cast<std::size_t>(guaranteed);
    seq.reserve(need);
    for (std::size_t t = 0; t < pre; ++t)
        seq.push_back(detail::mod_of(d.preperiod[t], n));
    std::size_t len = d.cycle_length();
    for (std::size_t off = 0; seq.size() < need; ++off) {
        Int j = d.start_j + Int(static_cast<unsigned long>(off / len));
        seq.push_back(detail::mod_of(d.cycle[off % len].value_at(j), n));
    }
    return detail::minimize_period(seq, pre, static_cast<std::size_t>(guaranteed));
}

/// Period of the convergents {P_i mod n}, i >= 0.  Pairs are simulated with
/// the recurrence; states are sampled every quotient-period and the first
/// repetition bounds the period, which is then minimized.  The simulation is
/// capped at `budget_factor * n^2 * quotient_period` steps.
inline PeriodInfo<ModPair> convergent_mod_period(const HurwitzianDescriptor& d,
                                                 std::int64_t n,
                                                 std::uint64_t budget_factor = 8) {
    if (n < 2) throw domain_error("convergent_mod_period: modulus < 2");
    auto bq = quotient_mod_period(d, n);
    std::size_t tb = bq.period_len();
    std::size_t ib = bq.preperiod_len;  // quotients periodic from b_{ib+1}
    std::uint64_t max_steps = budget_factor * static_cast<std::uint64_t>(n) *
                              static_cast<std::uint64_t>(n) * tb + ib + 2 * tb;

    auto bmod = [&](std::size_t t) -> std::int64_t {  // b_{t+1} mod n
        if (t < ib) return 0;  // unused below; preperiod handled via seq index
        return bq.entries[(t - ib) % tb];
    };
    std::vector<ModPair> seq;  // seq[i] = P_i mod n
    ModPair prev{1 % n, 0};    // P_{-1}
    ModPair cur{detail::mod_of(d.b0, n), 1 % n};  // P_0
    seq.push_back(cur);
    std::map<std::pair<ModPair, ModPair>, std::size_t> seen;  // checkpoint -> k
    std::size_t first_rep_i = 0, period = 0;
    for (std::size_t i = 1;; ++i) {
        if (i > max_steps)
            throw budget_exceeded("convergent_mod_period: budget exceeded");
        std::size_t t = i - 1;  // quotient b_i = seq index t
        std::int64_t b =
            t < ib ? detail::mod_of(d.preperiod[t], n)  // same residues
                   : bmod(t);
        ModPair next{(b * cur.a + prev.a) % n, (b * cur.b + prev.b) % n};
        prev = cur;
        cur = next;
        seq.push_back(cur);
        // checkpoint at i == ib + k*tb
        if (i >= ib && (i - ib) % tb == 0) {
            auto key = std::make_pair(prev, cur);
            auto [it, inserted] = seen.emplace(key, i);
            if (!inserted) {
                first_rep_i = it->second;
                period = i - it->second;
                break;
            }
        }
    }
    // extend so minimize_period can compare one extra period
    while (seq.size() < first_rep_i + 2 * period + 1) {
        std::size_t i = seq.size();
        std::size_t t = i - 1;
        std::int64_t b = t < ib ? detail::mod_of(d.preperiod[t], n) : bmod(t);
        ModPair next{(b * cur.a + prev.a) % n, (b * cur.b + prev.b) % n};
        prev = cur;
        cur = next;
        seq.push_back(cur);
    }
    return detail::minimize_period(seq, first_rep_i, period);
}

} // namespace inapprox
