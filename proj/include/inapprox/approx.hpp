#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "inapprox/convergent.hpp"
#include "inapprox/leapers.hpp"
#include "inapprox/periods.hpp"

namespace inapprox {

/// phi = (r theta + m)/n in reduced form: gcd(r,m,n) = 1, 0 <= r,m < n, n >= 2.
struct ReducedTarget {
    std::int64_t r = 0, m = 0, n = 2;

    friend bool operator==(const ReducedTarget&, const ReducedTarget&) = default;
};

/// Divides out gcd(r,m,n) and normalizes residues into [0,n).  A target
/// reducing to n = 1 means phi lies in Z theta + Z, where the constant is
/// undefined.
inline ReducedTarget reduce(std::int64_t r, std::int64_t m, std::int64_t n) {
    if (n < 1) throw domain_error("reduce: n < 1");
    std::int64_t g = std::gcd(std::gcd(r, m), n);
    r /= g; m /= g; n /= g;
    if (n == 1)
        throw domain_error("reduce: denominator reduces to 1 (phi in Z*theta+Z)");
    r %= n; if (r < 0) r += n;
    m %= n; if (m < 0) m += n;
    return {r, m, n};
}

enum class DecisionTag { zero, nonzero, value, bound, unknown };

inline const char* tag_name(DecisionTag t) {
    switch (t) {
    case DecisionTag::zero: return "zero";
    case DecisionTag::nonzero: return "nonzero";
    case DecisionTag::value: return "value";
    case DecisionTag::bound: return "bound";
    case DecisionTag::unknown: return "unknown";
    }
    return "?";
}

/// Congruence witness for a zero decision: g * P_index == (m, -r) (mod n)
/// at a leaping index that recurs periodically.
struct ZeroWitness {
    std::int64_t index = 0;      // convergent or leaper subscript
    std::int64_t multiplier = 1; // g, invertible mod n
};

struct ApproxResult {
    DecisionTag tag = DecisionTag::unknown;
    std::optional<ZeroWitness> witness;       // zero
    std::optional<Rat> n2l;                   // value: n^2 L = 1/M in (0,1)
    std::optional<ExtendedRat> big_m;         // value: M
    std::vector<std::int64_t> class_offsets;  // value: matched period offsets
    std::optional<Rat> upper, lower;          // bound
    std::string reason;                       // unknown

    bool is_zero() const { return tag == DecisionTag::zero; }
};

/// Precomputed congruence tables for one (descriptor, modulus) pair.  Builds
/// the convergent period mod n once; zero decisions and exact values for any
/// (r, m) are then table lookups.  This is what makes full (r, m) sweeps and
/// the differential tests cheap.
class ScanContext {
public:
    ScanContext(HurwitzianDescriptor d, std::int64_t n)
        : d_(std::move(d)), n_(n) {
        if (!d_.has_progression())
            throw domain_error("ScanContext: descriptor needs at least one "
                               "Progression (bounded quotients have no leapers)");
        conv_ = convergent_mod_period(d_, n_);
        std::size_t clen = d_.cycle_length();
        std::size_t i0 = std::max<std::size_t>(conv_.preperiod_len,
                                               d_.preperiod.size());
        window_ = std::lcm(conv_.period_len(), clen);
        start_ = i0;
        for (std::int64_t g = 1; g < n_; ++g)
            if (std::gcd(g, n_) == 1) units_.push_back(g);
        mu_by_pos_.resize(clen);
        for (std::size_t p = 0; p < clen; ++p) mu_by_pos_[p] = mu_limit(d_, p);
        genform2_ = true;
        for (const auto& e : d_.cycle)
            if (!e.is_progression() &&
                std::get<CycleEntry::Const>(e.entry).value != 1)
                genform2_ = false;

        for (std::size_t w = 0; w < window_; ++w) {
            std::int64_t i = static_cast<std::int64_t>(start_ + w);
            ModPair p = pair_at(i);
            bool leap = d_.is_leaping_index(i);
            const ExtendedRat& mu = mu_by_pos_[d_.cycle_pos(i)];
            auto& info = g1_[key(p)];
            if (info.offsets.empty() || info.max_mu < mu) info.max_mu = mu;
            info.offsets.push_back(i);
            if (leap) {
                for (std::int64_t g : units_) {
                    ModPair gp{detail::mulmod(g, p.a, n_),
                               detail::mulmod(g, p.b, n_)};
                    zero_.try_emplace(key(gp), ZeroWitness{i, g});
                }
            }
        }
    }

    const HurwitzianDescriptor& descriptor() const { return d_; }
    std::int64_t modulus() const { return n_; }
    const PeriodInfo<ModPair>& convergent_period() const { return conv_; }
    const std::vector<std::int64_t>& units() const { return units_; }

    ModPair pair_at(std::int64_t i) const {  // P_i mod n, i >= preperiod
        std::size_t pre = conv_.preperiod_len;
        return conv_.entries[(static_cast<std::size_t>(i) - pre) %
                             conv_.period_len()];
    }

    /// Theorem-of-zero test: zero iff some leaping offset in the periodic
    /// window matches g * P == (m, -r) for a unit g.
    ApproxResult is_zero(const ReducedTarget& t) const {
        check_target(t);
        ApproxResult res;
        auto it = zero_.find(key(target_pair(t)));
        if (it != zero_.end()) {
            res.tag = DecisionTag::zero;
            res.witness = it->second;
        } else {
            res.tag = DecisionTag::nonzero;
        }
        return res;
    }

    /// Exact value n^2 L = 1/M when the theorems apply; Zero / BoundOnly /
    /// Unknown otherwise.
    ApproxResult value(const ReducedTarget& t) const {
        check_target(t);
        ApproxResult z = is_zero(t);
        if (z.is_zero()) return z;
        ApproxResult res;
        if (!genform2_) {
            res.tag = DecisionTag::unknown;
            res.reason = "cycle has constants > 1; the exact-value theorem "
                         "requires limsup c_i = 1";
            return res;
        }
        auto it = g1_.find(key(target_pair(t)));
        if (it == g1_.end()) {
            // no g=1 class matches: n^2 L >= 1 by the contrapositive of the
            // small-value theorem
            res.tag = DecisionTag::bound;
            res.lower = Rat(1);
            res.upper = coarse_upper_bound(t);
            return res;
        }
        const ExtendedRat& M = it->second.max_mu;
        if (M.is_inf) {
            // a leaping g=1 match would have decided zero above
            res.tag = DecisionTag::unknown;
            res.reason = "internal inconsistency: infinite M on nonzero target";
            return res;
        }
        if (M.value == 1) {
            res.tag = DecisionTag::unknown;
            res.reason = "M = 1: the exact-value theorem does not apply";
            return res;
        }
        res.tag = DecisionTag::value;
        res.big_m = M;
        res.n2l = 1 / M.value;
        res.class_offsets = it->second.offsets;
        return res;
    }

    /// min over units g of g^2 / (limsup mu over the g-matching class);
    /// absent when no class matches.
    std::optional<Rat> coarse_upper_bound(const ReducedTarget& t) const {
        check_target(t);
        ModPair tp = target_pair(t);
        std::optional<Rat> best;
        for (std::int64_t g : units_) {
            std::int64_t ginv = inv_mod(g, n_);
            ModPair want{detail::mulmod(ginv, tp.a, n_),
                         detail::mulmod(ginv, tp.b, n_)};
            auto it = g1_.find(key(want));
            if (it == g1_.end()) continue;
            const ExtendedRat& M = it->second.max_mu;
            Rat bound = M.is_inf ? Rat(0) : Rat(g * g) / M.value;
            if (!best || bound < *best) best = bound;
        }
        return best;
    }

    static std::int64_t inv_mod(std::int64_t a, std::int64_t n) {
        std::int64_t b = n, u0 = 1, u1 = 0, a0 = a;
        while (b != 0) {
            std::int64_t q = a0 / b;
            std::int64_t t = a0 - q * b; a0 = b; b = t;
            t = u0 - q * u1; u0 = u1; u1 = t;
        }
        if (a0 != 1 && a0 != -1) throw domain_error("inv_mod: not invertible");
        if (a0 == -1) u0 = -u0;
        return ((u0 % n) + n) % n;
    }

private:
    struct ClassInfo {
        ExtendedRat max_mu;
        std::vector<std::int64_t> offsets;
    };

    std::int64_t key(const ModPair& p) const { return p.a * n_ + p.b; }
    ModPair target_pair(const ReducedTarget& t) const {
        return {t.m % n_, (n_ - t.r) % n_};
    }
    void check_target(const ReducedTarget& t) const {
        if (t.n != n_) throw domain_error("target modulus != context modulus");
    }

    HurwitzianDescriptor d_;
    std::int64_t n_;
    PeriodInfo<ModPair> conv_;
    std::size_t start_ = 0, window_ = 0;
    bool genform2_ = false;
    std::vector<std::int64_t> units_;
    std::vector<ExtendedRat> mu_by_pos_;
    std::unordered_map<std::int64_t, ZeroWitness> zero_;
    std::unordered_map<std::int64_t, ClassInfo> g1_;
};

inline ApproxResult is_zero(const HurwitzianDescriptor& d,
                            const ReducedTarget& t) {
    return ScanContext(d, t.n).is_zero(t);
}

inline ApproxResult value(const HurwitzianDescriptor& d,
                          const ReducedTarget& t) {
    return ScanContext(d, t.n).value(t);
}

inline std::optional<Rat> coarse_upper_bound(const HurwitzianDescriptor& d,
                                             const ReducedTarget& t) {
    return ScanContext(d, t.n).coarse_upper_bound(t);
}

/// All g * phi for g = 1 .. n-1, reduced.
inline std::vector<ReducedTarget> closure_targets(const ReducedTarget& t) {
    std::vector<ReducedTarget> out;
    out.reserve(static_cast<std::size_t>(t.n - 1));
    for (std::int64_t g = 1; g < t.n; ++g)
        out.push_back(reduce(g * t.r, g * t.m, t.n));
    return out;
}

/// The two guaranteed-zero families for odd n:
///   L(e^{2/(n+1)}, m/n) = 0   and   L(e^{2/(n-1)}, -m theta / n) = 0.
inline std::vector<std::pair<HurwitzianDescriptor, ReducedTarget>>
special_zero_families(std::int64_t n, std::int64_t m) {
    if (n < 3 || n % 2 == 0)
        throw domain_error("special_zero_families: n must be odd >= 3");
    if (m % n == 0)
        throw domain_error("special_zero_families: m must not be 0 mod n");
    std::vector<std::pair<HurwitzianDescriptor, ReducedTarget>> out;
    out.emplace_back(builtin_descriptor(BuiltinKind::exp_2_over,
                                        static_cast<long>(n + 1)),
                     reduce(0, m, n));
    out.emplace_back(builtin_descriptor(BuiltinKind::exp_2_over,
                                        static_cast<long>(n - 1)),
                     reduce(-m, 0, n));
    return out;
}

// ---------------------------------------------------------------------------
// Fast zero decision for theta = e^{1/s} via the leaper recurrence.

/// Per prime-power-factor scan record.
struct FactorScan {
    std::int64_t q = 0;            // prime power
    std::uint64_t mults = 0;       // recurrence applications mod q
    std::vector<char> match;       // positions j in [0, 2q) with a unit match
    std::vector<std::int64_t> g;   // forced multiplier per position (0 = none)
    bool odd_symmetric = false;    // table built from the half-period symmetry
};

struct FastDecision {
    ApproxResult result;
    std::vector<FactorScan> factors;
    std::uint64_t total_mults = 0;
};

namespace detail {

inline bool unit_match(const ModPair& L, std::int64_t q, std::int64_t p,
                       std::int64_t m, std::int64_t negr, std::int64_t& g_out) {
    // solve g*L == (m, negr) mod q with g a unit; g is forced by the
    // invertible component (gcd(P,Q)=1, so one of them is a unit mod p)
    if (L.a % p != 0) {
        std::int64_t g = mulmod(ScanContext::inv_mod(L.a, q), m, q);
        if (g % p == 0) return false;
        if (mulmod(g, L.b, q) != negr % q) return false;
        g_out = g;
        return true;
    }
    if (L.b % p != 0) {
        std::int64_t g = mulmod(ScanContext::inv_mod(L.b, q), negr, q);
        if (g % p == 0) return false;
        if (mulmod(g, L.a, q) != m % q) return false;
        g_out = g;
        return true;
    }
    return false;  // cannot happen for genuine leapers (gcd(P,Q)=1)
}

inline std::vector<std::pair<std::int64_t, std::int64_t>>
prime_power_factors(std::int64_t n) {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;  // (p, p^e)
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        std::int64_t q = 1;
        while (n % p == 0) { n /= p; q *= p; }
        out.emplace_back(p, q);
    }
    if (n > 1) out.emplace_back(n, n);
    return out;
}

} // namespace detail

/// Decides L(e^{1/s}, phi) = 0 using the leaper recurrence mod each prime
/// power factor of n.  Odd factors q use the half-period symmetry
/// L_{K+j} == L_{K-j} and L_{q+j} == L*_j, costing floor(q/2) < q/2
/// recurrence applications; factors 2^e are scanned over a full period
/// (the symmetry needs an odd modulus).  Matches are combined across
/// factors by intersecting position sets modulo lcm(2q).
inline FastDecision fast_is_zero_exp(std::int64_t s, const ReducedTarget& t) {
    if (s < 1) throw domain_error("fast_is_zero_exp: s < 1");
    FastDecision out;
    std::int64_t n = t.n;
    std::uint64_t lcm_period = 1;
    for (auto [p, q] : detail::prime_power_factors(n)) {
        FactorScan fs;
        fs.q = q;
        std::size_t span = static_cast<std::size_t>(2 * q);
        std::vector<ModPair> table(span);
        if (p != 2) {
            fs.odd_symmetric = true;
            std::int64_t K = q / 2;  // (q-1)/2
            LeaperState st(s, q);
            table[0] = st.cur;
            for (std::int64_t j = 1; j <= K; ++j) {
                st.step();
                ++fs.mults;
                table[static_cast<std::size_t>(j)] = st.cur;
            }
            for (std::int64_t j = K + 1; j < q; ++j)  // L_{K+i} == L_{K-i}
                table[static_cast<std::size_t>(j)] =
                    table[static_cast<std::size_t>(2 * K - j)];
            for (std::int64_t j = 0; j < q; ++j)      // L_{q+i} == L*_i
                table[static_cast<std::size_t>(q + j)] =
                    star(table[static_cast<std::size_t>(j)], q);
        } else {
            LeaperState st(s, q);
            for (std::size_t j = 0; j < span; ++j) {
                table[j] = st.cur;
                st.step();
                ++fs.mults;
            }
            // wrap check: 2q is always a period mod 2^e
            if (st.cur != table[0])
                throw budget_exceeded("fast_is_zero_exp: 2q not a period mod 2^e");
        }
        fs.match.assign(span, 0);
        fs.g.assign(span, 0);
        std::int64_t negr = ((q - t.r % q) % q + q) % q;
        std::int64_t mq = t.m % q;
        for (std::size_t j = 0; j < span; ++j) {
            std::int64_t g = 0;
            if (detail::unit_match(table[j], q, p, mq, negr, g)) {
                fs.match[j] = 1;
                fs.g[j] = g;
            }
        }
        lcm_period = std::lcm(lcm_period, static_cast<std::uint64_t>(span));
        out.total_mults += fs.mults;
        out.factors.push_back(std::move(fs));
    }
    // intersect match positions across factors
    std::optional<std::int64_t> witness_j;
    for (std::uint64_t j = 0; j < lcm_period; ++j) {
        bool all = true;
        for (const auto& fs : out.factors)
            if (!fs.match[j % static_cast<std::uint64_t>(2 * fs.q)]) {
                all = false;
                break;
            }
        if (all) { witness_j = static_cast<std::int64_t>(j); break; }
    }
    if (!witness_j) {
        out.result.tag = DecisionTag::nonzero;
        return out;
    }
    // combine the per-factor multipliers into g mod n and verify directly
    std::int64_t g = 0, mod = 1;
    for (const auto& fs : out.factors) {
        std::int64_t gq = fs.g[static_cast<std::size_t>(*witness_j %
                                                        (2 * fs.q))];
        CrtWitness c = crt_combine({g, mod}, {gq, fs.q});
        g = c.r;
        mod = c.modulus;
    }
    ModPair L = leaper_mod(s, n, *witness_j);
    ModPair want{t.m % n, (n - t.r) % n};
    if (ModPair{detail::mulmod(g, L.a, n), detail::mulmod(g, L.b, n)} != want)
        throw domain_error("fast_is_zero_exp: witness verification failed");
    out.result.tag = DecisionTag::zero;
    out.result.witness = ZeroWitness{*witness_j, g};
    return out;
}

} // namespace inapprox
