#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "inapprox/rational.hpp"

namespace inapprox {

/// One entry of the repeating block: a constant partial quotient, or an
/// arithmetic progression f(j) (polynomial in the block counter j with
/// rational coefficients, integer-valued and eventually increasing).
struct CycleEntry {
    struct Const {
        Int value;  // >= 1
    };
    struct Progression {
        std::vector<Rat> coeffs;  // ascending powers of j, degree >= 1

        Rat eval_rat(const Int& j) const {
            Rat acc = 0;
            for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
                acc = acc * j + *it;
            return acc;
        }
        Int eval(const Int& j) const {
            Rat v = eval_rat(j);
            if (v.get_den() != 1)
                throw domain_error("Progression: non-integer value at j=" +
                                   j.get_str());
            return v.get_num();
        }
        unsigned degree() const {
            std::size_t d = coeffs.size();
            while (d > 1 && coeffs[d - 1] == 0) --d;
            return static_cast<unsigned>(d - 1);
        }
    };

    std::variant<Const, Progression> entry;

    static CycleEntry constant(Int v) { return {Const{std::move(v)}}; }
    static CycleEntry linear(Rat a1, Rat a0) {
        return {Progression{{std::move(a0), std::move(a1)}}};
    }

    bool is_progression() const {
        return std::holds_alternative<Progression>(entry);
    }
    const Progression& progression() const {
        return std::get<Progression>(entry);
    }

    /// Partial quotient this entry emits in repetition block j.
    Int value_at(const Int& j) const {
        if (auto* c = std::get_if<Const>(&entry)) return c->value;
        return std::get<Progression>(entry).eval(j);
    }
};

/// Symbolic continued fraction of a Hurwitzian number:
///   [b0; preperiod..., (cycle(j))_{j=start_j}^inf ].
/// A cycle with no Progression denotes a quadratic irrational.
struct HurwitzianDescriptor {
    Int b0;
    std::vector<Int> preperiod;   // b_1 .. b_P, each >= 1
    std::vector<CycleEntry> cycle;  // nonempty
    Int start_j = 1;              // first progression argument (>= 0)
    std::string name;             // for diagnostics/CLI output

    std::size_t cycle_length() const { return cycle.size(); }

    bool has_progression() const {
        for (const auto& e : cycle)
            if (e.is_progression()) return true;
        return false;
    }

    /// Cycle position of partial-quotient index i (valid for
    /// i >= preperiod.size(); i - preperiod.size() - 1 may be -1, which
    /// wraps to the last cycle position).
    std::size_t cycle_pos(long long i) const {
        long long len = static_cast<long long>(cycle.size());
        long long off = i - static_cast<long long>(preperiod.size()) - 1;
        return static_cast<std::size_t>(((off % len) + len) % len);
    }

    /// b_i of the denoted expansion (i >= 0).
    Int partial_quotient(long long i) const {
        if (i < 0) throw domain_error("partial_quotient: index < 0");
        if (i == 0) return b0;
        auto p = static_cast<long long>(preperiod.size());
        if (i <= p) return preperiod[static_cast<std::size_t>(i - 1)];
        long long off = i - p - 1;
        auto len = static_cast<long long>(cycle.size());
        Int j = start_j + Int(static_cast<long>(off / len));
        return cycle[static_cast<std::size_t>(off % len)].value_at(j);
    }

    /// True when b_{i+1} sits at a Progression position, i.e. the convergent
    /// P_i is a leaper.  Only meaningful for i >= preperiod.size().
    bool is_leaping_index(long long i) const {
        if (i + 1 <= static_cast<long long>(preperiod.size())) return false;
        return cycle[cycle_pos(i + 1)].is_progression();
    }

    /// Checks the descriptor invariants: every emitted quotient (i >= 1) is a
    /// positive integer and every progression tends to +infinity.
    /// Integrality is checked on degree+2 consecutive points; positivity on
    /// all integers up to the Cauchy root bound, beyond which the positive
    /// leading coefficient decides.
    void validate() const {
        if (cycle.empty()) throw domain_error("descriptor: empty cycle");
        if (start_j < 0) throw domain_error("descriptor: start_j < 0");
        for (const auto& b : preperiod)
            if (b < 1) throw domain_error("descriptor: preperiod quotient < 1");
        for (const auto& e : cycle) {
            if (auto* c = std::get_if<CycleEntry::Const>(&e.entry)) {
                if (c->value < 1)
                    throw domain_error("descriptor: constant quotient < 1");
                continue;
            }
            const auto& f = e.progression();
            unsigned deg = f.degree();
            if (deg < 1)
                throw domain_error("descriptor: progression of degree 0");
            const Rat& lead = f.coeffs[deg];
            if (lead <= 0)
                throw domain_error(
                    "descriptor: progression leading coefficient <= 0");
            for (unsigned t = 0; t < deg + 2; ++t)
                (void)f.eval(start_j + Int(t));  // throws if non-integer
            // Cauchy bound: no real root beyond 1 + max |a_i/lead|.
            Rat bound = 0;
            for (unsigned t = 0; t < deg; ++t)
                bound = std::max(bound, abs_rat(f.coeffs[t] / lead));
            Int jmax(2);
            {
                Rat b1 = bound + 1;
                Int q = b1.get_num() / b1.get_den() + 1;
                if (q > jmax) jmax = q;
            }
            for (Int j = start_j; j <= jmax; ++j)
                if (f.eval(j) < 1)
                    throw domain_error(
                        "descriptor: progression value < 1 at j=" + j.get_str());
        }
    }
};

enum class BuiltinKind { e, exp_inv, exp_2_over, tanh_inv, all_ones };

/// Descriptor for one of the classical expansions.
///   e            Cotes:      [2; (1, 2j, 1)]
///   exp_inv(s)   e^{1/s}:    [1; ((2j-1)s - 1, 1, 1)],        s >= 2
///   exp_2_over(k) e^{2/k}:   even k -> e or exp_inv(k/2);
///                 odd k>=3:  [1; (3kj+s, 6k(2j+1), 3kj+5s+2, 1, 1)_{j=0}]
///                 k == 1:    e^2 = [7; (3j-1, 1, 1, 3j, 12j+6)]
///   tanh_inv(s)  tanh(1/s):  [0; ((2j-1)s)],                  s >= 1
///   all_ones     golden ratio [1; 1, 1, ...]
inline HurwitzianDescriptor builtin_descriptor(BuiltinKind kind, long param = 0) {
    HurwitzianDescriptor d;
    switch (kind) {
    case BuiltinKind::e:
        d.b0 = 2;
        d.cycle = {CycleEntry::constant(1), CycleEntry::linear(2, 0),
                   CycleEntry::constant(1)};
        d.name = "e";
        break;
    case BuiltinKind::exp_inv: {
        long s = param;
        if (s < 2)
            throw domain_error("exp_inv requires s >= 2 (s=1 is e; the "
                               "(2j-1)s-1 formula yields quotient 0)");
        d.b0 = 1;
        d.cycle = {CycleEntry::linear(2 * s, -s - 1), CycleEntry::constant(1),
                   CycleEntry::constant(1)};
        d.name = "exp_inv(" + std::to_string(s) + ")";
        break;
    }
    case BuiltinKind::exp_2_over: {
        long k = param;
        if (k < 1) throw domain_error("exp_2_over requires k >= 1");
        if (k == 2) return builtin_descriptor(BuiltinKind::e);
        if (k % 2 == 0) return builtin_descriptor(BuiltinKind::exp_inv, k / 2);
        if (k == 1) {
            // Stieltjes' e^2 expansion; the odd-k formula needs s >= 1.
            d.b0 = 7;
            d.cycle = {CycleEntry::linear(3, -1), CycleEntry::constant(1),
                       CycleEntry::constant(1), CycleEntry::linear(3, 0),
                       CycleEntry::linear(12, 6)};
            d.name = "exp_2_over(1)";
            break;
        }
        long s = (k - 1) / 2;
        d.b0 = 1;
        d.start_j = 0;
        d.cycle = {CycleEntry::linear(3 * k, s),
                   CycleEntry::linear(12 * k, 6 * k),
                   CycleEntry::linear(3 * k, 5 * s + 2), CycleEntry::constant(1),
                   CycleEntry::constant(1)};
        d.name = "exp_2_over(" + std::to_string(k) + ")";
        break;
    }
    case BuiltinKind::tanh_inv: {
        long s = param;
        if (s < 1) throw domain_error("tanh_inv requires s >= 1");
        d.b0 = 0;
        d.cycle = {CycleEntry::linear(2 * s, -s)};
        d.name = "tanh_inv(" + std::to_string(s) + ")";
        break;
    }
    case BuiltinKind::all_ones:
        d.b0 = 1;
        d.cycle = {CycleEntry::constant(1)};
        d.name = "all_ones";
        break;
    }
    d.validate();
    return d;
}

/// Descriptor whose value is e^{1/s}, accepting s = 1 (the e expansion).
/// The s >= 2 Euler pattern and the s = 1 Cotes pattern denote the same
/// family theta = e^{1/s}; the leaper recurrence covers both uniformly.
inline HurwitzianDescriptor exp_inv_theta(long s) {
    if (s == 1) return builtin_descriptor(BuiltinKind::e);
    return builtin_descriptor(BuiltinKind::exp_inv, s);
}

inline std::optional<BuiltinKind> parse_kind(const std::string& s) {
    if (s == "e") return BuiltinKind::e;
    if (s == "exp_inv") return BuiltinKind::exp_inv;
    if (s == "exp2over" || s == "exp_2_over") return BuiltinKind::exp_2_over;
    if (s == "tanh_inv") return BuiltinKind::tanh_inv;
    if (s == "all_ones") return BuiltinKind::all_ones;
    return std::nullopt;
}

} // namespace inapprox
