#pragma once

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "inapprox/approx.hpp"
#include "inapprox/oracle.hpp"

namespace inapprox {

/// One decision record of a (theta family, n, r, m) sweep, stored as JSONL.
struct SweepRow {
    std::string kind;          // "e", "exp_inv", "exp2over", "tanh_inv"
    std::int64_t param = 0;    // s or k (0 for "e")
    std::int64_t n = 0, r = 0, m = 0;
    std::string decision;      // tag_name of the result
    std::string n2l;           // "p/q" when decision == "value"
    std::int64_t witness_j = 0, witness_g = 0;  // when decision == "zero"
    std::string upper, lower;  // when decision == "bound"
    std::string oracle;        // "consistent"/"inconsistent"/"unchecked"

    std::string key() const {
        std::ostringstream os;
        os << kind << ":" << param << ":" << n << ":" << r << ":" << m;
        return os.str();
    }
};

inline void to_json(nlohmann::json& j, const SweepRow& x) {
    j = nlohmann::json{{"kind", x.kind},   {"param", x.param},
                       {"n", x.n},         {"r", x.r},
                       {"m", x.m},         {"decision", x.decision}};
    if (x.decision == "value") j["n2l"] = x.n2l;
    if (x.decision == "zero") {
        j["witness_j"] = x.witness_j;
        j["witness_g"] = x.witness_g;
    }
    if (x.decision == "bound") {
        j["lower"] = x.lower;
        if (!x.upper.empty()) j["upper"] = x.upper;
    }
    if (!x.oracle.empty()) j["oracle"] = x.oracle;
}

inline void from_json(const nlohmann::json& j, SweepRow& x) {
    j.at("kind").get_to(x.kind);
    j.at("param").get_to(x.param);
    j.at("n").get_to(x.n);
    j.at("r").get_to(x.r);
    j.at("m").get_to(x.m);
    j.at("decision").get_to(x.decision);
    if (j.contains("n2l")) j.at("n2l").get_to(x.n2l);
    if (j.contains("witness_j")) j.at("witness_j").get_to(x.witness_j);
    if (j.contains("witness_g")) j.at("witness_g").get_to(x.witness_g);
    if (j.contains("upper")) j.at("upper").get_to(x.upper);
    if (j.contains("lower")) j.at("lower").get_to(x.lower);
    if (j.contains("oracle")) j.at("oracle").get_to(x.oracle);
}

inline SweepRow make_row(const std::string& kind, std::int64_t param,
                         const ReducedTarget& t, const ApproxResult& res) {
    SweepRow row;
    row.kind = kind;
    row.param = param;
    row.n = t.n;
    row.r = t.r;
    row.m = t.m;
    row.decision = tag_name(res.tag);
    if (res.n2l) row.n2l = res.n2l->get_str();
    if (res.witness) {
        row.witness_j = res.witness->index;
        row.witness_g = res.witness->multiplier;
    }
    if (res.lower) row.lower = res.lower->get_str();
    if (res.upper) row.upper = res.upper->get_str();
    return row;
}

/// Heuristic consistency label between the algebraic decision and the
/// brute-force scan.  liminf is asymptotic, so the label is an estimate with
/// deliberately loose bands, never a proof.
inline std::string oracle_label(const HurwitzianDescriptor& d,
                                const ReducedTarget& t,
                                const std::string& decision,
                                const std::string& n2l_str,
                                std::int64_t qmax = 1 << 16) {
    if (decision != "zero" && decision != "value") return "unchecked";
    ScanRecord rec = liminf_scan(d, t, qmax, 1e-6);
    if (rec.windows.size() < 2) return "unchecked";
    Rat n2 = Rat(t.n) * t.n;
    if (decision == "zero") {
        // zeros converge slowly (leaping q grow superexponentially); accept a
        // tiny global minimum or an envelope that improved in the second half
        if (n2 * rec.global_min.hi < Rat(1, 4)) return "consistent";
        std::size_t half = rec.windows.size() / 2;
        Rat first_best = rec.windows[0].min.hi;
        for (std::size_t i = 1; i < half; ++i)
            first_best = std::min(first_best, rec.windows[i].min.hi);
        Rat second_best = rec.windows[half].min.hi;
        for (std::size_t i = half + 1; i < rec.windows.size(); ++i)
            second_best = std::min(second_best, rec.windows[i].min.hi);
        return second_best < first_best ? "consistent" : "inconsistent";
    }
    // value targets settle fast: the minimum over the last few windows should
    // sit in a wide band around the claimed n^2 L
    RationalInterval tail = rec.windows.back().min;
    for (std::size_t k = 2; k <= 3 && k <= rec.windows.size(); ++k) {
        const auto& w = rec.windows[rec.windows.size() - k].min;
        tail = {std::min(tail.lo, w.lo), std::max(tail.hi, w.hi)};
    }
    Rat v(n2l_str);
    v.canonicalize();
    RationalInterval scaled{n2 * tail.lo, n2 * tail.hi};
    RationalInterval band{v * Rat(3, 4), v * Rat(3, 2)};
    return scaled.overlaps(band) ? "consistent" : "inconsistent";
}

/// One sweep job: decide every reduced target of one (descriptor, n) pair.
struct SweepJob {
    std::string kind;
    std::int64_t param = 0;
    HurwitzianDescriptor descriptor;
    std::int64_t n = 0;
};

/// Runs jobs across `workers` threads (one ScanContext per job) and returns
/// all rows sorted by key.  Targets already listed in `done` are skipped.
inline std::vector<SweepRow> run_sweep(const std::vector<SweepJob>& jobs,
                                       const std::set<std::string>& done,
                                       unsigned workers = 1) {
    if (workers < 1) workers = 1;
    std::vector<std::vector<SweepRow>> parts(jobs.size());
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            const SweepJob& job = jobs[i];
            ScanContext ctx(job.descriptor, job.n);
            for (std::int64_t r = 0; r < job.n; ++r)
                for (std::int64_t m = 0; m < job.n; ++m) {
                    if (std::gcd(std::gcd(r, m), job.n) != 1) continue;
                    ReducedTarget t{r, m, job.n};
                    SweepRow probe;
                    probe.kind = job.kind;
                    probe.param = job.param;
                    probe.n = job.n;
                    probe.r = r;
                    probe.m = m;
                    if (done.count(probe.key())) continue;
                    parts[i].push_back(
                        make_row(job.kind, job.param, t, ctx.value(t)));
                }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w + 1 < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    std::vector<SweepRow> rows;
    for (auto& p : parts)
        rows.insert(rows.end(), p.begin(), p.end());
    std::sort(rows.begin(), rows.end(),
              [](const SweepRow& a, const SweepRow& b) {
                  return a.key() < b.key();
              });
    return rows;
}

/// Reads existing JSONL rows (for resume); missing file yields empty.
inline std::vector<SweepRow> read_jsonl(const std::string& path) {
    std::vector<SweepRow> rows;
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        rows.push_back(nlohmann::json::parse(line).get<SweepRow>());
    }
    return rows;
}

/// Writes rows as JSONL via a temp file and atomic rename.
inline void write_jsonl(const std::string& path,
                        const std::vector<SweepRow>& rows) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp);
        for (const auto& r : rows) out << nlohmann::json(r).dump() << "\n";
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("rename failed: " + tmp + " -> " + path);
}

// ---------------------------------------------------------------------------
// Cross-checks used by the verification suite and the CLI `verify` command.

struct CheckResult {
    std::string name;
    bool ok = false;
    std::string detail;
};

/// Published table of s values (mod n) with L(e^{1/s}, 1/n) = 0, for the six
/// denominators 23..49 with newly found zeros.  Each entry is recomputed with
/// both the congruence-table decision and the factored leaper scan.
inline CheckResult check_zero_table() {
    const std::map<std::int64_t, std::set<std::int64_t>> table = {
        {23, {12}},         {25, {13, 23}}, {29, {15}},
        {43, {25}},         {47, {11, 17, 33, 43}}, {49, {1, 22, 46}}};
    CheckResult out{"zero-table", true, ""};
    for (const auto& [n, svals] : table)
        for (std::int64_t s : svals) {
            ReducedTarget t{0, 1, n};
            HurwitzianDescriptor d = exp_inv_theta(static_cast<long>(s));
            bool slow = ScanContext(d, n).is_zero(t).is_zero();
            bool fast = fast_is_zero_exp(s, t).result.is_zero();
            if (!slow || !fast) {
                out.ok = false;
                std::ostringstream os;
                os << "n=" << n << " s=" << s << " slow=" << slow
                   << " fast=" << fast << "; ";
                out.detail += os.str();
            }
        }
    if (out.ok) out.detail = "all table entries decide zero";
    return out;
}

/// The multiplicative closure: if L(theta, phi) = 0 then L(theta, g phi) = 0
/// for every unit g.
inline CheckResult check_unit_closure(const HurwitzianDescriptor& d,
                                      std::int64_t n) {
    CheckResult out{"unit-closure", true, ""};
    ScanContext ctx(d, n);
    for (std::int64_t r = 0; r < n; ++r)
        for (std::int64_t m = 0; m < n; ++m) {
            if (std::gcd(std::gcd(r, m), n) != 1) continue;
            ReducedTarget t{r, m, n};
            if (!ctx.is_zero(t).is_zero()) continue;
            for (const ReducedTarget& u : closure_targets(t)) {
                if (u.n != n) continue;  // reduced to a smaller denominator
                if (!ctx.is_zero(u).is_zero()) {
                    out.ok = false;
                    std::ostringstream os;
                    os << "closure broken at n=" << n << " (" << r << ","
                       << m << ") -> (" << u.r << "," << u.m << "); ";
                    out.detail += os.str();
                }
            }
        }
    if (out.ok) out.detail = "zero set closed under unit multiples";
    return out;
}

/// The two guaranteed-zero families for odd n.
inline CheckResult check_special_zeros(std::int64_t n_max = 15) {
    CheckResult out{"special-zero-families", true, ""};
    for (std::int64_t n = 3; n <= n_max; n += 2)
        for (std::int64_t m = 1; m < n; ++m) {
            if (std::gcd(m, n) != 1) continue;
            for (auto& [d, t] : special_zero_families(n, m)) {
                if (!is_zero(d, t).is_zero()) {
                    out.ok = false;
                    std::ostringstream os;
                    os << d.name << " n=" << n << " m=" << m << " not zero; ";
                    out.detail += os.str();
                }
            }
        }
    if (out.ok) out.detail = "both families zero for all odd n <= limit";
    return out;
}

/// Leaper period lengths: always a divisor of 2n, equal to 2n exactly when
/// gcd(n, 2s) = 1, and a divisor of n for even n.
inline CheckResult check_leaper_periods(std::int64_t n_max = 40,
                                        std::int64_t s_max = 8) {
    CheckResult out{"leaper-periods", true, ""};
    for (std::int64_t s = 1; s <= s_max; ++s)
        for (std::int64_t n = 2; n <= n_max; ++n) {
            auto info = leaper_period(s, n);
            std::size_t len = info.period_len();
            bool ok = (2 * static_cast<std::size_t>(n)) % len == 0;
            if (std::gcd(n, 2 * s) == 1)
                ok = ok && len == 2 * static_cast<std::size_t>(n);
            if (n % 2 == 0) ok = ok && static_cast<std::size_t>(n) % len == 0;
            if (!ok) {
                out.ok = false;
                std::ostringstream os;
                os << "s=" << s << " n=" << n << " len=" << len << "; ";
                out.detail += os.str();
            }
        }
    if (out.ok) out.detail = "period divisibility as predicted";
    return out;
}

/// Fast factored decision vs. the period-table decision, over a grid.
inline CheckResult check_fast_vs_scan(std::int64_t n_max = 30,
                                      std::int64_t s_max = 4) {
    CheckResult out{"fast-vs-scan", true, ""};
    for (std::int64_t s = 1; s <= s_max; ++s) {
        HurwitzianDescriptor d = exp_inv_theta(static_cast<long>(s));
        for (std::int64_t n = 2; n <= n_max; ++n) {
            ScanContext ctx(d, n);
            for (std::int64_t r = 0; r < n; ++r)
                for (std::int64_t m = 0; m < n; ++m) {
                    if (std::gcd(std::gcd(r, m), n) != 1) continue;
                    ReducedTarget t{r, m, n};
                    bool slow = ctx.is_zero(t).is_zero();
                    bool fast = fast_is_zero_exp(s, t).result.is_zero();
                    if (slow != fast) {
                        out.ok = false;
                        std::ostringstream os;
                        os << "disagree s=" << s << " n=" << n << " r=" << r
                           << " m=" << m << " slow=" << slow << "; ";
                        out.detail += os.str();
                    }
                }
        }
    }
    if (out.ok) out.detail = "factored and table decisions agree";
    return out;
}

inline std::vector<CheckResult> run_all_checks() {
    std::vector<CheckResult> out;
    out.push_back(check_zero_table());
    out.push_back(check_unit_closure(builtin_descriptor(BuiltinKind::e), 25));
    out.push_back(check_special_zeros());
    out.push_back(check_leaper_periods());
    out.push_back(check_fast_vs_scan());
    return out;
}

} // namespace inapprox
