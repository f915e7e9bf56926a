// Command-line front end: continued-fraction expansion, congruence periods,
// zero/value decisions, sweeps and the brute-force scan.
#include <cstdint>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "inapprox/oracle.hpp"
#include "inapprox/sweep.hpp"

using namespace inapprox;

namespace {

struct ThetaOpt {
    std::string kind = "e";
    std::int64_t param = 0;

    HurwitzianDescriptor descriptor() const {
        auto k = parse_kind(kind);
        if (!k) throw CLI::ValidationError("--theta", "unknown kind: " + kind);
        if (*k == BuiltinKind::exp_inv)
            return exp_inv_theta(static_cast<long>(param));
        return builtin_descriptor(*k, static_cast<long>(param));
    }
};

void add_theta(CLI::App* cmd, ThetaOpt& th) {
    cmd->add_option("--theta", th.kind,
                    "theta family: e, exp_inv, exp2over, tanh_inv, all_ones")
        ->default_val("e");
    cmd->add_option("--param", th.param, "family parameter (s or k)");
}

struct PhiOpt {
    std::int64_t r = 0, m = 0, n = 0;
};

void add_phi(CLI::App* cmd, PhiOpt& ph) {
    cmd->add_option_function<std::string>(
           "--phi",
           [&ph](const std::string& v) {
               std::int64_t r, m, n;
               char c1, c2;
               std::istringstream is(v);
               if (!(is >> r >> c1 >> m >> c2 >> n) || c1 != '/' || c2 != '/')
                   throw CLI::ValidationError(
                       "--phi", "expected r/m/n for phi = (r*theta + m)/n");
               ph.r = r; ph.m = m; ph.n = n;
           },
           "target phi = (r*theta + m)/n, written r/m/n")
        ->required();
}

void print_result(const ApproxResult& res, bool as_json) {
    if (as_json) {
        nlohmann::json j;
        j["decision"] = tag_name(res.tag);
        if (res.witness) {
            j["witness_index"] = res.witness->index;
            j["witness_multiplier"] = res.witness->multiplier;
        }
        if (res.n2l) j["n2_L"] = res.n2l->get_str();
        if (res.big_m)
            j["M"] = res.big_m->is_inf ? "inf" : res.big_m->value.get_str();
        if (res.lower) j["lower"] = res.lower->get_str();
        if (res.upper) j["upper"] = res.upper->get_str();
        if (!res.reason.empty()) j["reason"] = res.reason;
        std::cout << j.dump() << "\n";
        return;
    }
    std::cout << tag_name(res.tag);
    if (res.witness)
        std::cout << " witness index=" << res.witness->index
                  << " g=" << res.witness->multiplier;
    if (res.n2l) std::cout << " n^2*L=" << res.n2l->get_str();
    if (res.lower) std::cout << " lower=" << res.lower->get_str();
    if (res.upper) std::cout << " upper=" << res.upper->get_str();
    if (!res.reason.empty()) std::cout << " (" << res.reason << ")";
    std::cout << "\n";
}

int run(int argc, char** argv) {
    CLI::App app{"exact inhomogeneous-approximation decisions for Hurwitz "
                 "continued fractions"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "JSON output");

    ThetaOpt th;
    PhiOpt ph;

    // expand
    auto* c_expand = app.add_subcommand(
        "expand", "print partial quotients b_0 b_1 ...");
    add_theta(c_expand, th);
    std::int64_t count = 10;
    c_expand->add_option("--count", count, "number of quotients")
        ->default_val(10);

    // convergent
    auto* c_conv = app.add_subcommand("convergent", "print p_i/q_i");
    add_theta(c_conv, th);
    std::int64_t cindex = 0;
    c_conv->add_option("--index", cindex, "convergent index i >= -2")
        ->required();

    // mod-period
    auto* c_mp = app.add_subcommand(
        "mod-period", "periods of quotients and convergents mod n");
    add_theta(c_mp, th);
    std::int64_t mp_n = 0;
    c_mp->add_option("--mod", mp_n, "modulus n >= 2")->required();

    // leaper-period
    auto* c_lp = app.add_subcommand(
        "leaper-period", "period of the e^{1/s} leapers mod n");
    std::int64_t lp_s = 1, lp_n = 0;
    c_lp->add_option("--s", lp_s, "s of theta = e^{1/s}")->required();
    c_lp->add_option("--mod", lp_n, "modulus n >= 2")->required();

    // decide
    auto* c_dec = app.add_subcommand("decide", "is L(theta, phi) zero?");
    add_theta(c_dec, th);
    add_phi(c_dec, ph);
    bool fast = false;
    c_dec->add_flag("--fast", fast,
                    "factored leaper scan (theta = e^{1/s} only)");

    // value
    auto* c_val = app.add_subcommand(
        "value", "exact n^2 L, or zero/bound/unknown");
    add_theta(c_val, th);
    add_phi(c_val, ph);

    // oracle
    auto* c_or = app.add_subcommand(
        "oracle", "brute-force scan of |q| ||q theta - phi||");
    add_theta(c_or, th);
    add_phi(c_or, ph);
    std::int64_t qmax = 1 << 16;
    double tol = 1e-6;
    bool csv = false;
    c_or->add_option("--qmax", qmax, "scan bound (>= 16)")->default_val(1 << 16);
    c_or->add_option("--tol", tol, "certified width per window")
        ->default_val(1e-6);
    c_or->add_flag("--csv", csv, "CSV window table");

    // sweep
    auto* c_sw = app.add_subcommand(
        "sweep", "decide all reduced (r, m) for a range of n; JSONL output");
    add_theta(c_sw, th);
    std::int64_t n_lo = 2, n_hi = 10;
    std::string out_path;
    unsigned workers = 1;
    c_sw->add_option("--n-min", n_lo, "first denominator")->default_val(2);
    c_sw->add_option("--n-max", n_hi, "last denominator")->default_val(10);
    c_sw->add_option("--out", out_path, "JSONL output path (resumable)")
        ->required();
    c_sw->add_option("--workers", workers, "worker threads")->default_val(1);
    bool oracle_check = false;
    std::int64_t oracle_qmax = 1 << 14;
    c_sw->add_flag("--oracle-check", oracle_check,
                   "label each new row consistent/inconsistent with a scan");
    c_sw->add_option("--oracle-qmax", oracle_qmax,
                     "scan bound for --oracle-check")
        ->default_val(1 << 14);

    // verify
    auto* c_ver = app.add_subcommand(
        "verify", "run the built-in cross-check suite");

    for (auto* sc : app.get_subcommands([](const CLI::App*) { return true; }))
        sc->fallthrough();

    CLI11_PARSE(app, argc, argv);

    if (c_expand->parsed()) {
        HurwitzianDescriptor d = th.descriptor();
        for (std::int64_t i = 0; i < count; ++i)
            std::cout << d.partial_quotient(i) << (i + 1 < count ? " " : "\n");
        return 0;
    }
    if (c_conv->parsed()) {
        Convergent c = convergent(th.descriptor(), cindex);
        std::cout << c.p << "/" << c.q << "\n";
        return 0;
    }
    if (c_mp->parsed()) {
        HurwitzianDescriptor d = th.descriptor();
        auto bq = quotient_mod_period(d, mp_n);
        auto cp = convergent_mod_period(d, mp_n);
        if (as_json) {
            nlohmann::json j;
            j["quotient_preperiod"] = bq.preperiod_len;
            j["quotient_period"] = bq.entries;
            j["convergent_preperiod"] = cp.preperiod_len;
            auto& arr = j["convergent_period"] = nlohmann::json::array();
            for (const auto& p : cp.entries) arr.push_back({p.a, p.b});
            std::cout << j.dump() << "\n";
        } else {
            std::cout << "quotients mod " << mp_n << ": preperiod "
                      << bq.preperiod_len << ", period";
            for (auto b : bq.entries) std::cout << " " << b;
            std::cout << "\nconvergents mod " << mp_n << ": preperiod "
                      << cp.preperiod_len << ", period";
            for (const auto& p : cp.entries) std::cout << " " << p;
            std::cout << "\n";
        }
        return 0;
    }
    if (c_lp->parsed()) {
        auto info = leaper_period(lp_s, lp_n);
        std::cout << "period " << info.period_len() << ":";
        for (const auto& p : info.entries) std::cout << " " << p;
        std::cout << "\n";
        return 0;
    }
    if (c_dec->parsed()) {
        ReducedTarget t = reduce(ph.r, ph.m, ph.n);
        if (fast) {
            std::int64_t s = th.kind == "e" ? 1 : th.param;
            if (th.kind != "e" && th.kind != "exp_inv")
                throw domain_error("--fast needs theta = e or exp_inv");
            FastDecision fd = fast_is_zero_exp(s, t);
            print_result(fd.result, as_json);
            std::cerr << "recurrence steps: " << fd.total_mults << "\n";
            return 0;
        }
        print_result(is_zero(th.descriptor(), t), as_json);
        return 0;
    }
    if (c_val->parsed()) {
        ReducedTarget t = reduce(ph.r, ph.m, ph.n);
        print_result(value(th.descriptor(), t), as_json);
        return 0;
    }
    if (c_or->parsed()) {
        ReducedTarget t = reduce(ph.r, ph.m, ph.n);
        ScanRecord rec = liminf_scan(th.descriptor(), t, qmax, tol);
        if (csv) {
            std::cout << "window_exponent,min_value_lo,min_value_hi,argmin_q\n";
            for (const auto& w : rec.windows)
                std::cout << w.exponent << "," << w.min.lo.get_d() << ","
                          << w.min.hi.get_d() << "," << w.argmin_q << "\n";
        } else if (as_json) {
            nlohmann::json j;
            j["q_max"] = rec.q_max;
            auto& arr = j["windows"] = nlohmann::json::array();
            for (const auto& w : rec.windows)
                arr.push_back({{"exponent", w.exponent},
                               {"min_lo", w.min.lo.get_d()},
                               {"min_hi", w.min.hi.get_d()},
                               {"argmin_q", w.argmin_q}});
            j["global_min_lo"] = rec.global_min.lo.get_d();
            j["global_min_hi"] = rec.global_min.hi.get_d();
            j["global_argmin"] = rec.global_argmin;
            std::cout << j.dump() << "\n";
        } else {
            for (const auto& w : rec.windows)
                std::cout << "2^" << w.exponent << "..2^" << (w.exponent + 1)
                          << ": min in [" << w.min.lo.get_d() << ", "
                          << w.min.hi.get_d() << "] at q=" << w.argmin_q
                          << "\n";
            std::cout << "global min in [" << rec.global_min.lo.get_d() << ", "
                      << rec.global_min.hi.get_d() << "] at q="
                      << rec.global_argmin << "\n";
        }
        return 0;
    }
    if (c_sw->parsed()) {
        std::set<std::string> done;
        std::vector<SweepRow> rows = read_jsonl(out_path);
        for (const auto& r : rows) done.insert(r.key());
        HurwitzianDescriptor base = th.descriptor();
        std::vector<SweepJob> jobs;
        for (std::int64_t n = n_lo; n <= n_hi; ++n)
            jobs.push_back({th.kind, th.param, base, n});
        auto fresh = run_sweep(jobs, done, workers);
        if (oracle_check)
            for (auto& row : fresh)
                row.oracle = oracle_label(base, {row.r, row.m, row.n},
                                          row.decision, row.n2l, oracle_qmax);
        rows.insert(rows.end(), fresh.begin(), fresh.end());
        std::sort(rows.begin(), rows.end(),
                  [](const SweepRow& a, const SweepRow& b) {
                      return a.key() < b.key();
                  });
        write_jsonl(out_path, rows);
        std::cerr << "wrote " << rows.size() << " rows (" << fresh.size()
                  << " new) to " << out_path << "\n";
        return 0;
    }
    if (c_ver->parsed()) {
        bool all_ok = true;
        for (const auto& c : run_all_checks()) {
            std::cout << (c.ok ? "PASS " : "FAIL ") << c.name << ": "
                      << c.detail << "\n";
            all_ok = all_ok && c.ok;
        }
        return all_ok ? 0 : 4;
    }
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const budget_exceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const precision_exceeded& e) {
        std::cerr << "precision exceeded: " << e.what() << "\n";
        return 3;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
