#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "inapprox/periods.hpp"

using namespace inapprox;

namespace {

// Direct residues b_1, b_2, ... mod n, for cross-checking PeriodInfo.
std::vector<std::int64_t> quotient_residues(const HurwitzianDescriptor& d,
                                            std::int64_t n, std::size_t count) {
    std::vector<std::int64_t> out;
    for (std::size_t i = 1; i <= count; ++i)
        out.push_back(detail::mod_of(d.partial_quotient(
                          static_cast<long long>(i)), n));
    return out;
}

std::vector<ModPair> convergent_residues(const HurwitzianDescriptor& d,
                                         std::int64_t n, std::size_t count) {
    std::vector<ModPair> out;
    Int pm1 = 0, qm1 = 1, p = 1, q = 0;
    for (std::size_t i = 0; i < count; ++i) {
        Int b = d.partial_quotient(static_cast<long long>(i));
        Int pn = b * p + pm1, qn = b * q + qm1;
        pm1 = p; qm1 = q; p = pn; q = qn;
        out.push_back({detail::mod_of(p, n), detail::mod_of(q, n)});
    }
    return out;
}

template <typename T>
void check_predicts(const PeriodInfo<T>& info, const std::vector<T>& seq) {
    REQUIRE(info.period_len() >= 1);
    REQUIRE(seq.size() > info.preperiod_len + 2 * info.period_len());
    for (std::size_t i = info.preperiod_len; i < seq.size(); ++i)
        CHECK(seq[i] ==
              info.entries[(i - info.preperiod_len) % info.period_len()]);
}

template <typename T>
void check_minimal(const PeriodInfo<T>& info, const std::vector<T>& seq) {
    // no proper divisor of the period works, and the preperiod is minimal
    std::size_t len = info.period_len(), start = info.preperiod_len;
    for (std::size_t d = 1; d < len; ++d) {
        if (len % d != 0) continue;
        bool works = true;
        for (std::size_t i = start; i + d < seq.size(); ++i)
            if (seq[i] != seq[i + d]) { works = false; break; }
        CHECK_FALSE(works);
    }
    if (start > 0) CHECK(seq[start - 1] != seq[start - 1 + len]);
}

} // namespace

TEST_CASE("quotients of e mod 2 repeat with period 3") {
    auto d = builtin_descriptor(BuiltinKind::e);
    auto info = quotient_mod_period(d, 2);
    CHECK(info.completely_periodic);
    CHECK(info.period_len() == 3);
    CHECK(info.entries == std::vector<std::int64_t>{1, 0, 1});
}

TEST_CASE("quotient residues are predicted exactly (property)") {
    for (std::int64_t n : {2, 3, 5, 7, 12, 30}) {
        for (auto kind : {BuiltinKind::e, BuiltinKind::exp_inv,
                          BuiltinKind::exp_2_over, BuiltinKind::tanh_inv}) {
            long param = kind == BuiltinKind::e ? 0 : 5;
            auto d = builtin_descriptor(kind, param);
            auto info = quotient_mod_period(d, n);
            auto seq = quotient_residues(
                d, n, info.preperiod_len + 3 * info.period_len() + 7);
            check_predicts(info, seq);
            check_minimal(info, seq);
        }
    }
}

TEST_CASE("quotients of e^{1/s} mod 2s have period (s-1, 1, 1) up to rotation") {
    for (long s : {3L, 5L, 8L}) {
        auto d = builtin_descriptor(BuiltinKind::exp_inv, s);
        auto info = quotient_mod_period(d, 2 * s);
        REQUIRE(info.period_len() == 3);
        std::vector<std::int64_t> want{s - 1, 1, 1};
        bool cyclic = false;
        for (int rot = 0; rot < 3; ++rot) {
            std::vector<std::int64_t> r{want[rot % 3], want[(rot + 1) % 3],
                                        want[(rot + 2) % 3]};
            std::size_t pre = info.preperiod_len;
            // align to absolute phase: compare against the direct residues
            if (info.entries == r) cyclic = true;
        }
        CHECK(cyclic);
    }
}

TEST_CASE("convergents of e mod 2: completely periodic, period 6") {
    auto d = builtin_descriptor(BuiltinKind::e);
    auto info = convergent_mod_period(d, 2);
    CHECK(info.completely_periodic);
    CHECK(info.period_len() == 6);
    auto seq = convergent_residues(d, 2, 30);
    check_predicts(info, seq);
}

TEST_CASE("convergent residues are predicted exactly (property)") {
    for (std::int64_t n : {2, 3, 4, 5, 9, 10, 25}) {
        for (auto kind :
             {BuiltinKind::e, BuiltinKind::exp_inv, BuiltinKind::exp_2_over}) {
            long param = kind == BuiltinKind::e ? 0 : 3;
            auto d = builtin_descriptor(kind, param);
            auto info = convergent_mod_period(d, n);
            auto seq = convergent_residues(
                d, n, info.preperiod_len + 3 * info.period_len() + 7);
            check_predicts(info, seq);
            check_minimal(info, seq);
        }
    }
}

TEST_CASE("convergent period length divides a multiple of the quotient period") {
    // the convergent period is always a multiple of nothing in general, but
    // the pair sequence must repeat on quotient-period checkpoints: verify
    // the detected period is consistent with a doubled window
    auto d = builtin_descriptor(BuiltinKind::exp_2_over, 5);
    auto info = convergent_mod_period(d, 7);
    auto seq = convergent_residues(
        d, 7, info.preperiod_len + 4 * info.period_len() + 3);
    check_predicts(info, seq);
}

TEST_CASE("budget exhaustion raises instead of returning a wrong period") {
    auto d = builtin_descriptor(BuiltinKind::e);
    CHECK_THROWS_AS(convergent_mod_period(d, 97, 0), budget_exceeded);
}

TEST_CASE("modulus validation") {
    auto d = builtin_descriptor(BuiltinKind::e);
    CHECK_THROWS_AS(quotient_mod_period(d, 1), domain_error);
    CHECK_THROWS_AS(convergent_mod_period(d, 0), domain_error);
}
