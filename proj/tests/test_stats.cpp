#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "cpx/stats.hpp"
#include "test_util.hpp"

using namespace cpx;
using Catch::Approx;

namespace {

// Naive O(m^2) reference: evaluates the defining expression at every pair and
// keeps the lexicographically smallest maximizer. Written independently of
// the per-lag production path.
StatReport naive_stat(StatKind kind, const std::vector<double>& xs, const HypothesisParams& h) {
    const std::size_t m = xs.size();
    std::vector<double> s(m + 1, 0.0);
    for (std::size_t i = 0; i < m; ++i) s[i + 1] = s[i] + xs[i];
    const double mean = s[m] / static_cast<double>(m);
    StatReport best{kind, -std::numeric_limits<double>::infinity(), 0, 1};
    if (kind == StatKind::Z4) best.value = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j <= m; ++j) {
            const double k = static_cast<double>(j - i);
            double v = 0.0;
            switch (kind) {
                case StatKind::Z1:
                    v = *h.delta * (s[j] - static_cast<double>(j) * *h.mu0 -
                                    (s[i] - static_cast<double>(i) * *h.mu0) - k * *h.delta / 2.0);
                    break;
                case StatKind::Z2:
                    v = *h.delta * (s[j] - static_cast<double>(j) * mean -
                                    (s[i] - static_cast<double>(i) * mean) - k * *h.delta / 2.0);
                    break;
                case StatKind::Z3:
                    v = *h.delta *
                        (s[j] - s[i] - k * mean -
                         0.5 * *h.delta * k * (1.0 - k / static_cast<double>(m)));
                    break;
                case StatKind::Z4: {
                    if (j - i == m) continue;
                    const double num = s[j] - s[i] - k * mean;
                    if (num <= 0.0) continue;
                    v = num / std::sqrt(k * (1.0 - k / static_cast<double>(m)));
                    break;
                }
            }
            if (v > best.value) best = {kind, v, i, j};
        }
    }
    return best;
}

void check_against_fixture(const StatReport& rep, const char* key) {
    const auto& f = fixtures().at(key);
    CHECK(rep.value == Approx(f.at("value").get<double>()).margin(1e-12));
    CHECK(rep.i_star == f.at("i").get<std::size_t>());
    CHECK(rep.j_star == f.at("j").get<std::size_t>());
}

}  // namespace

TEST_CASE("partial sums prepend S_0 = 0") {
    CHECK(partial_sums(ObservationSeries({1, -1, 1, -1})) ==
          std::vector<double>{0, 1, 0, 1, 0});
    CHECK(partial_sums(ObservationSeries({0, 0, 0})) == std::vector<double>{0, 0, 0, 0});
    CHECK(partial_sums(ObservationSeries({0, 0, 2, 2})) == std::vector<double>{0, 0, 0, 2, 4});
}

TEST_CASE("series construction rejects bad input") {
    CHECK_THROWS_AS(ObservationSeries({1.0}), ParamError);
    CHECK_THROWS_AS(ObservationSeries({1.0, std::nan("")}), InputError);
    CHECK_THROWS_AS(ObservationSeries({1.0, std::numeric_limits<double>::infinity()}),
                    InputError);
}

TEST_CASE("z1 matches frozen enumeration fixtures") {
    HypothesisParams h{0.0, 1.0};
    check_against_fixture(z1(ObservationSeries({1, -1, 1, -1}), h), "z1_pm1");
    check_against_fixture(z1(ObservationSeries({0, 0, 2, 2}), h), "z1_0022");
    check_against_fixture(z1(ObservationSeries({0, 0, 0}), h), "z1_zeros");
}

TEST_CASE("z2 matches frozen enumeration fixtures") {
    HypothesisParams h{std::nullopt, 1.0};
    check_against_fixture(z2(ObservationSeries({0, 0, 2, 2}), h), "z2_0022");
    check_against_fixture(z2(ObservationSeries({1, -1, 1, -1}), h), "z2_pm1");
    check_against_fixture(z2(ObservationSeries({3, 3, 3, 3, 3}), h), "z2_const5");
}

TEST_CASE("z3 matches frozen enumeration fixtures") {
    HypothesisParams h{std::nullopt, 1.0};
    check_against_fixture(z3(ObservationSeries({0, 0, 2, 2}), h), "z3_0022");
    check_against_fixture(z3(ObservationSeries({0, 0, 0, 0}), h), "z3_zeros4");
    check_against_fixture(z3(ObservationSeries({1, -1, 1, -1}), h), "z3_pm1");
}

TEST_CASE("z4 matches frozen enumeration fixtures") {
    check_against_fixture(z4(ObservationSeries({0, 0, 2, 2})), "z4_0022");
    check_against_fixture(z4(ObservationSeries({1, -1, 1, -1})), "z4_pm1");
    const auto rep = z4(ObservationSeries({7, 7, 7, 7}));
    CHECK(rep.value == 0.0);
    CHECK(rep.i_star == 0);
    CHECK(rep.j_star == 1);
}

TEST_CASE("missing parameters raise parameter errors") {
    ObservationSeries x({1, 2, 3});
    CHECK_THROWS_AS(z1(x, HypothesisParams{std::nullopt, 1.0}), ParamError);
    CHECK_THROWS_AS(z1(x, HypothesisParams{0.0, std::nullopt}), ParamError);
    CHECK_THROWS_AS(z2(x, HypothesisParams{0.0, std::nullopt}), ParamError);
    CHECK_THROWS_AS(z3(x, HypothesisParams{std::nullopt, -1.0}), ParamError);
}

TEST_CASE("oracle equivalence on random sequences") {
    std::mt19937_64 gen(20240811);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::student_t_distribution<double> heavy(2.5);
    std::uniform_int_distribution<std::size_t> msize(5, 120);

    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t m = msize(gen);
        std::vector<double> xs(m);
        const bool use_heavy = trial % 3 == 0;
        for (auto& v : xs) v = use_heavy ? heavy(gen) : normal(gen);
        ObservationSeries series(xs);
        HypothesisParams h{0.3, 0.8};

        for (StatKind kind : {StatKind::Z1, StatKind::Z2, StatKind::Z3, StatKind::Z4}) {
            StatReport got;
            switch (kind) {
                case StatKind::Z1: got = z1(series, h); break;
                case StatKind::Z2: got = z2(series, h); break;
                case StatKind::Z3: got = z3(series, h); break;
                case StatKind::Z4: got = z4(series); break;
            }
            const StatReport want = naive_stat(kind, xs, h);
            INFO("kind=" << to_string(kind) << " m=" << m << " trial=" << trial);
            CHECK(got.value == Approx(want.value).epsilon(1e-12).margin(1e-12));
            CHECK(got.i_star == want.i_star);
            CHECK(got.j_star == want.j_star);
            // recompute check: the report reproduces its own value at (i*, j*)
            CHECK(got.value ==
                  Approx(stat_at_pair(kind, series, h, got.i_star, got.j_star)).margin(1e-12));
        }
    }
}

TEST_CASE("shift invariance properties") {
    std::mt19937_64 gen(7);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> xs(40);
    for (auto& v : xs) v = normal(gen);
    std::vector<double> shifted(xs);
    for (auto& v : shifted) v += 2.75;

    ObservationSeries a(xs), b(shifted);
    HypothesisParams h{std::nullopt, 0.6};

    SECTION("z2, z3, z4 are invariant under x -> x + const") {
        for (auto fn : {z2, z3}) {
            const auto ra = fn(a, h);
            const auto rb = fn(b, h);
            CHECK(ra.value == Approx(rb.value).margin(1e-9));
            CHECK(ra.i_star == rb.i_star);
            CHECK(ra.j_star == rb.j_star);
        }
        const auto ra = z4(a);
        const auto rb = z4(b);
        CHECK(ra.value == Approx(rb.value).margin(1e-9));
        CHECK(ra.i_star == rb.i_star);
    }

    SECTION("z1(x + a, mu0 + a) = z1(x, mu0)") {
        HypothesisParams h0{0.4, 0.6};
        HypothesisParams h1{0.4 + 2.75, 0.6};
        const auto ra = z1(a, h0);
        const auto rb = z1(b, h1);
        CHECK(ra.value == Approx(rb.value).margin(1e-9));
        CHECK(ra.i_star == rb.i_star);
        CHECK(ra.j_star == rb.j_star);
    }
}

TEST_CASE("z1 and z2 coincide when S_m = 0 and mu0 = 0") {
    std::vector<double> xs{0.5, -1.25, 2.0, -0.75, 0.25, -0.75};
    double sum = 0.0;
    for (double v : xs) sum += v;
    REQUIRE(sum == 0.0);
    ObservationSeries series(xs);
    const auto r1 = z1(series, HypothesisParams{0.0, 1.3});
    const auto r2 = z2(series, HypothesisParams{std::nullopt, 1.3});
    CHECK(r1.value == Approx(r2.value).margin(1e-12));
    CHECK(r1.i_star == r2.i_star);
    CHECK(r1.j_star == r2.j_star);
}

TEST_CASE("z4 is nonnegative") {
    std::mt19937_64 gen(99);
    std::normal_distribution<double> normal(0.0, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> xs(25);
        for (auto& v : xs) v = normal(gen) - 5.0;
        CHECK(z4(ObservationSeries(xs)).value >= 0.0);
    }
}
