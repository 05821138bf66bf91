#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "frob/batch_eval.hpp"
#include "frob/primitives.hpp"
#include "test_util.hpp"

using namespace frob;

TEST_SUITE_BEGIN("primitives");

TEST_CASE("square: error bound, range, kappa") {
    SUBCASE("k=10 sup error on a 1e5 grid") {
        const auto sq = build_square(10);
        const ProbePlan plan = ProbePlan::grid(unit_box(1), 100001);
        const auto sup = sup_scan(sq.net, [](const Vec& x) { return x[0] * x[0]; }, plan);
        CHECK(sup.max_abs_error <= 0.005);
        CHECK(sup.max_abs_error <= 1.0 / (2.0 * 10.0 * 10.0));
    }
    SUBCASE("vanishes left of zero and maps [0,1] into [0,1]") {
        const auto sq = build_square(7);
        CHECK(evaluate(sq.net, {-0.5})[0] == 0.0);
        for (int i = 0; i <= 500; ++i) {
            const double x = i / 500.0;
            const double y = evaluate(sq.net, {x})[0];
            CHECK(y >= 0.0);
            CHECK(y <= 1.0);
        }
    }
    SUBCASE("certified constants") {
        for (int k : {1, 2, 4, 8, 16, 32, 64}) {
            const auto sq = build_square(k);
            CHECK(sq.cert.kappa <= 3.0 + 1e-12);
            CHECK(sq.cert.kappa == doctest::Approx(square_kappa_closed_form(k)).epsilon(1e-13));
            CHECK(sq.net.depth() == 1);
            CHECK(sq.net.width() == k);
        }
        CHECK_THROWS_AS(build_square(0), std::invalid_argument);
    }
}

TEST_CASE("product: error bound, exact axis zeros, range, kappa") {
    SUBCASE("k=10 sup error over a 400x400 grid") {
        const auto prod = build_product(10);
        const ProbePlan plan = ProbePlan::grid(symmetric_box(2, 1.0), 160000);
        const auto sup = sup_scan(prod.net, [](const Vec& x) { return x[0] * x[1]; }, plan);
        CHECK(sup.max_abs_error <= 3.0 / (10.0 * 10.0));
        CHECK(sup.max_abs_error <= 0.03);
    }
    SUBCASE("exactly zero on the axes") {
        const auto prod = build_product(6);
        CHECK(evaluate(prod.net, {0.0, 0.7})[0] == 0.0);
        CHECK(evaluate(prod.net, {0.7, 0.0})[0] == 0.0);
        Rng rng(3);
        for (int i = 0; i < 1000; ++i) {
            const double t = rng.uniform(-1.0, 1.0);
            CHECK(evaluate(prod.net, {t, 0.0})[0] == 0.0);
            CHECK(evaluate(prod.net, {0.0, t})[0] == 0.0);
        }
    }
    SUBCASE("near one at (1,1) for k=50") {
        const auto prod = build_product(50);
        CHECK(std::abs(evaluate(prod.net, {1.0, 1.0})[0] - 1.0) <= 3.0 / 2500.0);
    }
    SUBCASE("range and constants") {
        const auto prod = build_product(4);
        CHECK(prod.cert.kappa <= 360.0);
        CHECK(prod.net.depth() == 2);
        CHECK(prod.net.width() == 6 * 4);
        Rng rng(9);
        for (int i = 0; i < 2000; ++i) {
            Vec x{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
            const double y = evaluate(prod.net, x)[0];
            CHECK(y >= -1.0);
            CHECK(y <= 1.0);
        }
    }
}

TEST_CASE("monomial: tree structure, zeros, error bounds") {
    SUBCASE("d=2 reduces to a single multiplier") {
        const auto mono = build_monomial(2, 20);
        const ProbePlan plan = ProbePlan::grid(symmetric_box(2, 1.0), 10000);
        const auto sup = sup_scan(mono.net, [](const Vec& x) { return x[0] * x[1]; }, plan);
        CHECK(sup.max_abs_error <= 3.0 / 400.0);
        CHECK(mono.net.depth() == 2);
        CHECK(mono.cert.kappa <= monomial_kappa_bound(2));
    }
    SUBCASE("exact zero with a zero factor, d=5") {
        const auto mono = build_monomial(5, 20);
        CHECK(evaluate(mono.net, {1.0, 1.0, 1.0, 1.0, 0.0})[0] == 0.0);
        CHECK(evaluate(mono.net, {0.3, -0.8, 1.0, 0.5, 0.0})[0] == 0.0);
        CHECK(evaluate(mono.net, {0.0, -0.8, 1.0, 0.5, 0.9})[0] == 0.0);
    }
    SUBCASE("d=3, k=30: sup error over 1e5 low-discrepancy points") {
        const auto mono = build_monomial(3, 30);
        const ProbePlan plan = ProbePlan::halton(symmetric_box(3, 1.0), 100000, 12345);
        const auto sup =
            sup_scan(mono.net, [](const Vec& x) { return x[0] * x[1] * x[2]; }, plan);
        CHECK(sup.max_abs_error <= 18.0 / 900.0);
    }
    SUBCASE("width, depth, kappa for several shapes") {
        for (auto [d, k] : std::vector<std::pair<int, int>>{{2, 20}, {3, 20}, {5, 10}, {8, 10}}) {
            const auto mono = build_monomial(d, k);
            const int s = static_cast<int>(std::ceil(std::log2(d)));
            CHECK(mono.net.depth() == 2 * s);
            CHECK(mono.net.width() <= 6 * d * k);
            CHECK(mono.cert.kappa <= monomial_kappa_bound(d));
        }
        CHECK_THROWS_AS(build_monomial(1, 5), std::invalid_argument);
    }
    SUBCASE("per-level error recursion") {
        const int k = 15;
        const int m = 4;
        // stage nets over the full tree of d = 4
        const auto stage1 = monomial_tree_stage(k, 2, std::vector<bool>(4, false));
        const auto full = monomial_tree(k, 4, m);
        Rng rng(77);
        double e1 = 0.0, e2 = 0.0;
        for (int p = 0; p < 4000; ++p) {
            Vec x(4);
            for (auto& v : x) v = rng.uniform(-1.0, 1.0);
            const Vec z1 = evaluate(stage1.net, x);
            e1 = std::max(e1, std::abs(z1[0] - x[0] * x[1]));
            e1 = std::max(e1, std::abs(z1[1] - x[2] * x[3]));
            const double z2 = evaluate(full.net, x)[0];
            e2 = std::max(e2, std::abs(z2 - x[0] * x[1] * x[2] * x[3]));
        }
        CHECK(e1 <= 3.0 / (k * k) + 1e-9);
        CHECK(e2 <= 2.0 * e1 + 3.0 / (k * k) + 1e-9);
    }
}

TEST_CASE("hat: reference partition of unity and network realization") {
    SUBCASE("reference hats sum to one") {
        const int N = 5;
        for (int i = 0; i <= 1000; ++i) {
            const double x = i / 1000.0;
            double sum = 0.0;
            for (int n = 0; n <= N; ++n) sum += hat_reference(N * x - n);
            CHECK(std::abs(sum - 1.0) <= 1e-12);
        }
    }
    SUBCASE("network hat matches the reference") {
        const int N = 5, n = 2;
        const auto hat = build_hat(N, n);
        CHECK(evaluate(hat.net, {0.4})[0] == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(evaluate(hat.net, {0.6})[0] == 0.0);
        CHECK(evaluate(hat.net, {0.75})[0] == 0.0);
        Rng rng(21);
        for (int i = 0; i < 2000; ++i) {
            const double x = rng.uniform(0.0, 1.0);
            CHECK(std::abs(evaluate(hat.net, {x})[0] - hat_reference(N * x - n)) <= 1e-12);
        }
        CHECK(hat.net.depth() == 2);
        CHECK(hat.cert.kappa <= 2.0 * std::sqrt(15.0) * N);
        CHECK_THROWS_AS(build_hat(5, 6), std::invalid_argument);
    }
}

TEST_CASE("shift: exact coordinate shifts") {
    const int N = 4;
    SUBCASE("n=0 is the identity") {
        const auto sh = build_shift(0, N);
        Rng rng(31);
        for (int i = 0; i < 500; ++i) {
            const double x = rng.uniform(0.0, 1.0);
            CHECK(std::abs(evaluate(sh.net, {x})[0] - x) <= 1e-15);
        }
    }
    SUBCASE("n=N shifts by one") {
        const auto sh = build_shift(N, N);
        Rng rng(32);
        for (int i = 0; i < 500; ++i) {
            const double x = rng.uniform(0.0, 1.0);
            CHECK(std::abs(evaluate(sh.net, {x})[0] - (x - 1.0)) <= 1e-15);
        }
    }
    SUBCASE("kappa bound") {
        for (int n = 0; n <= N; ++n) CHECK(build_shift(n, N).cert.kappa <= 2.0 * std::sqrt(15.0));
    }
}

TEST_CASE("taylor patch: support, degenerate case, accuracy") {
    SUBCASE("exact zero outside the cell") {
        const std::vector<int> n{2, 1};
        const MultiIndex s{1, 0};
        const auto patch = build_taylor_patch(n, s, 4, 10, 2, 1);
        Rng rng(51);
        int outside_checked = 0;
        for (int i = 0; i < 4000; ++i) {
            Vec x{rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0)};
            const bool outside = std::abs(x[0] - 0.5) > 0.25 + 1e-9 || std::abs(x[1] - 0.25) > 0.25 + 1e-9;
            if (outside) {
                ++outside_checked;
                CHECK(evaluate(patch.net, x)[0] == 0.0);
            }
        }
        CHECK(outside_checked > 1000);
    }
    SUBCASE("single-factor case collapses to the hat") {
        const auto patch = build_taylor_patch({3}, {0}, 5, 10, 1, 0);
        CHECK(patch.net.depth() == 2);
        Rng rng(52);
        for (int i = 0; i < 500; ++i) {
            const double x = rng.uniform(0.0, 1.0);
            CHECK(std::abs(evaluate(patch.net, {x})[0] - hat_reference(5 * x - 3)) <= 1e-12);
        }
    }
    SUBCASE("d=2, r=1, N=4, k=25: sup error against the exact reference") {
        const std::vector<int> n{2, 3};
        const MultiIndex s{0, 1};
        const auto patch = build_taylor_patch(n, s, 4, 25, 2, 1);
        const ProbePlan plan = ProbePlan::halton(unit_box(2), 100000, 999);
        const auto sup = sup_scan(
            patch.net, [&](const Vec& x) { return patch_reference(n, s, 4, x); }, plan);
        CHECK(sup.max_abs_error <= 6.0 * 3.0 / (25.0 * 25.0));
        CHECK(patch.cert.kappa <= patch_kappa_bound(2, 1, 4));
        CHECK(patch.net.depth() == 2 * static_cast<int>(std::ceil(std::log2(3.0))) + 2);
        CHECK(patch.net.width() <= 12 * 3 * 25);
    }
    SUBCASE("dimension mismatches are rejected") {
        CHECK_THROWS_AS(build_taylor_patch({1}, {0, 0}, 4, 5, 1, 0), std::invalid_argument);
        CHECK_THROWS_AS(build_taylor_patch({1, 9}, {0, 0}, 4, 5, 2, 0), std::invalid_argument);
    }
    SUBCASE("hat product approximates the tensor hat") {
        const std::vector<int> n{1, 2};
        const auto hp = build_hat_product(3, n, 20);
        const ProbePlan plan = ProbePlan::grid(unit_box(2), 2500);
        const auto sup = sup_scan(
            hp.net, [&](const Vec& x) { return hat_product_reference(3, n, x); }, plan);
        CHECK(sup.max_abs_error <= 6.0 * 2.0 / 400.0);
    }
}

TEST_SUITE_END();
