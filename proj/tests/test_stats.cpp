#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "frob/stats.hpp"
#include "frob/summation.hpp"
#include "test_util.hpp"

using namespace frob;

TEST_SUITE_BEGIN("stats");

TEST_CASE("generate_data: determinism and the boundedness contract") {
    const auto spec = dag_gallery("binarytree-d4");
    SUBCASE("noiseless samples carry exact target values") {
        const auto data = generate_data(spec, 128, 42, 0.0);
        for (std::size_t i = 0; i < data.xs.size(); ++i)
            CHECK(data.ys[i] == spec.eval_exact(data.xs[i]));
    }
    SUBCASE("equal seeds give identical datasets") {
        const auto a = generate_data(spec, 64, 9, 0.0);
        const auto b = generate_data(spec, 64, 9, 0.0);
        for (std::size_t i = 0; i < a.xs.size(); ++i) {
            CHECK(a.ys[i] == b.ys[i]);
            CHECK(a.xs[i] == b.xs[i]);
        }
    }
    SUBCASE("inputs stay in the unit ball, outputs in [-1,1]") {
        const auto data = generate_data(spec, 5000, 3, 0.0);
        for (std::size_t i = 0; i < data.xs.size(); ++i) {
            double norm_sq = 0.0;
            for (double v : data.xs[i]) norm_sq += v * v;
            CHECK(norm_sq <= 1.0 + 1e-12);
            CHECK(std::abs(data.ys[i]) <= 1.0);
        }
    }
    SUBCASE("oversized noise is rejected") {
        CHECK_THROWS_AS(generate_data(spec, 16, 1, 0.5), std::invalid_argument);
        CHECK_NOTHROW(generate_data_fn([](const Vec& x) { return 0.5 * x[0]; }, 1, 0.5, 16, 1, 0.49));
    }
}

TEST_CASE("schedule_K: exponent shape and anchors") {
    const auto spec = dag_gallery("binarytree-d4");
    const double e = schedule_K_exponent(spec);
    CHECK(e > 0.0);
    CHECK(e < 0.5);
    // D = 12, d_in = 2, L = 2, alpha* = 2: (1/2) * 32 / 40
    CHECK(e == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(schedule_K(spec, 1024) == doctest::Approx(std::pow(1024.0, 0.4)).epsilon(1e-15));
    CHECK(schedule_K(spec, 2048) > schedule_K(spec, 1024));

    const auto cl = dag_gallery("constlevel-L3");
    const double e2 = schedule_K_exponent(cl);
    CHECK(e2 > 0.0);
    CHECK(e2 < 0.5);
}

TEST_CASE("erm_train: degenerate budget, realizable target, projection invariant") {
    SUBCASE("K = 0 leaves only the zero function") {
        const auto data = generate_data_fn([](const Vec& x) { return 0.8 * x[0]; }, 1, 0.8, 64, 5, 0.0);
        OptimizerConfig cfg;
        cfg.epochs = 30;
        cfg.seed = 5;
        const auto res = erm_train(data, 8, 2, 0.0, cfg);
        KahanSum ysq;
        for (double y : data.ys) ysq.add(y * y);
        CHECK(res.empirical_risk == doctest::Approx(ysq.value() / 64.0).epsilon(1e-12));
        CHECK(res.kappa_core == 0.0);
    }
    SUBCASE("linear target at generous budget trains to near zero risk") {
        const auto data = generate_data_fn([](const Vec& x) { return 0.8 * x[0]; }, 1, 0.8, 64, 7, 0.0);
        OptimizerConfig cfg;
        cfg.epochs = 500;
        cfg.seed = 7;
        const auto res = erm_train(data, 16, 2, 1000.0, cfg);
        CHECK(res.empirical_risk <= 1e-3);
    }
    SUBCASE("projection keeps kappa within budget after every epoch") {
        const auto data = generate_data_fn([](const Vec& x) { return 0.8 * x[0]; }, 1, 0.8, 128, 11, 0.0);
        OptimizerConfig cfg;
        cfg.epochs = 50;
        cfg.seed = 11;
        const double K = 6.0;
        const auto res = erm_train(data, 12, 3, K, cfg);
        CHECK(res.kappa_core <= K * (1.0 + 1e-9));
        for (const auto& rec : res.trace) CHECK(rec.kappa_value <= K * (1.0 + 1e-9));
        // structural clipping: outputs bounded everywhere
        Rng rng(13);
        for (int i = 0; i < 200; ++i) {
            const Vec x = rng.ball_point(1);
            const double y = evaluate(res.trained, x)[0];
            CHECK(y >= -1.0 - 1e-12);
            CHECK(y <= 1.0 + 1e-12);
        }
    }
    SUBCASE("class nesting: doubling the budget cannot hurt an easy target much") {
        const auto data = generate_data_fn([](const Vec& x) { return 0.6 * x[0]; }, 1, 0.6, 96, 17, 0.0);
        OptimizerConfig cfg;
        cfg.epochs = 400;
        cfg.seed = 17;
        const auto lo = erm_train(data, 12, 2, 8.0, cfg);
        const auto hi = erm_train(data, 12, 2, 16.0, cfg);
        CHECK(hi.empirical_risk <= lo.empirical_risk + 1e-3);
    }
}

TEST_CASE("excess_risk: exact predictor and nonnegativity") {
    const auto spec = dag_gallery("binarytree-d4");
    SUBCASE("an exact realization has zero excess risk") {
        // 1-D target realized exactly: f*(x) = 0.8 x via an identity pair
        DagSpec lin;
        lin.input_dim = 1;
        DagNode n;
        n.id = "out";
        n.parents = {0};
        n.oracle = make_polynomial(1, {{0.8, {1}}}, 2.0, symmetric_box(1, 1.0), 0.8, 3.0);
        n.range_bound = 0.8;
        lin.levels.push_back({n});
        lin.validate();
        Network exact = test::identity_net();
        exact.final_weight = SpMat::from_dense(1, 2, {0.8, -0.8});
        const auto res = excess_risk(exact, lin, 20000, 23, 0.0);
        CHECK(std::abs(res.estimate) <= 3.0 * res.stderr_value + 1e-12);
    }
    SUBCASE("noiseless estimates are nonnegative within Monte Carlo error") {
        const auto data = generate_data(spec, 128, 31, 0.0);
        OptimizerConfig cfg;
        cfg.epochs = 60;
        cfg.seed = 31;
        const auto trained = erm_train(data, 12, 4, 5.0, cfg);
        const auto res = excess_risk(trained.trained, spec, 20000, 37, 0.0);
        CHECK(res.estimate >= -3.0 * res.stderr_value);
        CHECK(res.risk_trained >= 0.0);
        CHECK(res.risk_oracle == 0.0); // noiseless: oracle risk vanishes
    }
}

TEST_CASE("rademacher_check: degenerate budget and the complexity bound") {
    SUBCASE("K = 0 pins both the estimate and the bound at zero") {
        const auto res = rademacher_check(2, 8, 2, 0.0, 64, 3, 2);
        CHECK(res.estimate == 0.0);
        CHECK(res.bound == 0.0);
    }
    SUBCASE("estimate grows (weakly) with the budget") {
        AscentConfig cfg;
        cfg.steps = 120;
        const auto small = rademacher_check(2, 8, 2, 2.0, 64, 7, 3, cfg);
        const auto big = rademacher_check(2, 8, 2, 4.0, 64, 7, 3, cfg);
        CHECK(big.estimate >= small.estimate - 1e-9);
    }
    SUBCASE("heuristic ascent stays below the theoretical bound") {
        AscentConfig cfg;
        cfg.steps = 150;
        const auto res = rademacher_check(3, 10, 4, 10.0, 256, 101, 5, cfg);
        CHECK(res.bound == doctest::Approx((std::sqrt(2.0 * std::log(2.0) * 4.0) + 1.0) * 10.0 / 16.0));
        CHECK(res.estimate <= res.bound);
        CHECK(res.estimate >= 0.0);
    }
}

TEST_SUITE_END();
