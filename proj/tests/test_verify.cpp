#include <doctest.h>

#include <cmath>

#include "frob/errors.hpp"
#include "frob/primitives.hpp"
#include "frob/verify.hpp"
#include "test_util.hpp"

using namespace frob;

TEST_SUITE_BEGIN("verify");

TEST_CASE("sup_error: anchors from the explicit constructions") {
    SUBCASE("zero network against the zero oracle") {
        const Network z = zero_network(1, 1, 1);
        const auto res = sup_error(z, [](const Vec&) { return 0.0; }, ProbePlan::grid(unit_box(1), 101));
        CHECK(res.max_abs_error == 0.0);
    }
    SUBCASE("square k=10") {
        const auto sq = build_square(10);
        const auto res = sup_error(sq.net, [](const Vec& x) { return x[0] * x[0]; },
                                   ProbePlan::grid(unit_box(1), 10001));
        CHECK(res.max_abs_error <= 0.005);
        CHECK(res.max_abs_error >= res.coarse_error); // refinement never loses the argmax
    }
    SUBCASE("product k=10") {
        const auto prod = build_product(10);
        const auto res = sup_error(prod.net, [](const Vec& x) { return x[0] * x[1]; },
                                   ProbePlan::grid(symmetric_box(2, 1.0), 10000));
        CHECK(res.max_abs_error <= 0.03);
    }
}

TEST_CASE("audit_norms: sound certificates pass, corruption is flagged") {
    SUBCASE("fresh constructions audit clean") {
        for (const auto& cn : {build_square(5), build_product(3), build_monomial(3, 4)}) {
            const auto report = audit_norms(cn.net, cn.cert);
            CHECK(report.pass);
            CHECK(report.kappa_violations == 0);
            CHECK(report.layer_violations == 0);
        }
    }
    SUBCASE("doubling one weight trips exactly one kappa violation") {
        auto cn = build_square(5);
        auto& w = cn.net.hidden[0].weight;
        w.entry_val_mut(w.row_begin(0)) *= 2.0;
        const auto report = audit_norms(cn.net, cn.cert);
        CHECK_FALSE(report.pass);
        CHECK(report.kappa_violations == 1);
        CHECK(report.layer_violations == 1); // the corrupted layer norm no longer matches
    }
    SUBCASE("small relative perturbations are still caught") {
        auto cn = build_product(4);
        auto& w = cn.net.hidden[0].weight;
        w.entry_val_mut(w.row_begin(0)) *= 1.0 + 1e-6;
        const auto report = audit_norms(cn.net, cn.cert);
        const auto sup = sup_scan(
            cn.net, [&](const Vec& x) { return evaluate(build_product(4).net, x)[0]; },
            ProbePlan::grid(symmetric_box(2, 1.0), 400));
        CHECK((!report.pass || sup.max_abs_error > 0.0));
    }
    SUBCASE("rescaled network's final norm equals the original kappa") {
        const auto sq = build_square(4);
        const Network r = rescale(sq.net);
        CHECK(std::abs(r.final_weight.frobenius() - sq.cert.kappa) <= 1e-12 * sq.cert.kappa);
    }
}

TEST_CASE("partition of unity: residuals at machine precision") {
    for (auto [N, d] : std::vector<std::pair<int, int>>{{3, 1}, {5, 1}, {3, 2}, {4, 3}}) {
        const ProbePlan plan = d == 1 ? ProbePlan::grid(unit_box(1), 1001)
                                      : ProbePlan::halton(unit_box(d), 2000, 3);
        const auto res = check_partition_of_unity(N, d, plan);
        CHECK(res.max_residual <= 1e-12);
        CHECK(res.max_active <= (1 << d));
    }
}

TEST_CASE("rate_sweep: monotonicity, domination, slope") {
    const auto target = holder_gallery_target("holder-square");
    const ProbePlan plan = ProbePlan::grid(unit_box(1), 2001);
    const auto sweep = rate_sweep(target, {1e10, 1e11, 1e12, 1e13}, plan);
    REQUIRE(sweep.points.size() == 4);
    for (std::size_t i = 1; i < sweep.points.size(); ++i)
        CHECK(sweep.points[i].measured_error <= sweep.points[i - 1].measured_error * (1.0 + 1e-12));
    for (const auto& p : sweep.points) CHECK(p.measured_error <= p.certified_bound);
    CHECK(sweep.theoretical_exponent == doctest::Approx(4.0 / 7.0));
    CHECK(sweep.fitted_slope <= -sweep.theoretical_exponent + 0.15);

    SUBCASE("infeasible low budget is dropped with a note") {
        const auto partial = rate_sweep(target, {2.0, 1e10, 1e11, 1e12}, plan);
        CHECK(partial.points.size() == 3);
        CHECK(partial.notes.size() == 1);
    }
    SUBCASE("config validation") {
        CHECK_THROWS_AS(rate_sweep(target, {1e10, 1e11}, plan), config_error);
        CHECK_THROWS_AS(rate_sweep(target, {1e10, 2e10, 3e10}, plan), config_error);
    }
}

TEST_CASE("trace_critical_path: backward max-error tracing") {
    const auto spec = dag_gallery("binarytree-d4");
    const auto compiled = compile_dag(spec, 1e42);
    const ProbePlan plan = ProbePlan::halton(symmetric_box(4, 1.0), 512, 5);
    const auto trace = trace_critical_path(compiled, plan);
    REQUIRE(trace.path.size() == 2);
    CHECK(trace.path[1] == 0);
    CHECK((trace.path[0] == 0 || trace.path[0] == 1));
    CHECK(trace.path_ids.size() == 2);
    CHECK(trace.max_abs_error > 0.0);

    SUBCASE("deterministic across repeated calls") {
        const auto again = trace_critical_path(compiled, plan);
        CHECK(again.path == trace.path);
        CHECK(again.max_abs_error == trace.max_abs_error);
    }
    SUBCASE("a deliberately coarse node attracts the path") {
        auto faulty = compiled;
        for (int v : {0, 1}) {
            auto degraded = compile_holder(compiled.node_oracles[0][v].oracle, 1);
            faulty.node_nets[0][v] =
                CertifiedNet{std::move(degraded.network), std::move(degraded.certificate)};
            const auto t = trace_critical_path(faulty, plan);
            CHECK(t.path[0] == v);
            faulty.node_nets[0][v] = compiled.node_nets[0][v];
        }
    }
    SUBCASE("traced path exponent dominates the worst case") {
        const auto alpha_star = effective_regularity(spec, trace.path);
        const int D = spec.theorem_depth(), L = spec.level_count();
        for (int l = 0; l < L; ++l) {
            const int din = static_cast<int>(spec.levels[l][trace.path[l]].parents.size());
            const double expo = 2.0 * alpha_star[l] / (2.0 * L + (D + L) * din);
            CHECK(expo >= compiled.rate.worst_case_rate_exponent - 1e-15);
        }
    }
}

TEST_CASE("batch evaluation: parallel kernels match the serial reference bitwise") {
    const auto prod = build_product(8);
    const ProbePlan plan = ProbePlan::halton(symmetric_box(2, 1.0), 5000, 11);
    const Vec serial = evaluate_batch_serial(prod.net, plan);
    const Vec parallel = evaluate_batch(prod.net, plan);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) CHECK(serial[i] == parallel[i]);

    const auto oracle = [](const Vec& x) { return x[0] * x[1]; };
    const auto a = sup_scan_serial(prod.net, oracle, plan);
    const auto b = sup_scan(prod.net, oracle, plan);
    CHECK(a.max_abs_error == b.max_abs_error);
    CHECK(a.arg_index == b.arg_index);
}

TEST_SUITE_END();
