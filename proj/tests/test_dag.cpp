#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "frob/errors.hpp"
#include "frob/verify.hpp"
#include "test_util.hpp"

using namespace frob;

namespace {

// chain DAG x -> n1 -> n2 -> n3 with the given smoothness declarations
DagSpec chain_spec(double a1, double a2, double a3) {
    DagSpec spec;
    spec.name = "chain";
    spec.input_dim = 1;
    auto node = [](std::string id, double alpha, const Box& box) {
        DagNode n;
        n.id = std::move(id);
        n.parents = {0};
        n.oracle = make_sine(1, 0.0, 0.7, 1.1, 0.3, alpha, box, 0.7, 3.0);
        n.range_bound = 0.7;
        return n;
    };
    spec.levels.push_back({node("n1", a1, symmetric_box(1, 1.0))});
    spec.levels.push_back({node("n2", a2, symmetric_box(1, 0.7))});
    spec.levels.push_back({node("n3", a3, symmetric_box(1, 0.7))});
    spec.validate();
    return spec;
}

} // namespace

TEST_SUITE_BEGIN("dag");

TEST_CASE("effective regularity along explicit paths") {
    SUBCASE("all nodes at least Lipschitz keep their own smoothness") {
        const auto spec = dag_gallery("binarytree-d4");
        const auto a = effective_regularity(spec, {0, 0});
        CHECK(a[0] == 2.0);
        CHECK(a[1] == 2.0);
        const auto b = effective_regularity(spec, {1, 0});
        CHECK(b[0] == 2.0);
    }
    SUBCASE("rough downstream nodes discount upstream smoothness") {
        const auto spec = chain_spec(2.0, 0.5, 0.5);
        const auto a = effective_regularity(spec, {0, 0, 0});
        CHECK(a[0] == doctest::Approx(2.0 * 0.5 * 0.5).epsilon(1e-15));
        CHECK(a[1] == doctest::Approx(0.5 * 0.5).epsilon(1e-15));
        CHECK(a[2] == 0.5);
    }
    SUBCASE("single level: empty product") {
        DagSpec spec;
        spec.input_dim = 2;
        DagNode n;
        n.id = "out";
        n.parents = {0, 1};
        n.oracle = make_polynomial(2, {{1.0, {1, 1}}}, 1.5, symmetric_box(2, 1.0), 1.0, 4.0);
        n.range_bound = 1.0;
        spec.levels.push_back({n});
        spec.validate();
        CHECK(effective_regularity(spec, {0})[0] == 1.5);
    }
    SUBCASE("invalid paths are rejected") {
        const auto spec = dag_gallery("binarytree-d4");
        CHECK_THROWS_AS(effective_regularity(spec, {0}), std::invalid_argument);
        CHECK_THROWS_AS(effective_regularity(spec, {5, 0}), std::invalid_argument);
    }
}

TEST_CASE("theorem depth identity") {
    CHECK(dag_gallery("binarytree-d4").theorem_depth() == 12);
    CHECK(dag_gallery("constlevel-L3").theorem_depth() == 18);
    CHECK(dag_gallery("binarytree-d8").theorem_depth() == 2 * 3 * 2 + 2 * 3);
}

TEST_CASE("allocate_budgets: symmetry, monotonicity, infeasibility") {
    const auto spec = dag_gallery("binarytree-d4");
    SUBCASE("symmetric graph allocates one common ceiling") {
        const auto alloc = allocate_budgets(spec, 1e44);
        CHECK(alloc.node_k[0][0] == alloc.node_k[0][1]);
        // identical node shapes across levels share the same k under one ceiling
        CHECK(alloc.node_k[1][0] == alloc.node_k[0][0]);
        CHECK(alloc.predicted_global_bound <= 1e44);
    }
    SUBCASE("doubling K never decreases any k") {
        const auto a = allocate_budgets(spec, 1e41);
        const auto b = allocate_budgets(spec, 2e41);
        for (std::size_t l = 0; l < a.node_k.size(); ++l)
            for (std::size_t v = 0; v < a.node_k[l].size(); ++v)
                CHECK(b.node_k[l][v] >= a.node_k[l][v]);
    }
    SUBCASE("infeasible budget reports the minimal feasible one") {
        try {
            allocate_budgets(spec, 10.0);
            FAIL("expected budget_infeasible_error");
        } catch (const budget_infeasible_error& e) {
            CHECK(e.minimal_feasible_budget > 10.0);
            CHECK_NOTHROW(allocate_budgets(spec, e.minimal_feasible_budget * 1.01));
        }
    }
}

TEST_CASE("compile_dag: depth identity, budget soundness, error bound") {
    const auto spec = dag_gallery("binarytree-d4");
    const double K = 2e46;
    const auto compiled = compile_dag(spec, K);
    CHECK(compiled.net.depth() == 12);
    CHECK(kappa(compiled.net) <= K);
    CHECK(compiled.cert.kappa <= compiled.cert.budget);
    CHECK(compiled.rate.depth_D == 12);
    CHECK(compiled.rate.global_K == K);

    // f(x) = (x1 x2 + x3 x4) / 2 against the compiled network
    const ProbePlan plan = ProbePlan::halton(symmetric_box(4, 1.0), 2048, 7);
    const auto sup = sup_scan(
        compiled.net, [&](const Vec& x) { return spec.eval_exact(x); }, plan);
    CHECK(sup.max_abs_error <= compiled.rate.total_error_bound);
    // the compiled function is a genuine approximation at desk scale
    CHECK(sup.max_abs_error < 0.5);

    // per-node data filled in
    for (const auto& nr : compiled.rate.per_node) {
        CHECK(nr.node_k >= 1);
        CHECK(nr.node_error_bound > 0.0);
        CHECK(nr.exponent >= compiled.rate.worst_case_rate_exponent);
    }
}

TEST_CASE("compile_dag: heterogeneous node depths exercise padding") {
    const auto spec = dag_gallery("constlevel-L3");
    const auto compiled = compile_dag(spec, 1e60);
    CHECK(compiled.net.depth() == 18);
    CHECK(kappa(compiled.net) <= 1e60);
    const ProbePlan plan = ProbePlan::halton(symmetric_box(3, 1.0), 1024, 9);
    const auto sup = sup_scan(
        compiled.net, [&](const Vec& x) { return spec.eval_exact(x); }, plan);
    CHECK(sup.max_abs_error <= compiled.rate.total_error_bound);
}

TEST_CASE("rate_table: single-node graph matches the flat rate form") {
    DagSpec spec;
    spec.input_dim = 2;
    DagNode n;
    n.id = "out";
    n.parents = {0, 1};
    n.oracle = make_polynomial(2, {{1.0, {1, 1}}}, 2.0, symmetric_box(2, 1.0), 1.0, 4.0);
    n.range_bound = 1.0;
    spec.levels.push_back({n});
    spec.validate();
    const auto table = rate_table(spec);
    const int D = spec.theorem_depth();
    CHECK(D == holder_depth(2, 1));
    CHECK(table.per_node[0].exponent ==
          doctest::Approx(2.0 * 2.0 / (2.0 + (D + 1.0) * 2.0)).epsilon(1e-15));
}

TEST_CASE("compile_dag: range violations name the offending node") {
    DagSpec spec;
    spec.input_dim = 2;
    DagNode n;
    n.id = "overflow";
    n.parents = {0, 1};
    // declared range 0.4 but the sum of two ball coordinates reaches ~1
    n.oracle = make_polynomial(2, {{0.5, {1, 0}}, {0.5, {0, 1}}}, 2.0, symmetric_box(2, 1.0), 0.4, 3.0);
    n.range_bound = 0.4;
    spec.levels.push_back({n});
    spec.validate();
    try {
        compile_dag(spec, 1e40);
        FAIL("expected oracle_inconsistency_error");
    } catch (const oracle_inconsistency_error& e) {
        CHECK(std::string(e.what()).find("overflow") != std::string::npos);
    }
}

TEST_CASE("rate_table: remark instantiations are exact") {
    SUBCASE("multi-index with s=3, r=1") {
        const auto table = rate_table(dag_gallery("multiindex-s3"));
        CHECK(table.remarks.multi_index);
        CHECK(table.remarks.C1 == 9.0);
        CHECK(table.remarks.multi_index_exponent == 2.0 / (9.0 * 3.0));
    }
    SUBCASE("binary tree with r=1 nodes") {
        const auto table = rate_table(dag_gallery("binarytree-d8"));
        CHECK(table.remarks.binary_tree);
        CHECK(table.remarks.C2 == 8.0);
        // alpha* = 2 for every node since all alphas are >= 1
        CHECK(table.remarks.binary_tree_exponent == 2.0 / (8.0 * 3.0));
    }
    SUBCASE("constant level L=3") {
        const auto table = rate_table(dag_gallery("constlevel-L3"));
        CHECK(table.remarks.constant_level_c == 3);
        CHECK(table.remarks.C3 == 8.5);
        // worst node: d_in = 2, alpha* = 2 -> 2 / (8.5 * 2)
        CHECK(table.remarks.constant_level_exponent == 2.0 / (8.5 * 2.0));
    }
    SUBCASE("worst case dominates every path") {
        for (const std::string name : {"binarytree-d4", "constlevel-L3", "multiindex-s2"}) {
            const auto table = rate_table(dag_gallery(name));
            CHECK(!table.paths.empty());
            for (const auto& p : table.paths) CHECK(p.exponent >= table.worst_case_rate_exponent);
        }
    }
}

TEST_CASE("dag spec file format round trip") {
    const std::string text = R"({
      "name": "tree",
      "levels": [["x0", "x1", "x2", "x3"], ["p0", "p1"], ["out"]],
      "edges": [
        {"child": "p0", "parents": ["x0", "x1"]},
        {"child": "p1", "parents": ["x2", "x3"]},
        {"child": "out", "parents": ["p0", "p1"]}
      ],
      "nodes": {
        "p0": {"oracle": {"kind": "product"}, "alpha": 2.0, "range_bound": 1.0},
        "p1": {"oracle": {"kind": "product"}, "alpha": 2.0, "range_bound": 1.0},
        "out": {"oracle": {"kind": "mean"}, "alpha": 2.0, "range_bound": 1.0}
      }
    })";
    const DagSpec spec = parse_dag_spec(text);
    CHECK(spec.input_dim == 4);
    CHECK(spec.levels.size() == 2);
    const Vec x{0.5, -0.5, 0.25, 0.5};
    CHECK(spec.eval_exact(x) ==
          doctest::Approx((0.5 * -0.5 + 0.25 * 0.5) / 2.0).epsilon(1e-15));

    SUBCASE("unknown keys are rejected") {
        const std::string bad =
            R"({"name": "x", "levels": [["a"],["b"]], "edges": [], "nodes": {}, "extra": 1})";
        CHECK_THROWS_AS(parse_dag_spec(bad), config_error);
    }
    SUBCASE("malformed json carries a byte offset") {
        CHECK_THROWS_AS(parse_dag_spec("{"), parse_error);
    }
}

TEST_SUITE_END();
