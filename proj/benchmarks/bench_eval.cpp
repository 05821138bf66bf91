// Compares the serial reference kernels against the OpenMP ones on the
// probe-evaluation workloads that dominate verification runs, and checks that
// both paths agree bitwise.

#include <chrono>
#include <cstdio>

#include "frob/batch_eval.hpp"
#include "frob/holder.hpp"
#include "frob/primitives.hpp"

using namespace frob;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void bench_case(const char* name, const Network& net, const ProbePlan& plan) {
    auto t0 = std::chrono::steady_clock::now();
    const Vec serial = evaluate_batch_serial(net, plan);
    const double t_serial = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const Vec parallel = evaluate_batch(net, plan);
    const double t_parallel = seconds_since(t0);

    bool equal = serial.size() == parallel.size();
    for (std::size_t i = 0; equal && i < serial.size(); ++i) equal = serial[i] == parallel[i];

    std::printf("%-24s probes=%8lld  serial %8.3f s  openmp %8.3f s  speedup %5.2fx  bitwise %s\n",
                name, static_cast<long long>(plan.effective_count()), t_serial, t_parallel,
                t_serial / t_parallel, equal ? "equal" : "DIFFER");
}

} // namespace

int main() {
    {
        const auto sq = build_square(64);
        bench_case("square k=64", sq.net, ProbePlan::grid(unit_box(1), 2000001));
    }
    {
        const auto prod = build_product(50);
        bench_case("product k=50", prod.net, ProbePlan::grid(symmetric_box(2, 1.0), 250000));
    }
    {
        const auto mono = build_monomial(8, 10);
        bench_case("monomial d=8 k=10", mono.net, ProbePlan::halton(symmetric_box(8, 1.0), 100000, 3));
    }
    {
        const auto res = compile_holder(holder_gallery_target("holder-sq2d"), 15);
        bench_case("holder 2d k=15", res.network, ProbePlan::grid(unit_box(2), 4096));
    }
    return 0;
}
