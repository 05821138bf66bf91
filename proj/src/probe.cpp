#include "frob/probe.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace frob {

std::string to_string(ProbeKind kind) {
    return kind == ProbeKind::uniform_grid ? "uniform_grid" : "low_discrepancy";
}

ProbePlan ProbePlan::grid(const Box& box, std::int64_t count) {
    ProbePlan p;
    p.kind = ProbeKind::uniform_grid;
    p.count = count;
    p.box = box;
    return p;
}

ProbePlan ProbePlan::halton(const Box& box, std::int64_t count, std::uint64_t seed) {
    ProbePlan p;
    p.kind = ProbeKind::low_discrepancy;
    p.count = count;
    p.seed = seed;
    p.box = box;
    return p;
}

namespace {

// per-axis point count m such that m^dim >= requested count
std::int64_t grid_side(std::int64_t count, int dim) {
    std::int64_t m = std::max<std::int64_t>(
        2, static_cast<std::int64_t>(std::ceil(std::pow(static_cast<double>(count), 1.0 / dim) - 1e-9)));
    return m;
}

} // namespace

std::int64_t ProbePlan::effective_count() const {
    if (kind == ProbeKind::low_discrepancy) return count;
    const int d = dim();
    const std::int64_t m = grid_side(count, d);
    std::int64_t total = 1;
    for (int i = 0; i < d; ++i) total *= m;
    return total;
}

Vec ProbePlan::point(std::int64_t index) const {
    const int d = dim();
    Vec x(d);
    if (kind == ProbeKind::uniform_grid) {
        const std::int64_t m = grid_side(count, d);
        std::int64_t rem = index;
        for (int i = 0; i < d; ++i) {
            const std::int64_t c = rem % m;
            rem /= m;
            const double t = static_cast<double>(c) / static_cast<double>(m - 1);
            x[i] = box[i].lo + (box[i].hi - box[i].lo) * t;
        }
        return x;
    }
    // rotated Halton; rotation offsets derived from the seed
    std::uint64_t sm = seed ^ 0x5851f42d4c957f2dULL;
    for (int i = 0; i < d; ++i) {
        const double shift = static_cast<double>(splitmix64(sm) >> 11) * 0x1.0p-53;
        double t = radical_inverse(static_cast<std::uint64_t>(index) + 1, nth_prime(i)) + shift;
        if (t >= 1.0) t -= 1.0;
        x[i] = box[i].lo + (box[i].hi - box[i].lo) * t;
    }
    return x;
}

} // namespace frob
