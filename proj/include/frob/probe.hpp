#pragma once

#include <cstdint>
#include <string>

#include "frob/oracle.hpp"
#include "frob/rng.hpp"

namespace frob {

enum class ProbeKind { uniform_grid, low_discrepancy };

// Deterministic probe set over a box: either a regular lattice or a
// Cranley-Patterson rotated Halton sequence. point(i) is a pure function of
// (kind, count, seed, box) so probe evaluation can run data-parallel.
struct ProbePlan {
    ProbeKind kind = ProbeKind::uniform_grid;
    std::int64_t count = 1000;
    std::uint64_t seed = 0;
    Box box;

    int dim() const { return static_cast<int>(box.size()); }
    std::int64_t effective_count() const;
    Vec point(std::int64_t index) const;

    static ProbePlan grid(const Box& box, std::int64_t count);
    static ProbePlan halton(const Box& box, std::int64_t count, std::uint64_t seed);
};

std::string to_string(ProbeKind kind);

} // namespace frob
