// Execution helpers shared by the Monte Carlo kernels. Every kernel has a
// serial path kept as the reference for the OpenMP path; both must produce
// bit-identical results.
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace covert {

enum class Execution { Serial, Parallel };

/// Pairwise summation in fixed index order; the result depends only on the
/// input order, never on thread count.
double pairwise_sum(std::span<const double> values);

/// Runs fn(i) for i in [0, n). Iterations must be independent.
template <class Fn>
void for_each_index(std::int64_t n, Execution exec, Fn&& fn) {
    if (exec == Execution::Serial) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < n; ++i) fn(i);
}

}  // namespace covert
