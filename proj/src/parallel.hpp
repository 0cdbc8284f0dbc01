#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace ringtherm::detail {

// Runs fn(i) for i in [0, n) across OpenMP threads. Exceptions cannot leave
// an OpenMP region, so each index records its own and the lowest failing
// index is rethrown afterwards.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    std::vector<std::exception_ptr> errors(n);
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < count; ++i) {
        try {
            fn(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace ringtherm::detail
