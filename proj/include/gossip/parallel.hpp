#pragma once

#include <cstdint>
#include <cstdlib>
#include <exception>
#include <string>
#include <vector>

#include <omp.h>

namespace gossip {

/// Thread count for trial-parallel work: GOSSIP_SIM_JOBS if set and
/// positive, otherwise the OpenMP default.
inline unsigned default_jobs() {
    if (const char* env = std::getenv("GOSSIP_SIM_JOBS")) {
        try {
            long v = std::stol(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return static_cast<unsigned>(omp_get_max_threads());
}

/// Evaluates fn(i) for i in [0, count) on the calling thread.
template <class Fn>
auto serial_trials(std::uint64_t count, Fn&& fn) {
    using T = decltype(fn(std::uint64_t{0}));
    std::vector<T> out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) out.push_back(fn(i));
    return out;
}

/// Evaluates fn(i) for i in [0, count) across `jobs` threads. Results are
/// stored by index, so the output does not depend on scheduling. fn must not
/// touch shared mutable state. If trials throw, one of the exceptions is
/// rethrown after the loop.
template <class Fn>
auto parallel_trials(std::uint64_t count, unsigned jobs, Fn&& fn) {
    using T = decltype(fn(std::uint64_t{0}));
    std::vector<T> out(count);
    std::exception_ptr error;
    const auto total = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic) num_threads(jobs > 0 ? jobs : 1)
    for (std::int64_t i = 0; i < total; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = fn(static_cast<std::uint64_t>(i));
        } catch (...) {
#pragma omp critical(gossip_parallel_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return out;
}

}  // namespace gossip
