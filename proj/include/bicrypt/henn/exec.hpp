#pragma once

#include <exception>
#include <vector>

#include "bicrypt/ckks/op_recorder.hpp"

namespace bicrypt::henn {

enum class ExecPolicy { Serial, Parallel };

/// Runs body(i, rec) for i in [0, n). Parallel mode gives each unit its own
/// recorder and merges them in index order, so counts never depend on scheduling.
template <class Body>
void for_each_unit(ExecPolicy policy, int n, ckks::OpRecorder& rec, Body&& body) {
    if (policy == ExecPolicy::Serial || n <= 1) {
        for (int i = 0; i < n; ++i) body(i, rec);
        return;
    }
    std::vector<ckks::OpRecorder> local(static_cast<std::size_t>(n), rec.fork());
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        try {
            body(i, local[static_cast<std::size_t>(i)]);
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    for (const auto& r : local) rec.merge(r);
}

}  // namespace bicrypt::henn
