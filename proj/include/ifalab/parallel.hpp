#pragma once

#include <cstddef>
#include <functional>

namespace ifalab {

/// Worker count: IFA_LAB_THREADS if set and positive, else hardware concurrency.
unsigned worker_count() noexcept;

/// Runs body(i) for i in [0, count) across workers; the first exception thrown
/// by any task is rethrown after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace ifalab
