#pragma once

#include <functional>

namespace enpp {

/// Worker count from ENPP_THREADS (0 or unset means hardware concurrency).
int thread_budget();

/// Runs both tasks, concurrently when the budget allows, and rethrows the first
/// exception after both have finished.
void parallel_invoke(const std::function<void()>& first, const std::function<void()>& second);

/// Calls f(i) for i in [0, count), split over the thread budget.
void parallel_for(int count, const std::function<void(int)>& f);

}  // namespace enpp
