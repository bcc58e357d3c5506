#include "enpp/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <future>
#include <string>
#include <thread>
#include <vector>

namespace enpp {

int thread_budget() {
  int requested = 0;
  if (const char* env = std::getenv("ENPP_THREADS")) {
    try {
      requested = std::stoi(env);
    } catch (const std::exception&) {
      requested = 0;
    }
  }
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_invoke(const std::function<void()>& first, const std::function<void()>& second) {
  if (thread_budget() < 2) {
    first();
    second();
    return;
  }
  auto pending = std::async(std::launch::async, second);
  std::exception_ptr error;
  try {
    first();
  } catch (...) {
    error = std::current_exception();
  }
  try {
    pending.get();
  } catch (...) {
    if (!error) error = std::current_exception();
  }
  if (error) std::rethrow_exception(error);
}

void parallel_for(int count, const std::function<void(int)>& f) {
  const int workers = std::min(thread_budget(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) f(i);
    return;
  }
  std::vector<std::future<void>> tasks;
  for (int w = 0; w < workers; ++w) {
    tasks.push_back(std::async(std::launch::async, [&, w] {
      for (int i = w; i < count; i += workers) f(i);
    }));
  }
  std::exception_ptr error;
  for (auto& t : tasks) {
    try {
      t.get();
    } catch (...) {
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace enpp
