#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace harmvol {

/// Kernel dispatch: `serial` is the reference loop, `parallel` the OpenMP one.
/// Both produce identical results in identical order.
enum class Execution { serial, parallel };

/// Collects the first exception thrown inside an OpenMP region so it can be
/// rethrown on the calling thread.
class ExceptionSlot {
 public:
  template <class F>
  void run(F&& f) noexcept {
    try {
      f();
    } catch (...) {
      std::lock_guard lock(mutex_);
      if (!error_) error_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mutex_;
  std::exception_ptr error_;
};

}  // namespace harmvol

namespace harmvol {

/// Calls f(i) for i in [0, n). The parallel variant uses dynamic OpenMP
/// scheduling; f must write only to per-index state.
template <class F>
void for_each_index(std::size_t n, Execution exec, F&& f) {
  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  ExceptionSlot slot;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 4)
  for (long long i = 0; i < count; ++i) slot.run([&] { f(static_cast<std::size_t>(i)); });
  slot.rethrow();
}

}  // namespace harmvol
