#ifndef WARMFLOW_WORK_H_
#define WARMFLOW_WORK_H_

#include <coroutine>
#include <cstdint>
#include <exception>
#include <utility>

namespace warmflow {

// One unit of metered work: an arc (or edge) examined by a solver.
struct ArcScan {};

// A resumable solver run. The coroutine body suspends with
// `co_yield ArcScan{}` after every arc it examines, so a caller can advance
// two runs in lockstep and stop either at an exact work count. Results are
// written to objects the caller owns; those must outlive the task.
class WorkTask {
 public:
  struct promise_type {
    std::exception_ptr error;

    WorkTask get_return_object() {
      return WorkTask(std::coroutine_handle<promise_type>::from_promise(*this));
    }
    std::suspend_always initial_suspend() noexcept { return {}; }
    std::suspend_always final_suspend() noexcept { return {}; }
    std::suspend_always yield_value(ArcScan) noexcept { return {}; }
    void return_void() noexcept {}
    void unhandled_exception() { error = std::current_exception(); }
  };

  WorkTask() = default;
  WorkTask(WorkTask&& other) noexcept
      : handle_(std::exchange(other.handle_, nullptr)) {}
  WorkTask& operator=(WorkTask&& other) noexcept {
    if (this != &other) {
      destroy();
      handle_ = std::exchange(other.handle_, nullptr);
    }
    return *this;
  }
  WorkTask(const WorkTask&) = delete;
  WorkTask& operator=(const WorkTask&) = delete;
  ~WorkTask() { destroy(); }

  bool done() const { return !handle_ || handle_.done(); }

  // Runs to the next unit of work. Returns false once the body has
  // finished (that final resume performs no metered work). Rethrows any
  // exception escaping the body.
  bool step() {
    if (done()) return false;
    handle_.resume();
    if (handle_.done()) {
      if (auto error = std::exchange(handle_.promise().error, nullptr)) {
        std::rethrow_exception(error);
      }
      return false;
    }
    return true;
  }

  // Performs at most `budget` units. Returns the number performed; the task
  // is finished when done() reports true afterwards.
  int64_t run(int64_t budget) {
    int64_t used = 0;
    while (used < budget && step()) ++used;
    return used;
  }

  // Drains the task, returning the total units performed.
  int64_t run_to_completion() {
    int64_t used = 0;
    while (step()) ++used;
    return used;
  }

 private:
  explicit WorkTask(std::coroutine_handle<promise_type> handle)
      : handle_(handle) {}
  void destroy() {
    if (handle_) handle_.destroy();
    handle_ = nullptr;
  }

  std::coroutine_handle<promise_type> handle_;
};

}  // namespace warmflow

#endif  // WARMFLOW_WORK_H_
