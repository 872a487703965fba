#pragma once

#include <cstddef>
#include <utility>

#include <tbb/blocked_range.h>
#include <tbb/global_control.h>
#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

namespace pyra {

/// Runs body(i) for every i in [0, count) on the current TBB arena. Callers must
/// only write to per-index outputs so results do not depend on scheduling.
template <class Body>
void parallel_for(std::size_t count, Body&& body) {
    tbb::parallel_for(tbb::blocked_range<std::size_t>(0, count),
                      [&](const tbb::blocked_range<std::size_t>& range) {
                          for (std::size_t i = range.begin(); i != range.end(); ++i)
                              body(i);
                      });
}

/// Fixed-size worker pool; work submitted through run() uses exactly `threads`
/// workers (0 selects the machine default).
class Executor {
public:
    explicit Executor(std::size_t threads)
        : threads_(threads ? threads : static_cast<std::size_t>(tbb::info::default_concurrency())),
          control_(tbb::global_control::max_allowed_parallelism, threads_),
          arena_(static_cast<int>(threads_)) {}

    std::size_t threads() const noexcept { return threads_; }

    template <class F>
    decltype(auto) run(F&& f) {
        return arena_.execute(std::forward<F>(f));
    }

private:
    std::size_t threads_;
    tbb::global_control control_;
    tbb::task_arena arena_;
};

}  // namespace pyra
