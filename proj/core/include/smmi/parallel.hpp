#ifndef SMMI_PARALLEL_HPP
#define SMMI_PARALLEL_HPP

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace smmi {

// Runs fn(i) for i in [0, n) across up to `threads` workers (0 -> hardware
// concurrency). Work items must write only to their own output slots; the
// static index split keeps results independent of scheduling. The first
// exception thrown by any item is rethrown on the calling thread.
template <typename Fn>
void parallel_for(std::size_t n, int threads, const Fn& fn) {
  unsigned nw = threads > 0 ? static_cast<unsigned>(threads)
                            : std::max(1u, std::thread::hardware_concurrency());
  if (nw > n) nw = static_cast<unsigned>(n == 0 ? 1 : n);
  if (nw <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(nw);
  for (unsigned t = 0; t < nw; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n && !failed.load(std::memory_order_relaxed); i += nw)
          fn(i);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace smmi

#endif
