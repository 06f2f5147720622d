#ifndef BDLAB_PARALLEL_HPP
#define BDLAB_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace bdlab {

// out[i] = fn(i) for i in [0, n). threads == 0 runs inline; otherwise the index
// range is cut into contiguous chunks, one per worker. Output order never
// depends on scheduling. The first exception thrown by any worker is rethrown.
template <typename Result, typename Fn>
std::vector<Result> parallel_map(std::size_t n, unsigned threads, Fn&& fn) {
  std::vector<Result> out(n);
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  const std::size_t workers = std::min<std::size_t>(threads, n);
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        const std::size_t begin = n * w / workers, end = n * (w + 1) / workers;
        try {
          for (std::size_t i = begin; i < end; ++i) out[i] = fn(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace bdlab

#endif  // BDLAB_PARALLEL_HPP
