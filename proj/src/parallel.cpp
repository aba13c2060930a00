#include "alflab/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>

namespace alflab {

unsigned thread_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ALFLAB_THREADS")) {
    try {
      const long cap = std::stol(env);
      if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    } catch (...) {
    }
  }
  return n;
}

void parallel_ranges(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body,
                     std::size_t min_chunk) {
  if (n == 0) return;
  const std::size_t workers =
      std::min<std::size_t>(thread_count(), (n + min_chunk - 1) / std::max<std::size_t>(1, min_chunk));
  if (workers <= 1) {
    body(0, n);
    return;
  }
  const std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t b = w * chunk;
    const std::size_t e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&body, b, e] { body(b, e); });
  }
  for (auto& t : pool) t.join();
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, std::size_t min_chunk) {
  parallel_ranges(
      n,
      [&body](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) body(i);
      },
      min_chunk);
}

double deterministic_sum(std::size_t n, const std::function<double(std::size_t)>& term) {
  constexpr std::size_t block = 4096;
  const std::size_t nb = (n + block - 1) / block;
  std::vector<double> partial(nb, 0.0);
  parallel_for(
      nb,
      [&](std::size_t b) {
        double s = 0.0;
        const std::size_t e = std::min(n, (b + 1) * block);
        for (std::size_t i = b * block; i < e; ++i) s += term(i);
        partial[b] = s;
      },
      4);
  double s = 0.0;
  for (double p : partial) s += p;
  return s;
}

}  // namespace alflab
