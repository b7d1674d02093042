#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace s3 {

// Evaluates fn(0..n_chunks-1) on up to `threads` workers and returns the
// results in chunk order. Chunk boundaries never depend on the thread count,
// so any reduction done over the returned vector is bitwise reproducible.
template <class R, class F>
std::vector<R> map_chunks(std::size_t n_chunks, unsigned threads, F fn) {
  std::vector<R> out(n_chunks);
  unsigned nt = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n_chunks)));
  if (nt <= 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) out[c] = fn(c);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto worker = [&] {
    for (;;) {
      std::size_t c = next.fetch_add(1);
      if (c >= n_chunks) return;
      try {
        out[c] = fn(c);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!err) err = std::current_exception();
        next = n_chunks;
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
  return out;
}

}  // namespace s3
