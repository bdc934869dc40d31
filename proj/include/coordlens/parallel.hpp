#pragma once

// Deterministic work distribution: results land in a slot per index, so the
// output never depends on thread scheduling. Thread count comes from
// COORDLENS_THREADS, defaulting to the hardware concurrency.

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace coordlens::parallel {

inline unsigned thread_count() {
  if (const char* env = std::getenv("COORDLENS_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && v <= 256) return (unsigned)v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

template <typename T, typename Fn>
std::vector<T> map_indexed(size_t count, Fn&& fn) {
  std::vector<T> out(count);
  unsigned workers = thread_count();
  if (workers <= 1 || count <= 1) {
    for (size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<size_t> next{0};
  auto body = [&] {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= count) break;
      out[i] = fn(i);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
  for (std::thread& t : pool) t.join();
  return out;
}

template <typename Fn>
void for_indexed(size_t count, Fn&& fn) {
  unsigned workers = thread_count();
  if (workers <= 1 || count <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  auto body = [&] {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= count) break;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
  for (std::thread& t : pool) t.join();
}

}  // namespace coordlens::parallel
