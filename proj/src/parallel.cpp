#include "emptystar/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace emptystar {

std::size_t worker_count() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("EMPTYSTAR_THREADS")) {
    std::size_t cap = 0;
    auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), cap);
    if (ec == std::errc() && cap > 0) n = std::min(n, cap);
  }
  return n;
}

}  // namespace emptystar
