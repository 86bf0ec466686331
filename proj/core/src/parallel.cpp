#include "polaron/parallel.hpp"

#include <atomic>
#include <charconv>
#include <cstdlib>
#include <string>

#include "polaron/error.hpp"

namespace polaron {
namespace {
std::atomic<unsigned> g_threads{0};
}

void set_thread_count(unsigned n) { g_threads.store(n); }

unsigned thread_count() {
  const unsigned n = g_threads.load();
  if (n > 0) return n;
  return std::max(1u, std::thread::hardware_concurrency());
}

unsigned thread_count_from_env() {
  const char* raw = std::getenv("POLARON_THREADS");
  if (raw == nullptr || *raw == '\0') return 0;
  const std::string s(raw);
  unsigned value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || value == 0) {
    throw InvalidArgument("POLARON_THREADS must be a positive integer, got '" + s + "'");
  }
  return value;
}

}  // namespace polaron
