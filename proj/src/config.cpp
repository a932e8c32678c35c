#include "parastat/config.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include "parastat/errors.hpp"

namespace parastat {
namespace {

std::size_t read_env_bound() {
  constexpr std::size_t kDefault = 4096;
  const char* env = std::getenv("PARASTAT_MAX_DIM");
  if (env == nullptr || *env == '\0') return kDefault;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || v == 0) return kDefault;
  return static_cast<std::size_t>(v);
}

std::atomic<std::size_t>& bound() {
  static std::atomic<std::size_t> b{read_env_bound()};
  return b;
}

}  // namespace

std::size_t max_dimension() { return bound().load(); }

void set_max_dimension(std::size_t b) { bound().store(b); }

void check_dimension(std::size_t dim, const char* what) {
  if (dim > max_dimension()) {
    throw SizingError(std::string(what) + ": dimension " + std::to_string(dim) +
                      " exceeds bound " + std::to_string(max_dimension()));
  }
}

}  // namespace parastat
