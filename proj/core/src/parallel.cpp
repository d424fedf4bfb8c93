#include "cvwerner/parallel.hpp"

#include <cstdlib>

namespace cvwerner {

int worker_count() {
  if (const char* env = std::getenv("CVWERNER_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace cvwerner
