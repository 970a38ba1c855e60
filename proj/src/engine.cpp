#include "lexicluster/engine.hpp"

#include <cstdlib>

namespace lexicluster {

std::size_t default_worker_count() {
    if (const char* env = std::getenv("LEXICLUSTER_WORKERS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace lexicluster
