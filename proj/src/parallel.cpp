#include "corrnoise/parallel.hpp"

#include <cstdlib>
#include <string>

namespace corrnoise {

unsigned worker_count() {
    if (const char* env = std::getenv("CORRNOISE_WORKERS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
            // fall through to the hardware default
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

} // namespace corrnoise
