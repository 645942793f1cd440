#include "hforge/runtime.hpp"

#include <cstdlib>
#include <mutex>

namespace hforge {

int thread_cap() {
    static const int cap = [] {
        if (const char* env = std::getenv("HELFRICH_FORGE_THREADS")) {
            int v = std::atoi(env);
            if (v >= 1) return v;
        }
        unsigned hw = std::thread::hardware_concurrency();
        return hw == 0 ? 1 : static_cast<int>(hw);
    }();
    return cap;
}

}  // namespace hforge
