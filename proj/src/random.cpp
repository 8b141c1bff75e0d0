#include "acr/random.hpp"

#include <cassert>

namespace acr {

std::size_t RandomStream::below(std::size_t bound) {
    assert(bound > 0);
    const auto b = static_cast<std::uint64_t>(bound);
    // Reject the low tail so that every residue is equally likely.
    const std::uint64_t threshold = (0 - b) % b;
    for (;;) {
        const std::uint64_t x = engine_();
        if (x >= threshold) {
            return static_cast<std::size_t>(x % b);
        }
    }
}

double RandomStream::unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

}  // namespace acr
