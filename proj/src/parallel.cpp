#include "oscspectra/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace oscspectra {

std::size_t fanout_width() {
    std::size_t width = std::max(1u, std::thread::hardware_concurrency());
    if (char const* cap = std::getenv("OSC_SPECTRA_THREADS")) {
        try {
            long const requested = std::stol(cap);
            if (requested >= 1) width = std::min(width, static_cast<std::size_t>(requested));
        } catch (...) {
            // unparsable cap is ignored
        }
    }
    return width;
}

}  // namespace oscspectra
