#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

namespace oscspectra {

// Fan-out width: hardware concurrency, capped by OSC_SPECTRA_THREADS when set.
std::size_t fanout_width();

// Runs body(i) for i in [0, count) over a static partition. Callers write into
// disjoint slots and reduce afterwards, so results do not depend on the width.
template <class Body>
void parallel_for(std::size_t count, Body&& body) {
    std::size_t const width = std::min(fanout_width(), count);
    if (width <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_lock;
    std::vector<std::thread> pool;
    pool.reserve(width);
    for (std::size_t t = 0; t < width; ++t) {
        std::size_t const begin = count * t / width;
        std::size_t const end = count * (t + 1) / width;
        pool.emplace_back([&, begin, end] {
            try {
                for (std::size_t i = begin; i < end; ++i) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> guard(failure_lock);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

// Sums body(i, acc) over i in [0, count) into `width` accumulators. Items are
// split into a fixed number of chunks whose partial sums are added in chunk
// order, so the result is bitwise independent of the fan-out width.
template <class Body>
std::vector<double> chunked_accumulate(std::size_t count, std::size_t width, Body&& body) {
    constexpr std::size_t kChunks = 32;
    std::size_t const chunks = std::min(kChunks, std::max<std::size_t>(count, 1));
    std::vector<std::vector<double>> partial(chunks, std::vector<double>(width, 0.0));
    parallel_for(chunks, [&](std::size_t c) {
        std::size_t const begin = count * c / chunks;
        std::size_t const end = count * (c + 1) / chunks;
        for (std::size_t i = begin; i < end; ++i) body(i, std::span<double>(partial[c]));
    });
    std::vector<double> total(width, 0.0);
    for (auto const& p : partial)
        for (std::size_t k = 0; k < width; ++k) total[k] += p[k];
    return total;
}

}  // namespace oscspectra
