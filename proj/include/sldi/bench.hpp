#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <vector>

namespace sldi {

/// Median wall-clock seconds of `runs` calls to fn, after one warm-up call.
/// Calls shorter than `min_batch` seconds are repeated and averaged.
template <class Fn>
double median_seconds(Fn&& fn, std::size_t runs = 5, double min_batch = 1e-3) {
    using Clock = std::chrono::steady_clock;
    fn();
    std::size_t batch = 1;
    for (;;) {
        const auto t0 = Clock::now();
        for (std::size_t b = 0; b < batch; ++b) fn();
        const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
        if (dt >= min_batch || batch >= (1u << 20)) break;
        batch *= 2;
    }
    std::vector<double> samples;
    for (std::size_t r = 0; r < runs; ++r) {
        const auto t0 = Clock::now();
        for (std::size_t b = 0; b < batch; ++b) fn();
        samples.push_back(std::chrono::duration<double>(Clock::now() - t0).count() / static_cast<double>(batch));
    }
    std::nth_element(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(samples.size() / 2), samples.end());
    return samples[samples.size() / 2];
}

}  // namespace sldi
