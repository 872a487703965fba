#pragma once

// Brute-force reference implementations. Deliberately naive: plain nested
// loops over pixels, no shared helpers with the library.

#include <bitset>
#include <cmath>
#include <cstdint>
#include <vector>

#include "pyra/types.hpp"

namespace pyra::oracle {

/// Steps (i)-(iii) literally: split into cells, count true pixels, fill cells with count > 0.
inline std::vector<std::uint8_t> gridify(const BinaryMask& mask, std::size_t n) {
    const std::size_t size = mask.width();
    const std::size_t cell = size / n;
    std::vector<std::uint8_t> out(size * size, 0);
    for (std::size_t ci = 0; ci < n; ++ci) {
        for (std::size_t cj = 0; cj < n; ++cj) {
            std::size_t count = 0;
            for (std::size_t r = ci * cell; r < (ci + 1) * cell; ++r)
                for (std::size_t c = cj * cell; c < (cj + 1) * cell; ++c)
                    if (mask.at(r, c))
                        ++count;
            if (count > 0)
                for (std::size_t r = ci * cell; r < (ci + 1) * cell; ++r)
                    for (std::size_t c = cj * cell; c < (cj + 1) * cell; ++c)
                        out[r * size + c] = 1;
        }
    }
    return out;
}

inline std::vector<std::uint32_t> cell_counts(const BinaryMask& mask, std::size_t n) {
    const std::size_t cell = mask.width() / n;
    std::vector<std::uint32_t> out(n * n, 0);
    for (std::size_t r = 0; r < mask.height(); ++r)
        for (std::size_t c = 0; c < mask.width(); ++c)
            out[(r / cell) * n + c / cell] += mask.at(r, c) ? 1 : 0;
    return out;
}

struct SetScores {
    double iou;
    double dice;
};

/// Set measures from bitset popcounts on masks of at most 1024 pixels.
inline SetScores set_scores(const BinaryMask& a, const BinaryMask& b) {
    std::bitset<1024> sa, sb;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        sa[i] = a.data()[i] != 0;
        sb[i] = b.data()[i] != 0;
    }
    const double inter = static_cast<double>((sa & sb).count());
    const double uni = static_cast<double>((sa | sb).count());
    const double total = static_cast<double>(sa.count() + sb.count());
    return {uni == 0 ? 1.0 : inter / uni, total == 0 ? 1.0 : 2.0 * inter / total};
}

struct MeanStd {
    std::vector<double> mean;
    std::vector<double> std;
};

/// Per-pixel mean and population std via long double two-pass sums.
inline MeanStd mean_std(const std::vector<ProbabilityMap>& samples) {
    const std::size_t pixels = samples.front().data().size();
    MeanStd out{std::vector<double>(pixels), std::vector<double>(pixels)};
    for (std::size_t i = 0; i < pixels; ++i) {
        long double sum = 0;
        for (const auto& s : samples)
            sum += s.data()[i];
        const long double m = sum / samples.size();
        long double sq = 0;
        for (const auto& s : samples)
            sq += (s.data()[i] - m) * (s.data()[i] - m);
        out.mean[i] = static_cast<double>(m);
        out.std[i] = static_cast<double>(std::sqrt(sq / samples.size()));
    }
    return out;
}

/// Cell averaging then thresholding, one cell at a time.
inline std::vector<std::uint8_t> snap(const ProbabilityMap& pred, std::size_t n, double threshold) {
    const std::size_t size = pred.width();
    const std::size_t cell = size / n;
    std::vector<std::uint8_t> out(size * size, 0);
    for (std::size_t ci = 0; ci < n; ++ci) {
        for (std::size_t cj = 0; cj < n; ++cj) {
            double sum = 0;
            for (std::size_t r = ci * cell; r < (ci + 1) * cell; ++r)
                for (std::size_t c = cj * cell; c < (cj + 1) * cell; ++c)
                    sum += pred.at(r, c);
            const bool on = sum / static_cast<double>(cell * cell) > threshold;
            for (std::size_t r = ci * cell; r < (ci + 1) * cell; ++r)
                for (std::size_t c = cj * cell; c < (cj + 1) * cell; ++c)
                    out[r * size + c] = on ? 1 : 0;
        }
    }
    return out;
}

}  // namespace pyra::oracle
