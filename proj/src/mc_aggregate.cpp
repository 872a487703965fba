#include "pyra/mc_aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "pyra/error.hpp"
#include "pyra/parallel.hpp"

namespace pyra {

McSummary aggregate(std::span<const ProbabilityMap> samples) {
    if (samples.empty())
        throw ValidationError("aggregate: no samples");
    const std::size_t width = samples.front().width();
    const std::size_t height = samples.front().height();
    for (std::size_t k = 1; k < samples.size(); ++k)
        if (samples[k].width() != width || samples[k].height() != height)
            throw ValidationError("aggregate: sample " + std::to_string(k) + " is " +
                                  std::to_string(samples[k].width()) + "x" +
                                  std::to_string(samples[k].height()) + ", expected " +
                                  std::to_string(width) + "x" + std::to_string(height));

    const double k_count = static_cast<double>(samples.size());
    std::vector<double> mean(width * height);
    std::vector<double> stddev(width * height);
    parallel_for(height, [&](std::size_t row) {
        for (std::size_t i = row * width; i < (row + 1) * width; ++i) {
            double sum = 0.0;
            double lo = samples.front().data()[i];
            double hi = lo;
            for (const auto& s : samples) {
                const double v = s.data()[i];
                sum += v;
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            // sum / K can land one ulp outside the sample range.
            const double m = std::clamp(sum / k_count, lo, hi);
            double sq = 0.0;
            for (const auto& s : samples) {
                const double d = s.data()[i] - m;
                sq += d * d;
            }
            mean[i] = m;
            stddev[i] = std::min(std::sqrt(sq / k_count), UncertaintyMap::upper_bound);
        }
    });
    return {ProbabilityMap(width, height, std::move(mean)),
            UncertaintyMap(width, height, std::move(stddev))};
}

BinaryMask binarize(const ProbabilityMap& map, double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0))
        throw ValidationError("binarize: threshold must lie in (0, 1)");
    const auto values = map.data();
    std::vector<std::uint8_t> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        out[i] = values[i] > threshold ? 1 : 0;
    return BinaryMask(map.width(), map.height(), std::move(out));
}

}  // namespace pyra
