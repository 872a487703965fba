#pragma once

// Overlap metrics for binary segmentation. Convention for degenerate inputs:
// both masks empty scores 1 (correctly predicted "no finding"); exactly one
// empty scores 0.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "pyra/types.hpp"

namespace pyra {

struct OverlapCounts {
    std::size_t intersection = 0;
    std::size_t pred = 0;
    std::size_t gt = 0;

    std::size_t union_size() const noexcept { return pred + gt - intersection; }
};

OverlapCounts overlap(const BinaryMask& pred, const BinaryMask& gt);

/// |pred ∩ gt| / |pred ∪ gt|.
double iou(const BinaryMask& pred, const BinaryMask& gt);
/// 2 |pred ∩ gt| / (|pred| + |gt|).
double dice(const BinaryMask& pred, const BinaryMask& gt);

struct EvalPair {
    std::string id;
    BinaryMask pred;
    BinaryMask gt;
};

struct ImageScore {
    std::string id;
    double iou;
    double dice;
};

struct EvalReport {
    std::vector<ImageScore> per_image;  // sorted by id
    double miou = 0.0;
    double mean_dice = 0.0;
    std::size_t count = 0;
};

/// Scores every pair (in parallel) and averages in id order. Throws on an empty
/// list, duplicate ids, or mismatched dimensions.
EvalReport evaluate(std::span<const EvalPair> pairs);

/// JSON with fixed key order and values printed at 6 decimal places.
std::string report_to_json(const EvalReport& report);

inline constexpr const char* empty_mask_convention =
    "both masks empty => iou = dice = 1; exactly one empty => 0";

}  // namespace pyra
