#include "pyra/metrics.hpp"

#include <algorithm>
#include <cstdio>

#include <json.hpp>

#include "pyra/error.hpp"
#include "pyra/parallel.hpp"

namespace pyra {

namespace {

std::string fixed6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace

OverlapCounts overlap(const BinaryMask& pred, const BinaryMask& gt) {
    if (pred.width() != gt.width() || pred.height() != gt.height())
        throw ValidationError("metrics: prediction is " + std::to_string(pred.width()) + "x" +
                              std::to_string(pred.height()) + " but ground truth is " +
                              std::to_string(gt.width()) + "x" + std::to_string(gt.height()));
    const auto a = pred.data();
    const auto b = gt.data();
    OverlapCounts counts;
    for (std::size_t i = 0; i < a.size(); ++i) {
        counts.intersection += a[i] & b[i];
        counts.pred += a[i];
        counts.gt += b[i];
    }
    return counts;
}

double iou(const BinaryMask& pred, const BinaryMask& gt) {
    const auto c = overlap(pred, gt);
    const std::size_t u = c.union_size();
    if (u == 0)
        return 1.0;
    return static_cast<double>(c.intersection) / static_cast<double>(u);
}

double dice(const BinaryMask& pred, const BinaryMask& gt) {
    const auto c = overlap(pred, gt);
    const std::size_t total = c.pred + c.gt;
    if (total == 0)
        return 1.0;
    return 2.0 * static_cast<double>(c.intersection) / static_cast<double>(total);
}

EvalReport evaluate(std::span<const EvalPair> pairs) {
    if (pairs.empty())
        throw ValidationError("evaluate: no prediction/ground-truth pairs");

    std::vector<std::size_t> order(pairs.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return pairs[a].id < pairs[b].id; });
    for (std::size_t i = 1; i < order.size(); ++i)
        if (pairs[order[i]].id == pairs[order[i - 1]].id)
            throw ValidationError("evaluate: duplicate id \"" + pairs[order[i]].id + "\"");

    EvalReport report;
    report.per_image.resize(pairs.size());
    parallel_for(order.size(), [&](std::size_t k) {
        const EvalPair& p = pairs[order[k]];
        report.per_image[k] = {p.id, iou(p.pred, p.gt), dice(p.pred, p.gt)};
    });

    double iou_sum = 0.0;
    double dice_sum = 0.0;
    for (const auto& s : report.per_image) {
        iou_sum += s.iou;
        dice_sum += s.dice;
    }
    report.count = report.per_image.size();
    report.miou = iou_sum / static_cast<double>(report.count);
    report.mean_dice = dice_sum / static_cast<double>(report.count);
    return report;
}

std::string report_to_json(const EvalReport& report) {
    std::string out = "{\n";
    out += "  \"miou\": " + fixed6(report.miou) + ",\n";
    out += "  \"mean_dice\": " + fixed6(report.mean_dice) + ",\n";
    out += "  \"count\": " + std::to_string(report.count) + ",\n";
    out += "  \"empty_mask_convention\": " + nlohmann::json(empty_mask_convention).dump() + ",\n";
    out += "  \"per_image\": [";
    for (std::size_t i = 0; i < report.per_image.size(); ++i) {
        const auto& s = report.per_image[i];
        out += i == 0 ? "\n" : ",\n";
        out += "    {\"id\": " + nlohmann::json(s.id).dump() + ", \"iou\": " + fixed6(s.iou) +
               ", \"dice\": " + fixed6(s.dice) + "}";
    }
    out += report.per_image.empty() ? "]\n" : "\n  ]\n";
    out += "}\n";
    return out;
}

}  // namespace pyra
