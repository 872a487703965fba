#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include "pyra/augment.hpp"
#include "pyra/error.hpp"
#include "pyra/gridgen.hpp"
#include "pyra/gridify.hpp"
#include "pyra/manifest.hpp"
#include "pyra/mc_aggregate.hpp"
#include "pyra/metrics.hpp"
#include "pyra/png_io.hpp"
#include "pyra/postproc.hpp"
#include "pyra/render.hpp"

namespace py = pybind11;
using namespace pyra;

namespace {

using U8Array = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;
using F64Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

ImageRaster to_image(const U8Array& a) {
    if (a.ndim() != 2 && a.ndim() != 3)
        throw ValidationError("image array must have shape (H, W) or (H, W, C)");
    const std::size_t h = a.shape(0), w = a.shape(1);
    const std::size_t c = a.ndim() == 3 ? a.shape(2) : 1;
    return ImageRaster(w, h, c, std::vector<std::uint8_t>(a.data(), a.data() + a.size()));
}

BinaryMask to_mask(const U8Array& a) {
    if (a.ndim() != 2)
        throw ValidationError("mask array must have shape (H, W)");
    std::vector<std::uint8_t> px(a.data(), a.data() + a.size());
    for (auto& v : px)
        v = v ? 1 : 0;
    return BinaryMask(a.shape(1), a.shape(0), std::move(px));
}

std::vector<double> map_values(const F64Array& a) {
    if (a.ndim() != 2)
        throw ValidationError("map array must have shape (H, W)");
    return {a.data(), a.data() + a.size()};
}

ProbabilityMap to_probability(const F64Array& a) {
    return ProbabilityMap(a.shape(1), a.shape(0), map_values(a));
}

UncertaintyMap to_uncertainty(const F64Array& a) {
    return UncertaintyMap(a.shape(1), a.shape(0), map_values(a));
}

py::array_t<std::uint8_t> from_image(const ImageRaster& img) {
    std::vector<py::ssize_t> shape{static_cast<py::ssize_t>(img.height()),
                                   static_cast<py::ssize_t>(img.width())};
    if (img.channels() > 1)
        shape.push_back(static_cast<py::ssize_t>(img.channels()));
    py::array_t<std::uint8_t> out(shape);
    std::memcpy(out.mutable_data(), img.data().data(), img.data().size());
    return out;
}

py::array_t<std::uint8_t> from_mask(const BinaryMask& m) {
    py::array_t<std::uint8_t> out({static_cast<py::ssize_t>(m.height()),
                                   static_cast<py::ssize_t>(m.width())});
    std::memcpy(out.mutable_data(), m.data().data(), m.data().size());
    return out;
}

py::array_t<double> from_map(const RealMap& m) {
    py::array_t<double> out({static_cast<py::ssize_t>(m.height()),
                             static_cast<py::ssize_t>(m.width())});
    std::memcpy(out.mutable_data(), m.data().data(), m.data().size() * sizeof(double));
    return out;
}

py::dict report_dict(const EvalReport& r) {
    py::list per_image;
    for (const auto& s : r.per_image)
        per_image.append(py::dict(py::arg("id") = s.id, py::arg("iou") = s.iou,
                                  py::arg("dice") = s.dice));
    return py::dict(py::arg("miou") = r.miou, py::arg("mean_dice") = r.mean_dice,
                    py::arg("count") = r.count, py::arg("per_image") = per_image);
}

}  // namespace

PYBIND11_MODULE(_pyra, m) {
    m.doc() = "Grid-pyramid augmentation, metrics and Monte-Carlo aggregation";
    m.attr("__version__") = "1.0.0";
    m.attr("DEFAULT_PYRAMID") = std::vector<std::size_t>(default_pyramid.begin(), default_pyramid.end());

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    // Grids and gridification.
    m.def("make_grid", [](std::size_t n, std::size_t size) {
        return from_image(make_grid(GridSpec(n, size)).raster());
    }, py::arg("n"), py::arg("size"));
    m.def("stack_input", [](const U8Array& image, std::size_t n) {
        const auto img = to_image(image);
        return from_image(stack_input(img, make_grid(GridSpec(n, img.width()))));
    }, py::arg("image"), py::arg("n"), "Append the n-cell grid as a fourth channel.");
    m.def("gridify_mask", [](const U8Array& mask, std::size_t n) {
        const auto mk = to_mask(mask);
        return from_mask(gridify_mask(mk, GridSpec(n, mk.width())).mask());
    }, py::arg("mask"), py::arg("n"));
    m.def("cell_counts", [](const U8Array& mask, std::size_t n) {
        const auto mk = to_mask(mask);
        const auto counts = cell_counts(mk, GridSpec(n, mk.width()));
        py::array_t<std::uint32_t> out({static_cast<py::ssize_t>(n), static_cast<py::ssize_t>(n)});
        std::memcpy(out.mutable_data(), counts.values().data(), n * n * sizeof(std::uint32_t));
        return out;
    }, py::arg("mask"), py::arg("n"));

    // Metrics.
    m.def("iou", [](const U8Array& p, const U8Array& g) { return iou(to_mask(p), to_mask(g)); },
          py::arg("pred"), py::arg("gt"));
    m.def("dice", [](const U8Array& p, const U8Array& g) { return dice(to_mask(p), to_mask(g)); },
          py::arg("pred"), py::arg("gt"));
    m.def("evaluate", [](const std::vector<std::tuple<std::string, U8Array, U8Array>>& items) {
        std::vector<EvalPair> pairs;
        for (const auto& [id, p, g] : items)
            pairs.push_back({id, to_mask(p), to_mask(g)});
        return report_dict(evaluate(pairs));
    }, py::arg("pairs"), "pairs: list of (id, pred_mask, gt_mask).");

    // Monte-Carlo aggregation and post-processing.
    m.def("aggregate", [](const std::vector<F64Array>& samples) {
        std::vector<ProbabilityMap> maps;
        for (const auto& s : samples)
            maps.push_back(to_probability(s));
        const auto summary = aggregate(maps);
        return py::make_tuple(from_map(summary.mean), from_map(summary.std));
    }, py::arg("samples"), "Returns (mean, std).");
    m.def("binarize", [](const F64Array& map, double threshold) {
        return from_mask(binarize(to_probability(map), threshold));
    }, py::arg("map"), py::arg("threshold") = default_binarize_threshold);
    m.def("snap_to_grid", [](const F64Array& pred, std::size_t n, double threshold) {
        const auto p = to_probability(pred);
        return from_mask(snap_to_grid(p, GridSpec(n, p.width()), threshold).mask());
    }, py::arg("pred"), py::arg("n"), py::arg("cell_threshold") = default_cell_threshold);

    // Rendering.
    m.def("overlay_grid", [](const U8Array& image, std::size_t n, double alpha) {
        const auto img = to_image(image);
        return from_image(overlay_grid(img, make_grid(GridSpec(n, img.width())), alpha));
    }, py::arg("image"), py::arg("n"), py::arg("alpha") = default_overlay_alpha);
    m.def("colorize_std", [](const F64Array& std_map) {
        return from_image(colorize_std(to_uncertainty(std_map)));
    }, py::arg("std"));
    m.def("render_panel", [](const U8Array& image, const U8Array& gt, const F64Array& mean,
                             const F64Array& std_map, std::size_t n, double alpha) {
        const auto mn = to_probability(mean);
        const GridSpec spec(n, mn.width());
        return from_image(render_panel(to_image(image), gridify_mask(to_mask(gt), spec), mn,
                                       to_uncertainty(std_map), spec, alpha));
    }, py::arg("image"), py::arg("gt"), py::arg("mean"), py::arg("std"), py::arg("n"),
       py::arg("alpha") = default_overlay_alpha);

    // Augmentation.
    m.def("classic_augment", [](const U8Array& image, const U8Array& mask, std::uint64_t seed,
                                double rotation_deg, double scale_min, double scale_max,
                                double translate, std::size_t holes, double hole_size,
                                double noise_sigma) {
        ClassicAugmentParams p;
        p.rotation_deg = {-rotation_deg, rotation_deg};
        p.scale = {scale_min, scale_max};
        p.translate_frac = {-translate, translate};
        p.dropout_holes = holes;
        p.dropout_size_frac = hole_size;
        p.noise_sigma = noise_sigma;
        const auto out = classic_augment(to_image(image), to_mask(mask), p, seed);
        return py::make_tuple(from_image(out.image), from_mask(out.mask));
    }, py::arg("image"), py::arg("mask"), py::arg("seed"), py::arg("rotation_deg") = 15.0,
       py::arg("scale_min") = 0.9, py::arg("scale_max") = 1.1, py::arg("translate") = 0.05,
       py::arg("holes") = 4, py::arg("hole_size") = 0.1, py::arg("noise_sigma") = 10.0);

    // Manifests, exchanged as JSONL text.
    m.def("split_manifest", [](const std::string& text, std::uint64_t seed, std::size_t n_train) {
        return format_manifest(split_dataset(parse_manifest(text), seed, n_train));
    }, py::arg("text"), py::arg("seed"), py::arg("n_train"));
    m.def("expand_manifest", [](const std::string& text, std::vector<std::size_t> grids) {
        return format_manifest(expand_dataset(parse_manifest(text), grids));
    }, py::arg("text"), py::arg("grids") = std::vector<std::size_t>(default_pyramid.begin(),
                                                                   default_pyramid.end()));
    m.def("materialize", [](const std::filesystem::path& manifest, const std::filesystem::path& out_dir,
                            std::vector<std::size_t> grids, std::optional<std::filesystem::path> root,
                            std::size_t classic_copies, std::uint64_t seed) {
        ExpansionOptions opts;
        opts.source_root = root ? *root : manifest.parent_path();
        opts.out_dir = out_dir;
        opts.classic_copies = classic_copies;
        opts.seed = seed;
        py::gil_scoped_release release;
        return materialize_expansion(read_manifest(manifest), grids, opts).records().size();
    }, py::arg("manifest"), py::arg("out_dir"),
       py::arg("grids") = std::vector<std::size_t>(default_pyramid.begin(), default_pyramid.end()),
       py::arg("root") = py::none(), py::arg("classic_copies") = 0, py::arg("seed") = 42,
       "Write the expanded dataset; returns the number of manifest records.");

    // PNG I/O.
    m.def("load_image", [](const std::filesystem::path& p) { return from_image(load_image(p)); });
    m.def("save_image", [](const U8Array& a, const std::filesystem::path& p) { save_image(to_image(a), p); });
    m.def("load_mask", [](const std::filesystem::path& p) { return from_mask(load_mask(p)); });
    m.def("save_mask", [](const U8Array& a, const std::filesystem::path& p) { save_mask(to_mask(a), p); });
    m.def("load_probability_map", [](const std::filesystem::path& p) {
        return from_map(load_probability_map(p));
    });
    m.def("load_uncertainty_map", [](const std::filesystem::path& p) {
        return from_map(load_uncertainty_map(p));
    });
    m.def("save_probability_map", [](const F64Array& a, const std::filesystem::path& p) {
        save_map(to_probability(a), p);
    });
    m.def("save_uncertainty_map", [](const F64Array& a, const std::filesystem::path& p) {
        save_map(to_uncertainty(a), p);
    });
}
