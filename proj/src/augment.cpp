#include "pyra/augment.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "pyra/error.hpp"
#include "pyra/gridgen.hpp"
#include "pyra/gridify.hpp"
#include "pyra/imaging.hpp"
#include "pyra/parallel.hpp"
#include "pyra/png_io.hpp"
#include "pyra/rng.hpp"

namespace pyra {

namespace {

std::uint8_t round_byte(double v) {
    const double r = std::floor(v + 0.5);
    return r <= 0.0 ? 0 : r >= 255.0 ? 255 : static_cast<std::uint8_t>(r);
}

void check_range(const Range& r, const char* name) {
    if (!(r.lo <= r.hi))
        throw ValidationError(std::string("ClassicAugmentParams: empty ") + name + " range");
}

void check_path_safe_id(const std::string& id) {
    if (id.empty() || id == "." || id == ".." ||
        id.find_first_of("/\\") != std::string::npos)
        throw ValidationError("record id \"" + id + "\" cannot be used as a file name");
}

std::string image_rel(std::string_view id) { return "images/" + std::string(id) + ".png"; }
std::string mask_rel(std::string_view id) { return "masks/" + std::string(id) + ".png"; }
std::string gridded_rel(std::string_view id, std::size_t n) {
    return "gridded/" + derived_id(id, n) + ".png";
}
std::string grid_rel(std::size_t n) { return "grids/g" + std::to_string(n) + ".png"; }

struct SourceItem {
    SampleRecord record;
    std::optional<std::size_t> copy_index;  // set for classic-augmented copies
    std::string origin_id;
};

std::vector<SourceItem> with_copies(const DatasetManifest& manifest, std::size_t copies) {
    std::vector<SourceItem> items;
    for (const auto& rec : manifest.records()) {
        items.push_back({rec, std::nullopt, rec.id});
        if (rec.split != Split::train)
            continue;
        for (std::size_t k = 0; k < copies; ++k) {
            SampleRecord copy = rec;
            copy.id = augmented_copy_id(rec.id, k);
            items.push_back({std::move(copy), k, rec.id});
        }
    }
    return items;
}

std::vector<std::size_t> sorted_unique_grids(std::span<const std::size_t> grid_ns,
                                             std::size_t image_size) {
    std::vector<std::size_t> ns;
    for (const auto& spec : pyramid_specs(image_size, grid_ns))
        ns.push_back(spec.n());
    return ns;
}

}  // namespace

void ClassicAugmentParams::validate() const {
    check_range(rotation_deg, "rotation");
    check_range(scale, "scale");
    check_range(translate_frac, "translation");
    if (!(scale.lo > 0.0))
        throw ValidationError("ClassicAugmentParams: scale must be positive");
    if (!(dropout_size_frac > 0.0 && dropout_size_frac < 1.0))
        throw ValidationError("ClassicAugmentParams: dropout_size_frac must lie in (0, 1)");
    if (!(noise_sigma >= 0.0))
        throw ValidationError("ClassicAugmentParams: noise_sigma must be >= 0");
}

AugmentedSample classic_augment(const ImageRaster& image, const BinaryMask& mask,
                                const ClassicAugmentParams& params, std::uint64_t seed) {
    params.validate();
    if (image.width() != mask.width() || image.height() != mask.height())
        throw ValidationError("classic_augment: image and mask dimensions differ");

    const std::size_t w = image.width();
    const std::size_t h = image.height();
    Rng rng(seed);

    // Draw order is part of the reproducibility contract.
    const double rotation = rng.uniform(params.rotation_deg.lo, params.rotation_deg.hi);
    const double scale = rng.uniform(params.scale.lo, params.scale.hi);
    const double shift_x = rng.uniform(params.translate_frac.lo, params.translate_frac.hi) * w;
    const double shift_y = rng.uniform(params.translate_frac.lo, params.translate_frac.hi) * h;
    const auto transform = InverseAffine::from_forward(rotation, scale, shift_x, shift_y);

    const ImageRaster warped = warp_bilinear(image, transform);
    BinaryMask out_mask = warp_nearest(mask, transform);

    std::vector<std::uint8_t> px(warped.data().begin(), warped.data().end());
    const std::size_t ch = warped.channels();
    if (params.dropout_holes > 0) {
        const auto hole_w = std::clamp<std::size_t>(
            static_cast<std::size_t>(std::floor(params.dropout_size_frac * w + 0.5)), 1, w);
        const auto hole_h = std::clamp<std::size_t>(
            static_cast<std::size_t>(std::floor(params.dropout_size_frac * h + 0.5)), 1, h);
        for (std::size_t hole = 0; hole < params.dropout_holes; ++hole) {
            const std::size_t x0 = rng.uniform_index(w - hole_w + 1);
            const std::size_t y0 = rng.uniform_index(h - hole_h + 1);
            for (std::size_t r = y0; r < y0 + hole_h; ++r)
                std::fill_n(px.begin() + static_cast<std::ptrdiff_t>((r * w + x0) * ch),
                            hole_w * ch, std::uint8_t{0});
        }
    }
    if (params.noise_sigma > 0.0) {
        for (auto& v : px)
            v = round_byte(v + params.noise_sigma * rng.normal());
    }
    return {ImageRaster(w, h, ch, std::move(px)), std::move(out_mask)};
}

DatasetManifest split_dataset(const DatasetManifest& manifest, std::uint64_t seed,
                              std::size_t n_train) {
    const auto& records = manifest.records();
    if (n_train > records.size())
        throw ValidationError("split: n_train " + std::to_string(n_train) + " exceeds " +
                              std::to_string(records.size()) + " records");
    std::vector<std::string> ids;
    ids.reserve(records.size());
    for (const auto& rec : records)
        ids.push_back(rec.id);
    std::sort(ids.begin(), ids.end());

    // Fisher-Yates over the sorted ids.
    Rng rng(seed);
    for (std::size_t i = ids.size(); i > 1; --i)
        std::swap(ids[i - 1], ids[rng.uniform_index(i)]);
    const std::set<std::string> train(ids.begin(),
                                      ids.begin() + static_cast<std::ptrdiff_t>(n_train));

    std::vector<SampleRecord> out = records;
    for (auto& rec : out)
        rec.split = train.contains(rec.id) ? Split::train : Split::test;
    return DatasetManifest(manifest.image_size(), manifest.grid_sizes(), std::move(out));
}

std::string derived_id(std::string_view id, std::size_t n) {
    return std::string(id) + "@g" + std::to_string(n);
}

std::string augmented_copy_id(std::string_view id, std::size_t k) {
    return std::string(id) + "~a" + std::to_string(k);
}

DatasetManifest expand_dataset(const DatasetManifest& manifest,
                               std::span<const std::size_t> grid_ns) {
    const std::size_t size = manifest.image_size();
    const auto ns = sorted_unique_grids(grid_ns, size);

    struct Keyed {
        std::string source_id;
        std::size_t n;
        SampleRecord record;
    };
    std::vector<Keyed> planned;
    for (const auto& src : manifest.records()) {
        check_path_safe_id(src.id);
        if (!src.split)
            throw ValidationError("expand: record \"" + src.id +
                                  "\" has no split label (run split first)");
        if (src.grid_n)
            throw ValidationError("expand: record \"" + src.id + "\" is already expanded");
        auto make = [&](std::string id, std::size_t n) {
            SampleRecord rec;
            rec.id = std::move(id);
            rec.image_path = image_rel(src.id);
            rec.mask_path = mask_rel(src.id);
            rec.grid_n = n;
            rec.split = src.split;
            rec.gridded_mask_path = gridded_rel(src.id, n);
            rec.grid_image_path = grid_rel(n);
            planned.push_back({src.id, n, std::move(rec)});
        };
        if (*src.split == Split::train) {
            for (std::size_t n : ns)
                make(derived_id(src.id, n), n);
        } else {
            make(src.id, size);
        }
    }
    std::stable_sort(planned.begin(), planned.end(), [](const Keyed& a, const Keyed& b) {
        return a.source_id != b.source_id ? a.source_id < b.source_id : a.n < b.n;
    });

    std::vector<SampleRecord> records;
    records.reserve(planned.size());
    std::set<std::string_view> seen;
    for (auto& k : planned) {
        if (!seen.insert(k.record.id).second)
            throw ValidationError("expand: id collision on \"" + k.record.id + "\"");
        records.push_back(std::move(k.record));
    }
    return DatasetManifest(size, ns, std::move(records));
}

DatasetManifest add_classic_copies(const DatasetManifest& manifest, std::size_t copies) {
    std::vector<SampleRecord> records;
    for (auto& item : with_copies(manifest, copies))
        records.push_back(std::move(item.record));
    return DatasetManifest(manifest.image_size(), manifest.grid_sizes(), std::move(records));
}

DatasetManifest materialize_expansion(const DatasetManifest& manifest,
                                      std::span<const std::size_t> grid_ns,
                                      const ExpansionOptions& options) {
    if (options.classic_copies > 0)
        options.classic_params.validate();
    const std::size_t size = manifest.image_size();
    const auto items = with_copies(manifest, options.classic_copies);
    const DatasetManifest sources = add_classic_copies(manifest, options.classic_copies);
    DatasetManifest plan = expand_dataset(sources, grid_ns);
    const auto ns = plan.grid_sizes();

    const auto& out = options.out_dir;
    std::filesystem::create_directories(out);
    for (const char* sub : {"images", "masks", "gridded", "grids"})
        std::filesystem::create_directories(out / sub);

    std::set<std::size_t> grid_set(ns.begin(), ns.end());
    bool any_test = false;
    for (const auto& item : items)
        any_test = any_test || item.record.split == Split::test;
    if (any_test)
        grid_set.insert(size);
    const std::vector<std::size_t> all_grids(grid_set.begin(), grid_set.end());
    parallel_for(all_grids.size(), [&](std::size_t i) {
        save_image(make_grid(GridSpec(all_grids[i], size)).raster(), out / grid_rel(all_grids[i]));
    });

    parallel_for(items.size(), [&](std::size_t i) {
        const SourceItem& item = items[i];
        const SampleRecord& rec = item.record;
        ImageRaster image = ingest_image(load_image(options.source_root / rec.image_path), size);
        BinaryMask mask = ingest_mask(load_image(options.source_root / rec.mask_path), size);
        if (item.copy_index) {
            auto aug = classic_augment(image, mask, options.classic_params,
                                       derive_seed(options.seed, rec.id));
            image = std::move(aug.image);
            mask = std::move(aug.mask);
        }
        save_image(image, out / image_rel(rec.id));
        save_mask(mask, out / mask_rel(rec.id));
        if (rec.split == Split::train) {
            for (std::size_t n : ns)
                save_mask(gridify_mask(mask, GridSpec(n, size)).mask(),
                          out / gridded_rel(rec.id, n));
        } else {
            save_mask(mask, out / gridded_rel(rec.id, size));
        }
    });

    write_manifest(plan, out / "manifest.jsonl");
    return plan;
}

}  // namespace pyra
