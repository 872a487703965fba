#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "pyra/augment.hpp"
#include "pyra/error.hpp"
#include "pyra/gridgen.hpp"
#include "pyra/gridify.hpp"
#include "pyra/imaging.hpp"
#include "pyra/manifest.hpp"
#include "pyra/mc_aggregate.hpp"
#include "pyra/metrics.hpp"
#include "pyra/parallel.hpp"
#include "pyra/png_io.hpp"
#include "pyra/postproc.hpp"
#include "pyra/render.hpp"

namespace fs = std::filesystem;

namespace pyra::cli {

namespace {

constexpr int exit_ok = 0;
constexpr int exit_validation = 1;
constexpr int exit_io = 2;

struct GlobalOptions {
    std::uint64_t seed = 42;
    std::size_t threads = 0;
    bool quiet = false;
};

struct Context {
    const GlobalOptions& global;
    std::ostream& out;
    std::ostream& err;

    void info(const std::string& msg) const {
        if (!global.quiet)
            err << msg << '\n';
    }
};

void write_text(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    write_file_atomic(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()),
                                      text.size()));
}

std::map<std::string, fs::path> png_files_by_stem(const fs::path& dir) {
    if (!fs::is_directory(dir))
        throw IoError(IoError::Kind::missing_file, dir.string() + ": not a directory");
    std::map<std::string, fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".png")
            files.emplace(entry.path().stem().string(), entry.path());
    return files;
}

std::vector<fs::path> sample_files(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const auto name = entry.path().filename().string();
        if (entry.is_regular_file() && name.starts_with("sample_") && name.ends_with(".png"))
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    return files;
}

// Output target: an explicit .png file (single id) or a directory of <id>.png.
fs::path output_for(const std::string& target, const std::string& id, std::size_t id_count) {
    const fs::path p(target);
    if (p.extension() == ".png") {
        if (id_count != 1)
            throw ValidationError(target + ": a single output file needs exactly one image id, found " +
                                  std::to_string(id_count) + " (pass a directory instead)");
        return p;
    }
    return p / (id + ".png");
}

// --- subcommands ----------------------------------------------------------

struct GridArgs {
    std::size_t size = 256;
    std::size_t n = 0;
    std::string out;
};

int cmd_grid(const Context& ctx, const GridArgs& a) {
    const GridSpec spec(a.n, a.size);
    save_image(make_grid(spec).raster(), a.out);
    ctx.info("wrote " + a.out);
    return exit_ok;
}

struct GridifyArgs {
    std::string mask;
    std::size_t grid = 0;
    std::string out;
    std::size_t size = 256;
    int mask_threshold = default_mask_threshold;
};

int cmd_gridify(const Context& ctx, const GridifyArgs& a) {
    const GridSpec spec(a.grid, a.size);
    const BinaryMask mask =
        ingest_mask(load_image(a.mask), a.size, static_cast<std::uint8_t>(a.mask_threshold));
    save_mask(gridify_mask(mask, spec).mask(), a.out);
    ctx.info("wrote " + a.out);
    return exit_ok;
}

struct SplitArgs {
    std::string manifest;
    std::size_t n_train = 0;
    std::string out;
};

int cmd_split(const Context& ctx, const SplitArgs& a) {
    const auto split = split_dataset(read_manifest(a.manifest), ctx.global.seed, a.n_train);
    write_text(format_manifest(split), a.out, ctx.out);
    ctx.info("split " + std::to_string(split.records().size()) + " records, " +
             std::to_string(a.n_train) + " train");
    return exit_ok;
}

struct AugmentArgs {
    std::string manifest;
    std::vector<std::size_t> grids = default_pyramid;
    std::string out_dir;
    std::string root;
    std::size_t classic_copies = 0;
    double rotation_deg = 15.0;
    double scale_min = 0.9;
    double scale_max = 1.1;
    double translate = 0.05;
    std::size_t holes = 4;
    double hole_size = 0.1;
    double noise_sigma = 10.0;
};

int cmd_augment(const Context& ctx, const AugmentArgs& a) {
    const auto manifest = read_manifest(a.manifest);
    ExpansionOptions opts;
    opts.source_root = a.root.empty() ? fs::path(a.manifest).parent_path() : fs::path(a.root);
    opts.out_dir = a.out_dir;
    opts.classic_copies = a.classic_copies;
    opts.classic_params.rotation_deg = {-a.rotation_deg, a.rotation_deg};
    opts.classic_params.scale = {a.scale_min, a.scale_max};
    opts.classic_params.translate_frac = {-a.translate, a.translate};
    opts.classic_params.dropout_holes = a.holes;
    opts.classic_params.dropout_size_frac = a.hole_size;
    opts.classic_params.noise_sigma = a.noise_sigma;
    const auto expanded = materialize_expansion(manifest, a.grids, opts);
    std::size_t train = 0;
    for (const auto& r : expanded.records())
        train += r.split == Split::train;
    ctx.out << "records " << expanded.records().size() << " train " << train << " test "
            << expanded.records().size() - train << '\n';
    ctx.info("wrote " + (fs::path(a.out_dir) / "manifest.jsonl").string());
    return exit_ok;
}

struct EvalArgs {
    std::string pred_dir;
    std::string gt_dir;
    double threshold = default_binarize_threshold;
    std::string out;
};

int cmd_eval(const Context& ctx, const EvalArgs& a) {
    const auto preds = png_files_by_stem(a.pred_dir);
    const auto gts = png_files_by_stem(a.gt_dir);
    std::vector<std::string> missing;
    for (const auto& [id, _] : preds)
        if (!gts.contains(id))
            missing.push_back("prediction \"" + id + "\" has no ground truth");
    for (const auto& [id, _] : gts)
        if (!preds.contains(id))
            missing.push_back("ground truth \"" + id + "\" has no prediction");
    if (!missing.empty())
        throw ValidationError("eval: id mismatch between directories: " + missing.front() +
                              (missing.size() > 1
                                   ? " (and " + std::to_string(missing.size() - 1) + " more)"
                                   : ""));
    if (!(a.threshold > 0.0 && a.threshold < 1.0))
        throw ValidationError("eval: threshold must lie in (0, 1)");

    std::vector<std::pair<std::string, fs::path>> entries(preds.begin(), preds.end());
    std::vector<std::optional<EvalPair>> loaded(entries.size());
    parallel_for(entries.size(), [&](std::size_t i) {
        const auto& [id, pred_path] = entries[i];
        BinaryMask pred = png_bit_depth(pred_path) == 16
                              ? binarize(load_probability_map(pred_path), a.threshold)
                              : load_mask(pred_path);
        loaded[i] = EvalPair{id, std::move(pred), load_mask(gts.at(id))};
    });
    std::vector<EvalPair> pairs;
    pairs.reserve(loaded.size());
    for (auto& p : loaded)
        pairs.push_back(std::move(*p));
    const auto report = evaluate(pairs);
    write_text(report_to_json(report), a.out, ctx.out);
    ctx.info("evaluated " + std::to_string(report.count) + " images");
    return exit_ok;
}

struct AggregateArgs {
    std::string samples_dir;
    std::string out_mean;
    std::string out_std;
    std::string out_mask;
    double threshold = default_binarize_threshold;
    std::size_t k = default_mc_samples;
};

int cmd_aggregate(const Context& ctx, const AggregateArgs& a) {
    const fs::path root(a.samples_dir);
    if (!fs::is_directory(root))
        throw IoError(IoError::Kind::missing_file, a.samples_dir + ": not a directory");
    if (a.k == 0)
        throw ValidationError("aggregate: --k must be >= 1");
    if (!(a.threshold > 0.0 && a.threshold < 1.0))
        throw ValidationError("aggregate: threshold must lie in (0, 1)");

    // Either D/sample_*.png for one image, or D/<id>/sample_*.png.
    std::vector<std::pair<std::string, std::vector<fs::path>>> groups;
    if (auto direct = sample_files(root); !direct.empty()) {
        groups.emplace_back(root.filename().string(), std::move(direct));
    } else {
        std::vector<fs::path> dirs;
        for (const auto& entry : fs::directory_iterator(root))
            if (entry.is_directory())
                dirs.push_back(entry.path());
        std::sort(dirs.begin(), dirs.end());
        for (const auto& d : dirs)
            if (auto files = sample_files(d); !files.empty())
                groups.emplace_back(d.filename().string(), std::move(files));
    }
    if (groups.empty())
        throw ValidationError("aggregate: no sample_*.png files under " + a.samples_dir);
    for (auto& [id, files] : groups) {
        if (files.size() < a.k)
            throw ValidationError("aggregate: image \"" + id + "\" has " +
                                  std::to_string(files.size()) + " samples, --k " +
                                  std::to_string(a.k) + " requested");
        files.resize(a.k);
    }

    for (const auto& [id, files] : groups) {
        std::vector<ProbabilityMap> samples;
        samples.reserve(files.size());
        for (const auto& f : files)
            samples.push_back(load_probability_map(f));
        const McSummary summary = aggregate(samples);
        save_map(summary.mean, output_for(a.out_mean, id, groups.size()));
        save_map(summary.std, output_for(a.out_std, id, groups.size()));
        if (!a.out_mask.empty())
            save_mask(binarize(summary.mean, a.threshold), output_for(a.out_mask, id, groups.size()));
    }
    ctx.info("aggregated " + std::to_string(groups.size()) + " image(s) over K=" +
             std::to_string(a.k) + " samples");
    return exit_ok;
}

struct PostprocArgs {
    std::string pred;
    std::size_t grid = 0;
    std::string out;
    double cell_threshold = default_cell_threshold;
};

int cmd_postproc(const Context& ctx, const PostprocArgs& a) {
    const ProbabilityMap pred = load_probability_map(a.pred);
    if (pred.width() != pred.height())
        throw ValidationError("postproc: prediction must be square");
    const GridSpec spec(a.grid, pred.width());
    save_mask(snap_to_grid(pred, spec, a.cell_threshold).mask(), a.out);
    ctx.info("wrote " + a.out);
    return exit_ok;
}

struct RenderArgs {
    std::string image;
    std::string gt;
    std::string mean;
    std::string std_map;
    std::size_t grid = 0;
    std::string out;
    double alpha = default_overlay_alpha;
};

int cmd_render(const Context& ctx, const RenderArgs& a) {
    const ProbabilityMap mean = load_probability_map(a.mean);
    const UncertaintyMap std_map = load_uncertainty_map(a.std_map);
    if (mean.width() != mean.height())
        throw ValidationError("render: mean map must be square");
    const std::size_t size = mean.width();
    const GridSpec spec(a.grid, size);
    const ImageRaster image = ingest_image(load_image(a.image), size);
    const GriddedMask gt = gridify_mask(ingest_mask(load_image(a.gt), size), spec);
    save_image(render_panel(image, gt, mean, std_map, spec, a.alpha), a.out);
    ctx.info("wrote " + a.out);
    return exit_ok;
}

int cmd_version(const Context& ctx) {
    ctx.out << "pyra " << version << '\n'
            << "manifest-format " << manifest_format_version << '\n'
            << "map-encoding png16-u/65535 v" << map_encoding_version << '\n';
    return exit_ok;
}

// First positional token when no subcommand matched, skipping global option values.
std::string unknown_subcommand(const CLI::App& app, const std::vector<std::string>& args) {
    if (!app.get_subcommands().empty())
        return {};
    for (std::size_t i = 0; i < args.size(); ++i) {
        const auto& a = args[i];
        if (a == "--seed" || a == "--threads") {
            ++i;
            continue;
        }
        if (!a.starts_with("-"))
            return app.get_subcommand_no_throw(a) ? std::string{} : a;
    }
    return {};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"pyra: grid-pyramid augmentation and evaluation toolkit", "pyra"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions global;
    app.add_option("--seed", global.seed, "Seed for randomized commands")->capture_default_str();
    app.add_option("--threads", global.threads, "Worker threads (0 = machine parallelism)")
        ->capture_default_str();
    app.add_flag("--quiet", global.quiet, "Suppress progress messages");

    std::function<int(const Context&)> action;

    GridArgs grid;
    auto* sub = app.add_subcommand("grid", "Write a checkerboard grid raster");
    sub->add_option("--size", grid.size, "Image side in pixels")->capture_default_str();
    sub->add_option("--n", grid.n, "Cells per side")->required();
    sub->add_option("--out", grid.out, "Output PNG")->required();
    sub->callback([&] { action = [&](const Context& c) { return cmd_grid(c, grid); }; });

    GridifyArgs gridify;
    sub = app.add_subcommand("gridify", "Convert a ground-truth mask to its grid form");
    sub->add_option("--mask", gridify.mask, "Mask PNG")->required();
    sub->add_option("--grid", gridify.grid, "Cells per side")->required();
    sub->add_option("--out", gridify.out, "Output PNG")->required();
    sub->add_option("--size", gridify.size, "Working resolution")->capture_default_str();
    sub->add_option("--mask-threshold", gridify.mask_threshold, "Binarization threshold")
        ->check(CLI::Range(0, 255))
        ->capture_default_str();
    sub->callback([&] { action = [&](const Context& c) { return cmd_gridify(c, gridify); }; });

    SplitArgs split;
    sub = app.add_subcommand("split", "Seeded train/test split of a manifest");
    sub->add_option("--manifest", split.manifest, "Input manifest")->required();
    sub->add_option("--n-train", split.n_train, "Number of train records")->required();
    sub->add_option("--out", split.out, "Output manifest (default: stdout)");
    sub->callback([&] { action = [&](const Context& c) { return cmd_split(c, split); }; });

    AugmentArgs augment;
    sub = app.add_subcommand("augment", "Expand a split manifest over the grid pyramid");
    sub->add_option("--manifest", augment.manifest, "Split manifest")->required();
    sub->add_option("--grids", augment.grids, "Grid sizes")->delimiter(',')->capture_default_str();
    sub->add_option("--out-dir", augment.out_dir, "Output directory")->required();
    sub->add_option("--root", augment.root, "Base for relative paths (default: manifest dir)");
    sub->add_option("--classic-copies", augment.classic_copies,
                    "Classic-augmented copies per train record")
        ->capture_default_str();
    sub->add_option("--rotation-deg", augment.rotation_deg, "Max |rotation|")->capture_default_str();
    sub->add_option("--scale-min", augment.scale_min)->capture_default_str();
    sub->add_option("--scale-max", augment.scale_max)->capture_default_str();
    sub->add_option("--translate", augment.translate, "Max |shift| as a fraction of the side")
        ->capture_default_str();
    sub->add_option("--holes", augment.holes, "Coarse dropout holes")->capture_default_str();
    sub->add_option("--hole-size", augment.hole_size, "Hole side as a fraction of the side")
        ->capture_default_str();
    sub->add_option("--noise-sigma", augment.noise_sigma, "Gaussian noise sigma (8-bit units)")
        ->capture_default_str();
    sub->callback([&] { action = [&](const Context& c) { return cmd_augment(c, augment); }; });

    EvalArgs eval;
    sub = app.add_subcommand("eval", "IoU/Dice report for a prediction directory");
    sub->add_option("--pred-dir", eval.pred_dir, "Predictions (<id>.png)")->required();
    sub->add_option("--gt-dir", eval.gt_dir, "Ground truth (<id>.png)")->required();
    sub->add_option("--threshold", eval.threshold, "Threshold for 16-bit probability maps")
        ->capture_default_str();
    sub->add_option("--out", eval.out, "Report path (default: stdout)");
    sub->callback([&] { action = [&](const Context& c) { return cmd_eval(c, eval); }; });

    AggregateArgs agg;
    sub = app.add_subcommand("aggregate", "Mean/std maps from Monte-Carlo samples");
    sub->add_option("--samples-dir", agg.samples_dir, "D/<id>/sample_*.png")->required();
    sub->add_option("--out-mean", agg.out_mean, "Mean map (.png file or directory)")->required();
    sub->add_option("--out-std", agg.out_std, "Std map (.png file or directory)")->required();
    sub->add_option("--out-mask", agg.out_mask, "Binarized mean (.png file or directory)");
    sub->add_option("--threshold", agg.threshold, "Binarization threshold")->capture_default_str();
    sub->add_option("--k", agg.k, "Samples per image")->capture_default_str();
    sub->callback([&] { action = [&](const Context& c) { return cmd_aggregate(c, agg); }; });

    PostprocArgs post;
    sub = app.add_subcommand("postproc", "Snap a prediction to the grid");
    sub->add_option("--pred", post.pred, "Prediction map PNG")->required();
    sub->add_option("--grid", post.grid, "Cells per side")->required();
    sub->add_option("--out", post.out, "Output mask PNG")->required();
    sub->add_option("--cell-threshold", post.cell_threshold)->capture_default_str();
    sub->callback([&] { action = [&](const Context& c) { return cmd_postproc(c, post); }; });

    RenderArgs render;
    sub = app.add_subcommand("render", "Overlay | GT | mean | std panel");
    sub->add_option("--image", render.image, "Input photo")->required();
    sub->add_option("--gt", render.gt, "Ground-truth mask")->required();
    sub->add_option("--mean", render.mean, "Mean map")->required();
    sub->add_option("--std", render.std_map, "Std map")->required();
    sub->add_option("--grid", render.grid, "Cells per side")->required();
    sub->add_option("--out", render.out, "Output PNG")->required();
    sub->add_option("--alpha", render.alpha, "Grid overlay opacity")->capture_default_str();
    sub->callback([&] { action = [&](const Context& c) { return cmd_render(c, render); }; });

    sub = app.add_subcommand("version", "Print version and format versions");
    sub->callback([&] { action = [](const Context& c) { return cmd_version(c); }; });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        const auto unknown = unknown_subcommand(app, args);
        if (!unknown.empty())
            err << "error: unknown subcommand \"" << unknown << "\"\n\n" << app.help();
        else
            err << "error: " << e.what() << "\n\n" << app.help();
        return exit_validation;
    }

    const Context ctx{global, out, err};
    try {
        Executor executor(global.threads);
        return executor.run([&] { return action(ctx); });
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return exit_validation;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << '\n';
        return exit_io;
    } catch (const fs::filesystem_error& e) {
        err << "I/O error: " << e.what() << '\n';
        return exit_io;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_validation;
    }
}

}  // namespace pyra::cli
