// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.
// Usage: pyra_acceptance <path-to-pyra-cli>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pyra/augment.hpp"
#include "pyra/gridgen.hpp"
#include "pyra/gridify.hpp"
#include "pyra/manifest.hpp"
#include "pyra/mc_aggregate.hpp"
#include "pyra/metrics.hpp"
#include "pyra/png_io.hpp"
#include "pyra/postproc.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace pyra;
using pyra::testing::TempDir;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

struct Criterion {
    std::string name;
    double time_limit_s;  // <= 0: no runtime bound
    std::function<Outcome()> check;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// --- gridify ---------------------------------------------------------------

Outcome gridify_identity() {
    std::mt19937_64 rng(1001);
    std::size_t differing = 0;
    for (int i = 0; i < 100; ++i) {
        const auto m = pyra::testing::random_mask(rng, 256, 256);
        const auto g = gridify_mask(m, GridSpec(256, 256)).mask();
        for (std::size_t p = 0; p < m.data().size(); ++p)
            differing += g.data()[p] != m.data()[p];
    }
    return {differing == 0, "100 masks 256x256, differing pixels = " + std::to_string(differing)};
}

Outcome gridify_oracle() {
    std::mt19937_64 rng(1002);
    const std::size_t levels[] = {1, 2, 4, 8, 16};
    std::size_t mismatches = 0, nesting_violations = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto m = pyra::testing::random_mask(rng, 16, 16);
        std::vector<std::vector<std::uint8_t>> out;
        for (std::size_t n : levels) {
            const auto g = gridify_mask(m, GridSpec(n, 16)).mask();
            std::vector<std::uint8_t> got(g.data().begin(), g.data().end());
            mismatches += got != oracle::gridify(m, n);
            out.push_back(std::move(got));
        }
        for (std::size_t l = 0; l + 1 < out.size(); ++l)
            for (std::size_t p = 0; p < out[l].size(); ++p)
                nesting_violations += out[l + 1][p] && !out[l][p];
    }
    return {mismatches == 0 && nesting_violations == 0,
            "1000 masks x 5 levels, oracle mismatches = " + std::to_string(mismatches) +
                ", nesting violations = " + std::to_string(nesting_violations)};
}

// --- expansion -----------------------------------------------------------

Outcome expansion_arithmetic() {
    TempDir dir("acc-expand");
    std::mt19937_64 rng(1003);
    std::vector<SampleRecord> records;
    for (int i = 0; i < 800; ++i) {
        char id[16];
        std::snprintf(id, sizeof id, "k%04d", i);
        const std::string sid(id);
        save_image(pyra::testing::random_image(rng, 64, 64, 3), dir / ("src/" + sid + ".png"));
        save_mask(pyra::testing::random_mask(rng, 64, 64), dir / ("src/" + sid + "_m.png"));
        records.push_back({sid, "src/" + sid + ".png", "src/" + sid + "_m.png", {}, {}, {}, {}});
    }
    const auto split = split_dataset(DatasetManifest(256, {}, records), 42, 800);

    ExpansionOptions opts;
    opts.source_root = dir.path();
    opts.out_dir = dir / "out";
    const auto start = std::chrono::steady_clock::now();
    const auto expanded = materialize_expansion(split, default_pyramid, opts);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::size_t train = 0;
    const auto written = read_manifest(dir / "out/manifest.jsonl");
    for (const auto& r : written.records())
        train += r.split == Split::train;
    std::size_t gridded_files = 0;
    for (const auto& e : fs::directory_iterator(dir / "out/gridded"))
        gridded_files += e.is_regular_file();
    const bool ok = train == 6400 && expanded.records().size() == 6400 && gridded_files == 6400;
    return {ok && secs < 60.0, "800 train x 8 grids -> " + std::to_string(train) +
                                   " train records, " + std::to_string(gridded_files) +
                                   " gridded masks, expansion " + fmt("%.1f s", secs)};
}

// --- metrics ---------------------------------------------------------------

Outcome metric_oracle() {
    std::mt19937_64 rng(1004);
    std::size_t mismatches = 0;
    double worst_identity = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const auto a = pyra::testing::random_mask(rng, 32, 32);
        const auto b = pyra::testing::random_mask(rng, 32, 32);
        const auto want = oracle::set_scores(a, b);
        const double got_iou = iou(a, b);
        const double got_dice = dice(a, b);
        mismatches += got_iou != want.iou || got_dice != want.dice;
        worst_identity = std::max(worst_identity,
                                  std::abs(got_dice - 2.0 * got_iou / (1.0 + got_iou)));
    }
    return {mismatches == 0 && worst_identity <= 1e-9,
            "1000 pairs 32x32, exact mismatches = " + std::to_string(mismatches) +
                ", max |dice - 2iou/(1+iou)| = " + fmt("%.3g", worst_identity)};
}

// --- MC aggregation --------------------------------------------------------

Outcome mc_aggregation() {
    std::mt19937_64 rng(1005);
    std::vector<ProbabilityMap> samples;
    for (int k = 0; k < 50; ++k)
        samples.push_back(pyra::testing::random_map(rng, 64, 64));
    const auto got = aggregate(samples);
    const auto want = oracle::mean_std(samples);
    double worst = 0.0;
    for (std::size_t i = 0; i < want.mean.size(); ++i) {
        worst = std::max(worst, std::abs(got.mean.data()[i] - want.mean[i]));
        worst = std::max(worst, std::abs(got.std.data()[i] - want.std[i]));
    }

    TempDir dir("acc-mc");
    save_map(got.mean, dir / "mean.png");
    save_map(got.std, dir / "std.png");
    const auto mean_back = load_probability_map(dir / "mean.png");
    const auto std_back = load_uncertainty_map(dir / "std.png");
    double worst_codec = 0.0;
    for (std::size_t i = 0; i < want.mean.size(); ++i) {
        worst_codec = std::max(worst_codec, std::abs(mean_back.data()[i] - got.mean.data()[i]));
        worst_codec = std::max(worst_codec, std::abs(std_back.data()[i] - got.std.data()[i]));
    }

    const std::vector<ProbabilityMap> same(50, samples.front());
    const auto flat = aggregate(same);
    bool zero_std = true;
    for (double v : flat.std.data())
        zero_std = zero_std && v == 0.0;

    const double bound = 1.0 / (2.0 * 65535.0);
    return {worst <= 1e-12 && worst_codec <= bound && zero_std,
            "K=50 64x64, max |impl - oracle| = " + fmt("%.3g", worst) +
                ", max codec error = " + fmt("%.6g", worst_codec) + " (bound " +
                fmt("%.6g", bound) + "), identical maps std==0: " + (zero_std ? "yes" : "no")};
}

// --- postproc -------------------------------------------------------------

Outcome postproc_full_resolution() {
    std::mt19937_64 rng(1006);
    std::size_t differing = 0;
    for (int i = 0; i < 100; ++i) {
        const auto pred = pyra::testing::random_map(rng, 64, 64);
        differing += !(snap_to_grid(pred, GridSpec(64, 64), 0.5).mask() == binarize(pred, 0.5));
    }
    return {differing == 0, "100 maps, n = image size, maps differing from binarize = " +
                                std::to_string(differing)};
}

// --- CLI determinism -------------------------------------------------------

std::string quote(const std::string& s) { return "'" + s + "'"; }

int run_cli(const std::string& cli, const std::string& args, const fs::path& stdout_file) {
    const std::string cmd = quote(cli) + " --quiet " + args + " > " + quote(stdout_file.string());
    return std::system(cmd.c_str());
}

std::map<std::string, std::string> snapshot(const fs::path& root) {
    std::map<std::string, std::string> files;
    for (const auto& e : fs::recursive_directory_iterator(root)) {
        if (!e.is_regular_file())
            continue;
        std::ifstream in(e.path(), std::ios::binary);
        files[fs::relative(e.path(), root).string()] =
            std::string(std::istreambuf_iterator<char>(in), {});
    }
    return files;
}

Outcome cli_determinism(const std::string& cli) {
    TempDir fixtures("acc-det-in");
    std::mt19937_64 rng(1007);
    std::vector<SampleRecord> records;
    for (int i = 0; i < 24; ++i) {
        const std::string id = "d" + std::to_string(i);
        save_image(pyra::testing::random_image(rng, 48, 48, 3), fixtures / ("data/" + id + ".png"));
        save_mask(pyra::testing::random_mask(rng, 48, 48), fixtures / ("data/" + id + "_m.png"));
        records.push_back({id, id + ".png", id + "_m.png", {}, {}, {}, {}});
    }
    write_manifest(DatasetManifest(64, {}, records), fixtures / "data/all.jsonl");
    for (int id = 0; id < 3; ++id)
        for (int k = 0; k < 6; ++k)
            save_map(pyra::testing::random_map(rng, 64, 64),
                     fixtures / ("samples/t" + std::to_string(id) + "/sample_00" +
                                 std::to_string(k) + ".png"));
    for (int i = 0; i < 3; ++i)
        save_mask(pyra::testing::random_mask(rng, 64, 64), fixtures / ("gt/t" + std::to_string(i) + ".png"));

    const std::string in = fixtures.path().string();
    auto commands = [&](const std::string& out) {
        return std::vector<std::string>{
            "grid --size 256 --n 16 --out " + quote(out + "/grid.png"),
            "gridify --mask " + quote(in + "/data/d0_m.png") + " --grid 8 --size 64 --out " +
                quote(out + "/gridified.png"),
            "--seed 7 split --manifest " + quote(in + "/data/all.jsonl") + " --n-train 18 --out " +
                quote(out + "/split.jsonl"),
            "--seed 7 augment --manifest " + quote(out + "/split.jsonl") + " --root " +
                quote(in + "/data") + " --grids 2,4,8,16,32,64 --classic-copies 2 --out-dir " +
                quote(out + "/expanded"),
            "aggregate --samples-dir " + quote(in + "/samples") + " --k 6 --out-mean " +
                quote(out + "/mean") + " --out-std " + quote(out + "/std") + " --out-mask " +
                quote(out + "/mask"),
            "eval --pred-dir " + quote(out + "/mean") + " --gt-dir " + quote(in + "/gt") +
                " --out " + quote(out + "/report.json"),
            "postproc --pred " + quote(out + "/mean/t0.png") + " --grid 8 --out " +
                quote(out + "/snapped.png"),
            "render --image " + quote(in + "/data/d0.png") + " --gt " + quote(in + "/gt/t0.png") +
                " --mean " + quote(out + "/mean/t0.png") + " --std " + quote(out + "/std/t0.png") +
                " --grid 8 --out " + quote(out + "/panel.png"),
        };
    };

    TempDir run1("acc-det-1"), run8("acc-det-8");
    const auto cmds1 = commands(run1.path().string());
    const auto cmds8 = commands(run8.path().string());
    for (std::size_t i = 0; i < cmds1.size(); ++i) {
        const auto name = "stdout_" + std::to_string(i) + ".txt";
        if (run_cli(cli, "--threads 1 " + cmds1[i], run1 / name) != 0 ||
            run_cli(cli, "--threads 8 " + cmds8[i], run8 / name) != 0)
            return {false, "command failed: pyra " + cmds1[i]};
    }
    const auto a = snapshot(run1.path());
    const auto b = snapshot(run8.path());
    std::size_t differing = 0;
    for (const auto& [path, bytes] : a) {
        const auto it = b.find(path);
        differing += it == b.end() || it->second != bytes;
    }
    differing += b.size() > a.size() ? b.size() - a.size() : 0;
    return {differing == 0 && a.size() > 100,
            std::to_string(cmds1.size()) + " commands, " + std::to_string(a.size()) +
                " output files compared, differing = " + std::to_string(differing)};
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: pyra_acceptance <path-to-pyra>\n";
        return 2;
    }
    const std::string cli = argv[1];

    const std::vector<Criterion> criteria{
        {"gridify identity at n = image size", 5.0, gridify_identity},
        {"gridify oracle equivalence and pyramid nesting", 10.0, gridify_oracle},
        {"expansion arithmetic 800 x 8 = 6400", 0.0, expansion_arithmetic},
        {"IoU/Dice bit-count oracle and dice identity", 0.0, metric_oracle},
        {"MC aggregation oracle, codec bound, zero std", 0.0, mc_aggregation},
        {"CLI byte determinism across --threads 1 / 8", 0.0, [&] { return cli_determinism(cli); }},
        {"snap_to_grid equals binarize at full resolution", 0.0, postproc_full_resolution},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.time_limit_s > 0 && secs >= c.time_limit_s) {
            o.pass = false;
            o.detail += " (runtime limit " + fmt("%.0f s", c.time_limit_s) + " exceeded)";
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << c.name << "  [" << o.detail << "]  "
                  << fmt("%.2f s", secs) << std::endl;
    }
    std::cout << (failed ? "acceptance: " + std::to_string(failed) + " criterion(s) failed"
                         : std::string("acceptance: all criteria passed"))
              << std::endl;
    return failed ? 1 : 0;
}
