#pragma once

// Dataset manifests: JSON Lines, one header object followed by one SampleRecord
// per line. Canonical form is compact JSON with sorted keys and absent optional
// fields omitted, so write(read(m)) reproduces a canonical file byte for byte.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pyra {

enum class Split { train, test };

std::string_view to_string(Split split);
Split parse_split(std::string_view text);

struct SampleRecord {
    std::string id;
    std::string image_path;
    std::string mask_path;
    std::optional<std::size_t> grid_n;
    std::optional<Split> split;
    std::optional<std::string> gridded_mask_path;
    std::optional<std::string> grid_image_path;

    friend bool operator==(const SampleRecord&, const SampleRecord&) = default;
};

class DatasetManifest {
public:
    /// Throws ValidationError on a non-dividing grid size, a record grid_n that
    /// does not divide image_size, or a duplicate record id.
    DatasetManifest(std::size_t image_size, std::vector<std::size_t> grid_sizes,
                    std::vector<SampleRecord> records);

    std::size_t image_size() const noexcept { return image_size_; }
    const std::vector<std::size_t>& grid_sizes() const noexcept { return grid_sizes_; }
    const std::vector<SampleRecord>& records() const noexcept { return records_; }

    friend bool operator==(const DatasetManifest&, const DatasetManifest&) = default;

private:
    std::size_t image_size_;
    std::vector<std::size_t> grid_sizes_;
    std::vector<SampleRecord> records_;
};

DatasetManifest parse_manifest(std::string_view text);
std::string format_manifest(const DatasetManifest& manifest);

DatasetManifest read_manifest(const std::filesystem::path& path);
void write_manifest(const DatasetManifest& manifest, const std::filesystem::path& path);

}  // namespace pyra
