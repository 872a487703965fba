#include "pyra/manifest.hpp"

#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pyra/error.hpp"
#include "pyra/png_io.hpp"

namespace pyra {

namespace {

using nlohmann::json;

const std::set<std::string> header_keys{"image_size", "grid_sizes"};
const std::set<std::string> record_keys{"id",    "image_path",        "mask_path",      "grid_n",
                                        "split", "gridded_mask_path", "grid_image_path"};

std::string at_line(std::size_t line) { return "manifest line " + std::to_string(line) + ": "; }

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         std::size_t line) {
    for (const auto& item : obj.items())
        if (!allowed.contains(item.key()))
            throw ValidationError(at_line(line) + "unknown key \"" + item.key() + "\"");
}

std::size_t positive_int(const json& value, const std::string& key, std::size_t line) {
    if (!value.is_number_unsigned() || value.get<std::size_t>() == 0)
        throw ValidationError(at_line(line) + "\"" + key + "\" must be a positive integer");
    return value.get<std::size_t>();
}

std::string required_string(const json& obj, const std::string& key, std::size_t line) {
    const auto it = obj.find(key);
    if (it == obj.end() || !it->is_string())
        throw ValidationError(at_line(line) + "missing string field \"" + key + "\"");
    return it->get<std::string>();
}

std::optional<std::string> optional_string(const json& obj, const std::string& key,
                                           std::size_t line) {
    const auto it = obj.find(key);
    if (it == obj.end())
        return std::nullopt;
    if (!it->is_string())
        throw ValidationError(at_line(line) + "\"" + key + "\" must be a string");
    return it->get<std::string>();
}

SampleRecord parse_record(const json& obj, std::size_t line) {
    if (!obj.is_object())
        throw ValidationError(at_line(line) + "expected a JSON object");
    reject_unknown_keys(obj, record_keys, line);
    SampleRecord rec;
    rec.id = required_string(obj, "id", line);
    if (rec.id.empty())
        throw ValidationError(at_line(line) + "empty record id");
    rec.image_path = required_string(obj, "image_path", line);
    rec.mask_path = required_string(obj, "mask_path", line);
    if (const auto it = obj.find("grid_n"); it != obj.end())
        rec.grid_n = positive_int(*it, "grid_n", line);
    if (const auto split = optional_string(obj, "split", line)) {
        try {
            rec.split = parse_split(*split);
        } catch (const ValidationError& e) {
            throw ValidationError(at_line(line) + e.what());
        }
    }
    rec.gridded_mask_path = optional_string(obj, "gridded_mask_path", line);
    rec.grid_image_path = optional_string(obj, "grid_image_path", line);
    return rec;
}

json record_to_json(const SampleRecord& rec) {
    json obj = json::object();
    obj["id"] = rec.id;
    obj["image_path"] = rec.image_path;
    obj["mask_path"] = rec.mask_path;
    if (rec.grid_n)
        obj["grid_n"] = *rec.grid_n;
    if (rec.split)
        obj["split"] = std::string(to_string(*rec.split));
    if (rec.gridded_mask_path)
        obj["gridded_mask_path"] = *rec.gridded_mask_path;
    if (rec.grid_image_path)
        obj["grid_image_path"] = *rec.grid_image_path;
    return obj;
}

}  // namespace

std::string_view to_string(Split split) { return split == Split::train ? "train" : "test"; }

Split parse_split(std::string_view text) {
    if (text == "train")
        return Split::train;
    if (text == "test")
        return Split::test;
    throw ValidationError("unknown split \"" + std::string(text) + "\"");
}

DatasetManifest::DatasetManifest(std::size_t image_size, std::vector<std::size_t> grid_sizes,
                                 std::vector<SampleRecord> records)
    : image_size_(image_size), grid_sizes_(std::move(grid_sizes)), records_(std::move(records)) {
    if (image_size_ == 0)
        throw ValidationError("manifest image_size must be >= 1");
    for (std::size_t n : grid_sizes_)
        if (n == 0 || image_size_ % n != 0)
            throw ValidationError("manifest grid size " + std::to_string(n) +
                                  " does not divide image_size " + std::to_string(image_size_));
    std::set<std::string_view> seen;
    for (const auto& rec : records_) {
        if (!seen.insert(rec.id).second)
            throw ValidationError("duplicate record id \"" + rec.id + "\"");
        if (rec.grid_n && (*rec.grid_n == 0 || image_size_ % *rec.grid_n != 0))
            throw ValidationError("record \"" + rec.id + "\": grid_n " +
                                  std::to_string(*rec.grid_n) + " does not divide image_size " +
                                  std::to_string(image_size_));
    }
}

DatasetManifest parse_manifest(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    std::optional<std::size_t> image_size;
    std::vector<std::size_t> grid_sizes;
    std::vector<SampleRecord> records;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ValidationError(at_line(line_no) + "malformed JSON: " + e.what());
        }
        if (!image_size) {
            if (!obj.is_object() || !obj.contains("image_size"))
                throw ValidationError(at_line(line_no) + "expected header with image_size");
            reject_unknown_keys(obj, header_keys, line_no);
            image_size = positive_int(obj["image_size"], "image_size", line_no);
            const auto it = obj.find("grid_sizes");
            if (it == obj.end() || !it->is_array())
                throw ValidationError(at_line(line_no) + "header needs a grid_sizes array");
            for (const auto& n : *it)
                grid_sizes.push_back(positive_int(n, "grid_sizes", line_no));
            continue;
        }
        records.push_back(parse_record(obj, line_no));
    }
    if (!image_size)
        throw ValidationError("manifest is empty (missing header line)");
    return DatasetManifest(*image_size, std::move(grid_sizes), std::move(records));
}

std::string format_manifest(const DatasetManifest& manifest) {
    std::string out;
    json header = json::object();
    header["image_size"] = manifest.image_size();
    header["grid_sizes"] = manifest.grid_sizes();
    out += header.dump();
    out += '\n';
    for (const auto& rec : manifest.records()) {
        out += record_to_json(rec).dump();
        out += '\n';
    }
    return out;
}

DatasetManifest read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError(IoError::Kind::missing_file, path.string() + ": cannot open manifest");
    const std::string text(std::istreambuf_iterator<char>(in), {});
    try {
        return parse_manifest(text);
    } catch (const ValidationError& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

void write_manifest(const DatasetManifest& manifest, const std::filesystem::path& path) {
    const std::string text = format_manifest(manifest);
    write_file_atomic(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()),
                                      text.size()));
}

}  // namespace pyra
