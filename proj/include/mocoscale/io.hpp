#pragma once

#include "mocoscale/core.hpp"
#include "mocoscale/indicators.hpp"
#include "mocoscale/problems.hpp"

#include "json.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mocoscale {

using json = nlohmann::json;

/// {family, D, m, seed, generator_version}, plus "data" with the generated
/// matrices when embed_data is set.
json instance_to_json(const ProblemInstance& instance, bool embed_data = false);
/// Uses embedded data when present, otherwise regenerates from the seed.
ProblemInstance instance_from_json(const json& j);

/// {instance_id, family, n_samples, sampling_seed, values[]}; values are in
/// minimisation orientation.
json reference_to_json(const ReferencePoint& ref, Family family);
ReferencePoint reference_from_json(const json& j);
/// Family recorded with a reference point (explicit field or instance_id prefix).
Family reference_family(const json& j);

/// Archive rows in native orientation: header f1,f2[,genotype].
void write_archive_csv(std::ostream& out, const Archive& archive, Family family, bool with_genotype);

struct ArchiveSnapshot {
    std::vector<ObjectiveVector> native; // as written
    std::vector<std::string> genotypes;  // empty when the column is absent
};
ArchiveSnapshot read_archive_csv(std::istream& in);

std::string genotype_to_string(const Genotype& g);

json read_json_file(const std::filesystem::path& path);
/// Writes to a sibling temporary file, then renames over path.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
/// Same, gzip-compressed.
void write_gzip_atomic(const std::filesystem::path& path, const std::string& content);
/// Reads a plain or gzip-compressed file.
std::string read_file_maybe_gzip(const std::filesystem::path& path);

} // namespace mocoscale
