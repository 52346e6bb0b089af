#include "mocoscale/io.hpp"

#include <zlib.h>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mocoscale {

namespace fs = std::filesystem;

namespace {

template <class T>
json nested(const std::vector<T>& flat, std::size_t a, std::size_t b, std::size_t c) {
    json out = json::array();
    for (std::size_t i = 0; i < a; ++i) {
        json mid = json::array();
        for (std::size_t j = 0; j < b; ++j) {
            json row = json::array();
            for (std::size_t k = 0; k < c; ++k) row.push_back(flat[(i * b + j) * c + k]);
            mid.push_back(std::move(row));
        }
        out.push_back(std::move(mid));
    }
    return out;
}

template <class T>
std::vector<T> flatten(const json& j, std::size_t a, std::size_t b, std::size_t c) {
    std::vector<T> out;
    out.reserve(a * b * c);
    if (j.size() != a) throw Error("embedded instance data has the wrong shape");
    for (const auto& mid : j) {
        if (mid.size() != b) throw Error("embedded instance data has the wrong shape");
        for (const auto& row : mid) {
            if (row.size() != c) throw Error("embedded instance data has the wrong shape");
            for (const auto& x : row) out.push_back(x.get<T>());
        }
    }
    return out;
}

json embed(const ProblemInstance& instance) {
    const std::size_t d = instance.dim();
    const std::size_t m = instance.objectives();
    switch (instance.family()) {
    case Family::Motsp: return {{"cost", nested(instance.as<MotspInstance>().cost, m, d, d)}};
    case Family::Mokp: {
        const auto& p = instance.as<MokpInstance>();
        return {{"value", nested(p.value, 1, m, d)[0]}, {"weight", nested(p.weight, 1, m, d)[0]}, {"capacity", p.capacity}};
    }
    case Family::Monk: {
        const auto& p = instance.as<MonkInstance>();
        return {{"K", p.k}, {"links", nested(p.links, d, m, p.k)}, {"contribution_seed", p.contribution_seed}};
    }
    case Family::Moqap: {
        const auto& p = instance.as<MoqapInstance>();
        return {{"flow", nested(p.flow, m, d, d)}, {"dist", nested(p.dist, 1, d, d)[0]}};
    }
    }
    return {};
}

ProblemInstance::Data load_embedded(const InstanceMetadata& meta, const json& data) {
    const std::size_t d = meta.dim;
    const std::size_t m = meta.m;
    switch (meta.family) {
    case Family::Motsp: return MotspInstance{d, m, flatten<double>(data.at("cost"), m, d, d)};
    case Family::Mokp: {
        MokpInstance p;
        p.dim = d;
        p.m = m;
        p.value = flatten<std::int32_t>(json::array({data.at("value")}), 1, m, d);
        p.weight = flatten<std::int32_t>(json::array({data.at("weight")}), 1, m, d);
        p.capacity = data.at("capacity").get<std::vector<double>>();
        p.removal_order = mokp_removal_order(p);
        return p;
    }
    case Family::Monk: {
        MonkInstance p;
        p.dim = d;
        p.m = m;
        p.k = data.at("K").get<std::size_t>();
        p.links = flatten<std::int32_t>(data.at("links"), d, m, p.k);
        p.contribution_seed = data.at("contribution_seed").get<std::uint64_t>();
        return p;
    }
    case Family::Moqap:
        return MoqapInstance{d, m, flatten<double>(data.at("flow"), m, d, d),
                             flatten<double>(json::array({data.at("dist")}), 1, d, d)};
    }
    throw Error("unknown family in instance file");
}

} // namespace

json instance_to_json(const ProblemInstance& instance, bool embed_data) {
    const auto& meta = instance.metadata();
    json j = {{"family", family_name(meta.family)},
              {"D", meta.dim},
              {"m", meta.m},
              {"seed", meta.seed},
              {"generator_version", kGeneratorVersion}};
    if (instance.family() == Family::Monk) j["K"] = instance.as<MonkInstance>().k;
    if (embed_data) j["data"] = embed(instance);
    return j;
}

ProblemInstance instance_from_json(const json& j) {
    try {
        InstanceMetadata meta;
        meta.family = parse_family(j.at("family").get<std::string>());
        meta.dim = j.at("D").get<std::size_t>();
        meta.m = j.at("m").get<std::size_t>();
        meta.seed = j.at("seed").get<std::uint64_t>();
        const int version = j.value("generator_version", kGeneratorVersion);
        if (j.contains("data")) {
            return {meta, load_embedded(meta, j.at("data"))};
        }
        if (version != kGeneratorVersion) {
            throw Error("instance generator_version " + std::to_string(version) + " cannot be regenerated by version " +
                        std::to_string(kGeneratorVersion));
        }
        return generate_instance(meta.family, meta.dim, meta.m, meta.seed, j.value("K", kDefaultMonkK));
    } catch (const json::exception& e) {
        throw Error(std::string("malformed instance file: ") + e.what());
    }
}

json reference_to_json(const ReferencePoint& ref, Family family) {
    return {{"instance_id", ref.instance_id},
            {"family", family_name(family)},
            {"n_samples", ref.n_samples},
            {"sampling_seed", ref.sampling_seed},
            {"values", std::vector<double>(ref.values.values().begin(), ref.values.values().end())}};
}

ReferencePoint reference_from_json(const json& j) {
    try {
        ReferencePoint ref;
        ref.instance_id = j.value("instance_id", std::string());
        ref.n_samples = j.value("n_samples", std::size_t{0});
        ref.sampling_seed = j.value("sampling_seed", std::uint64_t{0});
        ref.sampled = ref.n_samples > 0;
        ref.values = ObjectiveVector(j.at("values").get<std::vector<double>>());
        return ref;
    } catch (const json::exception& e) {
        throw Error(std::string("malformed reference point file: ") + e.what());
    }
}

Family reference_family(const json& j) {
    if (j.contains("family")) return parse_family(j.at("family").get<std::string>());
    const auto id = j.value("instance_id", std::string());
    return parse_family(id.substr(0, id.find('_')));
}

std::string genotype_to_string(const Genotype& g) {
    std::string out;
    if (const auto* bits = std::get_if<BitString>(&g)) {
        out.reserve(bits->size());
        for (auto b : bits->bits) out.push_back(b ? '1' : '0');
        return out;
    }
    const auto& perm = std::get<Permutation>(g);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (i) out.push_back(' ');
        out += std::to_string(perm.order[i]);
    }
    return out;
}

void write_archive_csv(std::ostream& out, const Archive& archive, Family family, bool with_genotype) {
    const std::size_t m = archive.empty() ? 2 : archive.objectives();
    for (std::size_t i = 0; i < m; ++i) out << (i ? "," : "") << 'f' << (i + 1);
    if (with_genotype) out << ",genotype";
    out << '\n';
    char buf[40];
    for (const auto& member : archive) {
        const auto native = to_native(family, member.objectives);
        for (std::size_t i = 0; i < native.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", native[i]);
            out << (i ? "," : "") << buf;
        }
        if (with_genotype) out << ',' << genotype_to_string(member.genotype);
        out << '\n';
    }
}

ArchiveSnapshot read_archive_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw Error("archive CSV is empty");
    std::size_t m = 0;
    bool has_genotype = false;
    {
        std::stringstream header(line);
        std::string cell;
        while (std::getline(header, cell, ',')) {
            if (cell == "genotype") {
                has_genotype = true;
            } else if (!cell.empty() && cell[0] == 'f') {
                ++m;
            } else {
                throw Error("archive CSV: unexpected column '" + cell + "'");
            }
        }
    }
    if (m < 2) throw Error("archive CSV needs at least columns f1,f2");
    ArchiveSnapshot snap;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream row(line);
        std::vector<double> values(m);
        std::string cell;
        for (std::size_t i = 0; i < m; ++i) {
            if (!std::getline(row, cell, ',')) throw Error("archive CSV: short row");
            try {
                values[i] = std::stod(cell);
            } catch (const std::exception&) {
                throw Error("archive CSV: bad number '" + cell + "'");
            }
        }
        snap.native.emplace_back(std::move(values));
        if (has_genotype) {
            std::getline(row, cell);
            snap.genotypes.push_back(cell);
        }
    }
    return snap;
}

json read_json_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error("invalid JSON in " + path.string() + ": " + e.what());
    }
}

namespace {

fs::path temp_sibling(const fs::path& path) {
    static std::atomic<unsigned long> counter{0};
    return path.parent_path() / (path.filename().string() + ".tmp" + std::to_string(counter++));
}

} // namespace

void write_file_atomic(const fs::path& path, const std::string& content) {
    const auto tmp = temp_sibling(path);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out << content;
        if (!out.flush()) throw Error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

void write_gzip_atomic(const fs::path& path, const std::string& content) {
    const auto tmp = temp_sibling(path);
    gzFile gz = gzopen(tmp.string().c_str(), "wb6");
    if (gz == nullptr) throw Error("cannot write " + tmp.string());
    const bool ok = content.empty() || gzwrite(gz, content.data(), static_cast<unsigned>(content.size())) > 0;
    if (gzclose(gz) != Z_OK || !ok) throw Error("gzip write failed for " + tmp.string());
    fs::rename(tmp, path);
}

std::string read_file_maybe_gzip(const fs::path& path) {
    // gzread passes uncompressed files through unchanged.
    gzFile gz = gzopen(path.string().c_str(), "rb");
    if (gz == nullptr) throw Error("cannot open " + path.string());
    std::string out;
    char buf[1 << 15];
    int n = 0;
    while ((n = gzread(gz, buf, sizeof buf)) > 0) out.append(buf, static_cast<std::size_t>(n));
    const bool failed = n < 0;
    gzclose(gz);
    if (failed) throw Error("read failed for " + path.string());
    return out;
}

} // namespace mocoscale
