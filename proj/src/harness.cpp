#include "mocoscale/harness.hpp"

#include "mocoscale/indicators.hpp"
#include "mocoscale/random.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>
#include <unordered_set>

namespace mocoscale {

namespace fs = std::filesystem;

namespace {

std::string_view selection_name(ParentSelection s) {
    return s == ParentSelection::Random ? "random" : "tournament";
}

ParentSelection parse_selection(std::string_view name) {
    if (name == "tournament") return ParentSelection::Tournament;
    if (name == "random") return ParentSelection::Random;
    throw Error("unknown parent selection '" + std::string(name) + "'");
}

std::uint64_t as_count(const json& j, const char* what) {
    if (j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0)) return j.get<std::uint64_t>();
    if (j.is_number_float()) {
        const double x = j.get<double>();
        if (x >= 0 && x == std::floor(x) && x < 1.8e19) return static_cast<std::uint64_t>(x);
    }
    throw Error(std::string("config: ") + what + " must be a non-negative integer");
}

std::string hex64(std::uint64_t x) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
    return buf;
}

std::mutex log_mutex;

template <class... Args>
void log_line(const Args&... parts) {
    std::lock_guard lock(log_mutex);
    (std::clog << ... << parts) << '\n';
}

} // namespace

// ---------------------------------------------------------------------------
// config

void ExperimentConfig::validate() const {
    if (families.empty()) throw Error("config: families must not be empty");
    if (dimensions.empty()) throw Error("config: dimensions must not be empty");
    if (budgets.empty()) throw Error("config: budgets must not be empty");
    if (algorithms.empty()) throw Error("config: algorithms must not be empty");
    if (runs < 1) throw Error("config: runs must be at least 1");
    if (objectives != 2) throw Error("config: exact HV implemented for m=2 only");
    if (reference_samples < 2) throw Error("config: reference_samples must be at least 2");
    if (output_dir.empty()) throw Error("config: output_dir is required");
    if (population_size < 2) throw Error("config: population_size must be at least 2");
    operators.validate();
    for (auto d : dimensions) {
        if (d < 2) throw Error("config: dimensions must be at least 2");
        for (auto f : families)
            if (f == Family::Monk && d <= monk_k) throw Error("config: MONK needs D > K");
    }
    for (auto b : budgets) {
        if (b < 1) throw Error("config: budgets must be positive");
        for (auto a : algorithms) {
            if (a != AlgorithmKind::Semo && a != AlgorithmKind::Semox && b < population_size) {
                throw Error("config: budget " + std::to_string(b) + " is below the population size");
            }
        }
    }
}

std::string ExperimentConfig::fingerprint() const {
    json j = {{"generator_version", kGeneratorVersion},
              {"objectives", objectives},
              {"base_seed", base_seed},
              {"reference_samples", reference_samples},
              {"population_size", population_size},
              {"crossover_rate", operators.crossover_rate},
              {"bit_mutation_rate", operators.bit_mutation_rate ? json(*operators.bit_mutation_rate) : json()},
              {"permutation_mutation_rate", operators.permutation_mutation_rate},
              {"permutation_mutation_semantics", semantics_name(operators.permutation_semantics)},
              {"moead_neighborhood", moead_neighborhood},
              {"smsemoa_parent_selection", selection_name(smsemoa_parent_selection)},
              {"monk_k", monk_k}};
    return hex64(hash_name(j.dump()));
}

ExperimentConfig config_from_json(const json& j) {
    if (!j.is_object()) throw Error("config: expected a JSON object");
    ExperimentConfig c;
    static const std::set<std::string> known = {
        "families", "dimensions", "objectives", "budgets", "algorithms", "runs", "base_seed",
        "reference_samples", "output_dir", "population_size", "crossover_rate", "bit_mutation_rate",
        "permutation_mutation_rate", "permutation_mutation_semantics", "moead_neighborhood",
        "smsemoa_parent_selection", "monk_k", "archive_genotypes"};
    for (const auto& [key, value] : j.items()) {
        if (!known.count(key)) throw Error("config: unknown field '" + key + "'");
    }
    try {
        for (const auto& f : j.at("families")) c.families.push_back(parse_family(f.get<std::string>()));
        for (const auto& a : j.at("algorithms")) c.algorithms.push_back(parse_algorithm(a.get<std::string>()));
        c.output_dir = j.at("output_dir").get<std::string>();
        if (j.contains("dimensions")) {
            c.dimensions.clear();
            for (const auto& d : j["dimensions"]) c.dimensions.push_back(as_count(d, "dimensions"));
        }
        if (j.contains("budgets")) {
            c.budgets.clear();
            for (const auto& b : j["budgets"]) c.budgets.push_back(as_count(b, "budgets"));
        }
        if (j.contains("objectives")) c.objectives = as_count(j["objectives"], "objectives");
        if (j.contains("runs")) c.runs = as_count(j["runs"], "runs");
        if (j.contains("base_seed")) c.base_seed = as_count(j["base_seed"], "base_seed");
        if (j.contains("reference_samples")) c.reference_samples = as_count(j["reference_samples"], "reference_samples");
        if (j.contains("population_size")) c.population_size = as_count(j["population_size"], "population_size");
        if (j.contains("crossover_rate")) c.operators.crossover_rate = j["crossover_rate"].get<double>();
        if (j.contains("bit_mutation_rate") && !j["bit_mutation_rate"].is_null()) {
            c.operators.bit_mutation_rate = j["bit_mutation_rate"].get<double>();
        }
        if (j.contains("permutation_mutation_rate")) {
            c.operators.permutation_mutation_rate = j["permutation_mutation_rate"].get<double>();
        }
        if (j.contains("permutation_mutation_semantics")) {
            c.operators.permutation_semantics = parse_semantics(j["permutation_mutation_semantics"].get<std::string>());
        }
        if (j.contains("moead_neighborhood")) c.moead_neighborhood = as_count(j["moead_neighborhood"], "moead_neighborhood");
        if (j.contains("smsemoa_parent_selection")) {
            c.smsemoa_parent_selection = parse_selection(j["smsemoa_parent_selection"].get<std::string>());
        }
        if (j.contains("monk_k")) c.monk_k = as_count(j["monk_k"], "monk_k");
        if (j.contains("archive_genotypes")) c.archive_genotypes = j["archive_genotypes"].get<bool>();
    } catch (const json::exception& e) {
        throw Error(std::string("config: ") + e.what());
    }
    c.validate();
    return c;
}

json config_to_json(const ExperimentConfig& c) {
    json j;
    j["families"] = json::array();
    for (auto f : c.families) j["families"].push_back(family_name(f));
    j["dimensions"] = c.dimensions;
    j["objectives"] = c.objectives;
    j["budgets"] = c.budgets;
    j["algorithms"] = json::array();
    for (auto a : c.algorithms) j["algorithms"].push_back(algorithm_id(a));
    j["runs"] = c.runs;
    j["base_seed"] = c.base_seed;
    j["reference_samples"] = c.reference_samples;
    j["output_dir"] = c.output_dir.generic_string();
    j["population_size"] = c.population_size;
    j["crossover_rate"] = c.operators.crossover_rate;
    j["bit_mutation_rate"] = c.operators.bit_mutation_rate ? json(*c.operators.bit_mutation_rate) : json();
    j["permutation_mutation_rate"] = c.operators.permutation_mutation_rate;
    j["permutation_mutation_semantics"] = semantics_name(c.operators.permutation_semantics);
    j["moead_neighborhood"] = c.moead_neighborhood;
    j["smsemoa_parent_selection"] = selection_name(c.smsemoa_parent_selection);
    j["monk_k"] = c.monk_k;
    j["archive_genotypes"] = c.archive_genotypes;
    return j;
}

// ---------------------------------------------------------------------------
// seeds

std::uint64_t instance_seed(std::uint64_t base_seed, Family family, std::size_t dim) {
    std::uint64_t s = combine_seed(base_seed, hash_name("instance"));
    s = combine_seed(s, hash_name(family_name(family)));
    return combine_seed(s, dim);
}

std::uint64_t reference_seed(std::uint64_t base_seed, Family family, std::size_t dim) {
    std::uint64_t s = combine_seed(base_seed, hash_name("reference"));
    s = combine_seed(s, hash_name(family_name(family)));
    return combine_seed(s, dim);
}

std::uint64_t run_seed(std::uint64_t base_seed, Family family, std::size_t dim, AlgorithmKind algorithm,
                       std::uint64_t budget, std::size_t run) {
    std::uint64_t s = combine_seed(base_seed, hash_name("run"));
    s = combine_seed(s, hash_name(family_name(family)));
    s = combine_seed(s, dim);
    s = combine_seed(s, hash_name(algorithm_id(algorithm)));
    s = combine_seed(s, budget);
    return combine_seed(s, run);
}

void check_seed_collisions(const ExperimentConfig& c) {
    std::unordered_set<std::uint64_t> seen;
    for (auto f : c.families)
        for (auto d : c.dimensions)
            for (auto a : c.algorithms)
                for (auto b : c.budgets)
                    for (std::size_t r = 0; r < c.runs; ++r) {
                        if (!seen.insert(run_seed(c.base_seed, f, d, a, b, r)).second) {
                            throw Error("run seed collision in the experiment grid; change base_seed");
                        }
                    }
}

// ---------------------------------------------------------------------------
// records

std::string setting_stem(Family family, std::size_t dim) {
    return std::string(family_name(family)) + "_D" + std::to_string(dim);
}

json record_to_json(const RunRecord& r) {
    json traj = json::array();
    for (const auto& p : r.trajectory) traj.push_back({p.eval_count, p.hv});
    return {{"fingerprint", r.fingerprint},
            {"family", family_name(r.family)},
            {"D", r.dim},
            {"m", r.objectives},
            {"instance_seed", r.instance_seed},
            {"run_seed", r.run_seed},
            {"algorithm", algorithm_id(r.algorithm)},
            {"budget", r.budget},
            {"run", r.run},
            {"final_hv", r.final_hv},
            {"archive_size", r.archive_size},
            {"archive", r.archive_path},
            {"trajectory", std::move(traj)},
            {"runtime_seconds", r.runtime_seconds}};
}

RunRecord record_from_json(const json& j) {
    try {
        RunRecord r;
        r.fingerprint = j.at("fingerprint").get<std::string>();
        r.family = parse_family(j.at("family").get<std::string>());
        r.dim = j.at("D").get<std::size_t>();
        r.objectives = j.at("m").get<std::size_t>();
        r.instance_seed = j.at("instance_seed").get<std::uint64_t>();
        r.run_seed = j.at("run_seed").get<std::uint64_t>();
        r.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
        r.budget = j.at("budget").get<std::uint64_t>();
        r.run = j.at("run").get<std::size_t>();
        r.final_hv = j.at("final_hv").get<double>();
        r.archive_size = j.at("archive_size").get<std::size_t>();
        r.archive_path = j.at("archive").get<std::string>();
        for (const auto& p : j.at("trajectory")) {
            r.trajectory.push_back({p.at(0).get<std::uint64_t>(), p.at(1).get<double>()});
        }
        r.runtime_seconds = j.value("runtime_seconds", 0.0);
        return r;
    } catch (const json::exception& e) {
        throw Error(std::string("malformed run record: ") + e.what());
    }
}

namespace {

using RecordKey = std::tuple<std::string, std::uint64_t, std::size_t>; // algorithm id, budget, run

RecordKey key_of(const RunRecord& r) { return {std::string(algorithm_id(r.algorithm)), r.budget, r.run}; }

std::vector<RunRecord> read_jsonl(const fs::path& path) {
    std::vector<RunRecord> out;
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            out.push_back(record_from_json(json::parse(line)));
        } catch (const json::exception& e) {
            throw Error(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

std::string render_jsonl(const std::map<RecordKey, RunRecord>& records) {
    std::string out;
    for (const auto& [key, r] : records) {
        out += record_to_json(r).dump();
        out += '\n';
    }
    return out;
}

struct Cell {
    AlgorithmKind algorithm;
    std::uint64_t budget;
    std::size_t run;
};

RunRecord execute_cell(const ExperimentConfig& config, const ProblemInstance& instance, const ReferencePoint& ref,
                       const Cell& cell, const fs::path& root) {
    RunRecord rec;
    rec.fingerprint = config.fingerprint();
    rec.family = instance.family();
    rec.dim = instance.dim();
    rec.objectives = instance.objectives();
    rec.instance_seed = instance.metadata().seed;
    rec.run_seed = run_seed(config.base_seed, rec.family, rec.dim, cell.algorithm, cell.budget, cell.run);
    rec.algorithm = cell.algorithm;
    rec.budget = cell.budget;
    rec.run = cell.run;

    AlgorithmConfig ac;
    ac.kind = cell.algorithm;
    ac.population_size = config.population_size;
    ac.budget = cell.budget;
    ac.operators = config.operators;
    ac.moead_neighborhood = config.moead_neighborhood;
    ac.smsemoa_parent_selection = config.smsemoa_parent_selection;
    ac.seed = rec.run_seed;

    RunHooks hooks;
    hooks.reference = ref.values;

    const auto start = std::chrono::steady_clock::now();
    RunResult result = run_algorithm(instance, ac, hooks);
    rec.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (result.evaluations != cell.budget) {
        throw Error("run used " + std::to_string(result.evaluations) + " evaluations instead of " +
                    std::to_string(cell.budget));
    }
    if (result.trajectory.empty() || result.trajectory.back().eval_count != cell.budget) {
        throw Error("trajectory does not end at the budget");
    }
    rec.trajectory = std::move(result.trajectory);
    rec.final_hv = rec.trajectory.back().hv;
    rec.archive_size = result.archive.size();

    const std::string stem = setting_stem(rec.family, rec.dim);
    rec.archive_path = "archives/" + stem + "/" + std::string(algorithm_id(cell.algorithm)) + "_B" +
                       std::to_string(cell.budget) + "_r" + std::to_string(cell.run) + ".csv.gz";
    std::ostringstream csv;
    write_archive_csv(csv, result.archive, rec.family, config.archive_genotypes);
    write_gzip_atomic(root / rec.archive_path, csv.str());
    return rec;
}

ReferencePoint load_or_sample_reference(const ExperimentConfig& config, const ProblemInstance& instance,
                                        const fs::path& path) {
    const std::uint64_t seed = reference_seed(config.base_seed, instance.family(), instance.dim());
    if (fs::exists(path)) {
        auto ref = reference_from_json(read_json_file(path));
        if (ref.instance_id == instance.id() && ref.sampling_seed == seed && ref.n_samples == config.reference_samples &&
            ref.values.size() == instance.objectives()) {
            return ref;
        }
        log_line("warning: ", path.string(), " does not match the config; resampling");
    }
    log_line("sampling reference point for ", instance.id(), " (", config.reference_samples, " samples)");
    auto ref = sample_reference_point(instance, config.reference_samples, seed);
    for (const auto& w : ref.warnings) log_line("warning: ", instance.id(), ": ", w);
    write_file_atomic(path, reference_to_json(ref, instance.family()).dump(2) + "\n");
    return ref;
}

} // namespace

bool is_expensive(Family family, std::size_t dim, std::uint64_t budget) {
    return family == Family::Moqap && dim >= 5000 && budget >= 10'000'000;
}

ExperimentReport run_experiment(const ExperimentConfig& config, const RunOptions& options) {
    config.validate();
    check_seed_collisions(config);
    const fs::path root = config.output_dir;
    const std::string fingerprint = config.fingerprint();

    try {
        for (const char* sub : {"records", "archives", "refpoints", "instances"}) fs::create_directories(root / sub);
        write_file_atomic(root / "config.json", config_to_json(config).dump(2) + "\n");
    } catch (const fs::filesystem_error& e) {
        throw Error(std::string("output directory is not writable: ") + e.what());
    }

    // Existing records are checked for the whole grid before any work starts.
    std::map<std::string, std::map<RecordKey, RunRecord>> existing;
    for (auto f : config.families) {
        for (auto d : config.dimensions) {
            const auto path = root / "records" / (setting_stem(f, d) + ".jsonl");
            auto& slot = existing[setting_stem(f, d)];
            if (!fs::exists(path)) continue;
            for (auto& r : read_jsonl(path)) {
                if (r.fingerprint != fingerprint) {
                    throw Error(path.string() + " holds records from a different configuration (fingerprint " +
                                r.fingerprint + ", expected " + fingerprint + ")");
                }
                slot[key_of(r)] = std::move(r);
            }
            if (!slot.empty() && !options.resume) {
                throw Error(path.string() + " already holds records; pass --resume to continue the grid");
            }
        }
    }

    ExperimentReport report;
    std::size_t guarded_warned = 0;
    for (auto family : config.families) {
        for (auto dim : config.dimensions) {
            const std::string stem = setting_stem(family, dim);
            auto& records = existing[stem];

            std::vector<Cell> cells;
            for (auto a : config.algorithms)
                for (auto b : config.budgets)
                    for (std::size_t r = 0; r < config.runs; ++r) {
                        if (is_expensive(family, dim, b) && !options.allow_expensive) {
                            ++report.guarded;
                            continue;
                        }
                        if (records.count({std::string(algorithm_id(a)), b, r})) {
                            ++report.skipped;
                            continue;
                        }
                        cells.push_back({a, b, r});
                    }
            if (report.guarded > guarded_warned) {
                log_line("warning: ", stem, ": skipping ", report.guarded - guarded_warned,
                         " runs at budget >= 1e7; pass --allow-expensive to include them");
                guarded_warned = report.guarded;
            }
            if (cells.empty()) continue;

            const auto instance =
                generate_instance(family, dim, config.objectives, instance_seed(config.base_seed, family, dim), config.monk_k);
            const auto instance_path = root / "instances" / (stem + ".json");
            if (!fs::exists(instance_path)) {
                write_file_atomic(instance_path, instance_to_json(instance).dump(2) + "\n");
            }
            const auto ref = load_or_sample_reference(config, instance, root / "refpoints" / (stem + ".json"));
            fs::create_directories(root / "archives" / stem);

            const auto records_path = root / "records" / (stem + ".jsonl");
            std::mutex records_mutex;
            std::atomic<std::size_t> next{0};
            std::atomic<std::size_t> completed{0};
            std::atomic<std::size_t> failed{0};

            auto worker = [&] {
                for (std::size_t i = next++; i < cells.size(); i = next++) {
                    const auto& cell = cells[i];
                    const std::string label = stem + " " + std::string(algorithm_id(cell.algorithm)) + " B=" +
                                              std::to_string(cell.budget) + " r=" + std::to_string(cell.run);
                    try {
                        auto rec = execute_cell(config, instance, ref, cell, root);
                        std::lock_guard lock(records_mutex);
                        const double hv = rec.final_hv;
                        const double secs = rec.runtime_seconds;
                        records[key_of(rec)] = std::move(rec);
                        write_file_atomic(records_path, render_jsonl(records));
                        ++completed;
                        log_line("done ", label, " hv=", hv, " (", secs, " s)");
                    } catch (const std::exception& e) {
                        ++failed;
                        log_line("error: ", label, ": ", e.what());
                    } catch (...) {
                        ++failed;
                        log_line("error: ", label, ": unknown failure");
                    }
                }
            };

            const std::size_t n_threads = std::clamp<std::size_t>(options.workers, 1, cells.size());
            if (n_threads == 1) {
                worker();
            } else {
                std::vector<std::thread> pool;
                for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
                for (auto& t : pool) t.join();
            }
            report.completed += completed;
            report.failed += failed;
        }
    }
    return report;
}

std::vector<RunRecord> load_records(const fs::path& records_dir) {
    if (!fs::is_directory(records_dir)) throw Error("records directory not found: " + records_dir.string());
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(records_dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".jsonl") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<RunRecord> out;
    for (const auto& f : files) {
        auto part = read_jsonl(f);
        out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return out;
}

// ---------------------------------------------------------------------------
// summaries

HolmScope parse_holm_scope(std::string_view name) {
    if (name == "setting") return HolmScope::Setting;
    if (name == "global") return HolmScope::Global;
    throw Error("unknown holm scope '" + std::string(name) + "'");
}

namespace {

constexpr AlgorithmKind kAllAlgorithms[] = {AlgorithmKind::Semo, AlgorithmKind::Semox, AlgorithmKind::Nsga2,
                                            AlgorithmKind::SmsEmoa, AlgorithmKind::Moead};

std::string format(const char* fmt, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, x);
    return buf;
}

std::string upper(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

std::string cell_text(const ComparisonCell& c) {
    return std::to_string(c.better) + "/" + std::to_string(c.equal) + "/" + std::to_string(c.worse);
}

} // namespace

std::vector<SettingSummary> summarize(const std::vector<RunRecord>& records, HolmScope scope, double alpha) {
    using SettingKey = std::tuple<Family, std::size_t, std::uint64_t>;
    std::map<SettingKey, std::map<AlgorithmKind, std::map<std::size_t, double>>> grouped;
    std::set<AlgorithmKind> seen;
    for (const auto& r : records) {
        grouped[{r.family, r.dim, r.budget}][r.algorithm][r.run] = r.final_hv;
        seen.insert(r.algorithm);
    }

    std::vector<SettingSummary> out;
    std::vector<std::vector<SampleSet>> samples;
    for (const auto& [key, by_algo] : grouped) {
        SettingSummary s;
        std::tie(s.family, s.dim, s.budget) = key;
        const std::string name = setting_stem(s.family, s.dim) + " B=" + std::to_string(s.budget);
        std::vector<SampleSet> set;
        for (auto a : kAllAlgorithms) {
            if (!seen.count(a)) continue;
            const auto it = by_algo.find(a);
            if (it == by_algo.end()) {
                s.warnings.push_back(name + ": no records for " + std::string(algorithm_label(a)) + "; row omitted");
                continue;
            }
            if (it->second.size() < 2) {
                s.warnings.push_back(name + ": " + std::string(algorithm_label(a)) +
                                     " has fewer than two runs; row omitted");
                continue;
            }
            SampleSet sample;
            sample.algorithm = algorithm_label(a);
            sample.problem = family_name(s.family);
            sample.dimension = s.dim;
            sample.budget = s.budget;
            for (const auto& [run, hv] : it->second) sample.hv_values.push_back(hv);
            SummaryRow row;
            row.algorithm = a;
            row.runs = sample.hv_values.size();
            row.mean = mean(sample.hv_values);
            row.sd = standard_deviation(sample.hv_values);
            s.rows.push_back(row);
            set.push_back(std::move(sample));
        }
        if (set.size() >= 2) {
            const bool balanced = std::all_of(set.begin(), set.end(), [&](const SampleSet& x) {
                return x.hv_values.size() == set.front().hv_values.size();
            });
            if (balanced) {
                std::vector<std::vector<double>> groups;
                for (const auto& x : set) groups.push_back(x.hv_values);
                s.friedman = friedman_test(groups);
            } else {
                s.warnings.push_back(name + ": unequal run counts; Friedman test skipped");
            }
        }
        out.push_back(std::move(s));
        samples.push_back(std::move(set));
    }

    std::vector<std::vector<double>> raw(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) raw[i] = pairwise_p_values(samples[i]);
    std::vector<std::vector<double>> adjusted(samples.size());
    if (scope == HolmScope::Setting) {
        for (std::size_t i = 0; i < raw.size(); ++i) adjusted[i] = holm_adjust(raw[i]);
    } else {
        std::vector<double> all;
        for (const auto& r : raw) all.insert(all.end(), r.begin(), r.end());
        const auto adj = holm_adjust(all);
        std::size_t offset = 0;
        for (std::size_t i = 0; i < raw.size(); ++i) {
            adjusted[i].assign(adj.begin() + static_cast<std::ptrdiff_t>(offset),
                               adj.begin() + static_cast<std::ptrdiff_t>(offset + raw[i].size()));
            offset += raw[i].size();
        }
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (samples[i].size() < 2) continue;
        const auto cells = cells_from_p_values(samples[i], adjusted[i], alpha);
        for (std::size_t k = 0; k < cells.size(); ++k) out[i].rows[k].cell = cells[k];
    }
    return out;
}

std::string summary_csv(const std::vector<SettingSummary>& summary) {
    std::string out = "family,D,budget,algorithm,runs,mean_hv,sd_hv,better,equal,worse,friedman_q,friedman_p\n";
    for (const auto& s : summary) {
        const bool compared = s.rows.size() >= 2;
        for (const auto& row : s.rows) {
            out += std::string(family_name(s.family)) + "," + std::to_string(s.dim) + "," + std::to_string(s.budget) +
                   "," + std::string(algorithm_id(row.algorithm)) + "," + std::to_string(row.runs) + "," +
                   format("%.17g", row.mean) + "," + format("%.17g", row.sd) + ",";
            if (compared) {
                out += std::to_string(row.cell.better) + "," + std::to_string(row.cell.equal) + "," +
                       std::to_string(row.cell.worse);
            } else {
                out += ",,";
            }
            out += ",";
            if (s.friedman) out += format("%.17g", s.friedman->statistic) + "," + format("%.17g", s.friedman->p_value);
            else out += ",";
            out += "\n";
        }
    }
    return out;
}

std::string summary_text(const std::vector<SettingSummary>& summary) {
    std::vector<AlgorithmKind> columns;
    for (auto a : kAllAlgorithms) {
        for (const auto& s : summary) {
            if (std::any_of(s.rows.begin(), s.rows.end(), [&](const SummaryRow& r) { return r.algorithm == a; })) {
                columns.push_back(a);
                break;
            }
        }
    }

    // Grid of text cells; two lines per setting plus header and total.
    std::vector<std::vector<std::string>> lines;
    std::vector<std::string> header{"Problem", "Budget"};
    for (auto a : columns) header.emplace_back(algorithm_label(a));
    lines.push_back(header);

    std::vector<ComparisonCell> total(columns.size());
    for (const auto& s : summary) {
        std::vector<std::string> first{upper(family_name(s.family)) + " (" + std::to_string(s.dim) + "D)",
                                       format("%.0e", static_cast<double>(s.budget))};
        std::vector<std::string> second{"", ""};
        for (std::size_t c = 0; c < columns.size(); ++c) {
            const auto it = std::find_if(s.rows.begin(), s.rows.end(),
                                         [&](const SummaryRow& r) { return r.algorithm == columns[c]; });
            if (it == s.rows.end()) {
                first.emplace_back("N/A");
                second.emplace_back("");
                continue;
            }
            first.push_back(format("%.2e", it->mean) + " (" + format("%.1e", it->sd) + ")");
            if (s.rows.size() >= 2) {
                second.push_back(cell_text(it->cell));
                total[c].better += it->cell.better;
                total[c].equal += it->cell.equal;
                total[c].worse += it->cell.worse;
            } else {
                second.emplace_back("");
            }
        }
        lines.push_back(std::move(first));
        lines.push_back(std::move(second));
    }
    std::vector<std::string> last{"Total", ""};
    for (const auto& t : total) last.push_back(cell_text(t));
    lines.push_back(last);

    std::vector<std::size_t> width(header.size(), 0);
    for (const auto& l : lines)
        for (std::size_t c = 0; c < l.size(); ++c) width[c] = std::max(width[c], l[c].size());

    std::string out;
    auto rule = [&] {
        std::size_t n = 0;
        for (auto w : width) n += w + 2;
        out += std::string(n - 2, '-') + "\n";
    };
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (i == 1 || i + 1 == lines.size()) rule();
        std::string text;
        for (std::size_t c = 0; c < lines[i].size(); ++c) {
            const auto& cell = lines[i][c];
            if (c < 2) text += cell + std::string(width[c] - cell.size(), ' ');
            else text += std::string(width[c] - cell.size(), ' ') + cell;
            if (c + 1 < lines[i].size()) text += "  ";
        }
        while (!text.empty() && text.back() == ' ') text.pop_back();
        out += text + "\n";
    }

    bool any_friedman = false;
    for (const auto& s : summary) {
        if (!s.friedman) continue;
        if (!any_friedman) out += "\nFriedman test\n";
        any_friedman = true;
        out += "  " + upper(family_name(s.family)) + " (" + std::to_string(s.dim) + "D) " +
               format("%.0e", static_cast<double>(s.budget)) + ": Q = " + format("%.4g", s.friedman->statistic) +
               ", p = " + format("%.4g", s.friedman->p_value) + "\n";
    }
    bool any_warning = false;
    for (const auto& s : summary) {
        for (const auto& w : s.warnings) {
            if (!any_warning) out += "\nWarnings\n";
            any_warning = true;
            out += "  " + w + "\n";
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// plot data

PlotDataFiles export_plot_data(const fs::path& records_dir, Family family, std::size_t dim, std::uint64_t budget,
                               const fs::path& out_dir) {
    fs::path dir = records_dir.lexically_normal();
    if (dir.filename().empty()) dir = dir.parent_path();
    const fs::path root = dir.parent_path();

    std::map<AlgorithmKind, std::vector<RunRecord>> by_algo;
    for (auto& r : load_records(records_dir)) {
        if (r.family == family && r.dim == dim && r.budget == budget) by_algo[r.algorithm].push_back(std::move(r));
    }
    if (by_algo.empty()) {
        throw Error("no records for " + setting_stem(family, dim) + " at budget " + std::to_string(budget));
    }
    fs::create_directories(out_dir);
    PlotDataFiles files;
    auto emit = [&](const fs::path& path, const std::string& content) {
        write_file_atomic(path, content);
        files.written.push_back(path);
    };

    std::string representative = "algorithm,run,final_hv,mean_hv\n";
    std::string trajectory = "algorithm,eval_count,mean_hv,sd_hv,runs\n";
    for (auto& [algo, runs] : by_algo) {
        std::sort(runs.begin(), runs.end(), [](const RunRecord& a, const RunRecord& b) { return a.run < b.run; });
        const std::string id(algorithm_id(algo));

        std::map<std::size_t, std::string> scatter;
        for (const auto& r : runs) {
            std::istringstream text(read_file_maybe_gzip(root / r.archive_path));
            const auto snap = read_archive_csv(text);
            std::string csv;
            for (std::size_t i = 0; i < r.objectives; ++i) csv += (i ? ",f" : "f") + std::to_string(i + 1);
            csv += "\n";
            for (const auto& p : snap.native) {
                for (std::size_t i = 0; i < p.size(); ++i) csv += (i ? "," : "") + format("%.17g", p[i]);
                csv += "\n";
            }
            emit(out_dir / ("scatter_" + id + "_r" + std::to_string(r.run) + ".csv"), csv);
            scatter[r.run] = std::move(csv);
        }

        std::vector<double> finals;
        for (const auto& r : runs) finals.push_back(r.final_hv);
        const double mu = mean(finals);
        std::size_t best = 0;
        for (std::size_t i = 1; i < runs.size(); ++i) {
            if (std::abs(runs[i].final_hv - mu) < std::abs(runs[best].final_hv - mu)) best = i;
        }
        emit(out_dir / ("representative_" + id + ".csv"), scatter[runs[best].run]);
        representative += id + "," + std::to_string(runs[best].run) + "," + format("%.17g", runs[best].final_hv) + "," +
                          format("%.17g", mu) + "\n";

        const auto& grid = runs.front().trajectory;
        for (const auto& r : runs) {
            if (r.trajectory.size() != grid.size() ||
                !std::equal(grid.begin(), grid.end(), r.trajectory.begin(),
                            [](const TrajectoryPoint& a, const TrajectoryPoint& b) { return a.eval_count == b.eval_count; })) {
                throw Error("trajectories of " + id + " are not on a common checkpoint grid");
            }
        }
        for (std::size_t k = 0; k < grid.size(); ++k) {
            std::vector<double> hv;
            for (const auto& r : runs) hv.push_back(r.trajectory[k].hv);
            trajectory += id + "," + std::to_string(grid[k].eval_count) + "," + format("%.17g", mean(hv)) + "," +
                          format("%.17g", standard_deviation(hv)) + "," + std::to_string(runs.size()) + "\n";
        }
    }
    emit(out_dir / "representative.csv", representative);
    emit(out_dir / "trajectory.csv", trajectory);
    return files;
}

} // namespace mocoscale
