#include "mocoscale/harness.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace mocoscale;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / ("mocoscale_harness_" + name);
    fs::remove_all(dir);
    return dir;
}

ExperimentConfig toy_config(const fs::path& out) {
    ExperimentConfig c;
    c.families = {Family::Motsp};
    c.dimensions = {20};
    c.budgets = {1000};
    c.algorithms = {AlgorithmKind::Semo, AlgorithmKind::Nsga2};
    c.runs = 2;
    c.base_seed = 11;
    c.reference_samples = 200;
    c.population_size = 20;
    c.moead_neighborhood = 5;
    c.output_dir = out;
    return c;
}

RunRecord synthetic(Family f, std::size_t dim, AlgorithmKind a, std::uint64_t budget, std::size_t run, double hv) {
    RunRecord r;
    r.family = f;
    r.dim = dim;
    r.algorithm = a;
    r.budget = budget;
    r.run = run;
    r.final_hv = hv;
    r.trajectory = {{1, 0.0}, {budget, hv}};
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string strip_runtime(std::string jsonl) {
    std::istringstream in(jsonl);
    std::string line, out;
    while (std::getline(in, line)) {
        auto j = json::parse(line);
        j.erase("runtime_seconds");
        out += j.dump() + "\n";
    }
    return out;
}

} // namespace

TEST_CASE("config parsing and validation") {
    const auto c = config_from_json(json::parse(R"({
        "families": ["motsp", "mokp"], "dimensions": [100], "budgets": [1e5, 10000000],
        "algorithms": ["semo", "nsga2"], "runs": 3, "output_dir": "out", "base_seed": 5,
        "permutation_mutation_semantics": "per_gene", "smsemoa_parent_selection": "random"
    })"));
    CHECK(c.families == std::vector<Family>{Family::Motsp, Family::Mokp});
    CHECK(c.budgets == std::vector<std::uint64_t>{100'000, 10'000'000});
    CHECK(c.operators.permutation_semantics == PermutationMutationSemantics::PerGene);
    CHECK(c.smsemoa_parent_selection == ParentSelection::Random);
    CHECK(c.population_size == 100);
    CHECK(config_from_json(config_to_json(c)).fingerprint() == c.fingerprint());

    auto wider = c;
    wider.budgets.push_back(1000);
    wider.dimensions.push_back(500);
    wider.runs = 10;
    CHECK(wider.fingerprint() == c.fingerprint());
    auto other = c;
    other.base_seed = 6;
    CHECK(other.fingerprint() != c.fingerprint());
    other = c;
    other.operators.crossover_rate = 0.5;
    CHECK(other.fingerprint() != c.fingerprint());

    const json base = config_to_json(c);
    auto with = [&](const char* key, json value) {
        json j = base;
        j[key] = std::move(value);
        return j;
    };
    CHECK_THROWS_AS(config_from_json(with("colour", "blue")), Error);
    CHECK_THROWS_AS(config_from_json(with("objectives", 3)), Error);
    CHECK_THROWS_AS(config_from_json(with("runs", 0)), Error);
    CHECK_THROWS_AS(config_from_json(with("budgets", json::array({1.5}))), Error);
    CHECK_THROWS_AS(config_from_json(with("families", json::array({"tsp"}))), Error);
    CHECK_THROWS_AS(config_from_json(with("algorithms", json::array())), Error);
    CHECK_THROWS_AS(config_from_json(with("crossover_rate", 2.0)), Error);
    CHECK_THROWS_AS(config_from_json(with("population_size", 1)), Error);
}

TEST_CASE("seeds are distinct across the paper-sized grid") {
    ExperimentConfig c;
    c.families = {Family::Motsp, Family::Mokp, Family::Monk, Family::Moqap};
    c.algorithms = {AlgorithmKind::Semo, AlgorithmKind::Semox, AlgorithmKind::Nsga2, AlgorithmKind::SmsEmoa,
                    AlgorithmKind::Moead};
    c.output_dir = "unused";
    CHECK_NOTHROW(check_seed_collisions(c));
    CHECK(instance_seed(0, Family::Motsp, 100) != instance_seed(0, Family::Mokp, 100));
    CHECK(instance_seed(0, Family::Motsp, 100) != reference_seed(0, Family::Motsp, 100));
    CHECK(run_seed(0, Family::Motsp, 100, AlgorithmKind::Semo, 1000, 0) !=
          run_seed(0, Family::Motsp, 100, AlgorithmKind::Semo, 1000, 1));
    CHECK(run_seed(7, Family::Motsp, 100, AlgorithmKind::Semo, 1000, 0) ==
          run_seed(7, Family::Motsp, 100, AlgorithmKind::Semo, 1000, 0));
}

TEST_CASE("record JSON round trip") {
    auto r = synthetic(Family::Monk, 50, AlgorithmKind::SmsEmoa, 100, 3, 0.25);
    r.fingerprint = "abc";
    r.archive_path = "archives/monk_D50/smsemoa_B100_r3.csv.gz";
    r.runtime_seconds = 1.5;
    const auto back = record_from_json(json::parse(record_to_json(r).dump()));
    CHECK(record_to_json(back) == record_to_json(r));
    CHECK(record_to_json(r).at("D") == 50);
}

TEST_CASE("tiny experiment runs, resumes and refuses to clobber") {
    const auto dir = scratch("tiny");
    const auto c = toy_config(dir);
    const auto report = run_experiment(c, {});
    CHECK(report.completed == 4);
    CHECK(report.failed == 0);

    const auto records = load_records(dir / "records");
    REQUIRE(records.size() == 4);
    const auto ref = reference_from_json(read_json_file(dir / "refpoints" / "motsp_D20.json"));
    const auto instance = instance_from_json(read_json_file(dir / "instances" / "motsp_D20.json"));
    CHECK(ref.instance_id == instance.id());
    for (const auto& r : records) {
        CHECK(r.fingerprint == c.fingerprint());
        CHECK(r.trajectory.back().eval_count == 1000);
        std::istringstream text(read_file_maybe_gzip(dir / r.archive_path));
        const auto snap = read_archive_csv(text);
        CHECK(snap.native.size() == r.archive_size);
        std::vector<ObjectiveVector> canon;
        for (const auto& p : snap.native) canon.push_back(to_canonical(Family::Motsp, p));
        CHECK(std::abs(hypervolume_2d(canon, ref.values) - r.final_hv) <= 1e-9);
    }

    const std::string first = slurp(dir / "records" / "motsp_D20.jsonl");
    CHECK_THROWS_AS(run_experiment(c, {}), Error);
    RunOptions resume;
    resume.resume = true;
    const auto again = run_experiment(c, resume);
    CHECK(again.completed == 0);
    CHECK(again.skipped == 4);
    CHECK(slurp(dir / "records" / "motsp_D20.jsonl") == first);

    auto more = c;
    more.runs = 3;
    const auto extended = run_experiment(more, resume);
    CHECK(extended.completed == 2);
    CHECK(load_records(dir / "records").size() == 6);

    auto changed = c;
    changed.base_seed = 12;
    CHECK_THROWS_AS(run_experiment(changed, resume), Error);

    // a fresh directory with two workers yields the same records
    const auto dir2 = scratch("tiny2");
    auto c2 = c;
    c2.output_dir = dir2;
    RunOptions two;
    two.workers = 2;
    run_experiment(c2, two);
    CHECK(strip_runtime(slurp(dir2 / "records" / "motsp_D20.jsonl")) == strip_runtime(first));
    fs::remove_all(dir);
    fs::remove_all(dir2);
}

TEST_CASE("a failing run is logged and the grid continues") {
    const auto dir = scratch("failing");
    const auto c = toy_config(dir);
    // a directory squatting on the archive path makes that one run fail
    fs::create_directories(dir / "archives" / "motsp_D20" / "semo_B1000_r1.csv.gz" / "x");
    const auto report = run_experiment(c, {});
    CHECK(report.failed == 1);
    CHECK(report.completed == 3);
    CHECK(load_records(dir / "records").size() == 3);
    fs::remove_all(dir);
}

TEST_CASE("output directory errors and the expensive guard") {
    const auto dir = scratch("blocked");
    fs::create_directories(dir);
    std::ofstream(dir / "file") << "x";
    auto c = toy_config(dir / "file" / "out");
    CHECK_THROWS_AS(run_experiment(c, {}), Error);

    CHECK(is_expensive(Family::Moqap, 5000, 10'000'000));
    CHECK_FALSE(is_expensive(Family::Moqap, 1000, 10'000'000));
    CHECK_FALSE(is_expensive(Family::Motsp, 5000, 10'000'000));
    CHECK_FALSE(is_expensive(Family::Moqap, 5000, 100'000));

    auto big = toy_config(dir / "big");
    big.families = {Family::Moqap};
    big.dimensions = {5000};
    big.budgets = {10'000'000};
    const auto report = run_experiment(big, {});
    CHECK(report.guarded == 4);
    CHECK(report.completed == 0);
    fs::remove_all(dir);
}

TEST_CASE("summaries echo exact means and SDs") {
    std::vector<RunRecord> records;
    const std::vector<double> a{1, 2, 3, 4, 5}, b{10, 11, 12, 13, 14};
    for (std::size_t i = 0; i < 5; ++i) {
        records.push_back(synthetic(Family::Mokp, 100, AlgorithmKind::Semo, 1000, i, a[i]));
        records.push_back(synthetic(Family::Mokp, 100, AlgorithmKind::Moead, 1000, i, b[i]));
    }
    const auto s = summarize(records, HolmScope::Setting, 0.05);
    REQUIRE(s.size() == 1);
    REQUIRE(s[0].rows.size() == 2);
    CHECK(s[0].rows[0].algorithm == AlgorithmKind::Semo);
    CHECK(s[0].rows[0].mean == 3.0);
    CHECK(s[0].rows[0].sd == Catch::Approx(std::sqrt(2.5)));
    CHECK(s[0].rows[1].mean == 12.0);
    CHECK(s[0].rows[0].cell.worse == 1);
    CHECK(s[0].rows[1].cell.better == 1);
    REQUIRE(s[0].friedman.has_value());
    CHECK(s[0].friedman->statistic == Catch::Approx(5.0));
    const auto csv = summary_csv(s);
    CHECK(csv.find("mokp,100,1000,semo,5,3,1.5811388300841898,0,0,1,") != std::string::npos);
}

TEST_CASE("summary of a single algorithm has no comparisons") {
    std::vector<RunRecord> records;
    for (std::size_t i = 0; i < 4; ++i)
        records.push_back(synthetic(Family::Motsp, 50, AlgorithmKind::Nsga2, 100, i, 0.5 + 0.1 * double(i)));
    records.push_back(synthetic(Family::Motsp, 60, AlgorithmKind::Nsga2, 100, 0, 0.5));
    const auto s = summarize(records, HolmScope::Setting, 0.05);
    REQUIRE(s.size() == 2);
    CHECK_FALSE(s[0].friedman.has_value());
    CHECK(s[1].rows.empty());
    CHECK(s[1].warnings.size() == 1);
    CHECK(summary_csv(s) == "family,D,budget,algorithm,runs,mean_hv,sd_hv,better,equal,worse,friedman_q,friedman_p\n"
                            "motsp,50,100,nsga2,4,0.65000000000000002,0.12909944487358058,,,,,\n");
}

TEST_CASE("summary text matches the golden snapshot") {
    std::vector<RunRecord> records;
    const AlgorithmKind algos[] = {AlgorithmKind::Semo, AlgorithmKind::Semox, AlgorithmKind::Nsga2, AlgorithmKind::Moead};
    for (auto f : {Family::Motsp, Family::Mokp})
        for (std::size_t d : {100u, 1000u})
            for (std::size_t k = 0; k < 4; ++k)
                for (std::size_t run = 0; run < 6; ++run) {
                    if (f == Family::Mokp && d == 1000 && k == 1) continue;
                    const double level = (f == Family::Motsp ? 1.0 : 2.5) * double(d) * (1.0 + 0.2 * double(k % 3));
                    records.push_back(synthetic(f, d, algos[k], 100'000, run, level + 0.01 * double(run * (k + 1))));
                }
    const auto text = summary_text(summarize(records, HolmScope::Setting, 0.05));
    const fs::path golden = fs::path(MOCOSCALE_GOLDEN_DIR) / "summary_toy.txt";
    if (std::getenv("MOCOSCALE_WRITE_GOLDEN")) std::ofstream(golden) << text;
    CHECK(text == slurp(golden));
}

TEST_CASE("plot data export") {
    const auto dir = scratch("plot");
    auto c = toy_config(dir);
    c.runs = 3;
    run_experiment(c, {});
    const auto out = dir / "plots";
    const auto files = export_plot_data(dir / "records", Family::Motsp, 20, 1000, out);
    CHECK(files.written.size() == 3 * 2 + 2 + 2);

    const auto records = load_records(dir / "records");
    double mu = 0;
    std::vector<double> semo;
    for (const auto& r : records)
        if (r.algorithm == AlgorithmKind::Semo) semo.push_back(r.final_hv);
    mu = mean(semo);
    std::size_t best = 0;
    for (std::size_t i = 1; i < semo.size(); ++i)
        if (std::abs(semo[i] - mu) < std::abs(semo[best] - mu)) best = i;
    CHECK(slurp(out / "representative_semo.csv") == slurp(out / ("scatter_semo_r" + std::to_string(best) + ".csv")));

    const auto traj = slurp(out / "trajectory.csv");
    CHECK(traj.rfind("algorithm,eval_count,mean_hv,sd_hv,runs\n", 0) == 0);
    CHECK(traj.find("semo,1000,") != std::string::npos);

    // a single run gives zero spread
    const auto single = scratch("plot_single");
    auto one = toy_config(single);
    one.runs = 1;
    run_experiment(one, {});
    export_plot_data(single / "records", Family::Motsp, 20, 1000, single / "plots");
    std::istringstream in(slurp(single / "plots" / "trajectory.csv"));
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::stringstream row(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        REQUIRE(cells.size() == 5);
        CHECK(cells[3] == "0");
        CHECK(cells[4] == "1");
    }
    CHECK_THROWS_AS(export_plot_data(single / "records", Family::Motsp, 20, 5, single / "plots"), Error);
    fs::remove_all(dir);
    fs::remove_all(single);
}
