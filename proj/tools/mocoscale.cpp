#include "mocoscale/harness.hpp"
#include "mocoscale/indicators.hpp"
#include "mocoscale/io.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <thread>

using namespace mocoscale;
namespace fs = std::filesystem;

namespace {

std::size_t default_workers() {
    if (const char* env = std::getenv("MOCOSCALE_WORKERS")) {
        try {
            const long n = std::stol(env);
            if (n >= 1) return static_cast<std::size_t>(n);
        } catch (const std::exception&) {
        }
        std::cerr << "warning: ignoring MOCOSCALE_WORKERS='" << env << "'\n";
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void ensure_parent(const fs::path& path) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mocoscale: scalability benchmarks for multi-objective evolutionary algorithms"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a problem instance file");
    std::string family;
    std::size_t dim = 0, objectives = 2;
    std::uint64_t seed = 0;
    std::string out;
    bool embed = false;
    gen->add_option("--family", family, "problem family")
        ->required()
        ->check(CLI::IsMember({"motsp", "mokp", "monk", "moqap"}));
    gen->add_option("--dim", dim, "number of decision variables")->required();
    gen->add_option("--objectives", objectives, "number of objectives")->required();
    gen->add_option("--seed", seed, "instance seed")->required();
    gen->add_option("--out", out, "output JSON path")->required();
    gen->add_flag("--embed-data", embed, "store the generated matrices in the file");

    // run
    auto* run = app.add_subcommand("run", "execute an experiment grid");
    std::string config_path;
    RunOptions options;
    options.workers = default_workers();
    run->add_option("--config", config_path, "experiment config JSON")->required();
    run->add_option("--workers", options.workers, "parallel runs")->check(CLI::PositiveNumber);
    run->add_flag("--resume", options.resume, "skip runs already recorded");
    run->add_flag("--allow-expensive", options.allow_expensive, "include MOQAP 5000D at 1e7 evaluations");

    // hv
    auto* hv = app.add_subcommand("hv", "hypervolume of an archive snapshot");
    std::string archive_path, ref_path;
    hv->add_option("--archive", archive_path, "archive CSV (optionally gzip)")->required();
    hv->add_option("--ref", ref_path, "reference point JSON")->required();

    // refpoint
    auto* refpoint = app.add_subcommand("refpoint", "sample a reference point for an instance");
    std::string instance_path;
    std::size_t samples = kDefaultReferenceSamples;
    refpoint->add_option("--instance", instance_path, "instance JSON")->required();
    refpoint->add_option("--samples", samples, "random solutions to sample")->required()->check(CLI::PositiveNumber);
    refpoint->add_option("--seed", seed, "sampling seed")->required();
    refpoint->add_option("--out", out, "output JSON path")->required();

    // summarize
    auto* summarize_cmd = app.add_subcommand("summarize", "HV tables with statistical comparisons");
    std::string records_dir;
    std::string holm_scope = "setting";
    double alpha = 0.05;
    summarize_cmd->add_option("--records", records_dir, "records directory")->required();
    summarize_cmd->add_option("--out", out, "output directory")->required();
    summarize_cmd->add_option("--holm-scope", holm_scope, "Holm family")->check(CLI::IsMember({"setting", "global"}));
    summarize_cmd->add_option("--alpha", alpha, "significance level")->check(CLI::Range(0.0, 1.0));

    // plot-data
    auto* plot = app.add_subcommand("plot-data", "export scatter and trajectory data for one setting");
    std::uint64_t budget = 0;
    plot->add_option("--records", records_dir, "records directory")->required();
    plot->add_option("--family", family, "problem family")
        ->required()
        ->check(CLI::IsMember({"motsp", "mokp", "monk", "moqap"}));
    plot->add_option("--dim", dim, "number of decision variables")->required();
    plot->add_option("--budget", budget, "evaluation budget")->required();
    plot->add_option("--out", out, "output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            const auto inst = generate_instance(parse_family(family), dim, objectives, seed);
            ensure_parent(out);
            write_file_atomic(out, instance_to_json(inst, embed).dump(embed ? -1 : 2) + "\n");
            std::cout << inst.id() << " -> " << out << "\n";
        } else if (run->parsed()) {
            const auto config = config_from_json(read_json_file(config_path));
            const auto report = run_experiment(config, options);
            std::cout << "completed " << report.completed << ", skipped " << report.skipped << ", failed "
                      << report.failed;
            if (report.guarded) std::cout << ", guarded " << report.guarded;
            std::cout << "\n";
            return report.failed ? 1 : 0;
        } else if (hv->parsed()) {
            const auto ref_json = read_json_file(ref_path);
            const auto ref = reference_from_json(ref_json);
            const auto fam = reference_family(ref_json);
            std::istringstream text(read_file_maybe_gzip(archive_path));
            const auto snap = read_archive_csv(text);
            std::vector<ObjectiveVector> points;
            for (const auto& p : snap.native) points.push_back(to_canonical(fam, p));
            const auto outside = count_outside(points, ref.values);
            if (outside) std::cerr << "warning: " << outside << " points do not dominate the reference point\n";
            std::printf("%.17g\n", hypervolume_2d(points, ref.values));
        } else if (refpoint->parsed()) {
            const auto inst = instance_from_json(read_json_file(instance_path));
            const auto ref = sample_reference_point(inst, samples, seed);
            for (const auto& w : ref.warnings) std::cerr << "warning: " << w << "\n";
            ensure_parent(out);
            write_file_atomic(out, reference_to_json(ref, inst.family()).dump(2) + "\n");
            const auto native = to_native(inst.family(), ref.values);
            std::cout << "reference point (native):";
            for (std::size_t i = 0; i < native.size(); ++i) std::printf(" %.17g", native[i]);
            std::cout << "\n";
        } else if (summarize_cmd->parsed()) {
            const auto summary = summarize(load_records(records_dir), parse_holm_scope(holm_scope), alpha);
            for (const auto& s : summary)
                for (const auto& w : s.warnings) std::cerr << "warning: " << w << "\n";
            fs::create_directories(out);
            write_file_atomic(fs::path(out) / "summary.csv", summary_csv(summary));
            const auto text = summary_text(summary);
            write_file_atomic(fs::path(out) / "summary.txt", text);
            std::cout << text;
        } else if (plot->parsed()) {
            const auto files = export_plot_data(records_dir, parse_family(family), dim, budget, out);
            std::cout << "wrote " << files.written.size() << " files to " << out << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
