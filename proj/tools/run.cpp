#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rankcp/datagen.hpp"

namespace rankcp::cli {

namespace {

std::vector<SegmentSpec> load_generate_spec(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw InputError("cannot open spec file: " + path);
    nlohmann::json j;
    try {
        file >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError("invalid JSON in " + path + ": " + e.what());
    }
    if (!j.contains("segments") || !j["segments"].is_array() || j["segments"].empty())
        throw InputError("spec file needs a non-empty \"segments\" array");

    std::vector<SegmentSpec> specs;
    for (const auto& s : j["segments"]) {
        SegmentSpec spec;
        try {
            spec.length = s.at("length").get<std::size_t>();
            const std::string family = s.at("family").get<std::string>();
            if (family == "gaussian")
                spec.family = Family::gaussian;
            else if (family == "cauchy")
                spec.family = Family::cauchy;
            else
                throw InputError("unknown family \"" + family + "\" (use gaussian or cauchy)");
            spec.location = s.at("location").get<std::vector<double>>();
            spec.scale = s.at("scale").get<std::vector<double>>();
        } catch (const nlohmann::json::exception& e) {
            throw InputError("bad segment spec in " + path + ": " + e.what());
        }
        specs.push_back(std::move(spec));
    }
    return specs;
}

int run_generate(const std::string& spec_path, const std::string& out_path, std::uint64_t seed) {
    const auto specs = load_generate_spec(spec_path);
    Series series;
    try {
        series = generate_series(specs, seed);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    write_csv(series, out_path);
    std::cerr << "rankcp: wrote " << series.rows() << "x" << series.cols() << " series to "
              << out_path << "\n";
    return 0;
}

} // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"Offline multiple change point detection for multivariate time series "
                 "using rank energy statistics"};
    app.name("rankcp");

    std::string input;
    std::string method = "divisive";
    double alpha = 1.0;
    std::string variant = "ustat";
    std::size_t min_size = 2;
    std::size_t perms = 199;
    double level = 0.05;
    std::string kappa = "segment-end";
    std::size_t block = 2;
    std::string grid = "halton";
    std::uint64_t seed = 0;
    std::string json_path;
    std::string plot_path;
    bool header = false;

    app.add_option("--input", input, "CSV input: rows = observations, columns = dimensions");
    app.add_option("--method", method, "Detection method")
        ->check(CLI::IsMember({"divisive", "agglomerative"}));
    app.add_option("--alpha", alpha, "Distance exponent in (0, 2]");
    app.add_option("--variant", variant, "Within-sample normalization")
        ->check(CLI::IsMember({"ustat", "vstat"}));
    app.add_option("--min-size", min_size, "Minimum observations per side of a split");
    app.add_option("--perms", perms, "Permutation replicates per significance test");
    app.add_option("--level", level, "Significance level in (0, 1)");
    app.add_option("--kappa", kappa, "Right-endpoint search mode (divisive)")
        ->check(CLI::IsMember({"segment-end", "full-sweep"}));
    app.add_option("--block", block, "Initial cluster size (agglomerative)");
    app.add_option("--grid", grid, "Rank grid family")
        ->check(CLI::IsMember({"halton", "torus"}));
    app.add_option("--seed", seed, "RNG seed");
    app.add_option("--json", json_path, "Write the JSON report here");
    app.add_option("--plot", plot_path, "Write an SVG plot here");
    app.add_flag("--header", header, "Skip the first CSV line");

    auto* gen = app.add_subcommand("generate", "Write a synthetic CSV from a JSON spec");
    std::string spec_path;
    std::string out_path;
    std::uint64_t gen_seed = 0;
    gen->add_option("--spec", spec_path, "JSON spec with a \"segments\" array")->required();
    gen->add_option("--out", out_path, "CSV output path")->required();
    gen->add_option("--seed", gen_seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) return run_generate(spec_path, out_path, gen_seed);

        if (input.empty()) throw UsageError("--input is required");

        // Flags that contradict the chosen method are rejected before
        // touching the data.
        if (method != "agglomerative" && app.count("--block") > 0)
            throw UsageError("--block applies only to --method agglomerative");
        if (method == "agglomerative") {
            for (const char* flag : {"--perms", "--level", "--kappa"})
                if (app.count(flag) > 0)
                    throw UsageError(std::string(flag) + " applies only to --method divisive");
        }

        DetectConfig cfg;
        cfg.energy.alpha = alpha;
        cfg.energy.variant = variant == "ustat" ? EnergyVariant::ustat : EnergyVariant::vstat;
        cfg.min_size = min_size;
        cfg.n_permutations = perms;
        cfg.sig_level = level;
        cfg.kappa_mode = kappa == "segment-end" ? KappaMode::segment_end : KappaMode::full_sweep;
        cfg.grid = grid == "halton" ? GridChoice::halton : GridChoice::torus;
        cfg.seed = seed;
        try {
            cfg.validate();
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }

        const Series series = load_csv(input, header);
        if (has_duplicate_rows(series))
            std::cerr << "rankcp: warning: input contains duplicate observations; "
                         "rank ties are broken deterministically\n";

        RunReport report;
        report.t = series.rows();
        report.d = series.cols();
        report.source = input;
        report.method = method;

        const auto start = std::chrono::steady_clock::now();
        try {
            if (method == "divisive") {
                report.result = divisive_detect(series, cfg);
            } else {
                report.block = block;
                report.result = agglomerative_detect(series, block, cfg).first;
            }
        } catch (const std::invalid_argument& e) {
            throw InputError(e.what());
        }
        const auto stop = std::chrono::steady_clock::now();
        report.elapsed_precise = std::chrono::duration<double>(stop - start).count();
        report.elapsed_whole_seconds = static_cast<long long>(std::floor(report.elapsed_precise));

        for (const std::size_t cp : report.result.change_points) std::cout << cp << "\n";

        if (!json_path.empty()) emit_json(report, json_path);
        if (!plot_path.empty()) {
            if (series.cols() > 8)
                std::cerr << "rankcp: plot shows the first 8 of " << series.cols()
                          << " dimensions\n";
            emit_svg(series, report.result.change_points, plot_path);
        }

        std::cerr << "rankcp: T=" << report.t << " d=" << report.d << " method=" << method
                  << " change_points=" << report.result.change_points.size() << " elapsed="
                  << report.elapsed_precise << "s\n";
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "rankcp: usage error: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << "rankcp: error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "rankcp: error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace rankcp::cli
