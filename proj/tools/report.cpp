#include "cli.hpp"

#include <fstream>

#include <json.hpp>

namespace rankcp::cli {

namespace {

const char* kappa_name(KappaMode mode) {
    return mode == KappaMode::segment_end ? "segment-end" : "full-sweep";
}

const char* grid_name(GridChoice choice) {
    return choice == GridChoice::halton ? "halton" : "torus";
}

const char* variant_name(EnergyVariant variant) {
    return variant == EnergyVariant::ustat ? "ustat" : "vstat";
}

} // namespace

std::string render_json(const RunReport& report) {
    nlohmann::ordered_json j;
    j["t"] = report.t;
    j["d"] = report.d;
    j["method"] = report.method;
    j["alpha"] = report.result.config.energy.alpha;
    j["variant"] = variant_name(report.result.config.energy.variant);
    j["change_points"] = report.result.change_points;
    j["p_values"] = report.result.p_values();
    j["statistics"] = report.result.statistics();

    nlohmann::ordered_json config;
    const DetectConfig& cfg = report.result.config;
    config["alpha"] = cfg.energy.alpha;
    config["variant"] = variant_name(cfg.energy.variant);
    config["min_size"] = cfg.min_size;
    config["permutations"] = cfg.n_permutations;
    config["sig_level"] = cfg.sig_level;
    config["kappa"] = kappa_name(cfg.kappa_mode);
    config["grid"] = grid_name(cfg.grid);
    config["seed"] = cfg.seed;
    if (report.method == "agglomerative")
        config["block"] = report.block;
    else
        config["block"] = nullptr;
    if (cfg.max_change_points)
        config["max_change_points"] = *cfg.max_change_points;
    else
        config["max_change_points"] = nullptr;
    j["config"] = std::move(config);

    j["elapsed_seconds"] = report.elapsed_whole_seconds;
    return j.dump(2) + "\n";
}

void emit_json(const RunReport& report, const std::string& path) {
    std::ofstream file(path);
    if (!file) throw InputError("cannot write report file: " + path);
    file << render_json(report);
    if (!file.good()) throw InputError("failed writing " + path);
}

} // namespace rankcp::cli
