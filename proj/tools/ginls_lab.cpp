// Command-line laboratory for the gINLS simulator: configured runs, the four
// measurement experiments, and the operator ground-truth suite.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "ginls/lab/experiments.hpp"

namespace lab = ginls::lab;

namespace {

constexpr const char* kVersion = "ginls-lab 1.0.0";

struct CommonArgs {
    std::string config_path;
    std::string out_dir = "out";
    std::vector<std::string> overrides;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 0;
};

// Returns nullopt (and prints every field error) when the config is invalid.
std::optional<lab::RunConfig> assemble(const CommonArgs& args) {
    std::vector<std::string> errors;
    std::map<std::string, std::string> kv;
    try {
        if (!args.config_path.empty()) kv = lab::load_config_file(args.config_path);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return std::nullopt;
    }
    for (const auto& o : args.overrides) lab::apply_override(kv, o, errors);
    lab::RunConfig cfg = lab::build_config(kv, errors);
    if (args.seed_set) cfg.seed = args.seed;
    if (args.threads > 0) cfg.threads = args.threads;
    for (const auto& e : lab::validate_config(cfg)) errors.push_back(e);
    if (!errors.empty()) {
        for (const auto& e : errors) std::cerr << "config error: " << e << "\n";
        return std::nullopt;
    }
    return cfg;
}

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "config file (structured text)");
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--override", args.overrides,
                    "config override key=value (dotted keys, repeatable)");
    cmd->add_option("--seed", args.seed, "random seed")->each([&](const std::string&) {
        args.seed_set = true;
    });
    cmd->add_option("--threads", args.threads, "worker pool size for experiments");
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return lab::kExitNumerical;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudo-spectral simulator and verification lab for the generalized "
                 "intermediate NLS with nonvanishing background"};
    app.require_subcommand(1);

    CommonArgs sim_args, exp_args;
    std::string experiment_kind;

    auto* sim = app.add_subcommand("simulate", "run one configured trajectory");
    add_common(sim, sim_args);

    auto* exp = app.add_subcommand("experiment", "run a measurement experiment");
    exp->add_option("kind", experiment_kind, "mollified | continuity | deepwater | drift")
        ->required();
    add_common(exp, exp_args);

    auto* check = app.add_subcommand("check-operators", "run the operator oracle suite");
    auto* version = app.add_subcommand("version", "print version");

    CLI11_PARSE(app, argc, argv);

    if (version->parsed()) {
        std::cout << kVersion << "\n";
        return lab::kExitOk;
    }
    if (check->parsed())
        return lab::check_operators(std::cout) == 0 ? lab::kExitOk : lab::kExitNumerical;

    if (sim->parsed()) {
        const auto cfg = assemble(sim_args);
        if (!cfg) return lab::kExitConfig;
        return guarded([&] { return lab::run_simulation(*cfg, sim_args.out_dir, std::cout); });
    }

    const auto cfg = assemble(exp_args);
    if (!cfg) return lab::kExitConfig;
    std::filesystem::create_directories(exp_args.out_dir);
    std::ofstream report(exp_args.out_dir + "/report.txt");

    return guarded([&]() -> int {
        auto tee = [&](auto&& run) {
            std::ostringstream os;
            auto rep = run(os);
            std::cout << os.str();
            report << os.str();
            return rep.pass ? lab::kExitOk : lab::kExitNumerical;
        };
        if (experiment_kind == "mollified")
            return tee([&](std::ostream& os) { return lab::experiment_mollified(*cfg, os); });
        if (experiment_kind == "continuity")
            return tee([&](std::ostream& os) { return lab::experiment_continuity(*cfg, os); });
        if (experiment_kind == "deepwater")
            return tee([&](std::ostream& os) { return lab::experiment_deepwater(*cfg, os); });
        if (experiment_kind == "drift")
            return tee([&](std::ostream& os) {
                return lab::experiment_drift(*cfg, exp_args.out_dir, os);
            });
        std::cerr << "config error: unknown experiment '" << experiment_kind << "'\n";
        return lab::kExitConfig;
    });
}
