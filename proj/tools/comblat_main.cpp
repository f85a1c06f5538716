#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"

#include "comblat/pipeline.hpp"

namespace {

void print_summary(const comblat::RunResult& result) {
    const comblat::RunState& s = result.state;
    const comblat::Json& verdicts = result.report["verdicts"];

    std::printf("qumodes %d, macronodes %zu, matched %d, boundary %zu\n", s.graph.num_modes(),
                s.partition.size(), s.matched_modes, s.graph.unmatched.size());
    std::string timings;
    for (const auto& [stage, seconds] : s.timings) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%s %.3fs", stage.c_str(), seconds);
        if (!timings.empty()) timings += ", ";
        timings += buf;
    }
    std::printf("stages: %s\n", timings.c_str());
    for (const auto& [name, value] : verdicts.items()) {
        if (name == "pass") continue;
        std::printf("%-20s %s\n", name.c_str(), value.dump().c_str());
    }
    for (const auto& path : result.files_written)
        std::printf("wrote %s\n", path.string().c_str());
    std::printf("verdict: %s\n", result.pass ? "PASS" : "FAIL");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"builds frequency-comb cluster states and verifies their lattice structure"};
    app.require_subcommand(1);

    std::string run_config, run_out;
    std::int64_t seed_override = 0;
    CLI::App* run = app.add_subcommand("run", "run the pipeline and write the selected artifacts");
    run->add_option("--config", run_config, "JSON configuration file")->required();
    run->add_option("--out", run_out, "output directory for exports")->required();
    CLI::Option* seed_opt =
        run->add_option("--seed", seed_override, "override the configured sampling seed");

    std::string validate_config;
    CLI::App* validate = app.add_subcommand("validate", "parse and validate a configuration");
    validate->add_option("--config", validate_config, "JSON configuration file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (run->parsed()) {
            comblat::PipelineConfig config = comblat::parse_config_file(run_config);
            if (seed_opt->count() > 0) {
                if (seed_override < 0) throw comblat::ValidationError("seed must be nonnegative");
                config.seed = static_cast<std::uint64_t>(seed_override);
            }
            comblat::RunResult result = comblat::run_pipeline(config, run_out);
            print_summary(result);
            return result.pass ? 0 : 2;
        }
        comblat::PipelineConfig config = comblat::parse_config_file(validate_config);
        std::printf("%s\n", comblat::config_to_json(config).dump(2).c_str());
        return 0;
    } catch (const comblat::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
