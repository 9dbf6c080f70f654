#include <iostream>

#include <CLI11.hpp>

#include "tmis/errors.hpp"
#include "tmis/harness.hpp"

using namespace tmis;

namespace {

int emit_report(const harness::Report& report, harness::OutputFormat format) {
    if (format == harness::OutputFormat::json) {
        std::cout << report.to_json();
    } else {
        std::cout << report.to_text();
    }
    return report.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pairing-based TMIS authentication workbench: simulates the\n"
                 "registration and login protocol, replays the transcript-level\n"
                 "attacks against it, and emits deterministic reports."};
    app.require_subcommand(1);

    harness::ScenarioConfig cfg;
    std::string scenario = "honest";
    std::string params = "test";
    std::string format = "text";

    CLI::App* run_cmd = app.add_subcommand("run", "run a scenario");
    run_cmd->add_option("--scenario", scenario, "honest|kssti|pfs|tamper|all")
        ->capture_default_str();
    run_cmd->add_option("--params", params, "test|desk")->capture_default_str();
    run_cmd->add_option("--seed", cfg.seed, "run seed")->capture_default_str();
    run_cmd->add_option("--sessions", cfg.sessions, "number of sessions")
        ->capture_default_str();
    run_cmd->add_option("--delta-max", cfg.delta_max_millis,
                        "freshness window in logical ms")
        ->capture_default_str();
    run_cmd->add_option("--format", format, "text|json")->capture_default_str();
    run_cmd->add_option("--export", cfg.export_path,
                        "write transcripts here (leaks to <path>.leaks)");
    run_cmd->add_option("--registry", cfg.registry_path,
                        "load/persist the registration registry at this path");
    run_cmd->add_flag("--corrupt-leak", cfg.corrupt_leak,
                      "negative control: corrupt the leaked secret and expect the "
                      "attacks to fail");

    std::string transcripts_path;
    std::string leaks_path;
    CLI::App* replay_cmd =
        app.add_subcommand("replay", "re-run attacks offline from exported files");
    replay_cmd->add_option("--transcripts", transcripts_path, "transcripts JSONL file")
        ->required();
    replay_cmd->add_option("--leaks", leaks_path, "leaks JSONL file")->required();
    std::string replay_format = "text";
    replay_cmd->add_option("--format", replay_format, "text|json")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            cfg.scenario = harness::scenario_from_string(scenario);
            cfg.param_set = harness::param_set_from_string(params);
            cfg.format = harness::format_from_string(format);
            harness::Report report = harness::run(cfg);
            return emit_report(report, cfg.format);
        }
        harness::Report report = harness::replay(transcripts_path, leaks_path);
        return emit_report(report, harness::format_from_string(replay_format));
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
