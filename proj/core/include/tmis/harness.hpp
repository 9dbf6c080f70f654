#pragma once

#include <map>
#include <string>
#include <vector>

#include "tmis/attacks.hpp"

namespace tmis::harness {

enum class Scenario { honest, kssti, pfs, tamper, all };
enum class ParamSet { test, desk };
enum class OutputFormat { text, json };

std::string to_string(Scenario s);
std::string to_string(ParamSet p);
std::string to_string(OutputFormat f);
Scenario scenario_from_string(std::string_view s);       // ConfigError if unknown
ParamSet param_set_from_string(std::string_view s);      // ConfigError if unknown
OutputFormat format_from_string(std::string_view s);     // ConfigError if unknown

struct ScenarioConfig {
    Scenario scenario = Scenario::honest;
    ParamSet param_set = ParamSet::test;
    uint64_t seed = 1;
    uint32_t sessions = 1;
    uint64_t delta_max_millis = 1000;
    OutputFormat format = OutputFormat::text;
    std::string registry_path;  // optional; loaded if present, saved after the run
    std::string export_path;    // optional; transcripts JSONL here, leaks at <path>.leaks
    /// Negative control: hand the attacks a deliberately wrong secret and
    /// expect them to fail.
    bool corrupt_leak = false;

    void validate() const;  // throws ConfigError
};

/// Deterministic clock: every read returns the current time and then
/// advances by the step, so reads within a run are strictly monotone.
class LogicalClock : public Clock {
public:
    LogicalClock(uint64_t start_millis, uint64_t step_millis)
        : now_millis_(start_millis), step_millis_(step_millis == 0 ? 1 : step_millis) {}

    Timestamp now() override {
        Timestamp t{now_millis_};
        now_millis_ += step_millis_;
        return t;
    }

private:
    uint64_t now_millis_;
    uint64_t step_millis_;
};

struct RecordedMessage {
    std::string direction;  // "patient->server" or "server->patient"
    uint64_t at_millis = 0;
    Bytes payload;
};

/// Records every message verbatim; tamper scenarios clone-then-modify and
/// never touch the recorded bytes.
class EavesdropChannel {
public:
    void record(std::string direction, uint64_t at_millis, Bytes payload);
    const std::vector<RecordedMessage>& recorded() const { return messages_; }

private:
    std::vector<RecordedMessage> messages_;
};

struct AttackRecord {
    std::string attack_name;
    std::string recovered_sk_hex;
    bool matches = false;
    std::string error;  // error kind when the attack aborted
    std::string recovered_id_hex;  // pfs only
    std::string recovered_ri_hex;  // pfs only
    std::vector<std::pair<std::string, std::string>> trace;
};

struct TamperRecord {
    std::string field;
    std::string expected_error;  // accepted kinds, "|"-separated
    std::string observed_error;
    bool rejected = false;
};

struct SessionRecord {
    uint32_t session_id = 0;
    std::string sk_patient_hex;
    std::string sk_server_hex;
    bool agreement = false;
    std::string error;  // protocol error kind when the handshake failed
    std::vector<AttackRecord> attacks;
    std::vector<TamperRecord> tampers;
};

struct ReportSummary {
    uint32_t runs = 0;
    uint32_t agreements = 0;
    std::map<std::string, uint32_t> attack_success;
    uint32_t tamper_total = 0;
    uint32_t tamper_rejected = 0;
};

struct Report {
    std::string schema = "1";
    std::string scenario_label;
    std::string params_label;
    ScenarioConfig config;
    std::vector<SessionRecord> sessions;
    ReportSummary summary;
    bool ok = false;

    std::string to_json() const;  // deterministic bytes for fixed inputs
    std::string to_text() const;
};

/// Runs the configured scenario end to end and assembles the report.
/// Throws ConfigError on invalid configs, IoError on file trouble.
Report run(const ScenarioConfig& cfg);

/// Re-runs the attacks offline from exported transcript and leak files.
Report replay(const std::string& transcripts_path, const std::string& leaks_path);

}  // namespace tmis::harness
