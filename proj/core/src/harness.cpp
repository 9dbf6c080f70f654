#include "tmis/harness.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tmis/errors.hpp"

namespace tmis::harness {

using nlohmann::json;
namespace proto = tmis::protocol;

std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::honest: return "honest";
        case Scenario::kssti: return "kssti";
        case Scenario::pfs: return "pfs";
        case Scenario::tamper: return "tamper";
        case Scenario::all: return "all";
    }
    return "?";
}

std::string to_string(ParamSet p) {
    return p == ParamSet::test ? "test" : "desk";
}

std::string to_string(OutputFormat f) {
    return f == OutputFormat::text ? "text" : "json";
}

Scenario scenario_from_string(std::string_view s) {
    if (s == "honest") return Scenario::honest;
    if (s == "kssti") return Scenario::kssti;
    if (s == "pfs") return Scenario::pfs;
    if (s == "tamper") return Scenario::tamper;
    if (s == "all") return Scenario::all;
    throw ConfigError("unknown scenario: " + std::string(s));
}

ParamSet param_set_from_string(std::string_view s) {
    if (s == "test") return ParamSet::test;
    if (s == "desk") return ParamSet::desk;
    throw ConfigError("unknown parameter set: " + std::string(s));
}

OutputFormat format_from_string(std::string_view s) {
    if (s == "text") return OutputFormat::text;
    if (s == "json") return OutputFormat::json;
    throw ConfigError("unknown output format: " + std::string(s));
}

void ScenarioConfig::validate() const {
    if (sessions < 1) {
        throw ConfigError("sessions must be at least 1");
    }
    bool tampering = scenario == Scenario::tamper || scenario == Scenario::all;
    if (tampering && delta_max_millis < 2) {
        throw ConfigError("tamper scenarios need delta-max >= 2 ms");
    }
}

void EavesdropChannel::record(std::string direction, uint64_t at_millis, Bytes payload) {
    messages_.push_back({std::move(direction), at_millis, std::move(payload)});
}

namespace {

const CurveParams* params_for(ParamSet set) {
    return set == ParamSet::test ? &CurveParams::test_set() : &CurveParams::desk_set();
}

struct SessionOutcome {
    SessionRecord record;
    // Populated only when the handshake completed.
    bool completed = false;
    attacks::Transcript transcript;
    proto::SessionKey honest_sk;
    Scalar r_s_leak;
};

/// One honest registration + handshake, every public message recorded by
/// the session's eavesdrop channel; the transcript handed to the attacks
/// is decoded back from those recorded bytes.
SessionOutcome run_session(proto::ServerState& server, const ScenarioConfig& cfg,
                           const Drbg& run_rng, uint32_t session_id) {
    const CurveParams* params = server.params;
    SessionOutcome out;
    out.record.session_id = session_id;
    EavesdropChannel channel;

    Drbg patient_rng = run_rng.fork("PATIENT", session_id);
    Drbg server_rng = run_rng.fork("SERVER", session_id);
    LogicalClock clock(1000000ull * (session_id + 1), 1);

    proto::PatientCredentials creds;
    creds.id = to_bytes("patient-" + to_hex(patient_rng.next_bytes(4)));
    creds.password = patient_rng.next_bytes(12);
    creds.biometric = patient_rng.next_bytes(16);

    try {
        proto::RegistrationRequest reg = proto::patient_make_registration(creds);
        proto::SmartCard card = proto::register_patient(server, reg);

        auto [pstate, login] = proto::patient_login_start(card, creds, server.server_id,
                                                          clock, patient_rng);
        Bytes login_bytes = proto::encode_login_request(login);
        channel.record("patient->server", login.t_i.millis, login_bytes);

        proto::LoginRequest login_rx = proto::decode_login_request(login_bytes, params);
        auto [sstate, response] = proto::server_handle_login(server, login_rx, clock,
                                                             server_rng);
        Bytes response_bytes = proto::encode_server_response(response);
        channel.record("server->patient", response.t_s.millis, response_bytes);

        proto::ServerResponse response_rx =
            proto::decode_server_response(response_bytes, params);
        proto::SessionKey sk_patient =
            proto::patient_finish(pstate, response_rx, clock, server.policy);

        out.record.sk_patient_hex = sk_patient.hex();
        out.record.sk_server_hex = sstate.session_key.hex();
        out.record.agreement = sk_patient == sstate.session_key;
        out.completed = true;
        out.transcript = attacks::transcript_from_wire(channel.recorded()[0].payload,
                                                       channel.recorded()[1].payload,
                                                       params, to_string(cfg.param_set));
        out.honest_sk = sstate.session_key;
        out.r_s_leak = sstate.r_s;
    } catch (const Error& e) {
        out.record.error = e.kind();
    }
    return out;
}

AttackRecord run_kssti_on(const SessionOutcome& session, const Scalar& leak_r_s,
                          const CurveParams* params, const proto::SessionKey& honest_sk) {
    AttackRecord rec;
    rec.attack_name = "kssti";
    try {
        attacks::AttackOutcome outcome =
            attacks::kssti_attack(session.transcript, attacks::LeakedEphemeral{leak_r_s},
                                  params);
        rec.recovered_sk_hex = outcome.recovered_sk.hex();
        rec.matches = outcome.recovered_sk == honest_sk;
        rec.trace = outcome.trace;
    } catch (const Error& e) {
        rec.error = e.kind();
    }
    return rec;
}

AttackRecord run_pfs_on(const SessionOutcome& session, const Scalar& leak_s,
                        const G1Point& p_pub, const CurveParams* params,
                        const proto::SessionKey& honest_sk) {
    AttackRecord rec;
    rec.attack_name = "pfs";
    try {
        attacks::AttackOutcome outcome = attacks::pfs_attack(
            session.transcript, attacks::LeakedLongTerm{leak_s, p_pub}, params);
        rec.recovered_sk_hex = outcome.recovered_sk.hex();
        rec.matches = outcome.recovered_sk == honest_sk;
        rec.trace = outcome.trace;
        if (outcome.recovered_extras) {
            rec.recovered_id_hex = to_hex(outcome.recovered_extras->first);
            rec.recovered_ri_hex = outcome.recovered_extras->second.value().to_hex();
        }
    } catch (const Error& e) {
        rec.error = e.kind();
    }
    return rec;
}

struct TamperPlan {
    std::string field;
    std::string expected;  // accepted error kinds, "|"-separated
};

const std::vector<TamperPlan>& tamper_plans() {
    static const std::vector<TamperPlan> plans = {
        {"R_i", "DecryptFailure|PointCheckFailed"},
        {"T_i", "TimestampMismatch"},
        {"Auth_i", "DecryptFailure"},
        {"R_s", "AuthMismatch"},
        {"T_s", "AuthMismatch"},
        {"Auth_s", "AuthMismatch"},
    };
    return plans;
}

bool error_kind_expected(const std::string& expected, const std::string& observed) {
    size_t pos = 0;
    while (pos <= expected.size()) {
        size_t bar = expected.find('|', pos);
        std::string_view one(expected.data() + pos,
                             (bar == std::string::npos ? expected.size() : bar) - pos);
        if (one == observed) {
            return true;
        }
        if (bar == std::string::npos) {
            break;
        }
        pos = bar + 1;
    }
    return false;
}

/// Runs one handshake with a single message field replaced by a tampered
/// clone; the honest channel recording stays untouched.
TamperRecord tamper_session(proto::ServerState& server, const ScenarioConfig& cfg,
                            const Drbg& run_rng, uint32_t session_id, size_t field_index) {
    const CurveParams* params = server.params;
    const TamperPlan& plan = tamper_plans()[field_index];
    TamperRecord rec;
    rec.field = plan.field;
    rec.expected_error = plan.expected;

    uint64_t sub = session_id * 16 + field_index;
    Drbg patient_rng = run_rng.fork("TAMPER-PATIENT", sub);
    Drbg server_rng = run_rng.fork("TAMPER-SERVER", sub);
    Drbg adversary_rng = run_rng.fork("TAMPER-ADV", sub);
    LogicalClock clock(2000000000ull + 1000000ull * sub, 1);

    proto::PatientCredentials creds;
    creds.id = to_bytes("patient-" + to_hex(patient_rng.next_bytes(4)));
    creds.password = patient_rng.next_bytes(12);
    creds.biometric = patient_rng.next_bytes(16);

    try {
        proto::RegistrationRequest reg = proto::patient_make_registration(creds);
        proto::SmartCard card = proto::register_patient(server, reg);
        auto [pstate, login] = proto::patient_login_start(card, creds, server.server_id,
                                                          clock, patient_rng);

        auto random_multiplier = [&]() {
            Scalar k = adversary_rng.next_nonzero_scalar(params);
            while (k.value() == BigUint(1)) {
                k = adversary_rng.next_nonzero_scalar(params);
            }
            return k;
        };
        // Backdating stays inside the freshness window so the timestamp
        // tamper is caught by the inner/outer cross-check, not staleness.
        auto backdate = [&](Timestamp t) {
            uint64_t span = cfg.delta_max_millis - 1;
            uint64_t d = 1 + (span <= 1 ? 0 : adversary_rng.next_u64() % (span - 1));
            return Timestamp{t.millis - std::min(t.millis, d)};
        };

        if (plan.field == "R_i" || plan.field == "T_i" || plan.field == "Auth_i") {
            proto::LoginRequest tampered = login;
            if (plan.field == "R_i") {
                tampered.r_i = random_multiplier() * login.r_i;
            } else if (plan.field == "T_i") {
                tampered.t_i = backdate(login.t_i);
            } else {
                size_t nbits = tampered.auth_i.body.size() * 8;
                if (nbits == 0) {
                    tampered.auth_i.tag[0] ^= 0x01;
                } else {
                    size_t bit = adversary_rng.next_u64() % nbits;
                    tampered.auth_i.body[bit / 8] ^= uint8_t(1) << (bit % 8);
                }
            }
            Bytes wire = proto::encode_login_request(tampered);
            proto::LoginRequest rx = proto::decode_login_request(wire, params);
            proto::server_handle_login(server, rx, clock, server_rng);
        } else {
            auto [sstate, response] = proto::server_handle_login(
                server, login, clock, server_rng);
            proto::ServerResponse tampered = response;
            if (plan.field == "R_s") {
                tampered.r_s = random_multiplier() * response.r_s;
            } else if (plan.field == "T_s") {
                tampered.t_s = backdate(response.t_s);
            } else {
                Scalar offset = adversary_rng.next_nonzero_scalar(params);
                tampered.auth_s = response.auth_s + offset;
            }
            Bytes wire = proto::encode_server_response(tampered);
            proto::ServerResponse rx = proto::decode_server_response(wire, params);
            proto::patient_finish(pstate, rx, clock, server.policy);
        }
        // Reaching this point means the tamper was accepted.
        rec.rejected = false;
        rec.observed_error = "";
    } catch (const Error& e) {
        rec.observed_error = e.kind();
        rec.rejected = error_kind_expected(plan.expected, e.kind());
    }
    return rec;
}

json trace_to_json(const std::vector<std::pair<std::string, std::string>>& trace) {
    json arr = json::array();
    for (const auto& [label, value] : trace) {
        arr.push_back(json::array({label, value}));
    }
    return arr;
}

json attack_to_json(const AttackRecord& rec) {
    json j;
    j["attack_name"] = rec.attack_name;
    j["recovered_sk_hex"] = rec.recovered_sk_hex;
    j["matches"] = rec.matches;
    j["error"] = rec.error;
    if (!rec.recovered_id_hex.empty()) {
        j["recovered_id_hex"] = rec.recovered_id_hex;
        j["recovered_ri_hex"] = rec.recovered_ri_hex;
    }
    j["trace"] = trace_to_json(rec.trace);
    return j;
}

json session_to_json(const SessionRecord& rec) {
    json j;
    j["session_id"] = rec.session_id;
    j["sk_patient_hex"] = rec.sk_patient_hex;
    j["sk_server_hex"] = rec.sk_server_hex;
    j["agreement"] = rec.agreement;
    j["error"] = rec.error;
    json attacks_json = json::array();
    for (const AttackRecord& a : rec.attacks) {
        attacks_json.push_back(attack_to_json(a));
    }
    j["attacks"] = attacks_json;
    json tampers_json = json::array();
    for (const TamperRecord& t : rec.tampers) {
        tampers_json.push_back(json{{"field", t.field},
                                    {"expected_error", t.expected_error},
                                    {"observed_error", t.observed_error},
                                    {"rejected", t.rejected}});
    }
    j["tampers"] = tampers_json;
    return j;
}

ReportSummary summarize(const std::vector<SessionRecord>& sessions) {
    ReportSummary summary;
    summary.runs = static_cast<uint32_t>(sessions.size());
    for (const SessionRecord& rec : sessions) {
        if (rec.agreement) {
            ++summary.agreements;
        }
        for (const AttackRecord& a : rec.attacks) {
            if (a.matches) {
                ++summary.attack_success[a.attack_name];
            } else {
                summary.attack_success.try_emplace(a.attack_name, 0);
            }
        }
        for (const TamperRecord& t : rec.tampers) {
            ++summary.tamper_total;
            if (t.rejected) {
                ++summary.tamper_rejected;
            }
        }
    }
    return summary;
}

bool report_assertions_hold(const ScenarioConfig& cfg,
                            const std::vector<SessionRecord>& sessions) {
    for (const SessionRecord& rec : sessions) {
        bool handshake_needed = true;
        if (cfg.scenario == Scenario::tamper) {
            handshake_needed = false;  // tamper sessions never complete honestly
        }
        if (handshake_needed && (!rec.agreement || !rec.error.empty())) {
            return false;
        }
        for (const AttackRecord& a : rec.attacks) {
            if (cfg.corrupt_leak ? a.matches : !a.matches) {
                return false;
            }
        }
        for (const TamperRecord& t : rec.tampers) {
            if (!t.rejected) {
                return false;
            }
        }
    }
    return true;
}

void export_files(const ScenarioConfig& cfg, const std::vector<SessionOutcome>& outcomes,
                  const std::vector<std::pair<Scalar, bool>>& kssti_leaks,
                  const Scalar& pfs_leak, bool export_pfs_leak) {
    std::ofstream transcripts(cfg.export_path, std::ios::trunc);
    if (!transcripts) {
        throw IoError("cannot open transcript export file: " + cfg.export_path);
    }
    std::string leaks_path = cfg.export_path + ".leaks";
    std::ofstream leaks(leaks_path, std::ios::trunc);
    if (!leaks) {
        throw IoError("cannot open leaks export file: " + leaks_path);
    }
    for (const SessionOutcome& out : outcomes) {
        if (!out.completed) {
            continue;
        }
        const attacks::Transcript& t = out.transcript;
        Bytes auth_i_joined = t.auth_i.body;
        auth_i_joined.insert(auth_i_joined.end(), t.auth_i.tag.begin(), t.auth_i.tag.end());
        json line;
        line["schema"] = "1";
        line["session_id"] = out.record.session_id;
        line["params_label"] = t.params_label;
        line["R_i"] = to_hex(t.r_i.serialize());
        line["T_i"] = t.t_i.millis;
        line["Auth_i"] = to_hex(auth_i_joined);
        line["R_s"] = to_hex(t.r_s.serialize());
        line["T_s"] = t.t_s.millis;
        line["Auth_s"] = to_hex(t.auth_s.to_bytes_wide(proto::kAuthScalarWireBytes));
        transcripts << line.dump() << "\n";

        json leak_line;
        leak_line["schema"] = "1";
        leak_line["session_id"] = out.record.session_id;
        leak_line["params_label"] = t.params_label;
        leak_line["expected_sk"] = out.honest_sk.hex();
        size_t idx = out.record.session_id;
        if (idx < kssti_leaks.size() && kssti_leaks[idx].second) {
            leak_line["r_s"] = kssti_leaks[idx].first.value().to_hex();
        }
        if (export_pfs_leak) {
            leak_line["s"] = pfs_leak.value().to_hex();
        }
        leaks << leak_line.dump() << "\n";
    }
    if (!transcripts || !leaks) {
        throw IoError("failed writing export files");
    }
}

}  // namespace

Report run(const ScenarioConfig& cfg) {
    cfg.validate();
    const CurveParams* params = params_for(cfg.param_set);

    Report report;
    report.config = cfg;
    report.scenario_label = to_string(cfg.scenario);
    report.params_label = to_string(cfg.param_set);

    Drbg run_rng = Drbg::from_seed(cfg.seed);
    Drbg keygen_rng = run_rng.fork("KEYGEN", 0);
    proto::ServerState server = proto::server_keygen(
        params, to_bytes("medical-server"), keygen_rng,
        FreshnessPolicy{cfg.delta_max_millis});
    if (!cfg.registry_path.empty() && std::filesystem::exists(cfg.registry_path)) {
        server.registry = proto::load_registry(cfg.registry_path);
    }

    bool want_kssti = cfg.scenario == Scenario::kssti || cfg.scenario == Scenario::all;
    bool want_pfs = cfg.scenario == Scenario::pfs || cfg.scenario == Scenario::all;
    bool want_tamper = cfg.scenario == Scenario::tamper || cfg.scenario == Scenario::all;
    bool want_handshake = cfg.scenario != Scenario::tamper;

    Scalar pfs_leak = server.master_key;
    if (cfg.corrupt_leak) {
        pfs_leak = pfs_leak + Scalar::one(params);
    }

    std::vector<SessionOutcome> outcomes;
    std::vector<std::pair<Scalar, bool>> kssti_leaks(cfg.sessions,
                                                     {Scalar::zero(params), false});

    for (uint32_t i = 0; i < cfg.sessions; ++i) {
        SessionOutcome outcome;
        if (want_handshake) {
            outcome = run_session(server, cfg, run_rng, i);
            if (outcome.completed) {
                if (want_kssti) {
                    Scalar leak = outcome.r_s_leak;
                    if (cfg.corrupt_leak) {
                        leak = leak + Scalar::one(params);
                    }
                    kssti_leaks[i] = {leak, true};
                    outcome.record.attacks.push_back(
                        run_kssti_on(outcome, leak, params, outcome.honest_sk));
                }
                if (want_pfs) {
                    outcome.record.attacks.push_back(run_pfs_on(
                        outcome, pfs_leak, server.p_pub, params, outcome.honest_sk));
                }
            }
        } else {
            outcome.record.session_id = i;
            outcome.record.agreement = false;
        }
        if (want_tamper) {
            for (size_t f = 0; f < tamper_plans().size(); ++f) {
                outcome.record.tampers.push_back(tamper_session(server, cfg, run_rng, i, f));
            }
        }
        outcomes.push_back(std::move(outcome));
    }

    if (!cfg.registry_path.empty()) {
        proto::save_registry(server.registry, cfg.registry_path);
    }
    if (!cfg.export_path.empty()) {
        export_files(cfg, outcomes, kssti_leaks, pfs_leak, want_pfs);
    }

    for (SessionOutcome& out : outcomes) {
        report.sessions.push_back(std::move(out.record));
    }
    report.summary = summarize(report.sessions);
    report.ok = report_assertions_hold(cfg, report.sessions);
    return report;
}

namespace {

json parse_jsonl_line(const std::string& line, size_t line_no, const std::string& path) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw DecodeError(path + " line " + std::to_string(line_no) +
                          ": malformed JSON object");
    }
    if (!j.contains("schema") || !j["schema"].is_string()) {
        throw DecodeError(path + " line " + std::to_string(line_no) +
                          ": missing schema field");
    }
    if (j["schema"].get<std::string>() != "1") {
        throw SchemaVersionMismatch(path + " line " + std::to_string(line_no) +
                                    ": unsupported schema version");
    }
    return j;
}

std::string require_string(const json& j, const char* key, size_t line_no,
                           const std::string& path) {
    if (!j.contains(key) || !j[key].is_string()) {
        throw DecodeError(path + " line " + std::to_string(line_no) + ": missing field " +
                          key);
    }
    return j[key].get<std::string>();
}

uint64_t require_u64(const json& j, const char* key, size_t line_no,
                     const std::string& path) {
    if (!j.contains(key) || !j[key].is_number_unsigned()) {
        throw DecodeError(path + " line " + std::to_string(line_no) + ": missing field " +
                          key);
    }
    return j[key].get<uint64_t>();
}

Scalar scalar_from_hex(const std::string& hex, const CurveParams* params) {
    BigUint v = BigUint::from_hex(hex);
    if (v >= params->q) {
        throw DecodeError("scalar out of range");
    }
    return {std::move(v), params};
}

}  // namespace

Report replay(const std::string& transcripts_path, const std::string& leaks_path) {
    std::ifstream tfile(transcripts_path);
    if (!tfile) {
        throw IoError("cannot open transcripts file: " + transcripts_path);
    }
    std::ifstream lfile(leaks_path);
    if (!lfile) {
        throw IoError("cannot open leaks file: " + leaks_path);
    }

    std::map<uint64_t, json> leaks_by_session;
    std::string line;
    size_t line_no = 0;
    while (std::getline(lfile, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        json j = parse_jsonl_line(line, line_no, leaks_path);
        leaks_by_session[require_u64(j, "session_id", line_no, leaks_path)] = j;
    }

    Report report;
    report.scenario_label = "replay";
    report.config.scenario = Scenario::all;
    report.config.sessions = 0;

    line_no = 0;
    while (std::getline(tfile, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        json j = parse_jsonl_line(line, line_no, transcripts_path);
        uint64_t session_id = require_u64(j, "session_id", line_no, transcripts_path);
        std::string label = require_string(j, "params_label", line_no, transcripts_path);

        auto leak_it = leaks_by_session.find(session_id);
        if (leak_it == leaks_by_session.end()) {
            throw DecodeError(leaks_path + ": no leak entry for session " +
                              std::to_string(session_id));
        }
        const json& leak = leak_it->second;
        std::string leak_label = require_string(leak, "params_label", line_no, leaks_path);
        if (leak_label != label) {
            throw ParamsMismatch("transcript and leak parameter sets differ for session " +
                                 std::to_string(session_id));
        }
        const CurveParams* params = &CurveParams::by_label(label);
        if (report.params_label.empty()) {
            report.params_label = label;
        }

        attacks::Transcript transcript;
        transcript.params_label = label;
        try {
            transcript.r_i = G1Point::deserialize(
                from_hex(require_string(j, "R_i", line_no, transcripts_path)), params);
            transcript.r_s = G1Point::deserialize(
                from_hex(require_string(j, "R_s", line_no, transcripts_path)), params);
        } catch (const DecodeError& e) {
            throw DecodeError(transcripts_path + " line " + std::to_string(line_no) + ": " +
                              e.what());
        }
        transcript.t_i = Timestamp{require_u64(j, "T_i", line_no, transcripts_path)};
        transcript.t_s = Timestamp{require_u64(j, "T_s", line_no, transcripts_path)};
        Bytes auth_joined = from_hex(require_string(j, "Auth_i", line_no, transcripts_path));
        if (auth_joined.size() < 32) {
            throw DecodeError(transcripts_path + " line " + std::to_string(line_no) +
                              ": Auth_i too short");
        }
        transcript.auth_i.body.assign(auth_joined.begin(), auth_joined.end() - 32);
        std::copy(auth_joined.end() - 32, auth_joined.end(),
                  transcript.auth_i.tag.begin());
        Bytes auth_s = from_hex(require_string(j, "Auth_s", line_no, transcripts_path));
        BigUint auth_value = BigUint::from_bytes_be(auth_s);
        if (auth_value >= params->q) {
            throw DecodeError(transcripts_path + " line " + std::to_string(line_no) +
                              ": Auth_s out of range");
        }
        transcript.auth_s = Scalar(std::move(auth_value), params);

        proto::SessionKey expected_sk;
        Bytes expected_bytes =
            from_hex(require_string(leak, "expected_sk", line_no, leaks_path));
        if (expected_bytes.size() != 32) {
            throw DecodeError(leaks_path + ": bad expected_sk length");
        }
        std::copy(expected_bytes.begin(), expected_bytes.end(), expected_sk.bytes.begin());

        SessionOutcome outcome;
        outcome.completed = true;
        outcome.transcript = transcript;
        outcome.honest_sk = expected_sk;
        SessionRecord rec;
        rec.session_id = static_cast<uint32_t>(session_id);
        rec.agreement = true;

        if (leak.contains("r_s")) {
            Scalar leak_r_s =
                scalar_from_hex(leak["r_s"].get<std::string>(), params);
            rec.attacks.push_back(run_kssti_on(outcome, leak_r_s, params, expected_sk));
        }
        if (leak.contains("s")) {
            Scalar leak_s = scalar_from_hex(leak["s"].get<std::string>(), params);
            G1Point p_pub = leak_s * params->generator();
            rec.attacks.push_back(run_pfs_on(outcome, leak_s, p_pub, params, expected_sk));
        }
        report.sessions.push_back(std::move(rec));
    }

    report.config.sessions = static_cast<uint32_t>(report.sessions.size());
    report.summary = summarize(report.sessions);
    report.ok = true;
    for (const SessionRecord& rec : report.sessions) {
        for (const AttackRecord& a : rec.attacks) {
            if (!a.matches) {
                report.ok = false;
            }
        }
    }
    return report;
}

std::string Report::to_json() const {
    json j;
    j["schema"] = schema;
    json cfg_json;
    cfg_json["scenario"] = scenario_label;
    cfg_json["params"] = params_label;
    cfg_json["seed"] = config.seed;
    cfg_json["sessions"] = config.sessions;
    cfg_json["delta_max_millis"] = config.delta_max_millis;
    cfg_json["format"] = to_string(config.format);
    cfg_json["registry_path"] = config.registry_path;
    cfg_json["export_path"] = config.export_path;
    cfg_json["corrupt_leak"] = config.corrupt_leak;
    j["config"] = cfg_json;
    json sessions_json = json::array();
    for (const SessionRecord& rec : sessions) {
        sessions_json.push_back(session_to_json(rec));
    }
    j["sessions"] = sessions_json;
    j["summary"] = json{{"runs", summary.runs},
                        {"agreements", summary.agreements},
                        {"attack_success", summary.attack_success},
                        {"tamper_total", summary.tamper_total},
                        {"tamper_rejected", summary.tamper_rejected}};
    j["ok"] = ok;
    return j.dump(2) + "\n";
}

std::string Report::to_text() const {
    std::ostringstream out;
    out << "scenario " << scenario_label << " on params " << params_label << ", seed "
        << config.seed << ", " << summary.runs << " session(s)\n";
    for (const SessionRecord& rec : sessions) {
        out << "  session " << rec.session_id << ": ";
        if (!rec.error.empty()) {
            out << "error=" << rec.error;
        } else if (!rec.sk_patient_hex.empty()) {
            out << (rec.agreement ? "keys agree" : "KEY MISMATCH");
        } else {
            out << "-";
        }
        for (const AttackRecord& a : rec.attacks) {
            out << "  " << a.attack_name << "="
                << (a.error.empty() ? (a.matches ? "recovered" : "wrong-key")
                                    : a.error);
        }
        if (!rec.tampers.empty()) {
            uint32_t rejected = 0;
            for (const TamperRecord& t : rec.tampers) {
                rejected += t.rejected ? 1 : 0;
            }
            out << "  tampers rejected " << rejected << "/" << rec.tampers.size();
        }
        out << "\n";
    }
    out << "summary: agreements " << summary.agreements << "/" << summary.runs;
    for (const auto& [name, count] : summary.attack_success) {
        out << ", " << name << " " << count << "/" << summary.runs;
    }
    if (summary.tamper_total > 0) {
        out << ", tampers rejected " << summary.tamper_rejected << "/"
            << summary.tamper_total;
    }
    out << "\n";
    out << (ok ? "result: ok\n" : "result: FAILED\n");
    return out.str();
}

}  // namespace tmis::harness
