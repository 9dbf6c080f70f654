#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <set>

#include "tmis/errors.hpp"
#include "tmis/harness.hpp"
#include "tmis/protocol.hpp"

using namespace tmis;
using namespace tmis::protocol;
using tmis::harness::LogicalClock;

namespace {

const CurveParams* test_params() {
    return &CurveParams::test_set();
}

PatientCredentials sample_creds(const char* id = "alice") {
    PatientCredentials creds;
    creds.id = to_bytes(id);
    creds.password = to_bytes("hunter2");
    creds.biometric = to_bytes("thumb");
    return creds;
}

struct Fixture {
    const CurveParams* params;
    Drbg rng;
    ServerState server;
    PatientCredentials creds;
    SmartCard card;

    explicit Fixture(const CurveParams* p, uint64_t seed = 99,
                     uint64_t delta_max = 1000)
        : params(p), rng(Drbg::from_seed(seed)) {
        server = server_keygen(params, to_bytes("ID_s"), rng,
                               FreshnessPolicy{delta_max});
        creds = sample_creds();
        card = register_patient(server, patient_make_registration(creds));
    }
};

struct HonestRun {
    PatientSessionState pstate;
    ServerSessionState sstate;
    LoginRequest login;
    ServerResponse response;
    SessionKey sk_patient;
};

HonestRun run_handshake(Fixture& fx, uint64_t clock_start = 5000000) {
    LogicalClock clock(clock_start, 1);
    auto [pstate, login] =
        patient_login_start(fx.card, fx.creds, fx.server.server_id, clock, fx.rng);
    auto [sstate, response] = server_handle_login(fx.server, login, clock, fx.rng);
    SessionKey sk = patient_finish(pstate, response, clock, fx.server.policy);
    return {std::move(pstate), std::move(sstate), std::move(login), std::move(response),
            sk};
}

}  // namespace

TEST_CASE("registration request binds password and biometric") {
    PatientCredentials creds = sample_creds();
    RegistrationRequest req = patient_make_registration(creds);
    CHECK(req.id == creds.id);
    // Pinned C_i for ("hunter2", "thumb").
    CHECK(to_hex(req.c_i) ==
          "eeab2d1611a18963276988dd44d78f153b98748f33161c1b03fb97593a3b164d");
    CHECK(patient_make_registration(creds).c_i == req.c_i);

    // XOR involution: C_i xor H_B(B_i) gives back the password digest.
    Digest bio = biometric_hash(creds.biometric);
    Bytes recovered = xor_mask(req.c_i, bio);
    Digest pw = password_digest(creds.password);
    CHECK(recovered == Bytes(pw.begin(), pw.end()));

    PatientCredentials other = sample_creds();
    other.password = to_bytes("hunter3");
    CHECK(patient_make_registration(other).c_i != req.c_i);

    PatientCredentials empty = sample_creds("");
    CHECK_THROWS_AS(patient_make_registration(empty), EmptyIdentity);
}

TEST_CASE("registration counter semantics") {
    const CurveParams* params = test_params();
    Drbg rng = Drbg::from_seed(3);
    ServerState server = server_keygen(params, to_bytes("ID_s"), rng);
    RegistrationRequest req = patient_make_registration(sample_creds());

    register_patient(server, req);
    CHECK(server.registry.at(req.id) == 0);  // new identity starts at N = 0
    register_patient(server, req);
    CHECK(server.registry.at(req.id) == 1);  // re-registration increments

    uint64_t previous = 1;
    for (int i = 0; i < 5; ++i) {
        register_patient(server, req);
        uint64_t current = server.registry.at(req.id);
        CHECK(current == previous + 1);
        previous = current;
    }

    RegistrationRequest other = patient_make_registration(sample_creds("bob"));
    register_patient(server, other);
    CHECK(server.registry.at(other.id) == 0);
    CHECK(server.registry.size() == 2);
}

TEST_CASE("issued card fields") {
    Fixture fx(test_params(), 31337);
    // V_i is pinned for these credentials and q = 11.
    CHECK(fx.card.v_i.value() == BigUint(5));
    CHECK(fx.card.p_pub == fx.server.master_key * test_params()->generator());

    // W_i xor mask(ID_i, s) recovers C_i.
    std::array<uint8_t, 32> mask = registration_mask(fx.creds.id, fx.server.master_key);
    RegistrationRequest req = patient_make_registration(fx.creds);
    for (size_t i = 0; i < 32; ++i) {
        CHECK(uint8_t(fx.card.w_i[i] ^ mask[i]) == req.c_i[i]);
    }
}

TEST_CASE("registration mask pinned vector") {
    const CurveParams* params = test_params();
    Scalar s(BigUint(7), params);
    CHECK(to_hex(registration_mask(to_bytes("alice"), s)) ==
          "09781db56763ff5072c8ce7f7fd98b6368a526261c23c13308a410bbcf3e0e13");
}

TEST_CASE("card local verification") {
    Fixture fx(test_params());
    CHECK(card_local_verify(fx.card, fx.creds));

    PatientCredentials wrong_pw = fx.creds;
    wrong_pw.password = to_bytes("wrong");
    CHECK_FALSE(card_local_verify(fx.card, wrong_pw));

    PatientCredentials wrong_bio = fx.creds;
    wrong_bio.biometric = to_bytes("other thumb");
    CHECK_FALSE(card_local_verify(fx.card, wrong_bio));

    PatientCredentials wrong_id = fx.creds;
    wrong_id.id = to_bytes("mallory");
    CHECK_FALSE(card_local_verify(fx.card, wrong_id));
}

TEST_CASE("login start enforces the card check") {
    Fixture fx(test_params());
    PatientCredentials wrong = fx.creds;
    wrong.password = to_bytes("guess");
    LogicalClock clock(1000, 1);
    CHECK_THROWS_AS(
        patient_login_start(fx.card, wrong, fx.server.server_id, clock, fx.rng),
        CardRejected);
}

TEST_CASE("login request structure") {
    Fixture fx(test_params());
    LogicalClock clock(1000, 1);
    auto [pstate, login] =
        patient_login_start(fx.card, fx.creds, fx.server.server_id, clock, fx.rng);

    CHECK(login.r_i == pstate.r_i * pstate.q_i);
    CHECK(login.r_i.is_on_curve());
    CHECK(login.r_i.mul(fx.params->q).is_infinity());
    CHECK(pstate.q_i == map_to_point(fx.creds.id, fx.params));
    CHECK(pstate.q_s == map_to_point(fx.server.server_id, fx.params));
    CHECK(login.t_i == Timestamp{1000});

    // The ciphertext opens under the patient's pairing key.
    Bytes plaintext = sym_decrypt(kdf_from_gt(pstate.k_i), login.auth_i);
    AuthPayload payload = decode_auth_payload(plaintext, fx.params);
    CHECK(payload.id == fx.creds.id);
    CHECK(payload.t == login.t_i);
    CHECK(payload.r == pstate.r_i);
}

TEST_CASE("seeded bilinearity identity for the patient key") {
    Fixture fx(test_params());
    LogicalClock clock(1000, 1);
    auto [pstate, login] =
        patient_login_start(fx.card, fx.creds, fx.server.server_id, clock, fx.rng);
    GtElement base = pairing(fx.params->generator(), pstate.q_i);
    Scalar exponent = fx.server.master_key * pstate.r_i;
    CHECK(pstate.k_i == gt_pow(base, exponent));
}

TEST_CASE("honest handshake agrees on both parameter sets") {
    for (const CurveParams* params : {test_params(), &CurveParams::desk_set()}) {
        Fixture fx(params, 2024);
        HonestRun run = run_handshake(fx);
        CHECK(run.sk_patient == run.sstate.session_key);
        CHECK(run.pstate.session_key.has_value());
        CHECK(*run.pstate.session_key == run.sk_patient);
        REQUIRE(run.pstate.l_point.has_value());
        CHECK(*run.pstate.l_point == run.sstate.l_point);
        CHECK(run.sstate.r_point == run.response.r_s);
        // K agreement: e(P_pub, r_i Q_i) = e(s R_i, P).
        CHECK(run.pstate.k_i == run.sstate.k_s);
    }
}

TEST_CASE("keygen is deterministic per seed and P_pub matches s") {
    const CurveParams* params = test_params();
    Drbg a = Drbg::from_seed(5);
    Drbg b = Drbg::from_seed(5);
    ServerState s1 = server_keygen(params, to_bytes("ID_s"), a);
    ServerState s2 = server_keygen(params, to_bytes("ID_s"), b);
    CHECK(s1.master_key == s2.master_key);
    CHECK(s1.p_pub == s2.p_pub);
    CHECK(s1.p_pub == s1.master_key * params->generator());
    CHECK_FALSE(s1.master_key.is_zero());
}

TEST_CASE("an s = 3 server key gives P_pub = P + P + P") {
    const CurveParams* params = test_params();
    // Drive the drbg until it would yield 3, then build the state manually
    // through the same public surface: keygen with a crafted rng is
    // equivalent to checking the definition directly.
    ServerState server;
    server.params = params;
    server.master_key = Scalar(BigUint(3), params);
    server.p_pub = server.master_key * params->generator();
    G1Point g = params->generator();
    CHECK(server.p_pub == g + g + g);
}

TEST_CASE("session keys differ across 100 seeded runs") {
    std::set<std::string> keys;
    for (uint64_t seed = 0; seed < 100; ++seed) {
        Fixture fx(test_params(), 7000 + seed);
        HonestRun run = run_handshake(fx, 1000000 + seed * 10000);
        keys.insert(run.sk_patient.hex());
    }
    CHECK(keys.size() == 100);
}

TEST_CASE("stale login requests are rejected") {
    Fixture fx(test_params(), 11, /*delta_max=*/5);
    LogicalClock patient_clock(1000, 1);
    auto [pstate, login] =
        patient_login_start(fx.card, fx.creds, fx.server.server_id, patient_clock, fx.rng);
    LogicalClock late_clock(1000 + 100, 1);
    CHECK_THROWS_AS(server_handle_login(fx.server, login, late_clock, fx.rng),
                    StaleTimestamp);

    // Future-dated is stale too.
    LogicalClock early_clock(500, 1);
    CHECK_THROWS_AS(server_handle_login(fx.server, login, early_clock, fx.rng),
                    StaleTimestamp);
}

TEST_CASE("stale server responses are rejected by the patient") {
    Fixture fx(test_params(), 21, /*delta_max=*/5);
    LogicalClock clock(1000, 1);
    auto [pstate, login] =
        patient_login_start(fx.card, fx.creds, fx.server.server_id, clock, fx.rng);
    auto [sstate, response] = server_handle_login(fx.server, login, clock, fx.rng);
    LogicalClock late_clock(response.t_s.millis + 50, 1);
    CHECK_THROWS_AS(patient_finish(pstate, response, late_clock, fx.server.policy),
                    StaleTimestamp);
}

TEST_CASE("zero freshness window with a ticking clock rejects everything") {
    Fixture fx(test_params(), 12, /*delta_max=*/0);
    LogicalClock clock(1000, 1);
    auto [pstate, login] =
        patient_login_start(fx.card, fx.creds, fx.server.server_id, clock, fx.rng);
    CHECK_THROWS_AS(server_handle_login(fx.server, login, clock, fx.rng), StaleTimestamp);
}

TEST_CASE("tampered R_i fails decryption") {
    Fixture fx(test_params(), 13);
    LogicalClock clock(1000, 1);
    auto [pstate, login] =
        patient_login_start(fx.card, fx.creds, fx.server.server_id, clock, fx.rng);
    LoginRequest tampered = login;
    tampered.r_i = login.r_i + login.r_i;  // 2 * R_i
    CHECK_THROWS_AS(server_handle_login(fx.server, tampered, clock, fx.rng),
                    DecryptFailure);
}

TEST_CASE("outer timestamp tamper hits the inner cross-check") {
    Fixture fx(test_params(), 14);
    LogicalClock clock(1000, 1);
    auto [pstate, login] =
        patient_login_start(fx.card, fx.creds, fx.server.server_id, clock, fx.rng);
    LoginRequest tampered = login;
    tampered.t_i = Timestamp{login.t_i.millis - 1};
    CHECK_THROWS_AS(server_handle_login(fx.server, tampered, clock, fx.rng),
                    TimestampMismatch);
}

TEST_CASE("forged nonce inside an honestly keyed ciphertext hits the point check") {
    Fixture fx(test_params(), 15);
    LogicalClock clock(1000, 1);
    auto [pstate, login] =
        patient_login_start(fx.card, fx.creds, fx.server.server_id, clock, fx.rng);
    // White-box forgery: re-encrypt a wrong nonce under the correct pairing
    // key so that decryption succeeds and the R_i = r_i Q_i check fires.
    Scalar wrong_r = pstate.r_i + Scalar::one(fx.params);
    Bytes forged = encode_auth_payload(fx.creds.id, login.t_i, wrong_r);
    LoginRequest tampered = login;
    tampered.auth_i = sym_encrypt(kdf_from_gt(pstate.k_i), forged);
    CHECK_THROWS_AS(server_handle_login(fx.server, tampered, clock, fx.rng),
                    PointCheckFailed);
}

TEST_CASE("tampered server response fields are rejected by the patient") {
    // On the q = 11 toy curve the authenticator scalar collides with
    // probability 1/11, so the point and timestamp tampers run on the desk
    // curve where the scalar has 160-bit range. The Auth_s tamper changes
    // the scalar itself and stays deterministic on any curve.
    Fixture tiny(test_params(), 16);
    {
        LogicalClock clock(1000, 1);
        auto [pstate, login] = patient_login_start(tiny.card, tiny.creds,
                                                   tiny.server.server_id, clock, tiny.rng);
        auto [sstate, response] = server_handle_login(tiny.server, login, clock, tiny.rng);
        ServerResponse bad_auth = response;
        bad_auth.auth_s = response.auth_s + Scalar::one(tiny.params);
        CHECK_THROWS_AS(patient_finish(pstate, bad_auth, clock, tiny.server.policy),
                        AuthMismatch);
    }

    Fixture fx(&CurveParams::desk_set(), 16);
    LogicalClock clock(1000, 1);
    auto [pstate, login] =
        patient_login_start(fx.card, fx.creds, fx.server.server_id, clock, fx.rng);
    auto [sstate, response] = server_handle_login(fx.server, login, clock, fx.rng);

    ServerResponse bad_point = response;
    bad_point.r_s = response.r_s + response.r_s;
    PatientSessionState st2 = pstate;
    CHECK_THROWS_AS(patient_finish(st2, bad_point, clock, fx.server.policy), AuthMismatch);

    ServerResponse bad_time = response;
    bad_time.t_s = Timestamp{response.t_s.millis - 1};
    PatientSessionState st3 = pstate;
    CHECK_THROWS_AS(patient_finish(st3, bad_time, clock, fx.server.policy), AuthMismatch);

    // The untampered response still verifies afterwards.
    SessionKey sk = patient_finish(pstate, response, clock, fx.server.policy);
    CHECK(sk == sstate.session_key);
}

TEST_CASE("auth payload encoding round trip and rejection") {
    const CurveParams* params = test_params();
    Scalar r(BigUint(9), params);
    Bytes payload = encode_auth_payload(to_bytes("carol"), Timestamp{77}, r);
    AuthPayload decoded = decode_auth_payload(payload, params);
    CHECK(decoded.id == to_bytes("carol"));
    CHECK(decoded.t == Timestamp{77});
    CHECK(decoded.r == r);

    Bytes truncated(payload.begin(), payload.end() - 1);
    CHECK_THROWS_AS(decode_auth_payload(truncated, params), DecodeError);
    Bytes extended = payload;
    extended.push_back(0);
    CHECK_THROWS_AS(decode_auth_payload(extended, params), DecodeError);
}

TEST_CASE("wire round trips") {
    for (const CurveParams* params :
         {test_params(), &CurveParams::desk_set()}) {
        Fixture fx(params, 17);
        LogicalClock clock(1000, 1);
        auto [pstate, login] =
            patient_login_start(fx.card, fx.creds, fx.server.server_id, clock, fx.rng);
        Bytes login_wire = encode_login_request(login);
        CHECK(login_wire[0] == kWireTagLogin);
        LoginRequest login2 = decode_login_request(login_wire, params);
        CHECK(login2.r_i == login.r_i);
        CHECK(login2.t_i == login.t_i);
        CHECK(login2.auth_i == login.auth_i);

        auto [sstate, response] = server_handle_login(fx.server, login2, clock, fx.rng);
        Bytes resp_wire = encode_server_response(response);
        CHECK(resp_wire[0] == kWireTagResponse);
        CHECK(resp_wire.size() == 1 + 1 + 2 * params->field_bytes() + 8 + 32);
        ServerResponse response2 = decode_server_response(resp_wire, params);
        CHECK(response2.r_s == response.r_s);
        CHECK(response2.t_s == response.t_s);
        CHECK(response2.auth_s == response.auth_s);
    }
}

TEST_CASE("wire decoding rejects malformed messages") {
    const CurveParams* params = test_params();
    Fixture fx(params, 18);
    LogicalClock clock(1000, 1);
    auto [pstate, login] =
        patient_login_start(fx.card, fx.creds, fx.server.server_id, clock, fx.rng);
    Bytes wire = encode_login_request(login);

    CHECK_THROWS_AS(decode_login_request({}, params), DecodeError);
    Bytes wrong_tag = wire;
    wrong_tag[0] = 0x7f;
    CHECK_THROWS_AS(decode_login_request(wrong_tag, params), DecodeError);
    Bytes truncated(wire.begin(), wire.end() - 1);
    CHECK_THROWS_AS(decode_login_request(truncated, params), DecodeError);
    Bytes padded = wire;
    padded.push_back(0);
    CHECK_THROWS_AS(decode_login_request(padded, params), DecodeError);
    CHECK_THROWS_AS(decode_server_response(wire, params), DecodeError);
}

TEST_CASE("registry persistence round trip") {
    const CurveParams* params = test_params();
    Drbg rng = Drbg::from_seed(19);
    ServerState server = server_keygen(params, to_bytes("ID_s"), rng);
    register_patient(server, patient_make_registration(sample_creds("alice")));
    register_patient(server, patient_make_registration(sample_creds("alice")));
    register_patient(server, patient_make_registration(sample_creds("bob")));

    std::string path = "registry_test.txt";
    save_registry(server.registry, path);
    auto loaded = load_registry(path);
    CHECK(loaded == server.registry);
    CHECK(loaded.at(to_bytes("alice")) == 1);
    CHECK(loaded.at(to_bytes("bob")) == 0);
    std::remove(path.c_str());

    CHECK_THROWS_AS(load_registry("does-not-exist.txt"), IoError);
}

TEST_CASE("session key digest pinned vector") {
    const CurveParams* params = test_params();
    G1Point g = params->generator();
    SessionKey sk = session_key_digest(Timestamp{1}, g, Timestamp{2}, g, g);
    // Pinned against an independent length-prefixed digest computation.
    CHECK(sk.hex() == "2c0a64ea722c28c10f1a1850cf59a156a7494eb858f27505fe6c8229326e943c");
}
