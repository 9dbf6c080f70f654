#include "tmis/attacks.hpp"

#include "tmis/errors.hpp"

namespace tmis::attacks {

namespace {

std::string point_hex(const G1Point& p) {
    return to_hex(p.serialize());
}

void require_valid_transcript(const Transcript& t) {
    if (!t.r_i.is_on_curve() || !t.r_s.is_on_curve()) {
        throw OffCurvePoint("transcript carries an off-curve point");
    }
}

}  // namespace

AttackOutcome kssti_attack(const Transcript& transcript, const LeakedEphemeral& leak,
                           const CurveParams* params) {
    require_valid_transcript(transcript);
    require_same_params(transcript.r_i.params(), params);

    AttackOutcome outcome;
    G1Point l_point = leak.r_s * transcript.r_i;
    outcome.trace.emplace_back("L = r_s * R_i (leaked nonce times public point)",
                               point_hex(l_point));
    outcome.recovered_sk = protocol::session_key_digest(
        transcript.t_i, transcript.r_i, transcript.t_s, transcript.r_s, l_point);
    outcome.trace.emplace_back("SK = h(T_i || R_i || T_s || R_s || L), all public but L",
                               outcome.recovered_sk.hex());
    return outcome;
}

AttackOutcome pfs_attack(const Transcript& transcript, const LeakedLongTerm& leak,
                         const CurveParams* params) {
    require_valid_transcript(transcript);
    require_same_params(transcript.r_i.params(), params);

    AttackOutcome outcome;
    GtElement k = pairing(leak.s * transcript.r_i, params->generator());
    outcome.trace.emplace_back("K = e(s * R_i, P) from the leaked long-term key",
                               to_hex(k.serialize()));

    SymmetricKey key = kdf_from_gt(k);
    Bytes plaintext = sym_decrypt(key, transcript.auth_i);
    protocol::AuthPayload payload = protocol::decode_auth_payload(plaintext, params);
    outcome.trace.emplace_back("decrypt Auth_i -> (ID_i, T_i, r_i)",
                               "ID_i=" + to_hex(payload.id) +
                                   " r_i=" + payload.r.value().to_hex());

    G1Point l_point = payload.r * transcript.r_s;
    outcome.trace.emplace_back(
        "L = r_i * R_s; equals r_i * r_s * Q_i = r_s * R_i, the server-side L",
        point_hex(l_point));

    outcome.recovered_sk = protocol::session_key_digest(
        transcript.t_i, transcript.r_i, transcript.t_s, transcript.r_s, l_point);
    outcome.trace.emplace_back("SK = h(T_i || R_i || T_s || R_s || L)",
                               outcome.recovered_sk.hex());
    outcome.recovered_extras = std::make_pair(payload.id, payload.r);
    return outcome;
}

Transcript transcript_from_wire(std::span<const uint8_t> login_bytes,
                                std::span<const uint8_t> response_bytes,
                                const CurveParams* params, std::string params_label) {
    protocol::LoginRequest login = protocol::decode_login_request(login_bytes, params);
    protocol::ServerResponse response =
        protocol::decode_server_response(response_bytes, params);
    Transcript t;
    t.r_i = login.r_i;
    t.t_i = login.t_i;
    t.auth_i = std::move(login.auth_i);
    t.r_s = response.r_s;
    t.t_s = response.t_s;
    t.auth_s = response.auth_s;
    t.params_label = std::move(params_label);
    return t;
}

}  // namespace tmis::attacks
