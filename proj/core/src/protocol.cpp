#include "tmis/protocol.hpp"

#include <fstream>

#include "tmis/errors.hpp"

namespace tmis::protocol {

std::string SessionKey::hex() const {
    return to_hex(bytes);
}

std::array<uint8_t, 32> password_digest(std::span<const uint8_t> password) {
    Sha256 h;
    h.update(std::string_view("PW"));
    h.update(password);
    return h.finish();
}

namespace {

std::array<uint8_t, 32> compute_c_i(const PatientCredentials& creds) {
    Digest pw = password_digest(creds.password);
    Digest bio = biometric_hash(creds.biometric);
    Bytes mixed = xor_mask(pw, bio);
    std::array<uint8_t, 32> out{};
    std::copy(mixed.begin(), mixed.end(), out.begin());
    return out;
}

Scalar card_verifier(std::span<const uint8_t> id, std::span<const uint8_t> c_i,
                     const CurveParams* params) {
    FieldWriter fields;
    fields.add(id);
    fields.add(c_i);
    return hash_to_scalar(fields.bytes(), params);
}

Scalar response_authenticator(Timestamp t_i, const G1Point& r_i, Timestamp t_s,
                              const G1Point& r_s, const G1Point& l_point,
                              const GtElement& k, const CurveParams* params) {
    FieldWriter fields;
    fields.add_u64(t_i.millis);
    fields.add(r_i.serialize());
    fields.add_u64(t_s.millis);
    fields.add(r_s.serialize());
    fields.add(l_point.serialize());
    fields.add(k.serialize());
    return hash_to_scalar(fields.bytes(), params);
}

}  // namespace

SessionKey session_key_digest(Timestamp t_i, const G1Point& r_i, Timestamp t_s,
                              const G1Point& r_s, const G1Point& l_point) {
    FieldWriter fields;
    fields.add_u64(t_i.millis);
    fields.add(r_i.serialize());
    fields.add_u64(t_s.millis);
    fields.add(r_s.serialize());
    fields.add(l_point.serialize());
    SessionKey out;
    out.bytes = Sha256::hash(fields.bytes());
    return out;
}

std::array<uint8_t, 32> registration_mask(std::span<const uint8_t> id,
                                          const Scalar& master_key) {
    FieldWriter fields;
    fields.add(id);
    fields.add(master_key.to_bytes());
    return Sha256::hash(fields.bytes());
}

ServerState server_keygen(const CurveParams* params, Bytes server_id, Drbg& rng,
                          FreshnessPolicy policy) {
    ServerState state;
    state.params = params;
    state.policy = policy;
    state.server_id = std::move(server_id);
    state.master_key = rng.next_nonzero_scalar(params);
    state.p_pub = state.master_key * params->generator();
    return state;
}

RegistrationRequest patient_make_registration(const PatientCredentials& creds) {
    if (creds.id.empty()) {
        throw EmptyIdentity("patient identity must be non-empty");
    }
    RegistrationRequest request;
    request.c_i = compute_c_i(creds);
    request.id = creds.id;
    return request;
}

SmartCard register_patient(ServerState& server, const RegistrationRequest& request) {
    auto [it, inserted] = server.registry.try_emplace(request.id, 0);
    if (!inserted) {
        it->second += 1;
    }

    SmartCard card;
    card.params = server.params;
    card.p_pub = server.p_pub;
    card.v_i = card_verifier(request.id, request.c_i, server.params);
    std::array<uint8_t, 32> mask = registration_mask(request.id, server.master_key);
    for (size_t i = 0; i < 32; ++i) {
        card.w_i[i] = request.c_i[i] ^ mask[i];
    }
    return card;
}

bool card_local_verify(const SmartCard& card, const PatientCredentials& creds) {
    if (creds.id.empty()) {
        return false;
    }
    std::array<uint8_t, 32> c_i = compute_c_i(creds);
    return card_verifier(creds.id, c_i, card.params) == card.v_i;
}

std::pair<PatientSessionState, LoginRequest> patient_login_start(
    const SmartCard& card, const PatientCredentials& creds,
    std::span<const uint8_t> server_id, Clock& clock, Drbg& rng) {
    if (!card_local_verify(card, creds)) {
        throw CardRejected("local credential check failed");
    }
    const CurveParams* params = card.params;

    PatientSessionState state;
    state.r_i = rng.next_nonzero_scalar(params);
    state.q_i = map_to_point(creds.id, params);
    state.q_s = map_to_point(server_id, params);
    state.r_point = state.r_i * state.q_i;
    state.k_i = pairing(card.p_pub, state.r_point);
    state.t_i = clock.now();

    LoginRequest request;
    request.r_i = state.r_point;
    request.t_i = state.t_i;
    SymmetricKey key = kdf_from_gt(state.k_i);
    request.auth_i = sym_encrypt(key, encode_auth_payload(creds.id, state.t_i, state.r_i));
    return {std::move(state), std::move(request)};
}

std::pair<ServerSessionState, ServerResponse> server_handle_login(
    const ServerState& server, const LoginRequest& request, Clock& clock, Drbg& rng) {
    const CurveParams* params = server.params;
    Timestamp received_at = clock.now();
    if (!check_freshness(request.t_i, received_at, server.policy)) {
        throw StaleTimestamp("login request outside the freshness window");
    }

    GtElement k_s = pairing(server.master_key * request.r_i, params->generator());
    SymmetricKey key = kdf_from_gt(k_s);
    Bytes plaintext = sym_decrypt(key, request.auth_i);
    AuthPayload payload = decode_auth_payload(plaintext, params);
    if (payload.t != request.t_i) {
        throw TimestampMismatch("inner timestamp differs from the outer one");
    }

    G1Point q_i = map_to_point(payload.id, params);
    if (!(payload.r * q_i == request.r_i)) {
        throw PointCheckFailed("R_i does not match r_i * Q_i");
    }

    ServerSessionState state;
    state.q_i = q_i;
    state.q_s = map_to_point(server.server_id, params);
    state.k_s = k_s;
    state.r_s = rng.next_nonzero_scalar(params);
    state.r_point = state.r_s * q_i;
    state.l_point = state.r_s * request.r_i;
    state.t_s = clock.now();
    state.session_key = session_key_digest(request.t_i, request.r_i, state.t_s,
                                           state.r_point, state.l_point);

    ServerResponse response;
    response.r_s = state.r_point;
    response.t_s = state.t_s;
    response.auth_s = response_authenticator(request.t_i, request.r_i, state.t_s,
                                             state.r_point, state.l_point, k_s, params);
    return {std::move(state), std::move(response)};
}

SessionKey patient_finish(PatientSessionState& state, const ServerResponse& response,
                          Clock& clock, const FreshnessPolicy& policy) {
    const CurveParams* params = state.r_i.params();
    Timestamp received_at = clock.now();
    if (!check_freshness(response.t_s, received_at, policy)) {
        throw StaleTimestamp("server response outside the freshness window");
    }

    G1Point l_point = state.r_i * response.r_s;
    Scalar expected = response_authenticator(state.t_i, state.r_point, response.t_s,
                                             response.r_s, l_point, state.k_i, params);
    Bytes expected_wire = expected.to_bytes_wide(kAuthScalarWireBytes);
    Bytes actual_wire = response.auth_s.to_bytes_wide(kAuthScalarWireBytes);
    if (!ct_equal(expected_wire, actual_wire)) {
        throw AuthMismatch("server authenticator verification failed");
    }

    state.l_point = l_point;
    SessionKey sk = session_key_digest(state.t_i, state.r_point, response.t_s,
                                       response.r_s, l_point);
    state.session_key = sk;
    return sk;
}

Bytes encode_auth_payload(std::span<const uint8_t> id, Timestamp t, const Scalar& r) {
    FieldWriter fields;
    fields.add(id);
    fields.add_u64(t.millis);
    fields.add(r.to_bytes());
    return fields.bytes();
}

AuthPayload decode_auth_payload(std::span<const uint8_t> data, const CurveParams* params) {
    FieldReader reader(data);
    AuthPayload payload;
    payload.id = reader.take();
    payload.t = Timestamp{reader.take_u64()};
    Bytes r_bytes = reader.take();
    if (!reader.done()) {
        throw DecodeError("trailing bytes in auth payload");
    }
    if (r_bytes.size() != params->scalar_bytes()) {
        throw DecodeError("wrong scalar width in auth payload");
    }
    BigUint r_value = BigUint::from_bytes_be(r_bytes);
    if (r_value >= params->q) {
        throw DecodeError("non-canonical scalar in auth payload");
    }
    payload.r = Scalar(std::move(r_value), params);
    return payload;
}

Bytes encode_login_request(const LoginRequest& request) {
    Bytes out{kWireTagLogin};
    Bytes point = request.r_i.serialize();
    out.insert(out.end(), point.begin(), point.end());
    append_be64(out, request.t_i.millis);
    append_be32(out, static_cast<uint32_t>(request.auth_i.body.size()));
    out.insert(out.end(), request.auth_i.body.begin(), request.auth_i.body.end());
    out.insert(out.end(), request.auth_i.tag.begin(), request.auth_i.tag.end());
    return out;
}

namespace {

/// Consumes one serialized point from the front of `data`.
G1Point read_point(std::span<const uint8_t>& data, const CurveParams* params) {
    if (data.empty()) {
        throw DecodeError("missing point");
    }
    size_t len = data[0] == kPointTagInfinity ? 1 : 1 + 2 * params->field_bytes();
    if (data.size() < len) {
        throw DecodeError("truncated point");
    }
    G1Point out = G1Point::deserialize(data.subspan(0, len), params);
    data = data.subspan(len);
    return out;
}

}  // namespace

LoginRequest decode_login_request(std::span<const uint8_t> data, const CurveParams* params) {
    if (data.empty() || data[0] != kWireTagLogin) {
        throw DecodeError("not a login request");
    }
    data = data.subspan(1);
    LoginRequest request;
    request.r_i = read_point(data, params);
    if (data.size() < 8 + 4) {
        throw DecodeError("truncated login request");
    }
    request.t_i = Timestamp{read_be64(data.subspan(0, 8))};
    uint32_t body_len = read_be32(data.subspan(8, 4));
    data = data.subspan(12);
    if (data.size() != static_cast<size_t>(body_len) + 32) {
        throw DecodeError("wrong ciphertext length in login request");
    }
    request.auth_i.body.assign(data.begin(), data.begin() + body_len);
    std::copy(data.begin() + body_len, data.end(), request.auth_i.tag.begin());
    return request;
}

Bytes encode_server_response(const ServerResponse& response) {
    Bytes out{kWireTagResponse};
    Bytes point = response.r_s.serialize();
    out.insert(out.end(), point.begin(), point.end());
    append_be64(out, response.t_s.millis);
    Bytes auth = response.auth_s.to_bytes_wide(kAuthScalarWireBytes);
    out.insert(out.end(), auth.begin(), auth.end());
    return out;
}

ServerResponse decode_server_response(std::span<const uint8_t> data,
                                      const CurveParams* params) {
    if (data.empty() || data[0] != kWireTagResponse) {
        throw DecodeError("not a server response");
    }
    data = data.subspan(1);
    ServerResponse response;
    response.r_s = read_point(data, params);
    if (data.size() != 8 + kAuthScalarWireBytes) {
        throw DecodeError("wrong server response length");
    }
    response.t_s = Timestamp{read_be64(data.subspan(0, 8))};
    BigUint auth = BigUint::from_bytes_be(data.subspan(8));
    if (auth >= params->q) {
        throw DecodeError("non-canonical authenticator scalar");
    }
    response.auth_s = Scalar(std::move(auth), params);
    return response;
}

void save_registry(const std::map<Bytes, uint64_t>& registry, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw IoError("cannot open registry file for writing: " + path);
    }
    for (const auto& [id, counter] : registry) {
        out << to_hex(id) << " " << counter << "\n";
    }
    if (!out) {
        throw IoError("failed writing registry file: " + path);
    }
}

std::map<Bytes, uint64_t> load_registry(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open registry file: " + path);
    }
    std::map<Bytes, uint64_t> registry;
    std::string id_hex;
    uint64_t counter;
    while (in >> id_hex >> counter) {
        registry[from_hex(id_hex)] = counter;
    }
    return registry;
}

}  // namespace tmis::protocol
