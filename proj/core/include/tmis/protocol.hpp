#pragma once

#include <map>
#include <optional>

#include "tmis/crypto.hpp"

namespace tmis::protocol {

struct PatientCredentials {
    Bytes id;         // ID_i
    Bytes password;   // PW_i
    Bytes biometric;  // B_i, modeled as an exact byte string
};

/// Sent over the secure registration channel.
struct RegistrationRequest {
    std::array<uint8_t, 32> c_i{};  // digest("PW" || PW_i) xor H_B(B_i)
    Bytes id;
};

/// Credential container issued at registration. w_i is stored but never
/// consumed during login; only v_i takes part in the local check.
struct SmartCard {
    Scalar v_i;                     // h(ID_i || C_i)
    std::array<uint8_t, 32> w_i{};  // C_i xor digest(ID_i || s)
    G1Point p_pub;
    const CurveParams* params = nullptr;
};

/// First handshake message (patient -> server), public channel.
struct LoginRequest {
    G1Point r_i;        // r_i * Q_i
    Timestamp t_i;
    Ciphertext auth_i;  // E_k(ID_i || T_i || r_i)
};

/// Second handshake message (server -> patient), public channel.
struct ServerResponse {
    G1Point r_s;   // r_s * Q_i
    Timestamp t_s;
    Scalar auth_s;  // h(T_i || R_i || T_s || R_s || L_s || K_s)
};

struct SessionKey {
    std::array<uint8_t, 32> bytes{};

    friend bool operator==(const SessionKey&, const SessionKey&) = default;
    std::string hex() const;
};

struct PatientSessionState {
    Scalar r_i;
    G1Point q_i;
    G1Point q_s;
    GtElement k_i;
    Timestamp t_i;
    G1Point r_point;  // R_i as sent
    std::optional<G1Point> l_point;          // set by patient_finish
    std::optional<SessionKey> session_key;   // set by patient_finish
};

struct ServerSessionState {
    Scalar r_s;
    G1Point q_i;
    G1Point q_s;
    GtElement k_s;
    G1Point r_point;  // R_s as sent
    G1Point l_point;  // r_s * R_i
    Timestamp t_s;
    SessionKey session_key;
};

/// Long-lived server state. Registration mutates the registry and must be
/// serialized by the caller; login handling only reads (s, P_pub, policy)
/// and is safe to run concurrently.
struct ServerState {
    const CurveParams* params = nullptr;
    FreshnessPolicy policy;
    Bytes server_id;
    Scalar master_key;  // s
    G1Point p_pub;      // s * P
    std::map<Bytes, uint64_t> registry;  // ID_i -> registration counter N
};

ServerState server_keygen(const CurveParams* params, Bytes server_id, Drbg& rng,
                          FreshnessPolicy policy = {});

RegistrationRequest patient_make_registration(const PatientCredentials& creds);

SmartCard register_patient(ServerState& server, const RegistrationRequest& request);

bool card_local_verify(const SmartCard& card, const PatientCredentials& creds);

std::pair<PatientSessionState, LoginRequest> patient_login_start(
    const SmartCard& card, const PatientCredentials& creds,
    std::span<const uint8_t> server_id, Clock& clock, Drbg& rng);

std::pair<ServerSessionState, ServerResponse> server_handle_login(
    const ServerState& server, const LoginRequest& request, Clock& clock, Drbg& rng);

/// The freshness window is a system parameter shared by both roles, so the
/// patient side receives it explicitly.
SessionKey patient_finish(PatientSessionState& state, const ServerResponse& response,
                          Clock& clock, const FreshnessPolicy& policy = {});

/// SK = digest of the length-prefixed concatenation
/// (T_i, R_i, T_s, R_s, L); shared by both roles and by the attacks.
SessionKey session_key_digest(Timestamp t_i, const G1Point& r_i, Timestamp t_s,
                              const G1Point& r_s, const G1Point& l_point);

/// digest(ID_i || s) expanded to a full 32-byte mask for W_i.
std::array<uint8_t, 32> registration_mask(std::span<const uint8_t> id, const Scalar& master_key);

std::array<uint8_t, 32> password_digest(std::span<const uint8_t> password);

/// Auth_i plaintext: length-prefixed (ID_i, T_i, r_i).
Bytes encode_auth_payload(std::span<const uint8_t> id, Timestamp t, const Scalar& r);
struct AuthPayload {
    Bytes id;
    Timestamp t;
    Scalar r;
};
AuthPayload decode_auth_payload(std::span<const uint8_t> data, const CurveParams* params);

// Wire formats. LoginRequest: tag 0x01 || point || 8-byte BE timestamp ||
// 4-byte BE body length || body || 32-byte tag. ServerResponse: tag 0x02 ||
// point || 8-byte BE timestamp || 32-byte wide scalar.
inline constexpr uint8_t kWireTagLogin = 0x01;
inline constexpr uint8_t kWireTagResponse = 0x02;
inline constexpr size_t kAuthScalarWireBytes = 32;

Bytes encode_login_request(const LoginRequest& request);
LoginRequest decode_login_request(std::span<const uint8_t> data, const CurveParams* params);
Bytes encode_server_response(const ServerResponse& response);
ServerResponse decode_server_response(std::span<const uint8_t> data, const CurveParams* params);

/// Registry persistence: one "hex(ID) N" line per entry, sorted by key.
void save_registry(const std::map<Bytes, uint64_t>& registry, const std::string& path);
std::map<Bytes, uint64_t> load_registry(const std::string& path);

}  // namespace tmis::protocol
