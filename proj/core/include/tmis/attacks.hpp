#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tmis/protocol.hpp"

namespace tmis::attacks {

/// Exactly the eavesdropper's view of one handshake: the six fields that
/// cross the public channel, nothing else.
struct Transcript {
    G1Point r_i;
    Timestamp t_i;
    Ciphertext auth_i;
    G1Point r_s;
    Timestamp t_s;
    Scalar auth_s;
    std::string params_label;
};

/// The session-specific secret assumed leaked in the temporary-information
/// attack.
struct LeakedEphemeral {
    Scalar r_s;
};

/// The server long-term key pair assumed leaked in the forward-secrecy
/// attack.
struct LeakedLongTerm {
    Scalar s;
    G1Point p_pub;
};

struct AttackOutcome {
    protocol::SessionKey recovered_sk;
    /// PFS only: the identity and patient nonce that fall out of the
    /// decryption.
    std::optional<std::pair<Bytes, Scalar>> recovered_extras;
    /// Ordered (step label, value) derivation log; never empty.
    std::vector<std::pair<std::string, std::string>> trace;
};

/// Known-session-specific temporary information attack: from the public
/// transcript plus the leaked server nonce alone, compute L = r_s * R_i and
/// rebuild the session key. Reads no other secret.
AttackOutcome kssti_attack(const Transcript& transcript, const LeakedEphemeral& leak,
                           const CurveParams* params);

/// Forward-secrecy break: with the server's long-term key, recompute
/// K = e(s * R_i, P), decrypt Auth_i to recover (ID_i, T_i, r_i), form
/// L = r_i * R_s and rebuild the session key. Throws DecryptFailure when
/// the supplied key is not the server's.
AttackOutcome pfs_attack(const Transcript& transcript, const LeakedLongTerm& leak,
                         const CurveParams* params);

Transcript transcript_from_wire(std::span<const uint8_t> login_bytes,
                                std::span<const uint8_t> response_bytes,
                                const CurveParams* params, std::string params_label);

}  // namespace tmis::attacks
