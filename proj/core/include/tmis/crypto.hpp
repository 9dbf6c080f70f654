#pragma once

#include <array>
#include <compare>

#include "tmis/field.hpp"
#include "tmis/pairing.hpp"
#include "tmis/sha256.hpp"

namespace tmis {

/// Logical milliseconds; no wall clock anywhere in the artifact.
struct Timestamp {
    uint64_t millis = 0;

    friend bool operator==(const Timestamp&, const Timestamp&) = default;
    friend std::strong_ordering operator<=>(const Timestamp&, const Timestamp&) = default;
};

struct FreshnessPolicy {
    uint64_t delta_max_millis = 1000;
};

struct SymmetricKey {
    std::array<uint8_t, 32> bytes{};

    friend bool operator==(const SymmetricKey&, const SymmetricKey&) = default;
};

/// Keystream-XORed body plus a 32-byte key-dependent tag over the body.
struct Ciphertext {
    Bytes body;
    std::array<uint8_t, 32> tag{};

    friend bool operator==(const Ciphertext&, const Ciphertext&) = default;
};

/// h : {0,1}* -> Z_q, the digest interpreted big-endian and reduced mod q.
Scalar hash_to_scalar(std::span<const uint8_t> data, const CurveParams* params);

/// H_B, the biometric digest: domain-separated as digest("HB" || input).
Digest biometric_hash(std::span<const uint8_t> biometric);

/// Bytewise XOR after left-padding both operands with zeros to 32 bytes.
/// Inputs longer than 32 bytes are rejected.
Bytes xor_mask(std::span<const uint8_t> a, std::span<const uint8_t> b);

/// Bridges a shared G2 element to symmetric key material:
/// digest("KDF" || serialize_gt(value)).
SymmetricKey kdf_from_gt(const GtElement& value);

Ciphertext sym_encrypt(const SymmetricKey& key, std::span<const uint8_t> plaintext);
/// Verifies the tag (constant-time compare) before returning the
/// plaintext; throws DecryptFailure on mismatch.
Bytes sym_decrypt(const SymmetricKey& key, const Ciphertext& ct);

/// True iff 0 <= received_at - sent <= delta_max; future-dated messages
/// are stale too.
bool check_freshness(Timestamp sent, Timestamp received_at, const FreshnessPolicy& policy);

bool ct_equal(std::span<const uint8_t> a, std::span<const uint8_t> b);

class Clock {
public:
    virtual ~Clock() = default;
    virtual Timestamp now() = 0;
};

/// Deterministic byte stream: block j = digest(seed || "DRBG" || be64(j)).
/// Forking derives an independent child stream from the static seed, so a
/// fork is reproducible no matter how much of the parent was consumed.
class Drbg {
public:
    explicit Drbg(Digest seed) : seed_(seed) {}

    static Drbg from_seed(uint64_t seed);
    Drbg fork(std::string_view tag, uint64_t index) const;

    Bytes next_bytes(size_t n);
    /// Uniform scalar in [1, q): 32 fresh bytes reduced mod (q - 1), plus 1.
    Scalar next_nonzero_scalar(const CurveParams* params);
    uint64_t next_u64();

private:
    Digest seed_;
    uint64_t counter_ = 0;
};

}  // namespace tmis
