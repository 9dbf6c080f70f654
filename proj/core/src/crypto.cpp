#include "tmis/crypto.hpp"

#include "tmis/errors.hpp"

namespace tmis {

Scalar hash_to_scalar(std::span<const uint8_t> data, const CurveParams* params) {
    Digest d = Sha256::hash(data);
    return {BigUint::from_bytes_be(d), params};
}

Digest biometric_hash(std::span<const uint8_t> biometric) {
    Sha256 h;
    h.update(std::string_view("HB"));
    h.update(biometric);
    return h.finish();
}

Bytes xor_mask(std::span<const uint8_t> a, std::span<const uint8_t> b) {
    if (a.size() > 32 || b.size() > 32) {
        throw Error("BadLength", "xor_mask operands must be at most 32 bytes");
    }
    Bytes out(32, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        out[32 - a.size() + i] = a[i];
    }
    for (size_t i = 0; i < b.size(); ++i) {
        out[32 - b.size() + i] ^= b[i];
    }
    return out;
}

SymmetricKey kdf_from_gt(const GtElement& value) {
    Sha256 h;
    h.update(std::string_view("KDF"));
    h.update(value.serialize());
    SymmetricKey key;
    Digest d = h.finish();
    key.bytes = d;
    return key;
}

namespace {

void apply_keystream(const SymmetricKey& key, Bytes& data) {
    for (size_t block = 0; block * 32 < data.size(); ++block) {
        Sha256 h;
        h.update(std::span<const uint8_t>(key.bytes.data(), key.bytes.size()));
        h.update(std::string_view("ENC"));
        Bytes ctr;
        append_be64(ctr, block);
        h.update(ctr);
        Digest ks = h.finish();
        size_t offset = block * 32;
        size_t take = std::min<size_t>(32, data.size() - offset);
        for (size_t i = 0; i < take; ++i) {
            data[offset + i] ^= ks[i];
        }
    }
}

Digest body_tag(const SymmetricKey& key, std::span<const uint8_t> body) {
    Sha256 h;
    h.update(std::span<const uint8_t>(key.bytes.data(), key.bytes.size()));
    h.update(std::string_view("MAC"));
    h.update(body);
    return h.finish();
}

}  // namespace

Ciphertext sym_encrypt(const SymmetricKey& key, std::span<const uint8_t> plaintext) {
    Ciphertext ct;
    ct.body.assign(plaintext.begin(), plaintext.end());
    apply_keystream(key, ct.body);
    ct.tag = body_tag(key, ct.body);
    return ct;
}

Bytes sym_decrypt(const SymmetricKey& key, const Ciphertext& ct) {
    Digest expected = body_tag(key, ct.body);
    if (!ct_equal(expected, ct.tag)) {
        throw DecryptFailure("authentication tag mismatch");
    }
    Bytes plaintext = ct.body;
    apply_keystream(key, plaintext);
    return plaintext;
}

bool check_freshness(Timestamp sent, Timestamp received_at, const FreshnessPolicy& policy) {
    if (received_at.millis < sent.millis) {
        return false;
    }
    return received_at.millis - sent.millis <= policy.delta_max_millis;
}

bool ct_equal(std::span<const uint8_t> a, std::span<const uint8_t> b) {
    if (a.size() != b.size()) {
        return false;
    }
    uint8_t acc = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        acc |= a[i] ^ b[i];
    }
    return acc == 0;
}

Drbg Drbg::from_seed(uint64_t seed) {
    Sha256 h;
    h.update(std::string_view("SEED"));
    Bytes be;
    append_be64(be, seed);
    h.update(be);
    return Drbg(h.finish());
}

Drbg Drbg::fork(std::string_view tag, uint64_t index) const {
    Sha256 h;
    h.update(std::string_view("FORK"));
    h.update(std::span<const uint8_t>(seed_.data(), seed_.size()));
    FieldWriter fields;
    fields.add(tag);
    h.update(fields.bytes());
    Bytes be;
    append_be64(be, index);
    h.update(be);
    return Drbg(h.finish());
}

Bytes Drbg::next_bytes(size_t n) {
    Bytes out;
    out.reserve(n);
    while (out.size() < n) {
        Sha256 h;
        h.update(std::span<const uint8_t>(seed_.data(), seed_.size()));
        h.update(std::string_view("DRBG"));
        Bytes be;
        append_be64(be, counter_++);
        h.update(be);
        Digest block = h.finish();
        size_t take = std::min<size_t>(32, n - out.size());
        out.insert(out.end(), block.begin(), block.begin() + take);
    }
    return out;
}

Scalar Drbg::next_nonzero_scalar(const CurveParams* params) {
    Bytes raw = next_bytes(32);
    BigUint q_minus_1 = params->q - BigUint(1);
    BigUint v = BigUint::from_bytes_be(raw) % q_minus_1;
    return {v + BigUint(1), params};
}

uint64_t Drbg::next_u64() {
    Bytes raw = next_bytes(8);
    return read_be64(raw);
}

}  // namespace tmis
