#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "tmis/bytes.hpp"

namespace tmis {

using Digest = std::array<uint8_t, 32>;

/// FIPS 180-4 SHA-256. Incremental interface; `hash` is the one-shot form.
class Sha256 {
public:
    Sha256();

    void update(std::span<const uint8_t> data);
    void update(std::string_view data);
    Digest finish();

    static Digest hash(std::span<const uint8_t> data);
    static Digest hash(std::string_view data);

private:
    void compress(const uint8_t* block);

    std::array<uint32_t, 8> state_;
    std::array<uint8_t, 64> buf_;
    size_t buf_len_ = 0;
    uint64_t total_bytes_ = 0;
};

Bytes digest_to_bytes(const Digest& d);

}  // namespace tmis
