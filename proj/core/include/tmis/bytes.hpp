#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tmis {

using Bytes = std::vector<uint8_t>;

Bytes to_bytes(std::string_view s);
std::string to_hex(std::span<const uint8_t> data);
Bytes from_hex(std::string_view hex);  // throws DecodeError on odd length / bad digit

void append_be32(Bytes& out, uint32_t v);
void append_be64(Bytes& out, uint64_t v);
uint32_t read_be32(std::span<const uint8_t> in);  // in.size() must be >= 4
uint64_t read_be64(std::span<const uint8_t> in);

/// Builds a byte string of length-prefixed fields: each field is preceded
/// by its 4-byte big-endian length, so multi-field hash inputs and payload
/// encodings cannot be split ambiguously.
class FieldWriter {
public:
    FieldWriter& add(std::span<const uint8_t> field);
    FieldWriter& add(const Bytes& field) { return add(std::span<const uint8_t>(field)); }
    FieldWriter& add(std::string_view field);
    FieldWriter& add_u64(uint64_t v);  // field = 8-byte big-endian value

    const Bytes& bytes() const { return buf_; }

private:
    Bytes buf_;
};

/// Reads back FieldWriter output. Throws DecodeError on truncation.
class FieldReader {
public:
    explicit FieldReader(std::span<const uint8_t> data) : data_(data) {}

    Bytes take();
    uint64_t take_u64();
    bool done() const { return pos_ == data_.size(); }

private:
    std::span<const uint8_t> data_;
    size_t pos_ = 0;
};

}  // namespace tmis
