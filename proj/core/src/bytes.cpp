#include "tmis/bytes.hpp"

#include "tmis/errors.hpp"

namespace tmis {

Bytes to_bytes(std::string_view s) {
    return Bytes(s.begin(), s.end());
}

std::string to_hex(std::span<const uint8_t> data) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(data.size() * 2);
    for (uint8_t b : data) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0x0f]);
    }
    return out;
}

namespace {

int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

Bytes from_hex(std::string_view hex) {
    if (hex.size() % 2 != 0) {
        throw DecodeError("hex string has odd length");
    }
    Bytes out;
    out.reserve(hex.size() / 2);
    for (size_t i = 0; i < hex.size(); i += 2) {
        int hi = hex_nibble(hex[i]);
        int lo = hex_nibble(hex[i + 1]);
        if (hi < 0 || lo < 0) {
            throw DecodeError("invalid hex digit");
        }
        out.push_back(static_cast<uint8_t>((hi << 4) | lo));
    }
    return out;
}

void append_be32(Bytes& out, uint32_t v) {
    for (int shift = 24; shift >= 0; shift -= 8) {
        out.push_back(static_cast<uint8_t>(v >> shift));
    }
}

void append_be64(Bytes& out, uint64_t v) {
    for (int shift = 56; shift >= 0; shift -= 8) {
        out.push_back(static_cast<uint8_t>(v >> shift));
    }
}

uint32_t read_be32(std::span<const uint8_t> in) {
    uint32_t v = 0;
    for (size_t i = 0; i < 4; ++i) {
        v = (v << 8) | in[i];
    }
    return v;
}

uint64_t read_be64(std::span<const uint8_t> in) {
    uint64_t v = 0;
    for (size_t i = 0; i < 8; ++i) {
        v = (v << 8) | in[i];
    }
    return v;
}

FieldWriter& FieldWriter::add(std::span<const uint8_t> field) {
    append_be32(buf_, static_cast<uint32_t>(field.size()));
    buf_.insert(buf_.end(), field.begin(), field.end());
    return *this;
}

FieldWriter& FieldWriter::add(std::string_view field) {
    append_be32(buf_, static_cast<uint32_t>(field.size()));
    buf_.insert(buf_.end(), field.begin(), field.end());
    return *this;
}

FieldWriter& FieldWriter::add_u64(uint64_t v) {
    Bytes tmp;
    append_be64(tmp, v);
    return add(tmp);
}

Bytes FieldReader::take() {
    if (data_.size() - pos_ < 4) {
        throw DecodeError("truncated field length");
    }
    uint32_t len = read_be32(data_.subspan(pos_, 4));
    pos_ += 4;
    if (data_.size() - pos_ < len) {
        throw DecodeError("truncated field body");
    }
    Bytes out(data_.begin() + pos_, data_.begin() + pos_ + len);
    pos_ += len;
    return out;
}

uint64_t FieldReader::take_u64() {
    Bytes field = take();
    if (field.size() != 8) {
        throw DecodeError("expected 8-byte field");
    }
    return read_be64(field);
}

}  // namespace tmis
