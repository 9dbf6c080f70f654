#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tmis/bytes.hpp"

namespace tmis {

/// Arbitrary-width unsigned integer on 64-bit limbs (little-endian order,
/// no trailing zero limbs). All arithmetic is variable-time.
class BigUint {
public:
    BigUint() = default;
    BigUint(uint64_t v);

    static BigUint from_dec(std::string_view s);    // throws DecodeError
    static BigUint from_hex(std::string_view s);    // throws DecodeError
    static BigUint from_bytes_be(std::span<const uint8_t> bytes);

    std::string to_dec() const;
    std::string to_hex() const;
    /// Fixed-width big-endian encoding; throws Error if the value needs
    /// more than `width` bytes.
    Bytes to_bytes_be(size_t width) const;

    bool is_zero() const { return limbs_.empty(); }
    bool is_odd() const { return !limbs_.empty() && (limbs_[0] & 1); }
    size_t bit_length() const;
    bool bit(size_t i) const;
    uint64_t low_u64() const { return limbs_.empty() ? 0 : limbs_[0]; }

    friend bool operator==(const BigUint& a, const BigUint& b) = default;
    friend std::strong_ordering operator<=>(const BigUint& a, const BigUint& b);

    friend BigUint operator+(const BigUint& a, const BigUint& b);
    friend BigUint operator-(const BigUint& a, const BigUint& b);  // throws Error on underflow
    friend BigUint operator*(const BigUint& a, const BigUint& b);
    BigUint operator<<(size_t bits) const;
    BigUint operator>>(size_t bits) const;

    /// Quotient and remainder; throws Error on division by zero.
    static std::pair<BigUint, BigUint> divmod(const BigUint& num, const BigUint& den);
    friend BigUint operator/(const BigUint& a, const BigUint& b) { return divmod(a, b).first; }
    friend BigUint operator%(const BigUint& a, const BigUint& b) { return divmod(a, b).second; }

    static BigUint mod_add(const BigUint& a, const BigUint& b, const BigUint& m);
    static BigUint mod_sub(const BigUint& a, const BigUint& b, const BigUint& m);
    static BigUint mod_mul(const BigUint& a, const BigUint& b, const BigUint& m);
    static BigUint mod_pow(const BigUint& base, const BigUint& exp, const BigUint& m);
    /// Inverse mod an odd modulus via binary extended gcd; throws Error if
    /// gcd(a, m) != 1 or m is even.
    static BigUint mod_inv(const BigUint& a, const BigUint& m);

private:
    std::vector<uint64_t> limbs_;

    void trim();
    static BigUint from_limbs(std::vector<uint64_t> limbs);
};

/// Miller-Rabin with a fixed base set; good enough to sanity-check the
/// pinned parameter primes, not a general-purpose primality service.
bool probable_prime(const BigUint& n, int rounds = 40);

}  // namespace tmis
