#pragma once

#include <string>
#include <string_view>

#include "tmis/bigint.hpp"

namespace tmis {

class G1Point;

/// The public algebraic universe: E : y^2 = x^3 + x over F_p with
/// p = 3 (mod 4). The curve is supersingular with #E(F_p) = p + 1 and the
/// group is cyclic, so the order-q subgroup G1 is unique; G2 is the order-q
/// subgroup of F_p2^* reached through the reduced Tate pairing.
struct CurveParams {
    BigUint p;         // field prime, p = 3 (mod 4)
    BigUint q;         // prime subgroup order, q | p + 1
    BigUint cofactor;  // (p + 1) / q
    BigUint gx, gy;    // generator of the order-q subgroup
    std::string security_label;

    size_t field_bytes() const { return (p.bit_length() + 7) / 8; }
    size_t scalar_bytes() const { return (q.bit_length() + 7) / 8; }

    G1Point generator() const;

    /// Checks every structural invariant (p = 3 mod 4, q prime, q | p + 1,
    /// q^2 does not divide p + 1, generator on curve, of order q, not the
    /// identity). Throws ConfigError on the first violation.
    void validate() const;

    /// Text config round-trip: one `key = value` line per field, decimal
    /// integers.
    std::string to_text() const;
    static CurveParams from_text(std::string_view text);

    /// Tiny exhaustively-checkable parameter set: p = 43, q = 11.
    static const CurveParams& test_set();
    /// Desk-scale production set: 256-bit p, 160-bit q, found by sieving
    /// (see scripts/find_desk_params.py).
    static const CurveParams& desk_set();

    static const CurveParams& by_label(std::string_view label);  // ConfigError if unknown
};

/// Two params values are interchangeable when all numeric fields match;
/// pointer identity is only a fast path.
bool same_params(const CurveParams& a, const CurveParams& b);

}  // namespace tmis
