#pragma once

#include "tmis/field.hpp"

namespace tmis {

/// Point on E : y^2 = x^3 + x over F_p, affine or the point at infinity.
/// Construction is unchecked; `is_on_curve()` is the validity query and
/// `deserialize` rejects off-curve encodings.
class G1Point {
public:
    G1Point() = default;

    static G1Point infinity(const CurveParams* params);
    static G1Point affine(FieldElement x, FieldElement y);

    bool is_infinity() const { return infinity_; }
    const FieldElement& x() const { return x_; }
    const FieldElement& y() const { return y_; }
    const CurveParams* params() const { return params_; }

    bool is_on_curve() const;

    G1Point negated() const;
    friend G1Point operator+(const G1Point& a, const G1Point& b);
    friend G1Point operator-(const G1Point& a) { return a.negated(); }
    friend bool operator==(const G1Point& a, const G1Point& b);

    /// Double-and-add scalar multiple; accepts any non-negative multiplier
    /// (cofactor clearing needs values outside [0, q)).
    G1Point mul(const BigUint& k) const;
    friend G1Point operator*(const Scalar& k, const G1Point& p) {
        require_same_params(k.params(), p.params());
        return p.mul(k.value());
    }

    /// One tag byte then fixed-width big-endian x || y; the point at
    /// infinity is the single tag byte 0x00.
    Bytes serialize() const;
    static G1Point deserialize(std::span<const uint8_t> bytes, const CurveParams* params);

private:
    const CurveParams* params_ = nullptr;
    bool infinity_ = true;
    FieldElement x_, y_;
};

inline constexpr uint8_t kPointTagInfinity = 0x00;
inline constexpr uint8_t kPointTagAffine = 0x04;

/// Point on E over F_p2; only produced by the distortion map and consumed
/// by the pairing.
struct Fp2Point {
    Fp2Element x;
    Fp2Element y;

    bool satisfies_curve() const;
};

/// phi(x, y) = (-x, i*y), an endomorphism over F_p2 carrying a point to
/// one linearly independent from it. Throws Error for the identity.
Fp2Point distortion_map(const G1Point& p);

/// Try-and-increment hash onto the order-q subgroup: walk a counter byte,
/// derive a candidate x from the digest, take the p = 3 (mod 4) square
/// root when one exists, pick the root parity from one digest bit, then
/// clear the cofactor. Deterministic; throws MapFailure after 256 counters.
G1Point map_to_point(std::span<const uint8_t> msg, const CurveParams* params);
G1Point map_to_point(std::string_view msg, const CurveParams* params);

}  // namespace tmis
