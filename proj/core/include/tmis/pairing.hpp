#pragma once

#include "tmis/curve.hpp"

namespace tmis {

/// Element of G2, the order-q subgroup mu_q of F_p2^*. Values are only
/// produced by `pairing`, `gt_pow` and multiplication, so value^q = 1
/// holds throughout.
class GtElement {
public:
    GtElement() = default;
    GtElement(Fp2Element value, const CurveParams* params);

    static GtElement identity(const CurveParams* params);

    const Fp2Element& value() const { return value_; }
    const CurveParams* params() const { return params_; }
    bool is_identity() const { return value_.is_one(); }

    GtElement pow(const BigUint& k) const;
    friend GtElement operator*(const GtElement& a, const GtElement& b);
    friend bool operator==(const GtElement& a, const GtElement& b);

    /// Fixed-width big-endian a || b of the underlying F_p2 value.
    Bytes serialize() const;

private:
    Fp2Element value_;
    const CurveParams* params_ = nullptr;
};

/// Symmetric pairing e : G1 x G1 -> G2, realized as the reduced Tate
/// pairing of the first argument against the distortion image of the
/// second: e(P, Q) = f_{q,P}(phi(Q))^((p^2-1)/q). Returns the identity if
/// either input is the point at infinity; throws ParamsMismatch when the
/// inputs live on different parameter sets.
GtElement pairing(const G1Point& p1, const G1Point& p2);

GtElement gt_pow(const GtElement& g, const Scalar& k);

Bytes serialize_gt(const GtElement& g);

namespace detail {

/// Raw Miller loop value before final exponentiation; exposed so tests can
/// cross-check the Frobenius-based final exponentiation against a plain
/// (p^2-1)/q power.
Fp2Element miller_loop(const G1Point& p, const Fp2Point& q_image);

Fp2Element final_exponentiation(const Fp2Element& f, const CurveParams* params);

}  // namespace detail

}  // namespace tmis
