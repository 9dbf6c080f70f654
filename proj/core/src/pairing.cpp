#include "tmis/pairing.hpp"

#include "tmis/errors.hpp"

namespace tmis {

GtElement::GtElement(Fp2Element value, const CurveParams* params)
    : value_(std::move(value)), params_(params) {}

GtElement GtElement::identity(const CurveParams* params) {
    return {Fp2Element::one(params), params};
}

GtElement GtElement::pow(const BigUint& k) const {
    return {value_.pow(k), params_};
}

GtElement operator*(const GtElement& a, const GtElement& b) {
    require_same_params(a.params_, b.params_);
    return {a.value_ * b.value_, a.params_};
}

bool operator==(const GtElement& a, const GtElement& b) {
    return a.value_ == b.value_;
}

Bytes GtElement::serialize() const {
    if (params_ == nullptr) {
        throw Error("NullParams", "serialize of a default-constructed Gt element");
    }
    Bytes out = value_.a.to_bytes();
    Bytes bb = value_.b.to_bytes();
    out.insert(out.end(), bb.begin(), bb.end());
    return out;
}

Bytes serialize_gt(const GtElement& g) {
    return g.serialize();
}

GtElement gt_pow(const GtElement& g, const Scalar& k) {
    return g.pow(k.value());
}

namespace detail {

namespace {

/// Value of the line through `a` and `b` (tangent when a == b) evaluated
/// at the distortion image (X, Y) with X in F_p and Y purely imaginary.
/// Vertical lines evaluate into F_p^*, which the final exponentiation
/// kills, so they are returned as 1.
Fp2Element line_at(const G1Point& a, const G1Point& b, const Fp2Point& at,
                   const CurveParams* params) {
    if (a.is_infinity() || b.is_infinity()) {
        return Fp2Element::one(params);
    }
    FieldElement slope;
    if (a.x() == b.x()) {
        if (a.y() == -b.y()) {
            return Fp2Element::one(params);  // vertical
        }
        FieldElement x_sq = a.x() * a.x();
        FieldElement numerator = x_sq + x_sq + x_sq + FieldElement::one(params);
        slope = numerator * (a.y() + a.y()).inv();
    } else {
        slope = (b.y() - a.y()) * (b.x() - a.x()).inv();
    }
    // l(X, Y) = (Y - y_a) - slope * (X - x_a) with X = (-x_q, 0) and
    // Y = (0, y_q): real part slope * (x_q + x_a) - y_a, imaginary part y_q.
    FieldElement real = slope * (-at.x.a + a.x()) - a.y();
    return {std::move(real), at.y.b};
}

}  // namespace

Fp2Element miller_loop(const G1Point& p, const Fp2Point& q_image) {
    const CurveParams* params = p.params();
    Fp2Element f = Fp2Element::one(params);
    G1Point t = p;
    const BigUint& order = params->q;
    for (size_t i = order.bit_length() - 1; i-- > 0;) {
        f = f.square() * line_at(t, t, q_image, params);
        t = t + t;
        if (order.bit(i)) {
            f = f * line_at(t, p, q_image, params);
            t = t + p;
        }
    }
    return f;
}

Fp2Element final_exponentiation(const Fp2Element& f, const CurveParams* params) {
    if (f.is_zero()) {
        throw Error("DegeneratePairing", "Miller value vanished");
    }
    // (p^2 - 1)/q = (p - 1) * cofactor. The p-power Frobenius on F_p2 is
    // conjugation, so f^(p-1) = conj(f) / f; the result is unitary and the
    // remaining exponent is just the cofactor.
    Fp2Element unitary = f.conj() * f.inv();
    return unitary.pow(params->cofactor);
}

}  // namespace detail

GtElement pairing(const G1Point& p1, const G1Point& p2) {
    if (p1.params() == nullptr || p2.params() == nullptr) {
        throw Error("NullParams", "pairing of default-constructed points");
    }
    if (!same_params(*p1.params(), *p2.params())) {
        throw ParamsMismatch("pairing inputs belong to different parameter sets");
    }
    const CurveParams* params = p1.params();
    if (p1.is_infinity() || p2.is_infinity()) {
        return GtElement::identity(params);
    }
    Fp2Point image = distortion_map(p2);
    Fp2Element f = detail::miller_loop(p1, image);
    return {detail::final_exponentiation(f, params), params};
}

}  // namespace tmis
