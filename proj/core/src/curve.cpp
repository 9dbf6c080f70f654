#include "tmis/curve.hpp"

#include "tmis/errors.hpp"
#include "tmis/sha256.hpp"

namespace tmis {

G1Point G1Point::infinity(const CurveParams* params) {
    G1Point out;
    out.params_ = params;
    out.infinity_ = true;
    return out;
}

G1Point G1Point::affine(FieldElement x, FieldElement y) {
    require_same_params(x.params(), y.params());
    G1Point out;
    out.params_ = x.params();
    out.infinity_ = false;
    out.x_ = std::move(x);
    out.y_ = std::move(y);
    return out;
}

bool G1Point::is_on_curve() const {
    if (infinity_) {
        return true;
    }
    FieldElement lhs = y_ * y_;
    FieldElement rhs = x_ * x_ * x_ + x_;
    return lhs == rhs;
}

G1Point G1Point::negated() const {
    if (infinity_) {
        return *this;
    }
    return affine(x_, -y_);
}

G1Point operator+(const G1Point& a, const G1Point& b) {
    if (a.infinity_) {
        return b;
    }
    if (b.infinity_) {
        return a;
    }
    require_same_params(a.params_, b.params_);

    FieldElement slope;
    if (a.x_ == b.x_) {
        if (a.y_ == -b.y_) {
            // Chord is vertical: covers P + (-P) and doubling a 2-torsion
            // point (y = 0).
            return G1Point::infinity(a.params_);
        }
        // Tangent at a: (3x^2 + 1) / (2y).
        FieldElement x_sq = a.x_ * a.x_;
        FieldElement numerator = x_sq + x_sq + x_sq + FieldElement::one(a.params_);
        slope = numerator * (a.y_ + a.y_).inv();
    } else {
        slope = (b.y_ - a.y_) * (b.x_ - a.x_).inv();
    }
    FieldElement x3 = slope * slope - a.x_ - b.x_;
    FieldElement y3 = slope * (a.x_ - x3) - a.y_;
    return G1Point::affine(x3, y3);
}

bool operator==(const G1Point& a, const G1Point& b) {
    if (a.infinity_ || b.infinity_) {
        return a.infinity_ == b.infinity_;
    }
    return a.x_ == b.x_ && a.y_ == b.y_;
}

G1Point G1Point::mul(const BigUint& k) const {
    G1Point acc = infinity(params_);
    for (size_t i = k.bit_length(); i-- > 0;) {
        acc = acc + acc;
        if (k.bit(i)) {
            acc = acc + *this;
        }
    }
    return acc;
}

Bytes G1Point::serialize() const {
    if (params_ == nullptr) {
        throw Error("NullParams", "serialize of a default-constructed point");
    }
    if (infinity_) {
        return Bytes{kPointTagInfinity};
    }
    Bytes out{kPointTagAffine};
    Bytes xb = x_.to_bytes();
    Bytes yb = y_.to_bytes();
    out.insert(out.end(), xb.begin(), xb.end());
    out.insert(out.end(), yb.begin(), yb.end());
    return out;
}

G1Point G1Point::deserialize(std::span<const uint8_t> bytes, const CurveParams* params) {
    if (bytes.empty()) {
        throw DecodeError("empty point encoding");
    }
    if (bytes[0] == kPointTagInfinity) {
        if (bytes.size() != 1) {
            throw DecodeError("infinity encoding must be a single byte");
        }
        return infinity(params);
    }
    if (bytes[0] != kPointTagAffine) {
        throw DecodeError("unknown point tag");
    }
    size_t w = params->field_bytes();
    if (bytes.size() != 1 + 2 * w) {
        throw DecodeError("wrong point encoding length");
    }
    BigUint xv = BigUint::from_bytes_be(bytes.subspan(1, w));
    BigUint yv = BigUint::from_bytes_be(bytes.subspan(1 + w, w));
    if (xv >= params->p || yv >= params->p) {
        throw DecodeError("non-canonical field residue in point encoding");
    }
    G1Point out = affine(FieldElement(std::move(xv), params), FieldElement(std::move(yv), params));
    if (!out.is_on_curve()) {
        throw DecodeError("point encoding is not on the curve");
    }
    return out;
}

bool Fp2Point::satisfies_curve() const {
    Fp2Element lhs = y.square();
    Fp2Element rhs = x.square() * x + x;
    return lhs == rhs;
}

Fp2Point distortion_map(const G1Point& p) {
    if (p.is_infinity()) {
        throw Error("InvalidPoint", "distortion map rejects the identity");
    }
    const CurveParams* params = p.params();
    Fp2Element mapped_x{-p.x(), FieldElement::zero(params)};
    Fp2Element mapped_y{FieldElement::zero(params), p.y()};
    return {std::move(mapped_x), std::move(mapped_y)};
}

G1Point map_to_point(std::span<const uint8_t> msg, const CurveParams* params) {
    for (unsigned ctr = 0; ctr < 256; ++ctr) {
        Sha256 h;
        h.update(std::string_view("MAP"));
        FieldWriter writer;
        writer.add(msg);
        h.update(writer.bytes());
        uint8_t ctr_byte = static_cast<uint8_t>(ctr);
        h.update(std::span<const uint8_t>(&ctr_byte, 1));
        Digest d = h.finish();

        FieldElement x(BigUint::from_bytes_be(d), params);
        FieldElement rhs = x * x * x + x;
        std::optional<FieldElement> root = rhs.sqrt();
        if (!root) {
            continue;
        }
        bool want_odd = (d[31] & 1) != 0;
        FieldElement y = (root->value().is_odd() == want_odd) ? *root : -*root;
        G1Point cleared = G1Point::affine(x, y).mul(params->cofactor);
        if (cleared.is_infinity()) {
            continue;
        }
        return cleared;
    }
    throw MapFailure("no curve point found in 256 counters; parameters are broken");
}

G1Point map_to_point(std::string_view msg, const CurveParams* params) {
    return map_to_point(
        std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(msg.data()), msg.size()),
        params);
}

G1Point CurveParams::generator() const {
    return G1Point::affine(FieldElement(gx, this), FieldElement(gy, this));
}

void CurveParams::validate() const {
    if (p < BigUint(3) || (p.low_u64() & 3) != 3) {
        throw ConfigError("field prime must be 3 mod 4");
    }
    if (!probable_prime(p)) {
        throw ConfigError("field modulus is not prime");
    }
    if (!probable_prime(q)) {
        throw ConfigError("subgroup order is not prime");
    }
    if (cofactor.is_zero() || cofactor * q != p + BigUint(1)) {
        throw ConfigError("cofactor * q must equal p + 1");
    }
    if ((cofactor % q).is_zero()) {
        throw ConfigError("q^2 divides the curve order");
    }
    if (gx >= p || gy >= p) {
        throw ConfigError("generator coordinates out of range");
    }
    G1Point g = generator();
    if (!g.is_on_curve()) {
        throw ConfigError("generator is not on the curve");
    }
    if (g.is_infinity() || !g.mul(q).is_infinity()) {
        throw ConfigError("generator does not have order q");
    }
}

}  // namespace tmis
