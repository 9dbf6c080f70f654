#include "tmis/field.hpp"

#include "tmis/errors.hpp"

namespace tmis {

void require_same_params(const CurveParams* a, const CurveParams* b) {
    if (a == nullptr || b == nullptr) {
        throw Error("NullParams", "operation on a default-constructed element");
    }
    if (!same_params(*a, *b)) {
        throw ParamsMismatch("elements belong to different parameter sets");
    }
}

FieldElement::FieldElement(BigUint v, const CurveParams* params) : params_(params) {
    if (params == nullptr) {
        throw Error("NullParams", "FieldElement requires a parameter set");
    }
    value_ = v < params->p ? std::move(v) : v % params->p;
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    require_same_params(a.params_, b.params_);
    return {BigUint::mod_add(a.value_, b.value_, a.params_->p), a.params_};
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    require_same_params(a.params_, b.params_);
    return {BigUint::mod_sub(a.value_, b.value_, a.params_->p), a.params_};
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    require_same_params(a.params_, b.params_);
    return {BigUint::mod_mul(a.value_, b.value_, a.params_->p), a.params_};
}

FieldElement FieldElement::operator-() const {
    if (params_ == nullptr) {
        throw Error("NullParams", "negation of a default-constructed element");
    }
    return {BigUint::mod_sub(BigUint(), value_, params_->p), params_};
}

bool operator==(const FieldElement& a, const FieldElement& b) {
    if (a.params_ == nullptr || b.params_ == nullptr) {
        return a.params_ == b.params_ && a.value_ == b.value_;
    }
    return same_params(*a.params_, *b.params_) && a.value_ == b.value_;
}

FieldElement FieldElement::inv() const {
    if (is_zero()) {
        throw Error("NotInvertible", "field inverse of zero");
    }
    return {BigUint::mod_inv(value_, params_->p), params_};
}

FieldElement FieldElement::pow(const BigUint& e) const {
    return {BigUint::mod_pow(value_, e, params_->p), params_};
}

std::optional<FieldElement> FieldElement::sqrt() const {
    // p = 3 (mod 4): candidate root is v^((p+1)/4); it is genuine iff its
    // square gives back v.
    BigUint exp = (params_->p + BigUint(1)) >> 2;
    FieldElement root = pow(exp);
    if (root * root == *this) {
        return root;
    }
    return std::nullopt;
}

Bytes FieldElement::to_bytes() const {
    return value_.to_bytes_be(params_->field_bytes());
}

Fp2Element Fp2Element::one(const CurveParams* params) {
    return {FieldElement::one(params), FieldElement::zero(params)};
}

Fp2Element Fp2Element::from_base(FieldElement real) {
    const CurveParams* params = real.params();
    return {std::move(real), FieldElement::zero(params)};
}

bool Fp2Element::is_one() const {
    return !a.is_zero() && a.value() == BigUint(1) && b.is_zero();
}

Fp2Element operator+(const Fp2Element& x, const Fp2Element& y) {
    return {x.a + y.a, x.b + y.b};
}

Fp2Element operator-(const Fp2Element& x, const Fp2Element& y) {
    return {x.a - y.a, x.b - y.b};
}

Fp2Element operator*(const Fp2Element& x, const Fp2Element& y) {
    // (a + bi)(c + di) = (ac - bd) + (ad + bc)i
    FieldElement ac = x.a * y.a;
    FieldElement bd = x.b * y.b;
    FieldElement ad = x.a * y.b;
    FieldElement bc = x.b * y.a;
    return {ac - bd, ad + bc};
}

bool operator==(const Fp2Element& x, const Fp2Element& y) {
    return x.a == y.a && x.b == y.b;
}

Fp2Element Fp2Element::square() const {
    // (a + bi)^2 = (a+b)(a-b) + 2ab i
    FieldElement two_ab = a * b;
    return {(a + b) * (a - b), two_ab + two_ab};
}

Fp2Element Fp2Element::conj() const {
    return {a, -b};
}

Fp2Element Fp2Element::inv() const {
    // 1 / (a + bi) = (a - bi) / (a^2 + b^2)
    FieldElement norm = a * a + b * b;
    FieldElement scale = norm.inv();
    return {a * scale, (-b) * scale};
}

Fp2Element Fp2Element::pow(const BigUint& e) const {
    Fp2Element result = Fp2Element::one(a.params());
    for (size_t i = e.bit_length(); i-- > 0;) {
        result = result.square();
        if (e.bit(i)) {
            result = result * *this;
        }
    }
    return result;
}

Scalar::Scalar(BigUint v, const CurveParams* params) : params_(params) {
    if (params == nullptr) {
        throw Error("NullParams", "Scalar requires a parameter set");
    }
    value_ = v < params->q ? std::move(v) : v % params->q;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    require_same_params(a.params_, b.params_);
    return {BigUint::mod_add(a.value_, b.value_, a.params_->q), a.params_};
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    require_same_params(a.params_, b.params_);
    return {BigUint::mod_mul(a.value_, b.value_, a.params_->q), a.params_};
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.params_ == nullptr || b.params_ == nullptr) {
        return a.params_ == b.params_ && a.value_ == b.value_;
    }
    return same_params(*a.params_, *b.params_) && a.value_ == b.value_;
}

Bytes Scalar::to_bytes() const {
    return value_.to_bytes_be(params_->scalar_bytes());
}

Bytes Scalar::to_bytes_wide(size_t width) const {
    return value_.to_bytes_be(width);
}

}  // namespace tmis
