#pragma once

#include <optional>

#include "tmis/bigint.hpp"
#include "tmis/params.hpp"

namespace tmis {

/// Element of F_p, always stored in canonical reduced form. Carries a
/// pointer to its parameter set; mixing parameter sets in one operation
/// throws ParamsMismatch.
class FieldElement {
public:
    FieldElement() = default;  // null element; only containers should see this
    FieldElement(BigUint v, const CurveParams* params);

    static FieldElement zero(const CurveParams* params) { return {BigUint(), params}; }
    static FieldElement one(const CurveParams* params) { return {BigUint(1), params}; }

    const BigUint& value() const { return value_; }
    const CurveParams* params() const { return params_; }
    bool is_zero() const { return value_.is_zero(); }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    FieldElement operator-() const;
    friend bool operator==(const FieldElement& a, const FieldElement& b);

    FieldElement inv() const;  // throws Error on zero
    FieldElement pow(const BigUint& e) const;
    /// Square root via the p = 3 (mod 4) exponentiation; nullopt when the
    /// value is a non-residue.
    std::optional<FieldElement> sqrt() const;

    Bytes to_bytes() const;  // fixed field width, big-endian

private:
    BigUint value_;
    const CurveParams* params_ = nullptr;
};

void require_same_params(const CurveParams* a, const CurveParams* b);

/// Element of F_p2 = F_p[i] / (i^2 + 1), written a + b*i. Well-defined
/// because -1 is a non-residue for p = 3 (mod 4).
struct Fp2Element {
    FieldElement a;
    FieldElement b;

    static Fp2Element one(const CurveParams* params);
    static Fp2Element from_base(FieldElement real);

    bool is_one() const;
    bool is_zero() const { return a.is_zero() && b.is_zero(); }

    friend Fp2Element operator+(const Fp2Element& x, const Fp2Element& y);
    friend Fp2Element operator-(const Fp2Element& x, const Fp2Element& y);
    friend Fp2Element operator*(const Fp2Element& x, const Fp2Element& y);
    friend bool operator==(const Fp2Element& x, const Fp2Element& y);

    Fp2Element square() const;
    /// Conjugate a - b*i; this is also the p-power Frobenius since
    /// i^p = -i for p = 3 (mod 4).
    Fp2Element conj() const;
    Fp2Element inv() const;  // throws Error on zero
    Fp2Element pow(const BigUint& e) const;
};

/// Integer mod the subgroup order q, canonical reduced form.
class Scalar {
public:
    Scalar() = default;
    Scalar(BigUint v, const CurveParams* params);

    static Scalar zero(const CurveParams* params) { return {BigUint(), params}; }
    static Scalar one(const CurveParams* params) { return {BigUint(1), params}; }

    const BigUint& value() const { return value_; }
    const CurveParams* params() const { return params_; }
    bool is_zero() const { return value_.is_zero(); }

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend bool operator==(const Scalar& a, const Scalar& b);

    Bytes to_bytes() const;                 // fixed scalar width, big-endian
    Bytes to_bytes_wide(size_t width) const;  // left-padded wire form

private:
    BigUint value_;
    const CurveParams* params_ = nullptr;
};

}  // namespace tmis
