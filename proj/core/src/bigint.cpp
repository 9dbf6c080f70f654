#include "tmis/bigint.hpp"

#include <algorithm>

#include "tmis/errors.hpp"

namespace tmis {

using u128 = unsigned __int128;

void BigUint::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) {
        limbs_.pop_back();
    }
}

BigUint BigUint::from_limbs(std::vector<uint64_t> limbs) {
    BigUint out;
    out.limbs_ = std::move(limbs);
    out.trim();
    return out;
}

BigUint::BigUint(uint64_t v) {
    if (v != 0) {
        limbs_.push_back(v);
    }
}

BigUint BigUint::from_dec(std::string_view s) {
    if (s.empty()) {
        throw DecodeError("empty decimal string");
    }
    BigUint out;
    for (char c : s) {
        if (c < '0' || c > '9') {
            throw DecodeError("invalid decimal digit");
        }
        out = out * BigUint(10) + BigUint(static_cast<uint64_t>(c - '0'));
    }
    return out;
}

BigUint BigUint::from_hex(std::string_view s) {
    if (s.empty()) {
        throw DecodeError("empty hex string");
    }
    BigUint out;
    for (char c : s) {
        uint64_t digit;
        if (c >= '0' && c <= '9') {
            digit = static_cast<uint64_t>(c - '0');
        } else if (c >= 'a' && c <= 'f') {
            digit = static_cast<uint64_t>(c - 'a' + 10);
        } else if (c >= 'A' && c <= 'F') {
            digit = static_cast<uint64_t>(c - 'A' + 10);
        } else {
            throw DecodeError("invalid hex digit");
        }
        out = (out << 4) + BigUint(digit);
    }
    return out;
}

BigUint BigUint::from_bytes_be(std::span<const uint8_t> bytes) {
    BigUint out;
    size_t n = bytes.size();
    out.limbs_.assign((n + 7) / 8, 0);
    for (size_t i = 0; i < n; ++i) {
        size_t bit = 8 * (n - 1 - i);
        out.limbs_[bit / 64] |= static_cast<uint64_t>(bytes[i]) << (bit % 64);
    }
    out.trim();
    return out;
}

std::string BigUint::to_dec() const {
    if (is_zero()) {
        return "0";
    }
    std::string out;
    BigUint n = *this;
    const BigUint ten(10);
    while (!n.is_zero()) {
        auto [q, r] = divmod(n, ten);
        out.push_back(static_cast<char>('0' + r.low_u64()));
        n = std::move(q);
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::string BigUint::to_hex() const {
    if (is_zero()) {
        return "0";
    }
    static const char* digits = "0123456789abcdef";
    std::string out;
    for (size_t i = limbs_.size(); i-- > 0;) {
        for (int shift = 60; shift >= 0; shift -= 4) {
            out.push_back(digits[(limbs_[i] >> shift) & 0xf]);
        }
    }
    size_t first = out.find_first_not_of('0');
    return out.substr(first);
}

Bytes BigUint::to_bytes_be(size_t width) const {
    if (bit_length() > width * 8) {
        throw Error("Overflow", "value does not fit requested byte width");
    }
    Bytes out(width, 0);
    for (size_t i = 0; i < width; ++i) {
        size_t bit = 8 * (width - 1 - i);
        size_t limb = bit / 64;
        if (limb < limbs_.size()) {
            out[i] = static_cast<uint8_t>(limbs_[limb] >> (bit % 64));
        }
    }
    return out;
}

size_t BigUint::bit_length() const {
    if (limbs_.empty()) {
        return 0;
    }
    uint64_t top = limbs_.back();
    size_t bits = (limbs_.size() - 1) * 64;
    while (top != 0) {
        ++bits;
        top >>= 1;
    }
    return bits;
}

bool BigUint::bit(size_t i) const {
    size_t limb = i / 64;
    if (limb >= limbs_.size()) {
        return false;
    }
    return (limbs_[limb] >> (i % 64)) & 1;
}

std::strong_ordering operator<=>(const BigUint& a, const BigUint& b) {
    if (a.limbs_.size() != b.limbs_.size()) {
        return a.limbs_.size() <=> b.limbs_.size();
    }
    for (size_t i = a.limbs_.size(); i-- > 0;) {
        if (a.limbs_[i] != b.limbs_[i]) {
            return a.limbs_[i] <=> b.limbs_[i];
        }
    }
    return std::strong_ordering::equal;
}

BigUint operator+(const BigUint& a, const BigUint& b) {
    const auto& x = a.limbs_.size() >= b.limbs_.size() ? a.limbs_ : b.limbs_;
    const auto& y = a.limbs_.size() >= b.limbs_.size() ? b.limbs_ : a.limbs_;
    std::vector<uint64_t> out(x.size() + 1, 0);
    uint64_t carry = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        u128 sum = u128(x[i]) + (i < y.size() ? y[i] : 0) + carry;
        out[i] = static_cast<uint64_t>(sum);
        carry = static_cast<uint64_t>(sum >> 64);
    }
    out[x.size()] = carry;
    return BigUint::from_limbs(std::move(out));
}

BigUint operator-(const BigUint& a, const BigUint& b) {
    if (a < b) {
        throw Error("Underflow", "BigUint subtraction underflow");
    }
    std::vector<uint64_t> out(a.limbs_.size(), 0);
    uint64_t borrow = 0;
    for (size_t i = 0; i < a.limbs_.size(); ++i) {
        uint64_t rhs = i < b.limbs_.size() ? b.limbs_[i] : 0;
        u128 diff = u128(a.limbs_[i]) - rhs - borrow;
        out[i] = static_cast<uint64_t>(diff);
        borrow = static_cast<uint64_t>((diff >> 64) & 1);
    }
    return BigUint::from_limbs(std::move(out));
}

BigUint operator*(const BigUint& a, const BigUint& b) {
    if (a.is_zero() || b.is_zero()) {
        return BigUint();
    }
    std::vector<uint64_t> out(a.limbs_.size() + b.limbs_.size(), 0);
    for (size_t i = 0; i < a.limbs_.size(); ++i) {
        uint64_t carry = 0;
        for (size_t j = 0; j < b.limbs_.size(); ++j) {
            u128 cur = u128(a.limbs_[i]) * b.limbs_[j] + out[i + j] + carry;
            out[i + j] = static_cast<uint64_t>(cur);
            carry = static_cast<uint64_t>(cur >> 64);
        }
        out[i + b.limbs_.size()] = carry;
    }
    return BigUint::from_limbs(std::move(out));
}

BigUint BigUint::operator<<(size_t bits) const {
    if (is_zero() || bits == 0) {
        return bits == 0 ? *this : BigUint();
    }
    size_t limb_shift = bits / 64;
    size_t bit_shift = bits % 64;
    std::vector<uint64_t> out(limbs_.size() + limb_shift + 1, 0);
    for (size_t i = 0; i < limbs_.size(); ++i) {
        out[i + limb_shift] |= limbs_[i] << bit_shift;
        if (bit_shift != 0) {
            out[i + limb_shift + 1] |= limbs_[i] >> (64 - bit_shift);
        }
    }
    return from_limbs(std::move(out));
}

BigUint BigUint::operator>>(size_t bits) const {
    size_t limb_shift = bits / 64;
    size_t bit_shift = bits % 64;
    if (limb_shift >= limbs_.size()) {
        return BigUint();
    }
    std::vector<uint64_t> out(limbs_.size() - limb_shift, 0);
    for (size_t i = 0; i < out.size(); ++i) {
        out[i] = limbs_[i + limb_shift] >> bit_shift;
        if (bit_shift != 0 && i + limb_shift + 1 < limbs_.size()) {
            out[i] |= limbs_[i + limb_shift + 1] << (64 - bit_shift);
        }
    }
    return from_limbs(std::move(out));
}

std::pair<BigUint, BigUint> BigUint::divmod(const BigUint& num, const BigUint& den) {
    if (den.is_zero()) {
        throw Error("DivisionByZero", "BigUint division by zero");
    }
    if (num < den) {
        return {BigUint(), num};
    }
    // Single-limb divisor fast path.
    if (den.limbs_.size() == 1) {
        uint64_t d = den.limbs_[0];
        std::vector<uint64_t> q(num.limbs_.size(), 0);
        uint64_t rem = 0;
        for (size_t i = num.limbs_.size(); i-- > 0;) {
            u128 cur = (u128(rem) << 64) | num.limbs_[i];
            q[i] = static_cast<uint64_t>(cur / d);
            rem = static_cast<uint64_t>(cur % d);
        }
        return {from_limbs(std::move(q)), BigUint(rem)};
    }

    // Knuth algorithm D. Normalize so the top divisor limb has its high bit
    // set, then estimate one quotient limb at a time from the top two
    // dividend limbs, correcting the estimate at most twice.
    size_t shift = 64 - (den.bit_length() % 64 == 0 ? 64 : den.bit_length() % 64);
    BigUint vn = den << shift;
    BigUint un = num << shift;
    size_t n = vn.limbs_.size();
    size_t m = un.limbs_.size() > n ? un.limbs_.size() - n : 0;
    std::vector<uint64_t> u = un.limbs_;
    u.resize(m + n + 1, 0);
    const std::vector<uint64_t>& v = vn.limbs_;
    std::vector<uint64_t> q(m + 1, 0);

    for (size_t j = m + 1; j-- > 0;) {
        u128 top = (u128(u[j + n]) << 64) | u[j + n - 1];
        u128 qhat = top / v[n - 1];
        u128 rhat = top % v[n - 1];
        while (qhat >= (u128(1) << 64) ||
               qhat * v[n - 2] > ((rhat << 64) | u[j + n - 2])) {
            qhat -= 1;
            rhat += v[n - 1];
            if (rhat >= (u128(1) << 64)) {
                break;
            }
        }

        // Multiply-and-subtract qhat * v from u[j .. j+n].
        uint64_t borrow = 0;
        uint64_t mul_carry = 0;
        for (size_t i = 0; i < n; ++i) {
            u128 prod = qhat * v[i] + mul_carry;
            mul_carry = static_cast<uint64_t>(prod >> 64);
            uint64_t sub = static_cast<uint64_t>(prod);
            u128 diff = u128(u[i + j]) - sub - borrow;
            u[i + j] = static_cast<uint64_t>(diff);
            borrow = static_cast<uint64_t>((diff >> 64) & 1);
        }
        u128 diff = u128(u[j + n]) - mul_carry - borrow;
        u[j + n] = static_cast<uint64_t>(diff);
        borrow = static_cast<uint64_t>((diff >> 64) & 1);

        if (borrow) {
            // qhat was one too large; add the divisor back.
            qhat -= 1;
            uint64_t carry = 0;
            for (size_t i = 0; i < n; ++i) {
                u128 sum = u128(u[i + j]) + v[i] + carry;
                u[i + j] = static_cast<uint64_t>(sum);
                carry = static_cast<uint64_t>(sum >> 64);
            }
            u[j + n] += carry;
        }
        q[j] = static_cast<uint64_t>(qhat);
    }

    u.resize(n);
    BigUint rem = from_limbs(std::move(u)) >> shift;
    return {from_limbs(std::move(q)), std::move(rem)};
}

BigUint BigUint::mod_add(const BigUint& a, const BigUint& b, const BigUint& m) {
    BigUint sum = a + b;
    if (sum >= m) {
        sum = sum - m;
        if (sum >= m) {
            sum = sum % m;
        }
    }
    return sum;
}

BigUint BigUint::mod_sub(const BigUint& a, const BigUint& b, const BigUint& m) {
    if (a >= b) {
        BigUint d = a - b;
        return d >= m ? d % m : d;
    }
    BigUint d = b - a;
    if (d >= m) {
        d = d % m;
    }
    return d.is_zero() ? BigUint() : m - d;
}

BigUint BigUint::mod_mul(const BigUint& a, const BigUint& b, const BigUint& m) {
    return (a * b) % m;
}

BigUint BigUint::mod_pow(const BigUint& base, const BigUint& exp, const BigUint& m) {
    if (m.is_zero()) {
        throw Error("DivisionByZero", "mod_pow with zero modulus");
    }
    if (m == BigUint(1)) {
        return BigUint();
    }
    BigUint result(1);
    BigUint b = base % m;
    for (size_t i = exp.bit_length(); i-- > 0;) {
        result = mod_mul(result, result, m);
        if (exp.bit(i)) {
            result = mod_mul(result, b, m);
        }
    }
    return result;
}

namespace {

// In-place limb helpers for the fixed-width gcd path. All arrays use the
// same width and little-endian limb order.
bool limbs_zero(const uint64_t* x, size_t n) {
    for (size_t i = 0; i < n; ++i) {
        if (x[i] != 0) {
            return false;
        }
    }
    return true;
}

int limbs_cmp(const uint64_t* a, const uint64_t* b, size_t n) {
    for (size_t i = n; i-- > 0;) {
        if (a[i] != b[i]) {
            return a[i] < b[i] ? -1 : 1;
        }
    }
    return 0;
}

void limbs_shr1(uint64_t* x, size_t n) {
    for (size_t i = 0; i + 1 < n; ++i) {
        x[i] = (x[i] >> 1) | (x[i + 1] << 63);
    }
    x[n - 1] >>= 1;
}

// a -= b, requires a >= b.
void limbs_sub(uint64_t* a, const uint64_t* b, size_t n) {
    uint64_t borrow = 0;
    for (size_t i = 0; i < n; ++i) {
        unsigned __int128 diff = (unsigned __int128)(a[i]) - b[i] - borrow;
        a[i] = static_cast<uint64_t>(diff);
        borrow = static_cast<uint64_t>((diff >> 64) & 1);
    }
}

// a += b.
void limbs_add(uint64_t* a, const uint64_t* b, size_t n) {
    uint64_t carry = 0;
    for (size_t i = 0; i < n; ++i) {
        unsigned __int128 sum = (unsigned __int128)(a[i]) + b[i] + carry;
        a[i] = static_cast<uint64_t>(sum);
        carry = static_cast<uint64_t>(sum >> 64);
    }
}

constexpr size_t kGcdMaxLimbs = 8;

}  // namespace

BigUint BigUint::mod_inv(const BigUint& a, const BigUint& m) {
    if (m.is_zero() || !m.is_odd()) {
        throw Error("BadModulus", "mod_inv requires an odd modulus");
    }
    BigUint x = a % m;
    if (x.is_zero()) {
        throw Error("NotInvertible", "zero has no inverse");
    }

    // Binary extended gcd keeping cofactors reduced mod m, so no signed
    // intermediates are needed: the invariant is x = u * a, y = v * a
    // (mod m) up to the shared power of two that halving removes.
    if (m.limbs_.size() <= kGcdMaxLimbs) {
        // Fixed-width path on stack arrays; one limb of headroom because
        // the odd-case halving forms (w + m) / 2.
        const size_t n = m.limbs_.size() + 1;
        uint64_t xs[kGcdMaxLimbs + 1] = {0};
        uint64_t ys[kGcdMaxLimbs + 1] = {0};
        uint64_t us[kGcdMaxLimbs + 1] = {0};
        uint64_t vs[kGcdMaxLimbs + 1] = {0};
        uint64_t ms[kGcdMaxLimbs + 1] = {0};
        std::copy(x.limbs_.begin(), x.limbs_.end(), xs);
        std::copy(m.limbs_.begin(), m.limbs_.end(), ys);
        std::copy(m.limbs_.begin(), m.limbs_.end(), ms);
        us[0] = 1;

        auto half_mod = [&](uint64_t* w) {
            if (w[0] & 1) {
                limbs_add(w, ms, n);
            }
            limbs_shr1(w, n);
        };
        auto sub_mod = [&](uint64_t* r, const uint64_t* s) {
            if (limbs_cmp(r, s, n) < 0) {
                limbs_add(r, ms, n);
            }
            limbs_sub(r, s, n);
        };

        while (!limbs_zero(xs, n)) {
            while ((xs[0] & 1) == 0) {
                limbs_shr1(xs, n);
                half_mod(us);
            }
            while ((ys[0] & 1) == 0) {
                limbs_shr1(ys, n);
                half_mod(vs);
            }
            if (limbs_cmp(xs, ys, n) >= 0) {
                limbs_sub(xs, ys, n);
                sub_mod(us, vs);
            } else {
                limbs_sub(ys, xs, n);
                sub_mod(vs, us);
            }
        }
        uint64_t one[kGcdMaxLimbs + 1] = {1};
        if (limbs_cmp(ys, one, n) != 0) {
            throw Error("NotInvertible", "gcd(a, m) != 1");
        }
        return from_limbs(std::vector<uint64_t>(vs, vs + n));
    }

    auto half_mod = [&m](const BigUint& v) {
        return v.is_odd() ? (v + m) >> 1 : v >> 1;
    };
    BigUint y = m;
    BigUint u(1);
    BigUint v;
    while (!x.is_zero()) {
        while (!x.is_odd()) {
            x = x >> 1;
            u = half_mod(u);
        }
        while (!y.is_odd()) {
            y = y >> 1;
            v = half_mod(v);
        }
        if (x >= y) {
            x = x - y;
            u = mod_sub(u, v, m);
        } else {
            y = y - x;
            v = mod_sub(v, u, m);
        }
    }
    if (y != BigUint(1)) {
        throw Error("NotInvertible", "gcd(a, m) != 1");
    }
    return v;
}

bool probable_prime(const BigUint& n, int rounds) {
    static const uint64_t kSmallPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                                            31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
                                            73, 79, 83, 89, 97, 101, 103, 107, 109, 113,
                                            127, 131, 137, 139, 149, 151, 157, 163, 167, 173};
    if (n < BigUint(2)) {
        return false;
    }
    for (uint64_t sp : kSmallPrimes) {
        if (n == BigUint(sp)) {
            return true;
        }
        if ((n % BigUint(sp)).is_zero()) {
            return false;
        }
    }
    BigUint n_minus_1 = n - BigUint(1);
    BigUint d = n_minus_1;
    size_t r = 0;
    while (!d.is_odd()) {
        d = d >> 1;
        ++r;
    }
    int limit = std::min<int>(rounds, static_cast<int>(std::size(kSmallPrimes)));
    for (int round = 0; round < limit; ++round) {
        BigUint a(kSmallPrimes[round]);
        BigUint x = BigUint::mod_pow(a, d, n);
        if (x == BigUint(1) || x == n_minus_1) {
            continue;
        }
        bool witness = true;
        for (size_t i = 0; i + 1 < r; ++i) {
            x = BigUint::mod_mul(x, x, n);
            if (x == n_minus_1) {
                witness = false;
                break;
            }
        }
        if (witness) {
            return false;
        }
    }
    return true;
}

}  // namespace tmis
