#include "pg3/field.hpp"

#include <algorithm>
#include <string>

namespace pg3 {

namespace {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; static_cast<long long>(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Polynomials over GF(p) as coefficient vectors, index = degree.

std::vector<int> poly_trim(std::vector<int> a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

std::vector<int> poly_mul(const std::vector<int>& a, const std::vector<int>& b, int p) {
    if (a.empty() || b.empty()) return {};
    std::vector<int> r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return poly_trim(std::move(r));
}

// Remainder of a by monic divisor d.
std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& d, int p) {
    a = poly_trim(std::move(a));
    const int dd = static_cast<int>(d.size()) - 1;
    while (static_cast<int>(a.size()) - 1 >= dd) {
        const int shift = static_cast<int>(a.size()) - 1 - dd;
        const int c = a.back();
        for (int i = 0; i <= dd; ++i) {
            int& t = a[i + shift];
            t = ((t - c * d[i]) % p + p) % p;
        }
        a = poly_trim(std::move(a));
    }
    return a;
}

bool poly_is_zero(const std::vector<int>& a) { return a.empty(); }

bool poly_irreducible(const std::vector<int>& f, int p) {
    const int deg = static_cast<int>(f.size()) - 1;
    // trial division by every monic polynomial of degree 1..deg/2
    for (int d = 1; 2 * d <= deg; ++d) {
        long long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (long long r = 0; r < count; ++r) {
            std::vector<int> g(d + 1, 0);
            g[d] = 1;
            long long t = r;
            for (int i = 0; i < d; ++i) {
                g[i] = static_cast<int>(t % p);
                t /= p;
            }
            if (poly_is_zero(poly_mod(f, g, p))) return false;
        }
    }
    return true;
}

std::vector<int> canonical_modulus(int p, int e) {
    // scan (c0, ..., c_{e-1}) in lexicographic order, c0 most significant
    std::vector<int> c(e, 0);
    while (true) {
        std::vector<int> f(e + 1, 0);
        f[e] = 1;
        for (int i = 0; i < e; ++i) f[i] = c[i];
        if (poly_irreducible(f, p)) return f;
        int i = e - 1;
        while (i >= 0 && c[i] == p - 1) c[i--] = 0;
        if (i < 0) throw InternalInvariantBroken("no irreducible polynomial found");
        ++c[i];
    }
}

} // namespace

Field::Field(int p, int e) : p_(p), e_(e) {
    if (e <= 0) throw ExponentZero("field exponent must be >= 1");
    if (p < 3 || p % 2 == 0 || !is_prime(p))
        throw NotOddPrime("field characteristic must be an odd prime, got " + std::to_string(p));
    long long q = 1;
    for (int i = 0; i < e; ++i) {
        q *= p;
        if (q > kArithmeticCap)
            throw FieldTooLarge("q = " + std::to_string(p) + "^" + std::to_string(e) +
                                " exceeds the arithmetic cap of " + std::to_string(kArithmeticCap));
    }
    q_ = static_cast<int>(q);

    if (e_ > 1) modulus_ = canonical_modulus(p_, e_);

    key_ = 0x9e3779b97f4a7c15ULL ^ (static_cast<std::uint64_t>(p_) << 32) ^
           (static_cast<std::uint64_t>(e_) << 16);
    for (int c : modulus_) key_ = key_ * 1099511628211ULL + static_cast<std::uint64_t>(c + 1);

    if (q_ <= kTableCap) {
        add_tab_.resize(static_cast<std::size_t>(q_) * q_);
        mul_tab_.resize(static_cast<std::size_t>(q_) * q_);
        neg_tab_.resize(q_);
        inv_tab_.assign(q_, 0);
        for (int a = 0; a < q_; ++a) {
            for (int b = 0; b < q_; ++b) {
                add_tab_[static_cast<std::size_t>(a) * q_ + b] = add_slow(a, b);
                mul_tab_[static_cast<std::size_t>(a) * q_ + b] = mul_slow(a, b);
            }
        }
        for (int a = 0; a < q_; ++a) {
            for (int b = 0; b < q_; ++b)
                if (add_tab_[static_cast<std::size_t>(a) * q_ + b] == 0) {
                    neg_tab_[a] = b;
                    break;
                }
            if (a != 0) {
                for (int b = 1; b < q_; ++b)
                    if (mul_tab_[static_cast<std::size_t>(a) * q_ + b] == 1) {
                        inv_tab_[a] = b;
                        break;
                    }
                if (inv_tab_[a] == 0)
                    throw InternalInvariantBroken("no multiplicative inverse found");
            }
        }
    }
}

std::vector<int> Field::decode(int v) const {
    std::vector<int> c(e_, 0);
    for (int i = 0; i < e_; ++i) {
        c[i] = v % p_;
        v /= p_;
    }
    return c;
}

int Field::encode(const std::vector<int>& coeffs) const {
    int v = 0;
    for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) v = v * p_ + coeffs[i];
    return v;
}

int Field::add_slow(int a, int b) const {
    if (e_ == 1) return (a + b) % p_;
    int v = 0, scale = 1;
    for (int i = 0; i < e_; ++i) {
        v += ((a % p_ + b % p_) % p_) * scale;
        a /= p_;
        b /= p_;
        scale *= p_;
    }
    return v;
}

int Field::mul_slow(int a, int b) const {
    if (e_ == 1) return static_cast<int>((static_cast<long long>(a) * b) % p_);
    const std::vector<int> pa = poly_trim(decode(a));
    const std::vector<int> pb = poly_trim(decode(b));
    const std::vector<int> r = poly_mod(poly_mul(pa, pb, p_), modulus_, p_);
    std::vector<int> full(e_, 0);
    for (std::size_t i = 0; i < r.size(); ++i) full[i] = r[i];
    return encode(full);
}

int Field::add(int a, int b) const {
    if (!add_tab_.empty()) return add_tab_[static_cast<std::size_t>(a) * q_ + b];
    return add_slow(a, b);
}

int Field::neg(int a) const {
    if (!neg_tab_.empty()) return neg_tab_[a];
    if (e_ == 1) return a == 0 ? 0 : p_ - a;
    int v = 0, scale = 1;
    for (int i = 0; i < e_; ++i) {
        const int d = a % p_;
        v += (d == 0 ? 0 : p_ - d) * scale;
        a /= p_;
        scale *= p_;
    }
    return v;
}

int Field::sub(int a, int b) const { return add(a, neg(b)); }

int Field::mul(int a, int b) const {
    if (!mul_tab_.empty()) return mul_tab_[static_cast<std::size_t>(a) * q_ + b];
    return mul_slow(a, b);
}

int Field::inv(int a) const {
    if (a == 0) throw DivisionByZero("inverse of zero");
    if (!inv_tab_.empty()) return inv_tab_[a];
    return pow(a, q_ - 2);
}

int Field::pow(int a, long long n) const {
    int r = 1;
    int base = a;
    while (n > 0) {
        if (n & 1) r = mul(r, base);
        base = mul(base, base);
        n >>= 1;
    }
    return r;
}

FieldElement Field::element(int v) const {
    if (v < 0 || v >= q_) throw Error("element encoding out of range: " + std::to_string(v));
    return FieldElement{v, this};
}

namespace {
const Field& same_field(FieldElement a, FieldElement b) {
    if (a.field == nullptr || b.field == nullptr || a.field->key() != b.field->key())
        throw FieldMismatch("operands belong to different fields");
    return *a.field;
}
} // namespace

FieldElement operator+(FieldElement a, FieldElement b) {
    const Field& f = same_field(a, b);
    return FieldElement{f.add(a.value, b.value), &f};
}

FieldElement operator-(FieldElement a, FieldElement b) {
    const Field& f = same_field(a, b);
    return FieldElement{f.sub(a.value, b.value), &f};
}

FieldElement operator-(FieldElement a) {
    return FieldElement{a.field->neg(a.value), a.field};
}

FieldElement operator*(FieldElement a, FieldElement b) {
    const Field& f = same_field(a, b);
    return FieldElement{f.mul(a.value, b.value), &f};
}

bool operator==(FieldElement a, FieldElement b) {
    same_field(a, b);
    return a.value == b.value;
}

FieldElement inverse(FieldElement a) {
    return FieldElement{a.field->inv(a.value), a.field};
}

} // namespace pg3
