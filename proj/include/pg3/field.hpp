#pragma once

#include <cstdint>
#include <vector>

#include "pg3/errors.hpp"

namespace pg3 {

class Field;

/// Element of GF(q) tagged with its field, for checked arithmetic.
/// The geometry code works on raw encodings (plain ints) through the
/// Field methods instead; this wrapper exists for the public arithmetic
/// surface and its mismatch checks.
struct FieldElement {
    int value = 0;
    const Field* field = nullptr;
};

FieldElement operator+(FieldElement a, FieldElement b);
FieldElement operator-(FieldElement a, FieldElement b);
FieldElement operator-(FieldElement a);
FieldElement operator*(FieldElement a, FieldElement b);
bool operator==(FieldElement a, FieldElement b);
FieldElement inverse(FieldElement a);

/// GF(q) for q = p^e, p an odd prime.
///
/// Elements are encoded as integers in [0, q): the natural residue for
/// e = 1, the base-p evaluation c0 + c1*p + ... + c_{e-1}*p^{e-1} of the
/// coefficient tuple for e > 1. The modulus is the lexicographically
/// smallest monic irreducible of degree e over GF(p), ordered by the
/// coefficient tuple (c0, c1, ..., c_{e-1}); this makes the whole encoding
/// reproducible without polynomial tables.
///
/// For q <= 13 the constructor precomputes full add/mul/neg/inv tables,
/// which is what the geometry enumeration runs on. Everything is immutable
/// after construction, so concurrent reads are safe.
class Field {
public:
    /// Cap for bare arithmetic; geometry enforces its own smaller cap.
    static constexpr int kArithmeticCap = 1 << 16;
    /// Largest q accepted by the full-geometry pipeline.
    static constexpr int kGeometryCap = 13;
    /// Tables are precomputed up to this q.
    static constexpr int kTableCap = 13;

    /// Throws NotOddPrime, ExponentZero, FieldTooLarge.
    Field(int p, int e);

    int p() const { return p_; }
    int e() const { return e_; }
    int q() const { return q_; }

    /// Full coefficient tuple (c0, ..., c_{e-1}, 1) of the modulus, or
    /// empty for prime fields.
    const std::vector<int>& modulus_poly() const { return modulus_; }

    /// Structural identity key: two Field instances with equal keys define
    /// the same arithmetic.
    std::uint64_t key() const { return key_; }

    // Arithmetic on canonical encodings. Operands must be in [0, q).
    int add(int a, int b) const;
    int sub(int a, int b) const;
    int neg(int a) const;
    int mul(int a, int b) const;
    int inv(int a) const; // throws DivisionByZero for a == 0
    int pow(int a, long long n) const;

    FieldElement element(int v) const;

    bool table_backed() const { return !mul_tab_.empty(); }

    /// Base-p digits (c0, ..., c_{e-1}) of an encoding.
    std::vector<int> decode(int v) const;
    int encode(const std::vector<int>& coeffs) const;

private:
    int p_ = 0, e_ = 0, q_ = 0;
    std::vector<int> modulus_; // size e+1, monic; empty when e == 1
    std::uint64_t key_ = 0;

    std::vector<int> add_tab_, mul_tab_; // q*q, row-major
    std::vector<int> neg_tab_, inv_tab_; // q

    int add_slow(int a, int b) const;
    int mul_slow(int a, int b) const;
};

} // namespace pg3
