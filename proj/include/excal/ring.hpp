#pragma once

#include <gmpxx.h>

#include <string>

#include "excal/errors.hpp"

namespace excal {

enum class RingKind { rationals, prime_field, integers };

// Coefficient ring for every matrix in the library: Q, F_p (p prime), or Z.
// All three share one scalar carrier (mpq_class in canonical form), so ring
// semantics live in the free functions below rather than in the scalar type.
class RingSpec {
  public:
    static RingSpec rationals() { return RingSpec(RingKind::rationals, 0); }
    static RingSpec integers() { return RingSpec(RingKind::integers, 0); }
    static RingSpec prime_field(long p);

    RingKind kind() const { return kind_; }
    bool is_field() const { return kind_ != RingKind::integers; }
    long characteristic() const { return kind_ == RingKind::prime_field ? p_ : 0; }
    const mpz_class& modulus() const { return modulus_; }

    // "Q", "Z", or "Fp:<p>"; also the serialization used by spec files.
    std::string name() const;
    static RingSpec from_name(const std::string& name);

    bool operator==(const RingSpec& other) const {
        return kind_ == other.kind_ && p_ == other.p_;
    }
    bool operator!=(const RingSpec& other) const { return !(*this == other); }

  private:
    RingSpec(RingKind kind, long p) : kind_(kind), p_(p), modulus_(p) {}

    RingKind kind_;
    long p_;
    mpz_class modulus_;
};

// Canonical form: Q reduced with positive denominator, Z integral, F_p a
// residue in [0, p) with denominator 1.
using Scalar = mpq_class;

// Puts an arbitrary mpq into canonical form for the ring.  Throws WrongRing
// when the value does not lie in the ring (a non-integer handed to Z or F_p).
Scalar ring_normalize(const RingSpec& ring, const Scalar& value);
Scalar scalar_from_long(const RingSpec& ring, long value);

inline bool scalar_is_zero(const Scalar& value) { return sgn(value) == 0; }

Scalar ring_add(const RingSpec& ring, const Scalar& a, const Scalar& b);
Scalar ring_sub(const RingSpec& ring, const Scalar& a, const Scalar& b);
Scalar ring_mul(const RingSpec& ring, const Scalar& a, const Scalar& b);
Scalar ring_neg(const RingSpec& ring, const Scalar& a);
// Fields only; F_p inverts modulo p, Q inverts exactly.
Scalar ring_inv(const RingSpec& ring, const Scalar& a);
Scalar ring_div(const RingSpec& ring, const Scalar& a, const Scalar& b);

// acc += a * b, in place (the hot path of every matrix product).
void ring_addmul(const RingSpec& ring, Scalar& acc, const Scalar& a, const Scalar& b);
// acc -= c * b, in place (the hot path of row elimination).
void ring_submul(const RingSpec& ring, Scalar& acc, const Scalar& c, const Scalar& b);

// Exact decimal / fraction rendering: "3", "-2", "1/2".
std::string scalar_to_string(const Scalar& value);
Scalar scalar_from_string(const RingSpec& ring, const std::string& text);

}  // namespace excal
