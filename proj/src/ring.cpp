#include "excal/ring.hpp"

namespace excal {

RingSpec RingSpec::prime_field(long p) {
    if (p < 2) throw WrongRing("prime field modulus must be a prime >= 2, got " + std::to_string(p));
    mpz_class m(p);
    // 40 Miller-Rabin rounds: deterministic in practice for word-sized inputs.
    if (mpz_probab_prime_p(m.get_mpz_t(), 40) == 0)
        throw WrongRing("prime field modulus must be prime, got " + std::to_string(p));
    return RingSpec(RingKind::prime_field, p);
}

std::string RingSpec::name() const {
    switch (kind_) {
        case RingKind::rationals: return "Q";
        case RingKind::integers: return "Z";
        case RingKind::prime_field: return "Fp:" + std::to_string(p_);
    }
    return "?";
}

RingSpec RingSpec::from_name(const std::string& name) {
    if (name == "Q") return rationals();
    if (name == "Z") return integers();
    if (name.rfind("Fp:", 0) == 0) {
        try {
            size_t used = 0;
            long p = std::stol(name.substr(3), &used);
            if (used != name.size() - 3) throw std::invalid_argument(name);
            return prime_field(p);
        } catch (const std::logic_error&) {
            throw WrongRing("bad ring name: " + name);
        }
    }
    throw WrongRing("bad ring name: " + name + " (expected Q, Z, or Fp:<p>)");
}

Scalar ring_normalize(const RingSpec& ring, const Scalar& value) {
    Scalar v = value;
    v.canonicalize();
    switch (ring.kind()) {
        case RingKind::rationals:
            return v;
        case RingKind::integers:
            if (v.get_den() != 1) throw WrongRing("non-integer value " + scalar_to_string(v) + " in ring Z");
            return v;
        case RingKind::prime_field: {
            if (v.get_den() != 1)
                throw WrongRing("non-residue value " + scalar_to_string(v) + " in ring " + ring.name());
            Scalar r;
            mpz_mod(mpq_numref(r.get_mpq_t()), mpq_numref(v.get_mpq_t()), ring.modulus().get_mpz_t());
            return r;
        }
    }
    return v;
}

Scalar scalar_from_long(const RingSpec& ring, long value) {
    return ring_normalize(ring, Scalar(value));
}

Scalar ring_add(const RingSpec& ring, const Scalar& a, const Scalar& b) {
    if (ring.kind() == RingKind::prime_field) {
        Scalar r;
        mpz_add(mpq_numref(r.get_mpq_t()), mpq_numref(a.get_mpq_t()), mpq_numref(b.get_mpq_t()));
        mpz_mod(mpq_numref(r.get_mpq_t()), mpq_numref(r.get_mpq_t()), ring.modulus().get_mpz_t());
        return r;
    }
    return a + b;
}

Scalar ring_sub(const RingSpec& ring, const Scalar& a, const Scalar& b) {
    if (ring.kind() == RingKind::prime_field) {
        Scalar r;
        mpz_sub(mpq_numref(r.get_mpq_t()), mpq_numref(a.get_mpq_t()), mpq_numref(b.get_mpq_t()));
        mpz_mod(mpq_numref(r.get_mpq_t()), mpq_numref(r.get_mpq_t()), ring.modulus().get_mpz_t());
        return r;
    }
    return a - b;
}

Scalar ring_mul(const RingSpec& ring, const Scalar& a, const Scalar& b) {
    if (ring.kind() == RingKind::prime_field) {
        Scalar r;
        mpz_mul(mpq_numref(r.get_mpq_t()), mpq_numref(a.get_mpq_t()), mpq_numref(b.get_mpq_t()));
        mpz_mod(mpq_numref(r.get_mpq_t()), mpq_numref(r.get_mpq_t()), ring.modulus().get_mpz_t());
        return r;
    }
    return a * b;
}

Scalar ring_neg(const RingSpec& ring, const Scalar& a) {
    if (ring.kind() == RingKind::prime_field) {
        if (scalar_is_zero(a)) return a;
        Scalar r;
        mpz_sub(mpq_numref(r.get_mpq_t()), ring.modulus().get_mpz_t(), mpq_numref(a.get_mpq_t()));
        return r;
    }
    return -a;
}

Scalar ring_inv(const RingSpec& ring, const Scalar& a) {
    if (scalar_is_zero(a)) throw SingularMatrix("division by zero in ring " + ring.name());
    switch (ring.kind()) {
        case RingKind::rationals:
            return Scalar(1) / a;
        case RingKind::integers:
            throw WrongRing("Z is not a field: cannot invert " + scalar_to_string(a));
        case RingKind::prime_field: {
            Scalar r;
            if (mpz_invert(mpq_numref(r.get_mpq_t()), mpq_numref(a.get_mpq_t()),
                           ring.modulus().get_mpz_t()) == 0)
                throw SingularMatrix("non-invertible residue " + scalar_to_string(a) + " mod " +
                                     ring.modulus().get_str());
            return r;
        }
    }
    return a;
}

Scalar ring_div(const RingSpec& ring, const Scalar& a, const Scalar& b) {
    return ring_mul(ring, a, ring_inv(ring, b));
}

void ring_addmul(const RingSpec& ring, Scalar& acc, const Scalar& a, const Scalar& b) {
    if (ring.kind() == RingKind::prime_field) {
        mpz_addmul(mpq_numref(acc.get_mpq_t()), mpq_numref(a.get_mpq_t()), mpq_numref(b.get_mpq_t()));
        mpz_mod(mpq_numref(acc.get_mpq_t()), mpq_numref(acc.get_mpq_t()), ring.modulus().get_mpz_t());
        return;
    }
    acc += a * b;
}

void ring_submul(const RingSpec& ring, Scalar& acc, const Scalar& c, const Scalar& b) {
    if (ring.kind() == RingKind::prime_field) {
        mpz_submul(mpq_numref(acc.get_mpq_t()), mpq_numref(c.get_mpq_t()), mpq_numref(b.get_mpq_t()));
        mpz_mod(mpq_numref(acc.get_mpq_t()), mpq_numref(acc.get_mpq_t()), ring.modulus().get_mpz_t());
        return;
    }
    acc -= c * b;
}

std::string scalar_to_string(const Scalar& value) {
    if (value.get_den() == 1) return value.get_num().get_str();
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Scalar scalar_from_string(const RingSpec& ring, const std::string& text) {
    Scalar v;
    if (mpq_set_str(v.get_mpq_t(), text.c_str(), 10) != 0 || sgn(v.get_den()) <= 0)
        throw ParseError("bad scalar literal: '" + text + "'");
    return ring_normalize(ring, v);
}

}  // namespace excal
