#pragma once

#include <memory>
#include <string>
#include <vector>

#include "fibercheck/upoly.hpp"

namespace fibercheck {

/// Simple algebraic extension Q[a]/(p(a)). The modulus is monic, irreducible
/// and of degree at least 2; irreducibility is the caller's contract (the
/// factorizer only ever builds fields from irreducible factors).
class NumberField {
public:
    explicit NumberField(QPoly modulus);

    const QPoly& modulus() const { return modulus_; }
    int degree() const { return modulus_.degree(); }
    bool same_as(const NumberField& other) const { return modulus_ == other.modulus_; }

private:
    QPoly modulus_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

FieldPtr make_field(const QPoly& modulus);

/// Element of Q or of a simple extension Q(a). A value with a null field is a
/// plain rational and combines freely with elements of any extension.
class FieldScalar {
public:
    FieldScalar() = default;
    FieldScalar(long v) : value_(Rational(v)) {}              // NOLINT(google-explicit-constructor)
    FieldScalar(int v) : value_(Rational(v)) {}               // NOLINT(google-explicit-constructor)
    FieldScalar(const Rational& v) : value_(canonical(v)) {}  // NOLINT(google-explicit-constructor)
    FieldScalar(FieldPtr field, QPoly residue);

    /// The generator a of the given extension.
    static FieldScalar generator(const FieldPtr& field);

    const FieldPtr& field() const { return field_; }
    const QPoly& residue() const { return value_; }
    bool is_zero() const { return value_.is_zero(); }
    bool is_rational() const { return value_.degree() <= 0; }
    /// Only meaningful when is_rational().
    Rational rational() const { return value_.coeff(0); }

    FieldScalar inverse() const;
    /// Norm down to Q: product of all conjugates.
    Rational norm() const;
    /// Same value tagged with the given field (the value must already be compatible).
    FieldScalar lifted_to(const FieldPtr& field) const;

    friend FieldScalar operator+(const FieldScalar& a, const FieldScalar& b);
    friend FieldScalar operator-(const FieldScalar& a, const FieldScalar& b);
    friend FieldScalar operator-(const FieldScalar& a);
    friend FieldScalar operator*(const FieldScalar& a, const FieldScalar& b);
    friend FieldScalar operator/(const FieldScalar& a, const FieldScalar& b);
    friend bool operator==(const FieldScalar& a, const FieldScalar& b);
    friend bool operator!=(const FieldScalar& a, const FieldScalar& b) { return !(a == b); }

    FieldScalar& operator+=(const FieldScalar& o) { return *this = *this + o; }
    FieldScalar& operator-=(const FieldScalar& o) { return *this = *this - o; }
    FieldScalar& operator*=(const FieldScalar& o) { return *this = *this * o; }

    /// Canonical text: rationals as "a/b", extension elements as a polynomial in `a`.
    std::string to_string() const;

private:
    static Rational canonical(Rational v) {
        v.canonicalize();
        return v;
    }

    FieldPtr field_;
    QPoly value_;
};

inline bool coeff_is_zero(const FieldScalar& s) { return s.is_zero(); }
std::string format_coefficient(const FieldScalar& c);

/// Field shared by two operands; throws FieldMismatch for distinct extensions.
FieldPtr common_field(const FieldPtr& a, const FieldPtr& b);

using KPoly = UPoly<FieldScalar>;

/// Field of a univariate polynomial's coefficients (null when all rational).
FieldPtr field_of(const KPoly& p);

}  // namespace fibercheck
