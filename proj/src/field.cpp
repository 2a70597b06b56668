#include "fibercheck/field.hpp"

#include <utility>

namespace fibercheck {

std::string format_coefficient(const Rational& c) { return c.get_str(); }

NumberField::NumberField(QPoly modulus) : modulus_(std::move(modulus)) {
    if (modulus_.degree() < 2) throw Error(ErrorCode::FieldMismatch, "extension modulus must have degree >= 2");
    if (modulus_.lead() != 1) modulus_ = modulus_.monic();
}

FieldPtr make_field(const QPoly& modulus) { return std::make_shared<const NumberField>(modulus); }

FieldScalar::FieldScalar(FieldPtr field, QPoly residue) : field_(std::move(field)), value_(std::move(residue)) {
    if (field_) value_ = value_ % field_->modulus();
}

FieldScalar FieldScalar::generator(const FieldPtr& field) { return FieldScalar(field, QPoly::variable()); }

FieldPtr common_field(const FieldPtr& a, const FieldPtr& b) {
    if (!a) return b;
    if (!b || a == b) return a;
    if (!a->same_as(*b))
        throw Error(ErrorCode::FieldMismatch,
                    "operands live over different extensions (" + a->modulus().to_string("a") + " vs " +
                        b->modulus().to_string("a") + ")");
    return a;
}

FieldScalar operator+(const FieldScalar& a, const FieldScalar& b) {
    FieldScalar r;
    r.field_ = common_field(a.field_, b.field_);
    r.value_ = a.value_ + b.value_;
    return r;
}

FieldScalar operator-(const FieldScalar& a, const FieldScalar& b) {
    FieldScalar r;
    r.field_ = common_field(a.field_, b.field_);
    r.value_ = a.value_ - b.value_;
    return r;
}

FieldScalar operator-(const FieldScalar& a) {
    FieldScalar r;
    r.field_ = a.field_;
    r.value_ = -a.value_;
    return r;
}

FieldScalar operator*(const FieldScalar& a, const FieldScalar& b) {
    FieldScalar r;
    r.field_ = common_field(a.field_, b.field_);
    r.value_ = a.value_ * b.value_;
    if (r.field_ && r.value_.degree() >= r.field_->degree()) r.value_ = r.value_ % r.field_->modulus();
    return r;
}

FieldScalar FieldScalar::inverse() const {
    if (is_zero()) throw Error(ErrorCode::ZeroPolynomial, "inverse of zero");
    FieldScalar r;
    r.field_ = field_;
    if (is_rational()) {
        r.value_ = QPoly(Rational(1) / value_.coeff(0));
        return r;
    }
    auto [g, s, t] = xgcd(value_, field_->modulus());
    (void)t;
    if (g.degree() != 0) throw Error(ErrorCode::FieldMismatch, "modulus is not irreducible");
    r.value_ = s % field_->modulus();
    return r;
}

FieldScalar operator/(const FieldScalar& a, const FieldScalar& b) { return a * b.inverse(); }

bool operator==(const FieldScalar& a, const FieldScalar& b) {
    if (a.field_ && b.field_ && a.field_ != b.field_ && !a.field_->same_as(*b.field_)) return false;
    return a.value_ == b.value_;
}

FieldScalar FieldScalar::lifted_to(const FieldPtr& field) const {
    FieldScalar r = *this;
    r.field_ = common_field(field_, field);
    return r;
}

namespace {

Rational determinant(std::vector<std::vector<Rational>> m) {
    const std::size_t n = m.size();
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && sgn(m[pivot][col]) == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (sgn(m[r][col]) == 0) continue;
            Rational f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

}  // namespace

Rational FieldScalar::norm() const {
    if (!field_) return value_.coeff(0);
    const int d = field_->degree();
    // Column j holds value * a^j reduced modulo the defining polynomial.
    std::vector<std::vector<Rational>> m(static_cast<std::size_t>(d), std::vector<Rational>(static_cast<std::size_t>(d)));
    QPoly power(Rational(1));
    for (int j = 0; j < d; ++j) {
        QPoly prod = (value_ * power) % field_->modulus();
        for (int i = 0; i < d; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = prod.coeff(static_cast<std::size_t>(i));
        power = (power * QPoly::variable()) % field_->modulus();
    }
    return determinant(std::move(m));
}

std::string FieldScalar::to_string() const {
    if (is_rational()) return value_.coeff(0).get_str();
    return value_.to_string("a");
}

std::string format_coefficient(const FieldScalar& c) { return c.to_string(); }

FieldPtr field_of(const KPoly& p) {
    FieldPtr f;
    for (const auto& c : p.coeffs()) f = common_field(f, c.field());
    return f;
}

}  // namespace fibercheck
