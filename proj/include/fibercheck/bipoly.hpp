#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "fibercheck/field.hpp"

namespace fibercheck {

struct Exponent {
    int x = 0;
    int y = 0;
    auto operator<=>(const Exponent&) const = default;
};

/// Sparse polynomial in x, y over Q or a simple extension. Zero coefficients
/// are never stored; the zero polynomial has no terms.
class BiPoly {
public:
    using Terms = std::map<Exponent, FieldScalar>;

    BiPoly() = default;
    BiPoly(const FieldScalar& constant);  // NOLINT(google-explicit-constructor)
    BiPoly(long constant) : BiPoly(FieldScalar(constant)) {}  // NOLINT(google-explicit-constructor)
    BiPoly(int constant) : BiPoly(FieldScalar(constant)) {}   // NOLINT(google-explicit-constructor)

    static BiPoly x();
    static BiPoly y();
    static BiPoly term(const FieldScalar& coeff, int i, int j);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    FieldScalar coeff(int i, int j) const;
    int total_degree() const;
    int degree_x() const;
    int degree_y() const;
    /// Extension field of the coefficients, or null when all are rational.
    FieldPtr field() const;

    void add_term(const FieldScalar& coeff, int i, int j);

    BiPoly derivative_x() const;
    BiPoly derivative_y() const;
    /// f(y, x)
    BiPoly swapped() const;
    /// Terms of total degree < n.
    BiPoly truncated(int n) const;
    /// Leading term in the lex order with y most significant.
    std::pair<Exponent, FieldScalar> lead_term() const;

    friend BiPoly operator+(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator-(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator-(const BiPoly& a);
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator*(const BiPoly& a, const FieldScalar& s);
    friend bool operator==(const BiPoly& a, const BiPoly& b);
    friend bool operator!=(const BiPoly& a, const BiPoly& b) { return !(a == b); }
    BiPoly& operator+=(const BiPoly& o) { return *this = *this + o; }
    BiPoly& operator*=(const BiPoly& o) { return *this = *this * o; }

    BiPoly pow(unsigned e) const;

    /// Human-readable form that parse_polynomial accepts back when all
    /// coefficients are rational, e.g. "y^2 - x^3".
    std::string to_string() const;

private:
    Terms terms_;
};

/// Minimal total degree i+j over the terms; nullopt stands for infinity (zero polynomial).
std::optional<int> order_at_origin(const BiPoly& f);

/// Sum of the terms of minimal total degree (the tangent cone). Throws ZeroPolynomial.
BiPoly leading_form(const BiPoly& f);

/// f(x + a, y + b). Throws FieldMismatch for incompatible extensions.
BiPoly translate(const BiPoly& f, const FieldScalar& a, const FieldScalar& b);

/// Tangent direction at the origin: a finite slope y = t0*x or the vertical line x = 0.
struct TangentDirection {
    bool vertical = false;
    FieldScalar slope;

    static TangentDirection finite(const FieldScalar& t0) { return {false, t0}; }
    static TangentDirection vertical_line() { return {true, FieldScalar()}; }
};

/// Strict transform in one chart of the blow-up of the origin.
///  slope t0:  f(u, u*(t0 + v)) / u^m, returned with x = u, y = v;
///  vertical:  f(w*z, z) / z^m, returned with x = z, y = w.
/// In both charts the exceptional curve is {x = 0} and the point of the
/// exceptional curve in the given direction sits at the origin.
/// Throws NotDivisible if u^m (z^m) does not divide the substitution.
BiPoly blowup_substitute(const BiPoly& f, int m, const TangentDirection& direction);

/// Inverse chart map applied to g, multiplied back by the exceptional power:
/// recovers the image of f in the chart coordinate ring (used for round trips).
BiPoly blowup_pushforward(const BiPoly& g, int m, const TangentDirection& direction);

/// g(1, t) for a homogeneous form g, as a univariate polynomial in t.
KPoly dehomogenize(const BiPoly& form);

/// Exact quotient a / b; throws NotDivisible.
BiPoly exact_divide(const BiPoly& a, const BiPoly& b);

/// gcd over the coefficient field, normalized so the lex-leading coefficient is 1.
BiPoly gcd(const BiPoly& a, const BiPoly& b);

/// Maximum total degree accepted by the parser.
inline constexpr int kMaxParsedDegree = 64;

/// Parses the polynomial grammar: variables x and y, integer and rational
/// literals a/b, operators + - * and ^ with nonnegative integer exponents,
/// parentheses. Juxtaposition is rejected. Throws ParseError or DegreeCapExceeded.
BiPoly parse_polynomial(std::string_view text);

}  // namespace fibercheck
