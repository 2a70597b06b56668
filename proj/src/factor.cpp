#include "fibercheck/factor.hpp"

#include <algorithm>

#include "zfactor.hpp"

namespace fibercheck {

namespace {

QPoly to_qpoly(const KPoly& p) {
    std::vector<Rational> c;
    c.reserve(p.coeffs().size());
    for (const auto& s : p.coeffs()) {
        if (!s.is_rational()) throw Error(ErrorCode::FieldMismatch, "polynomial has irrational coefficients");
        c.push_back(s.rational());
    }
    return QPoly(std::move(c));
}

detail::ZPoly to_primitive_integer(const QPoly& p) {
    Integer den = 1;
    for (const auto& c : p.coeffs()) den = lcm(den, c.get_den());
    detail::ZPoly z;
    z.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) z.push_back(Integer(c * den));
    return z;
}

QPoly from_integer(const detail::ZPoly& z) {
    std::vector<Rational> c(z.begin(), z.end());
    return QPoly(std::move(c)).monic();
}

template <class P>
void sort_factors(std::vector<FactorOf<P>>& fs) {
    std::sort(fs.begin(), fs.end(), [](const auto& a, const auto& b) {
        if (a.poly.degree() != b.poly.degree()) return a.poly.degree() < b.poly.degree();
        return a.poly.to_string() < b.poly.to_string();
    });
}

QPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
    // Newton divided differences.
    const std::size_t n = xs.size();
    std::vector<Rational> coef = ys;
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i) {
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j]);
            if (i == j) break;
        }
    QPoly result(coef[n - 1]);
    for (std::size_t i = n - 1; i-- > 0;) result = result * QPoly(std::vector<Rational>{-xs[i], 1}) + QPoly(coef[i]);
    return result;
}

std::vector<KPoly> trager_split(const KPoly& h, const FieldPtr& field) {
    const FieldScalar alpha = FieldScalar::generator(field);
    for (long k = 0; k < 64; ++k) {
        const FieldScalar shift = alpha * FieldScalar(-k);
        KPoly hk = h.shifted(shift);
        QPoly norm = norm_poly(hk, field);
        if (gcd(norm, norm.derivative()).degree() > 0) continue;
        std::vector<KPoly> parts;
        for (const auto& nf : factor_rational(norm)) {
            KPoly g = gcd(hk, to_kpoly(nf.poly, field));
            if (g.degree() >= 1) parts.push_back(g.shifted(-shift));
        }
        return parts;
    }
    throw Error(ErrorCode::ExtensionTowerUnsupported, "no squarefree norm found for " + h.to_string());
}

}  // namespace

KPoly to_kpoly(const QPoly& p, const FieldPtr& field) {
    std::vector<FieldScalar> c;
    c.reserve(p.coeffs().size());
    for (const auto& r : p.coeffs()) c.push_back(field ? FieldScalar(field, QPoly(r)) : FieldScalar(r));
    return KPoly(std::move(c));
}

std::vector<QFactor> factor_rational(const QPoly& g) {
    if (g.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "cannot factor the zero polynomial");
    std::vector<QFactor> out;
    for (const auto& part : squarefree_decomposition(g)) {
        for (const auto& z : detail::factor_squarefree_primitive(to_primitive_integer(part.poly)))
            out.push_back({from_integer(z), part.multiplicity});
    }
    sort_factors(out);
    return out;
}

QPoly norm_poly(const KPoly& h, const FieldPtr& field) {
    const int bound = field->degree() * h.degree();
    std::vector<Rational> xs, ys;
    for (int i = 0; i <= bound; ++i) {
        Rational x(i);
        FieldScalar v = h.eval(FieldScalar(x)).lifted_to(field);
        xs.push_back(x);
        ys.push_back(v.norm());
    }
    return interpolate(xs, ys);
}

std::vector<KFactor> factor_over_extension(const KPoly& g, const FieldPtr& field) {
    if (g.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "cannot factor the zero polynomial");
    std::vector<KFactor> out;
    for (const auto& part : squarefree_decomposition(g)) {
        if (part.poly.degree() == 1) {
            out.push_back({part.poly, part.multiplicity});
            continue;
        }
        for (const auto& piece : trager_split(part.poly, field)) out.push_back({piece.monic(), part.multiplicity});
    }
    sort_factors(out);
    return out;
}

std::vector<KFactor> univariate_factor(const KPoly& g) {
    if (g.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "cannot factor the zero polynomial");
    const FieldPtr field = field_of(g);
    if (!field) {
        std::vector<KFactor> out;
        for (const auto& f : factor_rational(to_qpoly(g))) out.push_back({to_kpoly(f.poly), f.multiplicity});
        return out;
    }
    auto out = factor_over_extension(g, field);
    for (const auto& f : out)
        if (f.poly.degree() >= 2)
            throw Error(ErrorCode::ExtensionTowerUnsupported,
                        "factor " + f.poly.to_string() + " is irreducible over Q[a]/(" + field->modulus().to_string("a") +
                            ") and would need a nested extension");
    return out;
}

}  // namespace fibercheck
