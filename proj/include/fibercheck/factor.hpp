#pragma once

#include <vector>

#include "fibercheck/field.hpp"

namespace fibercheck {

template <class P>
struct FactorOf {
    P poly;  // monic, irreducible over the working field
    int multiplicity;
};

using QFactor = FactorOf<QPoly>;
using KFactor = FactorOf<KPoly>;

/// Yun's squarefree decomposition: pairs (monic squarefree part, multiplicity).
template <class T>
std::vector<FactorOf<UPoly<T>>> squarefree_decomposition(const UPoly<T>& g) {
    std::vector<FactorOf<UPoly<T>>> out;
    if (g.degree() < 1) return out;
    UPoly<T> f = g.monic();
    UPoly<T> df = f.derivative();
    UPoly<T> a = gcd(f, df);
    UPoly<T> b = f / a;
    UPoly<T> c = df / a - b.derivative();
    for (int i = 1; b.degree() > 0; ++i) {
        UPoly<T> d = gcd(b, c);
        if (d.degree() > 0) out.push_back({d, i});
        b = b / d;
        c = c / d - b.derivative();
    }
    return out;
}

/// Irreducible factorization over Q; monic factors ordered by (degree, canonical text).
std::vector<QFactor> factor_rational(const QPoly& g);

/// univariate_factor: irreducible factorization over the field of g's
/// coefficients. Over Q every factor is returned. Over an extension Q(a) the
/// factorization is computed with Trager's norm method and any factor of
/// degree >= 2 raises ExtensionTowerUnsupported, because locating its roots
/// would require a second extension layer.
std::vector<KFactor> univariate_factor(const KPoly& g);

/// Full factorization over an extension without the tower restriction (used by tests and diagnostics).
std::vector<KFactor> factor_over_extension(const KPoly& g, const FieldPtr& field);

KPoly to_kpoly(const QPoly& p, const FieldPtr& field = nullptr);

/// Norm of a polynomial with coefficients in Q(a): product over the conjugates of a.
QPoly norm_poly(const KPoly& h, const FieldPtr& field);

}  // namespace fibercheck
