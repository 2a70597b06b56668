#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "fibercheck/errors.hpp"

namespace fibercheck {

using Rational = mpq_class;
using Integer = mpz_class;

// Coefficient predicates are found by argument-dependent lookup inside UPoly.
inline bool coeff_is_zero(const Rational& r) { return sgn(r) == 0; }

/// Dense univariate polynomial over a field. Coefficients are stored from the
/// constant term upward and never carry trailing zeros, so the zero
/// polynomial is the empty vector.
template <class T>
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
    UPoly(const T& constant) : c_{constant} { trim(); }  // NOLINT(google-explicit-constructor)

    static UPoly monomial(const T& coeff, std::size_t degree) {
        std::vector<T> c(degree + 1, T(0));
        c[degree] = coeff;
        return UPoly(std::move(c));
    }
    static UPoly variable() { return monomial(T(1), 1); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const T& lead() const { return c_.back(); }
    const std::vector<T>& coeffs() const { return c_; }
    T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }

    T eval(const T& at) const {
        T acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + *it;
        return acc;
    }

    UPoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<T> d(c_.size() - 1, T(0));
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * T(static_cast<long>(i));
        return UPoly(std::move(d));
    }

    UPoly monic() const {
        if (is_zero()) return {};
        T inv = T(1) / lead();
        return *this * inv;
    }

    /// p(t + shift)
    UPoly shifted(const T& shift) const {
        UPoly result;
        UPoly lin(std::vector<T>{shift, T(1)});
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) result = result * lin + UPoly(*it);
        return result;
    }

    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        std::vector<T> r(std::max(a.c_.size(), b.c_.size()), T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = r[i] + a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] + b.c_[i];
        return UPoly(std::move(r));
    }
    friend UPoly operator-(const UPoly& a) {
        std::vector<T> r;
        r.reserve(a.c_.size());
        for (const auto& x : a.c_) r.push_back(T(0) - x);
        return UPoly(std::move(r));
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (coeff_is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        }
        return UPoly(std::move(r));
    }
    friend UPoly operator*(const UPoly& a, const T& s) {
        std::vector<T> r;
        r.reserve(a.c_.size());
        for (const auto& x : a.c_) r.push_back(x * s);
        return UPoly(std::move(r));
    }
    friend bool operator==(const UPoly& a, const UPoly& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }
    friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

    /// Euclidean division; returns {quotient, remainder}.
    friend std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
        if (b.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "division by zero polynomial");
        std::vector<T> rem = a.c_;
        if (a.degree() < b.degree()) return {UPoly(), a};
        std::vector<T> quo(static_cast<std::size_t>(a.degree() - b.degree() + 1), T(0));
        T inv = T(1) / b.lead();
        for (int k = a.degree() - b.degree(); k >= 0; --k) {
            const auto top = static_cast<std::size_t>(k + b.degree());
            if (coeff_is_zero(rem[top])) continue;
            T q = rem[top] * inv;
            quo[static_cast<std::size_t>(k)] = q;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                auto idx = static_cast<std::size_t>(k) + j;
                rem[idx] = rem[idx] - q * b.c_[j];
            }
        }
        return {UPoly(std::move(quo)), UPoly(std::move(rem))};
    }
    friend UPoly operator%(const UPoly& a, const UPoly& b) { return divmod(a, b).second; }
    friend UPoly operator/(const UPoly& a, const UPoly& b) { return divmod(a, b).first; }

    /// Monic gcd (zero when both inputs are zero).
    friend UPoly gcd(UPoly a, UPoly b) {
        while (!b.is_zero()) {
            UPoly r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    /// Extended Euclid: returns {g, s, t} with s*a + t*b = g, g monic.
    friend std::tuple<UPoly, UPoly, UPoly> xgcd(const UPoly& a, const UPoly& b) {
        UPoly r0 = a, r1 = b, s0(T(1)), s1, t0, t1(T(1));
        while (!r1.is_zero()) {
            auto [q, r] = divmod(r0, r1);
            r0 = std::move(r1);
            r1 = std::move(r);
            UPoly s2 = s0 - q * s1;
            UPoly t2 = t0 - q * t1;
            s0 = std::move(s1);
            s1 = std::move(s2);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        if (r0.is_zero()) return {r0, s0, t0};
        T inv = T(1) / r0.lead();
        return {r0 * inv, s0 * inv, t0 * inv};
    }

    std::string to_string(const std::string& var = "t") const;

private:
    void trim() {
        while (!c_.empty() && coeff_is_zero(c_.back())) c_.pop_back();
    }

    std::vector<T> c_;
};

using QPoly = UPoly<Rational>;

std::string format_coefficient(const Rational& c);

template <class T>
std::string UPoly<T>::to_string(const std::string& var) const {
    if (c_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const T& c = c_[static_cast<std::size_t>(i)];
        if (coeff_is_zero(c)) continue;
        std::string cs = format_coefficient(c);
        bool negative = !cs.empty() && cs[0] == '-';
        bool compound = cs.find_first_of("+-", 1) != std::string::npos;
        if (negative && !compound) cs = cs.substr(1);
        if (!first) out << (negative && !compound ? " - " : " + ");
        else if (negative && !compound) out << "-";
        first = false;
        if (compound) cs = "(" + cs + ")";
        if (i == 0) {
            out << cs;
        } else {
            if (cs != "1") out << cs << "*";
            out << var;
            if (i > 1) out << "^" << i;
        }
    }
    return out.str();
}

}  // namespace fibercheck
