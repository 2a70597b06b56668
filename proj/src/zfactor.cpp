#include "zfactor.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>

namespace fibercheck::detail {

namespace {

using u64 = std::uint64_t;
using FpPoly = std::vector<u64>;

// ---------------------------------------------------------------------------
// Arithmetic in F_p[x]; p < 2^31 so products fit in 64 bits.

struct Fp {
    u64 p;

    u64 add(u64 a, u64 b) const { return (a + b) % p; }
    u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
    u64 mul(u64 a, u64 b) const { return (a * b) % p; }
    u64 pow(u64 a, u64 e) const {
        u64 r = 1;
        a %= p;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    u64 inv(u64 a) const { return pow(a, p - 2); }

    static void trim(FpPoly& a) {
        while (!a.empty() && a.back() == 0) a.pop_back();
    }

    FpPoly reduce(const ZPoly& f) const {
        FpPoly r(f.size());
        Integer pp(static_cast<unsigned long>(p));
        for (std::size_t i = 0; i < f.size(); ++i) {
            Integer m = f[i] % pp;
            if (m < 0) m += pp;
            r[i] = m.get_ui();
        }
        trim(r);
        return r;
    }

    FpPoly add(const FpPoly& a, const FpPoly& b) const {
        FpPoly r(std::max(a.size(), b.size()), 0);
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
        for (std::size_t i = 0; i < b.size(); ++i) r[i] = add(r[i], b[i]);
        trim(r);
        return r;
    }
    FpPoly sub(const FpPoly& a, const FpPoly& b) const {
        FpPoly r(std::max(a.size(), b.size()), 0);
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
        for (std::size_t i = 0; i < b.size(); ++i) r[i] = sub(r[i], b[i]);
        trim(r);
        return r;
    }
    FpPoly mul(const FpPoly& a, const FpPoly& b) const {
        if (a.empty() || b.empty()) return {};
        FpPoly r(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = add(r[i + j], mul(a[i], b[j]));
        trim(r);
        return r;
    }
    FpPoly scale(const FpPoly& a, u64 s) const {
        FpPoly r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = mul(a[i], s);
        trim(r);
        return r;
    }
    std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b) const {
        FpPoly rem = a;
        if (rem.size() < b.size()) return {{}, rem};
        FpPoly quo(rem.size() - b.size() + 1, 0);
        u64 inv_lead = inv(b.back());
        for (std::size_t k = quo.size(); k-- > 0;) {
            u64 c = mul(rem[k + b.size() - 1], inv_lead);
            quo[k] = c;
            if (c == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j) rem[k + j] = sub(rem[k + j], mul(c, b[j]));
        }
        trim(quo);
        trim(rem);
        return {quo, rem};
    }
    FpPoly mod(const FpPoly& a, const FpPoly& b) const { return divmod(a, b).second; }
    FpPoly monic(const FpPoly& a) const { return a.empty() ? a : scale(a, inv(a.back())); }
    FpPoly gcd(FpPoly a, FpPoly b) const {
        while (!b.empty()) {
            FpPoly r = mod(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        return monic(a);
    }
    /// {s, t} with s*a + t*b = 1, assuming gcd(a, b) = 1.
    std::pair<FpPoly, FpPoly> bezout(const FpPoly& a, const FpPoly& b) const {
        FpPoly r0 = a, r1 = b, s0{1}, s1, t0, t1{1};
        while (!r1.empty()) {
            auto [q, r] = divmod(r0, r1);
            r0 = std::move(r1);
            r1 = std::move(r);
            FpPoly s2 = sub(s0, mul(q, s1));
            FpPoly t2 = sub(t0, mul(q, t1));
            s0 = std::move(s1);
            s1 = std::move(s2);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        u64 c = inv(r0.back());
        return {scale(s0, c), scale(t0, c)};
    }
    FpPoly derivative(const FpPoly& a) const {
        if (a.size() <= 1) return {};
        FpPoly r(a.size() - 1);
        for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = mul(a[i], i % p);
        trim(r);
        return r;
    }
    FpPoly powmod(FpPoly base, const Integer& e, const FpPoly& m) const {
        FpPoly r{1};
        base = mod(base, m);
        const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
        for (std::size_t i = bits; i-- > 0;) {
            r = mod(mul(r, r), m);
            if (mpz_tstbit(e.get_mpz_t(), i)) r = mod(mul(r, base), m);
        }
        return r;
    }
};

// Distinct-degree then equal-degree splitting of a monic squarefree polynomial.
void equal_degree_split(const Fp& F, const FpPoly& g, std::size_t d, std::mt19937_64& rng, std::vector<FpPoly>& out) {
    const std::size_t n = g.size() - 1;
    if (n == d) {
        out.push_back(g);
        return;
    }
    Integer pd = 1;
    for (std::size_t i = 0; i < d; ++i) pd *= static_cast<unsigned long>(F.p);
    const Integer e = (pd - 1) / 2;
    std::uniform_int_distribution<u64> coin(0, F.p - 1);
    for (;;) {
        FpPoly a(n);
        for (auto& c : a) c = coin(rng);
        Fp::trim(a);
        if (a.size() < 2) continue;
        FpPoly b = F.sub(F.powmod(a, e, g), FpPoly{1});
        FpPoly h = F.gcd(b, g);
        if (h.size() > 1 && h.size() < g.size()) {
            equal_degree_split(F, h, d, rng, out);
            equal_degree_split(F, F.divmod(g, h).first, d, rng, out);
            return;
        }
    }
}

std::vector<FpPoly> factor_mod_p(const Fp& F, FpPoly f) {
    std::mt19937_64 rng(0x5eedULL + F.p);
    std::vector<FpPoly> out;
    f = F.monic(f);
    const FpPoly x{0, 1};
    FpPoly h = x;
    for (std::size_t d = 1; f.size() - 1 >= 2 * d; ++d) {
        h = F.powmod(h, Integer(static_cast<unsigned long>(F.p)), f);
        FpPoly g = F.gcd(F.sub(h, x), f);
        if (g.size() > 1) {
            equal_degree_split(F, g, d, rng, out);
            f = F.divmod(f, g).first;
            h = F.mod(h, f);
        }
    }
    if (f.size() > 1) out.push_back(f);
    return out;
}

// ---------------------------------------------------------------------------
// Integer polynomial helpers.

void trim(ZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

ZPoly mul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

ZPoly sub(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

ZPoly add(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    trim(r);
    return r;
}

ZPoly lift(const FpPoly& a) {
    ZPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<unsigned long>(a[i]);
    return r;
}

ZPoly mod_nonneg(ZPoly a, const Integer& m) {
    for (auto& c : a) {
        c %= m;
        if (c < 0) c += m;
    }
    trim(a);
    return a;
}

ZPoly mod_symmetric(ZPoly a, const Integer& m) {
    const Integer half = m / 2;
    for (auto& c : a) {
        c %= m;
        if (c < 0) c += m;
        if (c > half) c -= m;
    }
    trim(a);
    return a;
}

Integer content(const ZPoly& a) {
    Integer g = 0;
    for (const auto& c : a) g = gcd(g, c);
    return g;
}

ZPoly primitive(ZPoly a) {
    Integer g = content(a);
    if (g == 0) return a;
    if (a.back() < 0) g = -g;
    for (auto& c : a) c /= g;
    return a;
}

/// Exact division over Z; returns false when b does not divide a.
bool divide_exact(const ZPoly& a, const ZPoly& b, ZPoly& quotient) {
    ZPoly rem = a;
    if (rem.size() < b.size()) return false;
    ZPoly quo(rem.size() - b.size() + 1, 0);
    for (std::size_t k = quo.size(); k-- > 0;) {
        const Integer& top = rem[k + b.size() - 1];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), b.back().get_mpz_t())) return false;
        Integer c = top / b.back();
        quo[k] = c;
        for (std::size_t j = 0; j < b.size(); ++j) rem[k + j] -= c * b[j];
    }
    trim(rem);
    if (!rem.empty()) return false;
    trim(quo);
    quotient = std::move(quo);
    return true;
}

// Lifts f = g*h (mod p), g monic, lc(h) = lc(f), to the same relation modulo p^k.
void hensel_lift_pair(const Fp& F, const ZPoly& f, ZPoly& g, ZPoly& h, unsigned k) {
    const FpPoly gp = F.reduce(g), hp = F.reduce(h);
    auto [s, t] = F.bezout(gp, hp);
    const Integer p = static_cast<unsigned long>(F.p);
    Integer pj = p;
    for (unsigned j = 1; j < k; ++j) {
        ZPoly diff = sub(f, mul(g, h));
        for (auto& c : diff) c /= pj;
        FpPoly e = F.reduce(diff);
        FpPoly g_mod = F.reduce(g), h_mod = F.reduce(h);
        auto [q, a] = F.divmod(F.mul(t, e), g_mod);
        FpPoly b = F.add(F.mul(s, e), F.mul(q, h_mod));
        ZPoly da = lift(a), db = lift(b);
        for (auto& c : da) c *= pj;
        for (auto& c : db) c *= pj;
        pj *= p;
        g = mod_nonneg(add(g, da), pj);
        const Integer lead_h = h.back();
        h = add(h, db);
        for (std::size_t i = 0; i + 1 < h.size(); ++i) {
            h[i] %= pj;
            if (h[i] < 0) h[i] += pj;
        }
        h.back() = lead_h;
    }
}

Integer isqrt_ceil(const Integer& n) {
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    if (r * r < n) r += 1;
    return r;
}

std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        out.push_back(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

std::vector<ZPoly> factor_squarefree_primitive(const ZPoly& input) {
    ZPoly f = primitive(input);
    trim(f);
    const std::size_t n = f.size() - 1;
    if (n <= 1) return {f};

    // Pick, among a handful of good primes, the one with the fewest modular factors.
    Fp best{0};
    std::vector<FpPoly> best_factors;
    int tried = 0;
    for (u64 p = 5; tried < 6 && p < 100000; p += 2) {
        if (!is_prime(p)) continue;
        Fp F{p};
        Integer lead_mod = f.back() % Integer(static_cast<unsigned long>(p));
        if (lead_mod == 0) continue;
        FpPoly fp = F.reduce(f);
        if (F.gcd(fp, F.derivative(fp)).size() != 1) continue;
        auto facs = factor_mod_p(F, fp);
        ++tried;
        if (best.p == 0 || facs.size() < best_factors.size()) {
            best = F;
            best_factors = std::move(facs);
        }
        if (best_factors.size() == 1) break;
    }
    if (best_factors.size() <= 1) return {f};

    // Coefficient bound for lc(f) * (any factor): |lc| * 2^n * ||f||_2.
    Integer norm2 = 0;
    for (const auto& c : f) norm2 += c * c;
    Integer bound = abs(f.back()) * isqrt_ceil(norm2);
    mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), n);
    bound *= 2;
    const Integer p = static_cast<unsigned long>(best.p);
    Integer modulus = p;
    unsigned k = 1;
    while (modulus <= bound) {
        modulus *= p;
        ++k;
    }

    // Multifactor Hensel lifting: peel one monic factor at a time off the cofactor.
    std::vector<ZPoly> lifted;
    ZPoly target = f;
    for (std::size_t i = 0; i + 1 < best_factors.size(); ++i) {
        ZPoly g = lift(best_factors[i]);
        FpPoly rest{1};
        for (std::size_t j = i + 1; j < best_factors.size(); ++j) rest = best.mul(rest, best_factors[j]);
        Integer lead_mod = target.back() % p;
        if (lead_mod < 0) lead_mod += p;
        ZPoly h = lift(best.scale(rest, lead_mod.get_ui()));
        h.back() = target.back();
        hensel_lift_pair(best, target, g, h, k);
        lifted.push_back(g);
        target = h;
    }
    {
        // Last factor: make the remaining cofactor monic modulo p^k.
        Integer inv_lead;
        Integer lead = target.back() % modulus;
        if (lead < 0) lead += modulus;
        mpz_invert(inv_lead.get_mpz_t(), lead.get_mpz_t(), modulus.get_mpz_t());
        ZPoly last = target;
        for (auto& c : last) c *= inv_lead;
        lifted.push_back(mod_nonneg(last, modulus));
    }

    // Recombination.
    std::vector<ZPoly> result;
    std::size_t size = 1;
    while (2 * size <= lifted.size()) {
        bool found = false;
        for (const auto& subset : combinations(lifted.size(), size)) {
            ZPoly cand{f.back()};
            for (std::size_t idx : subset) cand = mod_symmetric(mul(cand, lifted[idx]), modulus);
            cand = primitive(cand);
            ZPoly quotient;
            if (!divide_exact(f, cand, quotient)) continue;
            result.push_back(cand);
            f = primitive(quotient);
            std::vector<ZPoly> remaining;
            for (std::size_t i = 0; i < lifted.size(); ++i)
                if (std::find(subset.begin(), subset.end(), i) == subset.end()) remaining.push_back(lifted[i]);
            lifted = std::move(remaining);
            found = true;
            break;
        }
        if (!found) ++size;
    }
    if (f.size() > 1) result.push_back(primitive(f));
    return result;
}

}  // namespace fibercheck::detail
