#include "fibercheck/bipoly.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <sstream>
#include <vector>

namespace fibercheck {

BiPoly::BiPoly(const FieldScalar& constant) {
    if (!constant.is_zero()) terms_.emplace(Exponent{0, 0}, constant);
}

BiPoly BiPoly::x() { return term(FieldScalar(1), 1, 0); }
BiPoly BiPoly::y() { return term(FieldScalar(1), 0, 1); }

BiPoly BiPoly::term(const FieldScalar& coeff, int i, int j) {
    BiPoly p;
    p.add_term(coeff, i, j);
    return p;
}

void BiPoly::add_term(const FieldScalar& coeff, int i, int j) {
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.emplace(Exponent{i, j}, coeff);
    if (inserted) return;
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
}

FieldScalar BiPoly::coeff(int i, int j) const {
    auto it = terms_.find(Exponent{i, j});
    return it == terms_.end() ? FieldScalar() : it->second;
}

int BiPoly::total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e.x + e.y);
    return d;
}

int BiPoly::degree_x() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e.x);
    return d;
}

int BiPoly::degree_y() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e.y);
    return d;
}

FieldPtr BiPoly::field() const {
    FieldPtr f;
    for (const auto& [e, c] : terms_) f = common_field(f, c.field());
    return f;
}

BiPoly BiPoly::derivative_x() const {
    BiPoly r;
    for (const auto& [e, c] : terms_)
        if (e.x > 0) r.add_term(c * FieldScalar(e.x), e.x - 1, e.y);
    return r;
}

BiPoly BiPoly::derivative_y() const {
    BiPoly r;
    for (const auto& [e, c] : terms_)
        if (e.y > 0) r.add_term(c * FieldScalar(e.y), e.x, e.y - 1);
    return r;
}

BiPoly BiPoly::swapped() const {
    BiPoly r;
    for (const auto& [e, c] : terms_) r.add_term(c, e.y, e.x);
    return r;
}

BiPoly BiPoly::truncated(int n) const {
    BiPoly r;
    for (const auto& [e, c] : terms_)
        if (e.x + e.y < n) r.terms_.emplace(e, c);
    return r;
}

std::pair<Exponent, FieldScalar> BiPoly::lead_term() const {
    if (terms_.empty()) throw Error(ErrorCode::ZeroPolynomial, "zero polynomial has no leading term");
    auto best = terms_.begin();
    for (auto it = terms_.begin(); it != terms_.end(); ++it)
        if (std::tie(it->first.y, it->first.x) > std::tie(best->first.y, best->first.x)) best = it;
    return *best;
}

BiPoly operator+(const BiPoly& a, const BiPoly& b) {
    BiPoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(c, e.x, e.y);
    return r;
}

BiPoly operator-(const BiPoly& a) {
    BiPoly r;
    for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, -c);
    return r;
}

BiPoly operator-(const BiPoly& a, const BiPoly& b) { return a + (-b); }

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly r;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) r.add_term(ca * cb, ea.x + eb.x, ea.y + eb.y);
    return r;
}

BiPoly operator*(const BiPoly& a, const FieldScalar& s) {
    BiPoly r;
    for (const auto& [e, c] : a.terms_) r.add_term(c * s, e.x, e.y);
    return r;
}

bool operator==(const BiPoly& a, const BiPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto ib = b.terms_.begin();
    for (auto ia = a.terms_.begin(); ia != a.terms_.end(); ++ia, ++ib)
        if (ia->first != ib->first || ia->second != ib->second) return false;
    return true;
}

BiPoly BiPoly::pow(unsigned e) const {
    BiPoly result(1);
    BiPoly base = *this;
    while (e) {
        if (e & 1U) result = result * base;
        e >>= 1U;
        if (e) base = base * base;
    }
    return result;
}

std::string BiPoly::to_string() const {
    if (terms_.empty()) return "0";
    // Descending total degree, then descending power of x.
    std::vector<std::pair<Exponent, FieldScalar>> sorted(terms_.begin(), terms_.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        const int da = a.first.x + a.first.y, db = b.first.x + b.first.y;
        if (da != db) return da > db;
        return a.first.x < b.first.x;
    });
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : sorted) {
        std::string cs = c.to_string();
        const bool compound = cs.find_first_of("+-", 1) != std::string::npos;
        bool negative = !compound && cs[0] == '-';
        if (negative) cs = cs.substr(1);
        if (compound) cs = "(" + cs + ")";
        if (first) out << (negative ? "-" : "");
        else out << (negative ? " - " : " + ");
        first = false;
        std::string mono;
        auto append = [&mono](char var, int k) {
            if (k == 0) return;
            if (!mono.empty()) mono += "*";
            mono += var;
            if (k > 1) mono += "^" + std::to_string(k);
        };
        append('x', e.x);
        append('y', e.y);
        if (mono.empty()) out << cs;
        else if (cs == "1") out << mono;
        else out << cs << "*" << mono;
    }
    return out.str();
}

std::optional<int> order_at_origin(const BiPoly& f) {
    if (f.is_zero()) return std::nullopt;
    int m = INT_MAX;
    for (const auto& [e, c] : f.terms()) m = std::min(m, e.x + e.y);
    return m;
}

BiPoly leading_form(const BiPoly& f) {
    auto m = order_at_origin(f);
    if (!m) throw Error(ErrorCode::ZeroPolynomial, "leading form of the zero polynomial");
    BiPoly r;
    for (const auto& [e, c] : f.terms())
        if (e.x + e.y == *m) r.add_term(c, e.x, e.y);
    return r;
}

BiPoly translate(const BiPoly& f, const FieldScalar& a, const FieldScalar& b) {
    common_field(a.field(), b.field());
    const BiPoly xs = BiPoly::x() + BiPoly(a);
    const BiPoly ys = BiPoly::y() + BiPoly(b);
    std::vector<BiPoly> xpow{BiPoly(1)}, ypow{BiPoly(1)};
    BiPoly r;
    for (const auto& [e, c] : f.terms()) {
        while (static_cast<int>(xpow.size()) <= e.x) xpow.push_back(xpow.back() * xs);
        while (static_cast<int>(ypow.size()) <= e.y) ypow.push_back(ypow.back() * ys);
        r += xpow[static_cast<std::size_t>(e.x)] * ypow[static_cast<std::size_t>(e.y)] * c;
    }
    return r;
}

namespace {

std::vector<FieldScalar> binomial_row(int n) {
    std::vector<FieldScalar> row{FieldScalar(1)};
    Integer c = 1;
    for (int k = 1; k <= n; ++k) {
        c = c * (n - k + 1) / k;
        row.emplace_back(Rational(c));
    }
    return row;
}

BiPoly slope_chart(const BiPoly& f, int m, const FieldScalar& t0) {
    // x^i y^j -> u^(i+j) (t0 + v)^j
    BiPoly r;
    for (const auto& [e, c] : f.terms()) {
        const auto binom = binomial_row(e.y);
        FieldScalar t_power(1);
        std::vector<FieldScalar> t_powers{t_power};
        for (int k = 1; k <= e.y; ++k) t_powers.push_back(t_powers.back() * t0);
        for (int k = 0; k <= e.y; ++k) {
            FieldScalar coeff = c * binom[static_cast<std::size_t>(k)] * t_powers[static_cast<std::size_t>(e.y - k)];
            r.add_term(coeff, e.x + e.y, k);
        }
    }
    BiPoly out;
    for (const auto& [e, c] : r.terms()) {
        if (e.x < m)
            throw Error(ErrorCode::NotDivisible,
                        "u^" + std::to_string(m) + " does not divide the substitution of " + f.to_string());
        out.add_term(c, e.x - m, e.y);
    }
    return out;
}

BiPoly slope_pushforward(const BiPoly& g, int m, const FieldScalar& t0) {
    // c u^i v^j -> c x^(m+i-j) (y - t0 x)^j
    const BiPoly line = BiPoly::y() - BiPoly::x() * t0;
    BiPoly r;
    for (const auto& [e, c] : g.terms()) {
        const int xe = m + e.x - e.y;
        if (xe < 0) throw Error(ErrorCode::NotDivisible, "pushforward leaves the polynomial ring");
        r += BiPoly::term(c, xe, 0) * line.pow(static_cast<unsigned>(e.y));
    }
    return r;
}

}  // namespace

BiPoly blowup_substitute(const BiPoly& f, int m, const TangentDirection& direction) {
    if (direction.vertical) return slope_chart(f.swapped(), m, FieldScalar(0));
    return slope_chart(f, m, direction.slope);
}

BiPoly blowup_pushforward(const BiPoly& g, int m, const TangentDirection& direction) {
    if (direction.vertical) return slope_pushforward(g, m, FieldScalar(0)).swapped();
    return slope_pushforward(g, m, direction.slope);
}

KPoly dehomogenize(const BiPoly& form) {
    std::vector<FieldScalar> c(static_cast<std::size_t>(std::max(0, form.degree_y() + 1)), FieldScalar(0));
    for (const auto& [e, s] : form.terms()) c[static_cast<std::size_t>(e.y)] += s;
    return KPoly(std::move(c));
}

BiPoly exact_divide(const BiPoly& a, const BiPoly& b) {
    if (b.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "division by the zero polynomial");
    const auto [lb_exp, lb_coeff] = b.lead_term();
    const FieldScalar inv = lb_coeff.inverse();
    BiPoly rem = a, quo;
    while (!rem.is_zero()) {
        const auto [le, lc] = rem.lead_term();
        if (le.x < lb_exp.x || le.y < lb_exp.y)
            throw Error(ErrorCode::NotDivisible, b.to_string() + " does not divide " + a.to_string());
        BiPoly t = BiPoly::term(lc * inv, le.x - lb_exp.x, le.y - lb_exp.y);
        quo += t;
        rem = rem - t * b;
    }
    return quo;
}

namespace {

// a polynomial in y whose coefficients are polynomials in x
using Recursive = std::vector<KPoly>;

Recursive to_recursive(const BiPoly& p) {
    Recursive r(static_cast<std::size_t>(std::max(0, p.degree_y() + 1)));
    std::vector<std::vector<FieldScalar>> dense(r.size());
    for (const auto& [e, c] : p.terms()) {
        auto& row = dense[static_cast<std::size_t>(e.y)];
        if (static_cast<int>(row.size()) <= e.x) row.resize(static_cast<std::size_t>(e.x + 1), FieldScalar(0));
        row[static_cast<std::size_t>(e.x)] = c;
    }
    for (std::size_t j = 0; j < r.size(); ++j) r[j] = KPoly(dense[j]);
    return r;
}

BiPoly from_recursive(const Recursive& r) {
    BiPoly p;
    for (std::size_t j = 0; j < r.size(); ++j)
        for (std::size_t i = 0; i < r[j].coeffs().size(); ++i)
            p.add_term(r[j].coeffs()[i], static_cast<int>(i), static_cast<int>(j));
    return p;
}

void trim(Recursive& r) {
    while (!r.empty() && r.back().is_zero()) r.pop_back();
}

KPoly content(const Recursive& r) {
    KPoly g;
    for (const auto& c : r) g = gcd(g, c);
    return g;
}

Recursive primitive_part(Recursive r) {
    KPoly c = content(r);
    if (c.is_zero()) return r;
    for (auto& x : r) x = x / c;
    return r;
}

Recursive pseudo_remainder(Recursive a, const Recursive& b) {
    const KPoly& lb = b.back();
    while (a.size() >= b.size() && !a.empty()) {
        const KPoly la = a.back();
        const std::size_t shift = a.size() - b.size();
        for (auto& c : a) c = c * lb;
        for (std::size_t j = 0; j < b.size(); ++j) a[j + shift] = a[j + shift] - la * b[j];
        trim(a);
    }
    return a;
}

}  // namespace

BiPoly gcd(const BiPoly& a, const BiPoly& b) {
    if (a.is_zero() && b.is_zero()) return {};
    if (a.is_zero() || b.is_zero()) {
        const BiPoly& n = a.is_zero() ? b : a;
        return n * n.lead_term().second.inverse();
    }
    Recursive ra = to_recursive(a), rb = to_recursive(b);
    const KPoly cont = gcd(content(ra), content(rb));
    ra = primitive_part(ra);
    rb = primitive_part(rb);
    if (ra.size() < rb.size()) std::swap(ra, rb);
    while (rb.size() > 1) {
        Recursive r = pseudo_remainder(ra, rb);
        ra = std::move(rb);
        rb = primitive_part(r);
        if (rb.empty()) break;
    }
    Recursive g = (rb.size() == 1) ? Recursive{KPoly(FieldScalar(1))} : ra;
    g = primitive_part(g);
    for (auto& c : g) c = c * cont;
    BiPoly result = from_recursive(g);
    return result * result.lead_term().second.inverse();
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    BiPoly parse() {
        skip_ws();
        if (pos_ == text_.size()) fail("empty polynomial");
        BiPoly r = expr();
        skip_ws();
        if (pos_ != text_.size()) {
            if (starts_primary()) fail("juxtaposition is not allowed; use '*'");
            fail(std::string("unexpected character '") + text_[pos_] + "'");
        }
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(ErrorCode::ParseError, msg + " at offset " + std::to_string(pos_) + " in \"" + std::string(text_) + "\"");
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool starts_primary() {
        skip_ws();
        if (pos_ >= text_.size()) return false;
        const char c = text_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || c == 'x' || c == 'y' || c == '(';
    }

    static void check_degree(const BiPoly& p) {
        if (p.total_degree() > kMaxParsedDegree)
            throw Error(ErrorCode::DegreeCapExceeded,
                        "total degree " + std::to_string(p.total_degree()) + " exceeds the cap of " +
                            std::to_string(kMaxParsedDegree));
    }

    BiPoly expr() {
        BiPoly r = term();
        while (true) {
            if (peek('+')) {
                ++pos_;
                r = r + term();
            } else if (peek('-')) {
                ++pos_;
                r = r - term();
            } else {
                return r;
            }
        }
    }

    BiPoly term() {
        BiPoly r = unary();
        while (true) {
            if (peek('*')) {
                ++pos_;
                BiPoly rhs = unary();
                if (r.total_degree() + rhs.total_degree() > kMaxParsedDegree) check_degree(r * rhs);
                r = r * rhs;
            } else if (starts_primary()) {
                fail("juxtaposition is not allowed; use '*'");
            } else {
                return r;
            }
        }
    }

    BiPoly unary() {
        if (peek('-')) {
            ++pos_;
            return -unary();
        }
        if (peek('+')) {
            ++pos_;
            return unary();
        }
        return power();
    }

    BiPoly power() {
        BiPoly base = primary();
        if (!peek('^')) return base;
        ++pos_;
        skip_ws();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail("exponent must be a nonnegative integer");
        const Integer e = digits();
        if (base.is_zero()) return e == 0 ? BiPoly(1) : BiPoly();
        const int deg = std::max(0, base.total_degree());
        if (deg > 0 && e > kMaxParsedDegree / deg) check_degree(BiPoly::term(1, kMaxParsedDegree + 1, 0));
        if (deg == 0 && e > 4096) fail("exponent too large");
        return base.pow(static_cast<unsigned>(e.get_ui()));
    }

    Integer digits() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return Integer(std::string(text_.substr(start, pos_ - start)));
    }

    BiPoly primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == 'x' || c == 'y') {
            ++pos_;
            return c == 'x' ? BiPoly::x() : BiPoly::y();
        }
        if (c == '(') {
            ++pos_;
            BiPoly r = expr();
            if (!peek(')')) fail("expected ')'");
            ++pos_;
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Rational value(digits());
            if (peek('/')) {
                ++pos_;
                skip_ws();
                if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    fail("rational literal needs an integer denominator");
                Integer den = digits();
                if (den == 0) fail("zero denominator");
                value /= Rational(den);
                value.canonicalize();
            }
            return BiPoly(FieldScalar(value));
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

BiPoly parse_polynomial(std::string_view text) { return Parser(text).parse(); }

}  // namespace fibercheck
