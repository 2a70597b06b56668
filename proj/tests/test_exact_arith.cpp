#include <doctest.h>

#include <random>

#include "fibercheck/bipoly.hpp"
#include "fibercheck/factor.hpp"

using namespace fibercheck;

namespace {

BiPoly P(const char* s) { return parse_polynomial(s); }

KPoly kpoly(std::initializer_list<long> coeffs) {
    std::vector<FieldScalar> c;
    for (long v : coeffs) c.emplace_back(v);
    return KPoly(std::move(c));
}

BiPoly random_poly(std::mt19937& rng, int max_degree, int max_terms) {
    std::uniform_int_distribution<int> deg(0, max_degree), coef(-4, 4), count(0, max_terms);
    BiPoly p;
    for (int n = count(rng); n > 0; --n) {
        int i = deg(rng), j = deg(rng);
        if (i + j > max_degree) continue;
        p.add_term(FieldScalar(coef(rng)), i, j);
    }
    return p;
}

}  // namespace

TEST_CASE("rational scalars stay in lowest terms") {
    FieldScalar a(Rational(2, 4));
    CHECK(a.to_string() == "1/2");
    FieldScalar b = FieldScalar(Rational(-3, 6)) * FieldScalar(-1);
    CHECK(b == a);
    CHECK((a / FieldScalar(Rational(1, 3))).to_string() == "3/2");
}

TEST_CASE("extension arithmetic is closed and invertible") {
    auto field = make_field(QPoly(std::vector<Rational>{1, 0, 1}));  // a^2 + 1
    FieldScalar i = FieldScalar::generator(field);
    CHECK(i * i == FieldScalar(-1));
    FieldScalar z = i + FieldScalar(2);
    CHECK(z * z.inverse() == FieldScalar(1));
    CHECK(z.norm() == 5);

    auto other = make_field(QPoly(std::vector<Rational>{-2, 0, 1}));
    FieldScalar r2 = FieldScalar::generator(other);
    CHECK_THROWS_WITH_AS(i + r2, doctest::Contains("FieldMismatch"), Error);
}

TEST_CASE("order_at_origin") {
    CHECK(order_at_origin(P("y^2 - x^3")) == 2);
    CHECK(order_at_origin(P("y - x^2")) == 1);
    CHECK_FALSE(order_at_origin(BiPoly()).has_value());
}

TEST_CASE("leading_form") {
    CHECK(leading_form(P("y^2 - x^3")) == P("y^2"));
    CHECK(leading_form(P("x*y - x^3 + y^4")) == P("x*y"));
    CHECK(leading_form(P("y^2 - x^2")) == P("y^2 - x^2"));
    CHECK_THROWS_AS(leading_form(BiPoly()), Error);
}

TEST_CASE("translate") {
    CHECK(translate(P("x"), 1, 0) == P("x + 1"));
    CHECK(translate(P("y^2 - x^2"), 0, 0) == P("y^2 - x^2"));
    CHECK(translate(P("x^2"), -1, 0) == P("x^2 - 2*x + 1"));
    auto f1 = make_field(QPoly(std::vector<Rational>{1, 0, 1}));
    auto f2 = make_field(QPoly(std::vector<Rational>{-2, 0, 1}));
    CHECK_THROWS_AS(translate(P("x"), FieldScalar::generator(f1), FieldScalar::generator(f2)), Error);
}

TEST_CASE("blowup_substitute examples") {
    CHECK(blowup_substitute(P("y^2 - x^3"), 2, TangentDirection::finite(0)) == P("y^2 - x"));
    CHECK(blowup_substitute(P("y^2 - x^2"), 2, TangentDirection::finite(1)) == P("y^2 + 2*y"));
    CHECK(blowup_substitute(P("y^2 - x^4"), 2, TangentDirection::finite(0)) == P("y^2 - x^2"));
    // vertical chart: f(w z, z) / z^m reported with x = z, y = w
    CHECK(blowup_substitute(P("x^2 - y^3"), 2, TangentDirection::vertical_line()) == P("y^2 - x"));
    CHECK_THROWS_WITH_AS(blowup_substitute(P("y^2 - x^3"), 3, TangentDirection::finite(0)),
                         doctest::Contains("NotDivisible"), Error);
}

TEST_CASE("blow-up round trip on a germ catalog") {
    const char* catalog[] = {"y^2 - x^2", "y^2 - x^3",         "y^2 - x^4",          "y^3 - x^4",
                             "x*y*(x - y)", "x*y*(x-y)*(x+y)", "y^2 - x^5 + x^3*y", "(y - x^2)*(y + x^2)",
                             "y^3 - x^5",   "x^2 + y^2",       "y^4 - 2*x^2*y^2 + x^5", "y - x^3"};
    for (const char* text : catalog) {
        BiPoly f = P(text);
        int m = *order_at_origin(f);
        for (const auto& dir : {TangentDirection::finite(0), TangentDirection::finite(Rational(-3, 2)),
                                TangentDirection::vertical_line()}) {
            BiPoly g = blowup_substitute(f, m, dir);
            CHECK_MESSAGE(blowup_pushforward(g, m, dir) == f, text);
        }
    }
}

TEST_CASE("ring laws and order additivity on random polynomials") {
    std::mt19937 rng(20261017);
    for (int trial = 0; trial < 200; ++trial) {
        BiPoly f = random_poly(rng, 5, 6), g = random_poly(rng, 5, 6), h = random_poly(rng, 5, 6);
        CHECK((f + g) + h == f + (g + h));
        CHECK(f * (g + h) == f * g + f * h);
        CHECK(f * g == g * f);
        if (!f.is_zero() && !g.is_zero()) CHECK(*order_at_origin(f * g) == *order_at_origin(f) + *order_at_origin(g));
    }
}

TEST_CASE("univariate_factor examples") {
    auto f1 = univariate_factor(kpoly({0, 2, 1}));  // v^2 + 2v
    REQUIRE(f1.size() == 2);
    CHECK(f1[0].poly == kpoly({0, 1}));
    CHECK(f1[1].poly == kpoly({2, 1}));
    CHECK(f1[0].multiplicity == 1);

    auto f2 = univariate_factor(kpoly({1, 0, 1}));
    REQUIRE(f2.size() == 1);
    CHECK(f2[0].poly == kpoly({1, 0, 1}));

    auto f3 = univariate_factor(kpoly({0, 0, 0, 1}));
    REQUIRE(f3.size() == 1);
    CHECK(f3[0].poly == kpoly({0, 1}));
    CHECK(f3[0].multiplicity == 3);
}

TEST_CASE("factorization over Q reconstructs the input") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coef(-6, 6), deg(1, 3), count(1, 4);
    for (int trial = 0; trial < 60; ++trial) {
        QPoly g(Rational(coef(rng) == 0 ? 3 : 2));
        int pieces = count(rng);
        for (int k = 0; k < pieces; ++k) {
            std::vector<Rational> c;
            int d = deg(rng);
            for (int i = 0; i < d; ++i) c.emplace_back(coef(rng));
            c.emplace_back(1 + (coef(rng) + 6) % 3);
            g = g * QPoly(c);
        }
        auto factors = factor_rational(g);
        QPoly product(g.lead());
        int degree_sum = 0;
        for (const auto& f : factors) {
            for (int e = 0; e < f.multiplicity; ++e) product = product * f.poly;
            degree_sum += f.poly.degree() * f.multiplicity;
        }
        CHECK(product == g);
        CHECK(degree_sum == g.degree());
    }
}

TEST_CASE("factorization needing recombination") {
    // x^4 + 1 is irreducible over Q but splits modulo every prime.
    auto f = factor_rational(QPoly(std::vector<Rational>{1, 0, 0, 0, 1}));
    REQUIRE(f.size() == 1);
    CHECK(f[0].poly.degree() == 4);
    // (x^2 - 2)(x^2 - 3)(x^4 + 1) with large-ish content
    QPoly g = QPoly(std::vector<Rational>{-2, 0, 1}) * QPoly(std::vector<Rational>{-3, 0, 1}) *
              QPoly(std::vector<Rational>{1, 0, 0, 0, 1}) * QPoly(Rational(12));
    auto fg = factor_rational(g);
    REQUIRE(fg.size() == 3);
    CHECK(fg[2].poly.degree() == 4);
}

TEST_CASE("factoring over an extension uses linear factors only") {
    auto field = make_field(QPoly(std::vector<Rational>{1, 0, 1}));  // Q(i)
    FieldScalar i = FieldScalar::generator(field);
    // t^2 + 1 = (t - i)(t + i)
    KPoly g(std::vector<FieldScalar>{FieldScalar(1).lifted_to(field), FieldScalar(0), FieldScalar(1)});
    auto fs = univariate_factor(g);
    REQUIRE(fs.size() == 2);
    KPoly product(FieldScalar(1));
    for (const auto& f : fs) product = product * f.poly;
    CHECK(product == g);

    // t^2 - 2 stays irreducible over Q(i): needs a second layer.
    KPoly h(std::vector<FieldScalar>{FieldScalar(-2).lifted_to(field), FieldScalar(0), FieldScalar(1)});
    CHECK_THROWS_WITH_AS(univariate_factor(h), doctest::Contains("ExtensionTowerUnsupported"), Error);
    auto full = factor_over_extension(h, field);
    CHECK(full.size() == 1);
    (void)i;
}

TEST_CASE("parser grammar") {
    CHECK(P("y^2 - x^3").to_string() == "-x^3 + y^2");
    CHECK(P("1/2*x + 3/4") == BiPoly::term(Rational(1, 2), 1, 0) + BiPoly(FieldScalar(Rational(3, 4))));
    CHECK(P(" ( x + y ) ^ 2 ") == P("x^2 + 2*x*y + y^2"));
    CHECK(P("-x^2") == BiPoly::term(-1, 2, 0));
    CHECK_THROWS_WITH_AS(P("2x"), doctest::Contains("juxtaposition"), Error);
    CHECK_THROWS_WITH_AS(P("x y"), doctest::Contains("juxtaposition"), Error);
    CHECK_THROWS_WITH_AS(P("x^-1"), doctest::Contains("ParseError"), Error);
    CHECK_THROWS_WITH_AS(P("z + 1"), doctest::Contains("ParseError"), Error);
    CHECK_THROWS_WITH_AS(P("x^65"), doctest::Contains("DegreeCapExceeded"), Error);
    CHECK_THROWS_WITH_AS(P("(x+y)^40*(x+y)^40"), doctest::Contains("DegreeCapExceeded"), Error);
    CHECK(P("x^64").total_degree() == 64);
    // to_string output parses back
    BiPoly f = P("3/2*x^2*y - 7*y^3 + x - 1");
    CHECK(P(f.to_string().c_str()) == f);
}

TEST_CASE("bivariate gcd and exact division") {
    BiPoly a = P("(y - x)^2*(y + x)");
    BiPoly g = gcd(a, a.derivative_x());
    CHECK(g == P("y - x"));
    CHECK(exact_divide(a, g) == P("(y - x)*(y + x)"));
    CHECK_THROWS_AS(exact_divide(P("x^2 + y"), P("x + y")), Error);
    CHECK(gcd(P("x^2*y^4"), P("x*y^3")) == P("x*y^3"));
}
