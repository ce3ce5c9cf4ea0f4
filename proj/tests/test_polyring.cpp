#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "skewlab/polyring.hpp"

using namespace skewlab;

namespace {

const FieldSpec Q = FieldSpec::rationals();

Scalar q(long n, long d = 1) {
    mpq_class v(n, d);
    v.canonicalize();
    return Scalar::from_mpq(Q, v);
}

// random polynomial with small support
MultiPoly random_poly(const CoeffRing& r, std::mt19937_64& rng, int max_exp = 3) {
    std::uniform_int_distribution<int> nterms(0, 4);
    std::uniform_int_distribution<int> expd(r.negative_exponents_allowed() ? -max_exp : 0, max_exp);
    std::uniform_int_distribution<long> coeffd(-5, 5);
    MultiPoly p = MultiPoly::zero(r);
    int k = nterms(rng);
    for (int i = 0; i < k; ++i) {
        std::vector<std::int32_t> e(r.arity());
        for (auto& x : e) x = expd(rng);
        p += MultiPoly::term(r, Monomial(e), Scalar::from_int(r.field(), coeffd(rng)));
    }
    return p;
}

} // namespace

TEST_CASE("grlex order on Q[x,y]") {
    // x^2 > xy > y^2 > x > y > 1
    auto m = [](std::int32_t a, std::int32_t b) { return Monomial(std::vector<std::int32_t>{a, b}); };
    std::vector<Monomial> desc = {m(2, 0), m(1, 1), m(0, 2), m(1, 0), m(0, 1), m(0, 0)};
    for (std::size_t i = 0; i + 1 < desc.size(); ++i) {
        CHECK(grlex_less(desc[i + 1], desc[i]));
        CHECK_FALSE(grlex_less(desc[i], desc[i + 1]));
    }
    CHECK_FALSE(grlex_less(m(1, 1), m(1, 1)));
}

TEST_CASE("polynomial arithmetic and printing") {
    CoeffRing R = CoeffRing::polynomial(Q, {"x", "y"});
    MultiPoly x = MultiPoly::variable(R, 0);
    MultiPoly y = MultiPoly::variable(R, 1);
    MultiPoly one = MultiPoly::from_int(R, 1);

    MultiPoly f = (x + y) * (x - y);
    CHECK(f == x * x - y * y);
    CHECK(f.to_string() == "x^2 - y^2");
    CHECK((x * q(3) - y * q(1, 2) + one * q(-4)).to_string() == "3*x - 1/2*y - 4");
    CHECK((x.pow(3) + x * y * q(2)).leading_monomial() ==
          Monomial(std::vector<std::int32_t>{3, 0}));
    CHECK(f.total_degree() == 2);
    CHECK(f.degree_in(0) == 2);
    CHECK(MultiPoly::zero(R).to_string() == "0");
    CHECK((-(x * y)).to_string() == "-x*y");
    CHECK((x - x).is_zero());

    // units
    CHECK(one.is_unit());
    CHECK((one * q(5)).unit_inverse() == one * q(1, 5));
    CHECK_FALSE(x.is_unit());
    CHECK_THROWS_AS(x.unit_inverse(), domain_error);
}

TEST_CASE("ring axioms on random samples") {
    std::mt19937_64 rng(420260814u);
    CoeffRing P = CoeffRing::polynomial(Q, {"x", "y"});
    CoeffRing L = CoeffRing::laurent(FieldSpec::prime_field(5), {"u", "v"});
    for (const CoeffRing& R : {P, L}) {
        for (int i = 0; i < 40; ++i) {
            MultiPoly a = random_poly(R, rng);
            MultiPoly b = random_poly(R, rng);
            MultiPoly c = random_poly(R, rng);
            CHECK(a + b == b + a);
            CHECK((a + b) + c == a + (b + c));
            CHECK(a * b == b * a);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + MultiPoly::zero(R) == a);
            CHECK(a * MultiPoly::from_int(R, 1) == a);
            CHECK((a - a).is_zero());
        }
    }
}

TEST_CASE("laurent units and exponents") {
    CoeffRing L = CoeffRing::laurent(Q, {"x", "y"});
    MultiPoly x = MultiPoly::variable(L, 0);
    MultiPoly y = MultiPoly::variable(L, 1);
    MultiPoly xinv = x.unit_inverse();
    CHECK(x * xinv == MultiPoly::from_int(L, 1));
    CHECK(xinv.to_string() == "x^-1");
    MultiPoly u = MultiPoly::term(L, Monomial(std::vector<std::int32_t>{-2, 3}), q(7));
    CHECK(u.is_unit());
    CHECK(u * u.unit_inverse() == MultiPoly::from_int(L, 1));
    CHECK_FALSE((x + y).is_unit());

    // negative exponents are rejected outside Laurent rings
    CoeffRing P = CoeffRing::polynomial(Q, {"x"});
    CHECK_THROWS_AS(MultiPoly::term(P, Monomial(std::vector<std::int32_t>{-1}), q(1)),
                    domain_error);
}

TEST_CASE("divide_by_principal in Q[x,y]") {
    CoeffRing R = CoeffRing::polynomial(Q, {"x", "y"});
    MultiPoly x = MultiPoly::variable(R, 0);
    MultiPoly y = MultiPoly::variable(R, 1);
    MultiPoly one = MultiPoly::from_int(R, 1);

    // frozen oracle: x^2*y + x by x*y - 1 gives q = x, r = 2x
    MultiPoly f = x * x * y + x;
    MultiPoly rho = x * y - one;
    auto [quo, rem] = divide_by_principal(f, rho);
    CHECK(quo == x);
    CHECK(rem == x * q(2));
    CHECK(f == quo * rho + rem);

    // no term of the remainder is divisible by LT(rho)
    for (const auto& [m, c] : rem.terms()) {
        (void)c;
        CHECK_FALSE(rho.leading_monomial().divides(m));
    }

    // randomized division invariant
    std::mt19937_64 rng(520260814u);
    int checked = 0;
    while (checked < 60) {
        MultiPoly a = random_poly(R, rng);
        MultiPoly d = random_poly(R, rng);
        if (d.is_zero()) continue;
        auto [qq, rr] = divide_by_principal(a, d);
        CHECK(a == qq * d + rr);
        for (const auto& [m, c] : rr.terms()) {
            (void)c;
            CHECK_FALSE(d.leading_monomial().divides(m));
        }
        ++checked;
    }
}

TEST_CASE("divide_by_principal in Laurent rings decides divisibility") {
    CoeffRing L = CoeffRing::laurent(Q, {"x"});
    MultiPoly x = MultiPoly::variable(L, 0);
    MultiPoly one = MultiPoly::from_int(L, 1);
    // rho = x^{-1} + 1 = x^{-1}(1 + x); f = x + x^2 = x^2 * (x^{-1} + 1)... check
    MultiPoly rho = x.unit_inverse() + one;
    MultiPoly f = x + x * x;
    auto [quo, rem] = divide_by_principal(f, rho);
    CHECK(rem.is_zero());
    CHECK(f == quo * rho + rem);
    // and a non-multiple leaves a nonzero remainder
    auto [q2, r2] = divide_by_principal(x + one * q(2), rho);
    CHECK_FALSE(r2.is_zero());
    CHECK(x + one * q(2) == q2 * rho + r2);

    std::mt19937_64 rng(620260814u);
    int checked = 0;
    while (checked < 40) {
        MultiPoly a = random_poly(L, rng);
        MultiPoly d = random_poly(L, rng);
        if (d.is_zero()) continue;
        auto [qq, rr] = divide_by_principal(a, d);
        CHECK(a == qq * d + rr);
        // exact multiples always reduce to zero
        auto [q3, r3] = divide_by_principal(a * d, d);
        CHECK(r3.is_zero());
        CHECK(q3 * d == a * d);
        ++checked;
    }
}

TEST_CASE("substitute is a ring map") {
    CoeffRing R = CoeffRing::polynomial(Q, {"x", "y"});
    MultiPoly x = MultiPoly::variable(R, 0);
    MultiPoly y = MultiPoly::variable(R, 1);
    std::vector<MultiPoly> images = {y, x + y * y}; // x -> y, y -> x + y^2

    std::mt19937_64 rng(720260814u);
    for (int i = 0; i < 30; ++i) {
        MultiPoly a = random_poly(R, rng);
        MultiPoly b = random_poly(R, rng);
        CHECK(substitute(a + b, images) == substitute(a, images) + substitute(b, images));
        CHECK(substitute(a * b, images) == substitute(a, images) * substitute(b, images));
    }
    CHECK(substitute(x, images) == y);
    CHECK(substitute(MultiPoly::from_int(R, 1), images) == MultiPoly::from_int(R, 1));

    // Laurent variables need unit images
    CoeffRing L = CoeffRing::laurent(Q, {"x", "y"});
    MultiPoly lx = MultiPoly::variable(L, 0);
    MultiPoly ly = MultiPoly::variable(L, 1);
    CHECK_THROWS_AS(substitute(lx, std::vector<MultiPoly>{lx + ly, ly}), domain_error);
    // Jordan images are fine: x -> y*x^{-1}, y -> x
    MultiPoly jx = ly * lx.unit_inverse();
    CHECK(substitute(lx * ly, std::vector<MultiPoly>{jx, lx}) == jx * lx);
}

TEST_CASE("univariate quotient ring") {
    CoeffRing P = CoeffRing::polynomial(Q, {"x"});
    MultiPoly x = MultiPoly::variable(P, 0);
    MultiPoly m = x * x + MultiPoly::from_int(P, 1); // x^2 + 1
    CoeffRing K = quotient_ring(P, m);
    CHECK(K.kind() == RingKind::UnivariateQuotient);
    CHECK(K.modulus() == m);

    MultiPoly xb = MultiPoly::variable(K, 0);
    CHECK(xb * xb == MultiPoly::from_int(K, -1)); // x^2 = -1
    CHECK((xb * xb * xb * xb).is_one());
    // reduction map
    MultiPoly f = x.pow(3) + x * q(2);               // x^3 + 2x
    CHECK(into_quotient(K, f) == xb);                // x^3 + 2x = x(x^2+1) + x
    CHECK(lift_from_quotient(xb) == x);
    // idempotent reduction
    CHECK(into_quotient(K, lift_from_quotient(into_quotient(K, f))) == into_quotient(K, f));
    // units: x is a unit mod x^2+1 with inverse -x
    CHECK(xb.is_unit());
    CHECK(xb.unit_inverse() == -xb);
    // non-unit in a split quotient: x-1 mod x^2-1
    CoeffRing Ksplit = quotient_ring(P, x * x - MultiPoly::from_int(P, 1));
    MultiPoly xs = MultiPoly::variable(Ksplit, 0);
    CHECK_FALSE((xs - MultiPoly::from_int(Ksplit, 1)).is_unit());

    // substitution well-definedness: x -> -x preserves x^2+1, x -> x+1 does not
    CHECK_NOTHROW(substitute(xb, std::vector<MultiPoly>{-xb}));
    CHECK_THROWS_AS(substitute(xb, std::vector<MultiPoly>{xb + MultiPoly::from_int(K, 1)}),
                    domain_error);
}

TEST_CASE("coordinate affine quotient ring") {
    CoeffRing P = CoeffRing::polynomial(Q, {"x", "y", "z"});
    MultiPoly x = MultiPoly::variable(P, 0);
    MultiPoly y = MultiPoly::variable(P, 1);
    MultiPoly z = MultiPoly::variable(P, 2);
    // kill z, send y to 1
    CoeffRing R = quotient_ring(P, {{2u, q(0)}, {1u, q(1)}});
    MultiPoly f = into_quotient(R, x * y + z * z + y.pow(3) * q(2));
    // x*1 + 0 + 2
    CHECK(f == MultiPoly::variable(R, 0) + MultiPoly::from_int(R, 2));
    CHECK(into_quotient(R, z).is_zero());
    CHECK(into_quotient(R, y).is_one());
    CHECK(f.is_unit() == false);
    CHECK(MultiPoly::from_int(R, 3).is_unit());
}

TEST_CASE("evaluation") {
    CoeffRing R = CoeffRing::polynomial(Q, {"x", "y"});
    MultiPoly x = MultiPoly::variable(R, 0);
    MultiPoly y = MultiPoly::variable(R, 1);
    MultiPoly f = x * x * y - y * q(3) + MultiPoly::from_int(R, 7);
    CHECK(eval_at(f, {q(2), q(1, 2)}) == q(2) - q(3, 2) + q(7));

    CoeffRing L = CoeffRing::laurent(Q, {"x"});
    MultiPoly u = MultiPoly::variable(L, 0).unit_inverse();
    CHECK(eval_at(u, {q(4)}) == q(1, 4));
    CHECK_THROWS_AS(eval_at(u, {q(0)}), domain_error);
}

TEST_CASE("dense univariate bridge") {
    CoeffRing P = CoeffRing::polynomial(Q, {"x", "y"});
    MultiPoly y = MultiPoly::variable(P, 1);
    MultiPoly f = y * y * q(3) + MultiPoly::from_int(P, 1);
    UniPoly u = to_unipoly(f, 1);
    CHECK(u.degree() == 2);
    CHECK(u.coeff(2) == q(3));
    CHECK(from_unipoly(P, u, 1) == f);
    CHECK_THROWS_AS(to_unipoly(MultiPoly::variable(P, 0) + y, 1), domain_error);
}

TEST_CASE("ring descriptors") {
    CoeffRing P = CoeffRing::polynomial(Q, {"x", "y"});
    CHECK(P.to_string() == "Q[x,y]");
    CHECK(P.var_index("y") == 1u);
    CHECK_FALSE(P.var_index("z").has_value());
    CHECK_THROWS_AS(CoeffRing::polynomial(Q, {"x", "x"}), domain_error);
    CHECK_THROWS_AS(CoeffRing::polynomial(Q, {}), domain_error);
    CoeffRing L = CoeffRing::laurent(FieldSpec::prime_field(3), {"x"});
    CHECK(L.to_string() == "Fp(3)[x^+-1]");
    CHECK(P != L);
    CHECK(P == CoeffRing::polynomial(Q, {"x", "y"}));
}
