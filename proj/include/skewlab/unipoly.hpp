#pragma once

#include <string>
#include <utility>
#include <vector>

#include "skewlab/scalar.hpp"

namespace skewlab {

/// Dense univariate polynomial over one of the supported fields.
/// Internal workhorse: cyclotomic moduli, characteristic polynomials,
/// fixed-point conditions. Coefficients are stored constant term first
/// with no trailing zeros; the zero polynomial has empty storage and
/// degree -1.
class UniPoly {
public:
    explicit UniPoly(const FieldSpec& f) : field_(f) {}
    UniPoly(const FieldSpec& f, std::vector<Scalar> coeffs);

    static UniPoly zero(const FieldSpec& f) { return UniPoly(f); }
    static UniPoly constant(const Scalar& c);
    static UniPoly variable(const FieldSpec& f); // the monomial t
    /// c * t^k.
    static UniPoly term(const Scalar& c, unsigned k);

    const FieldSpec& field() const { return field_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Scalar coeff(unsigned i) const;
    const Scalar& leading() const;
    const std::vector<Scalar>& coeffs() const { return c_; }

    UniPoly operator-() const;
    UniPoly operator+(const UniPoly& o) const;
    UniPoly operator-(const UniPoly& o) const;
    UniPoly operator*(const UniPoly& o) const;
    UniPoly operator*(const Scalar& c) const;
    bool operator==(const UniPoly& o) const { return field_ == o.field_ && c_ == o.c_; }
    bool operator!=(const UniPoly& o) const { return !(*this == o); }

    UniPoly pow(unsigned e) const;
    UniPoly monic() const; // throws on zero
    UniPoly derivative() const;
    Scalar eval(const Scalar& x) const;

    /// Quotient and remainder with deg r < deg d. Throws on zero divisor.
    std::pair<UniPoly, UniPoly> divrem(const UniPoly& d) const;

    std::string to_string(const std::string& var = "t") const;

private:
    FieldSpec field_;
    std::vector<Scalar> c_;
    void trim();
};

/// Monic gcd via the Euclidean algorithm; gcd(0, 0) = 0.
UniPoly poly_gcd(const UniPoly& a, const UniPoly& b);

/// The n-th cyclotomic polynomial over Q, monic of degree phi(n).
UniPoly cyclotomic_poly(unsigned long n);

struct RootSearch {
    std::vector<Scalar> roots;            // distinct roots in the coefficient field
    std::vector<unsigned> multiplicities; // parallel to roots
    bool complete = false; // true if roots provably exhausts the field's roots
    bool splits = false;   // true if f factors into linear factors over the field
    std::string note;      // why the search fell short, if it did
};

/// Roots of a nonzero f in its own coefficient field.
///   Q: rational-root search on the cleared-denominator integer polynomial
///      with repeated deflation; complete unless a coefficient resists
///      factorization at desk scale.
///   F_p: exhaustive residue scan; refuses p above scan_cap.
///   Q(zeta_n): exact for degree <= 1, otherwise incomplete (linear factors
///      with rational roots are still pulled out).
RootSearch roots_in_field(const UniPoly& f, std::uint64_t scan_cap = 1u << 20);

} // namespace skewlab
