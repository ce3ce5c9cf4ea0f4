#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "skewlab/errors.hpp"

namespace skewlab {

enum class FieldKind {
    Rationals,  // Q
    Cyclotomic, // Q(zeta_n) = Q[t]/(Phi_n(t))
    PrimeField, // F_p, p a machine-word prime
};

/// Description of one of the three supported exact base fields.
/// Value type; equality means "same field".
class FieldSpec {
public:
    static FieldSpec rationals();
    /// Q(zeta_n). Requires n >= 1; n = 1 and n = 2 still carry a zeta
    /// (equal to 1 resp. -1) but the field is Q in disguise, degree 1.
    static FieldSpec cyclotomic(unsigned long n);
    /// F_p. Rejects p < 2 and composite p.
    static FieldSpec prime_field(std::uint64_t p);

    FieldKind kind() const { return kind_; }
    /// n for Q(zeta_n); meaningless otherwise.
    unsigned long cyclotomic_index() const { return n_; }
    /// p for F_p, 0 in characteristic zero.
    std::uint64_t characteristic() const { return p_; }
    /// Dimension over Q for characteristic-zero fields (1 or phi(n));
    /// 1 for F_p (dimension over the prime field).
    unsigned long degree() const { return degree_; }

    bool operator==(const FieldSpec& o) const {
        return kind_ == o.kind_ && n_ == o.n_ && p_ == o.p_;
    }
    bool operator!=(const FieldSpec& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    FieldSpec(FieldKind k, unsigned long n, std::uint64_t p, unsigned long deg)
        : kind_(k), n_(n), p_(p), degree_(deg) {}

    FieldKind kind_;
    unsigned long n_; // cyclotomic index
    std::uint64_t p_; // characteristic
    unsigned long degree_;
};

/// Element of a FieldSpec field, in canonical form.
///   Rationals: mpq_class, canonicalized.
///   PrimeField: least nonnegative residue.
///   Cyclotomic: coordinates in the power basis 1, zeta, ..., zeta^{phi(n)-1},
///   reduced modulo Phi_n.
/// Arithmetic between scalars of different fields throws domain_error.
class Scalar {
public:
    /// Zero of Q. A default constructor keeps Scalar regular for containers.
    Scalar();

    static Scalar zero(const FieldSpec& f);
    static Scalar one(const FieldSpec& f);
    static Scalar from_int(const FieldSpec& f, long v);
    static Scalar from_mpq(const FieldSpec& f, const mpq_class& v);
    /// The distinguished generator zeta of Q(zeta_n).
    static Scalar zeta(const FieldSpec& f);

    const FieldSpec& field() const { return field_; }

    bool is_zero() const;
    bool is_one() const;

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const; // throws on zero divisor
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    Scalar inverse() const;
    /// Integer power, negative allowed for nonzero scalars.
    Scalar pow(long e) const;

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /// Canonical text form, reparseable by the spec-file expression grammar.
    std::string to_string() const;

    // Representation accessors; each checks the field kind.
    const mpq_class& rational_value() const;
    std::uint64_t residue() const;
    /// Power-basis coordinates, length phi(n), lowest degree first.
    const std::vector<mpq_class>& cyclotomic_coords() const;

    /// True if the scalar lies in the prime field (Q resp. F_p) inside its
    /// field; for such values rational_value()/residue() are meaningful.
    bool is_prime_field_value() const;
    /// The rational number this scalar represents, if it lies in Q
    /// (characteristic zero only).
    std::optional<mpq_class> as_rational() const;

private:
    struct CycVec {
        std::vector<mpq_class> c; // length phi(n)
        bool operator==(const CycVec& o) const { return c == o.c; }
    };

    FieldSpec field_;
    std::variant<mpq_class, std::uint64_t, CycVec> rep_;

    explicit Scalar(const FieldSpec& f) : field_(f), rep_(mpq_class(0)) {}
    void reduce_cyclotomic();
};

struct RootOfUnityResult {
    bool is_root = false;
    unsigned long order = 0; // multiplicative order when is_root
};

/// Decides whether a is a root of unity in its field, and if so returns the
/// exact multiplicative order. Exact in all three supported fields.
RootOfUnityResult is_root_of_unity(const Scalar& a);

/// Euler totient.
unsigned long euler_phi(unsigned long n);

/// Deterministic primality test for 64-bit integers.
bool is_prime_u64(std::uint64_t n);

/// Prime factorization, ascending, with multiplicity collapsed:
/// returns (prime, exponent) pairs.
std::vector<std::pair<std::uint64_t, unsigned>> factor_u64(std::uint64_t n);

/// Sorted list of all divisors of n.
std::vector<unsigned long> divisors_u64(unsigned long n);

/// Image of a rational under the reduction map Z_(p) -> F_p. The target must
/// be a prime field; a denominator divisible by p is a domain_error, and a
/// cyclotomic source is unsupported.
Scalar reduce_mod_p(const Scalar& v, const FieldSpec& target);

namespace detail {
/// Coefficients of the n-th cyclotomic polynomial over Q, constant term
/// first, length phi(n)+1, leading coefficient 1. Cached.
const std::vector<mpq_class>& cyclotomic_coeffs(unsigned long n);
/// Residue arithmetic helpers used across the library.
std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m);
std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t m);
} // namespace detail

} // namespace skewlab
