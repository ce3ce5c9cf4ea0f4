#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skewlab/scalar.hpp"
#include "skewlab/unipoly.hpp"

namespace skewlab {

class MultiPoly;

/// Exponent vector. Entries may be negative in Laurent rings.
class Monomial {
public:
    explicit Monomial(unsigned arity) : e_(arity, 0) {}
    explicit Monomial(std::vector<std::int32_t> exps) : e_(std::move(exps)) {}

    static Monomial unit(unsigned arity) { return Monomial(arity); }
    static Monomial variable(unsigned arity, unsigned idx, std::int32_t power = 1);

    unsigned arity() const { return static_cast<unsigned>(e_.size()); }
    std::int32_t exponent(unsigned i) const { return e_.at(i); }
    const std::vector<std::int32_t>& exponents() const { return e_; }
    /// Sum of exponents; can be negative for Laurent monomials.
    std::int64_t total_degree() const;
    bool is_unit_monomial() const; // all exponents zero
    bool nonnegative() const;      // no negative exponents

    Monomial operator*(const Monomial& o) const;
    /// Componentwise difference; the result may have negative entries.
    Monomial operator/(const Monomial& o) const;
    /// True if o / *this has no negative entries.
    bool divides(const Monomial& o) const;

    bool operator==(const Monomial& o) const { return e_ == o.e_; }
    bool operator!=(const Monomial& o) const { return !(*this == o); }

private:
    std::vector<std::int32_t> e_;
};

/// Graded lexicographic order with x_0 > x_1 > ... > x_{t-1}:
/// higher total degree first, ties broken by the leftmost differing
/// exponent, larger exponent first.
bool grlex_less(const Monomial& a, const Monomial& b);

struct GrlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const { return grlex_less(b, a); }
};

enum class RingKind {
    Polynomial,               // k[x_1..x_t]
    Laurent,                  // k[x_1^{+-1}..x_t^{+-1}]
    UnivariateQuotient,       // k[x]/(m)
    CoordinateAffineQuotient, // k[x_1..x_t]/(x_i - a_i : i in J)
};

/// Coefficient ring descriptor. Value type; equality is structural.
class CoeffRing {
public:
    static CoeffRing polynomial(const FieldSpec& f, std::vector<std::string> vars);
    static CoeffRing laurent(const FieldSpec& f, std::vector<std::string> vars);

    const FieldSpec& field() const { return field_; }
    RingKind kind() const { return kind_; }
    unsigned arity() const { return static_cast<unsigned>(vars_.size()); }
    const std::vector<std::string>& var_names() const { return vars_; }
    std::optional<unsigned> var_index(const std::string& name) const;

    bool negative_exponents_allowed() const { return kind_ == RingKind::Laurent; }

    /// Modulus of a univariate quotient, as an element of the base ring.
    const MultiPoly& modulus() const;
    /// Assignments of a coordinate quotient: (variable index, value).
    const std::vector<std::pair<unsigned, Scalar>>& assignments() const;
    /// The polynomial ring a quotient was formed from; identity for
    /// non-quotient kinds.
    CoeffRing base_ring() const;

    bool operator==(const CoeffRing& o) const;
    bool operator!=(const CoeffRing& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    friend CoeffRing quotient_ring(const CoeffRing&, const MultiPoly&);
    friend CoeffRing quotient_ring(const CoeffRing&,
                                   const std::vector<std::pair<unsigned, Scalar>>&);

    CoeffRing(const FieldSpec& f, RingKind k, std::vector<std::string> vars)
        : field_(f), kind_(k), vars_(std::move(vars)) {}

    FieldSpec field_;
    RingKind kind_;
    std::vector<std::string> vars_;
    std::shared_ptr<const MultiPoly> modulus_; // UnivariateQuotient
    std::vector<std::pair<unsigned, Scalar>> assignments_; // CoordinateAffineQuotient
};

/// Sparse multivariate polynomial over a CoeffRing, stored as a grlex-sorted
/// term map (leading term first). Elements of quotient rings are kept in
/// canonical reduced form by every operation.
class MultiPoly {
public:
    explicit MultiPoly(CoeffRing ring) : ring_(std::move(ring)) {}

    static MultiPoly zero(const CoeffRing& r) { return MultiPoly(r); }
    static MultiPoly constant(const CoeffRing& r, const Scalar& c);
    static MultiPoly from_int(const CoeffRing& r, long v);
    static MultiPoly variable(const CoeffRing& r, unsigned idx);
    static MultiPoly term(const CoeffRing& r, const Monomial& m, const Scalar& c);

    const CoeffRing& ring() const { return ring_; }
    const std::map<Monomial, Scalar, GrlexGreater>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// The scalar value of a constant polynomial (zero for the zero poly).
    Scalar constant_value() const;
    bool is_one() const;

    const Monomial& leading_monomial() const; // throws on zero
    const Scalar& leading_coeff() const;      // throws on zero
    std::int64_t total_degree() const;        // -1 for zero
    std::int32_t degree_in(unsigned var) const; // max exponent; 0 for zero
    std::int32_t min_exponent_in(unsigned var) const;
    Scalar coeff_of(const Monomial& m) const;

    /// Units: nonzero constants in polynomial rings, single nonzero terms in
    /// Laurent rings, elements coprime to the modulus in univariate
    /// quotients, nonzero constants in coordinate quotients.
    bool is_unit() const;
    MultiPoly unit_inverse() const; // throws if not a unit

    MultiPoly operator-() const;
    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly operator*(const Scalar& c) const;
    MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
    MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
    MultiPoly pow(unsigned e) const;

    bool operator==(const MultiPoly& o) const;
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    /// Canonical text form: grlex-descending terms.
    std::string to_string() const;

private:
    CoeffRing ring_;
    std::map<Monomial, Scalar, GrlexGreater> terms_;

    void insert_term(const Monomial& m, const Scalar& c); // accumulates
    void reduce_in_ring();
    UniPoly to_unipoly_dense() const;
    friend MultiPoly reinterpret_in_ring(const CoeffRing&, const MultiPoly&);
};

/// Applies the ring map sending variable i to images[i]; coefficients map
/// identically. All images must live in one common ring. Laurent sources
/// require unit images; univariate-quotient sources require the modulus to
/// vanish on the image (well-definedness), checked exactly.
MultiPoly substitute(const MultiPoly& f, const std::vector<MultiPoly>& images);

/// Division by a single nonzero divisor with canonical grlex remainder:
/// f = q*rho + r where no term of r is divisible by the leading term of rho.
/// In Laurent rings both sides are first scaled by monomial units to the
/// polynomial subring; r == 0 still characterizes membership in (rho).
/// Quotient-ring kinds are not supported here.
std::pair<MultiPoly, MultiPoly> divide_by_principal(const MultiPoly& f, const MultiPoly& rho);

/// k[x]/(m): base must be a univariate polynomial ring, m nonconstant.
CoeffRing quotient_ring(const CoeffRing& base, const MultiPoly& univariate_modulus);
/// k[x_1..x_t]/(x_i - a_i : i in J): base must be a polynomial ring.
CoeffRing quotient_ring(const CoeffRing& base,
                        const std::vector<std::pair<unsigned, Scalar>>& assignments);

/// The reduction map of a quotient ring: reinterprets a base-ring element in
/// the quotient and reduces to canonical form. For non-quotient targets this
/// checks the ring matches and returns f unchanged.
MultiPoly into_quotient(const CoeffRing& quotient, const MultiPoly& f);

/// Canonical representative of a quotient element in the base ring.
MultiPoly lift_from_quotient(const MultiPoly& f);

/// Exact evaluation at a point (one scalar per variable). Negative exponents
/// require the corresponding coordinate to be nonzero.
Scalar eval_at(const MultiPoly& f, const std::vector<Scalar>& point);

/// Views a univariate MultiPoly (all terms in variable `var` only) as a
/// dense UniPoly; throws if other variables occur.
UniPoly to_unipoly(const MultiPoly& f, unsigned var);

/// Coefficientwise reduction into `target`, which must have a prime field
/// over the same variables and ring kind. See reduce_mod_p on Scalar for the
/// error contract.
MultiPoly reduce_mod_p(const MultiPoly& f, const CoeffRing& target);
/// Inverse of to_unipoly into the given ring/variable.
MultiPoly from_unipoly(const CoeffRing& r, const UniPoly& p, unsigned var);

} // namespace skewlab
