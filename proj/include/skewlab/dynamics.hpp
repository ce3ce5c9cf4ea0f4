#pragma once

#include "skewlab/automorph.hpp"
#include "skewlab/unipoly.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace skewlab {

/// A point of K^t, one coordinate per ring variable.
using Point = std::vector<Scalar>;

std::string point_to_string(const Point& a);

/// Point-level shadow of an algebra map: phi(a) evaluates each generator
/// image at a. Under the ideal correspondence alpha sends the maximal
/// ideal of a to the one of phi^{-1}(a); orbit sizes and finiteness are
/// the same in either direction, so orbits are reported for phi itself.
class PointMap {
public:
    explicit PointMap(AlgebraMap alpha);

    const AlgebraMap& map() const { return alpha_; }
    unsigned arity() const { return alpha_.ring().arity(); }
    const FieldSpec& field() const { return alpha_.ring().field(); }

    /// Throws on a zero coordinate when the ring is Laurent.
    Point apply(const Point& a) const;
    Point apply_inverse(const Point& a) const;
    bool has_inverse() const { return alpha_.has_inverse(); }

private:
    AlgebraMap alpha_;
};

PointMap point_map(const AlgebraMap& alpha);

struct PointOrbit {
    Point seed;
    /// Visited points in order; exactly the cycle when periodic, the
    /// first bound+1 points otherwise.
    std::vector<Point> points;
    std::optional<unsigned long> period;  // first return to the seed
    unsigned long bound = 0;              // steps explored when open

    bool is_periodic() const { return period.has_value(); }
};

/// Iterate phi from the seed with first-return detection; equality is
/// exact. A pre-periodic tail that never revisits the seed reports open.
PointOrbit orbit(const PointMap& phi, const Point& seed, unsigned long max_steps);

struct CycleRecord {
    Point representative;  // lexicographically least point of the cycle
    unsigned long length = 0;
};

struct CycleDecomposition {
    std::uint64_t p = 0;
    unsigned arity = 0;
    unsigned long total_points = 0;
    std::vector<CycleRecord> cycles;                     // sorted by representative
    std::map<unsigned long, unsigned long> histogram;    // length -> count
};

/// Full cycle decomposition of F_p^t under phi_alpha; alpha must carry an
/// inverse so the point map is a bijection. Refuses p^t beyond point_cap.
CycleDecomposition periodic_points_ff(const AlgebraMap& alpha,
                                      std::uint64_t point_cap = 65536);

struct SymbolicFixedPoints {
    unsigned period = 1;
    /// Univariate polynomial whose roots are the x-coordinates of the
    /// solutions, in the plane orientation x -> y, y -> lambda x + beta(y).
    UniPoly condition;
    bool swapped = false;     // points below are already swapped back
    bool roots_complete = false;  // the root search decides all K-roots
    std::vector<Scalar> roots;
    std::vector<Point> points;
    std::string note;

    SymbolicFixedPoints() : condition(UniPoly::zero(FieldSpec::rationals())) {}
};

/// Solutions of phi^period = id for a Henon-shaped plane map, period 1 or
/// 2, by direct substitution (the triangular shape eliminates one
/// variable exactly). Period 2 lists all points of period dividing 2.
/// Roots are extracted by exhaustive scan over F_p and by rational-root
/// search over Q; other fields only get linear conditions solved.
SymbolicFixedPoints fixed_points_symbolic(const AlgebraMap& alpha, unsigned period);

struct OrbitalExponentReport {
    unsigned long n = 1;        // 1 + max |m| over detected returns
    std::vector<long> returns;  // all m != 0, |m| <= bound with phi^m(P_i) in P
    unsigned long bound = 0;
    std::string note;           // the answer is relative to the bound
};

/// Scan phi^m(P_i) for every seed and 1 <= |m| <= bound against the set P.
/// Every seed must have an open orbit up to the bound (a periodic seed is
/// an error) and the map must be invertible for the negative directions.
OrbitalExponentReport orbital_exponent(const PointMap& phi, const std::vector<Point>& set,
                                       unsigned long bound);

/// Distinct roots of f in its own field. The flag reports whether every
/// K-root was found: always for degree <= 1, by exhaustive scan over F_p,
/// by rational-root enumeration over Q (with a divisor-count guard);
/// nonlinear polynomials over a cyclotomic field are not attempted.
std::pair<std::vector<Scalar>, bool> field_roots(const UniPoly& f);

/// Least-degree curve through the points: scans total degree 1..max_degree,
/// builds the exact monomial evaluation matrix, and returns a monic
/// element of its nullspace, or nothing when all matrices have full
/// column rank. The ring must be a two-variable polynomial ring.
std::optional<MultiPoly> curve_membership(const CoeffRing& r, const std::vector<Point>& pts,
                                          unsigned max_degree);

std::string orbit_json(const PointOrbit& o);
std::string orbit_csv(const PointOrbit& o);
std::string cycles_json(const CycleDecomposition& d);
std::string cycles_csv(const CycleDecomposition& d);

}  // namespace skewlab
