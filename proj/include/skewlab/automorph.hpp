#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "skewlab/linalg.hpp"
#include "skewlab/polyring.hpp"

namespace skewlab {

enum class MapClass {
    Linear,
    UnivariateAffine,
    TriangularI,
    TriangularII,
    TriangularIII,
    GeneralizedHenon,
    MonomialMap,
    CompositionList,
    Unclassified,
};

std::string map_class_name(MapClass c);

/// Outcome of an order computation.
struct OrderVerdict {
    enum class Kind { Finite, InfiniteCertified, UnknownBeyondBound };
    Kind kind;
    unsigned long order = 0;  // Finite
    std::string reason;       // certificate text for InfiniteCertified, notes otherwise
    unsigned long bound = 0;  // UnknownBeyondBound

    static OrderVerdict finite(unsigned long n, std::string why = "");
    static OrderVerdict infinite(std::string why);
    static OrderVerdict unknown(unsigned long bound, std::string why = "");

    bool is_finite() const { return kind == Kind::Finite; }
    std::string to_string() const;
};

/// x -> lambda*x + h(y), y -> mu*y + c, possibly with the roles of the two
/// variables exchanged (swapped = true records that the source presentation
/// was the mirror image; parameters are stored in the orientation above).
struct TriangularData {
    Scalar lambda, mu, c;
    UniPoly h; // polynomial in the second variable
    bool swapped = false;
};

/// x -> y, y -> lambda*x + beta(y), deg beta >= 2.
struct HenonData {
    Scalar lambda;
    UniPoly beta;
    bool swapped = false;
};

/// alpha(x_i) = coeffs[i] * prod_j x_j^{exponents[i][j]}.
struct MonomialData {
    std::vector<std::vector<std::int64_t>> exponents;
    std::vector<Scalar> coeffs;
    bool pure = true; // all coefficients equal 1
};

/// An automorphism of a CoeffRing given by generator images. Inverses are
/// either derived (for the recognized families) or supplied, and are always
/// verified by composition before being trusted.
class AlgebraMap {
public:
    static AlgebraMap identity(const CoeffRing& r);
    /// Classifies the images and derives an inverse when the class allows;
    /// maps with no derivable inverse are still constructed but inverse()
    /// throws for them.
    static AlgebraMap from_images(const CoeffRing& r, std::vector<MultiPoly> images);
    /// Same, with an explicit inverse that is verified by composition.
    static AlgebraMap from_images(const CoeffRing& r, std::vector<MultiPoly> images,
                                  std::vector<MultiPoly> inverse_images);
    /// alpha(x_i) = sum_j m(i,j) x_j on a polynomial ring; m must be invertible.
    static AlgebraMap linear(const CoeffRing& r, const Matrix& m);
    /// alpha(x_i) = prod_j x_j^{rows[i][j]} on a Laurent ring; rows must be
    /// unimodular over the integers.
    static AlgebraMap monomial(const CoeffRing& r, const std::vector<std::vector<long>>& rows);

    const CoeffRing& ring() const { return ring_; }
    const std::vector<MultiPoly>& images() const { return images_; }
    const MultiPoly& image(unsigned i) const { return images_.at(i); }

    MapClass map_class() const;
    const std::string& class_detail() const;

    bool has_inverse() const { return inv_images_.has_value(); }
    AlgebraMap inverse() const; // throws domain_error when no inverse is known
    const std::vector<MultiPoly>& inverse_images() const;

    MultiPoly apply(const MultiPoly& f) const;
    MultiPoly apply_inverse(const MultiPoly& f) const;

    /// (this o other): apply `other` first.
    AlgebraMap compose(const AlgebraMap& other) const;
    /// Iterated composition; negative powers need an inverse.
    AlgebraMap pow(long e) const;

    bool is_identity_map() const;
    bool operator==(const AlgebraMap& o) const { return ring_ == o.ring_ && images_ == o.images_; }
    bool operator!=(const AlgebraMap& o) const { return !(*this == o); }

    std::string to_string() const;

    // class data accessors; each throws domain_error on a class mismatch
    const Matrix& linear_matrix() const;
    /// (beta, gamma) of x -> beta*x + gamma.
    const std::pair<Scalar, Scalar>& affine_parts() const;
    const TriangularData& triangular_data() const;
    const HenonData& henon_data() const;
    const MonomialData& monomial_data() const;
    /// Factors of a CompositionList, outermost first.
    const std::vector<AlgebraMap>& factors() const;

private:
    struct ClassData;

    AlgebraMap(CoeffRing r, std::vector<MultiPoly> images);

    CoeffRing ring_;
    std::vector<MultiPoly> images_;
    std::optional<std::vector<MultiPoly>> inv_images_;
    std::shared_ptr<const ClassData> class_;

    void classify_and_derive();
    void verify_inverse() const;
};

/// Exact order test for an invertible matrix.
/// Characteristic 0: certificate route via the squarefree part of the
/// characteristic polynomial matched against cyclotomic polynomials over the
/// candidate set {d : phi(d) <= t*[K:Q]}.
/// Characteristic p: power iteration up to iteration_bound.
OrderVerdict linear_finite_order_test(const Matrix& a, unsigned long iteration_bound = 1000000);

/// Order of an automorphism. Certified analysis for the recognized families
/// (linear, univariate affine, triangular, generalized Henon, monomial);
/// bounded composition for everything else.
OrderVerdict order(const AlgebraMap& a, unsigned long bound = 64);

struct PlaneClassification {
    MapClass cls;
    std::string detail;
    std::optional<TriangularData> tri;   // set for the triangular subclasses
    std::optional<HenonData> henon;      // set for GeneralizedHenon
};

/// Pattern classification for automorphisms of k[x,y]. Matches the stored
/// presentation only; no conjugacy search.
PlaneClassification classify_plane(const AlgebraMap& a);

/// Reduction of a map with rational coefficients into `target`, a ring of
/// the same shape over a prime field. Compositions reduce factor by factor
/// so derived inverses survive; throws domain_error when any coefficient
/// denominator is divisible by the characteristic.
AlgebraMap reduce_mod_p(const AlgebraMap& a, const CoeffRing& target);

} // namespace skewlab
