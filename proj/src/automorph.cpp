#include "skewlab/automorph.hpp"

#include <algorithm>
#include <numeric>

namespace skewlab {

std::string map_class_name(MapClass c) {
    switch (c) {
    case MapClass::Linear: return "Linear";
    case MapClass::UnivariateAffine: return "UnivariateAffine";
    case MapClass::TriangularI: return "TriangularI";
    case MapClass::TriangularII: return "TriangularII";
    case MapClass::TriangularIII: return "TriangularIII";
    case MapClass::GeneralizedHenon: return "GeneralizedHenon";
    case MapClass::MonomialMap: return "Monomial";
    case MapClass::CompositionList: return "CompositionList";
    case MapClass::Unclassified: return "Unclassified";
    }
    throw internal_error("map_class_name: bad class");
}

OrderVerdict OrderVerdict::finite(unsigned long n, std::string why) {
    return {Kind::Finite, n, std::move(why), 0};
}
OrderVerdict OrderVerdict::infinite(std::string why) {
    return {Kind::InfiniteCertified, 0, std::move(why), 0};
}
OrderVerdict OrderVerdict::unknown(unsigned long bound, std::string why) {
    return {Kind::UnknownBeyondBound, 0, std::move(why), bound};
}

std::string OrderVerdict::to_string() const {
    switch (kind) {
    case Kind::Finite:
        return "Finite(" + std::to_string(order) + ")" + (reason.empty() ? "" : " [" + reason + "]");
    case Kind::InfiniteCertified:
        return "InfiniteCertified [" + reason + "]";
    case Kind::UnknownBeyondBound:
        return "UnknownBeyondBound(" + std::to_string(bound) + ")" +
               (reason.empty() ? "" : " [" + reason + "]");
    }
    throw internal_error("OrderVerdict::to_string: bad kind");
}

// ---------------------------------------------------------------------------
// class data and pattern matching

struct AlgebraMap::ClassData {
    MapClass cls = MapClass::Unclassified;
    std::string detail;
    std::optional<Matrix> matrix;
    std::optional<std::pair<Scalar, Scalar>> affine;
    std::optional<TriangularData> tri;
    std::optional<HenonData> henon;
    std::optional<MonomialData> mono;
    std::vector<AlgebraMap> factors;
};

namespace {

// evaluate a dense univariate polynomial at a MultiPoly argument
MultiPoly unipoly_at(const UniPoly& p, const MultiPoly& arg) {
    MultiPoly acc = MultiPoly::zero(arg.ring());
    for (std::size_t i = p.coeffs().size(); i-- > 0;)
        acc = acc * arg + MultiPoly::constant(arg.ring(), p.coeffs()[i]);
    return acc;
}

// exchange the two variables of an arity-2 polynomial
MultiPoly swap_vars(const MultiPoly& f) {
    MultiPoly out = MultiPoly::zero(f.ring());
    for (const auto& [m, c] : f.terms()) {
        Monomial sw(std::vector<std::int32_t>{m.exponent(1), m.exponent(0)});
        out += MultiPoly::term(f.ring(), sw, c);
    }
    return out;
}

// sigma o alpha o sigma for the variable swap sigma on two images
std::vector<MultiPoly> conjugate_by_swap(const std::vector<MultiPoly>& images) {
    return {swap_vars(images[1]), swap_vars(images[0])};
}

// f = beta*x_var + gamma with no other variables involved
std::optional<std::pair<Scalar, Scalar>> split_affine_in(const MultiPoly& f, unsigned var) {
    const CoeffRing& r = f.ring();
    Scalar beta = Scalar::zero(r.field());
    Scalar gamma = Scalar::zero(r.field());
    for (const auto& [m, c] : f.terms()) {
        if (m.is_unit_monomial()) {
            gamma = c;
        } else if (m == Monomial::variable(r.arity(), var)) {
            beta = c;
        } else {
            return std::nullopt;
        }
    }
    return std::make_pair(beta, gamma);
}

// f = lambda*x + h(y) over k[x,y]; h returned as a dense polynomial in y
std::optional<std::pair<Scalar, UniPoly>> split_x_plus_h(const MultiPoly& f) {
    const CoeffRing& r = f.ring();
    Scalar lambda = Scalar::zero(r.field());
    UniPoly h = UniPoly::zero(r.field());
    for (const auto& [m, c] : f.terms()) {
        if (m.exponent(0) == 1 && m.exponent(1) == 0) {
            lambda = c;
        } else if (m.exponent(0) == 0) {
            h = h + UniPoly::term(c, static_cast<unsigned>(m.exponent(1)));
        } else {
            return std::nullopt;
        }
    }
    return std::make_pair(lambda, h);
}

std::optional<TriangularData> match_triangular_oriented(const std::vector<MultiPoly>& images) {
    auto xs = split_x_plus_h(images[0]);
    if (!xs || xs->first.is_zero()) return std::nullopt;
    auto ys = split_affine_in(images[1], 1);
    if (!ys || ys->first.is_zero()) return std::nullopt;
    return TriangularData{xs->first, ys->first, ys->second, xs->second, false};
}

std::optional<TriangularData> match_triangular(const std::vector<MultiPoly>& images) {
    if (auto d = match_triangular_oriented(images)) return d;
    if (auto d = match_triangular_oriented(conjugate_by_swap(images))) {
        d->swapped = true;
        return d;
    }
    return std::nullopt;
}

std::optional<HenonData> match_henon_oriented(const std::vector<MultiPoly>& images) {
    const CoeffRing& r = images[0].ring();
    if (images[0] != MultiPoly::variable(r, 1)) return std::nullopt;
    auto ys = split_x_plus_h(images[1]);
    if (!ys || ys->first.is_zero()) return std::nullopt;
    if (ys->second.degree() < 2) return std::nullopt;
    return HenonData{ys->first, ys->second, false};
}

std::optional<HenonData> match_henon(const std::vector<MultiPoly>& images) {
    if (auto d = match_henon_oriented(images)) return d;
    if (auto d = match_henon_oriented(conjugate_by_swap(images))) {
        d->swapped = true;
        return d;
    }
    return std::nullopt;
}

// TriangularI/II/III per the stored normal form, or Unclassified
MapClass subclass_triangular(const TriangularData& d, std::string& detail) {
    const bool h_zero = d.h.is_zero();
    const bool c_zero = d.c.is_zero();
    if (h_zero && c_zero) {
        detail = "lambda=" + d.lambda.to_string() + ", mu=" + d.mu.to_string();
        return MapClass::TriangularI;
    }
    if (h_zero && d.mu.is_one() && !c_zero) {
        detail = "lambda=" + d.lambda.to_string() + ", c=" + d.c.to_string();
        return MapClass::TriangularII;
    }
    if (h_zero && !c_zero) {
        // y -> mu*y + c with mu != 1 is conjugate to TriangularI by a shift
        detail = "lambda=" + d.lambda.to_string() + ", mu=" + d.mu.to_string() +
                 ", c=" + d.c.to_string() + " (shift-conjugate to the diagonal type)";
        return MapClass::TriangularI;
    }
    if (!h_zero && c_zero) {
        // eta_i != 0 requires lambda = mu^i
        for (unsigned i = 0; i < d.h.coeffs().size(); ++i) {
            if (d.h.coeffs()[i].is_zero()) continue;
            if (!(d.lambda == d.mu.pow(static_cast<long>(i)))) {
                detail = "eta_" + std::to_string(i) + " breaks lambda = mu^i";
                return MapClass::Unclassified;
            }
        }
        detail = "lambda=" + d.lambda.to_string() + ", mu=" + d.mu.to_string() +
                 ", h=" + d.h.to_string("y");
        return MapClass::TriangularIII;
    }
    detail = "triangular shape with both translation parts";
    return MapClass::Unclassified;
}

bool images_are_linear_forms(const std::vector<MultiPoly>& images) {
    for (const auto& f : images) {
        if (f.is_zero()) return false;
        for (const auto& [m, c] : f.terms()) {
            (void)c;
            if (m.total_degree() != 1 || !m.nonnegative()) return false;
        }
    }
    return true;
}

Matrix linear_matrix_of(const CoeffRing& r, const std::vector<MultiPoly>& images) {
    const unsigned t = r.arity();
    Matrix m(r.field(), t, t);
    for (unsigned i = 0; i < t; ++i)
        for (unsigned j = 0; j < t; ++j)
            m.at(i, j) = images[i].coeff_of(Monomial::variable(t, j));
    return m;
}

std::optional<MonomialData> match_monomial(const std::vector<MultiPoly>& images) {
    MonomialData md;
    for (const auto& f : images) {
        if (f.terms().size() != 1) return std::nullopt;
        const auto& [m, c] = *f.terms().begin();
        std::vector<std::int64_t> row;
        row.reserve(m.arity());
        for (unsigned j = 0; j < m.arity(); ++j) row.push_back(m.exponent(j));
        md.exponents.push_back(std::move(row));
        md.coeffs.push_back(c);
        if (!c.is_one()) md.pure = false;
    }
    return md;
}

Matrix exponent_matrix_over_Q(const MonomialData& md) {
    const FieldSpec Q = FieldSpec::rationals();
    const unsigned t = static_cast<unsigned>(md.exponents.size());
    Matrix m(Q, t, t);
    for (unsigned i = 0; i < t; ++i)
        for (unsigned j = 0; j < t; ++j)
            m.at(i, j) = Scalar::from_int(Q, static_cast<long>(md.exponents[i][j]));
    return m;
}

} // namespace

// ---------------------------------------------------------------------------
// AlgebraMap

AlgebraMap::AlgebraMap(CoeffRing r, std::vector<MultiPoly> images)
    : ring_(std::move(r)), images_(std::move(images)) {}

AlgebraMap AlgebraMap::identity(const CoeffRing& r) {
    std::vector<MultiPoly> images;
    images.reserve(r.arity());
    for (unsigned i = 0; i < r.arity(); ++i) images.push_back(MultiPoly::variable(r, i));
    return from_images(r, std::move(images));
}

AlgebraMap AlgebraMap::from_images(const CoeffRing& r, std::vector<MultiPoly> images) {
    if (images.size() != r.arity()) throw domain_error("one image per generator required");
    for (const auto& f : images) {
        if (f.ring() != r) throw domain_error("image from the wrong ring");
        if (r.kind() == RingKind::Laurent && !f.is_unit())
            throw domain_error("images of Laurent generators must be units");
    }
    AlgebraMap a(r, std::move(images));
    if (r.kind() == RingKind::UnivariateQuotient) {
        // the substitution hom must respect the relation; this throws otherwise
        (void)substitute(MultiPoly::variable(r, 0), a.images_);
    }
    a.classify_and_derive();
    if (a.inv_images_) a.verify_inverse();
    return a;
}

AlgebraMap AlgebraMap::from_images(const CoeffRing& r, std::vector<MultiPoly> images,
                                   std::vector<MultiPoly> inverse_images) {
    if (inverse_images.size() != r.arity()) throw domain_error("one inverse image per generator");
    for (const auto& f : inverse_images)
        if (f.ring() != r) throw domain_error("inverse image from the wrong ring");
    AlgebraMap a = from_images(r, std::move(images));
    a.inv_images_ = std::move(inverse_images);
    a.verify_inverse();
    return a;
}

AlgebraMap AlgebraMap::linear(const CoeffRing& r, const Matrix& m) {
    if (r.kind() != RingKind::Polynomial)
        throw domain_error("linear maps are defined on polynomial rings");
    if (m.rows() != r.arity() || m.cols() != r.arity())
        throw domain_error("matrix size does not match the ring");
    if (!(m.field() == r.field())) throw domain_error("matrix over the wrong field");
    std::vector<MultiPoly> images;
    for (unsigned i = 0; i < r.arity(); ++i) {
        MultiPoly f = MultiPoly::zero(r);
        for (unsigned j = 0; j < r.arity(); ++j)
            f += MultiPoly::variable(r, j) * m.at(i, j);
        images.push_back(std::move(f));
    }
    AlgebraMap a = from_images(r, std::move(images));
    if (a.map_class() != MapClass::Linear)
        throw domain_error("matrix is singular; not an automorphism");
    return a;
}

AlgebraMap AlgebraMap::monomial(const CoeffRing& r, const std::vector<std::vector<long>>& rows) {
    if (r.kind() != RingKind::Laurent)
        throw domain_error("monomial maps are defined on Laurent rings");
    if (rows.size() != r.arity()) throw domain_error("one exponent row per generator");
    std::vector<MultiPoly> images;
    for (unsigned i = 0; i < r.arity(); ++i) {
        if (rows[i].size() != r.arity()) throw domain_error("ragged exponent matrix");
        std::vector<std::int32_t> e;
        e.reserve(r.arity());
        for (long v : rows[i]) e.push_back(static_cast<std::int32_t>(v));
        images.push_back(MultiPoly::term(r, Monomial(std::move(e)), Scalar::one(r.field())));
    }
    AlgebraMap a = from_images(r, std::move(images));
    if (a.map_class() != MapClass::MonomialMap)
        throw domain_error("exponent matrix is not unimodular; not an automorphism");
    return a;
}

void AlgebraMap::classify_and_derive() {
    auto cd = std::make_shared<ClassData>();
    const unsigned t = ring_.arity();
    const FieldSpec& K = ring_.field();

    auto derive_affine_inverse = [&](const Scalar& beta, const Scalar& gamma) {
        MultiPoly x = MultiPoly::variable(ring_, 0);
        Scalar bi = beta.inverse();
        inv_images_ = std::vector<MultiPoly>{x * bi - MultiPoly::constant(ring_, bi * gamma)};
    };

    switch (ring_.kind()) {
    case RingKind::Laurent: {
        auto md = match_monomial(images_);
        if (md) {
            Matrix eq = exponent_matrix_over_Q(*md);
            Scalar det = determinant(eq);
            const FieldSpec Q = FieldSpec::rationals();
            if (det == Scalar::from_int(Q, 1) || det == Scalar::from_int(Q, -1)) {
                cd->cls = MapClass::MonomialMap;
                cd->mono = *md;
                cd->detail = md->pure ? "pure monomial map" : "scaled monomial map";
                // inverse: exponent matrix inverse, coefficients solved to match
                Matrix finv = *skewlab::inverse(eq);
                std::vector<MultiPoly> inv;
                for (unsigned i = 0; i < t; ++i) {
                    std::vector<std::int32_t> e(t, 0);
                    Scalar coeff = Scalar::one(K);
                    for (unsigned j = 0; j < t; ++j) {
                        const mpq_class& q = finv.at(i, j).rational_value();
                        if (q.get_den() != 1) throw internal_error("non-integer unimodular inverse");
                        long v = static_cast<long>(q.get_num().get_si());
                        e[j] = static_cast<std::int32_t>(v);
                        if (!md->coeffs[j].is_one()) coeff *= md->coeffs[j].pow(v);
                    }
                    inv.push_back(MultiPoly::term(ring_, Monomial(e), coeff.inverse()));
                }
                inv_images_ = std::move(inv);
            } else {
                cd->cls = MapClass::Unclassified;
                cd->detail = "monomial images with non-unimodular exponent matrix";
            }
        } else {
            cd->cls = MapClass::Unclassified;
            cd->detail = "Laurent map outside the monomial family";
        }
        break;
    }
    case RingKind::Polynomial: {
        if (images_are_linear_forms(images_)) {
            Matrix m = linear_matrix_of(ring_, images_);
            auto minv = skewlab::inverse(m);
            if (minv) {
                cd->cls = MapClass::Linear;
                cd->matrix = m;
                cd->detail = "matrix " + m.to_string();
                std::vector<MultiPoly> inv;
                for (unsigned i = 0; i < t; ++i) {
                    MultiPoly f = MultiPoly::zero(ring_);
                    for (unsigned j = 0; j < t; ++j)
                        f += MultiPoly::variable(ring_, j) * minv->at(i, j);
                    inv.push_back(std::move(f));
                }
                inv_images_ = std::move(inv);
                break;
            }
            cd->cls = MapClass::Unclassified;
            cd->detail = "linear images with a singular matrix";
            break;
        }
        if (t == 1) {
            auto af = split_affine_in(images_[0], 0);
            if (af && !af->first.is_zero()) {
                cd->cls = MapClass::UnivariateAffine;
                cd->affine = *af;
                cd->detail = "beta=" + af->first.to_string() + ", gamma=" + af->second.to_string();
                derive_affine_inverse(af->first, af->second);
            } else {
                cd->cls = MapClass::Unclassified;
                cd->detail = "univariate image is not affine";
            }
            break;
        }
        if (t == 2) {
            if (auto hd = match_henon(images_)) {
                cd->cls = MapClass::GeneralizedHenon;
                cd->henon = *hd;
                cd->detail = "lambda=" + hd->lambda.to_string() + ", beta=" + hd->beta.to_string("y") +
                             (hd->swapped ? " (variables exchanged)" : "");
                // inverse of x -> y, y -> lambda*x + beta(y):
                // x -> lambda^{-1}(y - beta(x)), y -> x
                MultiPoly x = MultiPoly::variable(ring_, 0);
                MultiPoly y = MultiPoly::variable(ring_, 1);
                Scalar li = hd->lambda.inverse();
                std::vector<MultiPoly> inv{(y - unipoly_at(hd->beta, x)) * li, x};
                inv_images_ = hd->swapped ? conjugate_by_swap(inv) : std::move(inv);
                break;
            }
            if (auto td = match_triangular(images_)) {
                std::string detail;
                MapClass cls = subclass_triangular(*td, detail);
                cd->cls = cls;
                cd->detail = detail + (td->swapped ? " (variables exchanged)" : "");
                if (cls != MapClass::Unclassified) cd->tri = *td;
                // x -> lambda^{-1}(x - h(mu^{-1}(y - c))), y -> mu^{-1}(y - c);
                // valid for every triangular shape, tagged or not
                MultiPoly x = MultiPoly::variable(ring_, 0);
                MultiPoly y = MultiPoly::variable(ring_, 1);
                Scalar mi = td->mu.inverse();
                Scalar li = td->lambda.inverse();
                MultiPoly y_inv = (y - MultiPoly::constant(ring_, td->c)) * mi;
                std::vector<MultiPoly> inv{(x - unipoly_at(td->h, y_inv)) * li, y_inv};
                inv_images_ = td->swapped ? conjugate_by_swap(inv) : std::move(inv);
                break;
            }
            cd->cls = MapClass::Unclassified;
            cd->detail = "plane map outside the recognized families";
            break;
        }
        cd->cls = MapClass::Unclassified;
        cd->detail = "no certified family for arity " + std::to_string(t);
        break;
    }
    case RingKind::UnivariateQuotient: {
        auto af = split_affine_in(images_[0], 0);
        if (af && !af->first.is_zero() && ring_.modulus().degree_in(0) >= 2) {
            cd->cls = MapClass::UnivariateAffine;
            cd->affine = *af;
            cd->detail = "beta=" + af->first.to_string() + ", gamma=" + af->second.to_string() +
                         " on " + ring_.to_string();
            try {
                derive_affine_inverse(af->first, af->second);
                verify_inverse();
            } catch (const domain_error&) {
                inv_images_.reset(); // not well defined modulo the relation
            }
        } else {
            cd->cls = MapClass::Unclassified;
            cd->detail = "quotient-ring map outside the affine family";
        }
        break;
    }
    case RingKind::CoordinateAffineQuotient:
        cd->cls = MapClass::Unclassified;
        cd->detail = "coordinate-quotient maps are not classified";
        break;
    }
    class_ = std::move(cd);
}

void AlgebraMap::verify_inverse() const {
    if (!inv_images_) throw internal_error("verify_inverse without inverse");
    for (unsigned i = 0; i < ring_.arity(); ++i) {
        MultiPoly xi = MultiPoly::variable(ring_, i);
        if (substitute((*inv_images_)[i], images_) != xi ||
            substitute(images_[i], *inv_images_) != xi)
            throw domain_error("inverse verification failed on generator " +
                               ring_.var_names()[i]);
    }
}

MapClass AlgebraMap::map_class() const { return class_->cls; }
const std::string& AlgebraMap::class_detail() const { return class_->detail; }

AlgebraMap AlgebraMap::inverse() const {
    if (!inv_images_)
        throw domain_error("no inverse known for this map (unclassified, none supplied)");
    return from_images(ring_, *inv_images_, images_);
}

const std::vector<MultiPoly>& AlgebraMap::inverse_images() const {
    if (!inv_images_)
        throw domain_error("no inverse known for this map (unclassified, none supplied)");
    return *inv_images_;
}

MultiPoly AlgebraMap::apply(const MultiPoly& f) const {
    if (f.ring() != ring_) throw domain_error("apply: element from the wrong ring");
    return substitute(f, images_);
}

MultiPoly AlgebraMap::apply_inverse(const MultiPoly& f) const {
    if (f.ring() != ring_) throw domain_error("apply_inverse: element from the wrong ring");
    return substitute(f, inverse_images());
}

AlgebraMap AlgebraMap::compose(const AlgebraMap& other) const {
    if (ring_ != other.ring_) throw domain_error("composition across different rings");
    std::vector<MultiPoly> images;
    images.reserve(ring_.arity());
    for (unsigned i = 0; i < ring_.arity(); ++i)
        images.push_back(substitute(other.images_[i], images_));

    AlgebraMap c(ring_, std::move(images));
    c.classify_and_derive();
    if (c.inv_images_) {
        c.verify_inverse(); // freshly derived from the composed shape
    } else if (inv_images_ && other.inv_images_) {
        // (a o b) o (b^-1 o a^-1) collapses hom by hom; both operand inverses
        // were verified already, so this one needs no substitution check
        std::vector<MultiPoly> inv;
        inv.reserve(ring_.arity());
        for (unsigned i = 0; i < ring_.arity(); ++i)
            inv.push_back(substitute((*inv_images_)[i], *other.inv_images_));
        c.inv_images_ = std::move(inv);
    }

    if (c.class_->cls == MapClass::Unclassified && map_class() != MapClass::Unclassified &&
        other.map_class() != MapClass::Unclassified) {
        auto cd = std::make_shared<ClassData>(*c.class_);
        cd->cls = MapClass::CompositionList;
        auto push_factors = [&](const AlgebraMap& m) {
            if (m.map_class() == MapClass::CompositionList) {
                for (const auto& f : m.factors()) cd->factors.push_back(f);
            } else {
                cd->factors.push_back(m);
            }
        };
        push_factors(*this);
        push_factors(other);
        cd->detail = "composition of " + std::to_string(cd->factors.size()) + " classified factors";
        c.class_ = std::move(cd);
    }
    return c;
}

AlgebraMap AlgebraMap::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    AlgebraMap acc = identity(ring_);
    AlgebraMap base = *this;
    unsigned long k = static_cast<unsigned long>(e);
    while (k > 0) {
        if (k & 1) acc = acc.compose(base);
        base = base.compose(base);
        k >>= 1;
        if (k == 0) break;
    }
    return acc;
}

bool AlgebraMap::is_identity_map() const {
    for (unsigned i = 0; i < ring_.arity(); ++i)
        if (images_[i] != MultiPoly::variable(ring_, i)) return false;
    return true;
}

std::string AlgebraMap::to_string() const {
    std::string out;
    for (unsigned i = 0; i < ring_.arity(); ++i) {
        if (i) out += ", ";
        out += ring_.var_names()[i] + " -> " + images_[i].to_string();
    }
    return out;
}

const Matrix& AlgebraMap::linear_matrix() const {
    if (!class_->matrix) throw domain_error("not a linear map");
    return *class_->matrix;
}

const std::pair<Scalar, Scalar>& AlgebraMap::affine_parts() const {
    if (!class_->affine) throw domain_error("not a univariate affine map");
    return *class_->affine;
}

const TriangularData& AlgebraMap::triangular_data() const {
    if (!class_->tri) throw domain_error("not a triangular map");
    return *class_->tri;
}

const HenonData& AlgebraMap::henon_data() const {
    if (!class_->henon) throw domain_error("not a generalized Henon map");
    return *class_->henon;
}

const MonomialData& AlgebraMap::monomial_data() const {
    if (!class_->mono) throw domain_error("not a monomial map");
    return *class_->mono;
}

const std::vector<AlgebraMap>& AlgebraMap::factors() const {
    if (class_->cls != MapClass::CompositionList)
        throw domain_error("not a composition list");
    return class_->factors;
}

// ---------------------------------------------------------------------------
// order computations

OrderVerdict linear_finite_order_test(const Matrix& a, unsigned long iteration_bound) {
    if (a.rows() != a.cols()) throw domain_error("order test needs a square matrix");
    const FieldSpec& K = a.field();
    if (determinant(a).is_zero()) throw domain_error("singular matrix has no order");

    if (K.kind() == FieldKind::PrimeField) {
        // order divides |GL_t(F_p)|; iterate up to that group order or the bound
        const unsigned t = a.rows();
        unsigned __int128 group = 1;
        const unsigned __int128 clamp = static_cast<unsigned __int128>(4) * 1000000000000000000ull;
        unsigned __int128 pt = 1;
        for (unsigned i = 0; i < t; ++i) {
            pt *= K.characteristic();
            if (pt > clamp) { pt = clamp; break; }
        }
        unsigned __int128 pi = 1;
        for (unsigned i = 0; i < t; ++i) {
            unsigned __int128 factor = pt > pi ? pt - pi : 1;
            group *= factor;
            if (group > clamp) { group = clamp; break; }
            pi *= K.characteristic();
        }
        unsigned long limit = iteration_bound;
        if (group < limit) limit = static_cast<unsigned long>(group);
        Matrix acc = a;
        for (unsigned long n = 1; n <= limit; ++n) {
            if (acc.is_identity())
                return OrderVerdict::finite(n, "power iteration");
            acc = acc * a;
        }
        return OrderVerdict::unknown(limit, "no identity power within the iteration bound");
    }

    // characteristic 0: squarefree part of the characteristic polynomial
    UniPoly p = charpoly(a);
    UniPoly g = poly_gcd(p, p.derivative());
    auto [rad, rem0] = p.divrem(g);
    if (!rem0.is_zero()) throw internal_error("radical division left a remainder");
    if (!poly_at_matrix(rad, a).is_zero())
        return OrderVerdict::infinite("minimal polynomial is not squarefree");

    const unsigned long B = static_cast<unsigned long>(a.rows()) * K.degree();
    UniPoly rem = rad;
    unsigned long order_lcm = 1;
    for (unsigned long d = 1; d <= 2 * B * B + 2 && rem.degree() > 0; ++d) {
        if (euler_phi(d) > B) continue;
        UniPoly phi_q = cyclotomic_poly(d);
        std::vector<Scalar> coeffs;
        coeffs.reserve(phi_q.coeffs().size());
        for (const auto& c : phi_q.coeffs())
            coeffs.push_back(Scalar::from_mpq(K, c.rational_value()));
        UniPoly phi_k(K, std::move(coeffs));
        UniPoly common = poly_gcd(rem, phi_k);
        if (common.degree() > 0) {
            order_lcm = std::lcm(order_lcm, d);
            auto [q2, r2] = rem.divrem(common);
            if (!r2.is_zero()) throw internal_error("cyclotomic division left a remainder");
            rem = q2;
        }
    }
    if (rem.degree() == 0)
        return OrderVerdict::finite(order_lcm, "squarefree minimal polynomial splits into cyclotomics");
    return OrderVerdict::infinite("an eigenvalue is not a root of unity");
}

namespace {

OrderVerdict bounded_order(const AlgebraMap& a, unsigned long bound) {
    const CoeffRing& r = a.ring();
    std::vector<MultiPoly> acc = a.images();
    for (unsigned long n = 1; n <= bound; ++n) {
        bool ident = true;
        for (unsigned i = 0; i < r.arity(); ++i) {
            if (acc[i] != MultiPoly::variable(r, i)) {
                ident = false;
                break;
            }
        }
        if (ident) return OrderVerdict::finite(n, "direct iteration");
        for (const auto& f : acc) {
            if (f.total_degree() > 64)
                return OrderVerdict::unknown(n, "iterate degrees exceed the growth guard");
        }
        for (unsigned i = 0; i < r.arity(); ++i) acc[i] = substitute(acc[i], a.images());
    }
    return OrderVerdict::unknown(bound, "no identity iterate within the bound");
}

OrderVerdict affine_order(const FieldSpec& K, const Scalar& beta, const Scalar& gamma) {
    auto rb = is_root_of_unity(beta);
    if (!rb.is_root)
        return OrderVerdict::infinite("scaling factor " + beta.to_string() +
                                      " is not a root of unity");
    if (beta.is_one()) {
        if (gamma.is_zero()) return OrderVerdict::finite(1, "identity");
        if (K.characteristic() == 0)
            return OrderVerdict::infinite("nonzero translation part in characteristic 0");
        return OrderVerdict::finite(K.characteristic(),
                                    "translation has additive order p");
    }
    // beta^d = 1, beta != 1: the geometric sum of the translation vanishes
    return OrderVerdict::finite(rb.order, "order of the scaling factor");
}

OrderVerdict triangular_order(const FieldSpec& K, const TriangularData& d) {
    auto rl = is_root_of_unity(d.lambda);
    auto rm = is_root_of_unity(d.mu);
    if (!rl.is_root)
        return OrderVerdict::infinite("scaling factor " + d.lambda.to_string() +
                                      " is not a root of unity");
    if (!rm.is_root)
        return OrderVerdict::infinite("scaling factor " + d.mu.to_string() +
                                      " is not a root of unity");
    unsigned long L = std::lcm(rl.order, rm.order);
    const bool char0 = K.characteristic() == 0;
    if (d.h.is_zero()) {
        if (d.c.is_zero()) return OrderVerdict::finite(L, "diagonal with root-of-unity scalars");
        if (!d.mu.is_one())
            return OrderVerdict::finite(L, "translation absorbed by the nontrivial scaling");
        if (char0)
            return OrderVerdict::infinite("nonzero translation part in characteristic 0");
        return OrderVerdict::finite(std::lcm(L, K.characteristic()),
                                    "translation has additive order p");
    }
    // h != 0, c = 0, with eta_i != 0 only where lambda = mu^i:
    // the L-th iterate is x -> x + L*lambda^{L-1} h(y)
    if (char0)
        return OrderVerdict::infinite("unipotent translation by h survives in characteristic 0");
    return OrderVerdict::finite(std::lcm(L, K.characteristic()),
                                "translation part has additive order p");
}

OrderVerdict monomial_order(const AlgebraMap& a) {
    const MonomialData& md = a.monomial_data();
    Matrix eq = exponent_matrix_over_Q(md);
    OrderVerdict mv = linear_finite_order_test(eq);
    if (mv.kind == OrderVerdict::Kind::InfiniteCertified)
        return OrderVerdict::infinite("exponent matrix has infinite order (" + mv.reason + ")");
    if (mv.kind != OrderVerdict::Kind::Finite)
        throw internal_error("exponent matrix order test did not decide");
    if (md.pure)
        return OrderVerdict::finite(mv.order, "order of the exponent matrix");

    // alpha^m is diagonal: x_i -> c'_i x_i; finish on the coefficients
    AlgebraMap am = a.pow(static_cast<long>(mv.order));
    unsigned long k = 1;
    for (unsigned i = 0; i < a.ring().arity(); ++i) {
        const MultiPoly& f = am.image(i);
        if (f.terms().size() != 1 ||
            f.leading_monomial() != Monomial::variable(a.ring().arity(), i))
            throw internal_error("monomial power is not diagonal");
        auto rc = is_root_of_unity(f.leading_coeff());
        if (!rc.is_root)
            return OrderVerdict::infinite("residual coefficient " + f.leading_coeff().to_string() +
                                          " is not a root of unity");
        k = std::lcm(k, rc.order);
    }
    return OrderVerdict::finite(mv.order * k, "exponent matrix order times coefficient order");
}

} // namespace

OrderVerdict order(const AlgebraMap& a, unsigned long bound) {
    switch (a.map_class()) {
    case MapClass::Linear:
        return linear_finite_order_test(a.linear_matrix());
    case MapClass::UnivariateAffine: {
        const auto& [beta, gamma] = a.affine_parts();
        return affine_order(a.ring().field(), beta, gamma);
    }
    case MapClass::TriangularI:
    case MapClass::TriangularII:
    case MapClass::TriangularIII:
        return triangular_order(a.ring().field(), a.triangular_data());
    case MapClass::GeneralizedHenon:
        return OrderVerdict::infinite(
            "iterate degrees grow geometrically (like (deg beta)^n) for generalized Henon maps");
    case MapClass::MonomialMap:
        return monomial_order(a);
    case MapClass::CompositionList:
    case MapClass::Unclassified:
        return bounded_order(a, bound);
    }
    throw internal_error("order: bad class");
}

PlaneClassification classify_plane(const AlgebraMap& a) {
    if (a.ring().kind() != RingKind::Polynomial || a.ring().arity() != 2)
        throw domain_error("plane classification needs a two-variable polynomial ring");
    if (a.map_class() == MapClass::CompositionList) {
        bool has_henon = false;
        for (const auto& f : a.factors())
            if (f.map_class() == MapClass::GeneralizedHenon) has_henon = true;
        return {MapClass::CompositionList,
                a.class_detail() +
                    (has_henon ? "; contains a generalized Henon factor"
                               : "; affine/triangular factors only, not square"),
                std::nullopt, std::nullopt};
    }
    if (auto hd = match_henon(a.images())) {
        PlaneClassification out{MapClass::GeneralizedHenon,
                                "lambda=" + hd->lambda.to_string() + ", beta=" +
                                    hd->beta.to_string("y") +
                                    (hd->swapped ? " (variables exchanged)" : ""),
                                std::nullopt, std::nullopt};
        out.henon = *hd;
        return out;
    }
    if (auto td = match_triangular(a.images())) {
        std::string detail;
        MapClass cls = subclass_triangular(*td, detail);
        if (cls != MapClass::Unclassified) {
            PlaneClassification out{cls, detail + (td->swapped ? " (variables exchanged)" : ""),
                                    std::nullopt, std::nullopt};
            out.tri = *td;
            return out;
        }
        return {MapClass::Unclassified, detail, std::nullopt, std::nullopt};
    }
    if (a.map_class() == MapClass::Linear)
        return {MapClass::Linear, a.class_detail(), std::nullopt, std::nullopt};
    return {MapClass::Unclassified, "plane map outside the recognized families", std::nullopt,
            std::nullopt};
}

AlgebraMap reduce_mod_p(const AlgebraMap& a, const CoeffRing& target) {
    if (a.map_class() == MapClass::CompositionList) {
        // reduce factor by factor so the derived inverses survive
        const auto& fs = a.factors();
        AlgebraMap acc = reduce_mod_p(fs.front(), target);
        for (std::size_t i = 1; i < fs.size(); ++i)
            acc = acc.compose(reduce_mod_p(fs[i], target));
        return acc;
    }
    std::vector<MultiPoly> imgs;
    imgs.reserve(a.images().size());
    for (const MultiPoly& f : a.images()) imgs.push_back(reduce_mod_p(f, target));
    return AlgebraMap::from_images(target, std::move(imgs));
}

} // namespace skewlab
