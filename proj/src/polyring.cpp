#include "skewlab/polyring.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace skewlab {

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::variable(unsigned arity, unsigned idx, std::int32_t power) {
    if (idx >= arity) throw domain_error("variable index out of range");
    Monomial m(arity);
    m.e_[idx] = power;
    return m;
}

std::int64_t Monomial::total_degree() const {
    std::int64_t s = 0;
    for (auto e : e_) s += e;
    return s;
}

bool Monomial::is_unit_monomial() const {
    return std::all_of(e_.begin(), e_.end(), [](std::int32_t e) { return e == 0; });
}

bool Monomial::nonnegative() const {
    return std::all_of(e_.begin(), e_.end(), [](std::int32_t e) { return e >= 0; });
}

static void check_arity(const Monomial& a, const Monomial& b) {
    if (a.arity() != b.arity()) throw domain_error("monomial arity mismatch");
}

Monomial Monomial::operator*(const Monomial& o) const {
    check_arity(*this, o);
    Monomial r = *this;
    for (unsigned i = 0; i < arity(); ++i) r.e_[i] += o.e_[i];
    return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
    check_arity(*this, o);
    Monomial r = *this;
    for (unsigned i = 0; i < arity(); ++i) r.e_[i] -= o.e_[i];
    return r;
}

bool Monomial::divides(const Monomial& o) const {
    check_arity(*this, o);
    for (unsigned i = 0; i < arity(); ++i)
        if (e_[i] > o.exponent(i)) return false;
    return true;
}

bool grlex_less(const Monomial& a, const Monomial& b) {
    if (a.arity() != b.arity()) throw internal_error("grlex on mismatched arities");
    std::int64_t da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db;
    for (unsigned i = 0; i < a.arity(); ++i) {
        if (a.exponent(i) != b.exponent(i)) return a.exponent(i) < b.exponent(i);
    }
    return false;
}

// ---------------------------------------------------------------------------
// CoeffRing

static void check_vars(const std::vector<std::string>& vars) {
    if (vars.empty()) throw domain_error("a ring needs at least one variable");
    std::set<std::string> seen;
    for (const auto& v : vars) {
        if (v.empty()) throw domain_error("empty variable name");
        if (!seen.insert(v).second) throw domain_error("duplicate variable name: " + v);
    }
}

CoeffRing CoeffRing::polynomial(const FieldSpec& f, std::vector<std::string> vars) {
    check_vars(vars);
    return CoeffRing(f, RingKind::Polynomial, std::move(vars));
}

CoeffRing CoeffRing::laurent(const FieldSpec& f, std::vector<std::string> vars) {
    check_vars(vars);
    return CoeffRing(f, RingKind::Laurent, std::move(vars));
}

std::optional<unsigned> CoeffRing::var_index(const std::string& name) const {
    for (unsigned i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return i;
    return std::nullopt;
}

const MultiPoly& CoeffRing::modulus() const {
    if (kind_ != RingKind::UnivariateQuotient || !modulus_)
        throw domain_error("ring has no univariate modulus");
    return *modulus_;
}

const std::vector<std::pair<unsigned, Scalar>>& CoeffRing::assignments() const {
    if (kind_ != RingKind::CoordinateAffineQuotient)
        throw domain_error("ring has no coordinate assignments");
    return assignments_;
}

CoeffRing CoeffRing::base_ring() const {
    switch (kind_) {
    case RingKind::Polynomial:
    case RingKind::Laurent:
        return *this;
    case RingKind::UnivariateQuotient:
    case RingKind::CoordinateAffineQuotient:
        return CoeffRing(field_, RingKind::Polynomial, vars_);
    }
    throw internal_error("CoeffRing::base_ring: bad kind");
}

bool CoeffRing::operator==(const CoeffRing& o) const {
    if (!(field_ == o.field_) || kind_ != o.kind_ || vars_ != o.vars_) return false;
    switch (kind_) {
    case RingKind::Polynomial:
    case RingKind::Laurent:
        return true;
    case RingKind::UnivariateQuotient:
        return *modulus_ == *o.modulus_;
    case RingKind::CoordinateAffineQuotient:
        return assignments_ == o.assignments_;
    }
    throw internal_error("CoeffRing::operator==: bad kind");
}

std::string CoeffRing::to_string() const {
    std::string vars;
    for (const auto& v : vars_) {
        if (!vars.empty()) vars += ",";
        vars += v;
        if (kind_ == RingKind::Laurent) vars += "^+-1";
    }
    std::string base = field_.to_string() + "[" + vars + "]";
    switch (kind_) {
    case RingKind::Polynomial:
    case RingKind::Laurent:
        return base;
    case RingKind::UnivariateQuotient:
        return base + "/(" + modulus_->to_string() + ")";
    case RingKind::CoordinateAffineQuotient: {
        std::string rels;
        for (const auto& [i, v] : assignments_) {
            if (!rels.empty()) rels += ", ";
            rels += vars_[i] + " - (" + v.to_string() + ")";
        }
        return base + "/(" + rels + ")";
    }
    }
    throw internal_error("CoeffRing::to_string: bad kind");
}

// ---------------------------------------------------------------------------
// MultiPoly construction

MultiPoly MultiPoly::constant(const CoeffRing& r, const Scalar& c) {
    if (!(c.field() == r.field())) throw domain_error("constant from the wrong field");
    MultiPoly p(r);
    if (!c.is_zero()) p.terms_.emplace(Monomial::unit(r.arity()), c);
    return p;
}

MultiPoly MultiPoly::from_int(const CoeffRing& r, long v) {
    return constant(r, Scalar::from_int(r.field(), v));
}

MultiPoly MultiPoly::variable(const CoeffRing& r, unsigned idx) {
    return term(r, Monomial::variable(r.arity(), idx), Scalar::one(r.field()));
}

MultiPoly MultiPoly::term(const CoeffRing& r, const Monomial& m, const Scalar& c) {
    if (m.arity() != r.arity()) throw domain_error("monomial arity does not match ring");
    if (!(c.field() == r.field())) throw domain_error("coefficient from the wrong field");
    if (!r.negative_exponents_allowed() && !m.nonnegative())
        throw domain_error("negative exponent outside a Laurent ring");
    MultiPoly p(r);
    if (!c.is_zero()) p.terms_.emplace(m, c);
    p.reduce_in_ring();
    return p;
}

// ---------------------------------------------------------------------------
// MultiPoly queries

bool MultiPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit_monomial());
}

Scalar MultiPoly::constant_value() const {
    if (!is_constant()) throw domain_error("constant_value of a non-constant polynomial");
    if (terms_.empty()) return Scalar::zero(ring_.field());
    return terms_.begin()->second;
}

bool MultiPoly::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first.is_unit_monomial() &&
           terms_.begin()->second.is_one();
}

const Monomial& MultiPoly::leading_monomial() const {
    if (terms_.empty()) throw domain_error("leading term of zero");
    return terms_.begin()->first;
}

const Scalar& MultiPoly::leading_coeff() const {
    if (terms_.empty()) throw domain_error("leading term of zero");
    return terms_.begin()->second;
}

std::int64_t MultiPoly::total_degree() const {
    return terms_.empty() ? -1 : terms_.begin()->first.total_degree();
}

std::int32_t MultiPoly::degree_in(unsigned var) const {
    std::int32_t d = 0;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        (void)c;
        std::int32_t e = m.exponent(var);
        d = first ? e : std::max(d, e);
        first = false;
    }
    return terms_.empty() ? 0 : d;
}

std::int32_t MultiPoly::min_exponent_in(unsigned var) const {
    std::int32_t d = 0;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        (void)c;
        std::int32_t e = m.exponent(var);
        d = first ? e : std::min(d, e);
        first = false;
    }
    return terms_.empty() ? 0 : d;
}

Scalar MultiPoly::coeff_of(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar::zero(ring_.field()) : it->second;
}

// ---------------------------------------------------------------------------
// MultiPoly arithmetic

void MultiPoly::insert_term(const Monomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

static void check_same_ring(const MultiPoly& a, const MultiPoly& b) {
    if (a.ring() != b.ring()) throw domain_error("polynomial ring mismatch");
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r = *this;
    for (auto& [m, c] : r.terms_) {
        (void)m;
        c = -c;
    }
    return r;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    check_same_ring(*this, o);
    MultiPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.insert_term(m, c);
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    check_same_ring(*this, o);
    MultiPoly r(ring_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) r.insert_term(ma * mb, ca * cb);
    r.reduce_in_ring();
    return r;
}

MultiPoly MultiPoly::operator*(const Scalar& c) const {
    if (!(c.field() == ring_.field())) throw domain_error("scalar from the wrong field");
    MultiPoly r(ring_);
    if (c.is_zero()) return r;
    for (const auto& [m, v] : terms_) r.insert_term(m, v * c);
    return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
    MultiPoly acc = constant(ring_, Scalar::one(ring_.field()));
    MultiPoly base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
    return ring_ == o.ring_ && terms_ == o.terms_;
}

// ---------------------------------------------------------------------------
// quotient reduction

void MultiPoly::reduce_in_ring() {
    switch (ring_.kind()) {
    case RingKind::Polynomial:
    case RingKind::Laurent:
        return;
    case RingKind::UnivariateQuotient: {
        const MultiPoly& m = ring_.modulus();
        const int dm = m.degree_in(0);
        if (degree_in(0) < dm) return;
        // dense reduction in the single variable
        UniPoly f = to_unipoly_dense();
        UniPoly mod(ring_.field(), [&] {
            std::vector<Scalar> c(static_cast<std::size_t>(dm) + 1, Scalar::zero(ring_.field()));
            for (const auto& [mono, coeff] : m.terms())
                c[static_cast<std::size_t>(mono.exponent(0))] = coeff;
            return c;
        }());
        UniPoly r = f.divrem(mod).second;
        terms_.clear();
        for (unsigned i = 0; i < r.coeffs().size(); ++i) {
            if (!r.coeffs()[i].is_zero())
                terms_.emplace(Monomial::variable(1, 0, static_cast<std::int32_t>(i)),
                               r.coeffs()[i]);
        }
        return;
    }
    case RingKind::CoordinateAffineQuotient: {
        bool touched = false;
        for (const auto& [idx, val] : ring_.assignments()) {
            (void)val;
            for (const auto& [mono, c] : terms_) {
                (void)c;
                if (mono.exponent(idx) != 0) {
                    touched = true;
                    break;
                }
            }
            if (touched) break;
        }
        if (!touched) return;
        std::map<Monomial, Scalar, GrlexGreater> out;
        for (const auto& [mono, c] : terms_) {
            std::vector<std::int32_t> e = mono.exponents();
            Scalar coeff = c;
            for (const auto& [idx, val] : ring_.assignments()) {
                if (e[idx] != 0) {
                    coeff *= val.pow(e[idx]);
                    e[idx] = 0;
                }
            }
            if (coeff.is_zero()) continue;
            Monomial key(e);
            auto it = out.find(key);
            if (it == out.end()) {
                out.emplace(std::move(key), coeff);
            } else {
                it->second += coeff;
                if (it->second.is_zero()) out.erase(it);
            }
        }
        terms_ = std::move(out);
        return;
    }
    }
    throw internal_error("reduce_in_ring: bad kind");
}

// ---------------------------------------------------------------------------
// units

bool MultiPoly::is_unit() const {
    switch (ring_.kind()) {
    case RingKind::Polynomial:
    case RingKind::CoordinateAffineQuotient:
        return is_constant() && !is_zero();
    case RingKind::Laurent:
        return terms_.size() == 1;
    case RingKind::UnivariateQuotient: {
        if (is_zero()) return false;
        UniPoly f = to_unipoly(*this, 0);
        UniPoly m = to_unipoly(ring_.modulus(), 0);
        return poly_gcd(f, m).degree() == 0;
    }
    }
    throw internal_error("is_unit: bad kind");
}

namespace {

// returns (g, u) with u*a == g (mod m), g monic gcd
std::pair<UniPoly, UniPoly> half_ext_gcd(const UniPoly& a, const UniPoly& m) {
    UniPoly r0 = m, r1 = a;
    UniPoly u0 = UniPoly::zero(m.field());
    UniPoly u1 = UniPoly::constant(Scalar::one(m.field()));
    while (!r1.is_zero()) {
        auto [q, rem] = r0.divrem(r1);
        UniPoly unew = u0 - q * u1;
        r0 = std::move(r1);
        r1 = std::move(rem);
        u0 = std::move(u1);
        u1 = std::move(unew);
    }
    if (r0.is_zero()) throw domain_error("gcd of zeros");
    Scalar lead_inv = r0.leading().inverse();
    return {r0 * lead_inv, u0 * lead_inv};
}

} // namespace

MultiPoly MultiPoly::unit_inverse() const {
    switch (ring_.kind()) {
    case RingKind::Polynomial:
    case RingKind::CoordinateAffineQuotient: {
        if (!is_unit()) throw domain_error("not a unit");
        return constant(ring_, constant_value().inverse());
    }
    case RingKind::Laurent: {
        if (!is_unit()) throw domain_error("not a unit");
        const auto& [m, c] = *terms_.begin();
        return term(ring_, Monomial::unit(ring_.arity()) / m, c.inverse());
    }
    case RingKind::UnivariateQuotient: {
        if (is_zero()) throw domain_error("not a unit");
        UniPoly f = to_unipoly(*this, 0);
        UniPoly m = to_unipoly(ring_.modulus(), 0);
        auto [g, u] = half_ext_gcd(f, m);
        if (g.degree() != 0) throw domain_error("not a unit modulo " + ring_.modulus().to_string());
        return from_unipoly(ring_, u, 0);
    }
    }
    throw internal_error("unit_inverse: bad kind");
}

// ---------------------------------------------------------------------------
// printing

namespace {

bool scalar_needs_parens(const std::string& s) {
    return s.find(' ') != std::string::npos || s.find('+') != std::string::npos;
}

std::string monomial_body(const CoeffRing& r, const Monomial& m) {
    std::string out;
    for (unsigned i = 0; i < m.arity(); ++i) {
        std::int32_t e = m.exponent(i);
        if (e == 0) continue;
        if (!out.empty()) out += "*";
        out += r.var_names()[i];
        if (e != 1) out += "^" + std::to_string(e);
    }
    return out;
}

} // namespace

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c0] : terms_) {
        Scalar c = c0;
        std::string sign;
        auto q = c.as_rational();
        if (out.empty()) {
            if (q && *q < 0) {
                sign = "-";
                c = -c;
            }
        } else {
            if (q && *q < 0) {
                sign = " - ";
                c = -c;
            } else {
                sign = " + ";
            }
        }
        std::string mono = monomial_body(ring_, m);
        std::string cs = c.to_string();
        std::string body;
        if (mono.empty()) {
            body = scalar_needs_parens(cs) ? "(" + cs + ")" : cs;
        } else if (c.is_one()) {
            body = mono;
        } else {
            body = (scalar_needs_parens(cs) ? "(" + cs + ")" : cs) + "*" + mono;
        }
        out += sign + body;
    }
    return out;
}

// ---------------------------------------------------------------------------
// quotient construction and maps

CoeffRing quotient_ring(const CoeffRing& base, const MultiPoly& univariate_modulus) {
    if (base.kind() != RingKind::Polynomial || base.arity() != 1)
        throw domain_error("univariate quotient needs a one-variable polynomial base ring");
    if (univariate_modulus.ring() != base) throw domain_error("modulus from the wrong ring");
    if (univariate_modulus.total_degree() < 1) throw domain_error("modulus must be nonconstant");
    CoeffRing r(base.field(), RingKind::UnivariateQuotient, base.var_names());
    r.modulus_ = std::make_shared<const MultiPoly>(univariate_modulus);
    return r;
}

CoeffRing quotient_ring(const CoeffRing& base,
                        const std::vector<std::pair<unsigned, Scalar>>& assignments) {
    if (base.kind() != RingKind::Polynomial)
        throw domain_error("coordinate quotient needs a polynomial base ring");
    if (assignments.empty()) throw domain_error("empty assignment list");
    auto sorted = assignments;
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i].first >= base.arity()) throw domain_error("assignment index out of range");
        if (i > 0 && sorted[i].first == sorted[i - 1].first)
            throw domain_error("duplicate assignment index");
        if (!(sorted[i].second.field() == base.field()))
            throw domain_error("assignment value from the wrong field");
    }
    CoeffRing r(base.field(), RingKind::CoordinateAffineQuotient, base.var_names());
    r.assignments_ = std::move(sorted);
    return r;
}

MultiPoly reinterpret_in_ring(const CoeffRing& target, const MultiPoly& f) {
    MultiPoly out(target);
    for (const auto& [m, c] : f.terms()) {
        if (!target.negative_exponents_allowed() && !m.nonnegative())
            throw domain_error("negative exponent outside a Laurent ring");
        out.terms_.emplace(m, c);
    }
    out.reduce_in_ring();
    return out;
}

MultiPoly into_quotient(const CoeffRing& quotient, const MultiPoly& f) {
    if (f.ring() == quotient) return f;
    if (quotient.kind() != RingKind::UnivariateQuotient &&
        quotient.kind() != RingKind::CoordinateAffineQuotient)
        throw domain_error("into_quotient target is not a quotient ring");
    if (f.ring() != quotient.base_ring())
        throw domain_error("into_quotient source is not the base ring");
    return reinterpret_in_ring(quotient, f);
}

MultiPoly lift_from_quotient(const MultiPoly& f) {
    const CoeffRing& r = f.ring();
    if (r.kind() != RingKind::UnivariateQuotient &&
        r.kind() != RingKind::CoordinateAffineQuotient)
        throw domain_error("lift_from_quotient needs a quotient-ring element");
    return reinterpret_in_ring(r.base_ring(), f);
}

// ---------------------------------------------------------------------------
// substitution, evaluation, division

namespace {

MultiPoly int_pow(const MultiPoly& f, std::int64_t e) {
    if (e >= 0) return f.pow(static_cast<unsigned>(e));
    return f.unit_inverse().pow(static_cast<unsigned>(-e));
}

} // namespace

MultiPoly substitute(const MultiPoly& f, const std::vector<MultiPoly>& images) {
    const CoeffRing& src = f.ring();
    if (images.size() != src.arity())
        throw domain_error("substitute needs one image per variable");
    const CoeffRing& dst = images.front().ring();
    for (const auto& g : images)
        if (g.ring() != dst) throw domain_error("images live in different rings");
    if (!(src.field() == dst.field()))
        throw domain_error("substitution cannot change the scalar field");

    switch (src.kind()) {
    case RingKind::Polynomial:
        break;
    case RingKind::Laurent:
        for (const auto& g : images)
            if (!g.is_unit())
                throw domain_error("images of Laurent variables must be units");
        break;
    case RingKind::UnivariateQuotient: {
        // well-definedness: the modulus must vanish on the image
        MultiPoly mval = MultiPoly::zero(dst);
        const MultiPoly& m = src.modulus();
        for (const auto& [mono, c] : m.terms())
            mval += int_pow(images[0], mono.exponent(0)) * c;
        if (!mval.is_zero())
            throw domain_error("image does not satisfy the quotient relation");
        break;
    }
    case RingKind::CoordinateAffineQuotient:
        throw unsupported_error("substitution out of coordinate quotients is not supported");
    }

    // power tables, shared across terms; index 0 holds the first power,
    // negative exponents get their own table over the image inverse
    std::vector<std::vector<MultiPoly>> pos(src.arity()), neg(src.arity());
    auto cached_pow = [&](unsigned i, std::int32_t e) -> const MultiPoly& {
        auto& table = e > 0 ? pos[i] : neg[i];
        std::size_t k = static_cast<std::size_t>(e > 0 ? e : -e);
        if (table.empty()) table.push_back(e > 0 ? images[i] : images[i].unit_inverse());
        while (table.size() < k) table.push_back(table.back() * table.front());
        return table[k - 1];
    };

    MultiPoly out = MultiPoly::zero(dst);
    for (const auto& [mono, c] : f.terms()) {
        MultiPoly t = MultiPoly::constant(dst, c);
        for (unsigned i = 0; i < src.arity(); ++i) {
            std::int32_t e = mono.exponent(i);
            if (e != 0) t *= cached_pow(i, e);
        }
        out += t;
    }
    return out;
}

Scalar eval_at(const MultiPoly& f, const std::vector<Scalar>& point) {
    const CoeffRing& r = f.ring();
    if (point.size() != r.arity()) throw domain_error("point arity mismatch");
    for (const auto& x : point)
        if (!(x.field() == r.field())) throw domain_error("point coordinate from the wrong field");
    Scalar acc = Scalar::zero(r.field());
    for (const auto& [m, c] : f.terms()) {
        Scalar t = c;
        for (unsigned i = 0; i < r.arity(); ++i) {
            std::int32_t e = m.exponent(i);
            if (e == 0) continue;
            if (point[i].is_zero() && e < 0)
                throw domain_error("negative exponent at a zero coordinate");
            t *= point[i].pow(e);
        }
        acc += t;
    }
    return acc;
}

namespace {

// componentwise minimum exponent over all terms; identity for the zero poly
Monomial monomial_content(const MultiPoly& f) {
    Monomial m(f.ring().arity());
    bool first = true;
    std::vector<std::int32_t> e(f.ring().arity(), 0);
    for (const auto& [mono, c] : f.terms()) {
        (void)c;
        for (unsigned i = 0; i < f.ring().arity(); ++i)
            e[i] = first ? mono.exponent(i) : std::min(e[i], mono.exponent(i));
        first = false;
    }
    return f.is_zero() ? m : Monomial(e);
}

std::pair<MultiPoly, MultiPoly> divide_nonneg(const MultiPoly& f, const MultiPoly& rho) {
    // classic single-divisor reduction; all monomials stay nonnegative
    const CoeffRing& r = f.ring();
    MultiPoly q = MultiPoly::zero(r), rem = MultiPoly::zero(r), p = f;
    const Monomial& lm = rho.leading_monomial();
    const Scalar lc_inv = rho.leading_coeff().inverse();
    while (!p.is_zero()) {
        const Monomial& pm = p.leading_monomial();
        if (lm.divides(pm)) {
            MultiPoly t = MultiPoly::term(r, pm / lm, p.leading_coeff() * lc_inv);
            q += t;
            p -= t * rho;
        } else {
            MultiPoly t = MultiPoly::term(r, pm, p.leading_coeff());
            rem += t;
            p -= t;
        }
    }
    return {q, rem};
}

} // namespace

std::pair<MultiPoly, MultiPoly> divide_by_principal(const MultiPoly& f, const MultiPoly& rho) {
    check_same_ring(f, rho);
    if (rho.is_zero()) throw domain_error("division by zero polynomial");
    switch (f.ring().kind()) {
    case RingKind::Polynomial:
        return divide_nonneg(f, rho);
    case RingKind::Laurent: {
        if (f.is_zero()) return {f, f};
        const CoeffRing& r = f.ring();
        const Scalar one = Scalar::one(r.field());
        Monomial cf = monomial_content(f), cr = monomial_content(rho);
        MultiPoly fs = f * MultiPoly::term(r, Monomial::unit(r.arity()) / cf, one);
        MultiPoly rs = rho * MultiPoly::term(r, Monomial::unit(r.arity()) / cr, one);
        auto [q, rem] = divide_nonneg(fs, rs);
        MultiPoly shift_q = MultiPoly::term(r, cf / cr, one);
        MultiPoly shift_r = MultiPoly::term(r, cf, one);
        return {q * shift_q, rem * shift_r};
    }
    case RingKind::UnivariateQuotient:
    case RingKind::CoordinateAffineQuotient:
        throw unsupported_error("principal division inside quotient rings is not supported");
    }
    throw internal_error("divide_by_principal: bad kind");
}

// ---------------------------------------------------------------------------
// dense univariate bridge

UniPoly MultiPoly::to_unipoly_dense() const {
    std::vector<Scalar> c(static_cast<std::size_t>(std::max<std::int32_t>(degree_in(0), 0)) + 1,
                          Scalar::zero(ring_.field()));
    for (const auto& [m, coeff] : terms_) {
        if (m.exponent(0) < 0) throw unsupported_error("negative exponent in dense view");
        c[static_cast<std::size_t>(m.exponent(0))] = coeff;
    }
    return UniPoly(ring_.field(), std::move(c));
}

UniPoly to_unipoly(const MultiPoly& f, unsigned var) {
    const CoeffRing& r = f.ring();
    if (var >= r.arity()) throw domain_error("variable index out of range");
    std::vector<Scalar> c;
    for (const auto& [m, coeff] : f.terms()) {
        for (unsigned i = 0; i < r.arity(); ++i) {
            if (i != var && m.exponent(i) != 0)
                throw domain_error("polynomial is not univariate in " + r.var_names()[var]);
        }
        std::int32_t e = m.exponent(var);
        if (e < 0) throw unsupported_error("negative exponent in dense view");
        if (c.size() <= static_cast<std::size_t>(e))
            c.resize(static_cast<std::size_t>(e) + 1, Scalar::zero(r.field()));
        c[static_cast<std::size_t>(e)] = coeff;
    }
    return UniPoly(r.field(), std::move(c));
}

MultiPoly from_unipoly(const CoeffRing& r, const UniPoly& p, unsigned var) {
    if (!(p.field() == r.field())) throw domain_error("field mismatch");
    MultiPoly out = MultiPoly::zero(r);
    for (unsigned i = 0; i < p.coeffs().size(); ++i) {
        if (p.coeffs()[i].is_zero()) continue;
        out += MultiPoly::term(r, Monomial::variable(r.arity(), var, static_cast<std::int32_t>(i)),
                               p.coeffs()[i]);
    }
    return out;
}

MultiPoly reduce_mod_p(const MultiPoly& f, const CoeffRing& target) {
    if (target.kind() != f.ring().kind() || target.var_names() != f.ring().var_names())
        throw domain_error("reduce_mod_p: ring shapes differ");
    MultiPoly out = MultiPoly::zero(target);
    for (const auto& [m, c] : f.terms()) {
        Scalar r = reduce_mod_p(c, target.field());
        if (!r.is_zero()) out += MultiPoly::term(target, m, r);
    }
    return out;
}

} // namespace skewlab
