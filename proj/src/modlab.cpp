#include "skewlab/modlab.hpp"

#include "skewlab/errors.hpp"
#include "skewlab/unipoly.hpp"

#include <algorithm>
#include <sstream>

namespace skewlab {

namespace {

MultiPoly alpha_inv_pow(const AlgebraMap& a, MultiPoly v, long k) {
    for (long i = 0; i < k; ++i) v = a.apply_inverse(v);
    return v;
}

bool is_ring_unit(const MultiPoly& g) {
    try {
        (void)g.unit_inverse();
        return true;
    } catch (const domain_error&) {
        return false;
    }
}

/// Divide out the (unit) monomial content so Laurent elements become
/// honest polynomials in the dense univariate view.
MultiPoly strip_unit_monomial(const MultiPoly& g) {
    if (g.ring().kind() != RingKind::Laurent || g.is_zero()) return g;
    Monomial low = g.terms().begin()->first;
    for (const auto& [m, c] : g.terms()) {
        (void)c;
        std::vector<std::int32_t> e;
        for (unsigned i = 0; i < m.arity(); ++i)
            e.push_back(std::min(m.exponent(i), low.exponent(i)));
        low = Monomial(std::move(e));
    }
    return g * MultiPoly::term(g.ring(), Monomial::unit(g.ring().arity()) / low,
                               Scalar::one(g.ring().field()));
}

MultiPoly make_monic(const MultiPoly& g) {
    if (g.is_zero()) return g;
    return g * MultiPoly::constant(g.ring(), g.leading_coeff().inverse());
}

bool all_single_term(const std::vector<MultiPoly>& gens) {
    return std::all_of(gens.begin(), gens.end(),
                       [](const MultiPoly& g) { return g.terms().size() == 1; });
}

/// Canonical generator list: principal via gcd when univariate, minimal
/// monic monomial antichain for monomial ideals, monic single generators.
std::vector<MultiPoly> canonical_gens(std::vector<MultiPoly> gens) {
    gens.erase(std::remove_if(gens.begin(), gens.end(),
                              [](const MultiPoly& g) { return g.is_zero(); }),
               gens.end());
    if (gens.empty()) return gens;
    const CoeffRing& r = gens.front().ring();
    if ((r.kind() == RingKind::Polynomial || r.kind() == RingKind::Laurent) && r.arity() == 1) {
        UniPoly d = to_unipoly(strip_unit_monomial(gens.front()), 0);
        for (std::size_t i = 1; i < gens.size(); ++i)
            d = poly_gcd(d, to_unipoly(strip_unit_monomial(gens[i]), 0));
        return {from_unipoly(r, d.monic(), 0)};
    }
    if (all_single_term(gens)) {
        std::vector<MultiPoly> keep;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            const Monomial& mi = gens[i].leading_monomial();
            bool redundant = false;
            for (std::size_t j = 0; j < gens.size() && !redundant; ++j) {
                if (i == j) continue;
                const Monomial& mj = gens[j].leading_monomial();
                if (mj == mi && j < i) redundant = true;
                if (mj != mi && mj.divides(mi)) redundant = true;
            }
            if (!redundant)
                keep.push_back(MultiPoly::term(r, mi, Scalar::one(r.field())));
        }
        return keep;
    }
    for (auto& g : gens) g = make_monic(g);
    return gens;
}

std::string gens_to_string(const std::vector<MultiPoly>& gens) {
    if (gens.empty()) return "0";
    std::string out = "(";
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (i) out += ", ";
        out += gens[i].to_string();
    }
    return out + ")";
}

}  // namespace

// ---------------------------------------------------------------------------
// ModContext

ModContext ModContext::make(const SkewContext& skew, const MultiPoly& rho) {
    if (skew.laurent)
        throw domain_error("the cyclic module lives over the polynomial form of S");
    if (skew.ring.kind() != RingKind::Polynomial)
        throw domain_error("coefficient ring must be a polynomial ring");
    if (!(rho.ring() == skew.ring)) throw domain_error("rho lives in the wrong ring");
    if (rho.is_zero()) throw domain_error("rho must be nonzero");
    if (rho.is_constant()) throw domain_error("rho must not be a unit");
    if (!skew.alpha.has_inverse())
        throw domain_error("normal forms need an invertible twist");
    return ModContext{skew, rho};
}

bool ModContext::operator==(const ModContext& o) const {
    return skew == o.skew && rho == o.rho;
}

std::string ModContext::to_string() const {
    return skew.to_string() + " / (" + rho.to_string() + ")*(1 - th)S";
}

// ---------------------------------------------------------------------------
// CyclicModuleElem

CyclicModuleElem::CyclicModuleElem(ModContext ctx)
    : ctx_(std::move(ctx)), tail_(MultiPoly::zero(ctx_.skew.ring)) {}

CyclicModuleElem CyclicModuleElem::zero(const ModContext& ctx) {
    return CyclicModuleElem(ctx);
}

CyclicModuleElem CyclicModuleElem::normal_form(const ModContext& ctx, const SkewPoly& raw) {
    if (raw.context() != ctx.skew) throw domain_error("context mismatch");
    CyclicModuleElem out(ctx);
    // c_k th^k splits as r_k th^k + rho*q_k th^k; the second part rewrites
    // down to rho*alpha^{-k}(q_k) via rho*th ~ rho.
    for (const auto& [k, c] : raw.terms()) {
        auto [q, r] = divide_by_principal(c, ctx.rho);
        if (!r.is_zero()) out.support_.emplace(k, std::move(r));
        if (!q.is_zero()) out.tail_ += alpha_inv_pow(ctx.skew.alpha, q, k);
    }
    return out;
}

SkewPoly CyclicModuleElem::lift() const {
    SkewPoly f = SkewPoly::zero(ctx_.skew);
    for (const auto& [k, r] : support_) f += SkewPoly::term(ctx_.skew, r, k);
    if (!tail_.is_zero()) f += SkewPoly::constant(ctx_.skew, ctx_.rho * tail_);
    return f;
}

CyclicModuleElem CyclicModuleElem::act(const SkewPoly& s) const {
    if (s.context() != ctx_.skew) throw domain_error("context mismatch");
    return normal_form(ctx_, lift() * s);
}

bool CyclicModuleElem::operator==(const CyclicModuleElem& o) const {
    return ctx_ == o.ctx_ && support_ == o.support_ && tail_ == o.tail_;
}

std::string CyclicModuleElem::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    if (!support_.empty()) {
        SkewPoly head = SkewPoly::zero(ctx_.skew);
        for (const auto& [k, r] : support_) head += SkewPoly::term(ctx_.skew, r, k);
        out = head.to_string();
    }
    if (!tail_.is_zero()) {
        if (!out.empty()) out += " + ";
        out += "rho*(" + tail_.to_string() + ")";
    }
    return out;
}

// ---------------------------------------------------------------------------
// tail multiplier and the essential probe

std::pair<MultiPoly, CyclicModuleElem> tail_multiplier(const CyclicModuleElem& m) {
    if (m.length() != 1)
        throw domain_error("tail multiplier needs a length-one element");
    const auto& [i, r] = *m.support().begin();
    (void)r;
    const ModContext& ctx = m.context();
    MultiPoly u = alpha_inv_pow(ctx.skew.alpha, ctx.rho, i);
    CyclicModuleElem image = m.act(SkewPoly::constant(ctx.skew, u));
    // m*u = rho*(alpha^{-i}(r_i) + b*u); vanishing would put r_i in rho*R.
    if (!image.tail_only() || image.is_zero())
        throw internal_error("tail multiplier left the guaranteed region");
    return {std::move(u), std::move(image)};
}

namespace {

void exponents_of_degree(unsigned arity, unsigned degree, unsigned pos,
                         std::vector<std::int32_t>& cur, std::vector<Monomial>& out) {
    if (pos + 1 == arity) {
        cur[pos] = static_cast<std::int32_t>(degree);
        out.emplace_back(cur);
        return;
    }
    for (unsigned v = 0; v <= degree; ++v) {
        cur[pos] = static_cast<std::int32_t>(v);
        exponents_of_degree(arity, degree - v, pos + 1, cur, out);
    }
}

std::vector<Monomial> monomials_up_to(unsigned arity, unsigned bound) {
    std::vector<Monomial> out;
    std::vector<std::int32_t> cur(arity, 0);
    for (unsigned d = 0; d <= bound; ++d) exponents_of_degree(arity, d, 0, cur, out);
    return out;
}

}  // namespace

EssentialWitness essential_probe(const CyclicModuleElem& m, unsigned degree_bound,
                                 unsigned length_budget) {
    if (m.is_zero()) throw domain_error("the probe needs a nonzero element");
    const SkewContext& sctx = m.context().skew;
    const std::vector<Monomial> monos = monomials_up_to(sctx.ring.arity(), degree_bound);
    const Scalar one = Scalar::one(sctx.ring.field());

    CyclicModuleElem cur = m;
    SkewPoly acc = SkewPoly::one(sctx);
    for (unsigned step = 0; step <= length_budget; ++step) {
        if (cur.tail_only())
            return {true, acc, cur, "length reached zero after " + std::to_string(step) + " step(s)"};
        if (cur.length() == 1) {
            auto [u, image] = tail_multiplier(cur);
            acc *= SkewPoly::constant(sctx, u);
            return {true, acc, image,
                    "finished with the length-one multiplier alpha^-i(rho)"};
        }
        if (step == length_budget) break;
        bool advanced = false;
        for (long j = 0; j <= static_cast<long>(degree_bound) && !advanced; ++j) {
            for (const Monomial& e : monos) {
                if (j == 0 && e.is_unit_monomial()) continue;
                SkewPoly s = SkewPoly::term(sctx, MultiPoly::term(sctx.ring, e, one), j);
                CyclicModuleElem next = cur.act(s);
                if (!next.is_zero() && next.length() < cur.length()) {
                    cur = next;
                    acc *= s;
                    advanced = true;
                    break;
                }
            }
        }
        if (!advanced)
            return {false, std::nullopt, std::nullopt,
                    "no monomial multiplier within the degree bound reduces the length"};
    }
    return {false, std::nullopt, std::nullopt, "length budget exhausted before reaching the tail part"};
}

// ---------------------------------------------------------------------------
// ideals of R and the submodule lattice

bool ideal_contains(const std::vector<MultiPoly>& gens, const MultiPoly& f) {
    std::vector<MultiPoly> g;
    for (const auto& x : gens) {
        if (x.is_zero()) continue;
        if (!(x.ring() == f.ring())) throw domain_error("generator ring mismatch");
        g.push_back(x);
    }
    if (g.empty()) return f.is_zero();
    for (const auto& x : g)
        if (is_ring_unit(x)) return true;
    if (f.is_zero()) return true;

    const CoeffRing& r = f.ring();
    switch (r.kind()) {
    case RingKind::Polynomial:
    case RingKind::Laurent: {
        if (r.arity() == 1 || g.size() == 1) {
            MultiPoly d = canonical_gens(g).front();
            return divide_by_principal(f, d).second.is_zero();
        }
        if (all_single_term(g)) {
            for (const auto& [m, c] : f.terms()) {
                (void)c;
                bool covered = false;
                for (const auto& x : g)
                    if (x.leading_monomial().divides(m)) { covered = true; break; }
                if (!covered) return false;
            }
            return true;
        }
        throw unsupported_error(
            "ideal membership is decided only for principal and monomial families");
    }
    case RingKind::UnivariateQuotient:
    case RingKind::CoordinateAffineQuotient:
        throw unsupported_error(
            "ideal membership in quotient rings is decided only for unit or zero generators");
    }
    throw internal_error("ideal_contains: bad ring kind");
}

SubmoduleDesc lattice_contract(const SkewContext& ctx, const std::vector<SkewPoly>& j_gens,
                               const Scalar& u) {
    if (u.is_zero()) throw domain_error("u must be a nonzero scalar");
    if (!ctx.alpha.has_inverse()) throw domain_error("the contraction needs alpha^{-1}");
    const SkewPoly d = SkewPoly::constant(ctx, MultiPoly::constant(ctx.ring, u)) -
                       SkewPoly::theta_power(ctx, 1);

    std::vector<MultiPoly> gens;
    for (const auto& j : j_gens) {
        if (j.context() != ctx) throw domain_error("generator context mismatch");
        SkewPoly rem = left_divide(d, j).second;
        if (rem.is_zero()) continue;
        gens.push_back(rem.coeff(0));
    }
    gens = canonical_gens(std::move(gens));

    // r*th = u*alpha^{-1}(r) mod (u - th)S, so J cap R absorbs alpha^{-1}.
    unsigned rounds = 0;
    constexpr unsigned kBound = 32;
    for (; rounds < kBound; ++rounds) {
        bool grew = false;
        std::vector<MultiPoly> next = gens;
        for (const auto& g : gens) {
            MultiPoly gi = ctx.alpha.apply_inverse(g);
            if (!ideal_contains(next, gi)) {
                next.push_back(std::move(gi));
                grew = true;
            }
        }
        if (!grew) break;
        gens = canonical_gens(std::move(next));
    }
    if (rounds == kBound)
        throw domain_error("alpha^{-1}-closure did not stabilize within " +
                           std::to_string(kBound) + " rounds");

    SubmoduleDesc out{std::move(gens), u, ""};
    out.note = "stable after " + std::to_string(rounds) + " closure round(s)";
    return out;
}

std::vector<SkewPoly> lattice_expand(const SkewContext& ctx, const SubmoduleDesc& n) {
    std::vector<SkewPoly> out;
    out.push_back(SkewPoly::constant(ctx, MultiPoly::constant(ctx.ring, n.u)) -
                  SkewPoly::theta_power(ctx, 1));
    for (const auto& g : n.generators) {
        if (!(g.ring() == ctx.ring)) throw domain_error("generator ring mismatch");
        out.push_back(SkewPoly::constant(ctx, g));
    }
    return out;
}

std::string SubmoduleDesc::to_string() const {
    return "(" + u.to_string() + " - th)S + " + gens_to_string(generators) + "S";
}

SimpleTopReport simple_top_check(const SkewContext& ctx, const Scalar& u,
                                 const std::vector<std::vector<MultiPoly>>& candidates) {
    if (u.is_zero()) throw domain_error("u must be a nonzero scalar");
    SimpleTopReport rep;
    const MultiPoly one = MultiPoly::constant(ctx.ring, Scalar::one(ctx.ring.field()));
    for (std::size_t idx = 0; idx < candidates.size(); ++idx) {
        const std::string tag = "candidate " + gens_to_string(candidates[idx]) + ": ";
        std::vector<MultiPoly> g;
        for (const auto& x : candidates[idx])
            if (!x.is_zero()) g.push_back(x);
        if (g.empty()) {
            rep.notes.push_back(tag + "zero ideal, contributes nothing");
            continue;
        }
        try {
            if (ideal_contains(g, one)) {
                rep.notes.push_back(tag + "unit ideal, not proper");
                continue;
            }
            bool stable = true;
            for (const auto& x : g) {
                if (!ideal_contains(g, ctx.alpha.apply(x))) { stable = false; break; }
            }
            if (!stable) {
                rep.notes.push_back(tag + "not alpha-stable on its generators");
                continue;
            }
        } catch (const unsupported_error& e) {
            rep.notes.push_back(tag + "skipped, " + std::string(e.what()));
            continue;
        }
        rep.notes.push_back(tag + "proper alpha-stable ideal, intermediate submodule found");
        if (!rep.obstruction_found) {
            rep.obstruction_found = true;
            rep.witness_index = idx;
            rep.witness = "(" + u.to_string() + " - th)S + " + gens_to_string(g) + "S";
        }
    }
    if (!rep.obstruction_found) rep.notes.push_back("no obstruction found");
    return rep;
}

// ---------------------------------------------------------------------------
// descending chain strictness

ChainReport chain_check(const ModContext& ctx, unsigned long m_max) {
    ChainReport rep;
    rep.m_max = m_max;
    rep.all_strict = true;
    for (unsigned long m = 0; m < m_max; ++m) {
        // th^m lies in th^{m+1}S + rho*S iff every coefficient in degrees
        // <= m sits in rho*R; apply that to f = th^m literally.
        SkewPoly f = SkewPoly::theta_power(ctx.skew, static_cast<long>(m));
        bool member = true;
        for (const auto& [k, c] : f.terms()) {
            if (k > static_cast<long>(m)) continue;
            if (!divide_by_principal(c, ctx.rho).second.is_zero()) { member = false; break; }
        }
        if (member) {
            rep.all_strict = false;
            if (!rep.first_collapse) rep.first_collapse = m;
            rep.certificates.push_back("m=" + std::to_string(m) + ": chain collapses");
        } else {
            rep.certificates.push_back("m=" + std::to_string(m) +
                                       ": coefficient 1 at degree " + std::to_string(m) +
                                       " is outside (" + ctx.rho.to_string() + ")");
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// matrix units in (k^n)[th^{+-1}; cyclic shift]

namespace {

using Tup = std::vector<Scalar>;

Tup tup_zero(const FieldSpec& f, unsigned n) { return Tup(n, Scalar::zero(f)); }

Tup tup_basis(const FieldSpec& f, unsigned n, unsigned i) {
    Tup t = tup_zero(f, n);
    t[i] = Scalar::one(f);
    return t;
}

Tup tup_ones(const FieldSpec& f, unsigned n) { return Tup(n, Scalar::one(f)); }

bool tup_is_zero(const Tup& a) {
    return std::all_of(a.begin(), a.end(), [](const Scalar& c) { return c.is_zero(); });
}

Tup tup_add(const Tup& a, const Tup& b) {
    Tup out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = out[i] + b[i];
    return out;
}

Tup tup_mul(const Tup& a, const Tup& b) {
    Tup out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = out[i] * b[i];
    return out;
}

/// alpha^k componentwise: alpha sends e_i to e_{i+1 mod n}, so the
/// component vector rotates by k (negative k rotates backwards).
Tup tup_shift(const Tup& a, long k) {
    const long n = static_cast<long>(a.size());
    Tup out = a;
    for (long i = 0; i < n; ++i) out[((i + k) % n + n) % n] = a[i];
    return out;
}

struct TupSkew {
    std::map<long, Tup> terms;

    static TupSkew zero() { return {}; }
    static TupSkew element(const Tup& t, long k) {
        TupSkew s;
        if (!tup_is_zero(t)) s.terms.emplace(k, t);
        return s;
    }

    bool is_zero() const { return terms.empty(); }
    bool operator==(const TupSkew& o) const { return terms == o.terms; }

    TupSkew operator+(const TupSkew& o) const {
        TupSkew out = *this;
        for (const auto& [k, t] : o.terms) {
            auto it = out.terms.find(k);
            if (it == out.terms.end()) {
                out.terms.emplace(k, t);
            } else {
                it->second = tup_add(it->second, t);
                if (tup_is_zero(it->second)) out.terms.erase(it);
            }
        }
        return out;
    }

    TupSkew operator*(const TupSkew& o) const {
        TupSkew out;
        for (const auto& [i, a] : terms) {
            for (const auto& [j, b] : o.terms) {
                TupSkew part = element(tup_mul(a, tup_shift(b, i)), i + j);
                out = out + part;
            }
        }
        return out;
    }
};

TupSkew tup_pow(const TupSkew& f, unsigned e, const TupSkew& one) {
    TupSkew out = one;
    for (unsigned i = 0; i < e; ++i) out = out * f;
    return out;
}

}  // namespace

MatrixUnitsReport matrix_units_verify(unsigned n, const FieldSpec& field) {
    if (n == 0) throw domain_error("n must be positive");
    MatrixUnitsReport rep;
    rep.n = n;

    const TupSkew one = TupSkew::element(tup_ones(field, n), 0);
    const TupSkew e1 = TupSkew::element(tup_basis(field, n, 0), 0);

    Tup not_e1 = tup_ones(field, n);
    not_e1[0] = Scalar::zero(field);
    const TupSkew f = TupSkew::element(not_e1, 1);
    const TupSkew a = TupSkew::element(tup_ones(field, n), 1 - static_cast<long>(n));
    const TupSkew b = TupSkew::element(tup_ones(field, n), -1);

    const TupSkew fn1 = tup_pow(f, n - 1, one);
    rep.f_power_formula =
        fn1 == TupSkew::element(tup_basis(field, n, n - 1), static_cast<long>(n) - 1);
    rep.left_unit = a * fn1 == e1;
    rep.right_complement = f * b == TupSkew::element(not_e1, 0);
    rep.partition = a * fn1 + f * b == one;
    rep.nilpotent = (fn1 * f).is_zero();
    rep.theta_gap = true;
    for (unsigned k = 1; k < n; ++k) {
        TupSkew probe = e1 * TupSkew::element(tup_ones(field, n), static_cast<long>(k)) * e1;
        if (!probe.is_zero()) { rep.theta_gap = false; break; }
    }
    rep.theta_period =
        !(e1 * TupSkew::element(tup_ones(field, n), static_cast<long>(n)) * e1).is_zero();

    rep.all_ok = rep.f_power_formula && rep.left_unit && rep.right_complement &&
                 rep.partition && rep.nilpotent && rep.theta_gap && rep.theta_period;
    std::ostringstream os;
    os << "n=" << n << " over " << field.to_string() << ": "
       << (rep.all_ok ? "all matrix-unit identities hold" : "some identity failed");
    rep.detail = os.str();
    return rep;
}

}  // namespace skewlab
