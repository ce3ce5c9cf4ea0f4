#include "skewlab/skewpoly.hpp"

#include <algorithm>
#include <functional>

namespace skewlab {

// ---------------------------------------------------------------------------
// SkewContext

SkewContext SkewContext::poly(const CoeffRing& r, const AlgebraMap& alpha) {
    if (alpha.ring() != r) throw domain_error("twisting map acts on a different ring");
    return SkewContext{r, alpha, false};
}

SkewContext SkewContext::laurent_ring(const CoeffRing& r, const AlgebraMap& alpha) {
    if (alpha.ring() != r) throw domain_error("twisting map acts on a different ring");
    if (!alpha.has_inverse())
        throw domain_error("Laurent twists need an invertible map (th^{-1} r = alpha^{-1}(r) th^{-1})");
    return SkewContext{r, alpha, true};
}

bool SkewContext::operator==(const SkewContext& o) const {
    return laurent == o.laurent && ring == o.ring && alpha.images() == o.alpha.images();
}

std::string SkewContext::to_string() const {
    return ring.to_string() + (laurent ? "[th^+-1; " : "[th; ") + alpha.to_string() + "]";
}

// ---------------------------------------------------------------------------
// SkewPoly

void SkewPoly::set(long k, MultiPoly v) {
    if (k < 0 && !ctx_.laurent)
        throw domain_error("negative th-degree outside a Laurent context");
    if (v.is_zero())
        c_.erase(k);
    else
        c_.insert_or_assign(k, std::move(v));
}

SkewPoly SkewPoly::zero(const SkewContext& ctx) { return SkewPoly(ctx); }

SkewPoly SkewPoly::one(const SkewContext& ctx) {
    return constant(ctx, MultiPoly::from_int(ctx.ring, 1));
}

SkewPoly SkewPoly::constant(const SkewContext& ctx, const MultiPoly& r) {
    return term(ctx, r, 0);
}

SkewPoly SkewPoly::theta_power(const SkewContext& ctx, long k) {
    return term(ctx, MultiPoly::from_int(ctx.ring, 1), k);
}

SkewPoly SkewPoly::term(const SkewContext& ctx, const MultiPoly& r, long k) {
    if (r.ring() != ctx.ring) throw domain_error("coefficient from the wrong ring");
    SkewPoly f(ctx);
    f.set(k, r);
    return f;
}

long SkewPoly::degree() const {
    if (c_.empty()) throw domain_error("degree of zero");
    return c_.rbegin()->first;
}

long SkewPoly::low_degree() const {
    if (c_.empty()) throw domain_error("low degree of zero");
    return c_.begin()->first;
}

MultiPoly SkewPoly::coeff(long k) const {
    auto it = c_.find(k);
    return it == c_.end() ? MultiPoly::zero(ctx_.ring) : it->second;
}

const MultiPoly& SkewPoly::leading_coeff() const {
    if (c_.empty()) throw domain_error("leading coefficient of zero");
    return c_.rbegin()->second;
}

SkewPoly SkewPoly::operator+(const SkewPoly& o) const {
    if (ctx_ != o.ctx_) throw domain_error("skew arithmetic across different contexts");
    SkewPoly out = *this;
    for (const auto& [k, v] : o.c_) {
        auto it = out.c_.find(k);
        if (it == out.c_.end())
            out.set(k, v);
        else
            out.set(k, it->second + v);
    }
    return out;
}

SkewPoly SkewPoly::operator-() const {
    SkewPoly out = *this;
    for (auto& [k, v] : out.c_) v = -v;
    return out;
}

SkewPoly SkewPoly::operator-(const SkewPoly& o) const { return *this + (-o); }

SkewPoly SkewPoly::operator*(const SkewPoly& o) const {
    if (ctx_ != o.ctx_) throw domain_error("skew arithmetic across different contexts");
    SkewPoly out(ctx_);
    if (c_.empty() || o.c_.empty()) return out;

    // walk the left factor's degrees outward from 0, twisting the right
    // factor's coefficients one alpha-step at a time
    auto accumulate = [&](long i, const MultiPoly& r,
                          const std::map<long, MultiPoly>& twisted) {
        for (const auto& [j, s] : twisted) {
            long k = i + j;
            auto it = out.c_.find(k);
            if (it == out.c_.end())
                out.set(k, r * s);
            else
                out.set(k, it->second + r * s);
        }
    };

    std::map<long, MultiPoly> cur = o.c_;
    long cur_i = 0;
    for (auto it = c_.lower_bound(0); it != c_.end(); ++it) {
        while (cur_i < it->first) {
            for (auto& [j, s] : cur) s = ctx_.alpha.apply(s);
            ++cur_i;
        }
        accumulate(it->first, it->second, cur);
    }
    if (c_.begin()->first < 0) {
        cur = o.c_;
        cur_i = 0;
        for (auto it = std::make_reverse_iterator(c_.lower_bound(0)); it != c_.rend(); ++it) {
            while (cur_i > it->first) {
                for (auto& [j, s] : cur) s = ctx_.alpha.apply_inverse(s);
                --cur_i;
            }
            accumulate(it->first, it->second, cur);
        }
    }
    return out;
}

SkewPoly SkewPoly::pow(unsigned e) const {
    SkewPoly acc = one(ctx_);
    for (unsigned i = 0; i < e; ++i) acc = acc * *this;
    return acc;
}

std::string SkewPoly::to_string() const {
    if (c_.empty()) return "0";
    std::string out;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        const auto& [k, v] = *it;
        std::string piece;
        std::string base = k == 0 ? "" : (k == 1 ? "th" : "th^" + std::to_string(k));
        bool negated = false;
        if (k != 0 && v == MultiPoly::from_int(ctx_.ring, 1)) {
            piece = base;
        } else if (k != 0 && v == MultiPoly::from_int(ctx_.ring, -1)) {
            piece = base;
            negated = true;
        } else {
            std::string cs = v.to_string();
            if (v.terms().size() > 1) {
                cs = "(" + cs + ")";
            } else if (cs.size() > 1 && cs[0] == '-') {
                negated = true;
                cs = cs.substr(1);
            }
            piece = k == 0 ? cs : cs + "*" + base;
        }
        if (out.empty())
            out = negated ? "-" + piece : piece;
        else
            out += (negated ? " - " : " + ") + piece;
    }
    return out;
}

SkewPoly skew_mul(const SkewPoly& f, const SkewPoly& g) { return f * g; }

// ---------------------------------------------------------------------------
// division and membership

std::pair<SkewPoly, SkewPoly> left_divide(const SkewPoly& g, const SkewPoly& w) {
    if (g.context() != w.context()) throw domain_error("division across different contexts");
    const SkewContext& ctx = g.context();
    if (g.is_zero()) throw domain_error("division by zero");
    const MultiPoly& lead = g.leading_coeff();
    if (lead.total_degree() != 0)
        throw domain_error("left division needs a unit scalar leading coefficient");
    if (!ctx.alpha.has_inverse())
        throw domain_error("left division twists by alpha^{-deg g}; no inverse available");

    const long d = g.degree();
    const Scalar c = lead.leading_coeff();
    const Scalar cinv = c.inverse();

    SkewPoly h = SkewPoly::zero(ctx);
    SkewPoly r = w;
    while (!r.is_zero() && r.degree() >= d) {
        long n = r.degree();
        MultiPoly target = r.leading_coeff() * cinv;
        for (long s = 0; s < (d >= 0 ? d : -d); ++s)
            target = d >= 0 ? ctx.alpha.apply_inverse(target) : ctx.alpha.apply(target);
        SkewPoly step = SkewPoly::term(ctx, target, n - d);
        h += step;
        r -= g * step;
        if (!r.is_zero() && r.degree() >= n)
            throw internal_error("left division failed to reduce the degree");
    }
    return {h, r};
}

MembershipResult membership_one_minus_a_theta(const SkewPoly& f, const MultiPoly& a) {
    const SkewContext& ctx = f.context();
    if (ctx.ring.kind() != RingKind::Polynomial && ctx.ring.kind() != RingKind::Laurent)
        throw domain_error("membership test needs a domain coefficient ring");
    if (a.ring() != ctx.ring) throw domain_error("a from the wrong ring");
    if (a.is_zero()) throw domain_error("membership test needs a != 0");
    if (!ctx.alpha.has_inverse())
        throw domain_error("membership elimination needs an invertible twist");

    // over the Laurent ring, clear negative degrees: f in I iff f*th^N in I,
    // and the cofactor shifts back by th^{-N}
    if (ctx.laurent && !f.is_zero() && f.low_degree() < 0) {
        long N = -f.low_degree();
        MembershipResult shifted =
            membership_one_minus_a_theta(f * SkewPoly::theta_power(ctx, N), a);
        if (shifted.member)
            shifted.cofactor = *shifted.cofactor * SkewPoly::theta_power(ctx, -N);
        return shifted;
    }

    SkewPoly one_minus = SkewPoly::one(ctx) - SkewPoly::term(ctx, a, 1);
    SkewPoly h = SkewPoly::zero(ctx);
    SkewPoly rem = f;
    while (!rem.is_zero() && rem.degree() > 0) {
        long n = rem.degree();
        auto [q, r0] = divide_by_principal(rem.leading_coeff(), a);
        if (!r0.is_zero()) {
            return {false, std::nullopt,
                    "coefficient at degree " + std::to_string(n) + " is not divisible by a"};
        }
        SkewPoly step = SkewPoly::term(ctx, -ctx.alpha.apply_inverse(q), n - 1);
        h += step;
        rem -= one_minus * step;
        if (!rem.is_zero() && rem.degree() >= n)
            throw internal_error("membership elimination failed to reduce the degree");
    }
    if (!rem.is_zero())
        return {false, std::nullopt, "nonzero degree-0 residue after elimination"};
    return {true, h, ""};
}

// ---------------------------------------------------------------------------
// twisted norms and the membership probe

MultiPoly norm_product(const AlgebraMap& alpha, const MultiPoly& a, unsigned long n) {
    if (a.ring() != alpha.ring()) throw domain_error("norm_product: a from the wrong ring");
    if (n == 0) throw domain_error("norm_product needs n >= 1");
    MultiPoly acc = a;
    MultiPoly twisted = a;
    for (unsigned long k = 1; k < n; ++k) {
        twisted = alpha.apply(twisted);
        acc *= twisted;
    }
    return acc;
}

IdealSpec IdealSpec::principal(const MultiPoly& g, std::string label) {
    IdealSpec s;
    s.kind = Kind::Principal;
    s.generator = g;
    s.label = label.empty() ? "(" + g.to_string() + ")" : std::move(label);
    return s;
}

IdealSpec IdealSpec::coordinate(const std::vector<std::pair<unsigned, Scalar>>& assignments,
                                std::string label) {
    IdealSpec s;
    s.kind = Kind::CoordinateAffine;
    s.assignments = assignments;
    if (label.empty()) {
        label = "(";
        for (std::size_t i = 0; i < assignments.size(); ++i) {
            if (i) label += ", ";
            label += "x_" + std::to_string(assignments[i].first) + " - " +
                     assignments[i].second.to_string();
        }
        label += ")";
    }
    s.label = std::move(label);
    return s;
}

namespace {

struct IdealTester {
    // membership of ring elements in the ideal
    std::function<bool(const MultiPoly&)> contains;
};

IdealTester make_tester(const AlgebraMap& alpha, const IdealSpec& spec) {
    const CoeffRing& r = alpha.ring();
    if (spec.kind == IdealSpec::Kind::Principal) {
        if (!spec.generator || spec.generator->ring() != r)
            throw domain_error("principal ideal generator missing or from the wrong ring");
        if (spec.generator->is_zero())
            throw domain_error("zero generator is not a usable ideal for the probe");
        MultiPoly g = *spec.generator;
        // alpha-stability: alpha(g) must lie in (g)
        if (!divide_by_principal(alpha.apply(g), g).second.is_zero())
            throw domain_error("ideal " + spec.label + " is not alpha-stable");
        return {[g](const MultiPoly& f) { return divide_by_principal(f, g).second.is_zero(); }};
    }
    if (r.kind() != RingKind::Polynomial)
        throw domain_error("coordinate ideals need a polynomial coefficient ring");
    CoeffRing q = quotient_ring(r, spec.assignments);
    // alpha-stability: every generator x_i - v_i must map into the ideal
    for (const auto& [var, val] : spec.assignments) {
        MultiPoly gen = alpha.image(var) - MultiPoly::constant(r, val);
        if (!into_quotient(q, gen).is_zero())
            throw domain_error("ideal " + spec.label + " is not alpha-stable");
    }
    return {[q](const MultiPoly& f) { return into_quotient(q, f).is_zero(); }};
}

} // namespace

ProbeReport special_probe(const AlgebraMap& alpha, const MultiPoly& a,
                          const std::vector<IdealSpec>& ideals, unsigned long n_max) {
    if (a.ring() != alpha.ring()) throw domain_error("special_probe: a from the wrong ring");
    if (n_max == 0) throw domain_error("special_probe needs n_max >= 1");

    std::vector<IdealTester> testers;
    testers.reserve(ideals.size());
    for (const auto& spec : ideals) testers.push_back(make_tester(alpha, spec));

    ProbeReport report;
    report.n_max = n_max;
    report.entries.resize(ideals.size());
    for (std::size_t i = 0; i < ideals.size(); ++i) report.entries[i].label = ideals[i].label;

    MultiPoly norm = a;
    MultiPoly twisted = a;
    for (unsigned long n = 1; n <= n_max; ++n) {
        if (n > 1) {
            twisted = alpha.apply(twisted);
            norm *= twisted;
        }
        if (norm.is_zero() && report.norms_nonzero) {
            report.norms_nonzero = false;
            report.first_zero_norm = n;
        }
        for (std::size_t i = 0; i < testers.size(); ++i) {
            if (!report.entries[i].least_n && testers[i].contains(norm))
                report.entries[i].least_n = n;
        }
    }
    for (auto& e : report.entries)
        if (!e.least_n)
            e.note = "no twisted norm lands in the ideal for n <= " + std::to_string(n_max);
    return report;
}

// ---------------------------------------------------------------------------
// power subring decomposition

std::vector<SkewPoly> power_subring_decompose(const SkewPoly& f, unsigned n) {
    if (n == 0) throw domain_error("power subring index must be >= 1");
    const SkewContext& ctx = f.context();
    std::vector<SkewPoly> parts(n, SkewPoly::zero(ctx));
    for (const auto& [k, v] : f.terms()) {
        long i = ((k % static_cast<long>(n)) + static_cast<long>(n)) % static_cast<long>(n);
        long base = k - i; // divisible by n
        MultiPoly shifted = v;
        if (i > 0) {
            if (!ctx.alpha.has_inverse())
                throw domain_error("decomposition shift th^{-i} needs an invertible twist");
            for (long s = 0; s < i; ++s) shifted = ctx.alpha.apply_inverse(shifted);
        }
        parts[static_cast<std::size_t>(i)] += SkewPoly::term(ctx, shifted, base);
    }
    return parts;
}

} // namespace skewlab
