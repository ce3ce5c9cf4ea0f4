#include "skewlab/dynamics.hpp"

#include "skewlab/errors.hpp"
#include "skewlab/linalg.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <sstream>

namespace skewlab {

namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<std::string> point_strings(const Point& a) {
    std::vector<std::string> out;
    out.reserve(a.size());
    for (const auto& c : a) out.push_back(c.to_string());
    return out;
}

void check_point(const PointMap& phi, const Point& a) {
    if (a.size() != phi.arity()) throw domain_error("point arity mismatch");
    for (const auto& c : a)
        if (!(c.field() == phi.field())) throw domain_error("point coordinate from the wrong field");
}

}  // namespace

std::string point_to_string(const Point& a) {
    std::string out = "(";
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) out += ", ";
        out += a[i].to_string();
    }
    return out + ")";
}

// ---------------------------------------------------------------------------
// point maps and orbits

PointMap::PointMap(AlgebraMap alpha) : alpha_(std::move(alpha)) {
    RingKind k = alpha_.ring().kind();
    if (k != RingKind::Polynomial && k != RingKind::Laurent)
        throw domain_error("point maps need a polynomial or Laurent ring");
}

Point PointMap::apply(const Point& a) const {
    check_point(*this, a);
    Point out;
    out.reserve(arity());
    for (unsigned i = 0; i < arity(); ++i) out.push_back(eval_at(alpha_.image(i), a));
    return out;
}

Point PointMap::apply_inverse(const Point& a) const {
    check_point(*this, a);
    if (!alpha_.has_inverse()) throw domain_error("the map carries no inverse");
    Point out;
    out.reserve(arity());
    for (unsigned i = 0; i < arity(); ++i) out.push_back(eval_at(alpha_.inverse_images()[i], a));
    return out;
}

PointMap point_map(const AlgebraMap& alpha) { return PointMap(alpha); }

PointOrbit orbit(const PointMap& phi, const Point& seed, unsigned long max_steps) {
    check_point(phi, seed);
    PointOrbit o;
    o.seed = seed;
    o.points.push_back(seed);
    Point cur = seed;
    for (unsigned long step = 1; step <= max_steps; ++step) {
        cur = phi.apply(cur);
        if (cur == seed) {
            o.period = step;
            return o;
        }
        o.points.push_back(cur);
    }
    o.bound = max_steps;
    return o;
}

// ---------------------------------------------------------------------------
// exhaustive finite-field cycle scan

CycleDecomposition periodic_points_ff(const AlgebraMap& alpha, std::uint64_t point_cap) {
    const CoeffRing& r = alpha.ring();
    if (r.field().kind() != FieldKind::PrimeField)
        throw domain_error("the exhaustive scan runs over prime fields");
    if (r.kind() != RingKind::Polynomial && r.kind() != RingKind::Laurent)
        throw domain_error("point maps need a polynomial or Laurent ring");
    if (!alpha.has_inverse())
        throw domain_error("the scan needs a bijective point map; supply an invertible alpha");

    const std::uint64_t p = r.field().characteristic();
    const unsigned t = r.arity();
    std::uint64_t total = 1;
    for (unsigned i = 0; i < t; ++i) {
        if (total > point_cap / p)
            throw domain_error("p^t exceeds the scan cap of " + std::to_string(point_cap));
        total *= p;
    }
    // Laurent coordinates must avoid zero; restrict to the torus there.
    const bool torus = r.kind() == RingKind::Laurent;

    PointMap phi(alpha);
    std::vector<Scalar> residues;
    residues.reserve(p);
    for (std::uint64_t v = 0; v < p; ++v)
        residues.push_back(Scalar::from_int(r.field(), static_cast<long>(v)));

    auto decode = [&](std::uint64_t key) {
        Point a(t, Scalar::zero(r.field()));
        for (unsigned i = t; i-- > 0;) {
            a[i] = residues[key % p];
            key /= p;
        }
        return a;  // key = a_0 * p^{t-1} + ... + a_{t-1}, lex-compatible
    };
    auto encode = [&](const Point& a) {
        std::uint64_t key = 0;
        for (unsigned i = 0; i < t; ++i) key = key * p + a[i].residue();
        return key;
    };
    auto skip = [&](std::uint64_t key) {
        if (!torus) return false;
        Point a = decode(key);
        return std::any_of(a.begin(), a.end(), [](const Scalar& c) { return c.is_zero(); });
    };

    CycleDecomposition out;
    out.p = p;
    out.arity = t;
    out.total_points = 0;
    std::vector<bool> visited(total, false);
    for (std::uint64_t start = 0; start < total; ++start) {
        if (visited[start] || skip(start)) continue;
        unsigned long length = 0;
        std::uint64_t least = start, key = start;
        do {
            visited[key] = true;
            least = std::min(least, key);
            ++length;
            key = encode(phi.apply(decode(key)));
        } while (key != start && !visited[key]);
        if (key != start) throw internal_error("point map failed to close a cycle");
        out.cycles.push_back({decode(least), length});
        out.histogram[length] += 1;
        out.total_points += length;
    }
    return out;
}

// ---------------------------------------------------------------------------
// symbolic fixed points of Henon-shaped maps

namespace {

UniPoly compose(const UniPoly& f, const UniPoly& g) {
    UniPoly out = UniPoly::zero(f.field());
    for (int i = f.degree(); i >= 0; --i)
        out = out * g + UniPoly::constant(f.coeff(static_cast<unsigned>(i)));
    return out;
}

/// All divisors of |v| by trial division; v must fit the effort guard.
std::vector<mpz_class> divisors_of(const mpz_class& v) {
    mpz_class n = abs(v);
    std::vector<mpz_class> out;
    for (mpz_class d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            out.push_back(n / d);
        }
    }
    return out;
}

}  // namespace

std::pair<std::vector<Scalar>, bool> field_roots(const UniPoly& f0) {
    const FieldSpec& F = f0.field();
    std::vector<Scalar> roots;
    if (f0.is_zero()) return {roots, false};

    UniPoly f = f0;
    // strip the power of t so the constant term is nonzero
    unsigned k = 0;
    while (f.coeff(0).is_zero() && f.degree() > 0) {
        std::vector<Scalar> shifted(f.coeffs().begin() + 1, f.coeffs().end());
        f = UniPoly(F, std::move(shifted));
        ++k;
    }
    if (k > 0) roots.push_back(Scalar::zero(F));
    if (f.degree() == 0) return {roots, true};
    if (f.degree() == 1) {
        Scalar r = -(f.coeff(0) / f.coeff(1));
        if (roots.empty() || !(r == roots.front())) roots.push_back(r);
        return {roots, true};
    }

    if (F.kind() == FieldKind::PrimeField) {
        for (std::uint64_t v = 0; v < F.characteristic(); ++v) {
            Scalar c = Scalar::from_int(F, static_cast<long>(v));
            if (c.is_zero() && k > 0) continue;
            if (f.eval(c).is_zero()) roots.push_back(c);
        }
        return {roots, true};
    }
    if (F.kind() == FieldKind::Rationals) {
        mpz_class denom_lcm = 1;
        for (const auto& c : f.coeffs())
            denom_lcm = lcm(denom_lcm, c.rational_value().get_den());
        std::vector<mpz_class> ic;
        for (const auto& c : f.coeffs()) {
            mpq_class scaled = c.rational_value() * denom_lcm;
            scaled.canonicalize();
            ic.push_back(scaled.get_num());
        }
        const mpz_class bound(1000000000);
        if (abs(ic.front()) > bound || abs(ic.back()) > bound)
            return {roots, false};  // divisor enumeration too costly; stay honest
        for (const mpz_class& num : divisors_of(ic.front())) {
            for (const mpz_class& den : divisors_of(ic.back())) {
                for (int sign = -1; sign <= 1; sign += 2) {
                    mpq_class cand(sign * num, den);
                    cand.canonicalize();
                    Scalar c = Scalar::from_mpq(F, cand);
                    if (f.eval(c).is_zero() &&
                        std::find(roots.begin(), roots.end(), c) == roots.end())
                        roots.push_back(c);
                }
            }
        }
        return {roots, true};
    }
    return {roots, false};  // nonlinear over a cyclotomic field: not attempted
}

SymbolicFixedPoints fixed_points_symbolic(const AlgebraMap& alpha, unsigned period) {
    if (alpha.map_class() != MapClass::GeneralizedHenon)
        throw domain_error("symbolic fixed points need a Henon-shaped map");
    if (period != 1 && period != 2) throw domain_error("period must be 1 or 2");

    const HenonData hd = alpha.henon_data();
    const FieldSpec& F = alpha.ring().field();
    const UniPoly X = UniPoly::variable(F);
    const Scalar one = Scalar::one(F);

    SymbolicFixedPoints out;
    out.period = period;
    out.swapped = hd.swapped;

    std::vector<Point> pts;  // in the canonical orientation (x, y) -> (y, lx + b(y))
    bool complete = false;
    if (period == 1) {
        // on the diagonal y = x: lambda*x + beta(x) = x
        out.condition = X * hd.lambda + hd.beta - X;
        auto [roots, full] = field_roots(out.condition);
        complete = full;
        out.roots = roots;
        for (const auto& r : roots) pts.push_back({r, r});
    } else if (hd.lambda == one) {
        // phi^2 fixes (a, b) iff beta(a) = beta(b) = 0
        out.condition = hd.beta;
        auto [roots, full] = field_roots(out.condition);
        complete = full;
        out.roots = roots;
        for (const auto& ra : roots)
            for (const auto& rb : roots) pts.push_back({ra, rb});
    } else {
        // b = beta(a)/(1 - lambda) from one coordinate of phi^2 = id;
        // substituting into the other gives beta(b(a)) = (1 - lambda) a
        Scalar c = (one - hd.lambda).inverse();
        UniPoly inner = hd.beta * c;
        out.condition = compose(hd.beta, inner) - X * (one - hd.lambda);
        auto [roots, full] = field_roots(out.condition);
        complete = full;
        out.roots = roots;
        for (const auto& r : roots) pts.push_back({r, inner.eval(r)});
    }

    if (hd.swapped)
        for (auto& a : pts) std::swap(a[0], a[1]);
    out.points = std::move(pts);
    out.roots_complete = complete;

    std::ostringstream os;
    os << "period " << period << (period == 2 ? " (points of period dividing 2)" : "") << "; "
       << (complete ? "root search complete over this field"
                    : "root search incomplete over this field");
    out.note = os.str();
    return out;
}

// ---------------------------------------------------------------------------
// orbital exponent

OrbitalExponentReport orbital_exponent(const PointMap& phi, const std::vector<Point>& set,
                                       unsigned long bound) {
    if (set.empty()) throw domain_error("the point set is empty");
    if (bound == 0) throw domain_error("the bound must be positive");
    for (const auto& a : set) check_point(phi, a);
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = i + 1; j < set.size(); ++j)
            if (set[i] == set[j]) throw domain_error("the point set has repeats");
    if (!phi.has_inverse())
        throw domain_error("negative exponents need an invertible map");

    auto in_set = [&](const Point& a) {
        return std::find(set.begin(), set.end(), a) != set.end();
    };

    std::set<long> returns;
    for (const auto& seed : set) {
        PointOrbit o = orbit(phi, seed, bound);
        if (o.is_periodic())
            throw domain_error("seed " + point_to_string(seed) +
                               " is periodic; the exponent needs infinite orbits");
        for (unsigned long m = 1; m <= bound && m < o.points.size(); ++m)
            if (in_set(o.points[m])) returns.insert(static_cast<long>(m));
        Point cur = seed;
        for (unsigned long m = 1; m <= bound; ++m) {
            cur = phi.apply_inverse(cur);
            if (in_set(cur)) returns.insert(-static_cast<long>(m));
        }
    }

    OrbitalExponentReport rep;
    rep.bound = bound;
    rep.returns.assign(returns.begin(), returns.end());
    unsigned long worst = 0;
    for (long m : returns) worst = std::max<unsigned long>(worst, static_cast<unsigned long>(m < 0 ? -m : m));
    rep.n = worst + 1;
    rep.note = "n = " + std::to_string(rep.n) + " clears every detected return; valid for |exponents| <= " +
               std::to_string(bound);
    return rep;
}

// ---------------------------------------------------------------------------
// curves through point sets

std::optional<MultiPoly> curve_membership(const CoeffRing& r, const std::vector<Point>& pts,
                                          unsigned max_degree) {
    if (r.kind() != RingKind::Polynomial || r.arity() != 2)
        throw domain_error("curves live in a two-variable polynomial ring");
    if (max_degree == 0) throw domain_error("the degree bound must be at least 1");
    if (pts.empty()) throw domain_error("no points given");
    for (const auto& a : pts) {
        if (a.size() != 2) throw domain_error("points must have two coordinates");
        for (const auto& c : a)
            if (!(c.field() == r.field())) throw domain_error("point coordinate from the wrong field");
    }
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (pts[i] == pts[j]) throw domain_error("points must be distinct");

    for (unsigned d = 1; d <= max_degree; ++d) {
        std::vector<Monomial> cols;
        for (unsigned total = 0; total <= d; ++total)
            for (unsigned i = 0; i <= total; ++i)
                cols.push_back(Monomial({static_cast<std::int32_t>(total - i),
                                         static_cast<std::int32_t>(i)}));
        std::vector<std::vector<Scalar>> rows;
        rows.reserve(pts.size());
        for (const auto& a : pts) {
            std::vector<Scalar> row;
            row.reserve(cols.size());
            for (const auto& m : cols)
                row.push_back(a[0].pow(m.exponent(0)) * a[1].pow(m.exponent(1)));
            rows.push_back(std::move(row));
        }
        auto basis = nullspace(Matrix::from_rows(r.field(), rows));
        if (basis.empty()) continue;
        MultiPoly f = MultiPoly::zero(r);
        for (std::size_t c = 0; c < cols.size(); ++c)
            if (!basis[0][c].is_zero()) f += MultiPoly::term(r, cols[c], basis[0][c]);
        return f * f.leading_coeff().inverse();
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// exports

std::string orbit_json(const PointOrbit& o) {
    ordered_json j;
    j["seed"] = point_strings(o.seed);
    j["status"] = o.is_periodic() ? "periodic" : "open";
    if (o.is_periodic())
        j["period"] = *o.period;
    else
        j["bound"] = o.bound;
    ordered_json pts = ordered_json::array();
    for (const auto& a : o.points) pts.push_back(point_strings(a));
    j["points"] = pts;
    return j.dump(2);
}

std::string orbit_csv(const PointOrbit& o) {
    std::ostringstream os;
    os << "step";
    for (std::size_t i = 0; i < o.seed.size(); ++i) os << ",c" << i;
    os << "\n";
    for (std::size_t s = 0; s < o.points.size(); ++s) {
        os << s;
        for (const auto& c : o.points[s]) os << "," << c.to_string();
        os << "\n";
    }
    return os.str();
}

std::string cycles_json(const CycleDecomposition& d) {
    ordered_json j;
    j["p"] = d.p;
    j["arity"] = d.arity;
    j["total_points"] = d.total_points;
    ordered_json cycles = ordered_json::array();
    for (const auto& c : d.cycles) {
        ordered_json rec;
        rec["representative"] = point_strings(c.representative);
        rec["length"] = c.length;
        cycles.push_back(rec);
    }
    j["cycles"] = cycles;
    ordered_json hist = ordered_json::array();
    for (const auto& [len, count] : d.histogram) {
        ordered_json rec;
        rec["length"] = len;
        rec["count"] = count;
        hist.push_back(rec);
    }
    j["histogram"] = hist;
    return j.dump(2);
}

std::string cycles_csv(const CycleDecomposition& d) {
    std::ostringstream os;
    os << "length,count\n";
    for (const auto& [len, count] : d.histogram) os << len << "," << count << "\n";
    return os.str();
}

}  // namespace skewlab
