#include "skewlab/unipoly.hpp"

#include <algorithm>
#include <cstdlib>

namespace skewlab {

UniPoly::UniPoly(const FieldSpec& f, std::vector<Scalar> coeffs) : field_(f), c_(std::move(coeffs)) {
    for (const auto& c : c_)
        if (!(c.field() == f)) throw domain_error("UniPoly coefficient field mismatch");
    trim();
}

void UniPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UniPoly UniPoly::constant(const Scalar& c) {
    UniPoly p(c.field());
    if (!c.is_zero()) p.c_ = {c};
    return p;
}

UniPoly UniPoly::variable(const FieldSpec& f) {
    UniPoly p(f);
    p.c_ = {Scalar::zero(f), Scalar::one(f)};
    return p;
}

UniPoly UniPoly::term(const Scalar& c, unsigned k) {
    UniPoly p(c.field());
    if (c.is_zero()) return p;
    p.c_.assign(k + 1, Scalar::zero(c.field()));
    p.c_[k] = c;
    return p;
}

Scalar UniPoly::coeff(unsigned i) const {
    if (i < c_.size()) return c_[i];
    return Scalar::zero(field_);
}

const Scalar& UniPoly::leading() const {
    if (c_.empty()) throw domain_error("leading coefficient of zero polynomial");
    return c_.back();
}

UniPoly UniPoly::operator-() const {
    UniPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
    if (!(field_ == o.field_)) throw domain_error("UniPoly field mismatch");
    UniPoly r = *this;
    if (r.c_.size() < o.c_.size()) r.c_.resize(o.c_.size(), Scalar::zero(field_));
    for (std::size_t i = 0; i < o.c_.size(); ++i) r.c_[i] += o.c_[i];
    r.trim();
    return r;
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + (-o); }

UniPoly UniPoly::operator*(const UniPoly& o) const {
    if (!(field_ == o.field_)) throw domain_error("UniPoly field mismatch");
    if (c_.empty() || o.c_.empty()) return UniPoly(field_);
    UniPoly r(field_);
    r.c_.assign(c_.size() + o.c_.size() - 1, Scalar::zero(field_));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
    }
    r.trim();
    return r;
}

UniPoly UniPoly::operator*(const Scalar& c) const {
    UniPoly r = *this;
    for (auto& x : r.c_) x *= c;
    r.trim();
    return r;
}

UniPoly UniPoly::pow(unsigned e) const {
    UniPoly acc = constant(Scalar::one(field_));
    UniPoly base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

UniPoly UniPoly::monic() const {
    if (is_zero()) throw domain_error("monic of zero polynomial");
    return *this * leading().inverse();
}

UniPoly UniPoly::derivative() const {
    UniPoly r(field_);
    if (c_.size() <= 1) return r;
    r.c_.reserve(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
        r.c_.push_back(c_[i] * Scalar::from_int(field_, static_cast<long>(i)));
    r.trim();
    return r;
}

Scalar UniPoly::eval(const Scalar& x) const {
    Scalar acc = Scalar::zero(field_);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

std::pair<UniPoly, UniPoly> UniPoly::divrem(const UniPoly& d) const {
    if (!(field_ == d.field_)) throw domain_error("UniPoly field mismatch");
    if (d.is_zero()) throw domain_error("division by zero polynomial");
    UniPoly q(field_), r = *this;
    if (r.c_.size() >= d.c_.size())
        q.c_.assign(r.c_.size() - d.c_.size() + 1, Scalar::zero(field_));
    const Scalar dl_inv = d.leading().inverse();
    while (!r.c_.empty() && r.c_.size() >= d.c_.size()) {
        Scalar c = r.c_.back() * dl_inv;
        std::size_t shift = r.c_.size() - d.c_.size();
        q.c_[shift] = c;
        for (std::size_t i = 0; i < d.c_.size(); ++i) r.c_[shift + i] -= c * d.c_[i];
        r.trim();
    }
    q.trim();
    return {q, r};
}

std::string UniPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    auto needs_parens = [](const std::string& s) {
        return s.find(' ') != std::string::npos || s.find('+') != std::string::npos;
    };
    std::string out;
    for (std::size_t idx = c_.size(); idx-- > 0;) {
        if (c_[idx].is_zero()) continue;
        Scalar c = c_[idx];
        std::string sign;
        if (!out.empty()) {
            // pull a leading minus out of plain coefficients to print "a - b"
            if (c.as_rational() && *c.as_rational() < 0) {
                sign = " - ";
                c = -c;
            } else {
                sign = " + ";
            }
        } else if (c.as_rational() && *c.as_rational() < 0) {
            sign = "-";
            c = -c;
        }
        std::string cs = c.to_string();
        std::string body;
        if (idx == 0) {
            body = needs_parens(cs) ? "(" + cs + ")" : cs;
        } else {
            if (c.is_one()) {
                body = "";
            } else {
                body = (needs_parens(cs) ? "(" + cs + ")" : cs) + "*";
            }
            body += var;
            if (idx > 1) body += "^" + std::to_string(idx);
        }
        out += sign + body;
    }
    return out;
}

UniPoly poly_gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly x = a, y = b;
    while (!y.is_zero()) {
        UniPoly r = x.divrem(y).second;
        x = std::move(y);
        y = std::move(r);
    }
    if (x.is_zero()) return x;
    return x.monic();
}

UniPoly cyclotomic_poly(unsigned long n) {
    const auto& coeffs = detail::cyclotomic_coeffs(n);
    const FieldSpec Q = FieldSpec::rationals();
    std::vector<Scalar> c;
    c.reserve(coeffs.size());
    for (const auto& q : coeffs) c.push_back(Scalar::from_mpq(Q, q));
    return UniPoly(Q, std::move(c));
}

// ---------------------------------------------------------------------------
// root search

namespace {

// divisors of |z|, positive, capped; returns empty on failure
std::vector<mpz_class> mpz_divisors(const mpz_class& z, std::string& note) {
    mpz_class n = abs(z);
    if (n == 0) return {};
    std::vector<std::pair<mpz_class, unsigned>> fac;
    for (mpz_class p = 2; p * p <= n && p < 1000000; p = (p == 2 ? mpz_class(3) : mpz_class(p + 2))) {
        if (n % p == 0) {
            unsigned e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            fac.emplace_back(p, e);
        }
    }
    if (n > 1) {
        if (mpz_probab_prime_p(n.get_mpz_t(), 40) == 0) {
            note = "coefficient with a large composite factor; rational root search incomplete";
            return {};
        }
        fac.emplace_back(n, 1);
    }
    std::vector<mpz_class> ds{1};
    for (auto& [p, e] : fac) {
        std::size_t base = ds.size();
        mpz_class pk = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) {
                ds.push_back(ds[j] * pk);
                if (ds.size() > 100000) {
                    note = "too many divisor candidates; rational root search incomplete";
                    return {};
                }
            }
        }
    }
    return ds;
}

// all rational roots of f over Q with multiplicities, via candidate testing
// and deflation; ok=false when the candidate set could not be enumerated
void rational_roots(const UniPoly& f, std::vector<Scalar>& roots, std::vector<unsigned>& mult,
                    int& remaining_degree, bool& ok, std::string& note) {
    const FieldSpec Q = FieldSpec::rationals();
    UniPoly g = f;
    ok = true;

    // strip roots at zero
    unsigned zero_mult = 0;
    while (!g.is_zero() && g.coeff(0).is_zero()) {
        std::vector<Scalar> shifted(g.coeffs().begin() + 1, g.coeffs().end());
        g = UniPoly(Q, std::move(shifted));
        ++zero_mult;
    }
    if (zero_mult > 0) {
        roots.push_back(Scalar::zero(Q));
        mult.push_back(zero_mult);
    }

    while (g.degree() >= 1) {
        // clear denominators to an integer polynomial
        mpz_class den_lcm = 1;
        for (const auto& c : g.coeffs()) den_lcm = lcm(den_lcm, c.rational_value().get_den());
        std::vector<mpz_class> ic;
        ic.reserve(g.coeffs().size());
        for (const auto& c : g.coeffs()) {
            mpq_class scaled = c.rational_value() * mpq_class(den_lcm);
            ic.push_back(scaled.get_num());
        }
        std::string note0, note1;
        auto ps = mpz_divisors(ic.front(), note0);
        auto qs = mpz_divisors(ic.back(), note1);
        if (ps.empty() || qs.empty()) {
            ok = false;
            note = note0.empty() ? note1 : note0;
            break;
        }
        bool found = false;
        for (const auto& qd : qs) {
            for (const auto& pd : ps) {
                for (int sign = 1; sign >= -1 && !found; sign -= 2) {
                    mpq_class cand(sign * pd, qd);
                    cand.canonicalize();
                    Scalar r = Scalar::from_mpq(Q, cand);
                    if (g.eval(r).is_zero()) {
                        unsigned m = 0;
                        UniPoly lin(Q, {-r, Scalar::one(Q)});
                        while (true) {
                            auto [quo, rem] = g.divrem(lin);
                            if (!rem.is_zero()) break;
                            g = quo;
                            ++m;
                        }
                        roots.push_back(r);
                        mult.push_back(m);
                        found = true;
                    }
                }
                if (found) break;
            }
            if (found) break;
        }
        if (!found) break;
    }
    remaining_degree = g.degree();
}

} // namespace

RootSearch roots_in_field(const UniPoly& f, std::uint64_t scan_cap) {
    if (f.is_zero()) throw domain_error("root search on the zero polynomial");
    RootSearch out;
    const FieldSpec& F = f.field();
    if (f.degree() == 0) {
        out.complete = true;
        out.splits = true;
        return out;
    }

    switch (F.kind()) {
    case FieldKind::Rationals: {
        bool ok = true;
        int remaining = 0;
        rational_roots(f, out.roots, out.multiplicities, remaining, ok, out.note);
        out.complete = ok;
        out.splits = ok && remaining <= 0;
        if (ok && remaining > 0)
            out.note = "cofactor of degree " + std::to_string(remaining) + " with no rational roots";
        return out;
    }
    case FieldKind::PrimeField: {
        const std::uint64_t p = F.characteristic();
        if (p > scan_cap) {
            out.note = "prime too large for exhaustive residue scan";
            return out;
        }
        UniPoly g = f;
        for (std::uint64_t v = 0; v < p; ++v) {
            Scalar r = Scalar::from_mpq(F, mpq_class(static_cast<unsigned long>(v)));
            if (g.eval(r).is_zero()) {
                unsigned m = 0;
                UniPoly lin(F, {-r, Scalar::one(F)});
                while (true) {
                    auto [quo, rem] = g.divrem(lin);
                    if (!rem.is_zero()) break;
                    g = quo;
                    ++m;
                }
                out.roots.push_back(r);
                out.multiplicities.push_back(m);
                if (g.degree() <= 0) break;
            }
        }
        out.complete = true;
        out.splits = g.degree() <= 0;
        if (!out.splits) out.note = "cofactor of degree " + std::to_string(g.degree()) +
                                    " with no roots in the prime field";
        return out;
    }
    case FieldKind::Cyclotomic: {
        if (f.degree() == 1) {
            out.roots.push_back(-(f.coeff(0) / f.coeff(1)));
            out.multiplicities.push_back(1);
            out.complete = true;
            out.splits = true;
            return out;
        }
        out.note = "root extraction over cyclotomic fields limited to degree 1";
        return out;
    }
    }
    throw internal_error("roots_in_field: bad kind");
}

} // namespace skewlab
