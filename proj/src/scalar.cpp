#include "skewlab/scalar.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace skewlab {

namespace detail {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    if (m == 1) return 0;
    std::uint64_t r = 1;
    a %= m;
    while (e > 0) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t m) {
    // extended Euclid; m prime in all call sites, but works for any unit
    std::int64_t t = 0, newt = 1;
    std::uint64_t r = m, newr = a % m;
    while (newr != 0) {
        std::uint64_t q = r / newr;
        std::int64_t tt = t - static_cast<std::int64_t>(q) * newt;
        t = newt;
        newt = tt;
        std::uint64_t rr = r - q * newr;
        r = newr;
        newr = rr;
    }
    if (r != 1) throw domain_error("invmod: argument is not a unit");
    if (t < 0) t += static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(t);
}

} // namespace detail

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // deterministic witness set for 64-bit inputs
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = detail::powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < s; ++i) {
            x = detail::mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace {

std::uint64_t pollard_rho(std::uint64_t n) {
    if (n % 2 == 0) return 2;
    std::uint64_t x = 2, y = 2, c = 1;
    while (true) {
        x = 2;
        y = 2;
        std::uint64_t d = 1;
        auto f = [&](std::uint64_t v) {
            return (detail::mulmod_u64(v, v, n) + c) % n;
        };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            std::uint64_t diff = x > y ? x - y : y - x;
            d = std::gcd(diff, n);
        }
        if (d != n) return d;
        ++c;
    }
}

void factor_rec(std::uint64_t n, std::map<std::uint64_t, unsigned>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        ++out[n];
        return;
    }
    for (std::uint64_t p = 2; p < 1000 && p * p <= n; p = (p == 2 ? 3 : p + 2)) {
        if (n % p == 0) {
            ++out[p];
            factor_rec(n / p, out);
            return;
        }
    }
    std::uint64_t d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

} // namespace

std::vector<std::pair<std::uint64_t, unsigned>> factor_u64(std::uint64_t n) {
    std::map<std::uint64_t, unsigned> acc;
    factor_rec(n, acc);
    return {acc.begin(), acc.end()};
}

unsigned long euler_phi(unsigned long n) {
    if (n == 0) throw domain_error("euler_phi(0)");
    unsigned long r = n;
    for (auto [p, e] : factor_u64(n)) {
        (void)e;
        r -= r / p;
    }
    return r;
}

std::vector<unsigned long> divisors_u64(unsigned long n) {
    if (n == 0) throw domain_error("divisors_u64(0)");
    std::vector<unsigned long> ds{1};
    for (auto [p, e] : factor_u64(n)) {
        std::size_t base = ds.size();
        unsigned long pk = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) ds.push_back(ds[j] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

// ---------------------------------------------------------------------------
// FieldSpec

FieldSpec FieldSpec::rationals() { return FieldSpec(FieldKind::Rationals, 0, 0, 1); }

FieldSpec FieldSpec::cyclotomic(unsigned long n) {
    if (n == 0) throw domain_error("cyclotomic index must be positive");
    return FieldSpec(FieldKind::Cyclotomic, n, 0, euler_phi(n));
}

FieldSpec FieldSpec::prime_field(std::uint64_t p) {
    if (!is_prime_u64(p)) throw domain_error("modulus " + std::to_string(p) + " is not prime");
    return FieldSpec(FieldKind::PrimeField, 0, p, 1);
}

std::string FieldSpec::to_string() const {
    switch (kind_) {
    case FieldKind::Rationals:
        return "Q";
    case FieldKind::Cyclotomic:
        return "Qzeta(" + std::to_string(n_) + ")";
    case FieldKind::PrimeField:
        return "Fp(" + std::to_string(p_) + ")";
    }
    throw internal_error("FieldSpec::to_string: bad kind");
}

// ---------------------------------------------------------------------------
// dense rational polynomial helpers for cyclotomic arithmetic

namespace {

using QVec = std::vector<mpq_class>; // coefficients, constant term first

void qv_trim(QVec& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

// in-place remainder of v modulo the monic polynomial m
void qv_mod(QVec& v, const QVec& m) {
    const std::size_t dm = m.size() - 1; // m monic of degree dm
    while (v.size() > dm) {
        mpq_class lead = v.back();
        std::size_t shift = v.size() - 1 - dm;
        if (lead != 0) {
            for (std::size_t i = 0; i < dm; ++i) v[shift + i] -= lead * m[i];
        }
        v.pop_back();
        qv_trim(v);
        if (v.size() <= dm) break;
    }
}

QVec qv_mul(const QVec& a, const QVec& b) {
    if (a.empty() || b.empty()) return {};
    QVec r(a.size() + b.size() - 1, mpq_class(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    qv_trim(r);
    return r;
}

// exact division, throws if not divisible; divisor monic or not
QVec qv_div_exact(QVec num, const QVec& den) {
    if (den.empty()) throw domain_error("polynomial division by zero");
    QVec q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, mpq_class(0));
    while (num.size() >= den.size() && !num.empty()) {
        mpq_class c = num.back() / den.back();
        std::size_t shift = num.size() - den.size();
        q[shift] = c;
        for (std::size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
        qv_trim(num);
        if (num.empty()) break;
        if (num.size() < den.size()) throw internal_error("qv_div_exact: nonzero remainder");
    }
    if (!num.empty()) throw internal_error("qv_div_exact: nonzero remainder");
    qv_trim(q);
    return q;
}

// extended Euclid: returns (g, u) with u*a == g mod m, g the monic gcd
std::pair<QVec, QVec> qv_half_ext_gcd(QVec a, QVec m) {
    QVec r0 = std::move(m), r1 = std::move(a);
    QVec u0{}, u1{mpq_class(1)};
    qv_trim(r0);
    qv_trim(r1);
    while (!r1.empty()) {
        // divrem r0 by r1
        QVec q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 0, mpq_class(0));
        QVec rem = r0;
        while (rem.size() >= r1.size() && !rem.empty()) {
            mpq_class c = rem.back() / r1.back();
            std::size_t shift = rem.size() - r1.size();
            q[shift] += c;
            for (std::size_t i = 0; i < r1.size(); ++i) rem[shift + i] -= c * r1[i];
            qv_trim(rem);
        }
        QVec unew = u0;
        {
            QVec qu1 = qv_mul(q, u1);
            if (unew.size() < qu1.size()) unew.resize(qu1.size(), mpq_class(0));
            for (std::size_t i = 0; i < qu1.size(); ++i) unew[i] -= qu1[i];
            qv_trim(unew);
        }
        r0 = std::move(r1);
        r1 = std::move(rem);
        u0 = std::move(u1);
        u1 = std::move(unew);
    }
    if (r0.empty()) throw domain_error("gcd of zero polynomials");
    mpq_class lead = r0.back();
    for (auto& c : r0) c /= lead;
    for (auto& c : u0) c /= lead;
    return {r0, u0};
}

} // namespace

namespace detail {

const std::vector<mpq_class>& cyclotomic_coeffs(unsigned long n) {
    static std::map<unsigned long, QVec> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    // Phi_n = (t^n - 1) / prod_{d | n, d < n} Phi_d, computed recursively
    // without re-entering the lock.
    std::vector<unsigned long> todo{n};
    while (!todo.empty()) {
        unsigned long k = todo.back();
        if (cache.count(k)) {
            todo.pop_back();
            continue;
        }
        auto divs = divisors_u64(k);
        bool ready = true;
        for (unsigned long d : divs) {
            if (d != k && !cache.count(d)) {
                todo.push_back(d);
                ready = false;
            }
        }
        if (!ready) continue;
        QVec num(k + 1, mpq_class(0));
        num[0] = -1;
        num[k] = 1;
        for (unsigned long d : divs) {
            if (d == k) continue;
            num = qv_div_exact(std::move(num), cache.at(d));
        }
        cache.emplace(k, std::move(num));
        todo.pop_back();
    }
    return cache.at(n);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Scalar

Scalar::Scalar() : field_(FieldSpec::rationals()), rep_(mpq_class(0)) {}

Scalar Scalar::zero(const FieldSpec& f) {
    Scalar s(f);
    switch (f.kind()) {
    case FieldKind::Rationals:
        s.rep_ = mpq_class(0);
        break;
    case FieldKind::PrimeField:
        s.rep_ = std::uint64_t{0};
        break;
    case FieldKind::Cyclotomic:
        s.rep_ = CycVec{QVec(f.degree(), mpq_class(0))};
        break;
    }
    return s;
}

Scalar Scalar::one(const FieldSpec& f) { return from_int(f, 1); }

Scalar Scalar::from_int(const FieldSpec& f, long v) {
    return from_mpq(f, mpq_class(v));
}

Scalar Scalar::from_mpq(const FieldSpec& f, const mpq_class& v) {
    Scalar s(f);
    switch (f.kind()) {
    case FieldKind::Rationals:
        s.rep_ = v;
        break;
    case FieldKind::PrimeField: {
        const std::uint64_t p = f.characteristic();
        mpz_class num = v.get_num(), den = v.get_den();
        mpz_class pz(static_cast<unsigned long>(p));
        mpz_class nmod = ((num % pz) + pz) % pz;
        mpz_class dmod = ((den % pz) + pz) % pz;
        if (dmod == 0) throw domain_error("denominator divisible by the characteristic");
        std::uint64_t nn = nmod.get_ui();
        std::uint64_t dd = dmod.get_ui();
        s.rep_ = detail::mulmod_u64(nn, detail::invmod_u64(dd, p), p);
        break;
    }
    case FieldKind::Cyclotomic: {
        QVec c(f.degree(), mpq_class(0));
        if (f.degree() == 0) throw internal_error("cyclotomic field of degree 0");
        c[0] = v;
        s.rep_ = CycVec{std::move(c)};
        break;
    }
    }
    return s;
}

Scalar Scalar::zeta(const FieldSpec& f) {
    if (f.kind() != FieldKind::Cyclotomic)
        throw domain_error("zeta only exists in cyclotomic fields");
    Scalar s(f);
    QVec c(f.degree(), mpq_class(0));
    if (f.degree() == 1) {
        // Q(zeta_1) = Q with zeta = 1; Q(zeta_2) = Q with zeta = -1
        c[0] = (f.cyclotomic_index() == 1) ? 1 : -1;
    } else {
        c[1] = 1;
    }
    s.rep_ = CycVec{std::move(c)};
    return s;
}

void Scalar::reduce_cyclotomic() {
    auto& v = std::get<CycVec>(rep_).c;
    const auto& phi = detail::cyclotomic_coeffs(field_.cyclotomic_index());
    qv_mod(v, phi);
    v.resize(field_.degree(), mpq_class(0));
}

bool Scalar::is_zero() const {
    switch (field_.kind()) {
    case FieldKind::Rationals:
        return std::get<mpq_class>(rep_) == 0;
    case FieldKind::PrimeField:
        return std::get<std::uint64_t>(rep_) == 0;
    case FieldKind::Cyclotomic: {
        for (const auto& c : std::get<CycVec>(rep_).c)
            if (c != 0) return false;
        return true;
    }
    }
    throw internal_error("Scalar::is_zero: bad kind");
}

bool Scalar::is_one() const { return *this == one(field_); }

static void check_same_field(const FieldSpec& a, const FieldSpec& b) {
    if (!(a == b))
        throw domain_error("scalar field mismatch: " + a.to_string() + " vs " + b.to_string());
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    switch (field_.kind()) {
    case FieldKind::Rationals:
        std::get<mpq_class>(r.rep_) = -std::get<mpq_class>(r.rep_);
        break;
    case FieldKind::PrimeField: {
        std::uint64_t v = std::get<std::uint64_t>(r.rep_);
        r.rep_ = v == 0 ? std::uint64_t{0} : field_.characteristic() - v;
        break;
    }
    case FieldKind::Cyclotomic:
        for (auto& c : std::get<CycVec>(r.rep_).c) c = -c;
        break;
    }
    return r;
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_same_field(field_, o.field_);
    Scalar r = *this;
    switch (field_.kind()) {
    case FieldKind::Rationals:
        std::get<mpq_class>(r.rep_) += std::get<mpq_class>(o.rep_);
        break;
    case FieldKind::PrimeField: {
        const std::uint64_t p = field_.characteristic();
        std::uint64_t a = std::get<std::uint64_t>(r.rep_), b = std::get<std::uint64_t>(o.rep_);
        std::uint64_t s = a + b; // p < 2^63 not guaranteed; avoid overflow via subtraction
        if (s < a || s >= p) s -= p;
        r.rep_ = s;
        break;
    }
    case FieldKind::Cyclotomic: {
        auto& a = std::get<CycVec>(r.rep_).c;
        const auto& b = std::get<CycVec>(o.rep_).c;
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
        break;
    }
    }
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    check_same_field(field_, o.field_);
    Scalar r = *this;
    switch (field_.kind()) {
    case FieldKind::Rationals:
        std::get<mpq_class>(r.rep_) *= std::get<mpq_class>(o.rep_);
        break;
    case FieldKind::PrimeField:
        r.rep_ = detail::mulmod_u64(std::get<std::uint64_t>(rep_), std::get<std::uint64_t>(o.rep_),
                                    field_.characteristic());
        break;
    case FieldKind::Cyclotomic: {
        QVec prod = qv_mul(std::get<CycVec>(rep_).c, std::get<CycVec>(o.rep_).c);
        r.rep_ = CycVec{std::move(prod)};
        r.reduce_cyclotomic();
        break;
    }
    }
    return r;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw domain_error("inverse of zero");
    switch (field_.kind()) {
    case FieldKind::Rationals: {
        Scalar r = *this;
        std::get<mpq_class>(r.rep_) = 1 / std::get<mpq_class>(rep_);
        return r;
    }
    case FieldKind::PrimeField: {
        Scalar r = *this;
        r.rep_ = detail::invmod_u64(std::get<std::uint64_t>(rep_), field_.characteristic());
        return r;
    }
    case FieldKind::Cyclotomic: {
        const auto& phi = detail::cyclotomic_coeffs(field_.cyclotomic_index());
        QVec a = std::get<CycVec>(rep_).c;
        qv_trim(a);
        auto [g, u] = qv_half_ext_gcd(a, phi);
        if (g.size() != 1) throw internal_error("cyclotomic element not invertible");
        Scalar r = *this;
        u.resize(field_.degree(), mpq_class(0));
        r.rep_ = CycVec{std::move(u)};
        r.reduce_cyclotomic();
        return r;
    }
    }
    throw internal_error("Scalar::inverse: bad kind");
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar base = *this;
    Scalar acc = one(field_);
    unsigned long k = static_cast<unsigned long>(e);
    while (k > 0) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

bool Scalar::operator==(const Scalar& o) const {
    if (!(field_ == o.field_)) return false;
    return rep_ == o.rep_;
}

const mpq_class& Scalar::rational_value() const {
    if (field_.kind() != FieldKind::Rationals)
        throw domain_error("rational_value on non-rational scalar");
    return std::get<mpq_class>(rep_);
}

std::uint64_t Scalar::residue() const {
    if (field_.kind() != FieldKind::PrimeField)
        throw domain_error("residue on non-prime-field scalar");
    return std::get<std::uint64_t>(rep_);
}

const std::vector<mpq_class>& Scalar::cyclotomic_coords() const {
    if (field_.kind() != FieldKind::Cyclotomic)
        throw domain_error("cyclotomic_coords on non-cyclotomic scalar");
    return std::get<CycVec>(rep_).c;
}

bool Scalar::is_prime_field_value() const {
    switch (field_.kind()) {
    case FieldKind::Rationals:
    case FieldKind::PrimeField:
        return true;
    case FieldKind::Cyclotomic: {
        const auto& c = std::get<CycVec>(rep_).c;
        for (std::size_t i = 1; i < c.size(); ++i)
            if (c[i] != 0) return false;
        return true;
    }
    }
    throw internal_error("Scalar::is_prime_field_value: bad kind");
}

std::optional<mpq_class> Scalar::as_rational() const {
    switch (field_.kind()) {
    case FieldKind::Rationals:
        return std::get<mpq_class>(rep_);
    case FieldKind::Cyclotomic:
        if (is_prime_field_value()) return std::get<CycVec>(rep_).c[0];
        return std::nullopt;
    case FieldKind::PrimeField:
        return std::nullopt;
    }
    throw internal_error("Scalar::as_rational: bad kind");
}

namespace {

std::string format_q(const mpq_class& q) { return q.get_str(); }

// one cyclotomic basis term, |coeff| assumed nonzero
std::string cyc_term(const mpq_class& c, std::size_t i) {
    std::string mag = format_q(c < 0 ? mpq_class(-c) : c);
    std::string body;
    if (i == 0) {
        body = mag;
    } else {
        body = (mag == "1") ? "" : mag + "*";
        body += "zeta";
        if (i > 1) body += "^" + std::to_string(i);
    }
    return body;
}

} // namespace

std::string Scalar::to_string() const {
    switch (field_.kind()) {
    case FieldKind::Rationals:
        return format_q(std::get<mpq_class>(rep_));
    case FieldKind::PrimeField:
        return std::to_string(std::get<std::uint64_t>(rep_));
    case FieldKind::Cyclotomic: {
        const auto& c = std::get<CycVec>(rep_).c;
        std::string out;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] == 0) continue;
            if (out.empty()) {
                out = (c[i] < 0 ? "-" : "") + cyc_term(c[i], i);
            } else {
                out += (c[i] < 0 ? " - " : " + ") + cyc_term(c[i], i);
            }
        }
        return out.empty() ? "0" : out;
    }
    }
    throw internal_error("Scalar::to_string: bad kind");
}

// ---------------------------------------------------------------------------
// roots of unity

RootOfUnityResult is_root_of_unity(const Scalar& a) {
    if (a.is_zero()) return {false, 0};
    const FieldSpec& f = a.field();
    switch (f.kind()) {
    case FieldKind::Rationals: {
        const mpq_class& q = a.rational_value();
        if (q == 1) return {true, 1};
        if (q == -1) return {true, 2};
        return {false, 0};
    }
    case FieldKind::PrimeField: {
        // every nonzero residue has finite multiplicative order dividing p-1
        const std::uint64_t p = f.characteristic();
        std::uint64_t ord = p - 1;
        std::uint64_t v = a.residue();
        for (auto [q, e] : factor_u64(p - 1)) {
            (void)e;
            while (ord % q == 0 && detail::powmod_u64(v, ord / q, p) == 1) ord /= q;
        }
        return {true, ord};
    }
    case FieldKind::Cyclotomic: {
        // torsion of Q(zeta_n)^x is generated by -zeta_n, order lcm(2, n)
        unsigned long n = f.cyclotomic_index();
        unsigned long L = std::lcm(2ul, n);
        if (!(a.pow(static_cast<long>(L)) == Scalar::one(f))) return {false, 0};
        for (unsigned long d : divisors_u64(L)) {
            if (a.pow(static_cast<long>(d)) == Scalar::one(f)) return {true, d};
        }
        throw internal_error("root of unity with no order");
    }
    }
    throw internal_error("is_root_of_unity: bad kind");
}

Scalar reduce_mod_p(const Scalar& v, const FieldSpec& target) {
    if (target.kind() != FieldKind::PrimeField)
        throw domain_error("reduce_mod_p: target must be a prime field");
    if (v.field().kind() == FieldKind::PrimeField) {
        if (v.field() == target) return v;
        throw domain_error("reduce_mod_p: characteristic mismatch");
    }
    if (v.field().kind() != FieldKind::Rationals)
        throw unsupported_error("reduce_mod_p: cyclotomic sources are not reduced");
    const mpq_class& q = v.rational_value();
    const mpz_class p(static_cast<unsigned long>(target.characteristic()));
    mpz_class den = q.get_den() % p;
    if (den == 0) throw domain_error("a coefficient denominator is divisible by the prime");
    mpz_class num = q.get_num() % p;
    if (num < 0) num += p;
    return Scalar::from_int(target, num.get_si()) / Scalar::from_int(target, den.get_si());
}

} // namespace skewlab
