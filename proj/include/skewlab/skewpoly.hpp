#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skewlab/automorph.hpp"
#include "skewlab/polyring.hpp"

namespace skewlab {

/// The twisted polynomial ring S = R[th; alpha] (theta * r = alpha(r) * theta),
/// or its Laurent version T = R[th^{+-1}; alpha] when `laurent` is set.
struct SkewContext {
    CoeffRing ring;
    AlgebraMap alpha;
    bool laurent = false;

    /// S = R[th; alpha].
    static SkewContext poly(const CoeffRing& r, const AlgebraMap& alpha);
    /// T = R[th^{+-1}; alpha]; alpha must carry an inverse.
    static SkewContext laurent_ring(const CoeffRing& r, const AlgebraMap& alpha);

    bool operator==(const SkewContext& o) const;
    bool operator!=(const SkewContext& o) const { return !(*this == o); }
    std::string to_string() const;
};

/// Element of S or T with left coefficients: f = sum_k c_k * th^k.
/// Zero coefficients are never stored; negative k needs a Laurent context.
class SkewPoly {
public:
    static SkewPoly zero(const SkewContext& ctx);
    static SkewPoly one(const SkewContext& ctx);
    static SkewPoly constant(const SkewContext& ctx, const MultiPoly& r);
    static SkewPoly theta_power(const SkewContext& ctx, long k);
    static SkewPoly term(const SkewContext& ctx, const MultiPoly& r, long k);

    const SkewContext& context() const { return ctx_; }
    const std::map<long, MultiPoly>& terms() const { return c_; }

    bool is_zero() const { return c_.empty(); }
    long degree() const;     // throws on zero
    long low_degree() const; // throws on zero
    MultiPoly coeff(long k) const;
    const MultiPoly& leading_coeff() const;

    SkewPoly operator+(const SkewPoly& o) const;
    SkewPoly operator-(const SkewPoly& o) const;
    SkewPoly operator-() const;
    /// Twisted product: (r th^i)(s th^j) = r alpha^i(s) th^{i+j}.
    SkewPoly operator*(const SkewPoly& o) const;
    SkewPoly& operator+=(const SkewPoly& o) { return *this = *this + o; }
    SkewPoly& operator-=(const SkewPoly& o) { return *this = *this - o; }
    SkewPoly& operator*=(const SkewPoly& o) { return *this = *this * o; }
    SkewPoly pow(unsigned e) const;

    bool operator==(const SkewPoly& o) const { return ctx_ == o.ctx_ && c_ == o.c_; }
    bool operator!=(const SkewPoly& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    explicit SkewPoly(SkewContext ctx) : ctx_(std::move(ctx)) {}
    void set(long k, MultiPoly v); // drops zeros, checks degree range

    SkewContext ctx_;
    std::map<long, MultiPoly> c_;
};

SkewPoly skew_mul(const SkewPoly& f, const SkewPoly& g);

/// w = g*h + r with theta-deg r < theta-deg g. The leading coefficient of g
/// must be a unit scalar; alpha must carry an inverse.
std::pair<SkewPoly, SkewPoly> left_divide(const SkewPoly& g, const SkewPoly& w);

struct MembershipResult {
    bool member = false;
    std::optional<SkewPoly> cofactor; // h with (1 - a*th) * h = f
    std::string reason;               // set for nonmembers
};

/// Decides f in (1 - a*th)S over a domain coefficient ring by top-down
/// elimination; on success the returned cofactor reconstructs f exactly.
MembershipResult membership_one_minus_a_theta(const SkewPoly& f, const MultiPoly& a);

/// a * alpha(a) * ... * alpha^{n-1}(a).
MultiPoly norm_product(const AlgebraMap& alpha, const MultiPoly& a, unsigned long n);

/// Ideal of R the twisted-norm probe can test membership against.
struct IdealSpec {
    enum class Kind { Principal, CoordinateAffine };
    Kind kind = Kind::Principal;
    std::optional<MultiPoly> generator;                    // Principal
    std::vector<std::pair<unsigned, Scalar>> assignments;  // CoordinateAffine
    std::string label;

    static IdealSpec principal(const MultiPoly& g, std::string label = "");
    static IdealSpec coordinate(const std::vector<std::pair<unsigned, Scalar>>& assignments,
                                std::string label = "");
};

struct ProbeEntry {
    std::string label;
    std::optional<unsigned long> least_n; // least n <= n_max with N_n(a) in the ideal
    std::string note;
};

struct ProbeReport {
    std::vector<ProbeEntry> entries;
    bool norms_nonzero = true;         // N_n(a) != 0 for every n <= n_max
    std::optional<unsigned long> first_zero_norm;
    unsigned long n_max = 0;
};

/// Semi-decision for the twisted-norm membership condition: for each supplied
/// alpha-stable ideal, the least n <= n_max with N_n(a) in it. Throws
/// domain_error when an ideal is not alpha-stable.
ProbeReport special_probe(const AlgebraMap& alpha, const MultiPoly& a,
                          const std::vector<IdealSpec>& ideals, unsigned long n_max);

/// f = sum_{i<n} th^i * f_i with every f_i supported on degrees divisible by n
/// (coefficients in the power subring R[th^n; alpha^n]).
std::vector<SkewPoly> power_subring_decompose(const SkewPoly& f, unsigned n);

} // namespace skewlab
