#pragma once

#include "skewlab/skewpoly.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace skewlab {

/// Carrier for the cyclic right module M = S / rho*(1 - th)*S over
/// S = R[th; alpha]: R a polynomial ring, alpha invertible, rho a fixed
/// nonzero non-unit of R.
struct ModContext {
    SkewContext skew;
    MultiPoly rho;

    static ModContext make(const SkewContext& skew, const MultiPoly& rho);

    bool operator==(const ModContext& o) const;
    bool operator!=(const ModContext& o) const { return !(*this == o); }
    std::string to_string() const;
};

/// Canonical representative m = sum_k r_k th^k + rho*b where every stored
/// r_k is a nonzero remainder mod rho*R and b lies in R. The expression is
/// unique: every coefficient of rho*(1 - th)*S lies in rho*R, and
/// (1 - th)*S meets R in 0 only.
class CyclicModuleElem {
public:
    static CyclicModuleElem zero(const ModContext& ctx);
    /// Reduce raw mod rho*(1 - th)*S. Each rho-multiple q th^k folds into
    /// the tail as alpha^{-k}(q); the remainders stay in the support.
    static CyclicModuleElem normal_form(const ModContext& ctx, const SkewPoly& raw);

    const ModContext& context() const { return ctx_; }
    const std::map<long, MultiPoly>& support() const { return support_; }
    const MultiPoly& tail() const { return tail_; }

    bool is_zero() const { return support_.empty() && tail_.is_zero(); }
    /// Number of nonzero support coefficients.
    unsigned length() const { return static_cast<unsigned>(support_.size()); }
    /// Length zero: the element is rho*b for some b in R.
    bool tail_only() const { return support_.empty(); }

    /// sum_k r_k th^k + rho*b as an element of S.
    SkewPoly lift() const;
    /// Right action: normal form of lift() * s.
    CyclicModuleElem act(const SkewPoly& s) const;

    bool operator==(const CyclicModuleElem& o) const;
    bool operator!=(const CyclicModuleElem& o) const { return !(*this == o); }
    std::string to_string() const;

private:
    explicit CyclicModuleElem(ModContext ctx);

    ModContext ctx_;
    std::map<long, MultiPoly> support_;
    MultiPoly tail_;
};

/// For length-one m with support r_i at degree i, u = alpha^{-i}(rho)
/// pushes m into the tail part: m*u = rho*(alpha^{-i}(r_i) + b*u) and the
/// result cannot vanish (that would force r_i into rho*R). Returns (u, m*u).
std::pair<MultiPoly, CyclicModuleElem> tail_multiplier(const CyclicModuleElem& m);

struct EssentialWitness {
    bool found = false;
    std::optional<SkewPoly> witness;        // s with 0 != m*s tail-only
    std::optional<CyclicModuleElem> image;  // m*s
    std::string note;
};

/// Greedy bounded search for s with 0 != m*s in the tail part: tries the
/// tail_multiplier step whenever the length is one, otherwise scans monomial
/// multipliers x^e th^j with |e|, j <= degree_bound for a strict length drop.
/// A not_found outcome is inconclusive, never a certificate.
EssentialWitness essential_probe(const CyclicModuleElem& m, unsigned degree_bound = 4,
                                 unsigned length_budget = 8);

/// Generators of an alpha-stable right ideal N of R, standing for the
/// submodule (u - th)S + N*S. Stability is checked on the generators.
struct SubmoduleDesc {
    std::vector<MultiPoly> generators;
    Scalar u;
    std::string note;

    bool is_zero_ideal() const { return generators.empty(); }
    std::string to_string() const;
};

/// Decide f in <gens> for the supported families: unit or empty generator
/// sets, univariate principal (via gcd), monomial ideals, and a single
/// principal generator. Throws unsupported_error beyond those.
bool ideal_contains(const std::vector<MultiPoly>& gens, const MultiPoly& f);

/// N = J cap R for J = (u - th)S + <j_gens>: left_divide remainders by
/// u - th, then closure under alpha^{-1} (r*th = u*alpha^{-1}(r) mod
/// (u - th)S, and u is a unit scalar). Closure must stabilize within 32
/// rounds or the call throws.
SubmoduleDesc lattice_contract(const SkewContext& ctx, const std::vector<SkewPoly>& j_gens,
                               const Scalar& u);

/// Skew generators {u - th} + constants(n.generators) of the submodule
/// (u - th)S + N*S; lattice_contract recovers n from them.
std::vector<SkewPoly> lattice_expand(const SkewContext& ctx, const SubmoduleDesc& n);

struct SimpleTopReport {
    bool obstruction_found = false;
    std::optional<std::size_t> witness_index;  // into the candidate list
    std::string witness;                       // description of the submodule
    std::vector<std::string> notes;            // one per candidate
};

/// Screen candidate ideals of R: every proper nonzero alpha-stable candidate
/// N exhibits (u - th)S + N*S as a proper intermediate submodule of
/// S/(u - th)S. An empty or fully rejected list reports no obstruction
/// (it does not certify simplicity).
SimpleTopReport simple_top_check(const SkewContext& ctx, const Scalar& u,
                                 const std::vector<std::vector<MultiPoly>>& candidates);

struct ChainReport {
    unsigned long m_max = 0;
    bool all_strict = false;
    std::optional<unsigned long> first_collapse;
    std::vector<std::string> certificates;  // one line per tested m
};

/// Strictness of th^m S + rho*S down the chain: th^m lies in
/// th^{m+1}S + rho*S iff every coefficient of degree <= m lies in rho*R,
/// and the degree-m coefficient of th^m is 1.
ChainReport chain_check(const ModContext& ctx, unsigned long m_max);

struct MatrixUnitsReport {
    unsigned n = 0;
    bool f_power_formula = false;     // f^{n-1} == e_n th^{n-1}
    bool left_unit = false;           // a * f^{n-1} == e_1
    bool right_complement = false;    // f * b == 1 - e_1
    bool partition = false;           // a*f^{n-1} + f*b == 1
    bool nilpotent = false;           // f^n == 0
    bool theta_gap = false;           // e_1 th^k e_1 == 0 for 0 < k < n
    bool theta_period = false;        // e_1 th^n e_1 != 0
    bool all_ok = false;
    std::string detail;
};

/// Matrix-unit identities in T = (k e_1 + ... + k e_n)[th^{+-1}; shift]
/// with alpha(e_i) = e_{i+1 mod n}, f = (1 - e_1) th, a = th^{1-n},
/// b = th^{-1}. Uses a component-tuple representation internal to this
/// module; n = 1 degenerates to f = 0.
MatrixUnitsReport matrix_units_verify(unsigned n, const FieldSpec& field);

}  // namespace skewlab
