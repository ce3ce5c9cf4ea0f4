#pragma once

#include <map>
#include <string>
#include <vector>

#include "skewlab/automorph.hpp"
#include "skewlab/polyring.hpp"
#include "skewlab/scalar.hpp"

namespace skewlab {

/// A parsed problem description: one coefficient field, one ring, one ring
/// map, and optional named polynomials, ideal generators, and points.
///
/// Text format, one declaration per line ('#' starts a comment):
///
///   field Q | Fp(p) | Qzeta(n)
///   ring poly(x, y) | laurent(x, y) | quot(x; x^2 + 1)
///   auto x -> y            (one line per ring variable), or
///   auto linear [[2, 0], [0, 3]]   (scalar matrix, polynomial rings), or
///   auto monomial [[2, 1], [1, 1]] (integer exponent matrix, Laurent rings)
///   let NAME = EXPR
///   ideal NAME = EXPR
///   point NAME = (c1, c2, ...)
///
/// The field line must precede the ring line, and both must precede every
/// other declaration. Exactly one map must be declared, covering every ring
/// variable.
///
/// Expression grammar (also used by the command-line front end):
///
///   EXPR     := SIGNED ( ('+' | '-') SIGNED )*
///   SIGNED   := ['-'] TERM
///   TERM     := FACTOR ( '*' FACTOR )*
///   FACTOR   := BASE ( '^' ['-'] INT )?
///   BASE     := RATIONAL | 'zeta' | VAR | NAME | '(' EXPR ')'
///   RATIONAL := INT ( '/' INT )?
///
/// A leading '-' inside a summand keeps printed output such as
/// "x + -zeta*y" reparsable. Negative exponents require a Laurent ring and
/// apply only to a bare variable base. 'zeta' requires a cyclotomic field.
struct SpecFile {
    FieldSpec field = FieldSpec::rationals();
    CoeffRing ring;
    AlgebraMap alpha;
    std::map<std::string, MultiPoly> polys;  // let NAME = EXPR
    std::map<std::string, MultiPoly> ideals; // ideal NAME = EXPR
    std::map<std::string, std::vector<Scalar>> points;

    SpecFile();

    bool operator==(const SpecFile& o) const;

    /// Canonical text form. Parsing the result reproduces an equal SpecFile:
    /// declarations appear as field, ring, one auto line per variable, then
    /// let / ideal / point lines in name order.
    std::string pretty() const;
};

/// Parses the declaration format above. Throws parse_error with the line and
/// column of the offending token; semantic faults (composite characteristic,
/// an image set that is not invertible, an undeclared variable) are reported
/// the same way.
SpecFile parse_spec(const std::string& text);

/// Parses one expression over `ring`. Identifiers resolve to ring variables
/// first, then to entries of `named`. Trailing input is an error.
MultiPoly parse_expr(const std::string& text, const CoeffRing& ring,
                     const std::map<std::string, MultiPoly>& named = {});

/// Parses a constant expression ("2/3", "zeta^2 + 1") into a field element.
Scalar parse_scalar(const std::string& text, const FieldSpec& f);

/// Parses one point per line: `arity` comma-separated constant expressions,
/// optionally parenthesized. Blank lines and '#' comments are skipped.
std::vector<std::vector<Scalar>> parse_points(const std::string& text,
                                              const FieldSpec& f,
                                              unsigned arity);

} // namespace skewlab
