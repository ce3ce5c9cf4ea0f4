#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "skewlab/automorph.hpp"
#include "skewlab/dynamics.hpp"
#include "skewlab/polyring.hpp"

namespace skewlab {

// Decision engine for the Artinian-essential-extension property of
// S = R[theta; alpha]: "every finitely generated essential extension of a
// simple S-module is Artinian". decide() matches the presented (ring, map)
// pair against a fixed table of decided families and returns Holds, Fails,
// or Unknown with an open-question tag. It never guesses: inputs outside
// the table come back Unknown with the reason on the trace.

enum class Outcome { Holds, Fails, Unknown };

std::string outcome_name(Outcome o);

/// One step of a decision: the rule that matched, the pinned statement the
/// rule rests on, and the instance data that matched its hypothesis.
struct TraceEntry {
    std::string rule;
    std::string citation;
    std::string detail;
};

struct Verdict {
    Outcome outcome = Outcome::Unknown;
    /// One of qn1..qn5, or "unclassified"; empty unless outcome is Unknown.
    std::string question_tag;
    /// Never empty. Entry 0 is the deciding rule; any later entries are
    /// corroborating rules whose hypotheses also hold literally and whose
    /// conclusions agree with the decision.
    std::vector<TraceEntry> trace;
    std::vector<std::string> caveats;

    std::string to_string() const;
};

/// The statement behind a rule id ("R1".."R8", "Q1", "Q3", "U0").
/// Throws domain_error for ids outside the table.
const std::string& rule_citation(const std::string& rule_id);
/// Every rule id, in table order.
const std::vector<std::string>& rule_table_ids();
/// One-line statement of an open question ("qn1".."qn5", "unclassified").
const std::string& question_text(const std::string& tag);

/// Decide the essential-extension property for S = R[theta; alpha].
///
/// Rule table, first match decides:
///   R1  alpha of certified finite order                      -> Holds
///   R2  linear map on k[x_1..x_t], certified infinite order  -> Fails
///   R3  x -> beta x + gamma on k[x], certified infinite      -> Fails
///   R4  plane triangular normal form, char 0, infinite       -> Fails
///   R5  square plane map (generalized Henon shape, or a
///       composition containing one)                          -> Unknown(qn4)
///   R6  pure monomial on a Laurent ring over F_p, infinite   -> Holds
///   R7  Laurent-plane monomial matching the exceptional
///       pattern [[-1,1],[1,0]] (up to swap / inverse)        -> Unknown(qn5)
///   Q1  scaled monomial x -> c x on the Laurent line, char 0,
///       c not a root of unity (primitive, Krull dimension 1,
///       countable spectrum: the open gap)                    -> Unknown(qn1)
///   R8  univariate-quotient ring (Krull dimension 0) with a
///       certified primitivity witness                        -> Holds
///   Q3  classified but matched by no rule                    -> Unknown(qn3)
///   U0  unclassified presentation                            -> Unknown(unclassified)
///
/// Deterministic and total on classified inputs; order analysis beyond
/// `order_bound` composition steps (only possible for composition-list
/// presentations) degrades to the Q3 fallback rather than guessing.
/// Throws domain_error when alpha does not act on `ring`.
Verdict decide(const CoeffRing& ring, const AlgebraMap& alpha,
               unsigned long order_bound = 4096);

/// Human-readable rendering: the verdict, the open question when there is
/// one, each trace entry with its quoted statement, then the caveats.
/// Ordering is the stable trace order.
std::string explain(const Verdict& v);

/// {"outcome", "question_tag"?, "trace": [{rule, citation, detail}...],
///  "caveats": [...]}, serialized with 2-space indentation.
std::string verdict_json(const Verdict& v);

/// Search budget for primitivity_probe.
struct ProbeSearch {
    /// Reduction targets for characteristic-0 maps; ignored over F_p
    /// (the map's own field is scanned exhaustively).
    std::vector<std::uint64_t> primes{2, 3, 5};
    /// Orbits longer than this are dropped from the evidence pool; also the
    /// step bound for the rational seed scan.
    unsigned long max_period = 32;
    /// Degree budget d for the orbit-curve test.
    unsigned curve_degree = 1;
    /// Characteristic 0 only: integer seeds with |coordinate| <= height are
    /// scanned for periodic orbits of the exact rational map.
    long height = 2;
    /// Bound on the number of one-point-per-orbit selections enumerated.
    unsigned long selection_cap = 4096;
};

struct SelectionEvidence {
    std::vector<Point> selection;  // one point per orbit
    MultiPoly curve;               // least-degree curve vanishing on all of them
};

/// Evidence gathered from one point-gathering source (one field).
struct ProbeOrbitGroup {
    CoeffRing plane;    // two-variable polynomial ring the curves live in
    std::string source; // where the orbits came from
    std::vector<std::vector<Point>> orbits;
    std::vector<SelectionEvidence> evidence;
    unsigned long selections_tried = 0;
    bool cap_exceeded = false;
    std::vector<std::string> warnings;
};

struct PrimitivityReport {
    std::string map_summary;
    std::vector<ProbeOrbitGroup> groups;
    bool evidence_found = false;
    std::vector<std::string> notes;

    std::string to_string() const;
};

/// Selection core: enumerates one-point-per-orbit selections in
/// smallest-coordinate-first order, up to `selection_cap` of them, and
/// records every selection that lies on a curve of total degree
/// <= curve_degree. Exhausting the cap is reported on the group, not
/// thrown. A warning is emitted when the orbit count is small enough that
/// every selection lies on some curve of the requested degree (dimension
/// count), and when the orbit list is empty (vacuous evidence).
/// The orbits must be disjoint, nonempty, and consist of distinct
/// two-coordinate points over the field of `plane`.
ProbeOrbitGroup probe_orbit_selections(const CoeffRing& plane,
                                       const std::vector<std::vector<Point>>& orbits,
                                       unsigned curve_degree,
                                       unsigned long selection_cap);

/// Evidence gathering toward primitivity of S for a square plane map:
/// finite orbits are collected (exhaustive cycle scan over F_p; rational
/// seed-box scan plus reduction modulo each listed prime in characteristic
/// 0) and fed through probe_orbit_selections. Purely informational; the
/// report never upgrades a Verdict. Throws domain_error unless alpha is a
/// generalized Henon map or a composition containing one, on a
/// two-variable polynomial ring.
PrimitivityReport primitivity_probe(const AlgebraMap& alpha,
                              const ProbeSearch& search = ProbeSearch{});

}  // namespace skewlab
