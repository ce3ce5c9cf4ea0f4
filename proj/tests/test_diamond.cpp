#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "skewlab/diamond.hpp"
#include "skewlab/errors.hpp"

using namespace skewlab;

namespace {

const FieldSpec Q = FieldSpec::rationals();

MultiPoly X(const CoeffRing& r, unsigned i = 0) { return MultiPoly::variable(r, i); }
MultiPoly C(const CoeffRing& r, long v) { return MultiPoly::from_int(r, v); }

Point pt(const FieldSpec& f, long a, long b) {
    return Point{Scalar::from_int(f, a), Scalar::from_int(f, b)};
}

bool has_rule(const Verdict& v, const std::string& id) {
    for (const TraceEntry& e : v.trace)
        if (e.rule == id) return true;
    return false;
}

std::string detail_of(const Verdict& v, const std::string& id) {
    for (const TraceEntry& e : v.trace)
        if (e.rule == id) return e.detail;
    return "";
}

bool caveat_contains(const Verdict& v, const std::string& needle) {
    for (const std::string& c : v.caveats)
        if (c.find(needle) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_CASE("rule table and question texts") {
    const std::vector<std::string> expect = {"R1", "R2", "R3", "R4", "R5", "R6",
                                             "R7", "Q1", "R8", "Q3", "U0"};
    CHECK(rule_table_ids() == expect);
    for (const std::string& id : expect) CHECK_FALSE(rule_citation(id).empty());
    CHECK_THROWS_AS(rule_citation("R9"), domain_error);
    CHECK_THROWS_AS(rule_citation(""), domain_error);

    for (const char* tag : {"qn1", "qn2", "qn3", "qn4", "qn5", "unclassified"})
        CHECK_FALSE(question_text(tag).empty());
    CHECK(question_text("qn4").find("primitive") != std::string::npos);
    CHECK_THROWS_AS(question_text("qn6"), domain_error);
}

TEST_CASE("univariate polynomial verdicts") {
    CoeffRing R = CoeffRing::polynomial(Q, {"x"});

    SUBCASE("translation fails in characteristic 0") {
        AlgebraMap a = AlgebraMap::from_images(R, {X(R) + C(R, 1)});
        Verdict v = decide(R, a);
        CHECK(v.outcome == Outcome::Fails);
        CHECK(v.question_tag.empty());
        CHECK(v.trace.front().rule == "R3");
        CHECK(v.trace.front().detail.find("translation") != std::string::npos);
        CHECK(v.caveats.empty());
    }

    SUBCASE("negation holds with agreeing corroborations") {
        AlgebraMap a = AlgebraMap::from_images(R, {-X(R)});
        Verdict v = decide(R, a);
        CHECK(v.outcome == Outcome::Holds);
        CHECK(v.trace.front().rule == "R1");
        CHECK(v.trace.front().detail.find("= 2") != std::string::npos);
        CHECK(has_rule(v, "R2"));
        CHECK(has_rule(v, "R3"));
        CHECK(detail_of(v, "R3").find("gamma = 0") != std::string::npos);
        CHECK(v.caveats.empty());
    }

    SUBCASE("doubling fails by the linear rule with the affine clause agreeing") {
        AlgebraMap a = AlgebraMap::from_images(R, {X(R) + X(R)});
        Verdict v = decide(R, a);
        CHECK(v.outcome == Outcome::Fails);
        CHECK(v.trace.front().rule == "R2");
        CHECK(has_rule(v, "R3"));
        CHECK(detail_of(v, "R3").find("not a root of unity") != std::string::npos);
    }

    SUBCASE("affine map over F_7 holds at the multiplier order") {
        FieldSpec F7 = FieldSpec::prime_field(7);
        CoeffRing R7 = CoeffRing::polynomial(F7, {"x"});
        AlgebraMap a = AlgebraMap::from_images(R7, {X(R7) * Scalar::from_int(F7, 3) + C(R7, 5)});
        Verdict v = decide(R7, a);
        CHECK(v.outcome == Outcome::Holds);
        CHECK(v.trace.front().rule == "R1");
        CHECK(v.trace.front().detail.find("= 6") != std::string::npos);
        CHECK(has_rule(v, "R3"));
        CHECK(detail_of(v, "R3").find("characteristic p") != std::string::npos);
        CHECK_FALSE(has_rule(v, "R2"));
    }

    SUBCASE("order-2 affine map with a translation part holds without an affine entry") {
        AlgebraMap a = AlgebraMap::from_images(R, {C(R, 1) - X(R)});
        Verdict v = decide(R, a);
        CHECK(v.outcome == Outcome::Holds);
        CHECK(v.trace.front().rule == "R1");
        CHECK_FALSE(has_rule(v, "R3"));
        CHECK_FALSE(has_rule(v, "R2"));
    }
}

TEST_CASE("plane linear and triangular verdicts") {
    CoeffRing P = CoeffRing::polynomial(Q, {"x", "y"});

    SUBCASE("diagonal scaling fails with the triangular clause agreeing") {
        AlgebraMap a = AlgebraMap::linear(P, Matrix::from_int_rows(Q, {{2, 0}, {0, 3}}));
        Verdict v = decide(P, a);
        CHECK(v.outcome == Outcome::Fails);
        CHECK(v.trace.front().rule == "R2");
        CHECK(has_rule(v, "R4"));
        CHECK(detail_of(v, "R4").find("not a root of unity") != std::string::npos);
        CHECK(caveat_contains(v, "complex numbers"));
    }

    SUBCASE("order-2 diagonal map holds with both plane rules agreeing") {
        AlgebraMap a = AlgebraMap::linear(P, Matrix::from_int_rows(Q, {{-1, 0}, {0, -1}}));
        Verdict v = decide(P, a);
        CHECK(v.outcome == Outcome::Holds);
        CHECK(v.trace.front().rule == "R1");
        CHECK(has_rule(v, "R2"));
        CHECK(has_rule(v, "R4"));
        CHECK(detail_of(v, "R4").find("type (i)") != std::string::npos);
        CHECK(caveat_contains(v, "complex numbers"));
    }

    SUBCASE("triangular map with a non-root scalar fails directly") {
        // x -> 4x + y^2, y -> 2y: type (iii) shape with lambda = mu^2
        AlgebraMap a = AlgebraMap::from_images(
            P, {X(P, 0) * Scalar::from_int(Q, 4) + X(P, 1) * X(P, 1),
                X(P, 1) * Scalar::from_int(Q, 2)});
        Verdict v = decide(P, a);
        CHECK(v.outcome == Outcome::Fails);
        CHECK(v.trace.front().rule == "R4");
        CHECK(v.trace.front().detail.find("not a root of unity") != std::string::npos);
        CHECK(caveat_contains(v, "complex numbers"));
    }

    SUBCASE("plane translation fails by the type (ii) clause") {
        AlgebraMap a = AlgebraMap::from_images(P, {X(P, 0), X(P, 1) + C(P, 1)});
        Verdict v = decide(P, a);
        CHECK(v.outcome == Outcome::Fails);
        CHECK(v.trace.front().rule == "R4");
        CHECK(v.trace.front().detail.find("type (ii)") != std::string::npos);
    }

    SUBCASE("the same translation has order p over F_3") {
        FieldSpec F3 = FieldSpec::prime_field(3);
        CoeffRing P3 = CoeffRing::polynomial(F3, {"x", "y"});
        AlgebraMap a = AlgebraMap::from_images(P3, {X(P3, 0), X(P3, 1) + C(P3, 1)});
        Verdict v = decide(P3, a);
        CHECK(v.outcome == Outcome::Holds);
        CHECK(v.trace.front().rule == "R1");
        CHECK(v.trace.front().detail.find("= 3") != std::string::npos);
    }
}

TEST_CASE("square plane maps tag the primitivity question") {
    CoeffRing P = CoeffRing::polynomial(Q, {"x", "y"});
    AlgebraMap h = AlgebraMap::from_images(P, {X(P, 1), X(P, 0) + X(P, 1) * X(P, 1)});
    REQUIRE(h.map_class() == MapClass::GeneralizedHenon);

    SUBCASE("direct shape") {
        Verdict v = decide(P, h);
        CHECK(v.outcome == Outcome::Unknown);
        CHECK(v.question_tag == "qn4");
        CHECK(v.trace.front().rule == "R5");
        CHECK(v.trace.front().detail.find("Henon") != std::string::npos);
        CHECK(caveat_contains(v, "complex numbers"));
    }

    SUBCASE("composition containing the shape") {
        AlgebraMap hh = h.compose(h);
        REQUIRE(hh.map_class() == MapClass::CompositionList);
        Verdict v = decide(P, hh);
        CHECK(v.outcome == Outcome::Unknown);
        CHECK(v.question_tag == "qn4");
        CHECK(v.trace.front().rule == "R5");
        CHECK(v.trace.front().detail.find("composition") != std::string::npos);
    }

    SUBCASE("finite-field version only tags the question") {
        FieldSpec F7 = FieldSpec::prime_field(7);
        CoeffRing P7 = CoeffRing::polynomial(F7, {"x", "y"});
        AlgebraMap h7 = AlgebraMap::from_images(P7, {X(P7, 1), X(P7, 0) + X(P7, 1) * X(P7, 1)});
        Verdict v = decide(P7, h7);
        CHECK(v.outcome == Outcome::Unknown);
        CHECK(v.question_tag == "qn4");
        CHECK(caveat_contains(v, "finite field"));
    }
}

TEST_CASE("Laurent monomial verdicts") {
    CoeffRing L = CoeffRing::laurent(Q, {"x", "y"});
    FieldSpec F5 = FieldSpec::prime_field(5);
    CoeffRing L5 = CoeffRing::laurent(F5, {"x", "y"});

    SUBCASE("pure monomial of infinite order over F_p holds") {
        Verdict v = decide(L5, AlgebraMap::monomial(L5, {{2, 1}, {1, 1}}));
        CHECK(v.outcome == Outcome::Holds);
        CHECK(v.trace.front().rule == "R6");
        CHECK(v.trace.front().detail.find("exponent matrix") != std::string::npos);
        CHECK(v.caveats.empty());

        // the exceptional exponent patterns also land here over F_p
        Verdict w = decide(L5, AlgebraMap::monomial(L5, {{0, 1}, {1, 1}}));
        CHECK(w.outcome == Outcome::Holds);
        CHECK(w.trace.front().rule == "R6");
    }

    SUBCASE("the exceptional pattern and its symmetries stay open") {
        const std::vector<std::vector<std::vector<long>>> variants = {
            {{-1, 1}, {1, 0}}, {{0, 1}, {1, -1}}, {{0, 1}, {1, 1}}, {{1, 1}, {1, 0}}};
        for (const auto& rows : variants) {
            Verdict v = decide(L, AlgebraMap::monomial(L, rows));
            CHECK(v.outcome == Outcome::Unknown);
            CHECK(v.question_tag == "qn5");
            CHECK(v.trace.front().rule == "R7");
            CHECK(caveat_contains(v, "complex numbers"));
        }
        CHECK(decide(L, AlgebraMap::monomial(L, {{-1, 1}, {1, 0}})).trace.front().detail.find(
                  "base pattern") != std::string::npos);
    }

    SUBCASE("other infinite-order pure monomials over Q stay open without a tag match") {
        Verdict v = decide(L, AlgebraMap::monomial(L, {{2, 1}, {1, 1}}));
        CHECK(v.outcome == Outcome::Unknown);
        CHECK(v.question_tag == "qn3");
        CHECK(v.trace.front().rule == "Q3");
    }

    SUBCASE("coefficient scaling on the Laurent line is the dimension-1 gap") {
        CoeffRing L1 = CoeffRing::laurent(Q, {"x"});
        AlgebraMap a = AlgebraMap::from_images(L1, {X(L1) * Scalar::from_int(Q, 2)});
        Verdict v = decide(L1, a);
        CHECK(v.outcome == Outcome::Unknown);
        CHECK(v.question_tag == "qn1");
        CHECK(v.trace.front().rule == "Q1");
        CHECK(v.trace.front().detail.find("alpha-simple") != std::string::npos);
        CHECK(caveat_contains(v, "countable"));

        AlgebraMap inv = AlgebraMap::monomial(L1, {{-1}});
        Verdict w = decide(L1, inv);
        CHECK(w.outcome == Outcome::Holds);
        CHECK(w.trace.front().rule == "R1");
    }

    SUBCASE("scaled monomials over F_p fall outside the pure rule") {
        MultiPoly fx = MultiPoly::term(L5, Monomial(std::vector<std::int32_t>{1, 1}),
                                       Scalar::from_int(F5, 2));
        AlgebraMap a = AlgebraMap::from_images(L5, {fx, X(L5, 0)});
        REQUIRE(a.map_class() == MapClass::MonomialMap);
        REQUIRE_FALSE(a.monomial_data().pure);
        Verdict v = decide(L5, a);
        CHECK(v.outcome == Outcome::Unknown);
        CHECK(v.question_tag == "qn3");
        CHECK(caveat_contains(v, "coefficient equal to 1"));
    }

    SUBCASE("finite-order monomial maps hold with a bare trace") {
        Verdict v = decide(L, AlgebraMap::monomial(L, {{0, 1}, {-1, 0}}));
        CHECK(v.outcome == Outcome::Holds);
        CHECK(v.trace.front().rule == "R1");
        CHECK(v.trace.size() == 1);
    }
}

TEST_CASE("quotient rings fall back with a certificate note") {
    CoeffRing base = CoeffRing::polynomial(Q, {"x"});

    SUBCASE("doubling on Q[x]/(x^2) stays open with the dimension-0 caveat") {
        CoeffRing Rq = quotient_ring(base, X(base) * X(base));
        AlgebraMap a = AlgebraMap::from_images(Rq, {X(Rq) + X(Rq)});
        Verdict v = decide(Rq, a);
        CHECK(v.outcome == Outcome::Unknown);
        CHECK(v.question_tag == "qn3");
        CHECK(v.trace.front().rule == "Q3");
        CHECK(v.trace.front().detail.find("does not split") != std::string::npos);
        CHECK(caveat_contains(v, "Krull dimension 0"));
    }

    SUBCASE("doubling on F_5[x]/(x^4 - 1) has finite order and simply holds") {
        FieldSpec F5 = FieldSpec::prime_field(5);
        CoeffRing b5 = CoeffRing::polynomial(F5, {"x"});
        CoeffRing Rq = quotient_ring(b5, X(b5).pow(4) - C(b5, 1));
        AlgebraMap a = AlgebraMap::from_images(Rq, {X(Rq) + X(Rq)});
        Verdict v = decide(Rq, a);
        CHECK(v.outcome == Outcome::Holds);
        CHECK(v.trace.front().rule == "R1");
        CHECK(v.trace.front().detail.find("= 4") != std::string::npos);
        CHECK_FALSE(has_rule(v, "Q3"));
    }
}

TEST_CASE("unmatched and unclassified presentations are not guessed") {
    CoeffRing P = CoeffRing::polynomial(Q, {"x", "y"});

    SUBCASE("unclassified shape") {
        // x -> x + y^3, y -> y + 1 mixes a vertical shear with a translation
        AlgebraMap a = AlgebraMap::from_images(
            P, {X(P, 0) + X(P, 1).pow(3), X(P, 1) + C(P, 1)});
        REQUIRE(a.map_class() == MapClass::Unclassified);
        Verdict v = decide(P, a);
        CHECK(v.outcome == Outcome::Unknown);
        CHECK(v.question_tag == "unclassified");
        CHECK(v.trace.size() == 1);
        CHECK(v.trace.front().rule == "U0");
    }

    SUBCASE("classified composition with no matching family") {
        AlgebraMap t1 = AlgebraMap::from_images(P, {X(P, 0) + X(P, 1) * X(P, 1), X(P, 1)});
        AlgebraMap t2 = AlgebraMap::from_images(P, {X(P, 0), X(P, 1) + X(P, 0) * X(P, 0)});
        AlgebraMap c = t1.compose(t2);
        REQUIRE(c.map_class() == MapClass::CompositionList);
        Verdict v = decide(P, c);
        CHECK(v.outcome == Outcome::Unknown);
        CHECK(v.question_tag == "qn3");
        CHECK(v.trace.front().rule == "Q3");
        CHECK(v.trace.front().detail.find("no decided family matches") != std::string::npos);
    }
}

TEST_CASE("ring mismatch is rejected") {
    CoeffRing R = CoeffRing::polynomial(Q, {"x"});
    CoeffRing P = CoeffRing::polynomial(Q, {"x", "y"});
    AlgebraMap a = AlgebraMap::from_images(R, {-X(R)});
    CHECK_THROWS_AS(decide(P, a), domain_error);
    CHECK_THROWS_AS(decide(CoeffRing::polynomial(FieldSpec::prime_field(7), {"x"}), a),
                    domain_error);
}

TEST_CASE("verdicts are deterministic and serialize stably") {
    CoeffRing L = CoeffRing::laurent(Q, {"x", "y"});
    AlgebraMap j = AlgebraMap::monomial(L, {{-1, 1}, {1, 0}});

    std::string first = verdict_json(decide(L, j));
    for (int i = 0; i < 2; ++i) CHECK(verdict_json(decide(L, j)) == first);

    auto parsed = nlohmann::json::parse(first);
    CHECK(parsed["outcome"] == "Unknown");
    CHECK(parsed["question_tag"] == "qn5");
    CHECK(parsed["trace"].is_array());
    CHECK(parsed["trace"][0]["rule"] == "R7");
    CHECK_FALSE(parsed["trace"][0]["citation"].get<std::string>().empty());
    CHECK(parsed["caveats"].is_array());
    CHECK_FALSE(parsed["caveats"].empty());

    CoeffRing R = CoeffRing::polynomial(Q, {"x"});
    Verdict fails = decide(R, AlgebraMap::from_images(R, {X(R) + C(R, 1)}));
    auto pf = nlohmann::json::parse(verdict_json(fails));
    CHECK(pf["outcome"] == "Fails");
    CHECK_FALSE(pf.contains("question_tag"));
    CHECK(pf["caveats"].empty());
}

TEST_CASE("explain renders the trace with quoted statements") {
    CoeffRing L = CoeffRing::laurent(Q, {"x", "y"});
    Verdict v = decide(L, AlgebraMap::monomial(L, {{-1, 1}, {1, 0}}));
    std::string text = explain(v);
    CHECK(text.find("verdict: Unknown (open question qn5)") != std::string::npos);
    CHECK(text.find("question: ") != std::string::npos);
    CHECK(text.find("rule R7 (deciding): ") != std::string::npos);
    CHECK(text.find("statement: \"") != std::string::npos);
    CHECK(text.find("caveat: ") != std::string::npos);

    CoeffRing R = CoeffRing::polynomial(Q, {"x"});
    Verdict w = decide(R, AlgebraMap::from_images(R, {-X(R)}));
    std::string holds = explain(w);
    CHECK(holds.find("verdict: Holds") != std::string::npos);
    CHECK(holds.find("(corroborating)") != std::string::npos);
    CHECK(w.to_string().find("Holds") != std::string::npos);
    CHECK(w.to_string().find("R1") != std::string::npos);
}

TEST_CASE("orbit selection core") {
    CoeffRing P = CoeffRing::polynomial(Q, {"x", "y"});

    SUBCASE("one point per orbit in presentation order") {
        std::vector<std::vector<Point>> orbits = {
            {pt(Q, 0, 0)},
            {pt(Q, 1, 1), pt(Q, 1, 0), pt(Q, 0, 1)},  // deliberately unsorted
        };
        ProbeOrbitGroup g = probe_orbit_selections(P, orbits, 1, 4096);
        CHECK(g.orbits[1] == std::vector<Point>{pt(Q, 0, 1), pt(Q, 1, 0), pt(Q, 1, 1)});
        CHECK(g.selections_tried == 3);
        CHECK_FALSE(g.cap_exceeded);
        REQUIRE(g.evidence.size() == 3);  // two points always span a line
        const SelectionEvidence& ev = g.evidence[2];
        REQUIRE(ev.selection.size() == 2);
        CHECK(ev.selection[0] == pt(Q, 0, 0));
        CHECK(ev.selection[1] == pt(Q, 1, 1));
        CHECK(eval_at(ev.curve, ev.selection[0]).is_zero());
        CHECK(eval_at(ev.curve, ev.selection[1]).is_zero());
        CHECK_FALSE(eval_at(ev.curve, pt(Q, 1, 2)).is_zero());  // pins the line x = y
        bool warned = false;
        for (const std::string& w : g.warnings)
            warned = warned || w.find("vacuous") != std::string::npos;
        CHECK(warned);
    }

    SUBCASE("empty orbit list is vacuous") {
        ProbeOrbitGroup g = probe_orbit_selections(P, {}, 1, 16);
        CHECK(g.selections_tried == 0);
        CHECK(g.evidence.empty());
        REQUIRE_FALSE(g.warnings.empty());
        CHECK(g.warnings.front().find("no orbits supplied") != std::string::npos);
    }

    SUBCASE("selection cap is reported in band") {
        std::vector<std::vector<Point>> orbits = {
            {pt(Q, 0, 0), pt(Q, 0, 1)},
            {pt(Q, 1, 0), pt(Q, 1, 1)},
        };
        ProbeOrbitGroup g = probe_orbit_selections(P, orbits, 1, 2);
        CHECK(g.selections_tried == 2);
        CHECK(g.cap_exceeded);
        bool warned = false;
        for (const std::string& w : g.warnings)
            warned = warned || w.find("cap") != std::string::npos;
        CHECK(warned);
    }

    SUBCASE("degree-2 budget with few orbits warns about the dimension count") {
        std::vector<std::vector<Point>> orbits;
        for (long i = 0; i < 5; ++i) orbits.push_back({pt(Q, i, 0)});
        ProbeOrbitGroup g = probe_orbit_selections(P, orbits, 2, 16);
        CHECK(g.selections_tried == 1);
        CHECK(g.evidence.size() == 1);
        bool warned = false;
        for (const std::string& w : g.warnings)
            warned = warned || w.find("vacuous") != std::string::npos;
        CHECK(warned);
    }

    SUBCASE("input validation") {
        CHECK_THROWS_AS(probe_orbit_selections(P, {{pt(Q, 0, 0)}, {pt(Q, 0, 0)}}, 1, 16),
                        domain_error);
        CHECK_THROWS_AS(probe_orbit_selections(P, {{}}, 1, 16), domain_error);
        CHECK_THROWS_AS(
            probe_orbit_selections(P, {{Point{Scalar::zero(Q)}}}, 1, 16), domain_error);
        CHECK_THROWS_AS(probe_orbit_selections(P, {{pt(Q, 0, 0)}}, 0, 16), domain_error);
        CHECK_THROWS_AS(probe_orbit_selections(P, {{pt(Q, 0, 0)}}, 1, 0), domain_error);
        CoeffRing L = CoeffRing::laurent(Q, {"x", "y"});
        CHECK_THROWS_AS(probe_orbit_selections(L, {{pt(Q, 1, 1)}}, 1, 16), domain_error);
        CoeffRing R1v = CoeffRing::polynomial(Q, {"x"});
        CHECK_THROWS_AS(probe_orbit_selections(R1v, {{pt(Q, 0, 0)}}, 1, 16), domain_error);
    }
}

TEST_CASE("primitivity probe over a finite field") {
    FieldSpec F2 = FieldSpec::prime_field(2);
    CoeffRing P2 = CoeffRing::polynomial(F2, {"x", "y"});
    AlgebraMap h = AlgebraMap::from_images(P2, {X(P2, 1), X(P2, 0) + X(P2, 1) * X(P2, 1)});
    REQUIRE(h.map_class() == MapClass::GeneralizedHenon);

    PrimitivityReport rep = primitivity_probe(h);
    REQUIRE(rep.groups.size() == 1);
    const ProbeOrbitGroup& g = rep.groups.front();
    // the plane F_2^2 splits into the fixed origin and one 3-cycle
    REQUIRE(g.orbits.size() == 2);
    CHECK(g.orbits[0] == std::vector<Point>{pt(F2, 0, 0)});
    CHECK(g.orbits[1].size() == 3);
    CHECK(g.selections_tried == 3);
    CHECK(g.evidence.size() == 3);
    CHECK(rep.evidence_found);
    bool informational = false;
    for (const std::string& n : rep.notes)
        informational = informational || n.find("evidence only") != std::string::npos;
    CHECK(informational);
    CHECK(rep.to_string().find("primitivity probe") != std::string::npos);
}

TEST_CASE("primitivity probe in characteristic 0") {
    CoeffRing P = CoeffRing::polynomial(Q, {"x", "y"});
    AlgebraMap h = AlgebraMap::from_images(P, {X(P, 1), X(P, 0) + X(P, 1) * X(P, 1)});

    SUBCASE("rational seed box plus reductions") {
        PrimitivityReport rep = primitivity_probe(h);
        REQUIRE(rep.groups.size() == 4);  // rational box + primes 2, 3, 5
        const ProbeOrbitGroup& rational = rep.groups.front();
        // (0,0) is the only rational periodic point in the default box
        REQUIRE(rational.orbits.size() == 1);
        CHECK(rational.orbits[0] == std::vector<Point>{pt(Q, 0, 0)});
        CHECK(rep.evidence_found);
        for (const ProbeOrbitGroup& g : rep.groups) CHECK_FALSE(g.source.empty());
    }

    SUBCASE("a prime meeting a denominator is skipped with a note") {
        MultiPoly fy = X(P, 0) * Scalar::from_mpq(Q, mpq_class(1, 2)) + X(P, 1) * X(P, 1);
        AlgebraMap half = AlgebraMap::from_images(P, {X(P, 1), fy});
        REQUIRE(half.map_class() == MapClass::GeneralizedHenon);
        ProbeSearch s;
        s.primes = {2, 3};
        PrimitivityReport rep = primitivity_probe(half, s);
        CHECK(rep.groups.size() == 2);  // rational box + prime 3
        bool skipped = false;
        for (const std::string& n : rep.notes)
            skipped = skipped || n.find("prime 2 skipped") != std::string::npos;
        CHECK(skipped);
    }

    SUBCASE("compositions containing the shape are probed too") {
        AlgebraMap hh = h.compose(h);
        REQUIRE(hh.map_class() == MapClass::CompositionList);
        ProbeSearch s;
        s.primes = {3};
        PrimitivityReport rep = primitivity_probe(hh, s);
        CHECK(rep.groups.size() == 2);
    }

    SUBCASE("cyclotomic coefficients skip the reduction stage") {
        CoeffRing Pc = CoeffRing::polynomial(FieldSpec::cyclotomic(4), {"x", "y"});
        AlgebraMap hc = AlgebraMap::from_images(Pc, {X(Pc, 1), X(Pc, 0) + X(Pc, 1) * X(Pc, 1)});
        PrimitivityReport rep = primitivity_probe(hc);
        CHECK(rep.groups.size() == 1);
        bool noted = false;
        for (const std::string& n : rep.notes)
            noted = noted || n.find("cyclotomic") != std::string::npos;
        CHECK(noted);
    }

    SUBCASE("gate and budget validation") {
        AlgebraMap lin = AlgebraMap::linear(P, Matrix::from_int_rows(Q, {{2, 0}, {0, 3}}));
        CHECK_THROWS_AS(primitivity_probe(lin), domain_error);
        CoeffRing L = CoeffRing::laurent(Q, {"x", "y"});
        CHECK_THROWS_AS(primitivity_probe(AlgebraMap::monomial(L, {{-1, 1}, {1, 0}})),
                        domain_error);
        ProbeSearch s;
        s.max_period = 0;
        CHECK_THROWS_AS(primitivity_probe(h, s), domain_error);
    }
}
