#include "skewlab/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "skewlab/diamond.hpp"
#include "skewlab/dynamics.hpp"
#include "skewlab/errors.hpp"
#include "skewlab/modlab.hpp"
#include "skewlab/skewpoly.hpp"
#include "skewlab/specfile.hpp"

namespace skewlab {

namespace {

using nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw domain_error("cannot read file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// FNV-1a, 64 bit; identifies the canonical spec text in reports.
std::string digest(const std::string& s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

std::string utc_stamp() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Deterministic report body; flags echo the effective option values in
/// declaration order.
struct Report {
    std::string command;
    std::string spec_digest;
    std::vector<std::pair<std::string, std::string>> flags;
    std::vector<std::string> human;
    ordered_json result = ordered_json::object();
    std::vector<std::string> warnings;
};

std::string render_human(const Report& r, bool stamp) {
    std::ostringstream os;
    os << "command: " << r.command << "\n";
    os << "spec: " << r.spec_digest << "\n";
    for (const auto& [k, v] : r.flags) os << "flag: " << k << "=" << v << "\n";
    for (const auto& line : r.human) os << line << "\n";
    for (const auto& w : r.warnings) os << "warning: " << w << "\n";
    if (stamp) os << "stamp: " << utc_stamp() << "\n";
    return os.str();
}

std::string render_json(const Report& r, bool stamp) {
    ordered_json j;
    j["command"] = r.command;
    j["inputs"]["spec"] = r.spec_digest;
    j["inputs"]["flags"] = ordered_json::object();
    for (const auto& [k, v] : r.flags) j["inputs"]["flags"][k] = v;
    j["result"] = r.result;
    j["warnings"] = r.warnings;
    j["status"] = "ok";
    if (stamp) j["stamp"] = utc_stamp();
    return j.dump(2) + "\n";
}

/// Same-shape ring over F_p for the dynamics commands. A spec declared over
/// F_p must already match the requested prime.
CoeffRing plane_mod_p(const CoeffRing& ring, std::uint64_t p) {
    if (ring.field().kind() == FieldKind::PrimeField) {
        if (ring.field().characteristic() != p)
            throw domain_error("the declared field has characteristic " +
                               std::to_string(ring.field().characteristic()) +
                               ", not " + std::to_string(p));
        return ring;
    }
    FieldSpec fp = FieldSpec::prime_field(p);
    switch (ring.kind()) {
    case RingKind::Polynomial:
        return CoeffRing::polynomial(fp, ring.var_names());
    case RingKind::Laurent:
        return CoeffRing::laurent(fp, ring.var_names());
    default:
        throw unsupported_error("cycle scans need a polynomial or Laurent ring");
    }
}

AlgebraMap map_mod_p(const SpecFile& spec, std::uint64_t p) {
    CoeffRing target = plane_mod_p(spec.ring, p);
    if (target == spec.ring) return spec.alpha;
    return reduce_mod_p(spec.alpha, target);
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

std::string render_point(const Point& a) { return point_to_string(a); }

// Subcommand bodies. Each fills the report from the parsed spec.

void cmd_classify(const SpecFile& spec, Report& rep) {
    rep.result["class"] = map_class_name(spec.alpha.map_class());
    rep.result["detail"] = spec.alpha.class_detail();
    rep.human.push_back("class: " + map_class_name(spec.alpha.map_class()));
    rep.human.push_back("detail: " + spec.alpha.class_detail());
}

void cmd_order(const SpecFile& spec, unsigned long bound, Report& rep) {
    OrderVerdict v = order(spec.alpha, bound);
    switch (v.kind) {
    case OrderVerdict::Kind::Finite:
        rep.result["kind"] = "finite";
        rep.result["order"] = v.order;
        break;
    case OrderVerdict::Kind::InfiniteCertified:
        rep.result["kind"] = "infinite";
        break;
    case OrderVerdict::Kind::UnknownBeyondBound:
        rep.result["kind"] = "unknown";
        rep.result["bound"] = v.bound;
        break;
    }
    if (!v.reason.empty()) rep.result["reason"] = v.reason;
    rep.human.push_back("order: " + v.to_string());
}

void cmd_decide(const SpecFile& spec, Report& rep) {
    Verdict v = decide(spec.ring, spec.alpha);
    rep.result = ordered_json::parse(verdict_json(v));
    rep.warnings = v.caveats;
    for (auto& line : split_lines(explain(v))) {
        if (line.rfind("caveat: ", 0) == 0) continue; // caveats land in warnings
        rep.human.push_back(line);
    }
}

void cmd_orbits(const SpecFile& spec, std::uint64_t p, unsigned long max_period,
                Report& rep) {
    AlgebraMap am = map_mod_p(spec, p);
    CycleDecomposition dec = periodic_points_ff(am);
    PointMap phi(am);
    ordered_json list = ordered_json::array();
    unsigned long dropped = 0;
    for (const CycleRecord& c : dec.cycles) {
        if (c.length > max_period) {
            ++dropped;
            continue;
        }
        std::vector<std::string> pts;
        Point cur = c.representative;
        for (unsigned long i = 0; i < c.length; ++i) {
            pts.push_back(render_point(cur));
            cur = phi.apply(cur);
        }
        ordered_json rec;
        rec["length"] = c.length;
        rec["points"] = pts;
        list.push_back(rec);
        std::string line = "length " + std::to_string(c.length) + ":";
        for (const auto& s : pts) line += " " + s;
        rep.human.push_back(line);
    }
    rep.result["p"] = dec.p;
    rep.result["total_points"] = dec.total_points;
    rep.result["orbits"] = list;
    if (dropped)
        rep.warnings.push_back(std::to_string(dropped) + " orbit(s) longer than " +
                               std::to_string(max_period) + " omitted");
}

void cmd_cycles(const SpecFile& spec, std::uint64_t p, Report& rep) {
    CycleDecomposition dec = periodic_points_ff(map_mod_p(spec, p));
    rep.result = ordered_json::parse(cycles_json(dec));
    for (auto& line : split_lines(cycles_csv(dec))) rep.human.push_back(line);
}

void cmd_curve(const SpecFile& spec, unsigned degree, const std::string& points_path,
               Report& rep) {
    auto pts = parse_points(read_file(points_path), spec.field, spec.ring.arity());
    if (pts.empty()) throw domain_error("the points file lists no points");
    std::optional<MultiPoly> c = curve_membership(spec.ring, pts, degree);
    rep.result["points"] = pts.size();
    rep.result["found"] = c.has_value();
    if (c) {
        rep.result["curve"] = c->to_string();
        rep.human.push_back("curve: " + c->to_string());
    } else {
        rep.human.push_back("no curve of degree <= " + std::to_string(degree) +
                            " through all " + std::to_string(pts.size()) + " points");
    }
}

void cmd_special(const SpecFile& spec, const std::string& a_text,
                 const std::vector<std::string>& ideal_names, unsigned long n_max,
                 Report& rep) {
    MultiPoly a = parse_expr(a_text, spec.ring, spec.polys);
    std::vector<std::string> names = ideal_names;
    if (names.empty())
        for (const auto& [name, g] : spec.ideals) names.push_back(name);
    if (names.empty()) throw domain_error("no ideal declarations to test");
    std::vector<IdealSpec> ideals;
    for (const auto& name : names) {
        auto it = spec.ideals.find(name);
        if (it == spec.ideals.end()) throw domain_error("no ideal named '" + name + "'");
        ideals.push_back(IdealSpec::principal(it->second, name));
    }
    ProbeReport pr = special_probe(spec.alpha, a, ideals, n_max);
    ordered_json list = ordered_json::array();
    for (const ProbeEntry& e : pr.entries) {
        ordered_json rec;
        rec["ideal"] = e.label;
        if (e.least_n)
            rec["least_n"] = *e.least_n;
        else
            rec["least_n"] = nullptr;
        if (!e.note.empty()) rec["note"] = e.note;
        list.push_back(rec);
        std::string line = "ideal " + e.label + ": ";
        line += e.least_n ? "least n = " + std::to_string(*e.least_n)
                          : "no n <= " + std::to_string(n_max);
        if (!e.note.empty()) line += " (" + e.note + ")";
        rep.human.push_back(line);
    }
    rep.result["entries"] = list;
    rep.result["norms_nonzero"] = pr.norms_nonzero;
    if (pr.first_zero_norm) {
        rep.result["first_zero_norm"] = *pr.first_zero_norm;
        rep.warnings.push_back("the twisted norm vanishes at n = " +
                               std::to_string(*pr.first_zero_norm));
    }
}

void cmd_chain(const SpecFile& spec, const std::string& rho_text, unsigned long m_max,
               Report& rep) {
    SkewContext sctx = SkewContext::poly(spec.ring, spec.alpha);
    MultiPoly rho = parse_expr(rho_text, spec.ring, spec.polys);
    ModContext mctx = ModContext::make(sctx, rho);
    ChainReport cr = chain_check(mctx, m_max);
    rep.result["m_max"] = cr.m_max;
    rep.result["all_strict"] = cr.all_strict;
    if (cr.first_collapse)
        rep.result["first_collapse"] = *cr.first_collapse;
    else
        rep.result["first_collapse"] = nullptr;
    rep.result["certificates"] = cr.certificates;
    rep.human.push_back(cr.all_strict
                            ? "chain strict through m = " + std::to_string(cr.m_max)
                            : "collapse at m = " + std::to_string(*cr.first_collapse));
    for (const auto& c : cr.certificates) rep.human.push_back(c);
}

void cmd_essential(const SpecFile& spec, const std::string& rho_text,
                   const std::string& elem_text, unsigned degree_bound, Report& rep) {
    SkewContext sctx = SkewContext::poly(spec.ring, spec.alpha);
    ModContext mctx = ModContext::make(sctx, parse_expr(rho_text, spec.ring, spec.polys));
    MultiPoly elem = parse_expr(elem_text, spec.ring, spec.polys);
    CyclicModuleElem m =
        CyclicModuleElem::normal_form(mctx, SkewPoly::constant(sctx, elem));
    if (m.is_zero()) throw domain_error("the element is zero in the module");
    EssentialWitness w = essential_probe(m, degree_bound);
    rep.result["found"] = w.found;
    if (w.found) {
        rep.result["witness"] = w.witness->to_string();
        rep.result["image"] = w.image->to_string();
        rep.human.push_back("witness: " + w.witness->to_string());
        rep.human.push_back("image: " + w.image->to_string());
    } else {
        rep.human.push_back("no witness found (degree bound " +
                            std::to_string(degree_bound) + ")");
    }
    if (!w.note.empty()) {
        rep.result["note"] = w.note;
        rep.human.push_back("note: " + w.note);
    }
}

void cmd_lattice(const SpecFile& spec, const std::string& u_text,
                 const std::vector<std::string>& gen_texts, Report& rep) {
    SkewContext sctx = SkewContext::poly(spec.ring, spec.alpha);
    Scalar u = parse_scalar(u_text, spec.field);
    std::vector<SkewPoly> gens;
    for (const auto& g : gen_texts)
        gens.push_back(SkewPoly::constant(sctx, parse_expr(g, spec.ring, spec.polys)));
    SubmoduleDesc d = lattice_contract(sctx, gens, u);
    ordered_json list = ordered_json::array();
    for (const auto& g : d.generators) list.push_back(g.to_string());
    rep.result["generators"] = list;
    rep.result["u"] = d.u.to_string();
    if (!d.note.empty()) rep.result["note"] = d.note;
    rep.human.push_back("contraction: " + d.to_string());
    if (!d.note.empty()) rep.human.push_back("note: " + d.note);
}

void cmd_matrix_units(const SpecFile& spec, unsigned n, Report& rep) {
    MatrixUnitsReport r = matrix_units_verify(n, spec.field);
    rep.result["n"] = r.n;
    ordered_json ids;
    ids["f_power_formula"] = r.f_power_formula;
    ids["left_unit"] = r.left_unit;
    ids["right_complement"] = r.right_complement;
    ids["partition"] = r.partition;
    ids["nilpotent"] = r.nilpotent;
    ids["theta_gap"] = r.theta_gap;
    ids["theta_period"] = r.theta_period;
    rep.result["identities"] = ids;
    rep.result["all_ok"] = r.all_ok;
    if (!r.detail.empty()) rep.result["detail"] = r.detail;
    if (r.all_ok) {
        rep.human.push_back("n = " + std::to_string(r.n) + ": all identities hold");
    } else {
        rep.human.push_back("n = " + std::to_string(r.n) + ": FAILED");
        for (const auto& [name, ok] : ids.items())
            if (!ok.get<bool>()) rep.human.push_back("failed: " + name);
    }
    if (!r.detail.empty()) rep.human.push_back("detail: " + r.detail);
}

} // namespace

CliResult run_cli(const std::vector<std::string>& args) {
    CliResult res;
    CLI::App app{"exact tools for twisted polynomial rings"};
    app.name("skewlab");
    app.require_subcommand(1);

    std::string spec_path;
    bool json_out = false;
    bool stamp = false;
    app.add_option("--spec", spec_path, "declaration file")->required();
    app.add_flag("--json", json_out, "emit the report as JSON");
    app.add_flag("--stamp", stamp, "append a wall-clock stamp");

    auto* c_classify = app.add_subcommand("classify", "structural class of the map");
    auto* c_order = app.add_subcommand("order", "finite-order verdict for the map");
    unsigned long order_bound = 4096;
    c_order->add_option("--bound", order_bound, "iteration bound");
    auto* c_decide = app.add_subcommand("decide", "decision verdict with citations");

    auto* c_orbits = app.add_subcommand("orbits", "orbit list over F_p");
    std::uint64_t orbits_prime = 0;
    unsigned long orbits_maxp = 32;
    c_orbits->add_option("--prime", orbits_prime, "reduction prime")->required();
    c_orbits->add_option("--max-period", orbits_maxp, "longest listed orbit");

    auto* c_cycles = app.add_subcommand("cycles", "cycle length histogram over F_p");
    std::uint64_t cycles_prime = 0;
    c_cycles->add_option("--prime", cycles_prime, "reduction prime")->required();

    auto* c_curve = app.add_subcommand("curve", "least curve through listed points");
    unsigned curve_degree = 1;
    std::string curve_points;
    c_curve->add_option("--degree", curve_degree, "largest degree tried");
    c_curve->add_option("--points", curve_points, "points file")->required();

    auto* c_special = app.add_subcommand("special", "twisted norm membership probe");
    std::string special_a;
    std::vector<std::string> special_ideals;
    unsigned long special_nmax = 8;
    c_special->add_option("--a", special_a, "ring element")->required();
    c_special->add_option("--ideal", special_ideals, "declared ideal name");
    c_special->add_option("--max-n", special_nmax, "largest norm index");

    auto* c_modlab = app.add_subcommand("modlab", "cyclic module experiments");
    c_modlab->require_subcommand(1);
    auto* c_chain = c_modlab->add_subcommand("chain", "iterated image chain strictness");
    std::string chain_rho;
    unsigned long chain_max = 10;
    c_chain->add_option("--rho", chain_rho, "module parameter")->required();
    c_chain->add_option("--max", chain_max, "largest tested index");
    auto* c_essential = c_modlab->add_subcommand("essential", "socle witness search");
    std::string ess_rho, ess_elem;
    unsigned ess_bound = 4;
    c_essential->add_option("--rho", ess_rho, "module parameter")->required();
    c_essential->add_option("--elem", ess_elem, "module element")->required();
    c_essential->add_option("--bound", ess_bound, "multiplier degree bound");
    auto* c_lattice = c_modlab->add_subcommand("lattice", "stable ideal contraction");
    std::string lat_u = "1";
    std::vector<std::string> lat_gens;
    c_lattice->add_option("--u", lat_u, "unit scalar");
    c_lattice->add_option("--gen", lat_gens, "ideal generator expression");

    auto* c_units = app.add_subcommand("verify-matrix-units", "matrix unit identities");
    unsigned units_n = 0;
    c_units->add_option("--n", units_n, "component count")->required();

    for (auto* sc : {c_classify, c_order, c_decide, c_orbits, c_cycles, c_curve,
                     c_special, c_modlab, c_chain, c_essential, c_lattice, c_units})
        sc->fallthrough();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(std::move(rev));
    } catch (const CLI::ParseError& e) {
        std::ostringstream out, err;
        res.exit_code = app.exit(e, out, err);
        if (res.exit_code != 0) res.exit_code = 1;
        res.out = out.str();
        res.err = err.str();
        return res;
    }

    try {
        SpecFile spec = parse_spec(read_file(spec_path));
        Report rep;
        rep.spec_digest = digest(spec.pretty());
        auto flag = [&rep](const std::string& k, const std::string& v) {
            rep.flags.emplace_back(k, v);
        };

        if (app.got_subcommand(c_classify)) {
            rep.command = "classify";
            cmd_classify(spec, rep);
        } else if (app.got_subcommand(c_order)) {
            rep.command = "order";
            flag("bound", std::to_string(order_bound));
            cmd_order(spec, order_bound, rep);
        } else if (app.got_subcommand(c_decide)) {
            rep.command = "decide";
            cmd_decide(spec, rep);
        } else if (app.got_subcommand(c_orbits)) {
            rep.command = "orbits";
            flag("prime", std::to_string(orbits_prime));
            flag("max-period", std::to_string(orbits_maxp));
            cmd_orbits(spec, orbits_prime, orbits_maxp, rep);
        } else if (app.got_subcommand(c_cycles)) {
            rep.command = "cycles";
            flag("prime", std::to_string(cycles_prime));
            cmd_cycles(spec, cycles_prime, rep);
        } else if (app.got_subcommand(c_curve)) {
            rep.command = "curve";
            flag("degree", std::to_string(curve_degree));
            flag("points", curve_points);
            cmd_curve(spec, curve_degree, curve_points, rep);
        } else if (app.got_subcommand(c_special)) {
            rep.command = "special";
            flag("a", special_a);
            for (const auto& name : special_ideals) flag("ideal", name);
            flag("max-n", std::to_string(special_nmax));
            cmd_special(spec, special_a, special_ideals, special_nmax, rep);
        } else if (app.got_subcommand(c_modlab)) {
            if (c_modlab->got_subcommand(c_chain)) {
                rep.command = "modlab chain";
                flag("rho", chain_rho);
                flag("max", std::to_string(chain_max));
                cmd_chain(spec, chain_rho, chain_max, rep);
            } else if (c_modlab->got_subcommand(c_essential)) {
                rep.command = "modlab essential";
                flag("rho", ess_rho);
                flag("elem", ess_elem);
                flag("bound", std::to_string(ess_bound));
                cmd_essential(spec, ess_rho, ess_elem, ess_bound, rep);
            } else {
                rep.command = "modlab lattice";
                flag("u", lat_u);
                for (const auto& g : lat_gens) flag("gen", g);
                cmd_lattice(spec, lat_u, lat_gens, rep);
            }
        } else {
            rep.command = "verify-matrix-units";
            flag("n", std::to_string(units_n));
            cmd_matrix_units(spec, units_n, rep);
        }

        res.out = json_out ? render_json(rep, stamp) : render_human(rep, stamp);
        res.exit_code = 0;
    } catch (const internal_error& e) {
        res.err = std::string("internal error: ") + e.what() + "\n";
        res.exit_code = 3;
    } catch (const unsupported_error& e) {
        res.err = std::string("unsupported: ") + e.what() + "\n";
        res.exit_code = 2;
    } catch (const parse_error& e) {
        res.err = std::string("error: ") + e.what() + "\n";
        res.exit_code = 1;
    } catch (const domain_error& e) {
        res.err = std::string("error: ") + e.what() + "\n";
        res.exit_code = 1;
    } catch (const std::exception& e) {
        res.err = std::string("internal error: ") + e.what() + "\n";
        res.exit_code = 3;
    }
    return res;
}

} // namespace skewlab
