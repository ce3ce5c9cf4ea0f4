#include "skewlab/specfile.hpp"

#include <cctype>
#include <optional>
#include <sstream>
#include <string_view>

#include "skewlab/errors.hpp"
#include "skewlab/linalg.hpp"

namespace skewlab {

namespace {

const std::map<std::string, MultiPoly> kNoNames;

// Single-line scanner; column reports are 1-based byte offsets.
struct LineCur {
    std::string_view s;
    std::size_t line = 1;
    std::size_t i = 0;

    void ws() {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    }
    bool eol() {
        ws();
        return i >= s.size();
    }
    char peek() {
        ws();
        return i < s.size() ? s[i] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            ++i;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw parse_error(what, line, i + 1);
    }
    void expect(char c, const std::string& what) {
        if (!eat(c)) fail(what);
    }
    bool at_ident() {
        char c = peek();
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }
    std::string ident() {
        if (!at_ident()) fail("expected an identifier");
        std::size_t b = i;
        while (i < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
            ++i;
        return std::string(s.substr(b, i - b));
    }
    mpz_class integer() {
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an integer");
        std::size_t b = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        return mpz_class(std::string(s.substr(b, i - b)), 10);
    }
};

// Recursive-descent evaluator for the grammar in specfile.hpp. Identifiers
// resolve to ring variables first, then to the named table.
class ExprParser {
public:
    ExprParser(LineCur& cur, const CoeffRing& ring,
               const std::map<std::string, MultiPoly>& named)
        : cur_(cur), ring_(ring), named_(named) {}

    MultiPoly expr() {
        MultiPoly acc = signed_term();
        while (true) {
            if (cur_.eat('+'))
                acc = acc + signed_term();
            else if (cur_.eat('-'))
                acc = acc - signed_term();
            else
                return acc;
        }
    }

private:
    MultiPoly signed_term() {
        if (cur_.eat('-')) return MultiPoly::zero(ring_) - term();
        return term();
    }

    MultiPoly term() {
        MultiPoly acc = factor();
        while (cur_.eat('*')) acc = acc * factor();
        return acc;
    }

    MultiPoly factor() {
        int var = -1;
        MultiPoly b = base(var);
        if (!cur_.eat('^')) return b;
        bool neg = cur_.eat('-');
        mpz_class e = cur_.integer();
        if (!e.fits_ulong_p() || e > 4096) cur_.fail("exponent too large");
        auto ue = static_cast<unsigned>(e.get_ui());
        if (!neg) return b.pow(ue);
        if (!ring_.negative_exponents_allowed())
            cur_.fail("negative exponents need a Laurent ring");
        if (var < 0) cur_.fail("negative exponents apply to a bare variable");
        if (ue == 0) return MultiPoly::from_int(ring_, 1);
        std::vector<std::int32_t> exps(ring_.arity(), 0);
        exps[static_cast<unsigned>(var)] = -static_cast<std::int32_t>(ue);
        return MultiPoly::term(ring_, Monomial(std::move(exps)),
                               Scalar::one(ring_.field()));
    }

    // `var` reports the index when the base is a bare ring variable.
    MultiPoly base(int& var) {
        char c = cur_.peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mpz_class num = cur_.integer();
            mpq_class q(num);
            if (cur_.eat('/')) {
                mpz_class den = cur_.integer();
                if (den == 0) cur_.fail("zero denominator");
                q = mpq_class(num, den);
                q.canonicalize();
            }
            return MultiPoly::constant(ring_, Scalar::from_mpq(ring_.field(), q));
        }
        if (cur_.eat('(')) {
            MultiPoly e = expr();
            cur_.expect(')', "expected ')'");
            return e;
        }
        if (cur_.at_ident()) {
            std::size_t at = cur_.i;
            std::string name = cur_.ident();
            if (name == "zeta") {
                if (ring_.field().kind() != FieldKind::Cyclotomic) {
                    cur_.i = at;
                    cur_.fail("'zeta' needs a cyclotomic field");
                }
                return MultiPoly::constant(ring_, Scalar::zeta(ring_.field()));
            }
            const auto& vars = ring_.var_names();
            for (unsigned k = 0; k < vars.size(); ++k) {
                if (vars[k] == name) {
                    var = static_cast<int>(k);
                    return MultiPoly::variable(ring_, k);
                }
            }
            auto it = named_.find(name);
            if (it != named_.end()) return it->second;
            cur_.i = at;
            cur_.fail("unknown name '" + name + "'");
        }
        cur_.fail("expected a value");
    }

    LineCur& cur_;
    const CoeffRing& ring_;
    const std::map<std::string, MultiPoly>& named_;
};

Scalar constant_value(LineCur& cur, const MultiPoly& p, const char* context) {
    if (!p.is_constant())
        cur.fail(std::string(context) + " must be a constant expression");
    return p.coeff_of(Monomial::unit(p.ring().arity()));
}

std::string field_text(const FieldSpec& f) {
    switch (f.kind()) {
    case FieldKind::Rationals:
        return "Q";
    case FieldKind::PrimeField:
        return "Fp(" + std::to_string(f.characteristic()) + ")";
    case FieldKind::Cyclotomic:
        return "Qzeta(" + std::to_string(f.cyclotomic_index()) + ")";
    }
    throw internal_error("field_text: bad kind");
}

std::string joined_vars(const CoeffRing& r) {
    std::string out;
    for (unsigned i = 0; i < r.arity(); ++i) {
        if (i) out += ", ";
        out += r.var_names()[i];
    }
    return out;
}

std::string ring_text(const CoeffRing& r) {
    switch (r.kind()) {
    case RingKind::Polynomial:
        return "poly(" + joined_vars(r) + ")";
    case RingKind::Laurent:
        return "laurent(" + joined_vars(r) + ")";
    case RingKind::UnivariateQuotient:
        return "quot(" + r.var_names()[0] + "; " + r.modulus().to_string() + ")";
    case RingKind::CoordinateAffineQuotient:
        throw unsupported_error("coordinate quotient rings have no declaration form");
    }
    throw internal_error("ring_text: bad kind");
}

// Builders shared by the declaration parser.

FieldSpec parse_field_decl(LineCur& cur) {
    std::size_t at = cur.i;
    std::string name = cur.ident();
    try {
        if (name == "Q") return FieldSpec::rationals();
        if (name == "Fp") {
            cur.expect('(', "expected '('");
            mpz_class p = cur.integer();
            cur.expect(')', "expected ')'");
            if (!p.fits_ulong_p()) cur.fail("characteristic too large");
            return FieldSpec::prime_field(p.get_ui());
        }
        if (name == "Qzeta") {
            cur.expect('(', "expected '('");
            mpz_class n = cur.integer();
            cur.expect(')', "expected ')'");
            if (!n.fits_ulong_p()) cur.fail("cyclotomic index too large");
            return FieldSpec::cyclotomic(n.get_ui());
        }
    } catch (const domain_error& e) {
        cur.fail(e.what());
    }
    cur.i = at;
    cur.fail("unknown field '" + name + "'");
}

CoeffRing parse_ring_decl(LineCur& cur, const FieldSpec& field) {
    std::size_t at = cur.i;
    std::string kind = cur.ident();
    try {
        if (kind == "poly" || kind == "laurent") {
            cur.expect('(', "expected '('");
            std::vector<std::string> vars;
            do {
                vars.push_back(cur.ident());
            } while (cur.eat(','));
            cur.expect(')', "expected ')'");
            return kind == "poly" ? CoeffRing::polynomial(field, std::move(vars))
                                  : CoeffRing::laurent(field, std::move(vars));
        }
        if (kind == "quot") {
            cur.expect('(', "expected '('");
            std::string var = cur.ident();
            cur.expect(';', "expected ';'");
            CoeffRing base = CoeffRing::polynomial(field, {var});
            ExprParser p(cur, base, kNoNames);
            MultiPoly modulus = p.expr();
            cur.expect(')', "expected ')'");
            return quotient_ring(base, modulus);
        }
    } catch (const domain_error& e) {
        cur.fail(e.what());
    }
    cur.i = at;
    cur.fail("unknown ring kind '" + kind + "'");
}

std::vector<std::vector<Scalar>> parse_scalar_matrix(LineCur& cur,
                                                     const CoeffRing& ring) {
    std::vector<std::vector<Scalar>> rows;
    cur.expect('[', "expected '['");
    do {
        cur.expect('[', "expected '['");
        std::vector<Scalar> row;
        do {
            ExprParser p(cur, ring, kNoNames);
            row.push_back(constant_value(cur, p.expr(), "a matrix entry"));
        } while (cur.eat(','));
        cur.expect(']', "expected ']'");
        rows.push_back(std::move(row));
    } while (cur.eat(','));
    cur.expect(']', "expected ']'");
    return rows;
}

std::vector<std::vector<long>> parse_integer_matrix(LineCur& cur) {
    std::vector<std::vector<long>> rows;
    cur.expect('[', "expected '['");
    do {
        cur.expect('[', "expected '['");
        std::vector<long> row;
        do {
            bool neg = cur.eat('-');
            mpz_class v = cur.integer();
            if (!v.fits_slong_p()) cur.fail("exponent entry too large");
            row.push_back(neg ? -v.get_si() : v.get_si());
        } while (cur.eat(','));
        cur.expect(']', "expected ']'");
        rows.push_back(std::move(row));
    } while (cur.eat(','));
    cur.expect(']', "expected ']'");
    return rows;
}

} // namespace

SpecFile::SpecFile()
    : ring(CoeffRing::polynomial(FieldSpec::rationals(), {"x"})),
      alpha(AlgebraMap::identity(ring)) {}

bool SpecFile::operator==(const SpecFile& o) const {
    return field == o.field && ring == o.ring && alpha == o.alpha &&
           polys == o.polys && ideals == o.ideals && points == o.points;
}

std::string SpecFile::pretty() const {
    std::ostringstream os;
    os << "field " << field_text(field) << "\n";
    os << "ring " << ring_text(ring) << "\n";
    for (unsigned i = 0; i < ring.arity(); ++i)
        os << "auto " << ring.var_names()[i] << " -> " << alpha.image(i).to_string()
           << "\n";
    for (const auto& [name, p] : polys) os << "let " << name << " = " << p.to_string() << "\n";
    for (const auto& [name, p] : ideals)
        os << "ideal " << name << " = " << p.to_string() << "\n";
    for (const auto& [name, pt] : points) {
        os << "point " << name << " = (";
        for (std::size_t k = 0; k < pt.size(); ++k) {
            if (k) os << ", ";
            os << pt[k].to_string();
        }
        os << ")\n";
    }
    return os.str();
}

SpecFile parse_spec(const std::string& text) {
    std::optional<FieldSpec> field;
    std::optional<CoeffRing> ring;
    std::optional<AlgebraMap> alpha;
    std::map<std::string, MultiPoly> images;
    std::size_t last_auto_line = 1;
    std::map<std::string, MultiPoly> polys;
    std::map<std::string, MultiPoly> ideals;
    std::map<std::string, std::vector<Scalar>> points;

    auto reserved = [&](LineCur& cur, const std::string& name) {
        if (name == "zeta") cur.fail("'zeta' is reserved");
        for (const auto& v : ring->var_names())
            if (v == name) cur.fail("'" + name + "' collides with a ring variable");
    };

    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        LineCur cur{raw, lineno};
        if (cur.eol()) continue;
        if (!cur.at_ident()) cur.fail("expected a declaration");
        std::string kw = cur.ident();

        if (kw == "field") {
            if (field) cur.fail("duplicate field declaration");
            field = parse_field_decl(cur);
        } else if (kw == "ring") {
            if (!field) cur.fail("ring declared before field");
            if (ring) cur.fail("duplicate ring declaration");
            ring = parse_ring_decl(cur, *field);
        } else if (kw == "auto") {
            if (!ring) cur.fail("map declared before ring");
            std::size_t at = cur.i;
            std::string name = cur.ident();
            last_auto_line = lineno;
            if ((name == "linear" || name == "monomial") && cur.peek() == '[') {
                if (alpha || !images.empty()) cur.fail("duplicate map declaration");
                try {
                    if (name == "linear") {
                        auto rows = parse_scalar_matrix(cur, *ring);
                        alpha = AlgebraMap::linear(*ring,
                                                   Matrix::from_rows(*field, rows));
                    } else {
                        alpha = AlgebraMap::monomial(*ring, parse_integer_matrix(cur));
                    }
                } catch (const domain_error& e) {
                    throw parse_error(e.what(), lineno, 1);
                }
            } else {
                if (alpha) cur.fail("duplicate map declaration");
                const auto& vars = ring->var_names();
                bool known = false;
                for (const auto& v : vars) known = known || v == name;
                if (!known) {
                    cur.i = at;
                    cur.fail("'" + name + "' is not a ring variable");
                }
                if (images.count(name)) cur.fail("duplicate image for '" + name + "'");
                cur.expect('-', "expected '->'");
                cur.expect('>', "expected '->'");
                ExprParser p(cur, *ring, kNoNames);
                images.emplace(name, p.expr());
            }
        } else if (kw == "let" || kw == "ideal") {
            if (!ring) cur.fail("declaration before ring");
            std::string name = cur.ident();
            reserved(cur, name);
            auto& table = kw == "let" ? polys : ideals;
            if (table.count(name)) cur.fail("duplicate name '" + name + "'");
            cur.expect('=', "expected '='");
            ExprParser p(cur, *ring, polys);
            table.emplace(name, p.expr());
        } else if (kw == "point") {
            if (!ring) cur.fail("declaration before ring");
            std::string name = cur.ident();
            reserved(cur, name);
            if (points.count(name)) cur.fail("duplicate name '" + name + "'");
            cur.expect('=', "expected '='");
            cur.expect('(', "expected '('");
            std::vector<Scalar> pt;
            do {
                ExprParser p(cur, *ring, kNoNames);
                pt.push_back(constant_value(cur, p.expr(), "a coordinate"));
            } while (cur.eat(','));
            cur.expect(')', "expected ')'");
            if (pt.size() != ring->arity())
                cur.fail("expected " + std::to_string(ring->arity()) + " coordinates");
            points.emplace(name, std::move(pt));
        } else {
            cur.i = 0;
            cur.fail("unknown declaration '" + kw + "'");
        }
        if (!cur.eol()) cur.fail("unexpected trailing input");
    }

    std::size_t end_line = lineno ? lineno : 1;
    if (!field) throw parse_error("missing field declaration", end_line, 1);
    if (!ring) throw parse_error("missing ring declaration", end_line, 1);
    if (!alpha) {
        if (images.empty()) throw parse_error("missing map declaration", end_line, 1);
        std::vector<MultiPoly> ordered;
        for (const auto& v : ring->var_names()) {
            auto it = images.find(v);
            if (it == images.end())
                throw parse_error("no image for variable '" + v + "'",
                                  last_auto_line, 1);
            ordered.push_back(it->second);
        }
        try {
            alpha = AlgebraMap::from_images(*ring, std::move(ordered));
        } catch (const domain_error& e) {
            throw parse_error(e.what(), last_auto_line, 1);
        }
    }

    SpecFile out;
    out.field = *field;
    out.ring = *ring;
    out.alpha = *alpha;
    out.polys = std::move(polys);
    out.ideals = std::move(ideals);
    out.points = std::move(points);
    return out;
}

MultiPoly parse_expr(const std::string& text, const CoeffRing& ring,
                     const std::map<std::string, MultiPoly>& named) {
    LineCur cur{text, 1};
    ExprParser p(cur, ring, named);
    MultiPoly f = p.expr();
    if (!cur.eol()) cur.fail("unexpected trailing input");
    return f;
}

Scalar parse_scalar(const std::string& text, const FieldSpec& f) {
    CoeffRing dummy = CoeffRing::polynomial(f, {"scalar_slot"});
    LineCur cur{text, 1};
    ExprParser p(cur, dummy, kNoNames);
    MultiPoly v = p.expr();
    if (!cur.eol()) cur.fail("unexpected trailing input");
    return constant_value(cur, v, "a scalar");
}

std::vector<std::vector<Scalar>> parse_points(const std::string& text,
                                              const FieldSpec& f, unsigned arity) {
    if (arity == 0) throw domain_error("parse_points: arity must be positive");
    CoeffRing dummy = CoeffRing::polynomial(f, {"scalar_slot"});
    std::vector<std::vector<Scalar>> out;
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        LineCur cur{raw, lineno};
        if (cur.eol()) continue;
        bool paren = cur.eat('(');
        std::vector<Scalar> pt;
        for (unsigned k = 0; k < arity; ++k) {
            if (k) cur.expect(',', "expected ','");
            ExprParser p(cur, dummy, kNoNames);
            pt.push_back(constant_value(cur, p.expr(), "a coordinate"));
        }
        if (paren) cur.expect(')', "expected ')'");
        if (!cur.eol()) cur.fail("unexpected trailing input");
        out.push_back(std::move(pt));
    }
    return out;
}

} // namespace skewlab
