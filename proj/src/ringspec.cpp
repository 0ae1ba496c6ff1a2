#include "fqp/ringspec.hpp"

#include <algorithm>
#include <cctype>

#include "fqp/ideal.hpp"
#include "fqp/module.hpp"

namespace fqp {

ParseError::ParseError(const std::string& msg, std::size_t pos)
    : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}

namespace {

bool is_prime(unsigned long p) {
    if (p < 2) return false;
    for (unsigned long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

struct Parser {
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) throw ParseError(std::string("expected '") + c + "'", pos);
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        if (pos >= s.size() || !std::isalpha(static_cast<unsigned char>(s[pos])))
            throw ParseError("expected an identifier", pos);
        while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) ||
                                  s[pos] == '_'))
            ++pos;
        return s.substr(start, pos - start);
    }

    unsigned long number() {
        skip_ws();
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            throw ParseError("expected a number", pos);
        unsigned long v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = v * 10 + static_cast<unsigned long>(s[pos] - '0');
            if (v > 1000000000000ul) throw ParseError("number too large", pos);
            ++pos;
        }
        return v;
    }

    Monomial monomial(const std::vector<std::string>& vars) {
        Monomial m{std::vector<unsigned>(vars.size(), 0)};
        skip_ws();
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            std::size_t at = pos;
            if (number() != 1)
                throw ParseError("only the monomial 1 may start with a digit", at);
            return m;
        }
        while (true) {
            std::size_t at = pos;
            std::string v = ident();
            auto it = std::find(vars.begin(), vars.end(), v);
            if (it == vars.end()) throw ParseError("unknown variable '" + v + "'", at);
            unsigned e = 1;
            if (eat('^')) e = static_cast<unsigned>(number());
            m.exp[static_cast<std::size_t>(it - vars.begin())] += e;
            if (!eat('*')) break;
        }
        return m;
    }

    RingSpecAst spec() {
        std::size_t at = pos;
        std::string head = ident();
        RingSpecAst ast;
        if (head == "Z") {
            ast.kind = RingSpecAst::Kind::Zmod;
            expect('(');
            ast.n = number();
            expect(')');
        } else if (head == "Poly") {
            ast.kind = RingSpecAst::Kind::Poly;
            expect('(');
            std::size_t pat = pos;
            ast.p = number();
            if (!is_prime(ast.p))
                throw ParseError("Poly characteristic must be prime", pat);
            expect(',');
            expect('[');
            if (!eat(']')) {
                do {
                    std::size_t vat = pos;
                    std::string v = ident();
                    if (std::find(ast.vars.begin(), ast.vars.end(), v) != ast.vars.end())
                        throw ParseError("duplicate variable '" + v + "'", vat);
                    ast.vars.push_back(v);
                } while (eat(','));
                expect(']');
            }
            expect(',');
            expect('[');
            if (!eat(']')) {
                do ast.monomials.push_back(monomial(ast.vars));
                while (eat(','));
                expect(']');
            }
            expect(')');
        } else if (head == "TrivExt") {
            ast.kind = RingSpecAst::Kind::TrivExt;
            expect('(');
            ast.base = std::make_shared<RingSpecAst>(spec());
            expect(',');
            expect('[');
            if (!eat(']')) {
                bool z_base = ast.base->kind == RingSpecAst::Kind::Zmod;
                bool poly_base = ast.base->kind == RingSpecAst::Kind::Poly;
                if (!z_base && !poly_base)
                    throw ParseError("element literals require a Z or Poly base", pos);
                do {
                    SpecElement e;
                    if (z_base) {
                        skip_ws();
                        bool negative = eat('-');
                        e.is_int = true;
                        e.int_value = static_cast<long long>(number());
                        if (negative) e.int_value = -e.int_value;
                    } else {
                        e.is_int = false;
                        e.mono = monomial(ast.base->vars);
                    }
                    ast.ext_gens.push_back(std::move(e));
                } while (eat(','));
                expect(']');
            }
            expect(',');
            ast.copies = number();
            expect(')');
        } else if (head == "Prod") {
            ast.kind = RingSpecAst::Kind::Prod;
            expect('(');
            ast.left = std::make_shared<RingSpecAst>(spec());
            expect(',');
            ast.right = std::make_shared<RingSpecAst>(spec());
            expect(')');
        } else {
            throw ParseError("expected Z, Poly, TrivExt, or Prod", at);
        }
        return ast;
    }
};

}  // namespace

RingSpecAst parse_spec(const std::string& text) {
    Parser p{text};
    RingSpecAst ast = p.spec();
    p.skip_ws();
    if (p.pos != text.size()) throw ParseError("unexpected trailing input", p.pos);
    return ast;
}

bool RingSpecAst::equals(const RingSpecAst& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
        case Kind::Zmod:
            return n == o.n;
        case Kind::Poly:
            return p == o.p && vars == o.vars && monomials == o.monomials;
        case Kind::TrivExt: {
            if (copies != o.copies || ext_gens.size() != o.ext_gens.size()) return false;
            for (std::size_t i = 0; i < ext_gens.size(); ++i) {
                const SpecElement& a = ext_gens[i];
                const SpecElement& b = o.ext_gens[i];
                if (a.is_int != b.is_int) return false;
                if (a.is_int ? a.int_value != b.int_value : !(a.mono == b.mono)) return false;
            }
            return base->equals(*o.base);
        }
        case Kind::Prod:
            return left->equals(*o.left) && right->equals(*o.right);
    }
    return false;
}

std::string print_spec(const RingSpecAst& ast) {
    switch (ast.kind) {
        case RingSpecAst::Kind::Zmod:
            return "Z(" + std::to_string(ast.n) + ")";
        case RingSpecAst::Kind::Poly: {
            std::string vs, ms;
            for (std::size_t i = 0; i < ast.vars.size(); ++i) vs += (i ? "," : "") + ast.vars[i];
            for (std::size_t i = 0; i < ast.monomials.size(); ++i)
                ms += (i ? "," : "") + render_monomial(ast.monomials[i], ast.vars);
            return "Poly(" + std::to_string(ast.p) + ",[" + vs + "],[" + ms + "])";
        }
        case RingSpecAst::Kind::TrivExt: {
            std::string es;
            for (std::size_t i = 0; i < ast.ext_gens.size(); ++i) {
                const SpecElement& e = ast.ext_gens[i];
                es += (i ? "," : "");
                es += e.is_int ? std::to_string(e.int_value)
                               : render_monomial(e.mono, ast.base->vars);
            }
            return "TrivExt(" + print_spec(*ast.base) + ",[" + es + "]," +
                   std::to_string(ast.copies) + ")";
        }
        case RingSpecAst::Kind::Prod:
            return "Prod(" + print_spec(*ast.left) + "," + print_spec(*ast.right) + ")";
    }
    throw std::invalid_argument("print_spec: unknown node kind");
}

namespace {

// Element index of a literal in the base ring of a trivial extension.
Elem resolve_element(const RingSpecAst& base, const RingPtr& ring, const SpecElement& e) {
    if (base.kind == RingSpecAst::Kind::Zmod) {
        if (!e.is_int) throw std::invalid_argument("integer literal expected for a Z base");
        long long n = static_cast<long long>(base.n);
        long long v = ((e.int_value % n) + n) % n;
        return static_cast<Elem>(v);
    }
    if (base.kind != RingSpecAst::Kind::Poly)
        throw std::invalid_argument("element literals require a Z or Poly base");
    if (e.is_int) throw std::invalid_argument("monomial literal expected for a Poly base");
    for (const Monomial& g : base.monomials)
        if (g.divides(e.mono)) return ring->zero();
    std::vector<Monomial> basis = standard_monomial_basis(base.vars.size(), base.monomials);
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis[i] == e.mono) {
            Elem idx = 1;
            for (std::size_t k = 0; k < i; ++k) idx = static_cast<Elem>(idx * base.p);
            return idx;
        }
    throw std::invalid_argument("monomial literal does not reduce to a basis element");
}

}  // namespace

RingPtr eval_spec(const RingSpecAst& ast, const Config& cfg) {
    switch (ast.kind) {
        case RingSpecAst::Kind::Zmod:
            return make_zmod(ast.n, cfg);
        case RingSpecAst::Kind::Poly:
            return make_poly_quot(static_cast<unsigned>(ast.p), ast.vars, ast.monomials, cfg);
        case RingSpecAst::Kind::TrivExt: {
            RingPtr base = eval_spec(*ast.base, cfg);
            std::vector<Elem> gens;
            for (const SpecElement& e : ast.ext_gens)
                gens.push_back(resolve_element(*ast.base, base, e));
            Ideal j = ideal_generated(base, gens);
            ModulePtr ext = module_power(cyclic_module(base, j), ast.copies);
            RingPtr ring = make_trivial_extension(base, ext, cfg);
            return rebadge(ring, "", print_spec(ast));
        }
        case RingSpecAst::Kind::Prod: {
            RingPtr ring = make_product(eval_spec(*ast.left, cfg), eval_spec(*ast.right, cfg), cfg);
            return rebadge(ring, "", print_spec(ast));
        }
    }
    throw std::invalid_argument("eval_spec: unknown node kind");
}

RingPtr build_ring(const std::string& text, const Config& cfg) {
    return eval_spec(parse_spec(text), cfg);
}

}  // namespace fqp
