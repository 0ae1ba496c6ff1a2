#pragma once

#include <memory>
#include <string>
#include <vector>

#include "fqp/common.hpp"
#include "fqp/ring.hpp"

namespace fqp {

/// Thrown on malformed spec or query text; position is a 0-based offset
/// into the input and is repeated inside what().
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t pos);
    std::size_t position;
};

/// An element literal inside TrivExt brackets: an integer for Z bases, a
/// monomial for Poly bases.
struct SpecElement {
    bool is_int = true;
    long long int_value = 0;
    Monomial mono;  // exponents over the base's variables
};

/// Expression tree over the ring constructors:
///   Z(n) | Poly(p,[vars],[monomials]) | TrivExt(base,[gens],j) | Prod(a,b)
/// TrivExt(base,[g...],j) builds base |x (base/(g...))^j.
struct RingSpecAst {
    enum class Kind { Zmod, Poly, TrivExt, Prod };
    Kind kind = Kind::Zmod;

    unsigned long n = 0;                     // Zmod modulus
    unsigned long p = 0;                     // Poly characteristic
    std::vector<std::string> vars;           // Poly variables
    std::vector<Monomial> monomials;         // Poly ideal generators
    std::shared_ptr<RingSpecAst> base;       // TrivExt
    std::vector<SpecElement> ext_gens;       // TrivExt ideal generators
    unsigned long copies = 0;                // TrivExt exponent j
    std::shared_ptr<RingSpecAst> left, right;  // Prod

    bool equals(const RingSpecAst& o) const;
};

/// Whitespace-insensitive parser for the grammar above. Rejects non-prime
/// Poly characteristics, unknown variables in monomials, and element
/// literals whose base is not Z or Poly.
RingSpecAst parse_spec(const std::string& text);

/// Canonical text form; parse_spec(print_spec(ast)) reproduces ast.
std::string print_spec(const RingSpecAst& ast);

/// Builds the ring. Construction errors surface as std::invalid_argument,
/// size-cap violations as CapExceeded.
RingPtr eval_spec(const RingSpecAst& ast, const Config& cfg = {});

/// parse + eval in one step.
RingPtr build_ring(const std::string& text, const Config& cfg = {});

}  // namespace fqp
