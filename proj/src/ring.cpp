#include "fqp/ring.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "detail_cosets.hpp"
#include "fqp/ideal.hpp"
#include "fqp/module.hpp"

namespace fqp {

namespace {

// Closure of seeds (plus zero and one) under both tables, as a mask.
std::vector<bool> table_closure(std::size_t n, const std::vector<Elem>& add,
                                const std::vector<Elem>& mul, Elem zero, Elem one,
                                const std::vector<Elem>& seeds) {
    std::vector<bool> in(n, false);
    std::vector<Elem> work;
    auto push = [&](Elem x) {
        if (!in[x]) {
            in[x] = true;
            work.push_back(x);
        }
    };
    push(zero);
    push(one);
    for (Elem s : seeds) push(s);
    for (std::size_t i = 0; i < work.size(); ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            Elem x = work[i], y = work[j];
            push(add[x * n + y]);
            push(mul[x * n + y]);
        }
    }
    return in;
}

}  // namespace

FiniteRing::FiniteRing(Data d)
    : size_(d.size),
      zero_(d.zero),
      one_(d.one),
      add_(std::move(d.add)),
      mul_(std::move(d.mul)),
      name_(std::move(d.name)),
      spec_(std::move(d.spec)),
      names_(std::move(d.elem_names)) {
    if (size_ == 0) throw std::invalid_argument("ring: size must be positive");
    if (add_.size() != size_ * size_ || mul_.size() != size_ * size_)
        throw std::invalid_argument("ring: table shape mismatch");
    if (zero_ >= size_ || one_ >= size_)
        throw std::invalid_argument("ring: identity index out of range");
    for (Elem v : add_)
        if (v >= size_) throw std::invalid_argument("ring: add entry out of range");
    for (Elem v : mul_)
        if (v >= size_) throw std::invalid_argument("ring: mul entry out of range");
    if (!names_.empty() && names_.size() != size_)
        throw std::invalid_argument("ring: element name count mismatch");
    if (names_.empty()) {
        names_.resize(size_);
        for (Elem a = 0; a < size_; ++a) names_[a] = "e" + std::to_string(a);
    }

    // Best-effort caches; meaningless entries are possible when the tables
    // violate the ring axioms, which check_axioms reports separately.
    neg_.assign(size_, zero_);
    for (Elem a = 0; a < size_; ++a)
        for (Elem b = 0; b < size_; ++b)
            if (add(a, b) == zero_) {
                neg_[a] = b;
                break;
            }
    unit_.assign(size_, false);
    for (Elem a = 0; a < size_; ++a)
        for (Elem b = 0; b < size_; ++b)
            if (mul(a, b) == one_) {
                unit_[a] = true;
                break;
            }

    std::vector<bool> closed = table_closure(size_, add_, mul_, zero_, one_, gens_);
    for (Elem a = 0; a < size_; ++a) {
        if (closed[a]) continue;
        gens_.push_back(a);
        closed = table_closure(size_, add_, mul_, zero_, one_, gens_);
    }
}

Elem FiniteRing::pow(Elem a, unsigned k) const {
    Elem r = one_;
    for (unsigned i = 0; i < k; ++i) r = mul(r, a);
    return r;
}

unsigned FiniteRing::additive_order(Elem a) const {
    unsigned k = 1;
    Elem x = a;
    while (x != zero_ && k <= size_) {
        x = add(x, a);
        ++k;
    }
    return k;
}

bool FiniteRing::is_nilpotent(Elem a) const {
    Elem x = a;
    for (std::size_t i = 0; i <= size_; ++i) {
        if (x == zero_) return true;
        x = mul(x, a);
    }
    return false;
}

std::string AxiomViolation::describe(const FiniteRing& ring) const {
    std::ostringstream os;
    os << law << " at (" << ring.elem_name(a) << ", " << ring.elem_name(b) << ", "
       << ring.elem_name(c) << ")";
    return os.str();
}

std::optional<AxiomViolation> check_axioms(const FiniteRing& r) {
    const std::size_t n = r.size();
    const Elem zero = r.zero(), one = r.one();
    if (n > 1 && zero == one) return AxiomViolation{"distinct identities", zero, one, 0};
    for (Elem a = 0; a < n; ++a) {
        if (r.add(a, zero) != a || r.add(zero, a) != a)
            return AxiomViolation{"additive identity", a, zero, 0};
        if (r.mul(a, one) != a || r.mul(one, a) != a)
            return AxiomViolation{"multiplicative identity", a, one, 0};
    }
    for (Elem a = 0; a < n; ++a) {
        bool found = false;
        for (Elem b = 0; b < n && !found; ++b) found = r.add(a, b) == zero;
        if (!found) return AxiomViolation{"additive inverse", a, 0, 0};
    }
    for (Elem a = 0; a < n; ++a)
        for (Elem b = a; b < n; ++b) {
            if (r.add(a, b) != r.add(b, a)) return AxiomViolation{"additive commutativity", a, b, 0};
            if (r.mul(a, b) != r.mul(b, a))
                return AxiomViolation{"multiplicative commutativity", a, b, 0};
        }
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
            for (Elem c = 0; c < n; ++c) {
                if (r.add(r.add(a, b), c) != r.add(a, r.add(b, c)))
                    return AxiomViolation{"additive associativity", a, b, c};
                if (r.mul(r.mul(a, b), c) != r.mul(a, r.mul(b, c)))
                    return AxiomViolation{"multiplicative associativity", a, b, c};
                if (r.mul(a, r.add(b, c)) != r.add(r.mul(a, b), r.mul(a, c)))
                    return AxiomViolation{"distributivity", a, b, c};
            }
    return std::nullopt;
}

RingStructure structure(const RingPtr& r) {
    const std::size_t n = r->size();
    RingStructure s;
    for (Elem a = 0; a < n; ++a) {
        if (r->is_unit(a)) s.units.push_back(a);
        for (Elem b = 0; b < n; ++b)
            if (b != r->zero() && r->mul(a, b) == r->zero()) {
                s.zero_divisors.push_back(a);
                break;
            }
        if (r->is_nilpotent(a)) s.nilradical.push_back(a);
        if (r->mul(a, a) == a) s.idempotents.push_back(a);
    }
    return s;
}

Elem LocalDecomposition::embed(const std::vector<Elem>& factor_elems) const {
    if (factor_elems.size() != factors.size())
        throw std::invalid_argument("embed: tuple length mismatch");
    Elem acc = parent->zero();
    for (std::size_t i = 0; i < factors.size(); ++i) {
        Elem t = factor_elems[i];
        if (t >= factors[i].ring->size()) throw std::invalid_argument("embed: index out of range");
        acc = parent->add(acc, factors[i].carrier[t]);
    }
    return acc;
}

LocalDecomposition local_factors(const RingPtr& r) {
    const std::size_t n = r->size();
    const Elem zero = r->zero();
    LocalDecomposition dec;
    dec.parent = r;

    std::vector<Elem> idems;
    for (Elem e = 0; e < n; ++e)
        if (e != zero && r->mul(e, e) == e) idems.push_back(e);

    // Primitive = no nonzero idempotent strictly below it (f*e = f, f != e).
    std::vector<Elem> atoms;
    for (Elem e : idems) {
        bool primitive = true;
        for (Elem f : idems)
            if (f != e && r->mul(f, e) == f) {
                primitive = false;
                break;
            }
        if (primitive) atoms.push_back(e);
    }

    Elem atom_sum = zero;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        for (std::size_t j = i + 1; j < atoms.size(); ++j)
            if (r->mul(atoms[i], atoms[j]) != zero)
                throw std::logic_error("local_factors: primitive idempotents not orthogonal");
        atom_sum = r->add(atom_sum, atoms[i]);
    }
    if (atom_sum != r->one())
        throw std::logic_error("local_factors: primitive idempotents do not sum to 1");

    std::size_t size_product = 1;
    for (Elem e : atoms) {
        LocalFactor f;
        f.idempotent = e;
        if (e == r->one()) {
            // eR = R; reuse the ring itself with identity translations.
            f.ring = r;
            f.carrier.resize(n);
            f.projection.resize(n);
            for (Elem x = 0; x < n; ++x) f.carrier[x] = f.projection[x] = x;
        } else {
            std::vector<bool> in(n, false);
            for (Elem x = 0; x < n; ++x) in[r->mul(e, x)] = true;
            std::vector<Elem> carrier;
            std::vector<Elem> pos(n, 0);
            for (Elem x = 0; x < n; ++x)
                if (in[x]) {
                    pos[x] = static_cast<Elem>(carrier.size());
                    carrier.push_back(x);
                }
            const std::size_t m = carrier.size();
            FiniteRing::Data d;
            d.size = m;
            d.add.resize(m * m);
            d.mul.resize(m * m);
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j) {
                    d.add[i * m + j] = pos[r->add(carrier[i], carrier[j])];
                    d.mul[i * m + j] = pos[r->mul(carrier[i], carrier[j])];
                }
            d.zero = pos[zero];
            d.one = pos[e];
            d.name = r->name() + " [e=" + r->elem_name(e) + "]";
            d.elem_names.resize(m);
            for (std::size_t i = 0; i < m; ++i) d.elem_names[i] = r->elem_name(carrier[i]);
            f.ring = std::make_shared<const FiniteRing>(std::move(d));
            f.carrier = std::move(carrier);
            f.projection.resize(n);
            for (Elem x = 0; x < n; ++x) f.projection[x] = pos[r->mul(e, x)];
        }

        // A factor cut out by a primitive idempotent must be local: its
        // non-units must be closed under addition.
        const FiniteRing& fr = *f.ring;
        std::vector<Elem> nonunits;
        for (Elem a = 0; a < fr.size(); ++a)
            if (!fr.is_unit(a)) nonunits.push_back(a);
        for (Elem a : nonunits)
            for (Elem b : nonunits)
                if (fr.is_unit(fr.add(a, b)))
                    throw std::logic_error("local_factors: factor is not local");

        size_product *= fr.size();
        dec.factors.push_back(std::move(f));
    }
    if (atoms.empty()) size_product = 1;
    if (size_product != n)
        throw std::logic_error("local_factors: factor sizes do not multiply to ring size");
    return dec;
}

RingPtr make_zmod(unsigned long n, const Config& cfg) {
    cfg.validate();
    if (n == 0) throw std::invalid_argument("make_zmod: modulus must be positive");
    if (n > cfg.ring_size_cap)
        throw CapExceeded("make_zmod: size " + std::to_string(n) + " exceeds ring size cap");
    FiniteRing::Data d;
    d.size = n;
    d.add.resize(n * n);
    d.mul.resize(n * n);
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) {
            d.add[a * n + b] = static_cast<Elem>((static_cast<unsigned long>(a) + b) % n);
            d.mul[a * n + b] =
                static_cast<Elem>((static_cast<unsigned long>(a) * b) % n);
        }
    d.zero = 0;
    d.one = n == 1 ? 0 : 1;
    d.name = "Z/" + std::to_string(n);
    d.spec = "Z(" + std::to_string(n) + ")";
    d.elem_names.resize(n);
    for (Elem a = 0; a < n; ++a) d.elem_names[a] = std::to_string(a);
    return std::make_shared<const FiniteRing>(std::move(d));
}

bool Monomial::divides(const Monomial& m) const {
    if (exp.size() != m.exp.size()) return false;
    for (std::size_t i = 0; i < exp.size(); ++i)
        if (exp[i] > m.exp[i]) return false;
    return true;
}

Monomial Monomial::times(const Monomial& m) const {
    Monomial r = *this;
    for (std::size_t i = 0; i < exp.size(); ++i) r.exp[i] += m.exp[i];
    return r;
}

unsigned Monomial::degree() const {
    unsigned d = 0;
    for (unsigned e : exp) d += e;
    return d;
}

std::string render_monomial(const Monomial& m, const std::vector<std::string>& vars) {
    std::string out;
    for (std::size_t i = 0; i < m.exp.size(); ++i) {
        if (m.exp[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += vars[i];
        if (m.exp[i] > 1) out += "^" + std::to_string(m.exp[i]);
    }
    return out.empty() ? "1" : out;
}

std::vector<Monomial> standard_monomial_basis(std::size_t nvars,
                                              const std::vector<Monomial>& mono_gens) {
    for (const Monomial& g : mono_gens)
        if (g.exp.size() != nvars)
            throw std::invalid_argument("monomial has wrong variable count");

    // cap[i]: smallest e with x_i^e in the ideal; a generator that is 1
    // (all exponents zero) caps every variable at 0.
    std::vector<unsigned> cap(nvars, 0);
    std::vector<bool> have(nvars, false);
    bool has_one = false;
    for (const Monomial& g : mono_gens) {
        std::size_t support = 0, var = 0;
        for (std::size_t i = 0; i < nvars; ++i)
            if (g.exp[i] > 0) {
                ++support;
                var = i;
            }
        if (support == 0) has_one = true;
        if (support == 1 && (!have[var] || g.exp[var] < cap[var])) {
            have[var] = true;
            cap[var] = g.exp[var];
        }
    }
    if (has_one) return {};
    for (std::size_t i = 0; i < nvars; ++i)
        if (!have[i])
            throw std::invalid_argument(
                "infinite quotient: the monomial ideal contains no power of variable " +
                std::to_string(i));

    std::vector<Monomial> basis;
    Monomial cur{std::vector<unsigned>(nvars, 0)};
    std::size_t scanned = 0;
    while (true) {
        if (++scanned > (1u << 22))
            throw CapExceeded("standard_monomial_basis: enumeration cap");
        bool standard = true;
        for (const Monomial& g : mono_gens)
            if (g.divides(cur)) {
                standard = false;
                break;
            }
        if (standard) basis.push_back(cur);
        // odometer over exponents below the per-variable caps
        std::size_t i = 0;
        for (; i < nvars; ++i) {
            if (cur.exp[i] + 1 < cap[i]) {
                ++cur.exp[i];
                break;
            }
            cur.exp[i] = 0;
        }
        if (i == nvars) break;
    }

    std::sort(basis.begin(), basis.end(), [](const Monomial& a, const Monomial& b) {
        unsigned da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        return a.exp > b.exp;  // lexicographically descending exponent vectors
    });
    return basis;
}

namespace {

bool is_prime(unsigned long p) {
    if (p < 2) return false;
    for (unsigned long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

}  // namespace

RingPtr make_poly_quot(unsigned p, const std::vector<std::string>& vars,
                       const std::vector<Monomial>& mono_gens, const Config& cfg) {
    cfg.validate();
    if (!is_prime(p)) throw std::invalid_argument("make_poly_quot: p must be prime");
    const std::size_t nv = vars.size();
    std::vector<Monomial> basis = standard_monomial_basis(nv, mono_gens);
    const std::size_t d = basis.size();

    std::size_t n = 1;
    for (std::size_t i = 0; i < d; ++i) {
        if (n > cfg.ring_size_cap / p)
            throw CapExceeded("make_poly_quot: size exceeds ring size cap");
        n *= p;
    }

    // basis product table: index of basis[i]*basis[j], or npos when the
    // product falls into the ideal.
    constexpr std::size_t kDead = static_cast<std::size_t>(-1);
    std::map<std::vector<unsigned>, std::size_t> index_of;
    for (std::size_t i = 0; i < d; ++i) index_of[basis[i].exp] = i;
    std::vector<std::size_t> bp(d * d, kDead);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            Monomial m = basis[i].times(basis[j]);
            bool dead = false;
            for (const Monomial& g : mono_gens)
                if (g.divides(m)) {
                    dead = true;
                    break;
                }
            if (!dead) {
                auto it = index_of.find(m.exp);
                if (it == index_of.end())
                    throw std::logic_error("make_poly_quot: product escapes the basis");
                bp[i * d + j] = it->second;
            }
        }

    std::vector<std::size_t> pw(d + 1, 1);
    for (std::size_t i = 0; i < d; ++i) pw[i + 1] = pw[i] * p;
    // digit decode: digits[x*d + i] is the coefficient of basis[i] in x
    std::vector<unsigned char> digits(n * d);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t i = 0; i < d; ++i)
            digits[x * d + i] = static_cast<unsigned char>(x / pw[i] % p);

    FiniteRing::Data out;
    out.size = n;
    out.add.resize(n * n);
    out.mul.resize(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            std::size_t s = 0, m = 0;
            for (std::size_t i = 0; i < d; ++i) {
                s += (digits[x * d + i] + digits[y * d + i]) % p * pw[i];
                unsigned acc = 0;  // coefficient of basis[i] in x*y
                for (std::size_t a = 0; a < d; ++a) {
                    unsigned ca = digits[x * d + a];
                    if (ca == 0) continue;
                    for (std::size_t b = 0; b < d; ++b)
                        if (bp[a * d + b] == i) acc += ca * digits[y * d + b];
                }
                m += acc % p * pw[i];
            }
            out.add[x * n + y] = static_cast<Elem>(s);
            out.mul[x * n + y] = static_cast<Elem>(m);
        }
    out.zero = 0;
    out.one = d == 0 ? 0 : 1;

    std::string vars_txt, gens_txt;
    for (std::size_t i = 0; i < nv; ++i) vars_txt += (i ? "," : "") + vars[i];
    for (std::size_t i = 0; i < mono_gens.size(); ++i)
        gens_txt += (i ? "," : "") + render_monomial(mono_gens[i], vars);
    out.name = "F" + std::to_string(p) + "[" + vars_txt + "]/(" + gens_txt + ")";
    out.spec = "Poly(" + std::to_string(p) + ",[" + vars_txt + "],[" + gens_txt + "])";

    out.elem_names.resize(n);
    for (std::size_t x = 0; x < n; ++x) {
        std::string nm;
        for (std::size_t i = 0; i < d; ++i) {
            unsigned c = digits[x * d + i];
            if (c == 0) continue;
            if (!nm.empty()) nm += "+";
            std::string mono = render_monomial(basis[i], vars);
            if (c == 1)
                nm += mono;
            else if (mono == "1")
                nm += std::to_string(c);
            else
                nm += std::to_string(c) + "*" + mono;
        }
        out.elem_names[x] = nm.empty() ? "0" : nm;
    }
    return std::make_shared<const FiniteRing>(std::move(out));
}

RingPtr make_trivial_extension(const RingPtr& base, const ModulePtr& ext, const Config& cfg) {
    cfg.validate();
    if (ext->ring().get() != base.get())
        throw std::invalid_argument("make_trivial_extension: module is over a different ring");
    const std::size_t na = base->size(), ne = ext->size();
    if (na > cfg.ring_size_cap / ne)
        throw CapExceeded("make_trivial_extension: size exceeds ring size cap");
    const std::size_t n = na * ne;
    auto idx = [&](Elem a, Elem e) { return static_cast<Elem>(a * ne + e); };

    FiniteRing::Data d;
    d.size = n;
    d.add.resize(n * n);
    d.mul.resize(n * n);
    for (Elem a1 = 0; a1 < na; ++a1)
        for (Elem e1 = 0; e1 < ne; ++e1)
            for (Elem a2 = 0; a2 < na; ++a2)
                for (Elem e2 = 0; e2 < ne; ++e2) {
                    Elem x = idx(a1, e1), y = idx(a2, e2);
                    d.add[x * n + y] = idx(base->add(a1, a2), ext->add(e1, e2));
                    d.mul[x * n + y] =
                        idx(base->mul(a1, a2), ext->add(ext->act(a1, e2), ext->act(a2, e1)));
                }
    d.zero = idx(base->zero(), ext->zero());
    d.one = idx(base->one(), ext->zero());
    d.name = base->name() + " |x " + ext->name();
    d.elem_names.resize(n);
    for (Elem a = 0; a < na; ++a)
        for (Elem e = 0; e < ne; ++e)
            d.elem_names[idx(a, e)] = "(" + base->elem_name(a) + "," + ext->elem_name(e) + ")";
    return std::make_shared<const FiniteRing>(std::move(d));
}

RingPtr make_product(const RingPtr& a, const RingPtr& b, const Config& cfg) {
    cfg.validate();
    const std::size_t na = a->size(), nb = b->size();
    if (na > cfg.ring_size_cap / nb)
        throw CapExceeded("make_product: size exceeds ring size cap");
    const std::size_t n = na * nb;
    auto idx = [&](Elem x, Elem y) { return static_cast<Elem>(x * nb + y); };

    FiniteRing::Data d;
    d.size = n;
    d.add.resize(n * n);
    d.mul.resize(n * n);
    for (Elem a1 = 0; a1 < na; ++a1)
        for (Elem b1 = 0; b1 < nb; ++b1)
            for (Elem a2 = 0; a2 < na; ++a2)
                for (Elem b2 = 0; b2 < nb; ++b2) {
                    Elem x = idx(a1, b1), y = idx(a2, b2);
                    d.add[x * n + y] = idx(a->add(a1, a2), b->add(b1, b2));
                    d.mul[x * n + y] = idx(a->mul(a1, a2), b->mul(b1, b2));
                }
    d.zero = idx(a->zero(), b->zero());
    d.one = idx(a->one(), b->one());
    d.name = a->name() + " x " + b->name();
    d.elem_names.resize(n);
    for (Elem x = 0; x < na; ++x)
        for (Elem y = 0; y < nb; ++y)
            d.elem_names[idx(x, y)] = "(" + a->elem_name(x) + "," + b->elem_name(y) + ")";
    return std::make_shared<const FiniteRing>(std::move(d));
}

QuotientRing quotient_ring(const RingPtr& r, const Ideal& ideal) {
    if (ideal.ring.get() != r.get())
        throw std::invalid_argument("quotient_ring: ideal belongs to a different ring");
    if (ideal.mask.size() != r->size() || !ideal.contains(r->zero()))
        throw std::invalid_argument("quotient_ring: malformed ideal");
    const std::size_t n = r->size();
    auto part = detail::coset_partition(n, ideal.elements,
                                        [&](Elem x, Elem y) { return r->add(x, y); });
    const std::size_t q = part.section.size();

    FiniteRing::Data d;
    d.size = q;
    d.add.resize(q * q);
    d.mul.resize(q * q);
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < q; ++j) {
            d.add[i * q + j] = part.projection[r->add(part.section[i], part.section[j])];
            d.mul[i * q + j] = part.projection[r->mul(part.section[i], part.section[j])];
        }
    d.zero = part.projection[r->zero()];
    d.one = part.projection[r->one()];
    std::string itxt;
    if (!ideal.gens.empty()) {
        for (std::size_t i = 0; i < ideal.gens.size(); ++i)
            itxt += (i ? "," : "") + r->elem_name(ideal.gens[i]);
    } else {
        itxt = "|" + std::to_string(ideal.size()) + "|";
    }
    d.name = r->name() + "/(" + itxt + ")";
    d.elem_names.resize(q);
    for (std::size_t i = 0; i < q; ++i)
        d.elem_names[i] = "[" + r->elem_name(part.section[i]) + "]";

    QuotientRing out;
    out.ring = std::make_shared<const FiniteRing>(std::move(d));
    out.projection = std::move(part.projection);
    out.section = std::move(part.section);
    return out;
}

RingPtr rebadge(const RingPtr& r, const std::string& name, const std::string& spec) {
    const std::size_t n = r->size();
    FiniteRing::Data d;
    d.size = n;
    d.add.resize(n * n);
    d.mul.resize(n * n);
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b) {
            d.add[a * n + b] = r->add(a, b);
            d.mul[a * n + b] = r->mul(a, b);
        }
    d.zero = r->zero();
    d.one = r->one();
    d.name = name.empty() ? r->name() : name;
    d.spec = spec;
    d.elem_names.resize(n);
    for (Elem a = 0; a < n; ++a) d.elem_names[a] = r->elem_name(a);
    return std::make_shared<const FiniteRing>(std::move(d));
}

RingFingerprint ring_fingerprint(const RingPtr& r) {
    RingFingerprint f;
    f.size = r->size();
    f.additive_orders.reserve(r->size());
    for (Elem a = 0; a < r->size(); ++a) {
        f.additive_orders.push_back(r->additive_order(a));
        if (r->is_unit(a)) ++f.units;
        if (r->mul(a, a) == a) ++f.idempotents;
        if (r->is_nilpotent(a)) ++f.nilpotents;
    }
    std::sort(f.additive_orders.begin(), f.additive_orders.end());
    return f;
}

bool RingFingerprint::operator<(const RingFingerprint& o) const {
    return std::tie(size, units, idempotents, nilpotents, additive_orders) <
           std::tie(o.size, o.units, o.idempotents, o.nilpotents, o.additive_orders);
}

namespace {

// Partial isomorphism state for the generator-image search.
struct IsoState {
    std::vector<Elem> map;        // a-index -> b-index or kUnset
    std::vector<bool> used;      // b-index already an image
    std::vector<Elem> domain;    // assigned a-elements in discovery order
    std::size_t frontier = 0;    // domain prefix already pair-closed
};

constexpr Elem kUnset = static_cast<Elem>(-1);

// Extends the state by closing the assignment under both operations.
// Returns false on the first conflict.
bool close_state(const FiniteRing& a, const FiniteRing& b, IsoState& st) {
    auto assign = [&](Elem x, Elem y) {
        if (st.map[x] != kUnset) return st.map[x] == y;
        if (st.used[y]) return false;
        st.map[x] = y;
        st.used[y] = true;
        st.domain.push_back(x);
        return true;
    };
    while (st.frontier < st.domain.size()) {
        Elem x = st.domain[st.frontier];
        Elem y = st.map[x];
        ++st.frontier;
        for (std::size_t j = 0; j < st.frontier; ++j) {
            Elem x2 = st.domain[j], y2 = st.map[x2];
            if (!assign(a.add(x, x2), b.add(y, y2))) return false;
            if (!assign(a.mul(x, x2), b.mul(y, y2))) return false;
        }
    }
    return true;
}

bool iso_search(const FiniteRing& a, const FiniteRing& b, const std::vector<Elem>& gens,
                std::size_t gi, const IsoState& st, std::size_t& budget) {
    if (gi == gens.size()) return st.domain.size() == a.size();
    Elem g = gens[gi];
    // Earlier closure may already pin this generator's image consistently.
    if (st.map[g] != kUnset) return iso_search(a, b, gens, gi + 1, st, budget);
    for (Elem h = 0; h < b.size(); ++h) {
        if (st.used[h]) continue;
        if (a.additive_order(g) != b.additive_order(h)) continue;
        if (a.is_unit(g) != b.is_unit(h)) continue;
        if ((a.mul(g, g) == g) != (b.mul(h, h) == h)) continue;
        if (a.is_nilpotent(g) != b.is_nilpotent(h)) continue;
        if (budget == 0) throw CapExceeded("rings_isomorphic: candidate cap");
        --budget;
        IsoState next = st;
        next.map[g] = h;
        next.used[h] = true;
        next.domain.push_back(g);
        if (close_state(a, b, next) && iso_search(a, b, gens, gi + 1, next, budget)) return true;
    }
    return false;
}

}  // namespace

bool rings_isomorphic(const RingPtr& pa, const RingPtr& pb, const Config& cfg) {
    cfg.validate();
    const FiniteRing& a = *pa;
    const FiniteRing& b = *pb;
    if (pa.get() == pb.get()) return true;
    if (a.size() != b.size()) return false;
    if (!(ring_fingerprint(pa) == ring_fingerprint(pb))) return false;

    bool same_tables = a.zero() == b.zero() && a.one() == b.one();
    for (Elem x = 0; x < a.size() && same_tables; ++x)
        for (Elem y = 0; y < a.size(); ++y)
            if (a.add(x, y) != b.add(x, y) || a.mul(x, y) != b.mul(x, y)) {
                same_tables = false;
                break;
            }
    if (same_tables) return true;

    IsoState st;
    st.map.assign(a.size(), kUnset);
    st.used.assign(b.size(), false);
    st.map[a.zero()] = b.zero();
    st.used[b.zero()] = true;
    st.domain.push_back(a.zero());
    if (a.one() != a.zero()) {
        if (b.one() == b.zero()) return false;
        st.map[a.one()] = b.one();
        st.used[b.one()] = true;
        st.domain.push_back(a.one());
    }
    if (!close_state(a, b, st)) return false;
    std::size_t budget = cfg.candidate_cap;
    return iso_search(a, b, a.generators(), 0, st, budget);
}

}  // namespace fqp
