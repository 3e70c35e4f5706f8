"""Sparse multivariate polynomials over an exact parameter field.

Coefficients are fractions of integer-coefficient polynomials in named
parameters, optionally extended by formal square roots (a radical symbol r
rewrites r^2 to its radicand, eagerly).  Fractions are reduced by integer and
monomial content only; equality is decided by cross multiplication, so the
representation need not be fully reduced.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

# a parameter monomial: tuple of (name, exponent) pairs, sorted by name
# a parameter polynomial (ppoly): dict monomial -> int coefficient


def _mono_key(m):
    return (sum(e for _, e in m), m)


def pp_const(c=1):
    c = int(c)
    return {(): c} if c else {}


def pp_var(name, exp=1):
    return {((name, exp),): 1}


def pp_is_zero(p):
    return not p


def pp_add(a, b):
    out = dict(a)
    for m, c in b.items():
        s = out.get(m, 0) + c
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def pp_neg(a):
    return {m: -c for m, c in a.items()}


def _mono_mul(m1, m2, radicals):
    """Merge monomials; returns (monomial, carry ppoly) after radical rewriting."""
    exps = {}
    for n, e in m1:
        exps[n] = exps.get(n, 0) + e
    for n, e in m2:
        exps[n] = exps.get(n, 0) + e
    carry = pp_const(1)
    if radicals:
        for n in list(exps):
            if n in radicals and exps[n] >= 2:
                k, rem = divmod(exps[n], 2)
                if rem:
                    exps[n] = 1
                else:
                    del exps[n]
                for _ in range(k):
                    carry = pp_mul(carry, radicals[n], radicals)
    mono = tuple(sorted((n, e) for n, e in exps.items() if e))
    return mono, carry


def pp_mul(a, b, radicals=None):
    out = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            mono, carry = _mono_mul(m1, m2, radicals)
            c = c1 * c2
            if carry == {(): 1}:
                s = out.get(mono, 0) + c
                if s:
                    out[mono] = s
                else:
                    out.pop(mono, None)
            else:
                for m3, c3 in carry.items():
                    mono2, carry2 = _mono_mul(mono, m3, radicals)
                    # radicands are radical-free, so no second carry appears
                    assert carry2 == {(): 1}
                    s = out.get(mono2, 0) + c * c3
                    if s:
                        out[mono2] = s
                    else:
                        out.pop(mono2, None)
    return out


def pp_pow(a, k, radicals=None):
    out = pp_const(1)
    for _ in range(k):
        out = pp_mul(out, a, radicals)
    return out


def pp_content(a):
    g = 0
    for c in a.values():
        g = gcd(g, c)
    return g


def pp_mono_content(a):
    """Per-name minimal exponent over all monomials (the common monomial factor)."""
    if not a:
        return {}
    common = None
    for m in a:
        d = dict(m)
        if common is None:
            common = d
            continue
        for n in list(common):
            e = min(common[n], d.get(n, 0))
            if e:
                common[n] = e
            else:
                del common[n]
        if not common:
            return {}
    return common or {}


def pp_divide_mono(a, mono_exps):
    out = {}
    for m, c in a.items():
        d = dict(m)
        for n, e in mono_exps.items():
            d[n] = d.get(n, 0) - e
            if d[n] == 0:
                del d[n]
        out[tuple(sorted(d.items()))] = c
    return out


def pp_leading(a):
    if not a:
        return (), 0
    m = max(a, key=_mono_key)
    return m, a[m]


def pp_eval(a, env):
    out = Fraction(0)
    for m, c in a.items():
        v = Fraction(c)
        for n, e in m:
            v *= Fraction(env[n]) ** e
        out += v
    return out


def pp_render(a):
    if not a:
        return "0"
    parts = []
    for m in sorted(a, key=_mono_key, reverse=True):
        c = a[m]
        factors = [f"{n}^{e}" if e > 1 else n for n, e in m]
        if not factors:
            body = str(abs(c))
        elif abs(c) == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(abs(c))] + factors)
        parts.append(("- " if c < 0 else "+ ") + body)
    s = " ".join(parts)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


class ParamField:
    """Declares the formal square roots available to scalars of this field."""

    def __init__(self, radicals=None):
        # radicals: name -> radicand (int, or ppoly over radical-free params)
        rads = {}
        for name, radicand in (radicals or {}).items():
            if isinstance(radicand, int):
                radicand = pp_const(radicand)
            elif isinstance(radicand, str):
                radicand = pp_var(radicand)
            if any(n in (radicals or {}) for m in radicand for n, _ in m):
                raise ValueError("nested radicals are not supported")
            rads[name] = radicand
        self.radicals = rads

    def __repr__(self):
        return f"ParamField(radicals={sorted(self.radicals)})"


_RATIONAL_FIELD = ParamField()


def _coerce_field(a, b):
    fa = a.field if isinstance(a, ParamScalar) else None
    fb = b.field if isinstance(b, ParamScalar) else None
    if fa is None or fa is _RATIONAL_FIELD:
        return fb or fa or _RATIONAL_FIELD
    if fb is None or fb is _RATIONAL_FIELD or fa is fb:
        return fa
    raise ValueError("cannot mix scalars from different parameter fields")


class ParamScalar:
    """Fraction of integer parameter polynomials, with formal square roots."""

    __slots__ = ("num", "den", "field")

    def __init__(self, num, den=None, field=None):
        if isinstance(num, ParamScalar):
            field = field or num.field
            den2 = num.den
            num = num.num
        else:
            num = self._to_pp(num)
            den2 = pp_const(1)
        if den is None:
            den = den2
        elif isinstance(den, ParamScalar):
            raise TypeError("denominator must be a polynomial")
        else:
            den = self._to_pp(den)
        if pp_is_zero(den):
            raise ZeroDivisionError("zero denominator")
        self.field = field or _RATIONAL_FIELD
        self.num, self.den = self._normalize(num, den)

    @staticmethod
    def _to_pp(x):
        if isinstance(x, dict):
            return dict(x)
        if isinstance(x, int):
            return pp_const(x)
        if isinstance(x, str):
            return pp_var(x)
        if isinstance(x, Fraction):
            raise TypeError("use ParamScalar(p, q) for rationals")
        raise TypeError(f"cannot build scalar from {x!r}")

    def _normalize(self, num, den):
        if pp_is_zero(num):
            return {}, pp_const(1)
        # clear radicals out of single-monomial denominators
        rads = self.field.radicals
        if rads and len(den) == 1:
            (mono, c), = den.items()
            odd = [n for n, e in mono if n in rads and e % 2 == 1]
            for n in odd:
                r = pp_var(n)
                num = pp_mul(num, r, rads)
                den = pp_mul(den, r, rads)
        g = gcd(pp_content(num), pp_content(den))
        if g > 1:
            num = {m: c // g for m, c in num.items()}
            den = {m: c // g for m, c in den.items()}
        mc_num = pp_mono_content(num)
        mc_den = pp_mono_content(den)
        common = {}
        for n in mc_num:
            if n in mc_den:
                common[n] = min(mc_num[n], mc_den[n])
        if common:
            num = pp_divide_mono(num, common)
            den = pp_divide_mono(den, common)
        _, lead = pp_leading(den)
        if lead < 0:
            num = pp_neg(num)
            den = pp_neg(den)
        return num, den

    # -- constructors ------------------------------------------------------

    @classmethod
    def rational(cls, p, q=1, field=None):
        fr = Fraction(p, q)
        return cls(pp_const(fr.numerator), pp_const(fr.denominator), field=field)

    @classmethod
    def var(cls, name, field=None):
        return cls(pp_var(name), field=field)

    # -- ring/field operations ----------------------------------------------

    def _lift(self, other):
        if isinstance(other, ParamScalar):
            return other
        if isinstance(other, int):
            return ParamScalar(pp_const(other), field=self.field)
        if isinstance(other, Fraction):
            return ParamScalar.rational(other, field=self.field)
        if isinstance(other, str):
            return ParamScalar.var(other, field=self.field)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        field = _coerce_field(self, other)
        rads = field.radicals
        num = pp_add(pp_mul(self.num, other.den, rads), pp_mul(other.num, self.den, rads))
        return ParamScalar(num, pp_mul(self.den, other.den, rads), field=field)

    __radd__ = __add__

    def __neg__(self):
        return ParamScalar(pp_neg(self.num), self.den, field=self.field)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        field = _coerce_field(self, other)
        rads = field.radicals
        return ParamScalar(
            pp_mul(self.num, other.num, rads),
            pp_mul(self.den, other.den, rads),
            field=field,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero scalar")
        field = _coerce_field(self, other)
        rads = field.radicals
        return ParamScalar(
            pp_mul(self.num, other.den, rads),
            pp_mul(self.den, other.num, rads),
            field=field,
        )

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, k):
        if k < 0:
            return ParamScalar(1, field=self.field) / (self ** (-k))
        out = ParamScalar(1, field=self.field)
        for _ in range(k):
            out = out * self
        return out

    def inverse(self):
        return ParamScalar(1, field=self.field) / self

    def is_zero(self):
        return pp_is_zero(self.num)

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        field = _coerce_field(self, other)
        rads = field.radicals
        lhs = pp_mul(self.num, other.den, rads)
        rhs = pp_mul(other.num, self.den, rads)
        return lhs == rhs

    def __hash__(self):
        return hash(
            (tuple(sorted(self.num.items())), tuple(sorted(self.den.items())))
        )

    def evaluate(self, env):
        return pp_eval(self.num, env) / pp_eval(self.den, env)

    def as_fraction(self):
        """The value as a Fraction when the scalar is constant, else None."""
        if all(m == () for m in self.num) and all(m == () for m in self.den):
            return Fraction(self.num.get((), 0), self.den.get((), 1))
        return None

    def render(self):
        if self.is_zero():
            return "0"
        n = pp_render(self.num)
        if self.den == pp_const(1):
            return n
        d = pp_render(self.den)
        if len(self.num) > 1:
            n = f"({n})"
        if len(self.den) > 1:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"ParamScalar({self.render()})"


class SparsePoly:
    """Polynomial in named variables with ParamScalar coefficients."""

    __slots__ = ("ring", "terms", "field")

    def __init__(self, ring, terms=None, field=None):
        self.ring = tuple(ring)
        self.field = field or _RATIONAL_FIELD
        clean = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(self.ring):
                raise ValueError("exponent tuple does not match ring")
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent")
            if not isinstance(coeff, ParamScalar):
                coeff = ParamScalar(coeff, field=self.field)
            if coeff.is_zero():
                continue
            clean[exps] = coeff
        self.terms = clean

    # -- helpers -------------------------------------------------------------

    def _scalar(self, x):
        if isinstance(x, ParamScalar):
            return x
        if isinstance(x, Fraction):
            return ParamScalar.rational(x, field=self.field)
        return ParamScalar(x, field=self.field)

    @classmethod
    def zero(cls, ring, field=None):
        return cls(ring, {}, field=field)

    @classmethod
    def variable(cls, ring, name, field=None):
        exps = tuple(1 if v == name else 0 for v in ring)
        if sum(exps) != 1:
            raise KeyError(name)
        return cls(ring, {exps: 1}, field=field)

    @classmethod
    def constant(cls, ring, c, field=None):
        return cls(ring, {tuple(0 for _ in ring): c}, field=field)

    def monomial(self, **exps):
        e = [0] * len(self.ring)
        for name, k in exps.items():
            e[self.ring.index(name)] = k
        return tuple(e)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, SparsePoly) or self.ring != other.ring:
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        zero = ParamScalar(0, field=self.field)
        return all(
            self.terms.get(k, zero) == other.terms.get(k, zero) for k in keys
        )

    def __hash__(self):
        raise TypeError("SparsePoly is unhashable")

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, SparsePoly):
            other = SparsePoly.constant(self.ring, self._scalar(other), self.field)
        if self.ring != other.ring:
            raise ValueError("mixed rings")
        terms = dict(self.terms)
        zero = ParamScalar(0, field=self.field)
        for e, c in other.terms.items():
            s = terms.get(e, zero) + c
            if s.is_zero():
                terms.pop(e, None)
            else:
                terms[e] = s
        return SparsePoly(self.ring, terms, field=self.field)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly(
            self.ring, {e: -c for e, c in self.terms.items()}, field=self.field
        )

    def __sub__(self, other):
        if not isinstance(other, SparsePoly):
            other = SparsePoly.constant(self.ring, self._scalar(other), self.field)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, SparsePoly):
            c = self._scalar(other)
            return SparsePoly(
                self.ring, {e: k * c for e, k in self.terms.items()}, field=self.field
            )
        if self.ring != other.ring:
            raise ValueError("mixed rings")
        terms = {}
        zero = ParamScalar(0, field=self.field)
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, zero) + c1 * c2
                if s.is_zero():
                    terms.pop(e, None)
                else:
                    terms[e] = s
        return SparsePoly(self.ring, terms, field=self.field)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = SparsePoly.constant(self.ring, 1, self.field)
        for _ in range(k):
            out = out * self
        return out

    # -- structure -------------------------------------------------------------

    def degree(self, var):
        i = self.ring.index(var)
        return max((e[i] for e in self.terms), default=-1)

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), ParamScalar(0, field=self.field))

    def monomial_coefficient(self, **exps):
        return self.coefficient(self.monomial(**exps))

    def _display_perm(self):
        """Variable indices in natural name order (y2 before y10)."""
        def key(i):
            name = self.ring[i]
            j = len(name)
            while j > 0 and name[j - 1].isdigit():
                j -= 1
            return (name[:j], int(name[j:]) if j < len(name) else -1)

        return sorted(range(len(self.ring)), key=key)

    def monomials(self):
        """Exponent tuples in descending graded-lex order (display variable order)."""
        perm = self._display_perm()
        return sorted(
            self.terms, key=lambda e: (sum(e), tuple(e[i] for i in perm)), reverse=True
        )

    def support_names(self):
        """Monomials as readable strings (no coefficients)."""
        return [self._mono_str(e) or "1" for e in self.monomials()]

    def _mono_str(self, exps):
        factors = []
        for i in self._display_perm():
            name, e = self.ring[i], exps[i]
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        return "*".join(factors)

    def substitute(self, bindings):
        """Exact expansion after replacing variables by polynomials of the ring."""
        polys = {}
        for name, val in bindings.items():
            if name not in self.ring:
                raise KeyError(f"unknown variable {name!r}")
            if not isinstance(val, SparsePoly):
                val = SparsePoly.constant(self.ring, self._scalar(val), self.field)
            polys[name] = val
        out = SparsePoly.zero(self.ring, self.field)
        powers = {name: {0: SparsePoly.constant(self.ring, 1, self.field)} for name in polys}
        for exps, coeff in self.terms.items():
            term = SparsePoly.constant(self.ring, coeff, self.field)
            rest = [0] * len(self.ring)
            for i, e in enumerate(exps):
                name = self.ring[i]
                if name in polys:
                    cache = powers[name]
                    if e not in cache:
                        below = max(k for k in cache if k <= e)
                        p = cache[below]
                        for _ in range(e - below):
                            p = p * polys[name]
                        cache[e] = p
                    term = term * cache[e]
                else:
                    rest[i] = e
            term = term * SparsePoly(self.ring, {tuple(rest): 1}, field=self.field)
            out = out + term
        return out

    def scale_vars(self, scalings):
        """Substitute y -> c*y for the given variables (c a scalar)."""
        factors = {}
        for name, c in scalings.items():
            if name not in self.ring:
                raise KeyError(name)
            if not isinstance(c, ParamScalar):
                c = ParamScalar(c, field=self.field)
            factors[self.ring.index(name)] = c
        terms = {}
        for exps, coeff in self.terms.items():
            c = coeff
            for i, s in factors.items():
                if exps[i]:
                    c = c * s ** exps[i]
            terms[exps] = c
        return SparsePoly(self.ring, terms, field=self.field)

    def project(self, ring):
        """Restrict to a smaller ring; dropped variables must not occur."""
        idx = {name: i for i, name in enumerate(ring)}
        terms = {}
        for exps, coeff in self.terms.items():
            e = [0] * len(ring)
            for name, k in zip(self.ring, exps):
                if k == 0:
                    continue
                if name not in idx:
                    raise ValueError(f"variable {name!r} still occurs")
                e[idx[name]] = k
            terms[tuple(e)] = coeff
        return SparsePoly(ring, terms, field=self.field)

    def rename(self, ring, mapping=None):
        """Reinterpret in another ring; variables map by name unless remapped."""
        mapping = mapping or {}
        idx = []
        for name in self.ring:
            target = mapping.get(name, name)
            idx.append(ring.index(target))
        terms = {}
        for exps, coeff in self.terms.items():
            e = [0] * len(ring)
            for i, k in enumerate(exps):
                e[idx[i]] += k
            terms[tuple(e)] = coeff
        return SparsePoly(ring, terms, field=self.field)

    def render(self):
        if not self.terms:
            return "0"
        parts = []
        for exps in self.monomials():
            coeff = self.terms[exps]
            mono = self._mono_str(exps)
            c = coeff.render()
            if _needs_parens(c):
                sign, cbody = "+", f"({c})"
            elif c.startswith("-"):
                sign, cbody = "-", c[1:]
            else:
                sign, cbody = "+", c
            if not mono:
                body = cbody
            elif cbody == "1":
                body = mono
            else:
                body = f"{cbody}*{mono}"
            parts.append(f"{sign} {body}")
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def evaluate(self, var_env, param_env=None):
        total = Fraction(0)
        for exps, coeff in self.terms.items():
            v = coeff.evaluate(param_env or {})
            for name, e in zip(self.ring, exps):
                v *= Fraction(var_env[name]) ** e
            total += v
        return total

    def __repr__(self):
        return f"SparsePoly({self.render()})"


def _needs_parens(s):
    return (" + " in s) or (" - " in s)


def pullback(poly, monomial_map, domain_ring, field=None):
    """Substitute each variable of ``poly`` by a scaled monomial of another ring.

    ``monomial_map`` sends a variable name of poly's ring to a pair
    (scalar, {domain variable -> exponent}).
    """
    field = field or poly.field
    out_terms = {}
    zero = ParamScalar(0, field=field)
    for exps, coeff in poly.terms.items():
        scalar = coeff
        e_out = [0] * len(domain_ring)
        for name, e in zip(poly.ring, exps):
            if e == 0:
                continue
            if name not in monomial_map:
                raise KeyError(f"unmapped variable {name!r}")
            factor, mono = monomial_map[name]
            if not isinstance(factor, ParamScalar):
                factor = ParamScalar(factor, field=field)
            scalar = scalar * factor**e
            for dname, de in mono.items():
                e_out[domain_ring.index(dname)] += de * e
        key = tuple(e_out)
        s = out_terms.get(key, zero) + scalar
        if s.is_zero():
            out_terms.pop(key, None)
        else:
            out_terms[key] = s
    return SparsePoly(domain_ring, out_terms, field=field)


def pseudo_divide(f, g, var):
    """Pseudo-division in one variable: lc(g)^power * f = q*g + r, deg_var r < deg_var g."""
    if f.ring != g.ring:
        raise ValueError("mixed rings")
    d = g.degree(var)
    if d <= 0:
        raise ValueError("divisor must have positive degree in the chosen variable")
    i = f.ring.index(var)
    lc_terms = {
        tuple(0 if j == i else e for j, e in enumerate(exps)): c
        for exps, c in g.terms.items()
        if exps[i] == d
    }
    lc = SparsePoly(f.ring, lc_terms, field=f.field)
    q = SparsePoly.zero(f.ring, f.field)
    r = f
    power = 0
    while not r.is_zero() and r.degree(var) >= d:
        k = r.degree(var)
        lead_terms = {
            tuple(e - d if j == i else e for j, e in enumerate(exps)): c
            for exps, c in r.terms.items()
            if exps[i] == k
        }
        lead = SparsePoly(f.ring, lead_terms, field=f.field)
        q = lc * q + lead
        r = lc * r - lead * g
        power += 1
        if r.degree(var) >= k and not r.is_zero():
            raise ArithmeticError("pseudo-division failed to reduce degree")
    return q, r, power
