"""Multivariate polynomials, degrevlex orders, degree-capped Buchberger and the
quadratic Veronese toric ideal."""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .errors import CapTooLow, IncompleteBasis, UsageError
from .linalg import QQ, Field
from .monomial import Monomial, divides, mono_div, mono_lcm


class MonomialOrder:
    """Degree reverse lexicographic order.

    ``priority`` lists variable indices from the smallest variable to the
    largest.  Among monomials of equal degree, the one with the smaller
    exponent in the smallest variable is the larger.
    """

    kind = "degrevlex"

    def __init__(self, nvars: int, priority: Optional[Sequence[int]] = None):
        priority = list(range(nvars)) if priority is None else list(priority)
        if sorted(priority) != list(range(nvars)):
            raise UsageError(f"variable priority {priority} is not a permutation of {nvars} variables")
        self.nvars = nvars
        self.priority = tuple(priority)
        self._cache: dict = {}

    def key(self, m: Monomial) -> tuple:
        k = self._cache.get(m)
        if k is None:
            k = (sum(m),) + tuple(-m[v] for v in self.priority)
            self._cache[m] = k
        return k

    def __eq__(self, other) -> bool:
        return isinstance(other, MonomialOrder) and other.priority == self.priority

    def __hash__(self) -> int:
        return hash(self.priority)

    def __repr__(self) -> str:
        return f"MonomialOrder(degrevlex, {list(self.priority)})"


@dataclass
class MultiPolynomial:
    """Sparse polynomial: exponent tuple -> nonzero coefficient in ``field``."""

    nvars: int
    terms: dict = field(default_factory=dict)
    field: Field = QQ

    def __post_init__(self):
        K = self.field
        clean = {}
        for m, c in self.terms.items():
            m = tuple(m)
            if len(m) != self.nvars:
                raise UsageError(f"exponent {m} has the wrong length")
            clean[m] = K.reduce(clean.get(m, 0) + K(c))
        self.terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def monomial(cls, m: Monomial, coef=1, field: Field = QQ) -> MultiPolynomial:
        return cls(len(m), {tuple(m): coef}, field)

    @classmethod
    def binomial(cls, a: Monomial, b: Monomial, field: Field = QQ) -> MultiPolynomial:
        return cls(len(a), {tuple(a): 1, tuple(b): -1}, field)

    def is_zero(self) -> bool:
        return not self.terms

    def copy(self) -> MultiPolynomial:
        p = MultiPolynomial.__new__(MultiPolynomial)
        p.nvars, p.terms, p.field = self.nvars, dict(self.terms), self.field
        return p

    def degrees(self) -> set[int]:
        return {sum(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int:
        return max(self.degrees(), default=-1)

    def leading_monomial(self, order: MonomialOrder) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder):
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: MonomialOrder) -> MultiPolynomial:
        K = self.field
        s = K.inv(self.leading_coefficient(order))
        p = self.copy()
        p.terms = {m: K.reduce(c * s) for m, c in self.terms.items()}
        return p

    def scale_shift(self, coef, shift: Monomial) -> dict:
        K = self.field
        return {tuple(a + b for a, b in zip(m, shift)): K.reduce(c * coef) for m, c in self.terms.items()}

    def __add__(self, other: MultiPolynomial) -> MultiPolynomial:
        p = self.copy()
        _add_into(p.terms, other.terms, 1, self.field)
        return p

    def __sub__(self, other: MultiPolynomial) -> MultiPolynomial:
        p = self.copy()
        _add_into(p.terms, other.terms, -1, self.field)
        return p

    def __mul__(self, other) -> MultiPolynomial:
        K = self.field
        if not isinstance(other, MultiPolynomial):
            c = K(other)
            return MultiPolynomial(self.nvars, {m: v * c for m, v in self.terms.items()}, K)
        out: dict = {}
        for m, c in self.terms.items():
            _add_into(out, other.scale_shift(c, m), 1, K)
        p = MultiPolynomial(self.nvars, {}, K)
        p.terms = out
        return p

    def __eq__(self, other) -> bool:
        return isinstance(other, MultiPolynomial) and self.terms == other.terms

    def to_string(self, names: Sequence[str], order: Optional[MonomialOrder] = None) -> str:
        if not self.terms:
            return "0"
        order = order or MonomialOrder(self.nvars)
        out = ""
        for m in sorted(self.terms, key=order.key, reverse=True):
            c = self.terms[m]
            if self.field.characteristic and c > self.field.characteristic // 2:
                c -= self.field.characteristic
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e)
            neg = c < 0
            mag = -c if neg else c
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not out:
                out = ("-" if neg else "") + body
            else:
                out += (" - " if neg else " + ") + body
        return out


def _add_into(target: dict, source: Mapping, factor, K: Field) -> None:
    red = K.reduce
    for m, c in source.items():
        v = target.get(m)
        if v is None:
            v = red(factor * c)
            if v:
                target[m] = v
        else:
            v = red(v + factor * c)
            if v:
                target[m] = v
            else:
                del target[m]


class _Reducer:
    """Divisor lookup over a list of monic polynomials by leading monomial."""

    def __init__(self, basis: Sequence[MultiPolynomial], order: MonomialOrder):
        self.order = order
        self.items = [(g.leading_monomial(order), g) for g in basis if not g.is_zero()]

    def find(self, m: Monomial):
        for lm, g in self.items:
            if divides(lm, m):
                return lm, g
        return None


def normal_form(f: MultiPolynomial, basis: Sequence[MultiPolynomial], order: MonomialOrder) -> MultiPolynomial:
    """Full reduction: no term of the result is divisible by a leading monomial of ``basis``."""
    red = _Reducer([g.monic(order) for g in basis if not g.is_zero()], order)
    return _normal_form(f, red)


def _normal_form(f: MultiPolynomial, red: _Reducer) -> MultiPolynomial:
    K = f.field
    key = red.order.key
    todo = dict(f.terms)
    done: dict = {}
    heap = [(tuple(-x for x in key(m)), m) for m in todo]
    heapq.heapify(heap)
    while heap:
        _, m = heapq.heappop(heap)
        c = todo.pop(m, None)
        if c is None:
            continue
        hit = red.find(m)
        if hit is None:
            done[m] = c
            continue
        lm, g = hit
        shift = mono_div(m, lm)
        for gm, gc in g.terms.items():
            if gm == lm:
                continue
            t = tuple(a + b for a, b in zip(gm, shift))
            old = todo.get(t)
            v = K.reduce(-c * gc) if old is None else K.reduce(old - c * gc)
            if old is None:
                if v:
                    todo[t] = v
                    heapq.heappush(heap, (tuple(-x for x in key(t)), t))
            elif v:
                todo[t] = v
            else:
                del todo[t]
    out = MultiPolynomial(f.nvars, {}, K)
    out.terms = done
    return out


def s_polynomial(f: MultiPolynomial, g: MultiPolynomial, order: MonomialOrder) -> MultiPolynomial:
    K = f.field
    lf, lg = f.leading_monomial(order), g.leading_monomial(order)
    lcm = mono_lcm(lf, lg)
    a = f.scale_shift(K.inv(f.terms[lf]), mono_div(lcm, lf))
    b = g.scale_shift(K.inv(g.terms[lg]), mono_div(lcm, lg))
    _add_into(a, b, -1, K)
    p = MultiPolynomial(f.nvars, {}, K)
    p.terms = a
    return p


@dataclass
class GroebnerBasis:
    elements: list
    order: MonomialOrder
    degree_cap: int
    complete: bool
    nvars: int
    field: Field = QQ

    def leading_monomials(self) -> list[Monomial]:
        return [g.leading_monomial(self.order) for g in self.elements]

    def reduce(self, f: MultiPolynomial) -> MultiPolynomial:
        return normal_form(f, self.elements, self.order)

    def certified_up_to(self) -> Optional[int]:
        """Largest degree in which the basis is certified; None means all degrees."""
        return None if self.complete else self.degree_cap


def _coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def buchberger(
    gens: Sequence[MultiPolynomial], order: MonomialOrder, degree_cap: Optional[int] = None
) -> GroebnerBasis:
    """Reduced Groebner basis through S-pairs of lcm degree <= ``degree_cap``.

    Pairs are processed by the normal strategy (smallest lcm first, ties by
    index).  Pairs with coprime leading monomials and pairs eliminated by the
    chain criterion are skipped.  ``complete`` is False when a pair above the
    cap had to be left unprocessed.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return GroebnerBasis([], order, degree_cap or 0, True, order.nvars)
    K = gens[0].field
    nvars = gens[0].nvars
    top = max(g.degree for g in gens)
    if degree_cap is None:
        degree_cap = 2 * top
    if top > degree_cap:
        raise CapTooLow(f"generator of degree {top} exceeds the degree cap {degree_cap}")

    basis: list[MultiPolynomial] = []
    lms: list[Monomial] = []
    pairs: list = []
    deferred = False
    key = order.key

    def add(g: MultiPolynomial):
        g = g.monic(order)
        lm = g.leading_monomial(order)
        j = len(basis)
        basis.append(g)
        lms.append(lm)
        for i in range(j):
            lcm = mono_lcm(lms[i], lm)
            heapq.heappush(pairs, (sum(lcm), key(lcm), i, j))

    red = _Reducer([], order)
    for g in sorted(gens, key=lambda p: (p.degree, key(p.leading_monomial(order)))):
        r = _normal_form(g, red)
        if not r.is_zero():
            add(r)
            red.items.append((lms[-1], basis[-1]))

    done: set[tuple[int, int]] = set()
    while pairs:
        deg, _, i, j = heapq.heappop(pairs)
        done.add((i, j))
        if deg > degree_cap:
            deferred = True
            continue
        a, b = lms[i], lms[j]
        if _coprime(a, b):
            continue
        lcm = mono_lcm(a, b)
        if _chain_skip(i, j, lcm, lms, done):
            continue
        r = _normal_form(s_polynomial(basis[i], basis[j], order), red)
        if not r.is_zero():
            add(r)
            red.items.append((lms[-1], basis[-1]))
    return GroebnerBasis(_interreduce(basis, order), order, degree_cap, not deferred, nvars, K)


def _chain_skip(i, j, lcm, lms, done) -> bool:
    # some k with lm_k | lcm(i,j) and both pairs (i,k), (j,k) already handled
    for k, lk in enumerate(lms):
        if k in (i, j) or not divides(lk, lcm):
            continue
        if (min(i, k), max(i, k)) in done and (min(j, k), max(j, k)) in done:
            return True
    return False


def _interreduce(basis: list[MultiPolynomial], order: MonomialOrder) -> list[MultiPolynomial]:
    lms = [g.leading_monomial(order) for g in basis]
    keep = [
        g
        for idx, g in enumerate(basis)
        if not any(k != idx and divides(lms[k], lms[idx]) and (lms[k] != lms[idx] or k < idx) for k in range(len(basis)))
    ]
    out = []
    for idx, g in enumerate(keep):
        others = keep[:idx] + keep[idx + 1 :]
        lm = g.leading_monomial(order)
        tail = g.copy()
        del tail.terms[lm]
        tail = normal_form(tail, others, order)
        tail.terms[lm] = g.terms[lm]
        out.append(tail.monic(order))
    out.sort(key=lambda p: order.key(p.leading_monomial(order)))
    return out


@dataclass(frozen=True)
class GroebnerCheck:
    is_basis: bool
    # (i, j, remainder) for the first S-pair that does not reduce to zero
    witness: Optional[tuple] = None
    pairs_checked: int = 0

    def __bool__(self) -> bool:
        return self.is_basis


def is_groebner(gens: Sequence[MultiPolynomial], order: MonomialOrder, degree_cap: int) -> GroebnerCheck:
    """Check that every S-pair of lcm degree <= cap reduces to zero."""
    gens = [g for g in gens if not g.is_zero()]
    monics = [g.monic(order) for g in gens]
    red = _Reducer(monics, order)
    lms = [g.leading_monomial(order) for g in monics]
    checked = 0
    for i, j in itertools.combinations(range(len(monics)), 2):
        a, b = lms[i], lms[j]
        if _coprime(a, b) or sum(mono_lcm(a, b)) > degree_cap:
            continue
        checked += 1
        r = _normal_form(s_polynomial(monics[i], monics[j], order), red)
        if not r.is_zero():
            return GroebnerCheck(False, (i, j, r), checked)
    return GroebnerCheck(True, None, checked)


def monomials_of_degree(nvars: int, d: int) -> list[Monomial]:
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    return out


def standard_monomials(G: GroebnerBasis, d: int) -> list[Monomial]:
    """Degree-d monomials outside the initial ideal, in increasing order."""
    if d < 0:
        return []
    if not G.complete and d > G.degree_cap:
        raise IncompleteBasis(f"basis is certified only through degree {G.degree_cap}, asked for {d}")
    lms = G.leading_monomials()
    out = [m for m in monomials_of_degree(G.nvars, d) if not any(divides(l, m) for l in lms)]
    out.sort(key=G.order.key)
    return out


def veronese2_variables(n: int) -> list[tuple[int, int]]:
    """Index pairs (i, j), 1 <= i <= j <= n, in lexicographic order."""
    return [(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]


def veronese2_names(n: int) -> list[str]:
    return [f"x{i}{j}" if n < 10 else f"x{i}_{j}" for i, j in veronese2_variables(n)]


def veronese2_order(n: int) -> MonomialOrder:
    """x11 < x22 < ... < xnn < x12 < x34 < x56 < ... < remaining pairs in lex order."""
    if n < 2:
        raise UsageError("the quadratic Veronese order needs n >= 2")
    pairs = veronese2_variables(n)
    index = {p: k for k, p in enumerate(pairs)}
    diag = [(i, i) for i in range(1, n + 1)]
    matched = [(i, i + 1) for i in range(1, n, 2)]
    rest = [p for p in pairs if p not in diag and p not in matched]
    return MonomialOrder(len(pairs), [index[p] for p in diag + matched + rest])


def veronese2_kernel_gens(n: int, order: Optional[MonomialOrder] = None, field: Field = QQ) -> list[MultiPolynomial]:
    """Binomials m - m0 spanning the quadratic part of the kernel of x_ij -> x_i x_j.

    Quadratic monomials are grouped by their image; in each group m0 is the
    smallest in ``order`` and every other member m contributes m - m0.
    """
    order = order or veronese2_order(n)
    pairs = veronese2_variables(n)
    nv = len(pairs)
    fibres: dict[tuple, list[Monomial]] = {}
    for a, b in itertools.combinations_with_replacement(range(nv), 2):
        e = [0] * nv
        e[a] += 1
        e[b] += 1
        image = tuple(sorted(pairs[a] + pairs[b]))
        fibres.setdefault(image, []).append(tuple(e))
    out = []
    for image in sorted(fibres):
        group = sorted(fibres[image], key=order.key)
        low = group[0]
        for m in group[1:]:
            out.append(MultiPolynomial.binomial(m, low, field))
    out.sort(key=lambda p: order.key(p.leading_monomial(order)))
    return out


def veronese2_image(p: MultiPolynomial, n: int) -> dict:
    """Apply x_ij -> x_i x_j; returns the image as exponent -> coefficient."""
    pairs = veronese2_variables(n)
    out: dict = {}
    for m, c in p.terms.items():
        e = [0] * n
        for k, power in enumerate(m):
            i, j = pairs[k]
            e[i - 1] += power
            e[j - 1] += power
        _add_into(out, {tuple(e): c}, 1, p.field)
    return out


def initial_ideal_generators(gens: Iterable[MultiPolynomial], order: MonomialOrder) -> list[Monomial]:
    return [g.leading_monomial(order) for g in gens]
