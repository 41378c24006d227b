"""Truncated minimal graded free resolutions over quotient rings.

Everything is done one internal degree at a time.  A degree slice of a free
module F = sum R(-d_g) has the basis {(g, m) : m a standard monomial of
degree j - d_g}; kernels and minimal generators are computed there by exact
elimination.  Slices are further split by a multigrading (any integer
grading for which the ring relations and the module presentation are
homogeneous), which keeps the linear algebra blocks small for monomial and
binomial examples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Callable, Optional, Sequence

from .errors import DegreeBoundExceeded, IncompleteTable, InternalCheckError, NonHomogeneous, NonMinimalPresentation, UsageError
from .gb import GroebnerBasis, MonomialOrder, MultiPolynomial, _Reducer, _normal_form, buchberger, monomials_of_degree
from .linalg import QQ, Echelon, Field, kernel, nullspace_dense, rank
from .monomial import Monomial, divides

Vector = dict  # (generator index, standard monomial) -> coefficient


class QuotientRing:
    """R = k[variables] / (relations), with normal forms from a Groebner basis."""

    def __init__(
        self,
        variables: Sequence[str],
        relations: Sequence[MultiPolynomial] = (),
        field: Field = QQ,
        order: Optional[MonomialOrder] = None,
    ):
        self.variables = tuple(variables)
        self.nvars = len(self.variables)
        self.field = field
        self.order = order or MonomialOrder(self.nvars)
        rels = []
        for r in relations:
            if r.nvars != self.nvars:
                raise UsageError("relation lives in a different polynomial ring")
            if r.field != field:
                r = MultiPolynomial(r.nvars, dict(r.terms), field)
            if not r.is_homogeneous():
                raise NonHomogeneous(f"relation {r.to_string(self.variables)} is not homogeneous")
            if not r.is_zero():
                rels.append(r)
        self.relations = rels
        self._gb: Optional[GroebnerBasis] = None
        self._nf: dict = {}
        self._std: dict = {}
        self.monomial_relations = all(len(r.terms) == 1 for r in rels)

    @classmethod
    def from_monomial_ideal(cls, ideal, field: Field = QQ, order=None) -> QuotientRing:
        rels = [MultiPolynomial.monomial(g, 1, field) for g in ideal.generators]
        return cls(ideal.variables, rels, field, order)

    def polynomial(self, terms: dict) -> MultiPolynomial:
        return MultiPolynomial(self.nvars, terms, self.field)

    def ensure_degree(self, D: int) -> GroebnerBasis:
        """Groebner basis certified at least through degree D."""
        gb = self._gb
        if gb is not None and (gb.complete or gb.degree_cap >= D):
            return gb
        top = max((r.degree for r in self.relations), default=0)
        gb = buchberger(self.relations, self.order, max(D, 2 * top, 1))
        self._gb = gb
        self._nf.clear()
        self._std.clear()
        self._reducer = _Reducer(gb.elements, self.order)
        self._lms = gb.leading_monomials()
        return gb

    @property
    def groebner_basis(self) -> GroebnerBasis:
        return self._gb if self._gb is not None else self.ensure_degree(0)

    def standard_monomials(self, d: int) -> list[Monomial]:
        out = self._std.get(d)
        if out is None:
            gb = self.groebner_basis
            if not gb.complete and d > gb.degree_cap:
                self.ensure_degree(d)
            lms = self._lms
            out = [m for m in monomials_of_degree(self.nvars, d) if not any(divides(l, m) for l in lms)] if d >= 0 else []
            out.sort(key=self.order.key)
            self._std[d] = out
        return out

    def hilbert_function(self, d: int) -> int:
        return len(self.standard_monomials(d))

    def normal_form_monomial(self, m: Monomial) -> dict:
        out = self._nf.get(m)
        if out is None:
            gb = self.groebner_basis
            if not gb.complete and sum(m) > gb.degree_cap:
                self.ensure_degree(sum(m))
            if self.monomial_relations:
                out = {} if any(divides(l, m) for l in self._lms) else {m: 1}
            else:
                out = _normal_form(MultiPolynomial.monomial(m, 1, self.field), self._reducer).terms
            self._nf[m] = out
        return out

    def reduce(self, p: MultiPolynomial) -> MultiPolynomial:
        K = self.field
        out: dict = {}
        for m, c in p.terms.items():
            for s, v in self.normal_form_monomial(m).items():
                w = K.reduce(out.get(s, 0) + c * v)
                if w:
                    out[s] = w
                else:
                    out.pop(s, None)
        return self.polynomial(out)

    def __repr__(self) -> str:
        rels = ", ".join(r.to_string(self.variables) for r in self.relations)
        return f"k[{','.join(self.variables)}]/({rels})"


@dataclass
class GradedModulePresentation:
    """Cokernel of a matrix over R: generators of given degrees modulo relation columns.

    A column is a list of ring elements, one per generator (None or zero for
    no entry); its degree is inferred from its nonzero entries.
    """

    ring: QuotientRing
    generator_degrees: list
    relations: list = field(default_factory=list)
    column_degrees: list = field(init=False)

    def __post_init__(self):
        R = self.ring
        cols, degs = [], []
        for col in self.relations:
            col = list(col)
            if len(col) != len(self.generator_degrees):
                raise UsageError("relation column length does not match the number of generators")
            reduced = [R.reduce(e) if e is not None else R.polynomial({}) for e in col]
            deg = None
            for k, e in enumerate(reduced):
                for m in e.terms:
                    d = sum(m) + self.generator_degrees[k]
                    if deg is None:
                        deg = d
                    elif d != deg:
                        raise NonHomogeneous(f"relation column {len(cols) + 1} mixes degrees {deg} and {d}")
                    if sum(m) == 0:
                        raise NonMinimalPresentation(
                            f"relation column {len(cols) + 1} has a unit entry; generator {k + 1} is redundant"
                        )
            if deg is None:
                continue  # zero column
            cols.append(reduced)
            degs.append(deg)
        self.relations = cols
        self.column_degrees = degs

    @classmethod
    def cyclic(cls, ring: QuotientRing, ideal_gens: Sequence[MultiPolynomial] = ()) -> GradedModulePresentation:
        """R / (ideal_gens)."""
        return cls(ring, [0], [[g] for g in ideal_gens])

    @classmethod
    def residue_field(cls, ring: QuotientRing) -> GradedModulePresentation:
        n = ring.nvars
        gens = []
        for v in range(n):
            e = [0] * n
            e[v] = 1
            gens.append(MultiPolynomial.monomial(tuple(e), 1, ring.field))
        return cls.cyclic(ring, gens)

    @classmethod
    def free(cls, ring: QuotientRing, degrees: Sequence[int] = (0,)) -> GradedModulePresentation:
        return cls(ring, list(degrees), [])

    @property
    def min_degree(self) -> int:
        return min(self.generator_degrees, default=0)


def _multigrading(M: GradedModulePresentation) -> tuple[list[list[int]], list[list[int]]]:
    """Integer weights (rows over variables) and generator offsets making everything homogeneous.

    Row 0 is always the standard grading.
    """
    R = M.ring
    n, g, c = R.nvars, len(M.generator_degrees), len(M.relations)
    ncols = n + g + c
    rows = []
    polys = list(R.relations) + (list(R.groebner_basis.elements) if R._gb is not None else [])
    for p in polys:
        ms = list(p.terms)
        for m in ms[1:]:
            rows.append([a - b for a, b in zip(ms[0], m)] + [0] * (g + c))
    for ci, col in enumerate(M.relations):
        for k, e in enumerate(col):
            for m in e.terms:
                row = list(m) + [0] * (g + c)
                row[n + k] = 1
                row[n + g + ci] = -1
                rows.append(row)
    basis = nullspace_dense(rows, ncols, QQ) if rows else [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    weights = [[1] * n]
    offsets = [list(M.generator_degrees)]
    for v in basis:
        den = 1
        for x in v:
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
        v = [int(x * den) for x in v]
        weights.append(v[:n])
        offsets.append(v[n : n + g])
    return weights, offsets


class _Grading:
    def __init__(self, weights, offsets):
        self.weights = weights
        self.nrows = len(weights)
        self.gen_offsets = [tuple(col) for col in zip(*offsets)] if offsets and offsets[0] else []
        self._cache: dict = {}

    def mono(self, m: Monomial) -> tuple:
        k = self._cache.get(m)
        if k is None:
            k = tuple(sum(w * e for w, e in zip(row, m)) for row in self.weights)
            self._cache[m] = k
        return k

    @staticmethod
    def add(a: tuple, b: tuple) -> tuple:
        return tuple(x + y for x, y in zip(a, b))


@dataclass
class BettiTable:
    """Graded Betti numbers beta_{i,j} known for i <= h and j <= D."""

    cells: dict
    h: int
    D: int
    min_degree: int = 0
    characteristic: int = 0
    # homological degrees actually computed (smaller than h after an early stop)
    computed_h: Optional[int] = None

    def __post_init__(self):
        if self.computed_h is None:
            self.computed_h = self.h

    def is_complete(self, i: int, j: int) -> bool:
        if i < 0:
            return True
        if j < i + self.min_degree:
            return True
        return i <= self.computed_h and j <= self.D

    def get(self, i: int, j: int) -> int:
        if not self.is_complete(i, j):
            raise IncompleteTable(f"Betti number ({i},{j}) lies outside the certified range h={self.computed_h}, D={self.D}")
        return self.cells.get((i, j), 0)

    def row(self, i: int) -> dict:
        return {j: b for (a, j), b in sorted(self.cells.items()) if a == i}

    def total(self, i: int) -> int:
        return sum(self.row(i).values())

    def t(self, i: int) -> Optional[int]:
        """Largest j <= D with beta_{i,j} != 0 (a lower bound for the true t_i)."""
        row = self.row(i)
        return max(row) if row else None

    def nonzero_cells(self) -> list[tuple[int, int, int]]:
        return [(i, j, b) for (i, j), b in sorted(self.cells.items()) if b]

    def to_json(self) -> dict:
        return {
            "cells": [[i, j, b] for i, j, b in self.nonzero_cells()],
            "homologicalBound": self.computed_h,
            "internalDegreeBound": self.D,
            "complete": "all cells with i <= homologicalBound and j <= internalDegreeBound",
            "characteristic": self.characteristic,
        }

    def render(self) -> str:
        hh = self.computed_h
        shifts = [j - i for (i, j) in self.cells]
        lo = min(shifts, default=self.min_degree)
        hi = max(shifts, default=self.min_degree)
        totals = [self.total(i) for i in range(hh + 1)]
        width = max([len(str(b)) for b in self.cells.values()] + [len(str(t)) for t in totals] + [len(str(hh))]) + 1
        lines = ["      " + "".join(str(i).rjust(width) for i in range(hh + 1))]
        lines.append("total:" + "".join(str(t).rjust(width) for t in totals))
        for r in range(lo, hi + 1):
            cells = []
            for i in range(hh + 1):
                j = i + r
                if not self.is_complete(i, j):
                    cells.append("?")
                else:
                    b = self.cells.get((i, j), 0)
                    cells.append(str(b) if b else ".")
            lines.append(f"{r}:".ljust(6) + "".join(c.rjust(width) for c in cells))
        return "\n".join(lines)


@dataclass
class ResolutionTruncation:
    """Free modules F_0..F_h (generator degrees) and differentials d_i: F_i -> F_{i-1}.

    ``differentials[i][g]`` is the image of generator g of F_i, as a vector
    keyed by (generator of F_{i-1}, standard monomial); ``differentials[0]``
    holds the relation columns F_0 receives from the presentation.
    """

    ring: QuotientRing
    module: GradedModulePresentation
    degrees: list
    multidegrees: list
    differentials: list
    h: int
    D: int
    betti: BettiTable
    # dim of the module in each degree j <= D
    module_hilbert: dict
    grading: _Grading = field(repr=False, default=None)

    @property
    def characteristic(self) -> int:
        return self.ring.field.characteristic

    def entry(self, i: int, row: int, col: int) -> MultiPolynomial:
        vec = self.differentials[i][col]
        return self.ring.polynomial({m: c for (k, m), c in vec.items() if k == row})

    def matrix(self, i: int) -> list[list[MultiPolynomial]]:
        rows = len(self.degrees[i - 1])
        return [[self.entry(i, r, c) for c in range(len(self.degrees[i]))] for r in range(rows)]

    def matrix_strings(self, i: int) -> list[list[str]]:
        return [[e.to_string(self.ring.variables) for e in row] for row in self.matrix(i)]

    def check_d_squared(self) -> bool:
        for i in range(2, len(self.differentials)):
            for vec in self.differentials[i]:
                if _apply(self.ring, self.differentials[i - 1], vec):
                    return False
        return True

    def check_minimal(self) -> bool:
        for i in range(1, len(self.differentials)):
            for vec in self.differentials[i]:
                if any(sum(m) == 0 for (_, m) in vec):
                    return False
        return True

    def euler_characteristic_ok(self) -> dict:
        """Per complete degree j: sum_i (-1)^i sum_j' beta_{i,j'} dim R_{j-j'} == dim M_j."""
        R = self.ring
        b = self.betti
        out = {}
        d0 = self.module.min_degree
        for j in range(d0, self.D + 1):
            if j - d0 > b.computed_h:
                break
            total = 0
            for (i, jj), beta in b.cells.items():
                if jj <= j:
                    total += (-1) ** i * beta * R.hilbert_function(j - jj)
            out[j] = total == self.module_hilbert[j]
        return out


def _times_monomial(R: QuotientRing, vec: Vector, mono: Monomial) -> Vector:
    K = R.field
    out: Vector = {}
    for (k, m), c in vec.items():
        prod = tuple(a + b for a, b in zip(m, mono))
        for s, v in R.normal_form_monomial(prod).items():
            key = (k, s)
            w = K.reduce(out.get(key, 0) + c * v)
            if w:
                out[key] = w
            else:
                out.pop(key, None)
    return out


def _accumulate(out: Vector, vec: Vector, factor, K: Field) -> None:
    for key, v in vec.items():
        w = K.reduce(out.get(key, 0) + factor * v)
        if w:
            out[key] = w
        else:
            out.pop(key, None)


def _apply(R: QuotientRing, images: list, vec: Vector) -> Vector:
    """Image of ``vec`` (in F_i coordinates) under the map with generator images ``images``."""
    K = R.field
    out: Vector = {}
    for (g, m), c in vec.items():
        _accumulate(out, _times_monomial(R, images[g], m), c, K)
    return out


def _variables(n: int) -> list[Monomial]:
    return [tuple(1 if k == v else 0 for k in range(n)) for v in range(n)]


class _Engine:
    def __init__(self, M: GradedModulePresentation, D: int):
        self.M = M
        self.R = M.ring
        self.R.ensure_degree(D)
        self.D = D
        weights, offsets = _multigrading(M)
        self.grading = _Grading(weights, offsets)
        self.vars = _variables(self.R.nvars)
        self._blocks: dict = {}

    def std_blocks(self, d: int) -> dict:
        """Standard monomials of degree d grouped by multidegree."""
        out = self._blocks.get(d)
        if out is None:
            out = {}
            for m in self.R.standard_monomials(d):
                out.setdefault(self.grading.mono(m), []).append(m)
            self._blocks[d] = out
        return out

    def source_blocks(self, degs, mdegs, j: int) -> dict:
        """Basis of (F)_j of a free module, grouped by multidegree."""
        out: dict = {}
        for g, (d, md) in enumerate(zip(degs, mdegs)):
            if d > j:
                continue
            for key, monos in self.std_blocks(j - d).items():
                out.setdefault(_Grading.add(md, key), []).extend((g, m) for m in monos)
        return out

    def multiply_out(self, basis_by_block: dict) -> dict:
        """x_v * z for every stored vector z, grouped by target multidegree."""
        out: dict = {}
        for key, vecs in basis_by_block.items():
            for v, x in enumerate(self.vars):
                target = _Grading.add(key, self.grading.mono(x))
                for z in vecs:
                    p = _times_monomial(self.R, z, x)
                    if p:
                        out.setdefault(target, []).append(p)
        return out


def minimal_resolution(
    M: GradedModulePresentation,
    h: int = 5,
    D: Optional[int] = None,
    stop: Optional[Callable[[int, BettiTable], bool]] = None,
) -> tuple[ResolutionTruncation, BettiTable]:
    """Minimal free resolution of M through homological degree h and internal degree D.

    Every Betti number beta_{i,j} with i <= h and j <= D is exact.  ``stop``
    is called after each homological degree with the partial table; returning
    True ends the computation there.
    """
    if h < 0:
        raise UsageError("homological bound must be non-negative")
    if any(d < 0 for d in M.generator_degrees):
        raise UsageError("generator degrees must be non-negative")
    if D is None:
        D = h + max(M.generator_degrees, default=0) + 2
    R = M.ring
    K = R.field
    eng = _Engine(M, D)
    gr = eng.grading
    d0 = M.min_degree

    degrees = [list(M.generator_degrees)]
    mdegs = [list(gr.gen_offsets)]
    differentials: list = [[]]
    cells: dict = {}
    for g, d in enumerate(M.generator_degrees):
        if d <= D:
            cells[(0, d)] = cells.get((0, d), 0) + 1

    # Z_0: the relation submodule of F_0, spanned by multiples of the columns
    columns = []
    for col, cdeg in zip(M.relations, M.column_degrees):
        vec = {}
        for k, e in enumerate(col):
            for m, c in e.terms.items():
                vec[(k, m)] = c
        columns.append((cdeg, vec))
    module_hilbert = {}
    z_prev: dict = {}  # multidegree -> basis vectors of Z in the previous degree
    new_gens: list = []
    for j in range(d0, D + 1):
        span: dict = {}
        for cdeg, vec in columns:
            if cdeg > j:
                continue
            for key, monos in eng.std_blocks(j - cdeg).items():
                md = _Grading.add(_vec_multidegree(vec, mdegs[0], gr), key)
                for m in monos:
                    p = _times_monomial(R, vec, m)
                    if p:
                        span.setdefault(md, []).append(p)
        z_now = {}
        for key, vecs in span.items():
            ech = Echelon(K)
            for v in vecs:
                ech.insert(v)
            z_now[key] = [row for row, _ in ech.rows.values()]
        f_dim = sum(len(v) for v in eng.source_blocks(degrees[0], mdegs[0], j).values())
        module_hilbert[j] = f_dim - sum(len(v) for v in z_now.values())
        new_gens.extend(_minimal_new(eng, z_prev, z_now, j, K))
        z_prev = z_now

    table = BettiTable(cells, h, D, d0, K.characteristic, computed_h=0)
    for i in range(1, h + 1):
        if stop is not None and stop(i - 1, _snapshot(cells, h, D, d0, K, i - 1)):
            table = _snapshot(cells, h, D, d0, K, i - 1)
            break
        degrees.append([j for j, _, _ in new_gens])
        mdegs.append([md for _, md, _ in new_gens])
        differentials.append([vec for _, _, vec in new_gens])
        for j, _, _ in new_gens:
            cells[(i, j)] = cells.get((i, j), 0) + 1
        if i == h:
            table = _snapshot(cells, h, D, d0, K, h)
            break
        # kernel of d_i, degree by degree, and its minimal generators
        images = differentials[i]
        new_gens = []
        z_prev = {}
        for j in range(d0 + i, D + 1):
            z_now = {}
            for key, basis in eng.source_blocks(degrees[i], mdegs[i], j).items():
                imgs = [((g, m), _times_monomial(R, images[g], m)) for g, m in basis]
                ker = kernel(imgs, K)
                if ker:
                    z_now[key] = ker
            new_gens.extend(_minimal_new(eng, z_prev, z_now, j, K))
            z_prev = z_now
    else:
        table = _snapshot(cells, h, D, d0, K, h)
    if stop is not None and table.computed_h == h:
        stop(h, table)

    res = ResolutionTruncation(
        ring=R,
        module=M,
        degrees=degrees,
        multidegrees=mdegs,
        differentials=differentials,
        h=table.computed_h,
        D=D,
        betti=table,
        module_hilbert=module_hilbert,
        grading=gr,
    )
    return res, table


def _snapshot(cells, h, D, d0, K, computed) -> BettiTable:
    return BettiTable(dict(cells), h, D, d0, K.characteristic, computed_h=computed)


def _vec_multidegree(vec: Vector, gen_mdegs, gr: _Grading) -> tuple:
    (k, m) = next(iter(vec))
    return _Grading.add(gen_mdegs[k], gr.mono(m))


def _minimal_new(eng: _Engine, z_prev: dict, z_now: dict, j: int, K: Field) -> list:
    """Vectors of Z_j that are independent modulo m * Z_{j-1}: (degree, multidegree, vector)."""
    out = []
    if not z_now:
        return out
    products = eng.multiply_out(z_prev)
    for key in sorted(z_now):
        ech = Echelon(K)
        for p in products.get(key, ()):
            ech.insert(p)
        for z in z_now[key]:
            if ech.insert(z):
                out.append((j, key, z))
    return out


@dataclass(frozen=True)
class KoszulResult:
    koszul: bool
    # smallest (i, j) with i != j and beta_{i,j}(k) != 0
    offending_cell: Optional[tuple[int, int]]
    betti: BettiTable

    def __bool__(self) -> bool:
        return self.koszul


def koszul_check(R: QuotientRing, h: int = 5, D: Optional[int] = None) -> KoszulResult:
    """Is beta_{i,j}(k) = 0 for i != j, i <= h, j <= D?  Stops at the first offending row."""
    if D is None:
        D = h + 2
    if D < h:
        raise DegreeBoundExceeded(f"internal degree bound {D} is below the homological bound {h}")
    found: list = []

    def stop(i, table):
        bad = sorted(j for (a, j), b in table.cells.items() if a == i and j != i and b)
        if bad:
            found.append((i, bad[0]))
            return True
        return False

    _, table = minimal_resolution(GradedModulePresentation.residue_field(R), h, D, stop=stop)
    cell = found[0] if found else None
    return KoszulResult(cell is None, cell, table)


@dataclass(frozen=True)
class GolodResult:
    golod: bool
    source_koszul: KoszulResult
    betti: BettiTable
    # (i, t_i) for the first row violating t_i <= i + 1
    violation: Optional[tuple[int, int]]

    def __bool__(self) -> bool:
        return self.golod


def golod_map_check(
    Q: QuotientRing, extra: Sequence[MultiPolynomial], h: int = 4, D: Optional[int] = None
) -> GolodResult:
    """Q -> R = Q/(extra) with Q Koszul: Golod iff t_i^Q(R) <= i + 1 for every i."""
    for f in extra:
        if any(sum(m) < 2 for m in f.terms):
            raise UsageError("extra generators must lie in the square of the maximal ideal")
    if D is None:
        D = h + 2
    kz = koszul_check(Q, h, D)
    _, table = minimal_resolution(GradedModulePresentation.cyclic(Q, extra), h, D)
    violation = None
    for i in range(table.computed_h + 1):
        t = table.t(i)
        if t is not None and t > i + 1:
            violation = (i, t)
            break
    return GolodResult(kz.koszul and violation is None, kz, table, violation)


def _bivariate(table: BettiTable, bound: int) -> dict:
    # coefficient of z^i s^j for internal degree j <= bound
    out = {}
    for j in range(bound + 1):
        for i in range(j - table.min_degree + 1):
            b = table.get(i, j)
            if b:
                out[(i, j)] = b
    return out


@dataclass(frozen=True)
class SerreResult:
    inequality_holds: bool
    equality_holds: bool
    lhs: dict
    rhs: dict


def serre_check(k_over_q: BettiTable, r_over_q: BettiTable, k_over_r: BettiTable, bound: int) -> SerreResult:
    """Compare P^R_k with P^Q_k / (1 - z (P^Q_R - 1)) through internal degree j <= bound.

    P(s, z) = sum beta_{i,j} s^j z^i.  All three tables must be complete for
    j <= bound, which for modules generated in degree 0 means h >= bound.
    """
    pk = _bivariate(k_over_q, bound)
    pr = _bivariate(r_over_q, bound)
    lhs = _bivariate(k_over_r, bound)
    if pr.get((0, 0), 0) != 1:
        raise UsageError("R must be a cyclic Q-module generated in degree 0")
    # u = z (P^Q_R - 1)
    u = {(i + 1, j): b for (i, j), b in pr.items() if (i, j) != (0, 0)}
    inv = {(0, 0): 1}
    power = {(0, 0): 1}
    for _ in range(bound):
        power = _mul_trunc(power, u, bound)
        if not power:
            break
        for key, v in power.items():
            inv[key] = inv.get(key, 0) + v
    rhs = _mul_trunc(pk, inv, bound)
    keys = set(lhs) | set(rhs)
    ineq = all(lhs.get(k, 0) <= rhs.get(k, 0) for k in keys)
    eq = all(lhs.get(k, 0) == rhs.get(k, 0) for k in keys)
    return SerreResult(ineq, eq, lhs, {k: v for k, v in rhs.items() if v})


def _mul_trunc(a: dict, b: dict, bound: int) -> dict:
    out: dict = {}
    for (i1, j1), x in a.items():
        if not x:
            continue
        for (i2, j2), y in b.items():
            if y and j1 + j2 <= bound:
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + x * y
    return {k: v for k, v in out.items() if v}


def linear_part(res: ResolutionTruncation) -> list:
    """Differentials with every entry of degree >= 2 replaced by zero."""
    out = [[]]
    for i in range(1, len(res.differentials)):
        out.append([{key: c for key, c in vec.items() if sum(key[1]) == 1} for vec in res.differentials[i]])
    return out


@dataclass(frozen=True)
class LinearityReport:
    lind_lower_bound: int
    stable_up_to_bounds: bool
    # (i, j) of a nonzero homology class of the linear part in the top homological degree found
    homology_witness: Optional[tuple[int, int]]
    homology: dict
    betti: BettiTable


def linear_part_homology(res: ResolutionTruncation) -> dict:
    """dim H_i(lin F)_j for 1 <= i <= h-1 and j <= D."""
    lin = linear_part(res)
    R = res.ring
    K = R.field
    eng = _Engine(res.module, res.D)
    eng.grading = res.grading
    out = {}
    for i in range(1, len(lin) - 1):
        for j in range(res.module.min_degree + i, res.D + 1):
            src = eng.source_blocks(res.degrees[i], res.multidegrees[i], j)
            nxt = eng.source_blocks(res.degrees[i + 1], res.multidegrees[i + 1], j)
            total = 0
            for key, basis in src.items():
                imgs = [_times_monomial(R, lin[i][g], m) for g, m in basis]
                ker = len(basis) - rank(imgs, K)
                if not ker:
                    continue
                bnd = [_times_monomial(R, lin[i + 1][g], m) for g, m in nxt.get(key, ())]
                total += ker - rank(bnd, K)
            if total:
                out[(i, j)] = total
    return out


def check_linear_part_squares_to_zero(res: ResolutionTruncation) -> bool:
    lin = linear_part(res)
    for i in range(2, len(lin)):
        for vec in lin[i]:
            if _apply(res.ring, lin[i - 1], vec):
                return False
    return True


def linearity_defect(M: GradedModulePresentation, h: int = 5, D: Optional[int] = None) -> LinearityReport:
    """Largest i <= h-1 with H_i(lin F) != 0 inside the computed window (0 if none)."""
    res, table = minimal_resolution(M, h, D)
    hom = linear_part_homology(res)
    if not res.check_d_squared() or not check_linear_part_squares_to_zero(res):
        raise InternalCheckError("differential does not square to zero")
    top = max((i for i, _ in hom), default=0)
    witness = min((key for key in hom if key[0] == top), default=None) if top else None
    # a witness strictly below the last computed row leaves room for growth only beyond it
    stable = top < res.h - 1 or res.h == 0
    return LinearityReport(top, stable, witness, hom, table)
