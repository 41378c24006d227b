"""Monomial ideals: colon ideals, polarization, Froberg chordality, linear
quotients, complete-intersection + 2-linear certificates and the
universally-Koszul recognizer built from the rings H(m).

A monomial is a tuple of exponents indexed by the ideal's variable list.
Generators are kept in input order throughout so every search is
deterministic.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import InternalCheckError, NotQuadratic, OverlappingVariables, TooManyGenerators, UsageError

Monomial = tuple[int, ...]


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_gcd(a: Monomial, b: Monomial) -> Monomial:
    return tuple(min(x, y) for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def support(m: Monomial) -> frozenset[int]:
    return frozenset(i for i, e in enumerate(m) if e)


def _minimalize(gens: Iterable[Monomial]) -> tuple[Monomial, ...]:
    seen = []
    for g in gens:
        g = tuple(g)
        if g not in seen:
            seen.append(g)
    return tuple(g for g in seen if not any(h != g and divides(h, g) for h in seen))


@dataclass(frozen=True)
class MonomialIdeal:
    variables: tuple[str, ...]
    generators: tuple[Monomial, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        n = len(self.variables)
        if len(set(self.variables)) != n:
            raise UsageError(f"repeated variable names in {self.variables}")
        gens = tuple(tuple(int(e) for e in g) for g in self.generators)
        for g in gens:
            if len(g) != n or min(g, default=0) < 0:
                raise UsageError(f"monomial {g} does not fit variables {self.variables}")
        object.__setattr__(self, "generators", _minimalize(gens))

    @classmethod
    def from_strings(cls, variables: Sequence[str] | str, gens: Sequence[str] | str) -> MonomialIdeal:
        """Build from text, e.g. ``from_strings("a,b,c,d", "a^2, b^2, a*d")``."""
        if isinstance(variables, str):
            variables = [v.strip() for v in variables.split(",") if v.strip()]
        if isinstance(gens, str):
            gens = [g for g in gens.split(",") if g.strip()]
        index = {v: i for i, v in enumerate(variables)}
        out = []
        for text in gens:
            e = [0] * len(variables)
            for factor in text.replace(" ", "").split("*"):
                if factor == "1":
                    continue
                name, _, power = factor.partition("^")
                if name not in index:
                    raise UsageError(f"unknown variable {name!r} in {text!r}")
                e[index[name]] += int(power) if power else 1
            out.append(tuple(e))
        return cls(tuple(variables), tuple(out))

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_quadratic(self) -> bool:
        return all(sum(g) == 2 for g in self.generators)

    def is_squarefree(self) -> bool:
        return all(max(g, default=0) <= 1 for g in self.generators)

    def contains(self, m: Monomial) -> bool:
        return any(divides(g, m) for g in self.generators)

    def monomial_str(self, m: Monomial) -> str:
        parts = []
        for name, e in zip(self.variables, m):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) or "1"

    def generator_strings(self) -> list[str]:
        return [self.monomial_str(g) for g in self.generators]

    def with_generators(self, gens: Iterable[Monomial]) -> MonomialIdeal:
        return MonomialIdeal(self.variables, tuple(gens))

    def restrict(self, keep: Sequence[int]) -> MonomialIdeal:
        """Ideal on the variables ``keep`` generated by the generators supported there."""
        keep = list(keep)
        keep_set = set(keep)
        gens = [tuple(g[i] for i in keep) for g in self.generators if support(g) <= keep_set]
        return MonomialIdeal(tuple(self.variables[i] for i in keep), tuple(gens))

    def canonical(self) -> tuple[frozenset, frozenset]:
        """Form independent of variable and generator order, for equality checks."""
        gens = frozenset(
            frozenset((v, e) for v, e in zip(self.variables, g) if e) for g in self.generators
        )
        return frozenset(self.variables), gens

    def same_ideal(self, other: MonomialIdeal) -> bool:
        return self.canonical() == other.canonical()

    def __str__(self) -> str:
        return "(" + ", ".join(self.generator_strings()) + ")"


def minimal_generators(variables: Sequence[str], gens: Iterable[Monomial]) -> MonomialIdeal:
    return MonomialIdeal(tuple(variables), tuple(gens))


def monomial_colon(ideal: MonomialIdeal, m: Monomial) -> MonomialIdeal:
    """(a_1..a_t) : m = (a_i / gcd(a_i, m))."""
    return ideal.with_generators(mono_div(a, mono_gcd(a, m)) for a in ideal.generators)


def is_monomial_regular_sequence(gens: Sequence[Monomial]) -> bool:
    """Monomials form a regular sequence iff they are pairwise coprime."""
    supports = [support(g) for g in gens]
    return all(not (s & t) for s, t in itertools.combinations(supports, 2))


def _require_quadratic(ideal: MonomialIdeal) -> None:
    if not ideal.is_quadratic():
        raise NotQuadratic(f"ideal {ideal} is not generated by quadrics")


def polarize(ideal: MonomialIdeal) -> MonomialIdeal:
    """Replace each square x^2 by x * x_bar with a fresh variable x_bar."""
    _require_quadratic(ideal)
    squared = [i for i in range(ideal.nvars) if any(g[i] == 2 for g in ideal.generators)]
    names = list(ideal.variables)
    fresh = {}
    for i in squared:
        name = f"{names[i]}_bar"
        while name in names:
            name += "_"
        fresh[i] = len(names)
        names.append(name)
    gens = []
    for g in ideal.generators:
        e = list(g) + [0] * len(fresh)
        for i in squared:
            if g[i] == 2:
                e[i] = 1
                e[fresh[i]] = 1
        gens.append(tuple(e))
    return MonomialIdeal(tuple(names), tuple(gens))


@dataclass(frozen=True)
class VarGraph:
    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]]

    def __post_init__(self):
        vs = set(self.vertices)
        for e in self.edges:
            if len(e) != 2 or not e <= vs:
                raise UsageError(f"bad edge {set(e)}")

    @classmethod
    def from_pairs(cls, vertices, pairs) -> VarGraph:
        return cls(tuple(vertices), frozenset(frozenset(p) for p in pairs))

    def adjacency(self) -> dict[str, set[str]]:
        adj = {v: set() for v in self.vertices}
        for e in self.edges:
            u, v = tuple(e)
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degree(self, v: str) -> int:
        return sum(1 for e in self.edges if v in e)


def nonedge_graph(ideal: MonomialIdeal) -> VarGraph:
    """Graph on the variables with u -- v exactly when uv is not in the ideal."""
    if not (ideal.is_quadratic() and ideal.is_squarefree()):
        raise NotQuadratic(f"ideal {ideal} is not squarefree quadratic")
    present = {support(g) for g in ideal.generators}
    pairs = [
        (ideal.variables[i], ideal.variables[j])
        for i, j in itertools.combinations(range(ideal.nvars), 2)
        if frozenset((i, j)) not in present
    ]
    return VarGraph.from_pairs(ideal.variables, pairs)


@dataclass(frozen=True)
class ChordalityResult:
    chordal: bool
    # perfect elimination ordering when chordal, else None
    elimination_order: Optional[tuple[str, ...]] = None
    # chordless cycle of length >= 4 when not chordal
    chordless_cycle: Optional[tuple[str, ...]] = None

    def __bool__(self) -> bool:
        return self.chordal


def maximum_cardinality_search(g: VarGraph) -> list[str]:
    adj = g.adjacency()
    weight = {v: 0 for v in g.vertices}
    order = []
    remaining = list(g.vertices)
    while remaining:
        v = max(remaining, key=lambda u: weight[u])  # ties: first in vertex order
        remaining.remove(v)
        order.append(v)
        for u in adj[v]:
            if u in weight and u in remaining:
                weight[u] += 1
    return order


def is_perfect_elimination_order(g: VarGraph, order: Sequence[str]) -> bool:
    adj = g.adjacency()
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [u for u in adj[v] if pos[u] > pos[v]]
        for a, b in itertools.combinations(later, 2):
            if b not in adj[a]:
                return False
    return True


def _find_chordless_cycle(g: VarGraph) -> Optional[tuple[str, ...]]:
    adj = g.adjacency()
    for v in g.vertices:
        nbrs = [u for u in g.vertices if u in adj[v]]
        for a, b in itertools.combinations(nbrs, 2):
            if b in adj[a]:
                continue
            blocked = (adj[v] | {v}) - {a, b}
            path = _shortest_path(adj, a, b, blocked)
            if path is not None:
                return (v,) + tuple(path)
    return None


def _shortest_path(adj, a, b, blocked) -> Optional[list[str]]:
    prev = {a: None}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        if x == b:
            path = []
            while x is not None:
                path.append(x)
                x = prev[x]
            return path[::-1]
        for y in sorted(adj[x]):
            if y not in prev and y not in blocked:
                prev[y] = x
                queue.append(y)
    return None


def is_chordal(g: VarGraph) -> ChordalityResult:
    """Maximum cardinality search, verified as a perfect elimination ordering.

    On failure an explicit chordless cycle of length >= 4 is returned.
    """
    peo = tuple(reversed(maximum_cardinality_search(g)))
    if is_perfect_elimination_order(g, peo):
        return ChordalityResult(True, elimination_order=peo)
    cycle = _find_chordless_cycle(g)
    if cycle is None:
        raise InternalCheckError("MCS ordering failed but no chordless cycle exists")
    return ChordalityResult(False, chordless_cycle=cycle)


@dataclass(frozen=True)
class TwoLinearResult:
    linear: bool
    polarized: MonomialIdeal
    graph: VarGraph
    chordality: ChordalityResult

    def __bool__(self) -> bool:
        return self.linear


def has_two_linear_resolution(ideal: MonomialIdeal) -> TwoLinearResult:
    """Froberg: a squarefree quadratic ideal is 2-linear iff its non-edge graph is chordal."""
    pol = polarize(ideal)
    g = nonedge_graph(pol)
    ch = is_chordal(g)
    return TwoLinearResult(ch.chordal, pol, g, ch)


def _colon_is_linear(ideal: MonomialIdeal, previous: Sequence[Monomial], m: Monomial) -> bool:
    colon = monomial_colon(ideal.with_generators(previous), m)
    return all(sum(g) == 1 for g in colon.generators)


def linear_quotients_order(ideal: MonomialIdeal) -> Optional[tuple[Monomial, ...]]:
    """An ordering whose successive colon ideals are generated by variables, or None.

    Depth-first search in generator order; sets of already-placed generators that
    cannot be completed are memoised, since feasibility depends only on the set.
    """
    _require_quadratic(ideal)
    gens = ideal.generators
    if not gens:
        return ()
    dead: set[frozenset[int]] = set()

    def extend(placed: list[int]) -> Optional[list[int]]:
        if len(placed) == len(gens):
            return placed
        key = frozenset(placed)
        if key in dead:
            return None
        prev = [gens[i] for i in placed]
        for i in range(len(gens)):
            if i in key:
                continue
            if placed and not _colon_is_linear(ideal, prev, gens[i]):
                continue
            found = extend(placed + [i])
            if found is not None:
                return found
        dead.add(key)
        return None

    found = extend([])
    return None if found is None else tuple(gens[i] for i in found)


@dataclass(frozen=True)
class BRCertificate:
    """I = U + V with U pairwise coprime (a complete intersection) and V 2-linear."""

    ideal: MonomialIdeal
    ci_part: MonomialIdeal
    linear_part: MonomialIdeal
    linear_quotients: Optional[tuple[Monomial, ...]]
    chordality: ChordalityResult
    note: str = "certificate search over minimal generators"

    def validate(self) -> bool:
        if not is_monomial_regular_sequence(self.ci_part.generators):
            return False
        if not has_two_linear_resolution(self.linear_part).linear:
            return False
        union = self.ideal.with_generators(self.ci_part.generators + self.linear_part.generators)
        if not union.same_ideal(self.ideal):
            return False
        if self.linear_quotients is not None:
            placed = []
            for m in self.linear_quotients:
                if placed and not _colon_is_linear(self.linear_part, placed, m):
                    return False
                placed.append(m)
        return True


def _coprime_subsets(gens: Sequence[Monomial], pool: Sequence[int]) -> list[tuple[int, ...]]:
    """All pairwise-coprime subsets of ``pool`` (index tuples, increasing)."""
    sup = {i: support(gens[i]) for i in pool}
    out = []

    def grow(chosen: tuple[int, ...], used: frozenset, start: int):
        out.append(chosen)
        for pos in range(start, len(pool)):
            i = pool[pos]
            if not (sup[i] & used):
                grow(chosen + (i,), used | sup[i], pos + 1)

    grow((), frozenset(), 0)
    return out


def ci_plus_two_linear(ideal: MonomialIdeal, max_generators: int = 24) -> Optional[BRCertificate]:
    """Search for a split of the minimal generators into U (coprime) + V (2-linear).

    Search order: generators coprime to every other generator always go to U
    (moving such a generator out of V never breaks linearity), except that a
    complete intersection keeps its first generator in V; then the
    remaining generators are tried with an empty U; then with U of decreasing
    size, ties broken lexicographically in generator order.
    """
    _require_quadratic(ideal)
    gens = ideal.generators
    if len(gens) > max_generators:
        raise TooManyGenerators(f"{len(gens)} generators exceed the search cap {max_generators}")
    sup = [support(g) for g in gens]
    isolated = [i for i in range(len(gens)) if all(not (sup[i] & sup[j]) for j in range(len(gens)) if j != i)]
    rest = [i for i in range(len(gens)) if i not in isolated]
    if len(isolated) > 1 and not rest:
        # a complete intersection: keep the first generator as a (trivially
        # 2-linear) principal V rather than returning an empty linear part
        isolated, rest = isolated[1:], isolated[:1]
    candidates = _coprime_subsets(gens, rest)
    candidates.sort(key=lambda u: (len(u) != 0, -len(u), u))
    for extra in candidates:
        u_idx = sorted(isolated + list(extra))
        v_idx = [i for i in range(len(gens)) if i not in u_idx]
        v = ideal.with_generators(gens[i] for i in v_idx)
        lin = has_two_linear_resolution(v)
        if lin.linear:
            cert = BRCertificate(
                ideal=ideal,
                ci_part=ideal.with_generators(gens[i] for i in u_idx),
                linear_part=v,
                linear_quotients=linear_quotients_order(v),
                chordality=lin.chordality,
            )
            if not cert.validate():
                raise InternalCheckError(f"certificate for {ideal} does not replay")
            return cert
    return None


def fibre_product(first: MonomialIdeal, second: MonomialIdeal) -> MonomialIdeal:
    """Defining ideal of S x_k T: I + J + all products x*y across the two variable sets."""
    overlap = set(first.variables) & set(second.variables)
    if overlap:
        raise OverlappingVariables(f"variables shared by both factors: {sorted(overlap)}")
    n1, n2 = first.nvars, second.nvars
    gens = [g + (0,) * n2 for g in first.generators]
    gens += [(0,) * n1 + g for g in second.generators]
    for i in range(n1):
        for j in range(n2):
            e = [0] * (n1 + n2)
            e[i] = 1
            e[n1 + j] = 1
            gens.append(tuple(e))
    return MonomialIdeal(first.variables + second.variables, tuple(gens))


def h_ideal(m: int, names: Optional[Sequence[str]] = None) -> MonomialIdeal:
    """Defining ideal of H(m) = k[x_1..x_m] / ((x_1..x_{m-1})^2 + (x_m^2))."""
    names = tuple(names) if names is not None else tuple(f"x{i}" for i in range(1, m + 1))
    if len(names) != m:
        raise UsageError("need exactly m variable names")
    gens = []
    for i, j in itertools.combinations_with_replacement(range(m - 1), 2):
        e = [0] * m
        e[i] += 1
        e[j] += 1
        gens.append(tuple(e))
    if m >= 1:
        e = [0] * m
        e[m - 1] = 2
        gens.append(tuple(e))
    return MonomialIdeal(names, tuple(gens))


@dataclass(frozen=True)
class UKNode:
    """One construction step: BaseH, PolyExt, SquareZeroExt or FibreProduct."""

    kind: str
    variables: tuple[str, ...] = ()
    children: tuple[UKNode, ...] = ()

    def replay(self) -> MonomialIdeal:
        if self.kind == "BaseH":
            return h_ideal(len(self.variables), self.variables)
        if self.kind == "PolyExt":
            inner = self.children[0].replay()
            return MonomialIdeal(inner.variables + self.variables, tuple(g + (0,) for g in inner.generators))
        if self.kind == "SquareZeroExt":
            inner = self.children[0].replay()
            n = inner.nvars
            gens = tuple(g + (0,) for g in inner.generators) + ((0,) * n + (2,),)
            return MonomialIdeal(inner.variables + self.variables, gens)
        if self.kind == "FibreProduct":
            parts = [c.replay() for c in self.children]
            out = parts[0]
            for p in parts[1:]:
                out = fibre_product(out, p)
            return out
        raise UsageError(f"unknown derivation node {self.kind!r}")

    def describe(self) -> str:
        if self.kind == "BaseH":
            return f"BaseH({len(self.variables)})[{','.join(self.variables)}]"
        if self.kind in ("PolyExt", "SquareZeroExt"):
            return f"{self.kind}({self.variables[0]}) over {self.children[0].describe()}"
        return "FibreProduct(" + ", ".join(c.describe() for c in self.children) + ")"

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "variables": list(self.variables)}
        if self.kind == "BaseH":
            out["m"] = len(self.variables)
        if self.children:
            out["children"] = [c.to_dict() for c in self.children]
        return out

    def uses_square_zero(self) -> bool:
        return self.kind == "SquareZeroExt" or any(c.uses_square_zero() for c in self.children)


@dataclass(frozen=True)
class UKDerivation:
    root: UKNode
    notes: tuple[str, ...] = field(default=())

    def replay(self) -> MonomialIdeal:
        return self.root.replay()


def _match_base_h(ideal: MonomialIdeal) -> Optional[tuple[str, ...]]:
    n = ideal.nvars
    for z in reversed(range(n)):
        others = [i for i in range(n) if i != z]
        labelled = tuple(ideal.variables[i] for i in others) + (ideal.variables[z],)
        if h_ideal(n, labelled).same_ideal(ideal):
            return labelled
    return None


def _uk(ideal: MonomialIdeal) -> Optional[UKNode]:
    n = ideal.nvars
    if n == 0:
        return UKNode("BaseH") if not ideal.generators else None
    used = set().union(*(support(g) for g in ideal.generators)) if ideal.generators else set()
    absent = [i for i in range(n) if i not in used]
    if absent:
        v = absent[0]
        inner = _uk(ideal.restrict([i for i in range(n) if i != v]))
        return None if inner is None else UKNode("PolyExt", (ideal.variables[v],), (inner,))
    labelled = _match_base_h(ideal)
    if labelled is not None:
        return UKNode("BaseH", labelled)
    components = _nonedge_components(ideal)
    if len(components) > 1:
        children = []
        for comp in components:
            child = _uk(ideal.restrict(comp))
            if child is None:
                return None
            children.append(child)
        return UKNode("FibreProduct", (), tuple(children))
    for v in range(n):
        sq = tuple(2 if i == v else 0 for i in range(n))
        if sq in ideal.generators and all(g == sq or g[v] == 0 for g in ideal.generators):
            inner = _uk(ideal.restrict([i for i in range(n) if i != v]))
            if inner is not None:
                return UKNode("SquareZeroExt", (ideal.variables[v],), (inner,))
    return None


def _nonedge_components(ideal: MonomialIdeal) -> list[list[int]]:
    n = ideal.nvars
    present = {support(g) for g in ideal.generators if sum(g) == 2 and max(g) == 1}
    adj = {i: [j for j in range(n) if j != i and frozenset((i, j)) not in present] for i in range(n)}
    seen: set[int] = set()
    comps = []
    for start in range(n):
        if start in seen:
            continue
        comp = []
        stack = [start]
        seen.add(start)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


def uk_recognize(ideal: MonomialIdeal) -> Optional[UKDerivation]:
    """Recognise a quadratic monomial ideal as built from H(m)'s.

    Rules are tried in the fixed order: polynomial extension by an unused
    variable, the H(m) pattern, fibre-product splitting along the components
    of the non-edge graph, and extension by a square-zero variable.  The
    returned derivation has been replayed against the input.
    """
    _require_quadratic(ideal)
    root = _uk(ideal)
    if root is None:
        return None
    notes = ()
    if root.uses_square_zero():
        notes = ("uses A -> A[x]/(x^2); the classification needs this step only in characteristic 2",)
    der = UKDerivation(root, notes)
    if not der.replay().same_ideal(ideal):
        raise InternalCheckError(f"derivation {root.describe()} does not replay to {ideal}")
    return der


def minimum_prime_cover(ideal: MonomialIdeal) -> tuple[int, ...]:
    """Smallest variable set meeting the support of every generator (first in index order).

    Its size is the height of the ideal, so dim S/I = nvars - len(cover).
    """
    sups = [support(g) for g in ideal.generators]
    for size in range(ideal.nvars + 1):
        for cover in itertools.combinations(range(ideal.nvars), size):
            cs = set(cover)
            if all(s & cs for s in sups):
                return cover
    raise InternalCheckError("no vertex cover found")


def krull_dimension(ideal: MonomialIdeal) -> int:
    return ideal.nvars - len(minimum_prime_cover(ideal))


def glind_witness_ideal(ideal: MonomialIdeal) -> MonomialIdeal:
    """J = (x_i : i in C) + (x_j^2 : j not in C) for a minimum cover C.

    For a quadratic monomial ring R = S/I the module R/J has linearity defect
    equal to dim R.
    """
    cover = set(minimum_prime_cover(ideal))
    n = ideal.nvars
    gens = []
    for i in range(n):
        e = [0] * n
        e[i] = 1 if i in cover else 2
        gens.append(tuple(e))
    return ideal.with_generators(gens)
