"""Exact linear algebra over Q or a prime field F_p.

Vectors are sparse dicts ``{column_key: value}``; column keys only need to be
mutually comparable, which lets callers index columns by (generator, monomial)
tuples directly.  Over Q, values are ints when integral and Fractions
otherwise: most matrices built from monomial data have entries in {-1, 0, 1}
and staying in int arithmetic is several times faster than Fraction.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class Field:
    """Q (characteristic 0) or F_p for a prime p < 2**31."""

    def __init__(self, characteristic: int = 0):
        p = int(characteristic)
        if p != 0 and (p >= 2**31 or not _is_prime(p)):
            raise ValueError(f"characteristic must be 0 or a prime below 2^31, got {p}")
        self.characteristic = p

    def __repr__(self) -> str:
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self) -> int:
        return hash(("Field", self.characteristic))

    def __call__(self, x) -> int | Fraction:
        p = self.characteristic
        if p == 0:
            return self.reduce(Fraction(x))
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, p) % p
        return int(x) % p

    def reduce(self, x):
        p = self.characteristic
        if p:
            return x % p
        if type(x) is Fraction and x.denominator == 1:
            return x.numerator
        return x

    def inv(self, x):
        p = self.characteristic
        if p:
            return pow(x, -1, p)
        if x == 1 or x == -1:
            return int(x)
        return self.reduce(Fraction(1) / x)

    def div(self, a, b):
        return self.reduce(a * self.inv(b))


QQ = Field(0)


class Echelon:
    """Incrementally built row-echelon basis of a space of sparse vectors.

    Each stored row is normalised so its smallest column (its pivot) has value 1.
    A vector reduced against the rows is independent of them exactly when it
    does not vanish; the optional ``tag`` carries a parallel combination vector,
    which turns this into a kernel computation.
    """

    def __init__(self, field: Field = QQ):
        self.field = field
        self.rows: dict[Hashable, tuple[dict, dict | None]] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict, tag: dict | None = None) -> tuple[dict, dict | None]:
        K = self.field
        vec = dict(vec)
        tag = dict(tag) if tag is not None else None
        rows = self.rows
        while vec:
            col = min(vec)
            if col not in rows:
                break
            row, rtag = rows[col]
            f = vec[col]
            _axpy(vec, row, -f, K)
            if tag is not None and rtag is not None:
                _axpy(tag, rtag, -f, K)
        return vec, tag

    def insert(self, vec: dict, tag: dict | None = None) -> bool:
        """Add ``vec`` to the span; True when it was independent."""
        vec, tag = self.reduce(vec, tag)
        if not vec:
            return False
        self._store(vec, tag)
        return True

    def _store(self, vec: dict, tag: dict | None) -> None:
        K = self.field
        col = min(vec)
        s = K.inv(vec[col])
        if s != 1:
            vec = {k: K.reduce(v * s) for k, v in vec.items()}
            if tag is not None:
                tag = {k: K.reduce(v * s) for k, v in tag.items()}
        self.rows[col] = (vec, tag)


def _axpy(target: dict, source: dict, factor, K: Field) -> None:
    """target += factor * source, dropping zeros."""
    red = K.reduce
    for k, v in source.items():
        w = target.get(k)
        if w is None:
            target[k] = red(factor * v)
        else:
            w = red(w + factor * v)
            if w:
                target[k] = w
            else:
                del target[k]


def add_scaled(target: dict, source: dict, factor, field: Field = QQ) -> None:
    _axpy(target, source, factor, field)


def rank(vectors: Iterable[dict], field: Field = QQ) -> int:
    ech = Echelon(field)
    for v in vectors:
        ech.insert(v)
    return len(ech)


def kernel(images: list[tuple[Hashable, dict]], field: Field = QQ) -> list[dict]:
    """Basis of the kernel of the map sending basis element ``key`` to ``image``.

    ``images`` is a list of (source key, image vector).  The kernel vectors are
    returned as sparse dicts over the source keys, in a deterministic order.
    """
    ech = Echelon(field)
    out = []
    for key, img in images:
        vec, tag = ech.reduce(img, {key: 1})
        if vec:
            ech._store(vec, tag)
        else:
            out.append(tag)
    return out


def nullspace_dense(rows: list[list], ncols: int, field: Field = QQ) -> list[list]:
    """Right nullspace of a small dense matrix, one basis vector per free column."""
    K = field
    m = [[K(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        s = K.inv(m[r][c])
        m[r] = [K.reduce(x * s) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [K.reduce(a - f * b) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = K.reduce(-m[i][fc])
        basis.append(v)
    return basis
