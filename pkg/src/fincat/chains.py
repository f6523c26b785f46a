"""Eventually periodic sequences of finite sets and their (co)limits.

A chain is given by a prefix and a cycle of ``(set, function)`` entries.
For a :class:`FinSetChain` the function at index ``i`` goes ``S_i -> S_{i+1}``;
for an :class:`InverseFinSetChain` it goes ``S_{i+1} -> S_i``. In both cases
index ``m + p`` (``m`` prefix length, ``p`` period) is identified with ``m``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from scipy.cluster.hierarchy import DisjointSet


@dataclass(frozen=True)
class _Periodic:
    prefix: tuple
    cycle: tuple

    def __post_init__(self):
        if not self.cycle:
            raise ValueError("cycle must be nonempty")
        object.__setattr__(self, "prefix", tuple((tuple(s), dict(f)) for s, f in self.prefix))
        object.__setattr__(self, "cycle", tuple((tuple(s), dict(f)) for s, f in self.cycle))

    @property
    def start(self) -> int:
        return len(self.prefix)

    @property
    def period(self) -> int:
        return len(self.cycle)

    def _entry(self, i: int):
        m = len(self.prefix)
        return self.prefix[i] if i < m else self.cycle[(i - m) % len(self.cycle)]

    def set_at(self, i: int) -> tuple:
        return self._entry(i)[0]

    def map_at(self, i: int) -> dict:
        return self._entry(i)[1]

    @property
    def size(self) -> int:
        """Total number of listed elements."""
        return sum(len(s) for s, _ in self.prefix + self.cycle)

    def truncation_depth(self) -> int:
        return 3 * max(self.size, 1)


class FinSetChain(_Periodic):
    """``S_0 -> S_1 -> ...``; ``map_at(i)`` sends ``S_i`` into ``S_{i+1}``."""

    def validate(self):
        for i in range(self.start + self.period):
            dom, cod = set(self.set_at(i)), set(self.set_at(i + 1))
            f = self.map_at(i)
            if set(f) != dom or not set(f.values()) <= cod:
                raise ValueError(f"map at index {i} is not a function S_{i} -> S_{i + 1}")
        return self

    def push(self, i: int, x, j: int):
        for k in range(i, j):
            x = self.map_at(k)[x]
        return x


class InverseFinSetChain(_Periodic):
    """``S_0 <- S_1 <- ...``; ``map_at(i)`` sends ``S_{i+1}`` into ``S_i``."""

    def validate(self):
        for i in range(self.start + self.period):
            dom, cod = set(self.set_at(i + 1)), set(self.set_at(i))
            f = self.map_at(i)
            if set(f) != dom or not set(f.values()) <= cod:
                raise ValueError(f"map at index {i} is not a function S_{i + 1} -> S_{i}")
        return self

    def pull(self, j: int, x, i: int):
        """Image in ``S_i`` of ``x`` in ``S_j`` for ``i <= j``."""
        for k in range(j - 1, i - 1, -1):
            x = self.map_at(k)[x]
        return x


def _eventual_image(t: dict, elements: tuple) -> tuple:
    image = set(elements)
    for _ in range(len(elements)):
        image = {t[x] for x in image}
    return tuple(x for x in elements if x in image)


@dataclass
class Colimit:
    """``elements`` is the eventual image ``E`` inside the first cycle set;
    ``cocone(i, x)`` is the class of ``x`` in ``S_i``."""

    chain: FinSetChain
    elements: tuple
    cocone: Callable

    def __len__(self):
        return len(self.elements)


def colim_of_chain(S: FinSetChain) -> Colimit:
    """Sequential colimit: past the prefix every element eventually lands in
    the eventual image ``E`` of the period map ``t``, on which ``t`` is a
    bijection, so the colimit is ``E`` itself (each class represented by its
    element of ``E`` at the first cycle index)."""
    m, p = S.start, S.period
    base = S.set_at(m)
    t = {x: S.push(m, x, m + p) for x in base}
    n = len(base)
    E = _eventual_image(t, base)
    t_inv = {t[e]: e for e in E}

    def back(e, k):
        for _ in range(k):
            e = t_inv[e]
        return e

    def cocone(i, x):
        q = 0 if i <= m else -(-(i - m) // p)
        y = S.push(i, x, m + q * p)
        for _ in range(n):
            y = t[y]
        return back(y, q + n)

    return Colimit(S, E, cocone)


@dataclass
class Limit:
    """``elements`` is the eventual image ``E`` inside the first cycle set
    (each thread is represented by its value there); ``projection(e, i)`` is
    the thread's value in ``S_i``."""

    chain: InverseFinSetChain
    elements: tuple
    projection: Callable

    def __len__(self):
        return len(self.elements)


def lim_of_inverse_chain(S: InverseFinSetChain) -> Limit:
    """Inverse limit: a thread's value at the first cycle index lies in the
    eventual image ``E`` of the period map and determines the thread, since
    the period map is a bijection on ``E``."""
    m, p = S.start, S.period
    base = S.set_at(m)
    t = {x: S.pull(m + p, x, m) for x in base}
    E = _eventual_image(t, base)
    t_inv = {t[e]: e for e in E}

    def projection(e, i):
        if i <= m:
            return S.pull(m, e, i)
        q = -(-(i - m) // p)
        y = e
        for _ in range(q):
            y = t_inv[y]
        return S.pull(m + q * p, y, i)

    return Limit(S, E, projection)


# -- truncation oracles ------------------------------------------------------------

def colim_by_truncation(S: FinSetChain, depth: int | None = None) -> dict:
    """Union-find over the unrolled diagram ``S_0 -> ... -> S_depth``.

    Returns ``{(i, x): root}`` for ``i <= depth``; colimit classes are the
    roots reached from the first cycle index."""
    depth = depth or S.truncation_depth()
    ds = DisjointSet((i, x) for i in range(depth + 1) for x in S.set_at(i))
    for i in range(depth):
        for x, y in S.map_at(i).items():
            ds.merge((i, x), (i + 1, y))
    return {(i, x): ds[(i, x)] for i in range(depth + 1) for x in S.set_at(i)}


def lim_by_truncation(S: InverseFinSetChain, depth: int | None = None, keep: int | None = None) -> set:
    """Restrictions to indices ``0..keep`` of all compatible tuples
    ``(x_0, ..., x_depth)``, found by extending tuples upward."""
    depth = depth or S.truncation_depth()
    keep = S.start + S.period if keep is None else keep
    preimages = []
    for i in range(depth):
        pre = {}
        for y, x in S.map_at(i).items():
            pre.setdefault(x, []).append(y)
        preimages.append(pre)
    out = set()
    partial = [(x,) for x in S.set_at(0)]
    for i in range(depth):
        partial = [tup + (y,) for tup in partial for y in preimages[i].get(tup[-1], ())]
        # tuples only matter through their last entry and their kept prefix
        partial = list({(tup[: keep + 1], tup[-1]): tup for tup in partial}.values())
    for tup in partial:
        out.add(tup[: keep + 1])
    return out
