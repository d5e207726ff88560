"""Multipartitions, standard multitableaux, dominance, conjugation, contents.

Box coordinates (l, r, c) are 1-based: component l, row r, column c.  The
content of a box is kappa[l-1] + c - r.  Conjugation transposes every
component and reverses the component order, so contents are negated whenever
the multicharge is symmetric.

Deterministic orders used throughout:
  * partitions of m are listed largest-first-part first (descending lex);
  * multipartitions are listed by giving the first component as much as
    possible, recursively;
  * standard tableaux are sorted by their row-reading word, which puts the
    row-filled tableau first and the column-filled tableau last.
"""

from __future__ import annotations

import itertools
from functools import lru_cache


class Multipartition:
    """A level-tuple of partitions; trailing zero parts are stripped."""

    __slots__ = ("components", "n")

    def __init__(self, components):
        comps = []
        for comp in components:
            parts = tuple(int(p) for p in comp if int(p) != 0)
            for a, b in zip(parts, parts[1:]):
                if a < b:
                    raise ValueError(f"component {comp} is not weakly decreasing")
            if any(p < 0 for p in parts):
                raise ValueError("partition parts must be positive")
            comps.append(parts)
        self.components = tuple(comps)
        self.n = sum(sum(c) for c in self.components)

    @property
    def level(self) -> int:
        return len(self.components)

    def boxes(self):
        """All (l, r, c) box coordinates, 1-based, in reading order."""
        out = []
        for l, comp in enumerate(self.components, start=1):
            for r, width in enumerate(comp, start=1):
                for c in range(1, width + 1):
                    out.append((l, r, c))
        return out

    def conjugate(self) -> "Multipartition":
        return Multipartition(tuple(_conj_partition(comp)
                                    for comp in reversed(self.components)))

    def to_json(self):
        return [list(comp) for comp in self.components]

    def __eq__(self, other):
        return isinstance(other, Multipartition) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        return f"Multipartition({self.components!r})"

    def __str__(self):
        return format_multipartition(self)


def _conj_partition(parts):
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p >= j) for j in range(1, parts[0] + 1))


def format_multipartition(mp: Multipartition) -> str:
    comps = []
    for comp in mp.components:
        comps.append(",".join(str(p) for p in comp) if comp else "-")
    return "(" + "|".join(comps) + ")"


def parse_multipartition(text: str, level: int | None = None) -> Multipartition:
    """Parse '2,1|1' style input; '-' or '' denotes an empty component."""
    text = text.strip().strip("()")
    comps = []
    for chunk in text.split("|"):
        chunk = chunk.strip()
        if chunk in ("", "-", "0"):
            comps.append(())
        else:
            comps.append(tuple(int(p) for p in chunk.split(",")))
    if level is not None:
        if len(comps) == 1 and level > 1:
            raise ValueError(f"expected {level} components, got 1")
        if len(comps) != level:
            raise ValueError(f"expected {level} components, got {len(comps)}")
    return Multipartition(comps)


class StdTableau:
    """A standard multitableau: a bijective filling of a multipartition
    with 1..n increasing along rows and down columns in every component."""

    __slots__ = ("rows", "shape", "n", "_boxes")

    def __init__(self, rows):
        rows = tuple(tuple(tuple(int(x) for x in row) for row in comp)
                     for comp in rows)
        if not _rows_standard(rows):
            raise ValueError(f"filling {rows} is not a standard tableau")
        self.rows = rows
        self.shape = Multipartition(tuple(tuple(len(row) for row in comp)
                                          for comp in rows))
        self.n = self.shape.n
        boxes = {}
        for l, comp in enumerate(rows, start=1):
            for r, row in enumerate(comp, start=1):
                for c, entry in enumerate(row, start=1):
                    boxes[entry] = (l, r, c)
        self._boxes = boxes

    def box_of(self, k: int):
        """The (component, row, column) of entry k, 1-based."""
        return self._boxes[k]

    def row_word(self):
        """Entries read along rows, components first to last."""
        return tuple(x for comp in self.rows for row in comp for x in row)

    def conjugate(self) -> "StdTableau":
        newcomps = []
        for comp in reversed(self.rows):
            ncols = len(comp[0]) if comp else 0
            cols = []
            for c in range(ncols):
                cols.append(tuple(row[c] for row in comp if len(row) > c))
            newcomps.append(tuple(cols))
        return StdTableau(tuple(newcomps))

    def restricted_shape(self, m: int) -> Multipartition:
        """Shape of the subtableau holding entries 1..m."""
        return Multipartition(tuple(
            tuple(sum(1 for x in row if x <= m) for row in comp)
            for comp in self.rows))

    def to_json(self):
        return [[list(row) for row in comp] for comp in self.rows]

    def __eq__(self, other):
        return isinstance(other, StdTableau) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"StdTableau({self.rows!r})"

    def __str__(self):
        comps = []
        for comp in self.rows:
            comps.append("/".join(",".join(str(x) for x in row) for row in comp)
                         if comp else "-")
        return "|".join(comps)


def _rows_standard(rows) -> bool:
    seen = []
    for comp in rows:
        widths = [len(row) for row in comp]
        if any(w == 0 for w in widths):
            return False
        if any(a < b for a, b in zip(widths, widths[1:])):
            return False
        for row in comp:
            if any(x >= y for x, y in zip(row, row[1:])):
                return False
        for r in range(1, len(comp)):
            for c in range(len(comp[r])):
                if comp[r - 1][c] >= comp[r][c]:
                    return False
        for row in comp:
            seen.extend(row)
    return sorted(seen) == list(range(1, len(seen) + 1))


def from_rows(rows) -> StdTableau:
    """Convenience constructor, e.g. from_rows([[1, 2], [3]]) at level 1."""
    if rows and rows[0] and isinstance(rows[0][0], int):
        rows = (rows,)
    return StdTableau(rows)


@lru_cache(maxsize=None)
def _partitions(m: int) -> tuple[tuple[int, ...], ...]:
    if m == 0:
        return ((),)
    out = []

    def rec(remaining, maxpart, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for first in range(min(remaining, maxpart), 0, -1):
            rec(remaining - first, first, prefix + [first])

    rec(m, m, [])
    return tuple(out)


@lru_cache(maxsize=None)
def enum_multipartitions(n: int, level: int) -> tuple[Multipartition, ...]:
    """All level-multipartitions of n, deterministically ordered."""
    if n < 0 or level < 1:
        raise ValueError("need n >= 0 and level >= 1")
    out = []

    def rec(remaining, comps_left, prefix):
        if comps_left == 1:
            for p in _partitions(remaining):
                out.append(Multipartition(prefix + [p]))
            return
        for k in range(remaining, -1, -1):
            for p in _partitions(k):
                rec(remaining - k, comps_left - 1, prefix + [p])

    rec(n, level, [])
    return tuple(out)


def _removable_boxes(shape: Multipartition):
    for l, comp in enumerate(shape.components):
        for r, width in enumerate(comp):
            if r + 1 == len(comp) or comp[r + 1] < width:
                yield l, r


def _drop_box(shape: Multipartition, l: int, r: int) -> Multipartition:
    comps = [list(c) for c in shape.components]
    comps[l][r] -= 1
    return Multipartition(comps)


@lru_cache(maxsize=None)
def enum_std_tableaux(shape: Multipartition) -> tuple[StdTableau, ...]:
    """All standard tableaux of the given shape, sorted by row word.

    The first element is the row-filled tableau and the last the
    column-filled one; both facts are exercised by the test suite.
    """
    def gen(sh: Multipartition):
        if sh.n == 0:
            yield tuple(() for _ in sh.components)
            return
        for l, r in _removable_boxes(sh):
            for sub in gen(_drop_box(sh, l, r)):
                comps = [list(map(list, comp)) for comp in sub]
                while len(comps[l]) <= r:
                    comps[l].append([])
                comps[l][r].append(sh.n)
                yield tuple(tuple(tuple(row) for row in comp if row)
                            for comp in comps)

    tabs = sorted({rows for rows in gen(shape)})
    result = tuple(sorted((StdTableau(rows) for rows in tabs),
                          key=lambda t: t.row_word()))
    return result


def initial_tableau(shape: Multipartition) -> StdTableau:
    """Entries 1..n filled along rows, first component first."""
    k = 1
    comps = []
    for comp in shape.components:
        rows = []
        for width in comp:
            rows.append(tuple(range(k, k + width)))
            k += width
        comps.append(tuple(rows))
    return StdTableau(tuple(comps))


def final_tableau(shape: Multipartition) -> StdTableau:
    """Entries 1..n filled down columns, last component first."""
    k = 1
    filled = {}
    for l in range(len(shape.components) - 1, -1, -1):
        comp = shape.components[l]
        ncols = comp[0] if comp else 0
        for c in range(ncols):
            for r in range(len(comp)):
                if comp[r] > c:
                    filled[(l, r, c)] = k
                    k += 1
    comps = []
    for l, comp in enumerate(shape.components):
        comps.append(tuple(tuple(filled[(l, r, c)] for c in range(width))
                           for r, width in enumerate(comp)))
    return StdTableau(tuple(comps))


def conjugate(x):
    """Conjugate of a multipartition or a standard tableau (an involution)."""
    return x.conjugate()


def dominates(a, b) -> bool:
    """Dominance order; tableaux compare by all restricted shapes."""
    if isinstance(a, Multipartition) and isinstance(b, Multipartition):
        return _mp_dominates(a, b)
    if isinstance(a, StdTableau) and isinstance(b, StdTableau):
        if a.n != b.n or a.shape.level != b.shape.level:
            raise ValueError("tableaux must have the same size and level")
        return all(_mp_dominates(a.restricted_shape(m), b.restricted_shape(m))
                   for m in range(1, a.n + 1))
    raise TypeError("dominates expects two multipartitions or two tableaux")


def _mp_dominates(a: Multipartition, b: Multipartition) -> bool:
    if a.n != b.n or a.level != b.level:
        raise ValueError("dominance needs equal size and level")
    prefix_a = prefix_b = 0
    for comp_a, comp_b in zip(a.components, b.components):
        depth = max(len(comp_a), len(comp_b))
        sum_a, sum_b = prefix_a, prefix_b
        for i in range(depth):
            sum_a += comp_a[i] if i < len(comp_a) else 0
            sum_b += comp_b[i] if i < len(comp_b) else 0
            if sum_a < sum_b:
                return False
        prefix_a, prefix_b = sum_a, sum_b
    return True


def content(t: StdTableau, k: int, kappa) -> int:
    """Content kappa[l-1] + c - r of the box holding k."""
    l, r, c = t.box_of(k)
    return kappa[l - 1] + c - r


def content_seq(t: StdTableau, kappa) -> tuple[int, ...]:
    return tuple(content(t, k, kappa) for k in range(1, t.n + 1))


def residue_seq(t: StdTableau, kappa, e: int | None) -> tuple[int, ...]:
    """Contents modulo e; the plain contents when e is infinite (None)."""
    cs = content_seq(t, kappa)
    if e is None:
        return cs
    return tuple(c % e for c in cs)


def axial_distance(t: StdTableau, r: int, kappa) -> int:
    """content(r) - content(r+1); controls the seminormal action."""
    if not 1 <= r < t.n:
        raise ValueError("need 1 <= r < n")
    return content(t, r, kappa) - content(t, r + 1, kappa)


def apply_transposition(t: StdTableau, r: int):
    """Swap entries r and r+1; None when the result is not standard."""
    if not 1 <= r < t.n:
        raise ValueError("need 1 <= r < n")
    swap = {r: r + 1, r + 1: r}
    rows = tuple(tuple(tuple(swap.get(x, x) for x in row) for row in comp)
                 for comp in t.rows)
    if not _rows_standard(rows):
        return None
    return StdTableau(rows)


def standard_neighbors(t: StdTableau):
    """All (r, s_r * t) with the swapped tableau standard."""
    out = []
    for r in range(1, t.n):
        u = apply_transposition(t, r)
        if u is not None:
            out.append((r, u))
    return out


def negate_residues(iseq, e: int | None) -> tuple[int, ...]:
    if e is None:
        return tuple(-x for x in iseq)
    return tuple((-x) % e for x in iseq)


def residue_classes(n: int, e: int):
    """Partition of all length-n residue sequences into {i, -i} classes.

    Every class is returned as a tuple whose first entry is the canonical
    representative (the lexicographically smaller of the pair).
    """
    if e is None or e <= 2:
        raise ValueError("residue classes require a finite e > 2")
    classes = {}
    for iseq in itertools.product(range(e), repeat=n):
        neg = negate_residues(iseq, e)
        rep = min(iseq, neg)
        if rep not in classes:
            classes[rep] = (rep,) if neg == iseq else (rep, max(iseq, neg))
    return [classes[rep] for rep in sorted(classes)]


def mp_classes(shapes):
    """Conjugation classes of multipartitions.

    Each class is a tuple with the canonical representative first (the
    component-wise lexicographically smaller of the pair).
    """
    classes = {}
    for lam in shapes:
        mu = lam.conjugate()
        rep, other = sorted((lam, mu), key=lambda x: x.components)
        if rep.components not in classes:
            classes[rep.components] = (rep,) if rep == other else (rep, other)
    return [classes[key] for key in sorted(classes)]


def std_plus(shape: Multipartition):
    """One tableau per {t, t'} conjugation orbit on a self-conjugate shape.

    The representative is the one with the lexicographically smaller row
    word.  Needs n >= 2, where no tableau can equal its own conjugate.
    """
    if shape.conjugate() != shape:
        raise ValueError("std_plus needs a self-conjugate shape")
    if shape.n < 2:
        raise ValueError("std_plus needs n >= 2")
    reps = {}
    for t in enum_std_tableaux(shape):
        u = t.conjugate()
        if u == t:
            raise ValueError(f"tableau {t} is its own conjugate")
        rep = min(t, u, key=lambda x: x.row_word())
        reps[rep.row_word()] = rep
    return [reps[w] for w in sorted(reps)]
