"""Finite posets, bounded distributive lattices, and prime filter machinery.

Everything is index-based internally: the canonical element order is the
declaration order, element i is ``elements[i]``, and all set-valued results
come back as frozensets of indices sorted canonically by the callers that
render them. All structures are immutable after construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import BudgetExceeded, LatticeError

SUBSET_SCAN_LIMIT = 12  # power-set scan bound for subalgebra enumeration
FILTER_SCAN_LIMIT = 16


@dataclass(frozen=True)
class Poset:
    """A finite partial order; ``leq[i][j]`` means element i is below j."""

    elements: tuple[str, ...]
    leq: tuple[tuple[bool, ...], ...]
    name: str = field(default="poset", kw_only=True)

    def __len__(self):
        return len(self.elements)

    def index(self, element_name):
        try:
            return self.elements.index(element_name)
        except ValueError:
            raise LatticeError(
                "unknown-element",
                f"element {element_name!r} is not in the carrier of {self.name}",
                witness=(element_name,),
            ) from None

    def upset(self, i):
        """R(x): everything above element i, including i."""
        self._check(i)
        return frozenset(j for j in range(len(self)) if self.leq[i][j])

    def downset(self, i):
        self._check(i)
        return frozenset(j for j in range(len(self)) if self.leq[j][i])

    def down_closure(self, subset):
        """R^{-1}(X0): everything below some member of the subset."""
        subset = frozenset(subset)
        for i in subset:
            self._check(i)
        return frozenset(
            j
            for j in range(len(self))
            if any(self.leq[j][i] for i in subset)
        )

    def up_closure(self, subset):
        subset = frozenset(subset)
        for i in subset:
            self._check(i)
        return frozenset(
            j
            for j in range(len(self))
            if any(self.leq[i][j] for i in subset)
        )

    def is_upset(self, subset):
        subset = frozenset(subset)
        return all(
            self.leq[i][j] <= (j in subset) for i in subset for j in range(len(self))
        )

    def names(self, subset):
        return tuple(self.elements[i] for i in sorted(subset))

    def _check(self, i):
        if not 0 <= i < len(self):
            raise LatticeError(
                "unknown-element",
                f"index {i} is outside the carrier of {self.name}",
                witness=(i,),
            )


@dataclass(frozen=True)
class FiniteLattice(Poset):
    """Bounded distributive lattice with precomputed meet/join tables.

    The tables are built once at validation time so every later operation is
    a lookup; all downstream enumerations are at least quadratic in the
    carrier, so this is the cheap part.
    """

    meet: tuple[tuple[int, ...], ...]
    join: tuple[tuple[int, ...], ...]
    bottom: int
    top: int


def _transitive_reflexive_closure(n, pairs):
    leq = [[i == j for j in range(n)] for i in range(n)]
    for i, j in pairs:
        leq[i][j] = True
    for k in range(n):
        for i in range(n):
            if leq[i][k]:
                row_i, row_k = leq[i], leq[k]
                for j in range(n):
                    if row_k[j]:
                        row_i[j] = True
    return leq


def build_poset(elements, pairs, name="poset"):
    """Validated poset from named leq pairs; closure is applied first."""
    elements = tuple(elements)
    seen = set()
    for e in elements:
        if e in seen:
            raise LatticeError(
                "duplicate-element", f"element {e!r} declared twice in {name}", (e,)
            )
        seen.add(e)
    index = {e: i for i, e in enumerate(elements)}
    numeric = []
    for a, b in pairs:
        if a not in index:
            raise LatticeError("unknown-element", f"unknown element {a!r} in {name}", (a,))
        if b not in index:
            raise LatticeError("unknown-element", f"unknown element {b!r} in {name}", (b,))
        numeric.append((index[a], index[b]))
    leq = _transitive_reflexive_closure(len(elements), numeric)
    for i in range(len(elements)):
        for j in range(i + 1, len(elements)):
            if leq[i][j] and leq[j][i]:
                raise LatticeError(
                    "not-a-poset",
                    f"cycle between {elements[i]!r} and {elements[j]!r} in {name}",
                    (elements[i], elements[j]),
                )
    return Poset(elements, tuple(tuple(row) for row in leq), name=name)


def _bound_of(poset, kind):
    n = len(poset)
    for i in range(n):
        if kind == "bottom" and all(poset.leq[i][j] for j in range(n)):
            return i
        if kind == "top" and all(poset.leq[j][i] for j in range(n)):
            return i
    return None


def _glb(poset, i, j):
    lower = [k for k in range(len(poset)) if poset.leq[k][i] and poset.leq[k][j]]
    for g in lower:
        if all(poset.leq[k][g] for k in lower):
            return g
    return None


def _lub(poset, i, j):
    upper = [k for k in range(len(poset)) if poset.leq[i][k] and poset.leq[j][k]]
    for g in upper:
        if all(poset.leq[g][k] for k in upper):
            return g
    return None


def build_lattice(elements, leq_pairs, bottom, top, name="lattice"):
    """Validated bounded distributive lattice with derived operation tables.

    Raises LatticeError with the first violated law and a witness: a cycle
    pair for ``not-a-poset``, a pair for ``missing-meet``/``missing-join``,
    a triple for ``not-distributive``, the offending element for
    ``wrong-bounds``.
    """
    poset = build_poset(elements, leq_pairs, name=name)
    n = len(poset)
    bot, topi = poset.index(bottom), poset.index(top)
    for x in range(n):
        if not poset.leq[bot][x]:
            raise LatticeError(
                "wrong-bounds",
                f"declared bottom {bottom!r} is not below {poset.elements[x]!r}",
                (bottom, poset.elements[x]),
            )
        if not poset.leq[x][topi]:
            raise LatticeError(
                "wrong-bounds",
                f"declared top {top!r} is not above {poset.elements[x]!r}",
                (top, poset.elements[x]),
            )
    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            g = _glb(poset, i, j)
            if g is None:
                raise LatticeError(
                    "missing-meet",
                    f"{poset.elements[i]!r} and {poset.elements[j]!r} have no meet",
                    (poset.elements[i], poset.elements[j]),
                )
            s = _lub(poset, i, j)
            if s is None:
                raise LatticeError(
                    "missing-join",
                    f"{poset.elements[i]!r} and {poset.elements[j]!r} have no join",
                    (poset.elements[i], poset.elements[j]),
                )
            meet[i][j] = g
            join[i][j] = s
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if meet[x][join[y][z]] != join[meet[x][y]][meet[x][z]]:
                    names = (poset.elements[x], poset.elements[y], poset.elements[z])
                    raise LatticeError(
                        "not-distributive",
                        "meet does not distribute over join at "
                        f"({names[0]!r}, {names[1]!r}, {names[2]!r})",
                        names,
                    )
    return FiniteLattice(
        poset.elements,
        poset.leq,
        tuple(tuple(row) for row in meet),
        tuple(tuple(row) for row in join),
        bot,
        topi,
        name=name,
    )


def chain_lattice(n, name=None):
    """The n-element chain c0 < c1 < ... (the 2-chain is named 0, 1)."""
    if n == 2:
        elems = ("0", "1")
    elif n == 3:
        elems = ("0", "m", "1")
    else:
        elems = tuple(f"c{i}" for i in range(n))
    pairs = [(elems[i], elems[i + 1]) for i in range(n - 1)]
    return build_lattice(elems, pairs, elems[0], elems[-1], name=name or f"chain{n}")


def diamond_lattice(name="b2"):
    """The four-element Boolean lattice 0 < a,b < 1."""
    return build_lattice(
        ("0", "a", "b", "1"), [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")], "0", "1", name=name
    )


def heyting_implies(lattice, a, b):
    """Relative pseudocomplement: the join of every l with a /\\ l <= b."""
    lattice._check(a)
    lattice._check(b)
    out = lattice.bottom
    for l in range(len(lattice)):
        if lattice.leq[lattice.meet[a][l]][b]:
            out = lattice.join[out][l]
    return out


@lru_cache(maxsize=None)
def heyting_table(lattice):
    n = len(lattice)
    return tuple(
        tuple(heyting_implies(lattice, a, b) for b in range(n)) for a in range(n)
    )


def characteristic_tables(lattice):
    """The truth-constant operator family on the lattice itself:
    t[l][x] is top when x equals l and bottom otherwise."""
    n = len(lattice)
    return tuple(
        tuple(lattice.top if x == l else lattice.bottom for x in range(n))
        for l in range(n)
    )


def canonical_subset_order(subsets):
    return tuple(sorted(subsets, key=lambda s: (len(s), sorted(s))))


def _signature_tables(lattice, signature):
    binaries = [lattice.meet, lattice.join]
    unaries = []
    if signature in ("heyting", "lvl"):
        binaries.append(heyting_table(lattice))
    if signature == "lvl":
        unaries.extend(characteristic_tables(lattice))
    return binaries, unaries


def _close_subset(subset, binaries, unaries):
    out = set(subset)
    frontier = True
    while frontier:
        frontier = False
        current = list(out)
        for table in unaries:
            for x in current:
                v = table[x]
                if v not in out:
                    out.add(v)
                    frontier = True
        for table in binaries:
            for x in current:
                row = table[x]
                for y in current:
                    v = row[y]
                    if v not in out:
                        out.add(v)
                        frontier = True
    return frozenset(out)


def enumerate_subalgebras(lattice, signature="bdl", scan_limit=SUBSET_SCAN_LIMIT):
    """Every subset containing the bounds and closed under the signature ops,
    in canonical order (size, then lexicographic over declaration order).

    Power-set scan up to ``scan_limit`` elements; generator-closure search
    above that (the two paths agree, which the tests pin down).
    """
    if signature not in ("bdl", "heyting", "lvl"):
        raise LatticeError(
            "unknown-signature", f"cannot enumerate subalgebras for {signature!r}"
        )
    n = len(lattice)
    binaries, unaries = _signature_tables(lattice, signature)
    base = {lattice.bottom, lattice.top}
    if n <= scan_limit:
        rest = [i for i in range(n) if i not in base]
        found = []
        for r in range(len(rest) + 1):
            for extra in itertools.combinations(rest, r):
                subset = frozenset(base | set(extra))
                if _close_subset(subset, binaries, unaries) == subset:
                    found.append(subset)
        return canonical_subset_order(found)
    seed = _close_subset(frozenset(base), binaries, unaries)
    found = {seed}
    queue = [seed]
    while queue:
        s = queue.pop()
        for x in range(n):
            if x not in s:
                bigger = _close_subset(s | {x}, binaries, unaries)
                if bigger not in found:
                    found.add(bigger)
                    queue.append(bigger)
    return canonical_subset_order(found)


def _is_filter(lattice, subset):
    if not subset or len(subset) == len(lattice):
        return False
    if not lattice.is_upset(subset):
        return False
    return all(lattice.meet[a][b] in subset for a in subset for b in subset)


def _is_prime_filter(lattice, subset):
    if not _is_filter(lattice, subset):
        return False
    n = len(lattice)
    for a in range(n):
        for b in range(n):
            if lattice.join[a][b] in subset and a not in subset and b not in subset:
                return False
    return True


def prime_filters(lattice):
    """All prime filters, canonically ordered by (size, lexicographic)."""
    n = len(lattice)
    if n > FILTER_SCAN_LIMIT:
        raise BudgetExceeded(
            f"prime filter scan over {n} elements exceeds the 2^{FILTER_SCAN_LIMIT} budget"
        )
    found = []
    for mask in range(1 << n):
        subset = frozenset(i for i in range(n) if mask >> i & 1)
        if _is_prime_filter(lattice, subset):
            found.append(subset)
    return canonical_subset_order(found)


def prime_ideals(lattice):
    """Prime ideals as complements of the prime filters, in filter order.

    The parallel ordering makes the complementation bijection positional.
    """
    full = frozenset(range(len(lattice)))
    return tuple(full - f for f in prime_filters(lattice))


def is_prime_ideal(lattice, subset):
    """Direct check of the ideal laws: nonempty, proper, down-closed, closed
    under join, and meet-prime. This is the independent re-verification
    route; it does not go through the filter complementation."""
    subset = frozenset(subset)
    n = len(lattice)
    if not subset or len(subset) == n:
        return False
    for i in subset:
        for j in range(n):
            if lattice.leq[j][i] and j not in subset:
                return False
    if not all(lattice.join[a][b] in subset for a in subset for b in subset):
        return False
    for a in range(n):
        for b in range(n):
            if lattice.meet[a][b] in subset and a not in subset and b not in subset:
                return False
    return True


def separating_prime_ideal(lattice, x, y):
    """First prime ideal (in prime_ideals order) containing exactly one of
    x, y, together with which side it contains.

    Existence is guaranteed by distributivity on finite carriers; the
    classical one-sided statement fails when x is the top, so the symmetric
    form is what is implemented.
    """
    lattice._check(x)
    lattice._check(y)
    if x == y:
        raise LatticeError(
            "equal-elements",
            f"cannot separate {lattice.elements[x]!r} from itself",
            (lattice.elements[x],),
        )
    for ideal in prime_ideals(lattice):
        has_x, has_y = x in ideal, y in ideal
        if has_x != has_y:
            return ideal, "contains-x" if has_x else "contains-y"
    raise LatticeError(
        "separation-failed",
        f"no prime ideal separates {lattice.elements[x]!r} from {lattice.elements[y]!r}",
        (lattice.elements[x], lattice.elements[y]),
    )


def upset_of(poset, x):
    """R(x) as a frozenset of indices."""
    return poset.upset(x)


def downset_preimage(poset, subset):
    """R^{-1}(X0): the down-closure of the subset."""
    return poset.down_closure(subset)
