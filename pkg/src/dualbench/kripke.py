"""Intuitionistic frames and frame-indexed powers of the truth lattice.

The power carrier is *all* functions from worlds to truth values; monotone
subfamilies arise by closing a generating set. The implication is not
pointwise: at a world it is the meet, over every world above, of the
pointwise Heyting implications.
"""

from __future__ import annotations

import itertools
from dataclasses import replace

from .algebra import (
    Algebra,
    PowerPresentation,
    _validate,
    enumerate_homs,
    hom_leq,
    make_bdl,
    vector_name,
)
from .errors import AlgebraError, BudgetExceeded
from .lattice import FiniteLattice, _close_subset, heyting_table
from .reporting import PASS, failed

DEFAULT_POWER_BUDGET = 4096


def build_frame(worlds, order_pairs, name="frame"):
    """An intuitionistic frame is just a finite poset of worlds."""
    from .lattice import build_poset

    return build_poset(worlds, order_pairs, name=name)


def intuitionistic_power(truth, frame, budget=DEFAULT_POWER_BUDGET, name=None):
    """The full power of the truth lattice over a frame, with pointwise
    lattice operations and the frame-relativized implication
    (f -> g)(w) = meet over w <= w' of f(w') -> g(w').

    Truth-constant operators are attached pointwise as well; homomorphism
    checks in the isp_i signature ignore them, but they are definable and
    occasionally useful.
    """
    nw, nt = len(frame), len(truth)
    if nt**nw > budget:
        raise BudgetExceeded(
            f"power carrier {nt}^{nw} exceeds the budget of {budget} elements"
        )
    vectors = tuple(itertools.product(range(nt), repeat=nw))
    pos = {v: i for i, v in enumerate(vectors)}
    names = tuple(vector_name(truth, v) for v in vectors)
    leq = tuple(
        tuple(all(truth.leq[x][y] for x, y in zip(u, v)) for v in vectors)
        for u in vectors
    )
    meet = tuple(
        tuple(pos[tuple(truth.meet[x][y] for x, y in zip(u, v))] for v in vectors)
        for u in vectors
    )
    join = tuple(
        tuple(pos[tuple(truth.join[x][y] for x, y in zip(u, v))] for v in vectors)
        for u in vectors
    )
    lattice = FiniteLattice(
        names,
        leq,
        meet,
        join,
        pos[(truth.bottom,) * nw],
        pos[(truth.top,) * nw],
        name=name or f"{truth.name}^{frame.name}",
    )
    hey = heyting_table(truth)
    upsets = [sorted(frame.upset(w)) for w in range(nw)]

    def d0(u, v):
        out = []
        for w in range(nw):
            val = truth.top
            for w2 in upsets[w]:
                val = truth.meet[val][hey[u[w2]][v[w2]]]
            out.append(val)
        return tuple(out)

    implies = tuple(
        tuple(pos[d0(u, v)] for v in vectors) for u in vectors
    )
    t_ops = tuple(
        tuple(
            pos[tuple(truth.top if x == l else truth.bottom for x in v)]
            for v in vectors
        )
        for l in range(nt)
    )
    return _validate(
        Algebra(
            "isp_i",
            lattice,
            truth,
            implies=implies,
            t_ops=t_ops,
            presentation=PowerPresentation(frame, vectors),
        )
    )


def subalgebra_generated(power, generators, name=None):
    """Closure of the generators (plus bounds) under meet, join and the
    frame-relativized implication, as an isp_i algebra carrying its power
    presentation. Generators are indices into the power carrier."""
    if power.presentation is None:
        raise AlgebraError(
            "not-a-power", f"{power.name!r} does not carry a power presentation"
        )
    n = len(power)
    for g in generators:
        if not 0 <= g < n:
            raise AlgebraError(
                "unknown-generator", f"generator index {g} is outside the power carrier"
            )
    lat = power.lattice
    closed = _close_subset(
        frozenset(generators) | {lat.bottom, lat.top},
        [lat.meet, lat.join, power.implies],
        [],
    )
    from .algebra import subalgebra_of

    try:
        sub = subalgebra_of(power, closed, name=name)
    except AlgebraError:
        # the truth-constant family need not restrict; drop it
        sub = subalgebra_of(replace(power, t_ops=None), closed, name=name)
    gen_vectors = tuple(power.presentation.vectors[g] for g in sorted(generators))
    return replace(
        sub, presentation=replace(sub.presentation, generators=gen_vectors)
    )


def monotone_vector_indices(power):
    """Indices of the order-preserving world-to-truth vectors in a power."""
    frame = power.presentation.frame
    truth = power.truth
    nw = len(frame)
    out = []
    for i, vec in enumerate(power.presentation.vectors):
        if all(
            truth.leq[vec[w]][vec[w2]]
            for w in range(nw)
            for w2 in range(nw)
            if frame.leq[w][w2]
        ):
            out.append(i)
    return tuple(out)


def upset_algebra(truth, frame, budget=DEFAULT_POWER_BUDGET, name=None):
    """The subalgebra generated by every order-preserving vector; over the
    two-element truth lattice this is the Heyting algebra of up-sets."""
    power = intuitionistic_power(truth, frame, budget=budget)
    return subalgebra_generated(
        power, monotone_vector_indices(power), name=name or f"up({frame.name})"
    )


def kripke_condition_check(algebra):
    """The intuitionistic Kripke model condition: for every hom v of the
    bounded-lattice reduct into the truth lattice, and all x, y,
    v(x -> y) must equal the meet of w(x) -> w(y) over all homs w above v
    in the pointwise order. Witness is (v, x, y) on failure."""
    if algebra.signature != "isp_i":
        raise AlgebraError(
            "signature-mismatch",
            f"Kripke condition check needs an isp_i algebra, got {algebra.signature}",
        )
    truth = algebra.truth
    reduct = make_bdl(algebra.lattice, truth)
    target = make_bdl(truth, truth)
    homs = enumerate_homs(reduct, target)
    hey = heyting_table(truth)
    n = len(algebra)
    above = [
        [w for w in homs if hom_leq(v, w)] for v in homs
    ]
    for vi, v in enumerate(homs):
        succ = above[vi]
        for x in range(n):
            for y in range(n):
                expected = truth.top
                for w in succ:
                    expected = truth.meet[expected][hey[w.mapping[x]][w.mapping[y]]]
                if v.mapping[algebra.implies[x][y]] != expected:
                    return failed(
                        f"hom h{vi} [{v.describe()}]: v(x->y) != meet of "
                        f"w(x)->w(y) at x={algebra.element_name(x)}, "
                        f"y={algebra.element_name(y)}"
                    )
    return PASS
