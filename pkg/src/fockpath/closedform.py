"""The closed formulas: same-residue node moves, decomposition polynomials,
branching coefficients, and the two-sided consistency identity.

A move on a partition adds a set of indent r-nodes and removes a set of
removable r-nodes, all of one residue r; positions are recorded by column.
The decomposition polynomial attached to a move is the norm generating
function of the well-nested collections of the move's sign sequence, and
is nonzero exactly when the added columns match perfectly onto the removed
ones.
"""

from __future__ import annotations

from dataclasses import dataclass

from .laurent import LaurentPolynomial, ZERO, quantum_integer
from .latticepath import WellNestedCollection, well_nested_collections
from .partitions import Partition, boundary_nodes, cells, check_partition, residue
from .signseq import SignSequence, bijective, onto, unpaired_plus, valley_set
from . import bijection as _bijection


def sign_sequence_of(lam: Partition, e: int, r: int) -> SignSequence:
    """Columns of removable r-nodes as plus, columns of indent r-nodes as
    minus; the left-to-right order of the nodes is the column order."""
    removable, indent = boundary_nodes(lam, e, r)
    return SignSequence(
        frozenset(n[1] for n in removable), frozenset(n[1] for n in indent)
    )


@dataclass(frozen=True)
class MoveSpec:
    """A same-residue node move on lam, recorded by columns.

    ``added`` may overlap ``removed``; only the symmetric difference acts,
    so added - removed must be indent columns and removed - added removable
    columns.
    """

    lam: Partition
    e: int
    r: int
    added: frozenset[int]
    removed: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "lam", check_partition(self.lam))
        object.__setattr__(self, "added", frozenset(self.added))
        object.__setattr__(self, "removed", frozenset(self.removed))
        t = sign_sequence_of(self.lam, self.e, self.r)
        if not (self.added - self.removed) <= t.minus:
            raise ValueError(
                f"added columns {sorted(self.added - self.removed - t.minus)} are not indent columns"
            )
        if not (self.removed - self.added) <= t.plus:
            raise ValueError(
                f"removed columns {sorted(self.removed - self.added - t.plus)} are not removable columns"
            )

    @property
    def sign_sequence(self) -> SignSequence:
        return sign_sequence_of(self.lam, self.e, self.r)

    @property
    def target(self) -> Partition:
        return apply_move(self.lam, self.e, self.r, self.added, self.removed)

    @property
    def is_identity(self) -> bool:
        return self.added == self.removed


def apply_move(
    lam: Partition, e: int, r: int, added, removed
) -> Partition:
    """lam with the indent r-nodes in the added columns put in and the
    removable r-nodes in the removed columns taken out."""
    added = frozenset(added)
    removed = frozenset(removed)
    removable, indent = boundary_nodes(lam, e, r)
    add_nodes = {n[1]: n for n in indent}
    rem_nodes = {n[1]: n for n in removable}
    rows = list(lam)
    for col in added - removed:
        i, _ = add_nodes[col]
        if i == len(rows) + 1:
            rows.append(1)
        else:
            rows[i - 1] += 1
    for col in removed - added:
        i, _ = rem_nodes[col]
        rows[i - 1] -= 1
    while rows and rows[-1] == 0:
        rows.pop()
    return check_partition(rows)


def detect_move(lam: Partition, nu: Partition, e: int) -> MoveSpec | None:
    """Recover the (r, added, removed) move carrying lam to nu, or None.

    Succeeds when the diagram difference consists of indent nodes of lam
    (gained) and removable nodes of lam (lost), all of one residue.
    """
    lam = check_partition(lam)
    nu = check_partition(nu)
    if sum(lam) != sum(nu):
        raise ValueError(f"size mismatch: |{lam}| != |{nu}|")
    if lam == nu:
        return MoveSpec(lam=lam, e=e, r=0, added=frozenset(), removed=frozenset())
    gained = set(cells(nu)) - set(cells(lam))
    lost = set(cells(lam)) - set(cells(nu))
    residues = {residue(n, e) for n in gained | lost}
    if len(residues) != 1:
        return None
    r = residues.pop()
    removable, indent = boundary_nodes(lam, e, r)
    if not gained <= set(indent) or not lost <= set(removable):
        return None
    return MoveSpec(
        lam=lam,
        e=e,
        r=r,
        added=frozenset(n[1] for n in gained),
        removed=frozenset(n[1] for n in lost),
    )


def decomposition_paths(move: MoveSpec) -> tuple[WellNestedCollection, ...]:
    """The well-nested collections indexing the move's polynomial; empty
    when the added columns do not match perfectly onto the removed ones."""
    if not bijective(move.added, move.removed):
        return ()
    return well_nested_collections(move.sign_sequence, move.added, move.removed)


def decomposition_polynomial(move: MoveSpec) -> LaurentPolynomial:
    """Sum of v^norm over the move's well-nested collections.

    Equals 1 for the identity move and lies in v*N0[v] for any nonempty
    move; 0 when the matching of added to removed columns is imperfect.
    """
    total = ZERO
    for collection in decomposition_paths(move):
        total = total + LaurentPolynomial.monomial(collection.norm)
    return total


def branching_coefficient(
    lam: Partition, e: int, r: int, added, removed
) -> LaurentPolynomial:
    """Coefficient of the moved target in f_r applied to a canonical element.

    Zero unless the move adds a single node whose column is a valley of the
    sign sequence (and removes nothing); then it is the quantum integer of
    one plus the number of unpaired plus columns to the right.
    """
    added = frozenset(added)
    removed = frozenset(removed)
    if len(added) != len(removed) + 1 or not onto(added, removed):
        raise ValueError(
            "branching needs |added| = |removed| + 1 with added onto removed"
        )
    t = sign_sequence_of(lam, e, r)
    if removed or len(added) != 1:
        return ZERO
    (a,) = added
    if a not in valley_set(t):
        return ZERO
    k = 1 + len([u for u in unpaired_plus(t) if u > a])
    return quantum_integer(k)


def consistency_sums(
    lam: Partition, e: int, r: int, added, removed
) -> tuple[LaurentPolynomial, LaurentPolynomial]:
    """Both closed-form evaluations of the same induction coefficient.

    The left sum expands over single-column completions of the move; the
    right sum expands over valley insertions weighted by quantum-integer
    monomials.  The two generating functions agree (that identity is what
    the norm-preserving bijection certifies), including for e-singular lam.
    """
    t = sign_sequence_of(lam, e, r)
    a = frozenset(added)
    b = frozenset(removed)
    left = _sum_norms(_bijection.left_elements(t, a, b))
    right = _sum_norms(_bijection.right_elements(t, a, b))
    return left, right


def _sum_norms(elements) -> LaurentPolynomial:
    total = ZERO
    for el in elements:
        total = total + LaurentPolynomial.monomial(el.norm)
    return total


def delete_first_row(lam: Partition) -> Partition:
    if not lam:
        raise ValueError("the empty partition has no first row")
    return lam[1:]


def admissible_moves(
    lam: Partition, e: int, r: int, max_size: int | None = None
) -> list[MoveSpec]:
    """All moves from lam at residue r with a perfect added/removed matching
    (the identity move included), optionally capped by |added|."""
    from itertools import combinations

    t = sign_sequence_of(lam, e, r)
    out = []
    minus = sorted(t.minus)
    plus = sorted(t.plus)
    top = min(len(minus), len(plus))
    if max_size is not None:
        top = min(top, max_size)
    for k in range(top + 1):
        for a in combinations(minus, k):
            for b in combinations(plus, k):
                if bijective(a, b):
                    out.append(
                        MoveSpec(lam=lam, e=e, r=r, added=frozenset(a), removed=frozenset(b))
                    )
    return out
