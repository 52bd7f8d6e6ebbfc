"""The two index sets of the induction identity and the recursive
norm-preserving bijection between them.

For a sign sequence T with A among its minus positions, B among its plus
positions, |A| = |B| + 1 and A onto B:

* a left element is a completion column c (a non-removed plus, or a member
  of A pairing with itself) together with a well-nested collection for the
  matching of A to B + c;
* a right element is a valley d with A onto B + d, a marker d' that is d
  itself or an unpaired plus beyond it, and a well-nested collection for
  the matching of A to B + d in T with d flipped to plus.

The two norm multisets always agree; build_bijection produces an explicit
norm-preserving bijection by recursion (strip a pair with empty plus
interior, or split along the plus closest below a removed column).  Every
structural assumption of the construction is asserted at runtime, and any
failure raises ConstructionError tagged with the corner that broke, so
callers can fall back to the multiset check.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .latticepath import (
    LatticedPath,
    WellNestedCollection,
    is_valid_path,
    is_well_nested,
    make_collection,
    well_nested_collections,
)
from .signseq import SignSequence, match_pairs, onto, unpaired_plus, valley_set


class ConstructionError(RuntimeError):
    """The explicit bijection could not be built on this instance.

    ``corner`` names the construction step that failed; the instance
    data rides along for reporting.
    """

    def __init__(self, corner: str, detail: str, t: SignSequence, a, b):
        self.corner = corner
        self.instance = (t, frozenset(a), frozenset(b))
        super().__init__(
            f"[{corner}] {detail} (plus={sorted(t.plus)}, minus={sorted(t.minus)}, "
            f"A={sorted(a)}, B={sorted(b)})"
        )


@dataclass(frozen=True)
class LeftElement:
    position: int
    collection: WellNestedCollection
    norm: int


@dataclass(frozen=True)
class RightElement:
    valley: int
    marker: int
    collection: WellNestedCollection
    norm: int


def _check_instance(t: SignSequence, a: frozenset[int], b: frozenset[int]) -> None:
    if not a <= t.minus:
        raise ValueError(f"A={sorted(a)} must consist of minus positions")
    if not b <= t.plus:
        raise ValueError(f"B={sorted(b)} must consist of plus positions")
    if len(a) != len(b) + 1:
        raise ValueError(f"need |A| = |B| + 1, got {len(a)} and {len(b)}")
    if not onto(a, b):
        raise ValueError(f"A={sorted(a)} is not onto B={sorted(b)}")


def _left(t: SignSequence, a, b, c: int, coll: WellNestedCollection) -> LeftElement:
    norm = (
        2 * (sum(1 for x in b if x > c) - sum(1 for x in a if x > c))
        - t.suffix(c).size
        + coll.norm
    )
    return LeftElement(position=c, collection=coll, norm=norm)


def _right(t: SignSequence, d: int, dp: int, coll: WellNestedCollection) -> RightElement:
    norm = 2 * t.half_open(d, dp).size - t.suffix(d).size + coll.norm
    return RightElement(valley=d, marker=dp, collection=coll, norm=norm)


def left_elements(
    t: SignSequence, a, b
) -> tuple[LeftElement, ...]:
    a, b = frozenset(a), frozenset(b)
    _check_instance(t, a, b)
    out = []
    for c in sorted((t.plus | a) - b):
        if not onto(a, b | {c}):
            continue
        for coll in well_nested_collections(t, a, b | {c}):
            out.append(_left(t, a, b, c, coll))
    return tuple(out)


def right_elements(
    t: SignSequence, a, b
) -> tuple[RightElement, ...]:
    a, b = frozenset(a), frozenset(b)
    _check_instance(t, a, b)
    out = []
    unpaired = unpaired_plus(t)
    for d in sorted(valley_set(t)):
        if not onto(a, b | {d}):
            continue
        colls = well_nested_collections(t.shift_up(d), a, b | {d})
        for dp in sorted({d} | {u for u in unpaired if u > d}):
            for coll in colls:
                out.append(_right(t, d, dp, coll))
    return tuple(out)


def norm_multisets_match(t: SignSequence, a, b) -> bool:
    """Whether the left and right norm multisets coincide (the computational
    content of the identity; always true in every tested regime)."""
    lhs = Counter(el.norm for el in left_elements(t, a, b))
    rhs = Counter(el.norm for el in right_elements(t, a, b))
    return lhs == rhs


# -- the explicit bijection ------------------------------------------------


def build_bijection(t: SignSequence, a, b) -> dict[LeftElement, RightElement]:
    """Explicit norm-preserving bijection from left to right elements.

    Raises ConstructionError when a proof-step assumption fails on the
    instance; the result is otherwise verified total, injective, onto and
    norm-preserving before being returned.
    """
    a, b = frozenset(a), frozenset(b)
    _check_instance(t, a, b)
    mapping = _build(t, a, b)
    lefts = left_elements(t, a, b)
    rights = right_elements(t, a, b)
    if set(mapping) != set(lefts):
        raise ConstructionError("verify", "map domain differs from the left set", t, a, b)
    if len(set(mapping.values())) != len(mapping):
        raise ConstructionError("verify", "map is not injective", t, a, b)
    if set(mapping.values()) != set(rights):
        raise ConstructionError("verify", "map image differs from the right set", t, a, b)
    for el, img in mapping.items():
        if el.norm != img.norm:
            raise ConstructionError(
                "verify", f"norm {el.norm} mapped to {img.norm}", t, a, b
            )
    return mapping


def _build(t: SignSequence, a: frozenset[int], b: frozenset[int]):
    if not b:
        return _base_case(t, next(iter(a)))
    empty_pairs = [
        (x, y) for x in a for y in b if x < y and not t.between(x, y).plus
    ]
    if empty_pairs:
        return _case_strip(t, a, b, empty_pairs)
    return _case_split(t, a, b)


# -- base case: a single added column --------------------------------------


def _descending_path(t: SignSequence, a: frozenset[int], b: frozenset[int], lo: int, hi: int) -> LatticedPath:
    """Every matched pair of the window (lo, hi) flattened; no up-stroke may
    survive."""
    window = t.between(lo, hi)
    m = window.matching()
    if m.unpaired_openers:
        raise ConstructionError(
            "base-descending",
            f"window ({lo},{hi}) keeps unmatched up-strokes at {sorted(m.unpaired_openers)}",
            t, a, b,
        )
    return LatticedPath(window, frozenset(m.pairs))


def _base_case(t: SignSequence, a0: int):
    a = frozenset({a0})
    b: frozenset[int] = frozenset()
    valleys = valley_set(t)
    full = t.matching()
    mapping = {}
    for el in left_elements(t, a, b):
        c = el.position
        if c == a0:
            if a0 in valleys:
                coll = make_collection(
                    t.shift_up(a0), [(a0, a0, LatticedPath.empty())]
                )
                mapping[el] = _right(t, a0, a0, coll)
            else:
                later = sorted(v for v in valleys if v > a0)
                if not later:
                    raise ConstructionError("base", "no valley beyond the added column", t, a, b)
                d = later[0]
                path = _descending_path(t, a, b, a0, d)
                coll = make_collection(t.shift_up(d), [(a0, d, path)])
                mapping[el] = _right(t, d, d, coll)
            continue
        gamma = el.collection.path_of(a0)
        if c in full.unpaired_openers:
            mapping[el] = _truncation_image(t, a, b, a0, c, gamma, valleys)
        else:
            mapping[el] = _extension_image(t, a, b, a0, c, gamma, valleys)
    return mapping


def _truncation_image(t, a, b, a0, c, gamma, valleys):
    """Unpaired completion column: cut the path at the last minus position
    not covered by a flattened pair; everything beyond it is forced."""
    covered = set()
    for u, w in gamma.flattened:
        covered.update(x for x in t.positions if u <= x <= w)
    candidates = [x for x in t.minus if x < c and x not in covered]
    if not candidates:
        raise ConstructionError("base-truncation", "no uncovered minus below the column", t, a, b)
    d = max(candidates)
    if d not in valleys:
        raise ConstructionError("base-truncation", f"cut position {d} is not a valley", t, a, b)
    kept = frozenset(p for p in gamma.flattened if p[1] < d)
    if any(u < d <= w for u, w in gamma.flattened - kept):
        raise ConstructionError("base-truncation", f"a flattened pair straddles {d}", t, a, b)
    if d == a0:
        if kept:
            raise ConstructionError("base-truncation", "flattened pairs below the added column", t, a, b)
        path = LatticedPath.empty()
    else:
        path = LatticedPath(t.between(a0, d), kept)
        if not is_valid_path(path):
            raise ConstructionError("base-truncation", "cut path is not a latticed path", t, a, b)
    coll = make_collection(t.shift_up(d), [(a0, d, path)])
    return _right(t, d, c, coll)


def _extension_image(t, a, b, a0, c, gamma, valleys):
    """Paired completion column: keep its up-stroke and descend to the next
    valley, flattening the whole stretch in between."""
    later = sorted(v for v in valleys if v > c)
    if not later:
        raise ConstructionError("base-extension", "no valley beyond the paired column", t, a, b)
    d = later[0]
    window = t.between(a0, d)
    wpairs = set(window.matching().pairs)
    if not gamma.flattened <= wpairs:
        raise ConstructionError(
            "base-extension", "existing flattenings are not pairs of the longer window", t, a, b
        )
    extra = {p for p in wpairs if p[0] > c}
    ups_between = {x for x in t.plus if c < x < d}
    if ups_between - {u for u, _ in extra}:
        raise ConstructionError(
            "base-descending",
            f"up-strokes {sorted(ups_between - {u for u, _ in extra})} survive between {c} and {d}",
            t, a, b,
        )
    path = LatticedPath(window, gamma.flattened | extra)
    if not is_valid_path(path):
        raise ConstructionError("base-extension", "extended path is not a latticed path", t, a, b)
    coll = make_collection(t.shift_up(d), [(a0, d, path)])
    return _right(t, d, d, coll)


# -- strip case: some pair encloses no plus position ------------------------


def _entry_by_opener(entries, opener):
    for e in entries:
        if e[0] == opener:
            return e
    return None


def _entry_by_closer(entries, closer):
    for e in entries:
        if e[1] == closer and e[0] != e[1]:
            return e
    return None


def _expected_pairs(a, closers) -> tuple[tuple[int, int], ...]:
    return match_pairs(a, closers).all_pairs()


def _case_strip(t: SignSequence, a: frozenset[int], b: frozenset[int], empty_pairs):
    b0 = min(y for _, y in empty_pairs)
    a0 = max(x for x, y in empty_pairs if y == b0)
    inner_a = {x for x in a if a0 < x < b0}
    if inner_a:
        a0 = max(inner_a)
    window0 = t.between(a0, b0)
    if window0.plus:
        raise ConstructionError("strip", "normalisation exposed plus positions", t, a, b)
    if window0.minus & a:
        raise ConstructionError("strip", "normalisation left members of A inside", t, a, b)
    a2, b2 = a - {a0}, b - {b0}
    shift = 1 + len(window0.minus)

    sub = _build(t, a2, b2)

    phi = {}
    for el in left_elements(t, a, b):
        image = _strip_left(t, a, b, a2, b2, a0, b0, el)
        if el.norm - image.norm != shift:
            raise ConstructionError("strip", f"left shift {el.norm - image.norm} != {shift}", t, a, b)
        phi[el] = image
    _assert_bijection_onto(phi, left_elements(t, a2, b2), "strip-left", t, a, b)

    psi = {}
    for rel in right_elements(t, a, b):
        image = _strip_right(t, a, b, a2, b2, a0, b0, el=rel)
        if rel.norm - image.norm != shift:
            raise ConstructionError("strip", f"right shift {rel.norm - image.norm} != {shift}", t, a, b)
        psi[rel] = image
    _assert_bijection_onto(psi, right_elements(t, a2, b2), "strip-right", t, a, b)

    inv_psi = {img: rel for rel, img in psi.items()}
    return {el: inv_psi[sub[phi[el]]] for el in phi}


def _assert_bijection_onto(mapping, codomain, corner, t, a, b):
    values = list(mapping.values())
    if len(set(values)) != len(values) or set(values) != set(codomain):
        raise ConstructionError(corner, "reduction is not a bijection onto the smaller set", t, a, b)


def _strip_left(t, a, b, a2, b2, a0, b0, el: LeftElement) -> LeftElement:
    c = el.position
    entries = list(el.collection.entries)
    dropped = _entry_by_opener(entries, a0)
    rest = [e for e in entries if e is not dropped]
    if c == a0:
        if dropped[1] != a0:
            raise ConstructionError("strip-pairing", f"{a0} is not self-paired at its own column", t, a, b)
        new_c = b0
    else:
        if dropped[1] != b0:
            raise ConstructionError(
                "strip-pairing", f"{a0} pairs with {dropped[1]} instead of {b0}", t, a, b
            )
        new_c = c
    if _expected_pairs(a2, b2 | {new_c}) != tuple(sorted((x, y) for x, y, _ in rest)):
        raise ConstructionError("strip-pairing", "remaining windows shift under the strip", t, a, b)
    return _left(t, a2, b2, new_c, make_collection(t, rest))


def _strip_right(t, a, b, a2, b2, a0, b0, el: RightElement) -> RightElement:
    d, dp = el.valley, el.marker
    base = t.shift_up(d)
    entries = list(el.collection.entries)
    if a0 < d < b0:
        # An interior valley is forced to sit immediately before b0: being a
        # valley leaves no room for further minus positions, and the strip
        # pair encloses no plus.  The stripped opener pairs with d, so its
        # window is forced generic; the window that closed at b0 is re-aimed
        # at d, losing only the stroke at d itself.
        if t.half_open(d, b0).positions != (b0,):
            raise ConstructionError(
                "strip-interior-valley",
                f"positions remain between interior valley {d} and {b0}",
                t, a, b,
            )
        dropped = _entry_by_opener(entries, a0)
        if dropped[1] != d or dropped[2].flattened:
            raise ConstructionError(
                "strip-interior-valley",
                f"{a0} does not carry the forced generic window to {d}",
                t, a, b,
            )
        carrier = _entry_by_closer(entries, b0)
        if carrier is None:
            raise ConstructionError("strip-interior-valley", f"no window closes at {b0}", t, a, b)
        y, _, path_y = carrier
        if any(w >= d for _, w in path_y.flattened):
            raise ConstructionError(
                "strip-interior-valley",
                f"flattened pairs of the ({y},{b0}) window reach past {d}",
                t, a, b,
            )
        new_path = LatticedPath(base.between(y, d), path_y.flattened)
        if not is_valid_path(new_path):
            raise ConstructionError("strip-interior-valley", "re-aimed path is invalid", t, a, b)
        rest = [e for e in entries if e is not dropped and e is not carrier]
        rest.append((y, d, new_path))
    elif d == a0:
        dropped = _entry_by_opener(entries, a0)
        if dropped[1] != a0:
            raise ConstructionError("strip-pairing", f"{a0} is not self-paired at valley {d}", t, a, b)
        carrier = _entry_by_closer(entries, b0)
        if carrier is None:
            raise ConstructionError("strip-pairing", f"no window closes at {b0}", t, a, b)
        y, _, path_y = carrier
        if any(w >= a0 for _, w in path_y.flattened) or any(u >= a0 for u, _ in path_y.flattened):
            raise ConstructionError(
                "strip-truncation",
                f"flattened pairs of the ({y},{b0}) window reach past {a0}",
                t, a, b,
            )
        new_path = LatticedPath(base.between(y, a0), path_y.flattened)
        if not is_valid_path(new_path):
            raise ConstructionError("strip-truncation", "cut path is invalid", t, a, b)
        rest = [e for e in entries if e is not dropped and e is not carrier]
        rest.append((y, a0, new_path))
    else:
        dropped = _entry_by_opener(entries, a0)
        if dropped[1] != b0:
            raise ConstructionError(
                "strip-pairing",
                f"{a0} pairs with {dropped[1]} instead of {b0} at valley {d}",
                t, a, b,
            )
        rest = [e for e in entries if e is not dropped]
    if _expected_pairs(a2, b2 | {d}) != tuple(sorted((x, y) for x, y, _ in rest)):
        raise ConstructionError("strip-pairing", "remaining windows shift under the strip", t, a, b)
    if not is_well_nested(base, rest):
        raise ConstructionError("strip", "stripped collection is no longer well-nested", t, a, b)
    return _right(t, d, dp, make_collection(base, rest))


# -- split case: every pair encloses a plus position ------------------------


def _case_split(t: SignSequence, a: frozenset[int], b: frozenset[int]):
    pairs_ab = [(x, y) for x in a for y in b if x < y]
    if not pairs_ab:
        raise ConstructionError("split", "no opener below any removed column", t, a, b)
    sizes = {p: len(t.between(*p).plus) for p in pairs_ab}
    m0 = min(sizes.values())
    if m0 == 0:
        raise ConstructionError("split", "dispatch error: an empty plus interior remains", t, a, b)
    cands = [p for p in pairs_ab if sizes[p] == m0]
    b0 = min(y for _, y in cands)
    a0 = max(x for x, y in cands if y == b0)
    inner_a = {x for x in a if a0 < x < b0}
    if inner_a:
        a0 = max(inner_a)
    window0 = t.between(a0, b0)
    if len(window0.plus) != m0:
        raise ConstructionError("split", "normalisation changed the minimal interior", t, a, b)
    if window0.minus & a or window0.plus & b:
        raise ConstructionError("split", "chosen pair keeps A or B members inside", t, a, b)
    b1 = max(window0.plus)
    btil = (b - {b0}) | {b1}
    interior = t.between(b1, b0)
    if interior.plus:
        raise ConstructionError("split", "plus positions between the split column and the removed column", t, a, b)
    shift = 1 + len(interior.minus)

    if not onto(a, btil):
        raise ConstructionError("split", "A is not onto the shifted removal set", t, a, b)
    sub1 = _build(t, a, btil)

    if interior.positions:
        a2 = min(interior.positions)
        tprime = SignSequence(t.plus - {b1}, t.minus - {a2})
        if not onto(a, b):
            raise ConstructionError("split", "A not onto B in the reduced sequence", t, a, b)
        sub2 = _build(tprime, a, b)
    else:
        a2 = None
        tprime = None
        sub2 = None

    phi1 = {}
    for el in left_elements(t, a, btil):
        image = _split_left_extend(t, a, b, btil, a0, b0, b1, el)
        if image.norm - el.norm != shift:
            raise ConstructionError("split", f"phi1 shift {image.norm - el.norm} != {shift}", t, a, b)
        phi1[el] = image
    phi2 = {}
    if tprime is not None:
        for el in left_elements(tprime, a, b):
            image = _split_left_insert(t, tprime, a, b, b1, a2, el)
            if image.norm != el.norm:
                raise ConstructionError("split", "phi2 is not norm-preserving", t, a, b)
            phi2[el] = image
    _assert_partition(
        list(phi1.values()), list(phi2.values()), left_elements(t, a, b), "split-left", t, a, b
    )

    psi1 = {}
    mstar = max(t.prefix(b0).positions)
    for rel in right_elements(t, a, btil):
        image = _split_right_extend(t, a, b, btil, a0, b0, b1, mstar, rel)
        if image.norm - rel.norm != shift:
            raise ConstructionError("split", f"psi1 shift {image.norm - rel.norm} != {shift}", t, a, b)
        psi1[rel] = image
    psi2 = {}
    if tprime is not None:
        for rel in right_elements(tprime, a, b):
            image = _split_right_insert(t, tprime, a, b, b1, a2, rel)
            if image.norm != rel.norm:
                raise ConstructionError("split", "psi2 is not norm-preserving", t, a, b)
            psi2[rel] = image
    _assert_partition(
        list(psi1.values()), list(psi2.values()), right_elements(t, a, b), "split-right", t, a, b
    )

    inv_phi1 = {img: el for el, img in phi1.items()}
    inv_phi2 = {img: el for el, img in phi2.items()}
    out = {}
    for el in left_elements(t, a, b):
        if el in inv_phi1:
            out[el] = psi1[sub1[inv_phi1[el]]]
        else:
            out[el] = psi2[sub2[inv_phi2[el]]]
    return out


def _assert_partition(part1, part2, whole, corner, t, a, b):
    combined = part1 + part2
    if len(set(combined)) != len(combined) or set(combined) != set(whole):
        raise ConstructionError(
            corner, "the two reductions do not partition the index set", t, a, b
        )


def _split_left_extend(t, a, b, btil, a0, b0, b1, el: LeftElement) -> LeftElement:
    """Re-aim the window that closes at the split column so it closes at the
    removed column, extending its path generically."""
    c = el.position
    if c == b0:
        return _left(t, a, b, b1, el.collection)
    entries = list(el.collection.entries)
    carrier = _entry_by_closer(entries, b1)
    if carrier is None:
        raise ConstructionError("split-pairing", f"no window closes at {b1}", t, a, b)
    a1, _, path1 = carrier
    new_path = LatticedPath(t.between(a1, b0), path1.flattened)
    if not is_valid_path(new_path):
        raise ConstructionError("split-pairing", "extended path is invalid", t, a, b)
    rest = [e for e in entries if e is not carrier]
    rest.append((a1, b0, new_path))
    if _expected_pairs(a, b | {c}) != tuple(sorted((x, y) for x, y, _ in rest)):
        raise ConstructionError("split-pairing", "other windows shift under the extension", t, a, b)
    if not is_well_nested(t, rest):
        raise ConstructionError("split-pairing", "extended collection is not well-nested", t, a, b)
    return _left(t, a, b, c, make_collection(t, rest))


def _split_left_insert(t, tprime, a, b, b1, a2, el: LeftElement) -> LeftElement:
    """Reinstate the adjacent plus/minus pair as a flattened ridge inside
    every window that spans it."""
    c = el.position
    entries = []
    for x, y, path in el.collection.entries:
        if x < b1 < y:
            new = LatticedPath(t.between(x, y), path.flattened | {(b1, a2)})
        elif x == y:
            new = path
        else:
            new = LatticedPath(t.between(x, y), path.flattened)
        if not is_valid_path(new):
            raise ConstructionError("split-insert", "inserted ridge breaks a path", t, a, b)
        entries.append((x, y, new))
    if _expected_pairs(a, b | {c}) != tuple(sorted((x, y) for x, y, _ in entries)):
        raise ConstructionError("split-insert", "pairing changed under reinstatement", t, a, b)
    if not is_well_nested(t, entries):
        raise ConstructionError("split-insert", "reinstated collection is not well-nested", t, a, b)
    return _left(t, a, b, c, make_collection(t, entries))


def _split_right_extend(t, a, b, btil, a0, b0, b1, mstar, rel: RightElement) -> RightElement:
    d, dp = rel.valley, rel.marker
    base = t.shift_up(d)
    entries = list(rel.collection.entries)
    if d != mstar:
        carrier = _entry_by_closer(entries, b1)
        if carrier is None:
            raise ConstructionError("split-pairing", f"no window closes at {b1} (valley {d})", t, a, b)
        a1, _, path1 = carrier
        new_path = LatticedPath(base.between(a1, b0), path1.flattened)
        rest = [e for e in entries if e is not carrier]
        rest.append((a1, b0, new_path))
    else:
        first = _entry_by_opener(entries, a0)
        if first is None or first[1] != b1:
            raise ConstructionError(
                "split-pairing", f"{a0} does not pair with the split column at valley {d}", t, a, b
            )
        second = _entry_by_closer(entries, d)
        if second is None:
            raise ConstructionError("split-pairing", f"no window closes at the valley {d}", t, a, b)
        ap, _, path_ap = second
        rest = [e for e in entries if e is not first and e is not second]
        rest.append((a0, d, LatticedPath(base.between(a0, d), first[2].flattened)))
        rest.append((ap, b0, LatticedPath(base.between(ap, b0), path_ap.flattened)))
    for x, y, path in rest:
        if x != y and not is_valid_path(path):
            raise ConstructionError("split-pairing", "re-aimed path is invalid", t, a, b)
    if _expected_pairs(a, b | {d}) != tuple(sorted((x, y) for x, y, _ in rest)):
        raise ConstructionError("split-pairing", "windows shift under the right extension", t, a, b)
    if not is_well_nested(base, rest):
        raise ConstructionError("split-pairing", "extended right collection is not well-nested", t, a, b)
    return _right(t, d, dp, make_collection(base, rest))


def _split_right_insert(t, tprime, a, b, b1, a2, rel: RightElement) -> RightElement:
    d, dp = rel.valley, rel.marker
    if d not in valley_set(t):
        raise ConstructionError("split-insert", f"{d} is no valley of the full sequence", t, a, b)
    allowed = {d} | {u for u in unpaired_plus(t) if u > d}
    if dp not in allowed:
        raise ConstructionError("split-insert", f"marker {dp} is not allowed in the full sequence", t, a, b)
    base = t.shift_up(d)
    entries = []
    for x, y, path in rel.collection.entries:
        if x < b1 < y:
            new = LatticedPath(base.between(x, y), path.flattened | {(b1, a2)})
        elif x == y:
            new = path
        else:
            new = LatticedPath(base.between(x, y), path.flattened)
        if not is_valid_path(new):
            raise ConstructionError("split-insert", "inserted ridge breaks a right path", t, a, b)
        entries.append((x, y, new))
    if _expected_pairs(a, b | {d}) != tuple(sorted((x, y) for x, y, _ in entries)):
        raise ConstructionError("split-insert", "pairing changed under right reinstatement", t, a, b)
    if not is_well_nested(base, entries):
        raise ConstructionError("split-insert", "reinstated right collection is not well-nested", t, a, b)
    return _right(t, d, dp, make_collection(base, entries))
