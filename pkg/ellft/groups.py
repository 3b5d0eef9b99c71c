"""
Finite permutation groups: conjugacy classes, centralizers, power maps and orbits of
commuting pairs under simultaneous conjugation.

The group structure comes from :class:`sympy.combinatorics.PermutationGroup`; this module
adds the canonical class order, the label words of the catalog and the pair orbits.

Permutations are tuples of 0-based images; the catalog and the public constructors take
1-based image arrays. The product is composition, (g*h)(i) = g(h(i)).
"""
import re
from collections import Counter
from functools import reduce
from math import gcd
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from dataclasses import dataclass
from sympy.combinatorics import Permutation, PermutationGroup
from sympy.combinatorics.group_constructs import DirectProduct
from sympy.combinatorics.named_groups import CyclicGroup, SymmetricGroup

from .utils.config import global_config
from .utils.error_handler import GroupCapError, GroupError
from .utils.logger import logger

Perm = Tuple[int, ...]
LabelSpec = Mapping[str, Union[Sequence[int], str]]


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def perm_mul(g: Perm, h: Perm) -> Perm:
    return tuple(g[i] for i in h)


def perm_inv(g: Perm) -> Perm:
    out = [0] * len(g)
    for i, gi in enumerate(g):
        out[gi] = i
    return tuple(out)


def perm_pow(g: Perm, k: int) -> Perm:
    if k < 0:
        g, k = perm_inv(g), -k
    result = identity_perm(len(g))
    base = g
    while k:
        if k & 1:
            result = perm_mul(result, base)
        base = perm_mul(base, base)
        k >>= 1
    return result


def perm_conj(t: Perm, g: Perm) -> Perm:
    """Return t g t^-1."""
    return perm_mul(perm_mul(t, g), perm_inv(t))


def perm_order(g: Perm) -> int:
    return int(Permutation(list(g)).order())


def perm_from_images(images: Sequence[int], n: Optional[int] = None) -> Perm:
    """
    Convert a 1-based image array to a permutation, padding with fixed points up to n.

    Raises:
        GroupError: If the array is not a permutation.
    """
    n = len(images) if n is None else n
    if len(images) > n:
        raise GroupError(f"Permutation {list(images)} has more than {n} points", error_code="BAD_PERM")
    perm = tuple(int(i) - 1 for i in images) + tuple(range(len(images), n))
    if sorted(perm) != list(range(n)):
        raise GroupError(f"{list(images)} is not a permutation of 1..{n}", error_code="BAD_PERM")
    return perm


def perm_to_images(g: Perm) -> List[int]:
    return [i + 1 for i in g]


def perm_from_cycles(n: int, text: str) -> Perm:
    """
    Parse cycle notation such as ``(1 2)(3 4 5)`` on n points; ``()`` is the identity.
    """
    images = list(range(n))
    for cycle in re.findall(r"\(([^)]*)\)", text):
        points = [int(p) - 1 for p in re.split(r"[\s,]+", cycle.strip()) if p]
        if any(p < 0 or p >= n for p in points) or len(set(points)) != len(points):
            raise GroupError(f"Bad cycle ({cycle}) on {n} points", error_code="BAD_PERM")
        for a, b in zip(points, points[1:] + points[:1]):
            images[a] = b
    return tuple(images)


def perm_to_cycles(g: Perm) -> str:
    seen = set()
    parts = []
    for start in range(len(g)):
        if start in seen or g[start] == start:
            continue
        cycle = []
        i = start
        while i not in seen:
            seen.add(i)
            cycle.append(str(i + 1))
            i = g[i]
        parts.append("(" + " ".join(cycle) + ")")
    return "".join(parts) or "()"


def _sympy_perm(g: Perm) -> Permutation:
    return Permutation(list(g), size=len(g))


def _sympy_group(n: int, gens: Sequence[Perm]) -> PermutationGroup:
    return PermutationGroup([_sympy_perm(g) for g in gens] or [_sympy_perm(identity_perm(n))])


@dataclass(frozen=True)
class ConjugacyClass:
    index: int
    rep: Perm
    elements: Tuple[Perm, ...]

    @property
    def size(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class CommPairOrbit:
    """One orbit of commuting pairs (x, y) under simultaneous conjugation."""
    index: int
    x: Perm
    y: Perm
    x_class: int
    y_class: int
    orbit_size: int
    dual: int

    @property
    def is_self_dual(self) -> bool:
        return self.dual == self.index


class FinGroup:
    """
    A finite permutation group with its conjugacy structure.

    Attributes:
        perm_group (PermutationGroup): The underlying sympy group.
        degree (int): Number of points acted on.
        generators (Tuple[Perm, ...]): Generating permutations, in the order they were given.
        elements (Tuple[Perm, ...]): All elements in lexicographic order; the identity is first.
        classes (List[ConjugacyClass]): Conjugacy classes ordered by their minimal element.
        labels (Dict[str, Perm]): Explicit label representatives of this group.
        parent (Optional[FinGroup]): The group this one was cut out of, if any.
    """

    def __init__(self, perm_group: PermutationGroup, generators: Optional[Sequence[Perm]] = None,
                 labels: Optional[Dict[str, Perm]] = None, parent: Optional['FinGroup'] = None,
                 name: Optional[str] = None):
        self.perm_group = perm_group
        self.degree: int = perm_group.degree
        if generators is None:
            generators = [tuple(p.array_form) for p in perm_group.generators]
        self.generators: Tuple[Perm, ...] = tuple(generators)
        self.elements: Tuple[Perm, ...] = tuple(sorted(tuple(p) for p in perm_group.generate(af=True)))
        self._element_set = frozenset(self.elements)
        self.parent = parent
        self.name = name
        self.labels: Dict[str, Perm] = {}
        self._centralizers: Dict[Perm, 'FinGroup'] = {}
        self._power_maps: Dict[int, List[int]] = {}
        self._pair_orbits: Optional[List[CommPairOrbit]] = None

        orbits = sorted((sorted(tuple(p.array_form) for p in cls) for cls in perm_group.conjugacy_classes()),
                        key=lambda o: o[0])
        self.classes: List[ConjugacyClass] = [
            ConjugacyClass(i, orbit[0], tuple(orbit)) for i, orbit in enumerate(orbits)
        ]
        self._class_of: Dict[Perm, int] = {g: c.index for c in self.classes for g in c.elements}
        self._transversal: Dict[Perm, Perm] = self._build_transversal()

        for label, g in (labels or {}).items():
            if g not in self._element_set:
                raise GroupError(f"Label {label!r} representative {perm_to_cycles(g)} is not in the group",
                                 error_code="LABEL_NOT_IN_GROUP", details={'label': label})
            self.labels[label] = g
        logger.debug(f"Built group {self.name or '?'} of order {self.order} with {len(self.classes)} classes")

    # -- construction -------------------------------------------------------------

    @classmethod
    def from_generators(cls, n: int, gens: Iterable[Sequence[int]], label_spec: Optional[LabelSpec] = None,
                        cap: Optional[int] = None, name: Optional[str] = None) -> 'FinGroup':
        """
        Build the group generated by 1-based image arrays on n points.

        Args:
            n (int): Number of points.
            gens (Iterable[Sequence[int]]): Generators as 1-based image arrays.
            label_spec (Optional[LabelSpec]): Label name -> image array or word in earlier labels.
            cap (Optional[int]): Order cap; defaults to ``group_order_cap`` of the global config.
            name (Optional[str]): Display name.

        Returns:
            FinGroup: The generated group.

        Raises:
            GroupCapError: If the group order exceeds the cap.
            GroupError: If a label is not an element of the group.
        """
        cap = cap if cap is not None else global_config.get('group_order_cap', 10000)
        perms = [perm_from_images(g, n) for g in gens]
        perm_group = _sympy_group(n, perms)
        order = int(perm_group.order())
        if order > cap:
            raise GroupCapError(f"Generated group of order {order} exceeds the order cap {cap}",
                                error_code="GROUP_CAP", details={'cap': cap, 'order': order})
        group = cls(perm_group, perms, name=name)
        group.add_labels(label_spec or {})
        return group

    def add_labels(self, label_spec: LabelSpec) -> None:
        """Attach labels given as image arrays or as words in already known labels."""
        for label, value in label_spec.items():
            if isinstance(value, str):
                g = self.element(value)
            else:
                g = perm_from_images(value, self.degree)
            if g not in self._element_set:
                raise GroupError(f"Label {label!r} representative {perm_to_cycles(g)} is not in the group",
                                 error_code="LABEL_NOT_IN_GROUP", details={'label': label})
            self.labels[label] = g

    def _build_transversal(self) -> Dict[Perm, Perm]:
        """For every element a, some t with t rep t^-1 = a, rep the minimal element of a's class."""
        transversal: Dict[Perm, Perm] = {}
        for c in self.classes:
            missing = c.size
            for t in self.elements:
                a = perm_conj(t, c.rep)
                if a not in transversal:
                    transversal[a] = t
                    missing -= 1
                    if not missing:
                        break
        return transversal

    # -- basic queries ------------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Perm:
        return identity_perm(self.degree)

    def __contains__(self, g: Perm) -> bool:
        return g in self._element_set

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FinGroup({self.name or 'unnamed'}, order={self.order}, classes={len(self.classes)})"

    def _check(self, g: Perm) -> None:
        if g not in self._element_set:
            raise GroupError(f"{perm_to_cycles(g)} is not an element of {self.name or 'the group'}",
                             error_code="NOT_IN_GROUP")

    def class_of(self, g: Perm) -> int:
        self._check(g)
        return self._class_of[g]

    def class_size(self, ci: int) -> int:
        return self.classes[ci].size

    def centralizer_order(self, ci: int) -> int:
        return self.order // self.classes[ci].size

    def conjugator(self, a: Perm, b: Perm) -> Optional[Perm]:
        """Return t with t a t^-1 = b, or None when a and b are not conjugate."""
        if self.class_of(a) != self.class_of(b):
            return None
        ta, tb = self._transversal[a], self._transversal[b]
        return perm_mul(tb, perm_inv(ta))

    def is_abelian(self) -> bool:
        return bool(self.perm_group.is_abelian)

    @property
    def exponent(self) -> int:
        return reduce(lambda a, b: a * b // gcd(a, b), (perm_order(c.rep) for c in self.classes), 1)

    def element_order(self, g: Perm) -> int:
        self._check(g)
        return perm_order(g)

    def order_profile(self) -> Tuple[int, bool, Tuple[Tuple[int, int], ...]]:
        """Order, commutativity and the multiset of element orders; equal for isomorphic groups."""
        orders = Counter(perm_order(c.rep) for c in self.classes for _ in c.elements)
        return self.order, self.is_abelian(), tuple(sorted(orders.items()))

    def power_map(self, k: int) -> List[int]:
        """
        Class-level power map g -> g^k, computed on representatives.
        """
        k = k % self.exponent if self.exponent else 0
        if k not in self._power_maps:
            self._power_maps[k] = [self._class_of[perm_pow(c.rep, k)] for c in self.classes]
        return self._power_maps[k]

    def inverse_class(self, ci: int) -> int:
        return self.power_map(-1)[ci]

    # -- labels -------------------------------------------------------------------

    def _lookup(self, name: str) -> Perm:
        name = name.strip()
        if name in ('1', 'e', '()'):
            return self.identity
        if name in self.labels:
            return self.labels[name]
        if name.startswith('(') and name.endswith(')'):
            g = perm_from_cycles(self.degree, name)
            self._check(g)
            return g
        if self.parent is None:
            raise GroupError(f"Unknown label {name!r} in {self.name or 'group'}", error_code="UNKNOWN_LABEL",
                             details={'labels': sorted(self.labels)})
        g = self.parent._lookup(name)
        if g in self._element_set:
            return g
        target = self.parent.class_of(g)
        candidates = [h for h in self.elements if self.parent.class_of(h) == target]
        if len(candidates) == 1:
            return candidates[0]
        raise GroupError(f"Label {name!r} does not determine a unique element of {self.name or 'the subgroup'}",
                         error_code="AMBIGUOUS_LABEL" if candidates else "LABEL_NOT_IN_GROUP",
                         details={'label': name, 'candidates': [perm_to_cycles(h) for h in candidates]})

    def element(self, word: str) -> Perm:
        """
        Evaluate a label word such as ``g2``, ``delta^2``, ``s*delta`` or ``g2*g3^-1``.

        Factors are explicit labels of this group, cycle notation, ``1``, or labels inherited
        from the parent group: an inherited label resolves to its representative when that lies
        here, otherwise to the unique element here of the same parent class.

        Raises:
            GroupError: On unknown or ambiguous labels.
        """
        result = self.identity
        for factor in word.split('*'):
            factor = factor.strip()
            if not factor:
                raise GroupError(f"Empty factor in label word {word!r}", error_code="UNKNOWN_LABEL")
            base, exp = factor, 1
            m = re.fullmatch(r"(.+?)\^(-?\d+)", factor)
            if m:
                base, exp = m.group(1), int(m.group(2))
            result = perm_mul(result, perm_pow(self._lookup(base), exp))
        return result

    def resolve_class(self, label: str) -> int:
        """
        Resolve a label or word to a conjugacy class of this group.

        An inherited label whose representative lies outside this group is accepted when its
        parent class meets this group in a single class.
        """
        try:
            return self._class_of[self.element(label)]
        except GroupError as e:
            candidates = e.details.get('candidates') if e.error_code == "AMBIGUOUS_LABEL" else None
            if not candidates:
                raise
            classes = {self._class_of[perm_from_cycles(self.degree, c)] for c in candidates}
            if len(classes) == 1:
                return classes.pop()
            raise

    def class_label(self, ci: int) -> str:
        """A display name for a class: the first explicit label landing in it, else ``c<i>``."""
        if ci == 0:
            return "1"
        for label, g in self.labels.items():
            if self._class_of[g] == ci:
                return label
        ancestor = self.parent
        while ancestor is not None:
            for label in ancestor.labels:
                try:
                    if self.resolve_class(label) == ci:
                        return label
                except GroupError:
                    continue
            ancestor = ancestor.parent
        return f"c{ci}"

    # -- subgroups ----------------------------------------------------------------

    def centralizer_of_element(self, g: Perm) -> 'FinGroup':
        """Z(g), cached per element so that class orders of the centralizer stay fixed."""
        if g not in self._centralizers:
            self._centralizers[g] = centralizer(self, g)
        return self._centralizers[g]

    def centralizer_of_class(self, ci: int) -> 'FinGroup':
        return self.centralizer_of_element(self.classes[ci].rep)

    def representative(self, label: str) -> Perm:
        """An element for a label; a label fixing only a class yields that class's minimal element."""
        try:
            return self.element(label)
        except GroupError as e:
            if e.error_code != "AMBIGUOUS_LABEL":
                raise
            return self.classes[self.resolve_class(label)].rep

    def resolve_pair(self, x_label: str, y_label: str) -> Tuple[Perm, Perm]:
        """Elements (x, y) for labels, y resolved inside Z(x)."""
        x = self.representative(x_label)
        y = self.centralizer_of_element(x).representative(y_label)
        return x, y

    def pair_orbit(self, x_label: str, y_label: str) -> CommPairOrbit:
        """The commuting-pair orbit named by an x label and a y label of Z(x)."""
        x, y = self.resolve_pair(x_label, y_label)
        key = self.canonical_pair(x, y)
        for orbit in self.commuting_pair_orbits():
            if (orbit.x_class, orbit.y_class) == key:
                return orbit
        raise GroupError("Pair orbit not found", error_code="NOT_COMMUTING")

    def commuting_pair_orbits(self) -> List[CommPairOrbit]:
        if self._pair_orbits is None:
            self._pair_orbits = commuting_pair_orbits(self)
        return self._pair_orbits

    def canonical_pair(self, a: Perm, b: Perm) -> Tuple[int, int]:
        """
        Return (x class of a, class index in Z(x) of the conjugated b) for a commuting pair.

        Raises:
            GroupError: If a and b do not commute.
        """
        if perm_mul(a, b) != perm_mul(b, a):
            raise GroupError(f"{perm_to_cycles(a)} and {perm_to_cycles(b)} do not commute",
                             error_code="NOT_COMMUTING")
        xi = self.class_of(a)
        t = perm_inv(self._transversal[a])
        z = self.centralizer_of_class(xi)
        return xi, z.class_of(perm_conj(t, b))


def centralizer(group: FinGroup, g: Perm) -> FinGroup:
    """
    The centralizer Z_G(g) as a group on the same points, recording ``group`` as parent.

    Raises:
        GroupError: If g is not in the group.
    """
    group._check(g)
    name = f"Z_{group.name or 'G'}({perm_to_cycles(g)})"
    return FinGroup(group.perm_group.centralizer(PermutationGroup([_sympy_perm(g)])), parent=group, name=name)


def subgroup(group: FinGroup, gens: Sequence[Sequence[int]], name: Optional[str] = None) -> FinGroup:
    """
    The subgroup generated by 1-based image arrays.

    Raises:
        GroupError: If a generator is not in the group.
    """
    perms = [perm_from_images(g, group.degree) for g in gens]
    for p in perms:
        group._check(p)
    return FinGroup(_sympy_group(group.degree, perms), perms, parent=group, name=name)


def direct_product(first: FinGroup, second: FinGroup, name: Optional[str] = None) -> FinGroup:
    """
    G x H acting on the disjoint union of the point sets; labels of both factors are kept,
    those of the second factor suffixed with ``_2`` on a clash.
    """
    n, m = first.degree, second.degree
    gens = [g + tuple(range(n, n + m)) for g in first.generators]
    gens += [tuple(range(n)) + tuple(n + i for i in h) for h in second.generators]
    labels = {label: g + tuple(range(n, n + m)) for label, g in first.labels.items()}
    for label, h in second.labels.items():
        key = label if label not in labels else f"{label}_2"
        labels[key] = tuple(range(n)) + tuple(n + i for i in h)
    return FinGroup(DirectProduct(first.perm_group, second.perm_group), gens, labels=labels,
                    name=name or f"{first.name or 'G'}x{second.name or 'H'}")


def commuting_pair_orbits(group: FinGroup) -> List[CommPairOrbit]:
    """
    Representatives of commuting pairs modulo simultaneous conjugation.

    One orbit per pair (class x of G, class y of Z_G(x)), with the minimal representatives of
    both classes; orbit sizes are |x^G| * |y^Z(x)|. Each orbit records the index of the orbit
    of the swapped pair.
    """
    keys: List[Tuple[int, int]] = []
    reps: List[Tuple[Perm, Perm, int]] = []
    for c in group.classes:
        z = group.centralizer_of_class(c.index)
        for zc in z.classes:
            keys.append((c.index, zc.index))
            reps.append((c.rep, zc.rep, c.size * zc.size))
    index_of = {k: i for i, k in enumerate(keys)}
    orbits = []
    for i, ((xi, yi), (x, y, size)) in enumerate(zip(keys, reps)):
        dual = index_of[group.canonical_pair(y, x)]
        orbits.append(CommPairOrbit(i, x, y, xi, yi, size, dual))
    logger.debug(f"{group.name or 'group'}: {len(orbits)} commuting-pair orbits")
    return orbits


def cyclic_group(n: int, name: Optional[str] = None) -> FinGroup:
    return FinGroup(CyclicGroup(n), name=name or f"C{n}")


def symmetric_group(n: int, name: Optional[str] = None) -> FinGroup:
    return FinGroup(SymmetricGroup(n), name=name or f"S{n}")
