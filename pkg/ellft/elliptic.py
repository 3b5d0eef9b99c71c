"""
Elliptic pairings for a finite group acting on the Lie algebra of a torus.

An element h is elliptic when det(1 - h) on the torus is nonzero; the elliptic pairing

    (psi, psi') = 1/|A| sum_h conj(psi(h)) psi'(h) det(1 - h)

has rank equal to the number of elliptic classes.
"""
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .chartab import CharTable, character_table
from .cyclo import (ONE, ZERO, CycNum, cyc_matrix, determinant, format_coeff, identity_matrix,
                    matmul, matrices_equal, rank, zero_matrix)
from .groups import FinGroup, Perm, perm_mul, perm_to_cycles
from .utils.error_handler import CharacterTableError, EllipticError, GroupError
from .utils.logger import logger

Element = Union[Perm, str]


@dataclass
class TorusAction:
    """
    A representation of a finite group on the Lie algebra of a torus.

    Attributes:
        group (FinGroup): The acting group.
        dim (int): Dimension of the torus.
        matrices (List[np.ndarray]): One dim x dim matrix per generator of ``group``.
    """
    group: FinGroup
    dim: int
    matrices: List[np.ndarray]
    _images: Dict[Perm, np.ndarray] = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        if self.dim < 0:
            raise EllipticError(f"Negative torus dimension {self.dim}", error_code="BAD_SHAPE")
        if self.dim == 0 and not self.matrices:
            self.matrices = [zero_matrix(0) for _ in self.group.generators]
        if len(self.matrices) != len(self.group.generators):
            raise EllipticError(f"{len(self.matrices)} matrices for {len(self.group.generators)} generators",
                                error_code="BAD_SHAPE")
        for m in self.matrices:
            if m.shape != (self.dim, self.dim):
                raise EllipticError(f"Matrix of shape {m.shape} on a torus of dimension {self.dim}",
                                    error_code="BAD_SHAPE")
        self._images = self._extend()

    def _extend(self) -> Dict[Perm, np.ndarray]:
        """Extend the generator matrices along the Cayley graph, checking every edge."""
        ident = self.group.identity
        images = {ident: identity_matrix(self.dim)}
        queue = deque([ident])
        while queue:
            e = queue.popleft()
            for s, m in zip(self.group.generators, self.matrices):
                h = perm_mul(s, e)
                image = matmul(m, images[e])
                if h in images:
                    if not matrices_equal(images[h], image):
                        raise EllipticError(f"Matrices do not define a representation of "
                                            f"{self.group.name or 'the group'}", error_code="NOT_A_REPRESENTATION",
                                            details={'element': perm_to_cycles(h)})
                else:
                    images[h] = image
                    queue.append(h)
        logger.debug(f"Torus action of {self.group.name or 'group'} on dimension {self.dim} checked "
                     f"on {len(images)} elements")
        return images

    def _element(self, h: Element) -> Perm:
        try:
            g = self.group.representative(h) if isinstance(h, str) else h
            self.group._check(g)
        except GroupError as e:
            raise EllipticError(f"Element {h!r} is not in {self.group.name or 'the acting group'}",
                                error_code="NOT_IN_GROUP", details=e.details)
        return g

    def matrix_of(self, h: Element) -> np.ndarray:
        return self._images[self._element(h)]


def torus_action(group: FinGroup, matrices: Sequence[Sequence[Sequence[Union[CycNum, int, str]]]]) -> TorusAction:
    """Build an action from nested rows; an empty list gives the zero-dimensional action."""
    mats = [cyc_matrix(m) if len(m) else zero_matrix(0) for m in matrices]
    dim = mats[0].shape[0] if mats else 0
    return TorusAction(group, dim, mats)


def trivial_action(group: FinGroup) -> TorusAction:
    return TorusAction(group, 0, [])


def elliptic_det(act: TorusAction, h: Element) -> CycNum:
    """
    det(1 - h) on the torus Lie algebra; 1 for the zero-dimensional action.

    Raises:
        EllipticError: If h is not in the acting group.
    """
    m = act.matrix_of(h)
    if act.dim == 0:
        return ONE
    diff = identity_matrix(act.dim)
    for i in range(act.dim):
        for j in range(act.dim):
            diff[i, j] = diff[i, j] - m[i, j]
    return determinant(diff)


def _class_dets(act: TorusAction) -> List[CycNum]:
    return [elliptic_det(act, c.rep) for c in act.group.classes]


def elliptic_class_indices(act: TorusAction) -> List[int]:
    return [i for i, d in enumerate(_class_dets(act)) if not d.is_zero()]


def elliptic_classes(act: TorusAction) -> List[str]:
    """Labels of the classes with nonzero det(1 - h)."""
    return [act.group.class_label(i) for i in elliptic_class_indices(act)]


def elliptic_pairing(act: TorusAction, table: CharTable, chi: Union[str, int], chi2: Union[str, int],
                     dets: Optional[Sequence[CycNum]] = None) -> CycNum:
    """
    The elliptic pairing of two irreducible characters of the acting group.

    Args:
        act (TorusAction): The torus action.
        table (CharTable): Character table of ``act.group``.
        chi, chi2 (Union[str, int]): Character names or rows.
        dets (Optional[Sequence[CycNum]]): Precomputed det(1 - h) per class.

    Returns:
        CycNum: The exact pairing.
    """
    if table.group is not act.group:
        raise EllipticError("Character table of another group", error_code="GROUP_MISMATCH")
    dets = dets if dets is not None else _class_dets(act)
    a = table.values[table.row(chi)]
    b = table.values[table.row(chi2)]
    total = ZERO
    for c in act.group.classes:
        d = dets[c.index]
        if not d.is_zero():
            total = total + a[c.index].conj() * b[c.index] * d * c.size
    return total / act.group.order


def gram_matrix(act: TorusAction, table: Optional[CharTable] = None) -> np.ndarray:
    table = table if table is not None else character_table(act.group)
    dets = _class_dets(act)
    n = len(table)
    gram = zero_matrix(n)
    for i in range(n):
        for j in range(n):
            gram[i, j] = elliptic_pairing(act, table, i, j, dets)
    return gram


def elliptic_rank(act: TorusAction, table: Optional[CharTable] = None) -> int:
    """
    Rank of the Gram matrix of the elliptic pairing, which equals the number of elliptic classes.

    Raises:
        EllipticError: If the two numbers differ, as they do for a mislabelled character table.
    """
    r = rank(gram_matrix(act, table))
    expected = len(elliptic_class_indices(act))
    if r != expected:
        raise EllipticError(f"Gram rank {r} differs from {expected} elliptic classes of {act.group.name}",
                            error_code="RANK_MISMATCH", details={'rank': r, 'elliptic_classes': expected})
    return r


@dataclass
class VirtualCombination:
    """pi(u, s, h) = sum over characters phi of A_su of conj(phi(h)) pi(su, phi)."""
    u: str
    s: str
    h: str
    coeffs: List[Tuple[str, CycNum]]

    @property
    def formal_terms(self) -> List[str]:
        return [f"pi({self.s}{self.u},{name})" for name, _ in self.coeffs]

    def coefficient(self, name: str) -> CycNum:
        for n, c in self.coeffs:
            if n == name:
                return c
        raise EllipticError(f"No character {name!r} in pi({self.u},{self.s},{self.h})",
                            error_code="UNKNOWN_CHARACTER")

    def __str__(self) -> str:
        parts = []
        for term, (_, c) in zip(self.formal_terms, self.coeffs):
            if c.is_zero():
                continue
            text = format_coeff(c)
            if text == "1":
                parts.append(f"+ {term}")
            elif text == "-1":
                parts.append(f"- {term}")
            elif text.startswith("-"):
                parts.append(f"- ({text[1:]})*{term}")
            else:
                parts.append(f"+ ({text})*{term}")
        body = " ".join(parts).lstrip("+ ") if parts else "0"
        return f"pi({self.u},{self.s},{self.h}) = {body}"


def virtual_combination(table: CharTable, h: Union[str, int], labels: Tuple[str, str, str],
                        characters: Optional[Iterable[str]] = None) -> VirtualCombination:
    """
    Coefficients conj(phi(h)) over the characters of A_su.

    Args:
        table (CharTable): Character table of A_su.
        h (Union[str, int]): Class label or class index of A_su.
        labels (Tuple[str, str, str]): The names (u, s, h) for display.
        characters (Optional[Iterable[str]]): Restrict to these characters, in this order.

    Raises:
        EllipticError: For an unknown class or character.
    """
    try:
        ci = h if isinstance(h, int) else table.group.resolve_class(h)
    except GroupError as e:
        raise EllipticError(f"Unknown class {h!r} of {table.group.name or 'A_su'}: {e.message}",
                            error_code="UNKNOWN_CLASS")
    try:
        rows = range(len(table)) if characters is None else [table.row(name) for name in characters]
    except CharacterTableError as e:
        raise EllipticError(e.message, error_code="UNKNOWN_CHARACTER", details=e.details)
    coeffs = [(table.char_label(r), table.values[r][ci].conj()) for r in rows]
    u, s, hl = labels
    return VirtualCombination(u, s, hl, coeffs)
