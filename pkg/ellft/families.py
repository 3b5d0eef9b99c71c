"""
Families of unipotent characters and their nonabelian Fourier transform.

A family with group Gamma has basis M(Gamma) = {(x, rho)}: x runs over the classes of Gamma
and rho over the irreducible characters of Z(x). The vectors

    sigma(x, y) = sum_rho conj(rho(y)) (x, rho)

over commuting-pair orbits form a second basis, and FT is the involution sending sigma(x, y)
to Delta(x, y) sigma(y, x).
"""
import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .chartab import CharTable, Fingerprint, character_table, resolve_char_labels
from .cyclo import (ONE, ZERO, CycNum, as_cyc, conj_transpose, format_coeff, identity_matrix,
                    matmul, matrices_equal, matvec, zero_matrix)
from .groups import CommPairOrbit, FinGroup, perm_conj, perm_inv, perm_to_cycles
from .utils.error_handler import CharacterTableError, FamilyError, GroupError
from .utils.logger import logger

Coeff = Union[CycNum, str, int]


class FamilyVector:
    """An element of the span of a family, in (x, rho) coordinates."""

    __slots__ = ('family', 'coords')

    def __init__(self, family: 'Family', coords: Sequence[CycNum]):
        if len(coords) != len(family.m_basis):
            raise FamilyError(f"Vector of length {len(coords)} for family {family.name} of size "
                              f"{len(family.m_basis)}", error_code="BAD_VECTOR")
        self.family = family
        self.coords: Tuple[CycNum, ...] = tuple(coords)

    @classmethod
    def zero(cls, family: 'Family') -> 'FamilyVector':
        return cls(family, [ZERO] * len(family.m_basis))

    def _same(self, other: 'FamilyVector') -> None:
        if not isinstance(other, FamilyVector) or other.family is not self.family:
            raise FamilyError("Vectors belong to different families", error_code="FAMILY_MISMATCH",
                              details={'left': self.family.name,
                                       'right': getattr(getattr(other, 'family', None), 'name', None)})

    def __add__(self, other: 'FamilyVector') -> 'FamilyVector':
        self._same(other)
        return FamilyVector(self.family, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: 'FamilyVector') -> 'FamilyVector':
        self._same(other)
        return FamilyVector(self.family, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> 'FamilyVector':
        return FamilyVector(self.family, [-a for a in self.coords])

    def scale(self, c: Coeff) -> 'FamilyVector':
        c = as_cyc(c)
        return FamilyVector(self.family, [c * a for a in self.coords])

    def __rmul__(self, c: Coeff) -> 'FamilyVector':
        return self.scale(c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FamilyVector):
            return NotImplemented
        return other.family is self.family and self.coords == other.coords

    def __hash__(self) -> int:
        return hash((self.family.name, self.coords))

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.coords)

    def support(self) -> List[int]:
        return [i for i, a in enumerate(self.coords) if not a.is_zero()]

    def terms(self) -> List[Tuple[str, str]]:
        return [(self.family.basis_label(i), format_coeff(self.coords[i])) for i in self.support()]

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*{lbl}" for lbl, c in self.terms()) or "0"
        return f"FamilyVector({self.family.name}: {body})"


@dataclass(eq=False)
class Family:
    """
    A family with its Fourier matrix.

    Attributes:
        name (str): Special-character label such as ``512_11``.
        gamma (FinGroup): The group Gamma of the family.
        delta_twisted (bool): Delta(1,g2) = Delta(g2,1) = -1 when set.
        tables (Dict[int, CharTable]): Labelled character table of Z(x) per class x of Gamma.
        m_basis (List[Tuple[int, int]]): (class x, row rho) pairs in canonical order.
        orbits (List[CommPairOrbit]): Commuting-pair orbits of Gamma.
        change_of_basis (np.ndarray): Columns are the sigma vectors of the orbits.
        ft (np.ndarray): The Fourier matrix acting on (x, rho) coordinates.
        b_F (Optional[int]): Lowest harmonic degree, read off the name when not given.
    """
    name: str
    gamma: FinGroup
    delta_twisted: bool
    tables: Dict[int, CharTable]
    m_basis: List[Tuple[int, int]]
    orbits: List[CommPairOrbit]
    change_of_basis: np.ndarray
    ft: np.ndarray
    b_F: Optional[int] = None
    change_of_basis_inv: Optional[np.ndarray] = None

    def __post_init__(self):
        self._index = {key: i for i, key in enumerate(self.m_basis)}

    def __len__(self) -> int:
        return len(self.m_basis)

    def delta(self, orbit: CommPairOrbit) -> int:
        if not self.delta_twisted:
            return 1
        ident = self.gamma.identity
        return -1 if (orbit.x == ident) != (orbit.y == ident) else 1

    def x_class(self, x_label: str) -> int:
        try:
            return self.gamma.class_of(self.gamma.representative(x_label))
        except GroupError as e:
            raise FamilyError(f"Unresolved class {x_label!r} in family {self.name}: {e.message}",
                              error_code="UNRESOLVED_LABEL")

    def index(self, x_label: str, rho: str) -> int:
        """
        Basis index of (x, rho).

        Raises:
            FamilyError: For unknown class or character names.
        """
        xi = self.x_class(x_label)
        try:
            row = self.tables[xi].row(rho)
        except CharacterTableError as e:
            raise FamilyError(f"Unresolved character {rho!r} of Z({x_label}) in family {self.name}",
                              error_code="UNRESOLVED_LABEL", details=e.details)
        return self._index[(xi, row)]

    def basis_label(self, i: int) -> str:
        xi, row = self.m_basis[i]
        return f"({self.gamma.class_label(xi)},{self.tables[xi].char_label(row)})"

    def orbit(self, x_label: str, y_label: str) -> CommPairOrbit:
        try:
            return self.gamma.pair_orbit(x_label, y_label)
        except GroupError as e:
            raise FamilyError(f"Cannot resolve the pair ({x_label},{y_label}) in family {self.name}: "
                              f"{e.message}", error_code="UNRESOLVED_LABEL", details=e.details)

    def sigma_orbit(self, orbit: CommPairOrbit) -> FamilyVector:
        return FamilyVector(self, list(self.change_of_basis[:, orbit.index]))

    def basis_vector(self, i: int) -> FamilyVector:
        coords = [ZERO] * len(self.m_basis)
        coords[i] = ONE
        return FamilyVector(self, coords)


def _b_invariant(name: str) -> Optional[int]:
    m = re.match(r"^\d+_(\d+)", name)
    return int(m.group(1)) if m else None


def _labelled_tables(gamma: FinGroup, fingerprints: Mapping[str, Mapping[str, Fingerprint]]) -> Dict[int, CharTable]:
    """
    Character tables of Z(rep) for each class rep, named by fingerprints written against Z(x)
    for the labelled element x of the class and transported by conjugation.
    """
    by_class: Dict[int, Tuple[str, Mapping[str, Fingerprint]]] = {}
    for x_label, prints in fingerprints.items():
        try:
            x = gamma.representative(x_label)
        except GroupError as e:
            raise FamilyError(f"Unknown class {x_label!r} in fingerprints: {e.message}",
                              error_code="UNRESOLVED_LABEL")
        by_class[gamma.class_of(x)] = (x_label, prints)

    tables = {}
    for c in gamma.classes:
        z = gamma.centralizer_of_class(c.index)
        table = character_table(z)
        if c.index in by_class:
            x_label, prints = by_class[c.index]
            x = gamma.representative(x_label)
            zx = gamma.centralizer_of_element(x)
            t = gamma.conjugator(x, c.rep)

            def resolver(label: str, zx=zx, z=z, t=t) -> int:
                return z.class_of(perm_conj(t, zx.representative(label)))

            table = resolve_char_labels(table, prints, class_resolver=resolver)
        tables[c.index] = table
    return tables


def build_family(name: str, gamma: FinGroup, delta_twisted: bool = False,
                 fingerprints: Optional[Mapping[str, Mapping[str, Fingerprint]]] = None,
                 b_F: Optional[int] = None, verify: bool = True) -> Family:
    """
    Build a family and its Fourier matrix ft = B (Delta o swap) B^-1.

    B has the sigma vectors of the commuting-pair orbits as columns. Its inverse is read off
    column orthogonality block by block: B_x^-1[y, rho] = rho(y) |y^Z(x)| / |Z(x)|.

    Args:
        name (str): Family name.
        gamma (FinGroup): The family group.
        delta_twisted (bool): Whether Delta is -1 on (1,g2) and (g2,1).
        fingerprints (Optional[Mapping]): x label -> character name -> fingerprint on Z(x).
        b_F (Optional[int]): Informational b-invariant; parsed from the name when omitted.
        verify (bool): Check B B^-1 = I, ft^2 = I and unitarity.

    Returns:
        Family: The built family.

    Raises:
        FamilyError: On missing labels, a twisted non-C2 group or a failed verification.
    """
    if gamma.order > 1 and not gamma.labels:
        raise FamilyError(f"Family {name}: group has no class labels", error_code="MISSING_LABELS")
    if delta_twisted and gamma.order != 2:
        raise FamilyError(f"Family {name}: Delta twist requires a group of order 2",
                          error_code="BAD_TWIST", details={'order': gamma.order})

    tables = _labelled_tables(gamma, fingerprints or {})
    m_basis = [(c.index, r) for c in gamma.classes for r in range(len(tables[c.index]))]
    index = {key: i for i, key in enumerate(m_basis)}
    orbits = gamma.commuting_pair_orbits()
    size = len(m_basis)
    if len(orbits) != size:
        raise FamilyError(f"Family {name}: {len(orbits)} orbits but {size} basis pairs",
                          error_code="BASIS_MISMATCH")

    b = zero_matrix(size)
    b_inv = zero_matrix(size)
    for o in orbits:
        table = tables[o.x_class]
        z = gamma.centralizer_of_class(o.x_class)
        weight = CycNum.rational(z.class_size(o.y_class)) / z.order
        for r, row in enumerate(table.values):
            i = index[(o.x_class, r)]
            b[i, o.index] = row[o.y_class].conj()
            b_inv[o.index, i] = row[o.y_class] * weight

    swap = zero_matrix(size)
    family = Family(name, gamma, delta_twisted, tables, m_basis, orbits, b, swap,
                    b_F if b_F is not None else _b_invariant(name))
    for o in orbits:
        swap[o.dual, o.index] = CycNum.rational(family.delta(o))
    family.ft = matmul(matmul(b, swap), b_inv)
    family.change_of_basis_inv = b_inv

    if verify:
        ident = identity_matrix(size)
        if not matrices_equal(matmul(b, b_inv), ident):
            raise FamilyError(f"Family {name}: sigma vectors do not form a basis", error_code="SINGULAR_BASIS")
        if not matrices_equal(matmul(family.ft, family.ft), ident):
            raise FamilyError(f"Family {name}: ft is not an involution", error_code="FT_NOT_INVOLUTION")
        if not matrices_equal(matmul(family.ft, conj_transpose(family.ft)), ident):
            raise FamilyError(f"Family {name}: ft is not unitary", error_code="FT_NOT_UNITARY")
    logger.debug(f"Built family {name} with {size} basis pairs (twisted={delta_twisted})")
    return family


def sigma_xy(family: Family, x: str, y: str) -> FamilyVector:
    """
    sigma(F, x, y): coordinates conj(rho(y)) on (x, rho), zero elsewhere.

    Raises:
        FamilyError: If the labels do not name a commuting pair.
    """
    return family.sigma_orbit(family.orbit(x, y))


def apply_ft(family: Family, v: FamilyVector) -> FamilyVector:
    if v.family is not family:
        raise FamilyError(f"Vector of family {v.family.name} passed to family {family.name}",
                          error_code="FAMILY_MISMATCH")
    return FamilyVector(family, matvec(family.ft, v.coords))


def is_ft_fixed(family: Family, v: FamilyVector) -> bool:
    return apply_ft(family, v) == v


def sigma_coordinates(family: Family, v: FamilyVector) -> List[CycNum]:
    """Coordinates of v in the sigma basis, indexed like ``family.orbits``."""
    if v.family is not family:
        raise FamilyError(f"Vector of family {v.family.name} passed to family {family.name}",
                          error_code="FAMILY_MISMATCH")
    return matvec(family.change_of_basis_inv, v.coords)


TermSpec = Union[Tuple[str, str, str, Coeff], Mapping[str, object]]


def combination_term(family: Family, basis: str, x: str, second: str, coeff: Coeff = 1) -> FamilyVector:
    """One term: basis ``xrho`` places coeff on (x, rho); basis ``xy`` adds coeff * sigma(x, y)."""
    c = as_cyc(coeff)
    if basis == 'xrho':
        return family.basis_vector(family.index(x, second)).scale(c)
    if basis == 'xy':
        return sigma_xy(family, x, second).scale(c)
    raise FamilyError(f"Unknown term basis {basis!r}", error_code="BAD_TERM")


def named_combination(family: Family, terms: Iterable[TermSpec]) -> FamilyVector:
    """
    The exact linear combination of (x, rho) and sigma(x, y) terms.

    Terms are tuples ``(basis, x, rho_or_y, coeff)`` or mappings with those keys
    (``basis``, ``x``, ``rho``/``y``, ``coeff``).
    """
    total = FamilyVector.zero(family)
    for term in terms:
        if isinstance(term, Mapping):
            basis = str(term.get('basis', 'xrho'))
            second = str(term.get('rho', term.get('y')))
            total = total + combination_term(family, basis, str(term['x']), second, term.get('coeff', 1))
        else:
            basis, x, second, coeff = term
            total = total + combination_term(family, basis, x, second, coeff)
    return total


def fourier_matrix_text(family: Family) -> str:
    labels = [family.basis_label(i) for i in range(len(family))]
    cells = [[format_coeff(family.ft[i, j]) for j in range(len(family))] for i in range(len(family))]
    width = max([len(s) for row in cells for s in row] + [len(s) for s in labels])
    lines = [" " * width + "  " + "  ".join(s.rjust(width) for s in labels)]
    for lbl, row in zip(labels, cells):
        lines.append(lbl.rjust(width) + "  " + "  ".join(s.rjust(width) for s in row))
    return "\n".join(lines)


def fourier_matrix_json(family: Family) -> Dict:
    return {
        'family': family.name,
        'delta_twisted': family.delta_twisted,
        'basis': [family.basis_label(i) for i in range(len(family))],
        'ft': [[format_coeff(family.ft[i, j]) for j in range(len(family))] for i in range(len(family))],
    }
