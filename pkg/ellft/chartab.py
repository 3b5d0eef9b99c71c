"""
Exact character tables by the Dixon-Schneider method.

Class matrices are diagonalised simultaneously over a prime field F_p with p = 1 mod the
group exponent and p > 2|G|; character values are then lifted to Q(z60) from the
multiplicities of the eigenvalues, recovered from the power maps.
"""
import random
import weakref
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from sympy import GF, Poly, Symbol, nextprime, primitive_root, sqrt_mod
from sympy.polys.matrices import DomainMatrix

from .cyclo import N as CONDUCTOR
from .cyclo import ONE, ZERO, CycNum, as_cyc, format_coeff, root_of_unity
from .groups import FinGroup, perm_inv, perm_mul
from .utils.config import global_config
from .utils.error_handler import CharacterTableError, GroupError
from .utils.logger import logger

Fingerprint = Sequence[Tuple[str, Union[CycNum, str, int]]]


@dataclass
class CharTable:
    """
    Irreducible characters of a group, rows in canonical order.

    Attributes:
        group (FinGroup): The group.
        values (List[List[CycNum]]): values[row][class].
        char_labels (Dict[str, int]): Character name -> row.
    """
    group: FinGroup
    values: List[List[CycNum]]
    char_labels: Dict[str, int] = field(default_factory=dict)

    @property
    def degrees(self) -> List[int]:
        return [int(row[0].to_fraction()) for row in self.values]

    def __len__(self) -> int:
        return len(self.values)

    def row(self, label: Union[str, int]) -> int:
        """
        Row index of a character given by name, ``#<row>`` or an integer.

        Raises:
            CharacterTableError: For unknown names.
        """
        if isinstance(label, int):
            if not 0 <= label < len(self.values):
                raise CharacterTableError(f"Row {label} out of range", error_code="UNKNOWN_CHARACTER")
            return label
        if label in self.char_labels:
            return self.char_labels[label]
        if label.startswith('#') and label[1:].isdigit():
            return self.row(int(label[1:]))
        raise CharacterTableError(f"Unknown character {label!r} of {self.group.name or 'group'}",
                                  error_code="UNKNOWN_CHARACTER",
                                  details={'known': sorted(self.char_labels)})

    def char_label(self, row: int) -> str:
        for name, r in self.char_labels.items():
            if r == row:
                return name
        return f"#{row}"

    def value(self, label: Union[str, int], ci: int) -> CycNum:
        return self.values[self.row(label)][ci]


_TABLES: 'weakref.WeakKeyDictionary[FinGroup, CharTable]' = weakref.WeakKeyDictionary()


def dixon_prime(order: int, exponent: int) -> int:
    """Smallest prime p with p > 2*order and p % exponent == 1."""
    p = nextprime(2 * order)
    while p % exponent != 1:
        p = nextprime(p)
    return int(p)


def class_matrix(group: FinGroup, r: int) -> List[List[int]]:
    """M[i][t] = #{g in C_r : g^-1 z_t in C_i}, z_t the representative of class t."""
    n = len(group.classes)
    m = [[0] * n for _ in range(n)]
    for g in group.classes[r].elements:
        g_inv = perm_inv(g)
        for t, c in enumerate(group.classes):
            m[group.class_of(perm_mul(g_inv, c.rep))][t] += 1
    return m


def eigenspace_decomposition(a: DomainMatrix) -> List[DomainMatrix]:
    """Row bases of the left eigenspaces of a over its ground field."""
    at = a.transpose()
    fp = at.domain
    charpoly = Poly(at.charpoly(), Symbol('x'), domain=fp)
    eigens = []
    for z in charpoly.ground_roots():
        z = fp(int(z))
        b = at - DomainMatrix.diag([z] * at.shape[0], fp)
        basis = b.nullspace()
        basis, _ = basis.rref()
        eigens.append(basis)
    return eigens


def refine_spaces(spaces: List[DomainMatrix], n_mat: DomainMatrix) -> List[DomainMatrix]:
    """Split every invariant row space along the eigenspaces of n_mat acting on the right."""
    new_spaces = []
    for s in spaces:
        if s.shape[0] <= 1:
            new_spaces.append(s)
            continue
        s, pivots = s.rref()
        n0 = n_mat.extract(list(range(n_mat.shape[0])), list(pivots))
        for sub_s in eigenspace_decomposition(s * n0):
            new_spaces.append(sub_s * s)
    return new_spaces


def common_eigenvectors(mats: Sequence[List[List[int]]], fp, seed: int, attempts: int) -> List[List[int]]:
    """
    Common left eigenvectors of commuting diagonalisable integer matrices, over fp.

    Raises:
        CharacterTableError: When the spaces do not split into lines after the random retries.
    """
    n = len(mats[0])
    p = fp.mod
    spaces = [DomainMatrix.eye(n, fp)]
    for m in mats:
        if len(spaces) == n:
            break
        spaces = refine_spaces(spaces, DomainMatrix.from_list(m, fp))
    rng = random.Random(seed)
    tries = 0
    while len(spaces) < n:
        if tries >= attempts:
            raise CharacterTableError("Failed to split the class-algebra eigenspaces",
                                      error_code="SPLIT_FAILED", details={'spaces': len(spaces), 'classes': n})
        tries += 1
        weights = [rng.randrange(p) for _ in mats]
        combo = [[sum(w * m[i][j] for w, m in zip(weights, mats)) % p for j in range(n)] for i in range(n)]
        logger.debug(f"Refining with random class-matrix combination #{tries}")
        spaces = refine_spaces(spaces, DomainMatrix.from_list(combo, fp))
    return [[int(x) % p for x in s.to_list()[0]] for s in spaces]


def _normalize(group: FinGroup, rows: List[List[int]], p: int) -> List[List[int]]:
    """Scale eigenvectors to character values mod p."""
    sizes = [c.size for c in group.classes]
    inv = group.power_map(-1)
    out = []
    for row in rows:
        if row[0] == 0:
            raise CharacterTableError("Eigenvector vanishes on the identity class", error_code="SPLIT_FAILED")
        scale = pow(row[0], p - 2, p)
        row = [(x * scale) % p for x in row]
        dot = sum(sizes[k] * row[k] * row[inv[k]] for k in range(len(row))) % p
        chi1_sq = (group.order * pow(dot, p - 2, p)) % p
        root = sqrt_mod(chi1_sq, p)
        if root is None:
            raise CharacterTableError(f"No square root of {chi1_sq} mod {p}", error_code="SPLIT_FAILED")
        degree = min(int(root), p - int(root))
        out.append([(x * degree) % p for x in row])
    return out


def _lift(group: FinGroup, row: List[int], p: int, exponent: int, omega: int) -> List[CycNum]:
    """chi(g) = sum_j m_j z_e^j with m_j = e^-1 sum_l chi(g^l) omega^(-jl) mod p."""
    power_maps = [group.power_map(l) for l in range(exponent)]
    e_inv = pow(exponent, p - 2, p)
    omega_inv = pow(omega, p - 2, p)
    degree = row[0]
    values = []
    for k in range(len(row)):
        value = ZERO
        for j in range(exponent):
            step = pow(omega_inv, j, p)
            acc, w = 0, 1
            for l in range(exponent):
                acc += row[power_maps[l][k]] * w
                w = (w * step) % p
            m_j = (acc * e_inv) % p
            if m_j > degree:
                raise CharacterTableError("Eigenvalue multiplicity exceeds the degree",
                                          error_code="LIFT_FAILED", details={'class': k})
            if m_j:
                value = value + root_of_unity(exponent, j) * m_j
        values.append(value)
    return values


def _row_key(row: List[CycNum]) -> Tuple:
    return (row[0].to_fraction(),) + tuple(v.sort_key() for v in row)


def character_table(group: FinGroup) -> CharTable:
    """
    Exact character table of a group, cached per group object.

    Rows are sorted by degree, then by the values under ``CycNum.sort_key``; the trivial
    character is row 0 and carries the label ``1``.

    Raises:
        CharacterTableError: If the exponent does not divide 60 or the splitting fails.
    """
    cached = _TABLES.get(group)
    if cached is not None:
        return cached
    cap = global_config.get('group_order_cap', 10000)
    if group.order > cap:
        raise CharacterTableError(f"Group order {group.order} exceeds the cap {cap}", error_code="GROUP_CAP")
    exponent = group.exponent
    if CONDUCTOR % exponent:
        raise CharacterTableError(f"Exponent {exponent} does not divide {CONDUCTOR}",
                                  error_code="BAD_EXPONENT")
    p = dixon_prime(group.order, exponent)
    fp = GF(p)
    logger.debug(f"Dixon prime {p} for {group.name or 'group'} of order {group.order}")

    mats = [class_matrix(group, r) for r in range(len(group.classes))]
    vectors = common_eigenvectors(mats, fp, global_config.get('dixon_seed', 0),
                                  global_config.get('max_split_attempts', 16))
    rows_mod_p = _normalize(group, vectors, p)
    omega = pow(int(primitive_root(p)), (p - 1) // exponent, p)
    values = sorted((_lift(group, row, p, exponent, omega) for row in rows_mod_p), key=_row_key)
    table = CharTable(group, values, {'1': 0})

    report = verify_orthogonality(table)
    if not report.passed:
        raise CharacterTableError("Lifted table fails orthogonality", error_code="LIFT_FAILED",
                                  details={'violations': report.describe()})
    _TABLES[group] = table
    return table


@dataclass
class OrthogonalityReport:
    passed: bool
    row_violations: List[Tuple[int, int, CycNum]]
    column_violations: List[Tuple[int, int, CycNum]]

    def describe(self) -> List[str]:
        lines = [f"rows ({i},{j}): {format_coeff(v)}" for i, j, v in self.row_violations]
        lines += [f"columns ({i},{j}): {format_coeff(v)}" for i, j, v in self.column_violations]
        return lines


def verify_orthogonality(table: CharTable) -> OrthogonalityReport:
    """Check both orthogonality relations exactly; never raises."""
    group = table.group
    sizes = [c.size for c in group.classes]
    conj = [[v.conj() for v in row] for row in table.values]
    rows = []
    for i, a in enumerate(table.values):
        for j, b in enumerate(conj):
            s = ZERO
            for k, size in enumerate(sizes):
                s = s + a[k] * b[k] * size
            s = s / group.order
            if s != (ONE if i == j else ZERO):
                rows.append((i, j, s))
    cols = []
    n = len(sizes)
    for c in range(n):
        for d in range(n):
            s = ZERO
            for r in range(len(table.values)):
                s = s + table.values[r][c] * conj[r][d]
            expected = CycNum.rational(group.centralizer_order(c)) if c == d else ZERO
            if s != expected:
                cols.append((c, d, s))
    if len(table.values) != n:
        rows.append((-1, -1, CycNum.rational(len(table.values) - n)))
    return OrthogonalityReport(not rows and not cols, rows, cols)


def resolve_char_labels(table: CharTable, fingerprints: Mapping[str, Fingerprint],
                        class_resolver: Optional[Callable[[str], int]] = None) -> CharTable:
    """
    Name characters by the values they take on labelled classes; class label ``1`` fixes the degree.

    Args:
        table (CharTable): The table to label.
        fingerprints (Mapping[str, Fingerprint]): Name -> list of (class label, value).
        class_resolver (Optional[Callable[[str], int]]): Maps a class label to a class index;
            defaults to ``group.resolve_class``.

    Returns:
        CharTable: A copy with ``char_labels`` populated.

    Raises:
        CharacterTableError: When a fingerprint matches zero or several rows, or two names share a row.
    """
    group = table.group
    resolve = class_resolver or group.resolve_class
    labels: Dict[str, int] = {'1': 0}
    for name, prints in fingerprints.items():
        try:
            wanted = [(resolve(cl), as_cyc(v)) for cl, v in prints]
        except GroupError as e:
            raise CharacterTableError(f"Fingerprint of {name!r} uses an unknown class: {e.message}",
                                      error_code="BAD_FINGERPRINT")
        matches = [r for r, row in enumerate(table.values) if all(row[ci] == v for ci, v in wanted)]
        if len(matches) != 1:
            raise CharacterTableError(
                f"Fingerprint of {name!r} matches {len(matches)} rows of {group.name or 'group'}",
                error_code="AMBIGUOUS_FINGERPRINT",
                details={'candidates': [[format_coeff(v) for v in table.values[r]] for r in matches]})
        if name != '1' and matches[0] in labels.values():
            other = next(k for k, r in labels.items() if r == matches[0])
            raise CharacterTableError(f"Characters {other!r} and {name!r} select the same row",
                                      error_code="AMBIGUOUS_FINGERPRINT")
        labels[name] = matches[0]
    return CharTable(group, table.values, labels)


def format_table(table: CharTable) -> str:
    group = table.group
    header = [""] + [group.class_label(c.index) for c in group.classes]
    sizes = ["|C|"] + [str(c.size) for c in group.classes]
    body = [[table.char_label(r)] + [format_coeff(v) for v in row] for r, row in enumerate(table.values)]
    grid = [header, sizes] + body
    widths = [max(len(line[i]) for line in grid) for i in range(len(header))]
    return "\n".join("  ".join(cell.rjust(w) for cell, w in zip(line, widths)) for line in grid)


def table_to_json(table: CharTable) -> Dict:
    group = table.group
    return {
        'group': group.name,
        'order': group.order,
        'classes': [{'label': group.class_label(c.index), 'size': c.size} for c in group.classes],
        'characters': [{'label': table.char_label(r), 'values': [format_coeff(v) for v in row]}
                       for r, row in enumerate(table.values)],
    }


def hermitian_product(group: FinGroup, a: Sequence[CycNum], b: Sequence[CycNum]) -> CycNum:
    """(1/|G|) sum over classes of |C| conj(a) b."""
    s = ZERO
    for c in group.classes:
        s = s + a[c.index].conj() * b[c.index] * c.size
    return s / Fraction(group.order)
