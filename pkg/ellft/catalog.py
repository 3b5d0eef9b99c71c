"""
The transcribed catalog.

A single JSON document holds the registry of small finite groups (family groups, component
groups and finite torsion models of infinite centralizers), the families with their group
and Delta twist, the unipotent records of the exceptional groups, the restriction records
and the named combinations. Loading resolves every label and builds every group and family;
:func:`validate_tables` recomputes whatever the tables state that can be recomputed.
"""
import json
import os
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from .chartab import CharTable, character_table, resolve_char_labels
from .cyclo import ZERO, CycNum, format_coeff, parse_coeff
from .elliptic import TorusAction, VirtualCombination, elliptic_det, torus_action, trivial_action, \
    virtual_combination
from .families import Family, FamilyVector, apply_ft, build_family, combination_term, sigma_coordinates
from .groups import FinGroup
from .report import FAIL, PARTIAL, PASS, VerificationReport
from .utils.config import global_config
from .utils.error_handler import CatalogError, EllFTError, GroupError, handle_error
from .utils.logger import logger

SCHEMA_VERSION = 1
DEFAULT_CATALOG_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'data', 'catalog.json')
K0 = 'K0'
TERM_BASES = ('xy', 'xrho')
COMPLETENESS = ('complete', 'partial')
CLAIMS = ('self_dual', 'maps_to', 'equals', 'none')

PairKey = Tuple[int, int]

_MISSING = object()


# -- records ------------------------------------------------------------------------


@dataclass(frozen=True)
class Term:
    """coeff * sigma(family, x, second) for basis ``xy``, coeff * (x, second) for ``xrho``."""
    family: str
    basis: str
    x: str
    second: str
    coeff: CycNum

    def __str__(self) -> str:
        head = 'sigma' if self.basis == 'xy' else 'xrho'
        return f"{format_coeff(self.coeff)}*{head}({self.family},{self.x},{self.second})"


@dataclass
class PairRecord:
    """
    One elliptic pair (s, h) of a unipotent record.

    For finite centralizers the pairs are computed and ``a_su`` names the centralizer of s in
    the component group; for torsion models they are transcribed together with the component
    group A_su of s, the class of h in it and the torus action on the centralizer of (s, u).
    """
    s: str
    h: str
    a_su: str
    h_class: str
    dual: Tuple[str, str]
    torus: List[Any] = field(default_factory=list)
    characters: Optional[List[str]] = None
    split: bool = True
    counted: bool = True
    source: str = 'printed'
    key: Optional[PairKey] = None

    @property
    def label(self) -> str:
        return f"({self.s},{self.h})"


@dataclass
class UnipotentRecord:
    """
    One row of the tables of elliptic pairs.

    Attributes:
        group (str): G2, F4, E6, E7 or E8.
        label (str): Unipotent class name such as ``F4(a3)``.
        component_group (str): A_u, or A_u^ad when ``adjoint`` is set, as printed.
        pair_count (int): The printed number of elliptic pairs.
        family (str): The family F_u (or singleton character) attached to u.
        family_gamma (str): The printed group of that family.
        delta_twisted (bool): Whether F_u carries the Delta twist.
        adjoint (bool): The printed column is A_u^ad rather than A_u.
        finite (Optional[str]): Registry group of a finite centralizer.
        model (Optional[str]): Registry group of a finite torsion model of an infinite centralizer.
        torus_dim (int): Dimension of the identity component of the centralizer.
        pairs (List[PairRecord]): The elliptic pairs.
        assertions (List[Dict[str, Any]]): Structural claims on the model.
    """
    group: str
    label: str
    component_group: str
    pair_count: int
    family: str
    family_gamma: str
    delta_twisted: bool = False
    adjoint: bool = False
    finite: Optional[str] = None
    model: Optional[str] = None
    torus_dim: int = 0
    note: str = ''
    pairs: List[PairRecord] = field(default_factory=list)
    assertions: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def is_finite(self) -> bool:
        return self.model is None

    @property
    def centralizer_group(self) -> str:
        return self.model or self.finite

    @property
    def scope(self) -> str:
        return f"{self.group}/{self.label}"


@dataclass
class NamedCombination:
    name: str
    terms: List[Term]
    singletons: Dict[str, CycNum]
    named: List[str]
    claim: str = 'none'
    target: Optional[str] = None
    completeness: str = 'complete'
    note: str = ''

    @property
    def is_complete(self) -> bool:
        return self.completeness == 'complete'


@dataclass
class RestrictionRecord:
    """
    The restriction to the maximal parahoric ``parahoric`` of pi(u, s, h).

    ``leading`` names the pair (x, y) of the family group of F_u whose sigma vector carries the
    leading coefficient; when unset it is (s, h) itself, or the singleton F_u.
    """
    group: str
    unipotent: str
    s: str
    h: str
    terms: List[Term]
    singletons: Dict[str, CycNum]
    named: List[str]
    completeness: str = 'complete'
    parahoric: str = K0
    leading: Optional[Tuple[str, str]] = None
    note: str = ''
    key: Optional[PairKey] = None

    @property
    def is_complete(self) -> bool:
        return self.completeness == 'complete'

    @property
    def scope(self) -> str:
        base = f"{self.group}/{self.unipotent}/({self.s},{self.h})"
        return base if self.parahoric == K0 else f"{base}@{self.parahoric}"


@dataclass
class Correction:
    where: str
    note: str


# -- expansions ---------------------------------------------------------------------


@dataclass
class Expansion:
    """
    A virtual character of the finite reductive quotient: one vector per family, integer
    or cyclotomic multiplicities of singleton characters, and the names of partial named
    combinations that could not be inlined.
    """
    vectors: Dict[str, FamilyVector] = field(default_factory=dict)
    singletons: Dict[str, CycNum] = field(default_factory=dict)
    pending: List[str] = field(default_factory=list)

    @property
    def is_partial(self) -> bool:
        return bool(self.pending)

    def add_vector(self, name: str, v: FamilyVector) -> None:
        self.vectors[name] = self.vectors[name] + v if name in self.vectors else v

    def add_singleton(self, name: str, c: CycNum) -> None:
        self.singletons[name] = self.singletons.get(name, ZERO) + c

    def merge(self, other: 'Expansion') -> None:
        for name, v in other.vectors.items():
            self.add_vector(name, v)
        for name, c in other.singletons.items():
            self.add_singleton(name, c)
        self.pending.extend(other.pending)

    def fourier(self) -> 'Expansion':
        """FT applied family by family; singletons are fixed."""
        return Expansion({name: apply_ft(v.family, v) for name, v in self.vectors.items()},
                         dict(self.singletons), list(self.pending))

    def vector(self, name: str) -> Optional[FamilyVector]:
        return self.vectors.get(name)

    def multiplicity(self, name: str) -> CycNum:
        return self.singletons.get(name, ZERO)

    def difference(self, other: 'Expansion') -> Optional[Dict[str, str]]:
        """
        The first coordinate where two expansions differ, or None when equal.

        Pending names are not compared.
        """
        for name in sorted(set(self.vectors) | set(other.vectors)):
            a, b = self.vectors.get(name), other.vectors.get(name)
            family = (a if a is not None else b).family
            left = a.coords if a is not None else (ZERO,) * len(family)
            right = b.coords if b is not None else (ZERO,) * len(family)
            for i, (x, y) in enumerate(zip(left, right)):
                if x != y:
                    return {'family': name, 'basis': family.basis_label(i),
                            'got': format_coeff(x), 'expected': format_coeff(y)}
        for name in sorted(set(self.singletons) | set(other.singletons)):
            x, y = self.multiplicity(name), other.multiplicity(name)
            if x != y:
                return {'family': name, 'basis': 'singleton',
                        'got': format_coeff(x), 'expected': format_coeff(y)}
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, Expansion):
            return NotImplemented
        return self.difference(other) is None and Counter(self.pending) == Counter(other.pending)

    def describe(self) -> str:
        parts = []
        for name in sorted(self.vectors):
            for lbl, c in self.vectors[name].terms():
                parts.append(f"{c}*{name}{lbl}")
        for name in sorted(self.singletons):
            if not self.singletons[name].is_zero():
                parts.append(f"{format_coeff(self.singletons[name])}*{name}")
        parts.extend(f"<{p}>" for p in self.pending)
        return " + ".join(parts) or "0"


# -- the catalog --------------------------------------------------------------------


class Catalog:
    """
    The loaded catalog. Use :func:`load_catalog` to build one; instances are not modified
    after loading.
    """

    def __init__(self, path: Optional[str] = None):
        self.path = path
        self.schema_version: int = SCHEMA_VERSION
        self.groups: Dict[str, FinGroup] = {}
        self.fingerprints: Dict[str, Dict[str, Dict[str, list]]] = {}
        self.families: Dict[str, Family] = {}
        self.singletons: Set[str] = set()
        self.records: Dict[str, List[UnipotentRecord]] = {}
        self.named_combinations: Dict[str, NamedCombination] = {}
        self.restrictions: List[RestrictionRecord] = []
        self.corrections: List[Correction] = []
        self._prototypes: Dict[Tuple[str, bool], Family] = {}
        self._tables: Dict[str, CharTable] = {}
        self._restriction_index: Dict[Tuple[str, str, str, PairKey], RestrictionRecord] = {}

    def __repr__(self) -> str:
        return (f"Catalog({self.path!r}: {self.record_count} unipotent records, "
                f"{len(self.restrictions)} restrictions, {len(self.named_combinations)} named)")

    # -- lookups ----------------------------------------------------------------------

    @property
    def record_count(self) -> int:
        return sum(len(v) for v in self.records.values())

    @property
    def group_names(self) -> List[str]:
        return list(self.records)

    def group_record(self, name: str) -> List[UnipotentRecord]:
        if name not in self.records:
            raise CatalogError(f"No group {name!r} in the catalog", path=f"groups[{name}]",
                               reason="unknown group", error_code="UNKNOWN_RECORD")
        return self.records[name]

    def unipotent(self, group: str, label: str) -> UnipotentRecord:
        for rec in self.group_record(group):
            if rec.label == label:
                return rec
        raise CatalogError(f"No unipotent class {label!r} in {group}", path=f"groups[{group}]",
                           reason="unknown unipotent", error_code="UNKNOWN_RECORD")

    def unipotents(self, group: Optional[str] = None, unipotent: Optional[str] = None) -> List[UnipotentRecord]:
        """Unipotent records in catalog order, optionally filtered."""
        names = [group] if group else self.group_names
        out = []
        for name in names:
            for rec in self.group_record(name):
                if unipotent is None or rec.label == unipotent:
                    out.append(rec)
        if group and unipotent and not out:
            self.unipotent(group, unipotent)
        return out

    def restrictions_for(self, group: Optional[str] = None, unipotent: Optional[str] = None,
                         parahoric: Optional[str] = None) -> List[RestrictionRecord]:
        return [r for r in self.restrictions
                if (group is None or r.group == group)
                and (unipotent is None or r.unipotent == unipotent)
                and (parahoric is None or r.parahoric == parahoric)]

    def family(self, name: str) -> Family:
        if name not in self.families:
            raise CatalogError(f"Unknown family {name!r}", path=f"families[{name}]",
                               reason="unresolved family", error_code="UNRESOLVED_LABEL")
        return self.families[name]

    def family_group(self, name: str) -> FinGroup:
        if name not in self.groups:
            raise CatalogError(f"Unknown group {name!r}", path=f"family_groups[{name}]",
                               reason="unresolved group", error_code="UNRESOLVED_LABEL")
        return self.groups[name]

    def named(self, name: str) -> NamedCombination:
        if name not in self.named_combinations:
            raise CatalogError(f"Unknown named combination {name!r}", path=f"named_combinations[{name}]",
                               reason="unresolved combination", error_code="UNRESOLVED_LABEL")
        return self.named_combinations[name]

    def is_character(self, name: str) -> bool:
        return name in self.families or name in self.singletons

    def labelled_table(self, group_name: str) -> CharTable:
        """Character table of a registry group with the names given by its ``1`` fingerprints."""
        if group_name not in self._tables:
            group = self.family_group(group_name)
            prints = self.fingerprints.get(group_name, {}).get('1', {})
            self._tables[group_name] = resolve_char_labels(character_table(group), prints)
        return self._tables[group_name]

    def prototype(self, gamma: str, twisted: bool = False) -> Family:
        """The family built on a registry group, shared by all families with that group."""
        key = (gamma, twisted)
        if key not in self._prototypes:
            self._prototypes[key] = build_family(f"{gamma}{'~' if twisted else ''}", self.family_group(gamma),
                                                 twisted, self.fingerprints.get(gamma, {}))
        return self._prototypes[key]

    # -- pairs ------------------------------------------------------------------------

    def pair_group(self, rec: UnipotentRecord) -> FinGroup:
        return self.family_group(rec.centralizer_group)

    def pair_key(self, rec: UnipotentRecord, s: str, h: str) -> PairKey:
        """
        The commuting-pair orbit of (s, h) in the centralizer group of the record.

        Raises:
            GroupError: For unknown labels or a non-commuting pair.
        """
        group = self.pair_group(rec)
        x, y = group.resolve_pair(s, h)
        return group.canonical_pair(x, y)

    def dual_key(self, rec: UnipotentRecord, key: PairKey) -> PairKey:
        group = self.pair_group(rec)
        x = group.classes[key[0]].rep
        y = group.centralizer_of_class(key[0]).classes[key[1]].rep
        return group.canonical_pair(y, x)

    def pair_for_key(self, rec: UnipotentRecord, key: PairKey) -> Optional[PairRecord]:
        for p in rec.pairs:
            if p.key == key:
                return p
        return None

    def restriction(self, rec: UnipotentRecord, key: PairKey, parahoric: str = K0) -> Optional[RestrictionRecord]:
        return self._restriction_index.get((rec.group, rec.label, parahoric, key))

    def dual_restriction(self, r: RestrictionRecord) -> Optional[RestrictionRecord]:
        rec = self.unipotent(r.group, r.unipotent)
        return self.restriction(rec, self.dual_key(rec, r.key), r.parahoric)

    def a_su(self, rec: UnipotentRecord, pair: PairRecord) -> Tuple[CharTable, TorusAction, Any]:
        """
        The component group of s u with its labelled table, its torus action and the class of h.

        For finite centralizers the group is Z(s) inside the component group and the torus is
        trivial; the class of h is returned as an index.
        """
        if rec.is_finite:
            family = self.prototype(rec.centralizer_group)
            table = family.tables[pair.key[0]]
            return table, trivial_action(table.group), pair.key[1]
        table = self.labelled_table(pair.a_su)
        act = torus_action(table.group, pair.torus) if pair.torus else trivial_action(table.group)
        return table, act, pair.h_class

    def virtual_combinations(self, rec: UnipotentRecord) -> List[Tuple[PairRecord, VirtualCombination]]:
        """The virtual combinations pi(u, s, h) of the split pairs of a record."""
        out = []
        for pair in rec.pairs:
            if not pair.split:
                continue
            table, _, h = self.a_su(rec, pair)
            out.append((pair, virtual_combination(table, h, (rec.label, pair.s, pair.h), pair.characters)))
        return out

    def dual_pending(self, name: str) -> str:
        """The name FT maps a named combination to, as far as its claim states."""
        combo = self.named_combinations.get(name)
        if combo is None:
            return name
        if combo.claim == 'maps_to' and combo.target:
            return combo.target
        for other in self.named_combinations.values():
            if other.claim == 'maps_to' and other.target == name:
                return other.name
        return name


# -- loading ------------------------------------------------------------------------


def _schema_error(message: str, path: str) -> CatalogError:
    return CatalogError(message, path=path, reason="schema", error_code="CATALOG_SCHEMA")


def _field(obj: Any, key: str, path: str, kind: Any = None, default: Any = _MISSING) -> Any:
    if not isinstance(obj, Mapping):
        raise _schema_error("Expected an object", path)
    if key not in obj:
        if default is _MISSING:
            raise _schema_error(f"Missing field {key!r}", path)
        return default
    value = obj[key]
    if kind is not None:
        if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
            raise _schema_error(f"Field {key!r} has the wrong type {type(value).__name__}", f"{path}.{key}")
    return value


def _coeff(value: Any, path: str) -> CycNum:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise _schema_error("Coefficients are strings or integers", path)
    try:
        return parse_coeff(value)
    except EllFTError as e:
        raise CatalogError(f"Bad coefficient {value!r}: {e.message}", path=path, reason="coefficient",
                           error_code="CATALOG_COEFF", details={'position': getattr(e, 'position', 0)})


def _wrap(error: Exception, path: str) -> CatalogError:
    if isinstance(error, CatalogError):
        return error
    if isinstance(error, EllFTError):
        return CatalogError(error.message, path=path, reason=error.error_code or "invalid",
                            error_code="CATALOG_UNRESOLVED", details=error.details)
    wrapped = handle_error(error, path)
    if isinstance(wrapped, CatalogError):
        return wrapped
    return CatalogError(str(error), path=path, reason="invalid", error_code="CATALOG_SCHEMA")


def _substitute(text: str, s: str, h: str, j: str = '') -> str:
    return text.replace('$s', s).replace('$h', h).replace('$j', j)


class _CatalogBuilder:
    """Reads the JSON document section by section, resolving references as it goes."""

    def __init__(self, path: str, data: Any):
        if not isinstance(data, Mapping):
            raise _schema_error("The catalog must be a JSON object", "$")
        self.data = data
        self.catalog = Catalog(path)

    def build(self) -> Catalog:
        version = _field(self.data, 'schema_version', '$', int, SCHEMA_VERSION)
        if version != SCHEMA_VERSION:
            raise CatalogError(f"Unsupported schema version {version}", path="$.schema_version",
                               reason="version", error_code="CATALOG_VERSION")
        self.catalog.schema_version = version
        self._groups(_field(self.data, 'family_groups', '$', dict, {}))
        self._families(_field(self.data, 'families', '$', dict, {}))
        self.catalog.singletons = set(_field(self.data, 'singletons', '$', list, []))
        overlap = self.catalog.singletons & set(self.catalog.families)
        if overlap:
            raise _schema_error(f"Names both families and singletons: {sorted(overlap)}", "$.singletons")
        self._named(_field(self.data, 'named_combinations', '$', list, []))
        self._records(_field(self.data, 'groups', '$', list, []))
        self._restrictions(_field(self.data, 'restrictions', '$', list, []))
        for i, c in enumerate(_field(self.data, 'corrections', '$', list, [])):
            path = f"$.corrections[{i}]"
            self.catalog.corrections.append(Correction(_field(c, 'where', path, str), _field(c, 'note', path, str)))
        for c in self.catalog.corrections:
            logger.debug(f"Corrected entry {c.where}: {c.note}")
        if self.catalog.corrections:
            logger.warning(f"{len(self.catalog.corrections)} catalog entries are corrected from the printed "
                           f"source; see Catalog.corrections")
        return self.catalog

    # -- sections ---------------------------------------------------------------------

    def _groups(self, specs: Mapping[str, Any]) -> None:
        cap = global_config.get('group_order_cap', 10000)
        for name, spec in specs.items():
            path = f"$.family_groups[{name}]"
            try:
                points = _field(spec, 'points', path, int)
                gens = _field(spec, 'generators', path, list)
                labels = _field(spec, 'class_labels', path, dict, {})
                self.catalog.groups[name] = FinGroup.from_generators(points, gens, labels, cap=cap, name=name)
                self.catalog.fingerprints[name] = _field(spec, 'char_fingerprints', path, dict, {})
            except Exception as e:
                raise _wrap(e, path)

    def _families(self, specs: Mapping[str, Any]) -> None:
        for name, spec in specs.items():
            path = f"$.families[{name}]"
            try:
                gamma = _field(spec, 'gamma', path, str)
                twisted = _field(spec, 'delta_twisted', path, bool, False)
                b_f = _field(spec, 'b_F', path, int, None)
                proto = self.catalog.prototype(gamma, twisted)
                family = replace(proto, name=name, b_F=b_f)
                if b_f is None:
                    family.b_F = _b_from_name(name)
                self.catalog.families[name] = family
            except Exception as e:
                raise _wrap(e, path)
        logger.debug(f"Built {len(self.catalog.families)} families on {len(self.catalog._prototypes)} groups")

    def _term(self, raw: Any, path: str, s: str = '', h: str = '', j: str = '') -> Term:
        if not isinstance(raw, list) or len(raw) not in (4, 5):
            raise _schema_error("A term is [family, basis, x, second, coeff?]", path)
        family, basis, x, second = (str(v) for v in raw[:4])
        if basis not in TERM_BASES:
            raise _schema_error(f"Unknown term basis {basis!r}", path)
        coeff = _coeff(raw[4], path) if len(raw) == 5 else parse_coeff(1)
        term = Term(family, basis, _substitute(x, s, h, j), _substitute(second, s, h, j), coeff)
        try:
            combination_term(self.catalog.family(family), term.basis, term.x, term.second, term.coeff)
        except Exception as e:
            raise _wrap(e, path)
        return term

    def _singletons(self, raw: Any, path: str) -> Dict[str, CycNum]:
        if not isinstance(raw, Mapping):
            raise _schema_error("Singletons are an object name -> coefficient", path)
        out = {}
        for name, value in raw.items():
            if name not in self.catalog.singletons:
                raise CatalogError(f"Unknown singleton character {name!r}", path=f"{path}.{name}",
                                   reason="unresolved character", error_code="UNRESOLVED_LABEL")
            out[name] = _coeff(value, f"{path}.{name}")
        return out

    def _named(self, specs: Sequence[Any]) -> None:
        cat = self.catalog
        for i, spec in enumerate(specs):
            path = f"$.named_combinations[{i}]"
            name = _field(spec, 'name', path, str)
            if name in cat.named_combinations:
                raise _schema_error(f"Duplicate named combination {name!r}", path)
            claim_raw = _field(spec, 'claim', path, None, 'none')
            target = None
            if isinstance(claim_raw, Mapping):
                claim = 'equals' if 'equals' in claim_raw else 'maps_to'
                target = _field(claim_raw, claim, f"{path}.claim", str)
            else:
                claim = str(claim_raw)
            if claim not in CLAIMS:
                raise _schema_error(f"Unknown claim {claim!r}", f"{path}.claim")
            completeness = _field(spec, 'completeness', path, str, 'complete')
            if completeness not in COMPLETENESS:
                raise _schema_error(f"Unknown completeness {completeness!r}", f"{path}.completeness")
            terms = [self._term(t, f"{path}.terms[{j}]") for j, t in enumerate(_field(spec, 'terms', path, list, []))]
            cat.named_combinations[name] = NamedCombination(
                name, terms, self._singletons(_field(spec, 'singletons', path, dict, {}), f"{path}.singletons"),
                list(_field(spec, 'named', path, list, [])), claim, target, completeness,
                _field(spec, 'note', path, str, ''))
        for i, combo in enumerate(cat.named_combinations.values()):
            for ref in combo.named + ([combo.target] if combo.target else []):
                if ref not in cat.named_combinations:
                    raise CatalogError(f"Unknown named combination {ref!r}", path=f"$.named_combinations[{i}]",
                                       reason="unresolved combination", error_code="UNRESOLVED_LABEL")
        for name in cat.named_combinations:
            _check_acyclic(cat, name, ())

    def _records(self, groups: Sequence[Any]) -> None:
        cat = self.catalog
        for gi, entry in enumerate(groups):
            gpath = f"$.groups[{gi}]"
            gname = _field(entry, 'name', gpath, str)
            records = cat.records.setdefault(gname, [])
            for ui, spec in enumerate(_field(entry, 'unipotents', gpath, list, [])):
                path = f"{gpath}.unipotents[{ui}]"
                try:
                    records.append(self._record(gname, spec, path))
                except Exception as e:
                    raise _wrap(e, path)
        logger.debug(f"Read {cat.record_count} unipotent records")

    def _record(self, gname: str, spec: Mapping[str, Any], path: str) -> UnipotentRecord:
        cat = self.catalog
        centralizer = _field(spec, 'centralizer', path, dict)
        finite = _field(centralizer, 'finite', f"{path}.centralizer", str, None)
        model = _field(centralizer, 'model', f"{path}.centralizer", str, None)
        if (finite is None) == (model is None):
            raise _schema_error("A centralizer is either finite or a model", f"{path}.centralizer")
        rec = UnipotentRecord(
            group=gname,
            label=_field(spec, 'label', path, str),
            component_group=_field(spec, 'component_group', path, str),
            pair_count=_field(spec, 'pair_count', path, int),
            family=_field(spec, 'family', path, str),
            family_gamma=_field(spec, 'family_gamma', path, str),
            delta_twisted=_field(spec, 'delta_twisted', path, bool, False),
            adjoint=_field(spec, 'adjoint', path, bool, False),
            finite=finite,
            model=model,
            torus_dim=_field(centralizer, 'torus_dim', f"{path}.centralizer", int, 0),
            note=_field(centralizer, 'note', f"{path}.centralizer", str, ''),
            assertions=list(_field(spec, 'assertions', path, list, [])),
        )
        if not cat.is_character(rec.family):
            raise CatalogError(f"Unknown family {rec.family!r}", path=f"{path}.family",
                               reason="unresolved family", error_code="UNRESOLVED_LABEL")
        cat.family_group(rec.component_group)
        group = cat.family_group(rec.centralizer_group)

        if rec.is_finite:
            rec.pairs = _computed_pairs(group)
        else:
            for pi, raw in enumerate(_field(spec, 'pairs', path, list)):
                ppath = f"{path}.pairs[{pi}]"
                dual = _field(raw, 'dual', ppath, list)
                if len(dual) != 2:
                    raise _schema_error("A dual reference is [s, h]", f"{ppath}.dual")
                pair = PairRecord(
                    s=_field(raw, 's', ppath, str), h=_field(raw, 'h', ppath, str),
                    a_su=_field(raw, 'a_su', ppath, str), h_class=_field(raw, 'h_class', ppath, str),
                    dual=(str(dual[0]), str(dual[1])), torus=_field(raw, 'torus', ppath, list, []),
                    characters=_field(raw, 'characters', ppath, list, None),
                    split=_field(raw, 'split', ppath, bool, True), counted=_field(raw, 'counted', ppath, bool, True),
                    source=_field(raw, 'source', ppath, str, 'printed'))
                cat.family_group(pair.a_su)
                try:
                    pair.key = cat.pair_key(rec, pair.s, pair.h)
                except GroupError as e:
                    if e.error_code != "NOT_COMMUTING":
                        raise _wrap(e, ppath)
                    # kept unkeyed; validate_tables reports it
                    logger.debug(f"{rec.scope}: pair {pair.label} does not commute in {rec.model}")
                rec.pairs.append(pair)
            keys = [p.key for p in rec.pairs if p.key is not None]
            if len(keys) != len(set(keys)):
                raise _schema_error("Two pairs name the same orbit", f"{path}.pairs")
        return rec

    def _restrictions(self, specs: Sequence[Any]) -> None:
        cat = self.catalog
        for i, spec in enumerate(specs):
            path = f"$.restrictions[{i}]"
            try:
                for r in self._restriction(spec, path):
                    rec = cat.unipotent(r.group, r.unipotent)
                    try:
                        r.key = cat.pair_key(rec, r.s, r.h)
                    except GroupError as e:
                        raise CatalogError(f"Pair ({r.s},{r.h}) does not resolve: {e.message}", path=path,
                                           reason="unresolved pair", error_code="UNKNOWN_PAIR")
                    if cat.pair_for_key(rec, r.key) is None:
                        raise CatalogError(f"Pair ({r.s},{r.h}) is not an elliptic pair of {rec.scope}",
                                           path=path, reason="unknown pair", error_code="UNKNOWN_PAIR")
                    index_key = (r.group, r.unipotent, r.parahoric, r.key)
                    if index_key in cat._restriction_index:
                        raise _schema_error(f"Second restriction record for {r.scope}", path)
                    cat._restriction_index[index_key] = r
                    cat.restrictions.append(r)
            except Exception as e:
                raise _wrap(e, path)
        logger.debug(f"Read {len(cat.restrictions)} restriction records")

    def _restriction(self, spec: Mapping[str, Any], path: str) -> List[RestrictionRecord]:
        """
        One record, or one per pair when ``pairs`` lists several; terms use ``$s`` and ``$h``, and
        ``$j`` for the optional third entry of a pair.
        """
        cat = self.catalog
        group = _field(spec, 'group', path, str)
        unipotent = _field(spec, 'unipotent', path, str)
        cat.unipotent(group, unipotent)
        if 'pairs' in spec:
            pairs = []
            for p in _field(spec, 'pairs', path, list):
                if not isinstance(p, list) or len(p) not in (2, 3):
                    raise _schema_error("A pair is [s, h] or [s, h, j]", f"{path}.pairs")
                pairs.append((str(p[0]), str(p[1]), str(p[2]) if len(p) == 3 else ''))
        else:
            pairs = [(_field(spec, 's', path, str), _field(spec, 'h', path, str), '')]
        completeness = _field(spec, 'completeness', path, str, 'complete')
        if completeness not in COMPLETENESS:
            raise _schema_error(f"Unknown completeness {completeness!r}", f"{path}.completeness")
        named = list(_field(spec, 'named', path, list, []))
        for ref in named:
            cat.named(ref)
        if completeness == 'partial' and not any(not cat.named(n).is_complete for n in named):
            raise _schema_error("A partial record must reference a partial named combination", path)
        singletons = self._singletons(_field(spec, 'singletons', path, dict, {}), f"{path}.singletons")
        leading_raw = _field(spec, 'leading', path, list, None)
        out = []
        for s, h, j in pairs:
            terms = [self._term(t, f"{path}.terms[{k}]", s, h, j)
                     for k, t in enumerate(_field(spec, 'terms', path, list, []))]
            leading = None
            if leading_raw is not None:
                if len(leading_raw) != 2:
                    raise _schema_error("leading is [x, y]", f"{path}.leading")
                leading = (_substitute(str(leading_raw[0]), s, h, j), _substitute(str(leading_raw[1]), s, h, j))
            out.append(RestrictionRecord(group, unipotent, s, h, terms, dict(singletons), named, completeness,
                                         _field(spec, 'parahoric', path, str, K0), leading,
                                         _field(spec, 'note', path, str, '')))
        return out


def _b_from_name(name: str) -> Optional[int]:
    tail = name.split('_')[-1]
    return int(tail) if tail.isdigit() else None


def _check_acyclic(cat: Catalog, name: str, stack: Tuple[str, ...]) -> None:
    if name in stack:
        raise CatalogError(f"Named combinations refer to each other in a cycle: {' -> '.join(stack + (name,))}",
                           path=f"$.named_combinations[{name}]", reason="cycle", error_code="CATALOG_SCHEMA")
    for ref in cat.named_combinations[name].named:
        _check_acyclic(cat, ref, stack + (name,))


def _display_label(group: FinGroup, ci: int) -> str:
    label = group.class_label(ci)
    if label.startswith('c') and label[1:].isdigit():
        inverse = group.class_label(group.inverse_class(ci))
        if not (inverse.startswith('c') and inverse[1:].isdigit()):
            return f"{inverse}^-1"
    return label


def _computed_pairs(group: FinGroup) -> List[PairRecord]:
    """Pair records of a finite centralizer, one per commuting-pair orbit."""
    orbits = group.commuting_pair_orbits()
    names = []
    for o in orbits:
        z = group.centralizer_of_class(o.x_class)
        names.append((_display_label(group, o.x_class), _display_label(z, o.y_class)))
    pairs = []
    for o, (s, h) in zip(orbits, names):
        pairs.append(PairRecord(s=s, h=h, a_su=f"Z({s})", h_class=h, dual=names[o.dual],
                                source='computed', key=(o.x_class, o.y_class)))
    return pairs


def load_catalog(path: Optional[str] = None) -> Catalog:
    """
    Load and resolve a catalog.

    Args:
        path (Optional[str]): Catalog file; defaults to ``catalog_path`` of the global config,
            then to the shipped catalog. An empty file is a valid catalog with no records.

    Returns:
        Catalog: The loaded catalog.

    Raises:
        CatalogError: On unreadable files, invalid JSON, schema violations, unresolved labels
            and unparsable coefficients; ``path`` locates the offending entry.
    """
    path = path or global_config.get('catalog_path') or DEFAULT_CATALOG_PATH
    try:
        with open(path, 'r', encoding='utf-8') as f:
            text = f.read()
        data = json.loads(text) if text.strip() else {}
    except (OSError, ValueError) as e:
        raise handle_error(e, path)
    catalog = _CatalogBuilder(path, data).build()
    logger.info(f"Loaded catalog {path}: {catalog.record_count} unipotent records, "
                f"{len(catalog.restrictions)} restriction records")
    return catalog


# -- expansion ----------------------------------------------------------------------


def _expand_parts(cat: Catalog, terms: Iterable[Term], singletons: Mapping[str, CycNum],
                  named: Iterable[str], stack: Tuple[str, ...]) -> Expansion:
    out = Expansion()
    for t in terms:
        family = cat.family(t.family)
        out.add_vector(t.family, combination_term(family, t.basis, t.x, t.second, t.coeff))
    for name, c in singletons.items():
        out.add_singleton(name, c)
    for ref in named:
        if cat.named(ref).is_complete:
            out.merge(expand_named(cat, ref, stack))
        else:
            out.pending.append(ref)
    return out


def expand_named(cat: Catalog, name: str, _stack: Tuple[str, ...] = ()) -> Expansion:
    """
    Expand a named combination, inlining the complete combinations it refers to.

    The visible terms of a partial combination are expanded; its name is not added to
    ``pending``.
    """
    combo = cat.named(name)
    return _expand_parts(cat, combo.terms, combo.singletons, combo.named, _stack + (name,))


def expand_restriction(cat: Catalog, rec: RestrictionRecord) -> Expansion:
    """
    Expand a restriction record: ``xy`` terms through sigma(x, y), ``xrho`` terms directly,
    singletons as multiplicities, complete named combinations inlined and partial ones
    listed in ``pending``.
    """
    return _expand_parts(cat, rec.terms, rec.singletons, rec.named, ())


def leading_coefficient(cat: Catalog, rec: RestrictionRecord) -> Tuple[Optional[CycNum], Optional[int], Any]:
    """
    zeta(s, h): the coefficient of sigma(F_u, s, h) in the expansion, or the multiplicity of
    F_u when it is a singleton.

    Returns:
        Tuple: (coefficient or None when F_u is absent, orbit index or None, the orbit).
    """
    unip = cat.unipotent(rec.group, rec.unipotent)
    expansion = expand_restriction(cat, rec)
    if unip.family not in cat.families:
        c = expansion.multiplicity(unip.family)
        return (None if c.is_zero() else c), None, None
    family = cat.family(unip.family)
    x, y = rec.leading or (rec.s, rec.h)
    orbit = family.orbit(x, y)
    v = expansion.vector(unip.family)
    if v is None:
        return None, orbit.index, orbit
    c = sigma_coordinates(family, v)[orbit.index]
    return (None if c.is_zero() else c), orbit.index, orbit


# -- validation ---------------------------------------------------------------------


def _structure_problems(cat: Catalog, rec: UnipotentRecord) -> List[str]:
    problems = []
    group = cat.pair_group(rec)
    by_label = {(p.s, p.h): p for p in rec.pairs}
    for p in rec.pairs:
        if p.key is None:
            problems.append(f"{p.label} do not commute in {rec.model}")
            continue
        dual = by_label.get(p.dual)
        if dual is None:
            problems.append(f"dual {p.dual} of {p.label} is not listed")
            continue
        if dual.dual != (p.s, p.h):
            problems.append(f"dual of {p.label} is not an involution")
        if dual.key is not None and cat.dual_key(rec, p.key) != dual.key:
            problems.append(f"{p.label} swapped is not conjugate to {dual.label}")
        table, act, h = cat.a_su(rec, p)
        try:
            if elliptic_det(act, table.group.classes[h].rep if isinstance(h, int) else h).is_zero():
                problems.append(f"{p.label}: h is not elliptic in {p.a_su}")
        except EllFTError as e:
            problems.append(f"{p.label}: {e.message}")
    for a in rec.assertions:
        labels = a.get('centralizer_of', [])
        target = a.get('isomorphic_to')
        z = group
        try:
            for label in labels:
                z = z.centralizer_of_element(z.representative(label))
            expected = cat.family_group(target)
        except EllFTError as e:
            problems.append(f"assertion {a}: {e.message}")
            continue
        if z.order_profile() != expected.order_profile():
            problems.append(f"Z({','.join(labels)}) of order {z.order} is not isomorphic to {target}")
    return problems


def validate_tables(cat: Catalog, group: Optional[str] = None, unipotent: Optional[str] = None) -> VerificationReport:
    """
    Recompute what the tables of elliptic pairs state.

    For finite centralizers the number of commuting-pair orbits is recomputed and compared
    with the printed count; for torsion models the counted pairs are compared with it, the
    pairs must commute, the dual references must be an involution matching the swapped pair,
    h must be elliptic and the structural assertions must hold. Records whose pairs lack a
    restriction record are reported as partial.

    Returns:
        VerificationReport: One ``counts`` entry per unipotent record.
    """
    report = VerificationReport()
    for rec in cat.unipotents(group, unipotent):
        problems: List[str] = []
        witness: Dict[str, Any] = {'stored': rec.pair_count}
        if rec.is_finite:
            computed = len(cat.pair_group(rec).commuting_pair_orbits())
        else:
            computed = sum(1 for p in rec.pairs if p.counted)
            problems.extend(_structure_problems(cat, rec))
        witness['recomputed'] = computed
        if computed != rec.pair_count:
            problems.insert(0, f"{computed} pairs recomputed, {rec.pair_count} printed")

        if rec.family in cat.families:
            family = cat.family(rec.family)
            gamma = family.gamma.name
            if family.delta_twisted != rec.delta_twisted:
                problems.append(f"Delta twist of {rec.family} disagrees with the family registry")
        else:
            gamma = '1'
        if gamma != rec.family_gamma:
            problems.append(f"family {rec.family} has group {gamma}, printed {rec.family_gamma}")

        missing = [p.label for p in rec.pairs if p.split and p.key is not None and cat.restriction(rec, p.key) is None]
        if problems:
            report.add('counts', rec.scope, FAIL, "; ".join(problems), witness)
        elif missing:
            report.add('counts', rec.scope, PARTIAL,
                       f"{computed} pairs; no restriction record for {', '.join(missing)}", witness)
        else:
            selfdual = sum(1 for p in rec.pairs if p.split and p.key is not None and cat.dual_key(rec, p.key) == p.key)
            report.add('counts', rec.scope, PASS, f"{computed} pairs ({selfdual} self-dual)", witness)
    return report
