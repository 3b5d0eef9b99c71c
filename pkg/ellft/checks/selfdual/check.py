from collections import Counter
from typing import Iterable, List, Optional

from ...catalog import Expansion, expand_named
from ...report import FAIL, PARTIAL, PASS, CheckResult, VerificationReport
from ...utils.error_handler import CheckConfigError
from ..base_check import BaseCheck, check_specific


class Check(BaseCheck):
    """
    The claims attached to named combinations.

    ``self_dual`` asks FT(v) = v, ``maps_to`` asks FT(v) = target and ``equals`` asks
    v = target, each evaluated family by family on the expansion. Combinations whose
    expansion is elided in the source get a partial entry.
    """

    check_id = 'selfdual'

    def __init__(self, catalog, config=None):
        super().__init__(catalog, config)
        self._log_info("Self-duality check initialized")

    def run(self, group: Optional[str] = None, unipotent: Optional[str] = None,
            names: Optional[Iterable[str]] = None, **kwargs) -> VerificationReport:
        report = VerificationReport()
        for name in self.select(group, unipotent, names):
            report.checks.append(self.check_combination(name))
        self._log_summary(report)
        return report

    def select(self, group: Optional[str] = None, unipotent: Optional[str] = None,
               names: Optional[Iterable[str]] = None) -> List[str]:
        """
        Names to check, in catalog order.

        Explicit ``names`` win. With a group or unipotent filter, the combinations reachable
        from the selected restriction records (and their targets) are checked; otherwise all.
        """
        if names is not None:
            names = list(names)
            unknown = [n for n in names if n not in self.catalog.named_combinations]
            if unknown:
                raise CheckConfigError(f"Unknown named combination(s): {', '.join(unknown)}",
                                       error_code="UNKNOWN_COMBINATION")
            return names
        if group is None and unipotent is None:
            return [n for n, c in self.catalog.named_combinations.items() if c.claim != 'none']
        self.catalog.unipotents(group, unipotent)
        reached = set()
        stack = [n for r in self.catalog.restrictions_for(group, unipotent) for n in r.named]
        while stack:
            name = stack.pop()
            if name in reached:
                continue
            reached.add(name)
            combo = self.catalog.named(name)
            stack.extend(combo.named)
            if combo.target:
                stack.append(combo.target)
        return [n for n, c in self.catalog.named_combinations.items() if n in reached and c.claim != 'none']

    def _compare(self, name: str, got: Expansion, expected: Expansion, relation: str,
                 transformed: bool) -> Optional[CheckResult]:
        diff = got.difference(expected)
        if diff is not None:
            detail = (f"{relation} fails at {diff['family']}{diff['basis']}: "
                      f"got {diff['got']}, expected {diff['expected']}")
            self._log_error(f"{name}: {detail}")
            return CheckResult(self.check_id, name, FAIL, detail, diff)
        pending = [self.catalog.dual_pending(p) for p in got.pending] if transformed else list(got.pending)
        if Counter(pending) != Counter(expected.pending):
            detail = f"{relation} fails on the elided parts: {sorted(pending)} against {sorted(expected.pending)}"
            self._log_error(f"{name}: {detail}")
            return CheckResult(self.check_id, name, FAIL, detail,
                               {'got': sorted(pending), 'expected': sorted(expected.pending)})
        return None

    @check_specific
    def check_combination(self, name: str) -> CheckResult:
        """
        Evaluate the claim of one named combination.

        Args:
            name (str): The combination name, e.g. ``gamma(E7:E7(a4))``.

        Returns:
            CheckResult: pass, fail with the differing coordinate, or partial.

        Raises:
            CatalogError: If the name is unknown.
        """
        combo = self.catalog.named(name)
        if combo.claim == 'none':
            return CheckResult(self.check_id, name, PASS, "no claim")
        target = self.catalog.named(combo.target) if combo.target else None
        if not combo.is_complete or (target is not None and not target.is_complete):
            detail = combo.note or "expansion elided in the source"
            self._log_warning(f"{name}: {detail}")
            return CheckResult(self.check_id, name, PARTIAL, detail)

        v = expand_named(self.catalog, name)
        if combo.claim == 'self_dual':
            relation, got, expected, transformed = "FT(v) = v", v.fourier(), v, True
        elif combo.claim == 'maps_to':
            relation, got, expected, transformed = (f"FT(v) = {combo.target}", v.fourier(),
                                                    expand_named(self.catalog, combo.target), True)
        else:
            relation, got, expected, transformed = (f"v = {combo.target}", v,
                                                    expand_named(self.catalog, combo.target), False)
        failure = self._compare(name, got, expected, relation, transformed)
        if failure is not None:
            return failure
        if v.pending:
            detail = f"{relation} on the visible terms; remainder {', '.join(sorted(set(v.pending)))}"
            return CheckResult(self.check_id, name, PARTIAL, detail, {'pending': sorted(set(v.pending))})
        return CheckResult(self.check_id, name, PASS, relation)
