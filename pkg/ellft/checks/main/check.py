from collections import Counter
from typing import Any, Dict, Optional

from ...catalog import K0, RestrictionRecord, expand_restriction
from ...report import FAIL, PARTIAL, PASS, CheckResult, VerificationReport
from ..base_check import BaseCheck, check_specific


class Check(BaseCheck):
    """
    Commutation of parahoric restriction with the Fourier transform.

    For every restriction record of pi(u, s, h) the family-wise transform of its expansion
    must equal the expansion of the record of the swapped pair (h, s). Singleton characters
    are fixed. Partial named combinations left in an expansion are compared by name: each
    must map to its stated image in the other expansion.
    """

    check_id = 'main'

    def __init__(self, catalog, config=None):
        super().__init__(catalog, config)
        self._log_info("Main check initialized")

    def run(self, group: Optional[str] = None, unipotent: Optional[str] = None,
            parahoric: Optional[str] = None, **kwargs) -> VerificationReport:
        self.catalog.unipotents(group, unipotent)
        report = VerificationReport()
        for rec in self.catalog.restrictions_for(group, unipotent, parahoric):
            report.checks.append(self.check_record(rec))
        self._log_summary(report)
        return report

    def check_record(self, rec: RestrictionRecord) -> CheckResult:
        dual = self.catalog.dual_restriction(rec)
        if dual is None:
            self._log_warning(f"{rec.scope}: no record for the swapped pair")
            return CheckResult(self.check_id, rec.scope, PARTIAL, "no restriction record for the swapped pair")

        transformed = expand_restriction(self.catalog, rec).fourier()
        expected = expand_restriction(self.catalog, dual)
        diff = transformed.difference(expected)
        if diff is not None:
            detail = (f"FT differs from ({dual.s},{dual.h}) at {diff['family']}{diff['basis']}: "
                      f"got {diff['got']}, expected {diff['expected']}")
            self._log_error(f"{rec.scope}: {detail}")
            return CheckResult(self.check_id, rec.scope, FAIL, detail, dict(diff, dual=dual.scope))

        images = Counter(self.catalog.dual_pending(name) for name in transformed.pending)
        if images != Counter(expected.pending):
            witness: Dict[str, Any] = {'transformed': sorted(images.elements()),
                                       'expected': sorted(expected.pending), 'dual': dual.scope}
            detail = (f"remainders do not correspond: {', '.join(witness['transformed']) or '-'} "
                      f"against {', '.join(witness['expected']) or '-'}")
            self._log_error(f"{rec.scope}: {detail}")
            return CheckResult(self.check_id, rec.scope, FAIL, detail, witness)

        if rec.is_complete and dual.is_complete and not transformed.pending:
            label = 'self-dual' if dual is rec else f"maps to ({dual.s},{dual.h})"
            return CheckResult(self.check_id, rec.scope, PASS, label)

        remainder = sorted(set(transformed.pending) | set(expected.pending))
        detail = "head terms agree; remainder " + (", ".join(remainder) if remainder else "elided in the source")
        self._log_warning(f"{rec.scope}: {detail}")
        return CheckResult(self.check_id, rec.scope, PARTIAL, detail, {'pending': remainder})

    @check_specific
    def check_pair(self, group: str, unipotent: str, s: str, h: str, parahoric: str = K0) -> CheckResult:
        """
        Run the check on a single pair given by its labels.

        Args:
            group (str): The exceptional group, e.g. ``E7``.
            unipotent (str): The unipotent class, e.g. ``A4+A1``.
            s (str): Label of s in the centralizer group.
            h (str): Label of h.
            parahoric (str): The maximal parahoric; ``K0`` by default.

        Returns:
            CheckResult: The entry for that pair, or a partial entry when nothing is recorded.
        """
        rec = self.catalog.unipotent(group, unipotent)
        r = self.catalog.restriction(rec, self.catalog.pair_key(rec, s, h), parahoric)
        if r is None:
            return CheckResult(self.check_id, f"{rec.scope}/({s},{h})", PARTIAL, "no restriction record")
        return self.check_record(r)
