from typing import Optional

from ...catalog import K0, RestrictionRecord, leading_coefficient
from ...cyclo import format_coeff
from ...report import FAIL, PARTIAL, PASS, CheckResult, VerificationReport
from ..base_check import BaseCheck, check_specific


class Check(BaseCheck):
    """
    The leading coefficients zeta(s, h) on the family of u.

    zeta(s, h) is the coefficient of sigma(F_u, s, h) in the hyperspecial restriction. It
    must be a root of unity and zeta(s, h) * conj(zeta(h, s)) must equal Delta of the
    pair; Delta is 1 outside the twisted families and for singleton F_u.
    """

    check_id = 'zeta'

    def __init__(self, catalog, config=None):
        super().__init__(catalog, config)
        self._log_info("Zeta check initialized")

    def run(self, group: Optional[str] = None, unipotent: Optional[str] = None, **kwargs) -> VerificationReport:
        self.catalog.unipotents(group, unipotent)
        report = VerificationReport()
        for rec in self.catalog.restrictions_for(group, unipotent, K0):
            report.checks.append(self.check_record(rec))
        self._log_summary(report)
        return report

    def _missing(self, rec: RestrictionRecord, which: RestrictionRecord) -> CheckResult:
        detail = f"no leading term on the family of {rec.unipotent} in ({which.s},{which.h})"
        if rec.is_complete and which.is_complete:
            self._log_error(f"{rec.scope}: {detail}")
            return CheckResult(self.check_id, rec.scope, FAIL, detail, {'missing': which.scope})
        self._log_warning(f"{rec.scope}: {detail}")
        return CheckResult(self.check_id, rec.scope, PARTIAL, detail, {'missing': which.scope})

    def check_record(self, rec: RestrictionRecord) -> CheckResult:
        dual = self.catalog.dual_restriction(rec)
        if dual is None:
            return CheckResult(self.check_id, rec.scope, PARTIAL, "no restriction record for the swapped pair")
        zeta, _, orbit = leading_coefficient(self.catalog, rec)
        if zeta is None:
            return self._missing(rec, rec)
        dual_zeta, _, _ = leading_coefficient(self.catalog, dual)
        if dual_zeta is None:
            return self._missing(rec, dual)

        family_name = self.catalog.unipotent(rec.group, rec.unipotent).family
        delta = self.catalog.family(family_name).delta(orbit) if orbit is not None else 1
        product = zeta * dual_zeta.conj()
        witness = {'zeta': format_coeff(zeta), 'dual_zeta': format_coeff(dual_zeta),
                   'product': format_coeff(product), 'delta': delta}
        if not zeta.is_root_of_unity():
            detail = f"zeta = {witness['zeta']} is not a root of unity"
            self._log_error(f"{rec.scope}: {detail}")
            return CheckResult(self.check_id, rec.scope, FAIL, detail, witness)
        if product != delta:
            detail = (f"zeta*conj(zeta') = {witness['zeta']}*conj({witness['dual_zeta']}) = "
                      f"{witness['product']}, Delta = {delta}")
            self._log_error(f"{rec.scope}: {detail}")
            return CheckResult(self.check_id, rec.scope, FAIL, detail, witness)
        self._log_debug(f"{rec.scope}: zeta = {witness['zeta']}")
        return CheckResult(self.check_id, rec.scope, PASS,
                           f"zeta={witness['zeta']} zeta'={witness['dual_zeta']} Delta={delta}", witness)

    @check_specific
    def zeta_values(self, group: str, unipotent: str) -> dict:
        """
        The leading coefficient of every recorded pair of a unipotent class.

        Returns:
            dict: ``"(s,h)"`` mapped to the printed coefficient, or None when absent.
        """
        out = {}
        for rec in self.catalog.restrictions_for(group, unipotent, K0):
            zeta, _, _ = leading_coefficient(self.catalog, rec)
            out[f"({rec.s},{rec.h})"] = None if zeta is None else format_coeff(zeta)
        return out
