"""
Verification reports: one entry per check and scope, rendered as text or JSON.
"""
import json
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional

from typing_extensions import Literal, TypedDict

PASS = 'pass'
FAIL = 'fail'
PARTIAL = 'partial'
STATUSES = (PASS, FAIL, PARTIAL)

CHECK_ORDER = ('counts', 'main', 'zeta', 'selfdual')

Status = Literal['pass', 'fail', 'partial']
Summary = TypedDict('Summary', {'pass': int, 'fail': int, 'partial': int})


class ReportJSON(TypedDict):
    checks: List[Dict[str, Any]]
    summary: Summary
    exit_status: int


@dataclass
class CheckResult:
    """
    The outcome of one check on one scope.

    Attributes:
        check_id (str): ``counts``, ``main``, ``zeta`` or ``selfdual``.
        scope (str): ``group/unipotent/(s,h)`` or a combination name.
        status (str): ``pass``, ``fail`` or ``partial``.
        detail (str): The differing coordinate on fail, the unverifiable remainder on partial.
        witness (Optional[Dict[str, Any]]): Machine-readable form of the detail.
    """
    check_id: str
    scope: str
    status: Status
    detail: str = ''
    witness: Optional[Dict[str, Any]] = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"Unknown status {self.status!r}")

    def to_dict(self) -> Dict[str, Any]:
        d: Dict[str, Any] = {'check_id': self.check_id, 'scope': self.scope,
                             'status': self.status, 'detail': self.detail}
        if self.witness is not None:
            d['witness'] = self.witness
        return d


@dataclass
class VerificationReport:
    checks: List[CheckResult] = field(default_factory=list)

    def add(self, check_id: str, scope: str, status: str, detail: str = '',
            witness: Optional[Dict[str, Any]] = None) -> CheckResult:
        result = CheckResult(check_id, scope, status, detail, witness)
        self.checks.append(result)
        return result

    def extend(self, other: 'VerificationReport') -> 'VerificationReport':
        self.checks.extend(other.checks)
        return self

    def by_status(self, status: str) -> List[CheckResult]:
        return [c for c in self.checks if c.status == status]

    def __len__(self) -> int:
        return len(self.checks)

    def __iter__(self):
        return iter(self.checks)

    @property
    def summary(self) -> Summary:
        return {status: len(self.by_status(status)) for status in STATUSES}

    @property
    def ok(self) -> bool:
        return not self.by_status(FAIL)

    def exit_status(self, allow_partial: bool = True) -> int:
        """0 when nothing failed; partial entries count as failures only when not allowed."""
        if self.by_status(FAIL):
            return 1
        if not allow_partial and self.by_status(PARTIAL):
            return 1
        return 0

    def normalized(self) -> 'VerificationReport':
        """Stable order: by check in ``CHECK_ORDER``, then as produced."""
        rank = {name: i for i, name in enumerate(CHECK_ORDER)}
        ordered = sorted(enumerate(self.checks),
                         key=lambda item: (rank.get(item[1].check_id, len(rank)), item[0]))
        return VerificationReport([c for _, c in ordered])

    def to_json(self, allow_partial: bool = True) -> ReportJSON:
        report = self.normalized()
        return {
            'checks': [c.to_dict() for c in report.checks],
            'summary': report.summary,
            'exit_status': report.exit_status(allow_partial),
        }


def merge_reports(reports: Iterable[VerificationReport]) -> VerificationReport:
    merged = VerificationReport()
    for report in reports:
        merged.extend(report)
    return merged


def render_text(report: VerificationReport, allow_partial: bool = True) -> str:
    report = report.normalized()
    lines = []
    for c in report.checks:
        line = f"[{c.status.upper():7}] {c.check_id:8} {c.scope}"
        if c.detail:
            line += f"  {c.detail}"
        lines.append(line)
    s = report.summary
    lines.append(f"pass={s[PASS]} fail={s[FAIL]} partial={s[PARTIAL]} "
                 f"exit={report.exit_status(allow_partial)}")
    return "\n".join(lines)


def render_json(report: VerificationReport, allow_partial: bool = True) -> str:
    return json.dumps(report.to_json(allow_partial), indent=2, ensure_ascii=False)
