"""
Run reports emitted by every CLI command.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from src.codeprops.models import Verdict
from src.common.utils import dumps_json

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_COUNTEREXAMPLE = 2
EXIT_EXHAUSTED = 3

COUNTER_KEYS = ('trials', 'enumerated', 'wires', 'depth')


class RunReport(BaseModel):
    """
    Serializable record of one command invocation.

    ``seed`` together with ``command`` and ``params`` replays a randomized run
    bit for bit; ``elapsed_ms`` is the only field that varies between replays.
    """
    model_config = ConfigDict(extra='forbid')

    command: str
    params: Dict[str, Any] = Field(default_factory=dict)
    seed: int
    profile: str
    exit_code: int
    verdicts: List[Dict[str, Any]] = Field(default_factory=list)
    counters: Dict[str, int] = Field(default_factory=dict)
    elapsed_ms: float = 0.0
    artifacts: Dict[str, str] = Field(default_factory=dict)
    result: Any = None
    error: Optional[str] = None

    def to_json(self) -> Dict[str, Any]:
        return self.model_dump(mode='python')

    def replay_key(self) -> str:
        """Canonical text of everything except the timing."""
        return dumps_json(self.model_dump(mode='python', exclude={'elapsed_ms'}))


@dataclass
class CommandOutcome:
    """What a command handler hands back to the dispatcher."""
    result: Any = None
    text: Optional[str] = None
    verdicts: List[Verdict] = field(default_factory=list)
    counters: Dict[str, int] = field(default_factory=dict)
    artifacts: Dict[str, str] = field(default_factory=dict)
    refuted: bool = False

    def add_verdict(self, verdict: Verdict) -> Verdict:
        self.verdicts.append(verdict)
        self.counters['enumerated'] = self.counters.get('enumerated', 0) + verdict.enumerated
        if not verdict.ok:
            self.refuted = True
        return verdict

    def count(self, **values: int) -> None:
        for key, value in values.items():
            if key in COUNTER_KEYS and value is not None:
                self.counters[key] = int(value)

    def count_build(self, report: Dict[str, Any]) -> None:
        """Pull the standard counters out of a builder report."""
        self.count(trials=report.get('trials_used'), wires=report.get('size'), depth=report.get('depth'))
        verdict = report.get('verdict')
        if isinstance(verdict, dict) and 'enumerated' in verdict:
            self.counters['enumerated'] = self.counters.get('enumerated', 0) + int(verdict['enumerated'])
