"""Flat ``key = value`` scenario files.

Keys are case-insensitive, ``#`` starts a comment, values are plain decimal
numbers.  Missing keys take the defaults below.
"""
from __future__ import annotations

import re
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

import numpy as np

from .channel import NetworkGeometry, OperatingPoint, Powers
from .errors import DomainError, ValidationError
from .sensing import SensingConfig

_DECIMAL = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)$")
OPTIONAL_KEYS = ("r_s", "t")


@dataclass(frozen=True)
class Scenario:
    alpha: float = 2.0
    gain_over_noise: float = 10.0
    d_p: float = 2.0
    d_c: float = 2.0
    d_pc: float = 2.0
    d_pe: float = 2.0
    d_ce: float = 2.0
    p_p: float = 1.0
    p_c: float = 1.0
    pr1: float = 0.3
    pd_target: float = 0.9
    k: float = 100.0
    r_s: float | None = None
    t: float | None = 0.09

    def validate(self) -> None:
        problems = []
        for build in (self.geometry, self.sensing):
            try:
                build()
            except DomainError as exc:
                problems.append(str(exc))
        if not self.p_p >= 0:
            problems.append(f"p_p must be >= 0, got {self.p_p!r}")
        if not self.p_c >= 0:
            problems.append(f"p_c must be >= 0, got {self.p_c!r}")
        if self.r_s is not None and not self.r_s > 0:
            problems.append(f"r_s must be > 0, got {self.r_s!r}")
        if self.t is not None and not 0 < self.t < 1:
            problems.append(f"t must lie in (0, 1), got {self.t!r}")
        if problems:
            raise ValidationError(problems)

    def geometry(self) -> NetworkGeometry:
        return NetworkGeometry(self.d_p, self.d_c, self.d_pc, self.d_pe, self.d_ce, self.alpha, self.gain_over_noise)

    def sensing(self) -> SensingConfig:
        return SensingConfig(pd_target=self.pd_target, k=self.k, pr1=self.pr1)

    def powers(self) -> Powers:
        """Raises :class:`DomainError` when ``p_c`` is 0 (fine for secrecy, not for sensing)."""
        return Powers(self.p_p, self.p_c)

    def operating_point(self) -> OperatingPoint:
        if self.t is None:
            raise ValidationError("scenario has no sensing fraction t")
        return OperatingPoint(self.p_p, self.p_c, self.t)

    def as_dict(self) -> dict:
        return asdict(self)


_KEYS = {f.name for f in fields(Scenario)}


def _parse_assignment(text: str, where: str) -> tuple[str, float]:
    if "=" not in text:
        raise ValidationError(f"{where}: expected 'key = value', got {text!r}")
    key, value = (part.strip() for part in text.split("=", 1))
    key = key.lower()
    if key not in _KEYS:
        raise ValidationError(f"{where}: unknown key {key!r}")
    if not _DECIMAL.match(value):
        raise ValidationError(f"{where}: value for {key!r} is not a decimal number: {value!r}")
    return key, float(value)


def parse(text: str, base: Scenario | None = None) -> Scenario:
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, value = _parse_assignment(line, f"line {lineno}")
        values[key] = value
    scenario = replace(base or Scenario(), **values)
    scenario.validate()
    return scenario


def load(path: str | Path | None = None, overrides=()) -> Scenario:
    """Read a scenario file (or start from defaults) and apply ``key=value`` overrides."""
    scenario = parse(Path(path).read_text()) if path else Scenario()
    values = dict(_parse_assignment(o, f"override {o!r}") for o in overrides)
    scenario = replace(scenario, **values)
    scenario.validate()
    return scenario


def dumps(scenario: Scenario) -> str:
    lines = []
    for key, value in scenario.as_dict().items():
        if value is not None:
            lines.append(f"{key} = {np.format_float_positional(value, trim='-')}")
    return "\n".join(lines) + "\n"
