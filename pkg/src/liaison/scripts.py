"""Line-oriented chain scripts: a ring line, an ideal block, then step
blocks whose regular sequences are either explicit forms or degree tuples
drawn with a seed.

    # six minimal links
    ring x y z over QQ
    ideal
      z^3
      x*y*z
    end
    step
      seq = z^3; x^4; y^6
    end
    step
      seq = degrees(3,4,5) seed = 11
    end
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .rings import GF, QQ, PolynomialRing

__all__ = ["ChainScript", "StepSpec", "ChainScriptError",
           "parse_chain_script", "load_chain_script", "parse_field"]


class ChainScriptError(ValueError):
    def __init__(self, message, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class StepSpec:
    """Either explicit forms, or degrees plus a seed for a random draw."""

    forms: tuple = None
    degrees: tuple = None
    seed: int = None

    @property
    def explicit(self) -> bool:
        return self.forms is not None


@dataclass
class ChainScript:
    ring: PolynomialRing
    ideal_gens: list
    steps: list

    def step_sequences(self):
        return [list(s.forms) if s.explicit else tuple(s.degrees)
                for s in self.steps]

    def step_seeds(self):
        return [s.seed for s in self.steps]


def parse_field(text: str):
    text = text.strip()
    if text in ("QQ", "Q"):
        return QQ
    m = re.fullmatch(r"GF[:(]\s*(\d+)\s*\)?", text)
    if m:
        return GF(int(m.group(1)))
    raise ValueError(f"unknown field {text!r} (expected QQ or GF:p)")


def _clean_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_chain_script(text: str) -> ChainScript:
    lines = list(_clean_lines(text))
    pos = 0

    def need(what):
        if pos >= len(lines):
            last = lines[-1][0] if lines else 0
            raise ChainScriptError(f"unexpected end of script, expected {what}", last)
        return lines[pos]

    lineno, line = need("ring declaration")
    m = re.fullmatch(r"ring\s+(.+?)\s+over\s+(\S+)", line)
    if not m:
        raise ChainScriptError("expected 'ring <vars> over <field>'", lineno)
    variables = [v for v in re.split(r"[,\s]+", m.group(1)) if v]
    try:
        field = parse_field(m.group(2))
        ring = PolynomialRing(variables, field)
    except ValueError as exc:
        raise ChainScriptError(str(exc), lineno) from None
    pos += 1

    lineno, line = need("ideal block")
    if line != "ideal":
        raise ChainScriptError("expected 'ideal' block", lineno)
    pos += 1
    gens = []
    while True:
        lineno, line = need("'end' of ideal block")
        pos += 1
        if line == "end":
            break
        for chunk in line.split(";"):
            chunk = chunk.strip()
            if chunk:
                try:
                    gens.append(ring.parse(chunk))
                except ValueError as exc:
                    raise ChainScriptError(str(exc), lineno) from None

    steps = []
    while pos < len(lines):
        lineno, line = lines[pos]
        if line != "step":
            raise ChainScriptError("expected 'step' block", lineno)
        pos += 1
        spec = None
        while True:
            lineno, line = need("'end' of step block")
            pos += 1
            if line == "end":
                break
            m = re.fullmatch(r"seq\s*=\s*(.+)", line)
            if not m:
                raise ChainScriptError("expected 'seq = ...'", lineno)
            body = m.group(1).strip()
            dm = re.fullmatch(r"degrees\(([\d,\s]+)\)\s*seed\s*=\s*(\d+)", body)
            if dm:
                degrees = tuple(int(x) for x in dm.group(1).split(","))
                spec = StepSpec(degrees=degrees, seed=int(dm.group(2)))
            else:
                try:
                    forms = tuple(ring.parse(c) for c in body.split(";") if c.strip())
                except ValueError as exc:
                    raise ChainScriptError(str(exc), lineno) from None
                spec = StepSpec(forms=forms)
        if spec is None:
            raise ChainScriptError("step block without a seq line", lineno)
        steps.append(spec)
    return ChainScript(ring, gens, steps)


def load_chain_script(path) -> ChainScript:
    with open(path, encoding="utf-8") as fh:
        return parse_chain_script(fh.read())
