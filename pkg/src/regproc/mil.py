"""Proof checker for Milner's equational system (axioms A1-A11 and RSP*).

Matching is purely syntactic. Besides the axioms, a script may use
reflexivity, symmetry, transitivity, congruence for ``+``, ``.`` and unary
star, and the fixed-point rule::

    e = f . e + g
    -------------   provided f does not terminate immediately
    e = f* . g

Binary star has no axioms here, so steps mentioning it are rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Mapping

from .regex import (
    ONE,
    ZERO,
    BinStar,
    Prod,
    RegExp,
    Star,
    Sum,
    parse,
    render,
    subterms,
    terminates,
)


@dataclass(frozen=True)
class Equation:
    lhs: RegExp
    rhs: RegExp

    def __str__(self):
        return f"{render(self.lhs)} = {render(self.rhs)}"


def _axioms() -> dict[str, tuple[tuple[str, ...], object]]:
    def ax(*metas):
        def deco(fn):
            return metas, fn

        return deco

    return {
        "A1": ax("e", "f", "g")(lambda e, f, g: Equation(Sum(e, Sum(f, g)), Sum(Sum(e, f), g))),
        "A2": ax("e")(lambda e: Equation(Sum(e, ZERO), e)),
        "A3": ax("e", "f")(lambda e, f: Equation(Sum(e, f), Sum(f, e))),
        "A4": ax("e")(lambda e: Equation(Sum(e, e), e)),
        "A5": ax("e", "f", "g")(lambda e, f, g: Equation(Prod(e, Prod(f, g)), Prod(Prod(e, f), g))),
        "A6": ax("e", "f", "g")(lambda e, f, g: Equation(Prod(Sum(e, f), g), Sum(Prod(e, g), Prod(f, g)))),
        "A7": ax("e")(lambda e: Equation(e, Prod(ONE, e))),
        "A8": ax("e")(lambda e: Equation(e, Prod(e, ONE))),
        "A9": ax("e")(lambda e: Equation(ZERO, Prod(ZERO, e))),
        "A10": ax("e")(lambda e: Equation(Star(e), Sum(ONE, Prod(e, Star(e))))),
        "A11": ax("e")(lambda e: Equation(Star(e), Star(Sum(ONE, e)))),
    }


AXIOMS = _axioms()
RULES = frozenset(AXIOMS) | {"refl", "sym", "trans", "cong+", "cong.", "cong*", "rsp*"}


class ProofError(ValueError):
    def __init__(self, step_id: str, reason: str):
        super().__init__(f"step {step_id!r}: {reason}")
        self.step_id = step_id
        self.reason = reason


def axiom_metavariables(name: str) -> tuple[str, ...]:
    if name not in AXIOMS:
        raise KeyError(f"unknown axiom {name!r}")
    return AXIOMS[name][0]


def instantiate_axiom(name: str, bindings: Mapping[str, RegExp]) -> Equation:
    metas = axiom_metavariables(name)
    missing = [m for m in metas if m not in bindings]
    extra = sorted(set(bindings) - set(metas))
    if missing:
        raise ValueError(f"{name}: missing binding for {', '.join(missing)}")
    if extra:
        raise ValueError(f"{name}: unexpected binding for {', '.join(extra)}")
    return AXIOMS[name][1](*(bindings[m] for m in metas))


@dataclass(frozen=True)
class ProofStep:
    id: str
    conclusion: Equation
    rule: str
    premises: tuple[str, ...] = ()
    bindings: Mapping[str, RegExp] = field(default_factory=dict)

    @classmethod
    def from_json_obj(cls, doc: dict) -> ProofStep:
        try:
            return cls(
                id=str(doc["id"]),
                conclusion=Equation(parse(doc["lhs"]), parse(doc["rhs"])),
                rule=doc["rule"],
                premises=tuple(doc.get("premises", ())),
                bindings={k: parse(v) for k, v in doc.get("bindings", {}).items()},
            )
        except KeyError as exc:
            raise ProofError(str(doc.get("id", "?")), f"missing field {exc.args[0]!r}") from None
        except ValueError as exc:
            raise ProofError(str(doc.get("id", "?")), str(exc)) from None

    def to_json_obj(self) -> dict:
        return {
            "id": self.id,
            "lhs": render(self.conclusion.lhs),
            "rhs": render(self.conclusion.rhs),
            "rule": self.rule,
            "bindings": {k: render(v) for k, v in sorted(self.bindings.items())},
            "premises": list(self.premises),
        }


def _mentions_binstar(eq: Equation) -> bool:
    return any(isinstance(n, BinStar) for side in (eq.lhs, eq.rhs) for n in subterms(side))


def check_step(step: ProofStep, context: Mapping[str, Equation]) -> None:
    """Raise :class:`ProofError` unless ``step`` follows from ``context``.

    ``context`` maps ids of earlier steps to their conclusions.
    """

    def reject(reason: str):
        raise ProofError(step.id, reason)

    concl = step.conclusion
    if _mentions_binstar(concl):
        reject("binary star is not part of the system")
    if step.rule not in RULES:
        reject(f"unknown rule {step.rule!r}")
    for p in step.premises:
        if p not in context:
            reject(f"premise {p!r} is not an earlier step")
    prem = [context[p] for p in step.premises]

    def arity(n: int):
        if len(prem) != n:
            reject(f"{step.rule} takes {n} premise(s), got {len(prem)}")

    if step.rule in AXIOMS:
        arity(0)
        try:
            inst = instantiate_axiom(step.rule, step.bindings)
        except ValueError as exc:
            reject(str(exc))
        if inst != concl:
            reject(f"conclusion is not the instance {inst}")
        return
    if step.bindings:
        reject("bindings are only allowed for axioms")

    if step.rule == "refl":
        arity(0)
        if concl.lhs != concl.rhs:
            reject("sides differ")
    elif step.rule == "sym":
        arity(1)
        if concl != Equation(prem[0].rhs, prem[0].lhs):
            reject("conclusion is not the premise reversed")
    elif step.rule == "trans":
        if len(prem) < 2:
            reject("trans takes at least 2 premises")
        for a, b in zip(prem, prem[1:]):
            if a.rhs != b.lhs:
                reject(f"chain broken between {a} and {b}")
        if concl != Equation(prem[0].lhs, prem[-1].rhs):
            reject("conclusion does not join the chain ends")
    elif step.rule in ("cong+", "cong."):
        arity(2)
        op = Sum if step.rule == "cong+" else Prod
        want = Equation(op(prem[0].lhs, prem[1].lhs), op(prem[0].rhs, prem[1].rhs))
        if concl != want:
            reject(f"expected {want}")
    elif step.rule == "cong*":
        arity(1)
        if concl != Equation(Star(prem[0].lhs), Star(prem[0].rhs)):
            reject("conclusion is not the starred premise")
    elif step.rule == "rsp*":
        arity(1)
        e, rhs = prem[0].lhs, prem[0].rhs
        if not (isinstance(rhs, Sum) and isinstance(rhs.left, Prod) and rhs.left.right == e):
            reject("premise is not of the form e = f . e + g")
        f, g = rhs.left.left, rhs.right
        if terminates(f):
            reject(f"side condition violated: {render(f)} terminates")
        if concl != Equation(e, Prod(Star(f), g)):
            reject(f"expected {render(e)} = {render(Prod(Star(f), g))}")


@dataclass(frozen=True)
class ProofScript:
    steps: tuple[ProofStep, ...]

    @classmethod
    def from_json_obj(cls, doc) -> ProofScript:
        if not isinstance(doc, list) or not doc:
            raise ProofError("?", "a proof script is a non-empty JSON array of steps")
        return cls(tuple(ProofStep.from_json_obj(s) for s in doc))

    @classmethod
    def loads(cls, text: str | bytes) -> ProofScript:
        return cls.from_json_obj(json.loads(text))

    def to_json_obj(self) -> list[dict]:
        return [s.to_json_obj() for s in self.steps]


def check_proof(script: ProofScript) -> Equation:
    """Check every step in order; return the final equation or raise at the first bad step."""
    context: dict[str, Equation] = {}
    for step in script.steps:
        if step.id in context:
            raise ProofError(step.id, "duplicate step id")
        check_step(step, context)
        context[step.id] = step.conclusion
    return script.steps[-1].conclusion


SCRIPT_FIXTURES = ("rspstar_astarb", "rspstar_sidecond", "rspstar_badshape")


def load_script_fixture(name: str) -> ProofScript:
    if name not in SCRIPT_FIXTURES:
        raise KeyError(f"unknown proof script fixture {name!r}")
    return ProofScript.loads(resources.files("regproc.data").joinpath(f"{name}.json").read_text())
