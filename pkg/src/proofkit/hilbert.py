"""Hilbert-system proof checking and the deduction-theorem transforms.

HJ has nine axiom schemas plus modus ponens; HK adds double-negation
elimination.  Proofs are step lists; a step is justified as an assumption,
an axiom instance, or modus ponens on two earlier steps.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import Formula, imp, Bot
from .calculus import match_formula
from .syntax import parse_formula


class InvalidInput(Exception):
    pass


HJ_AXIOMS = {
    1: "A -> (B -> A)",
    2: "(A -> (B -> C)) -> ((A -> B) -> (A -> C))",
    3: "A -> A | B",
    4: "B -> A | B",
    5: "(A -> C) -> ((B -> C) -> (A | B -> C))",
    6: "A & B -> A",
    7: "A & B -> B",
    8: "A -> (B -> (A & B))",
    9: "false -> A",
}
DNE = "~~A -> A"

_AXIOM_PATTERNS = {k: parse_formula(t, meta=True) for k, t in HJ_AXIOMS.items()}
_DNE_PATTERN = parse_formula(DNE, meta=True)


@dataclass(frozen=True)
class Step:
    formula: Formula
    just: tuple   # ("assumption", i) | ("axiom", k) | ("dne",) | ("mp", j, k)

    def __repr__(self):
        from .syntax import render_formula
        return f"{render_formula(self.formula)}  [{' '.join(map(str, self.just))}]"


@dataclass
class HilbertProof:
    assumptions: list
    steps: list = field(default_factory=list)

    @property
    def conclusion(self):
        return self.steps[-1].formula

    def add(self, formula, *just):
        self.steps.append(Step(formula, tuple(just)))
        return len(self.steps) - 1


def check_hilbert(system: str, proof: HilbertProof):
    """Validate every step; returns (step index, reason) defects."""
    system = system.upper()
    if system not in ("HJ", "HK"):
        raise InvalidInput(f"system must be HJ or HK, not {system!r}")
    defects = []
    for i, step in enumerate(proof.steps):
        tag = step.just[0]
        if tag == "assumption":
            j = step.just[1]
            if not (0 <= j < len(proof.assumptions)):
                defects.append((i, f"assumption index {j} out of range"))
            elif proof.assumptions[j] != step.formula:
                defects.append((i, f"step is not assumption {j}"))
        elif tag == "axiom":
            k = step.just[1]
            pat = _AXIOM_PATTERNS.get(k)
            if pat is None:
                defects.append((i, f"no axiom {k}"))
            elif match_formula(pat, step.formula, {}) is None:
                defects.append((i, f"not an instance of axiom {k}"))
        elif tag == "dne":
            if system != "HK":
                defects.append((i, "double negation is not available in HJ"))
            elif match_formula(_DNE_PATTERN, step.formula, {}) is None:
                defects.append((i, "not an instance of double negation"))
        elif tag == "mp":
            j, k = step.just[1], step.just[2]
            if not (0 <= j < i and 0 <= k < i):
                defects.append((i, f"mp cites steps {j},{k} not before {i}"))
                continue
            major = proof.steps[k].formula
            if major != imp(proof.steps[j].formula, step.formula):
                defects.append((i, f"step {k} is not (step {j} -> step {i})"))
        else:
            defects.append((i, f"unknown justification {tag!r}"))
    return defects


def _identity_steps(proof: HilbertProof, phi: Formula):
    """Append the five-step axiom-1/2 proof of phi -> phi; returns its index."""
    a1 = proof.add(imp(phi, imp(imp(phi, phi), phi)), "axiom", 1)
    big = imp(imp(phi, imp(imp(phi, phi), phi)),
              imp(imp(phi, imp(phi, phi)), imp(phi, phi)))
    a2 = proof.add(big, "axiom", 2)
    m1 = proof.add(imp(imp(phi, imp(phi, phi)), imp(phi, phi)), "mp", a1, a2)
    a3 = proof.add(imp(phi, imp(phi, phi)), "axiom", 1)
    return proof.add(imp(phi, phi), "mp", a3, m1)


def deduction_theorem(proof: HilbertProof, assumption_index: int = -1) -> HilbertProof:
    """From a proof of Gamma, phi |- psi build one of Gamma |- phi -> psi."""
    if not proof.steps:
        raise InvalidInput("empty proof")
    n = len(proof.assumptions)
    idx = assumption_index % n if n else 0
    if not (0 <= idx < n):
        raise InvalidInput(f"no assumption {assumption_index}")
    phi = proof.assumptions[idx]
    rest = proof.assumptions[:idx] + proof.assumptions[idx + 1:]

    def remap(j):
        return j if j < idx else j - 1

    out = HilbertProof(rest)
    where = {}
    for i, step in enumerate(proof.steps):
        tag = step.just[0]
        if tag == "assumption" and step.just[1] == idx:
            where[i] = _identity_steps(out, phi)
            continue
        if tag == "mp":
            j, k = step.just[1], step.just[2]
            chi_j = proof.steps[j].formula
            chi = step.formula
            ax2 = imp(imp(phi, imp(chi_j, chi)),
                      imp(imp(phi, chi_j), imp(phi, chi)))
            a = out.add(ax2, "axiom", 2)
            b = out.add(imp(imp(phi, chi_j), imp(phi, chi)), "mp", where[k], a)
            where[i] = out.add(imp(phi, chi), "mp", where[j], b)
            continue
        # axiom, dne, or another assumption: keep the step and weaken it
        if tag == "assumption":
            base = out.add(step.formula, "assumption", remap(step.just[1]))
        else:
            base = out.add(step.formula, *step.just)
        ax1 = out.add(imp(step.formula, imp(phi, step.formula)), "axiom", 1)
        where[i] = out.add(imp(phi, step.formula), "mp", base, ax1)
    return out


def contraposition(proof: HilbertProof, assumption_index: int = -1) -> HilbertProof:
    """From Gamma, phi |- psi build Gamma, ~psi |- ~phi."""
    n = len(proof.assumptions)
    if n == 0:
        raise InvalidInput("contraposition discharges an assumption")
    idx = assumption_index % n
    phi = proof.assumptions[idx]
    psi = proof.conclusion
    arrow = deduction_theorem(proof, idx)          # Gamma |- phi -> psi
    gamma = arrow.assumptions
    inner = HilbertProof(gamma + [imp(psi, Bot), phi])
    where = {}
    for i, step in enumerate(arrow.steps):
        where[i] = inner.add(step.formula, *step.just)
    i_notpsi = inner.add(imp(psi, Bot), "assumption", len(gamma))
    i_phi = inner.add(phi, "assumption", len(gamma) + 1)
    i_psi = inner.add(psi, "mp", i_phi, where[len(arrow.steps) - 1])
    inner.add(Bot, "mp", i_psi, i_notpsi)
    return deduction_theorem(inner, len(gamma) + 1)   # discharge phi
