#!/usr/bin/env python3
"""Print uniform interpolants for a family of small sequents, classically
and intuitionistically, with the verification verdict for each."""

from proofkit.calculus import builtin
from proofkit.prover import shared_cache
from proofkit.syntax import parse_sequent, render_formula
from proofkit.uniform import classical_uniform, ipc_uniform, verify_uniform

ROWS = [
    "p => q",
    "q => p",
    "p => p",
    "p, p -> q => q",
    "p | q =>",
    "=> p | q",
    "~~p, p -> r =>",
    "(p -> q) -> r =>",
]


def main():
    g3cp, g4ip = builtin("G3cp"), builtin("G4ip")
    c3, c4 = shared_cache(g3cp), shared_cache(g4ip)
    print(f"{'sequent':24} {'CPC forall':14} {'CPC exists':14} "
          f"{'IPC forall':18} {'IPC exists':18}")
    for text in ROWS:
        s = parse_sequent(text)
        uc = classical_uniform(s, "p")
        ui = ipc_uniform(s, "p", c4)
        ok_c = verify_uniform(g3cp, uc, 6, c3).ok
        ok_i = verify_uniform(g4ip, ui, 6, c4).ok
        mark = "" if ok_c and ok_i else "   <-- VIOLATION"
        print(f"{text:24} {render_formula(uc.forall_part):14} "
              f"{render_formula(uc.exists_part):14} "
              f"{render_formula(ui.forall_part):18} "
              f"{render_formula(ui.exists_part):18}{mark}")


if __name__ == "__main__":
    main()
