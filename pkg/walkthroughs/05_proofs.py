"""Checking equational proofs step by step.

A proof script is a list of steps, each naming an axiom or rule, its
premises (earlier step ids) and, for axioms, the metavariable bindings.

    python walkthroughs/05_proofs.py
"""

from regproc import ProofError, bisimilar, chart, check_proof, instantiate_axiom, parse
from regproc.mil import AXIOMS, load_script_fixture

print("axioms:")
for name in sorted(AXIOMS, key=lambda n: int(n[1:])):
    print(f"  {name}: {instantiate_axiom(name, {m: parse(m) for m in AXIOMS[name][0]})}")

script = load_script_fixture("rspstar_astarb")
for step in script.steps:
    print(f"  {step.id:>4}  {step.rule:<6} {','.join(step.premises):<14} {step.conclusion}")
final = check_proof(script)
print("proved:", final)
print("both sides bisimilar:", bool(bisimilar(chart(final.lhs), chart(final.rhs))))

# the unique-solution rule needs a non-terminating loop body
for name in ("rspstar_sidecond", "rspstar_badshape"):
    try:
        check_proof(load_script_fixture(name))
    except ProofError as exc:
        print(f"\n{name}: rejected at {exc.step_id}: {exc.reason}")
