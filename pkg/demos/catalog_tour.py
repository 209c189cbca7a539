"""A guided walk through the built-in net catalog.

Seven stops. Each one builds a net from the catalog, pokes it with the
public query functions, and narrates what comes back. Nothing here is
asserted; the test suite owns the guarantees. Run it top to bottom:

    python3 demos/catalog_tour.py
"""

import math

from qbnet.catalog import build, default_cases, list_entries, run_evidence_cases
from qbnet.classical import classical_conditional, coarsen, total_mass, validate
from qbnet.quantum import f_qna, parent_cb_net, quantum_conditional, validate_quantum


def heading(text):
    print()
    print(text)
    print("-" * len(text))


def stop_shelf():
    heading("stop 1: the shelf")
    print("every entry, as the catalog lists it:")
    print()
    for e in list_entries():
        print(f"  {e.id:24s} {e.kind:9s} {e.summary}")


def stop_gates():
    heading("stop 2: a classical gate")
    net = build("fig9-and")
    p = classical_conditional(net, {"z": 1}, {"x": 1})
    print("fig9-and wires z = x AND y over two fair bits.")
    print(f"  P(z=1 | x=1) = {p:.3f}   (the remaining coin, as it should be)")
    p = classical_conditional(net, {"x": 1}, {"z": 1})
    print(f"  P(x=1 | z=1) = {p:.3f}   (seeing the output pins both inputs)")


def stop_walk():
    n = 6
    heading("stop 3: the random walk, then squint")
    net = build("fig14-walk", n=n)
    small = coarsen(net, ["x0", f"x{n}"])
    print(f"fig14-walk with n={n} has {len(net.graph.nodes)} nodes; coarsening to the")
    print("endpoints melts the middle away and leaves one conditional table.")
    print()
    table = small.table(f"x{n}")
    print(f"  final position, engine vs the closed-form count of paths / 2^{n}:")
    for i, state in enumerate(small.space.states(f"x{n}")):
        x = state[0]
        exact = math.comb(n, (x + n) // 2) / 2.0**n
        print(f"    x{n} = {x:+d}   {table[i, 0]:.6f}   {exact:.6f}")


def stop_cycle():
    heading("stop 4: the cycle that refuses to be a net")
    net = build("fig4-cycle")
    print("fig4-cycle feeds two delta nodes into each other. Its mass is")
    print(f"  total mass = {total_mass(net)}")
    report = validate(net)
    print("and the validator names the obstruction:")
    for line in report.problems:
        print(f"  - {line}")


def stop_interference():
    heading("stop 5: interference against the squared shadow")
    net = build("fig19-loop")
    parent = parent_cb_net(net)
    qb = quantum_conditional(net, {"u.plus": 1}, {})
    cb = classical_conditional(parent, {"u.plus": 1}, {})
    print("fig19-loop recombines both beams before the last magnet. Ask for")
    print("the bright exit two ways: with amplitudes, and with every amplitude")
    print("replaced by its squared magnitude (the parent classical net).")
    print()
    print(f"  quantum   P(u.plus=1) = {qb:.12f}")
    print(f"  classical P(u.plus=1) = {cb:.12f}")
    print()
    print("the gap is the interference the squaring threw away.")
    print()
    print("conditioning on an internal beam has a price tag. The noise factor")
    print("is exactly 1 for external components and drifts otherwise:")
    for alpha in ("u.plus", "z.plus"):
        f = f_qna(net, [alpha], {"u.minus": 0})
        tag = "external" if alpha in net.external_components else "internal"
        print(f"  f_qna on {alpha:7s} ({tag}) = {f:.12f}")


def stop_evidence():
    heading("stop 6: the evidence-case table, three excerpts")
    net = build("fig19-loop")
    cases = default_cases(net)
    results = run_evidence_cases(net, cases=cases, hypotheses="singles")
    print(f"the default grid for this net has {len(cases)} cases. A few of them:")
    for result in results:
        if result.case.number not in (1, 2, 10):
            continue
        print()
        print(f"  case {result.case.number}: {result.case.describe()}")
        if result.no_output:
            print("    contradictory evidence, no output")
            continue
        for row in result.rows:
            if row.components != ("u.plus",):
                continue
            for combo, cb, qb in zip(row.combos, row.cb, row.qb):
                print(f"    u.plus={combo[0]}   cb {cb:.6f}   qb {qb:.6f}")
    print()
    print("case 10 declares both z exits empty at once. The particle has to")
    print("be somewhere, so the evidence has zero weight; the runner marks")
    print("the case and moves on instead of dividing by zero.")


def stop_phase():
    heading("stop 7: the phase a rejoining beam owes")
    net = build("fig28")
    print("fig28 lets one beam rejoin downstream. Built with no arguments it")
    print("computes the phase that keeps the beam consistent with the source:")
    print(f"  meta phase = {net.meta['phase']}")
    bad = build("fig28", xi=0.0)
    report = validate_quantum(bad)
    print("force the phase to 1 (xi=0) and the validator objects:")
    for line in report.problems:
        print(f"  - {line}")
    print()
    anyphase = validate_quantum(build("fig29", xi=1.0)).ok
    print("fig29 rejoins both beams, so the phase cancels out of every column")
    print(f"norm; built with an arbitrary xi it still validates: {anyphase}.")
    print("the answers still depend on the phase, and at the consistent")
    print("default the two layouts agree on the query they share:")
    p28 = quantum_conditional(build("fig28"), {"u.minus": 1}, {"v.minus": 0})
    p29 = quantum_conditional(build("fig29"), {"u.minus": 1}, {"v.minus": 0})
    print(f"  fig28  P(u.minus=1 | v.minus=0) = {p28:.12f}")
    print(f"  fig29  P(u.minus=1 | v.minus=0) = {p29:.12f}")


def main():
    print("catalog tour: sixteen nets, seven stops")
    stop_shelf()
    stop_gates()
    stop_walk()
    stop_cycle()
    stop_interference()
    stop_evidence()
    stop_phase()
    print()
    print("end of the tour. The same nets are reachable from the command line")
    print("via 'qbnet catalog build <id>' if you want them as files.")


if __name__ == "__main__":
    main()
