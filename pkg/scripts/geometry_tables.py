#!/usr/bin/env python3
"""Print the classification, prolongation and Spencer tables for the six classes."""

from d21a.roots import ParabolicSpec, classify_parabolics
from d21a.prolong import prolong
from d21a.spencer import cohomology, h1_prolongation_consistency

REPS = {"p1I": ("gk", 1), "p2I": ("m-g0", None), "p12I": ("gk", 1),
        "p23I": ("m-g0", None), "p123I": ("gk", 1), "p123IV": ("m", None)}


def fmt(sd):
    return f"{sd[0]}|{sd[1]}"


def main():
    cl = classify_parabolics()
    print("classes")
    for members in cl.by_signature:
        rep = cl.reports[members[0]]
        dims = ", ".join(fmt(d) for d in rep.dims())
        print(f"  nu={rep.depth}  ({dims})  {rep.g0.label:10s} {' '.join(map(str, members))}")

    print("\nprolongations")
    for label, (mode, k) in REPS.items():
        rep = prolong(ParabolicSpec.parse(label), mode, k=k)
        levels = " ".join(f"{j}:{fmt(sd)}" for j, sd in sorted(rep.levels.items()))
        print(f"  {label:7s} mode={mode:5s} {levels}  (locus {', '.join(rep.locus.names()) or 'none'})")

    print("\nSpencer cohomology")
    for label in REPS:
        t = cohomology(ParabolicSpec.parse(label))
        cons = h1_prolongation_consistency(t)
        print(f"  {label}  [H^1 implies {cons.predicted}]")
        for line in t.render().splitlines():
            print(f"    {line}")


if __name__ == "__main__":
    main()
