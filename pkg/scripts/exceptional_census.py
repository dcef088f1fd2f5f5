"""Composition factors of every exceptional Shen-Larsson module, two ways.

For each (X, n, k) the costandard character is peeled into irreducibles
using (a) the closed irreducible formulas and (b) socle censuses of the
constructed modules, and both are set against the stated factor tables.

    python3 scripts/exceptional_census.py --D 4
"""

import argparse
from dataclasses import dataclass, field

from toroidal_o import characters as ch
from toroidal_o.toroidal import AlgebraConfig


@dataclass
class CensusConfig:
    D: int = 4
    cases: list = field(default_factory=lambda: [("W", 2), ("W", 3), ("S", 3), ("H", 2), ("H", 4)])


def stated_labels(cfg, k):
    if cfg.xkind == "W" and k == cfg.n:
        table = {k: 1}
    else:
        table = ch.stated_composition(cfg, k)
    out = {}
    for j, m in table.items():
        label = ch.factor_label(cfg, (0,) * (cfg.g_rank - 1), ch.mu_k(cfg, j))
        out[label] = out.get(label, 0) + m
    return out


def fmt(comp):
    if not comp.balanced:
        return f"unbalanced ({comp.note})"
    return " + ".join(f"{m}*{lab}[q^{s}]" for lab, s, m in comp.factors)


def run(conf: CensusConfig):
    for x, n in conf.cases:
        cfg = AlgebraConfig(x, n, 2, conf.D)
        top = n if x == "W" else cfg.n_x
        for k in range(top + 1):
            formula = ch.exceptional_composition(cfg, k, conf.D, mode="formula")
            census = ch.exceptional_composition(cfg, k, conf.D, mode="census")
            stated = stated_labels(cfg, k)
            verdict = "agrees" if census.balanced and census.totals() == stated else "DIFFERS"
            print(f"{x}{n} k={k}")
            print(f"  census  : {fmt(census)}")
            print(f"  formula : {fmt(formula)}")
            print(f"  stated  : {stated}  -> census {verdict}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--D", type=int, default=4)
    run(CensusConfig(D=p.parse_args().D))
