"""Per-degree dimensions of Gamma, Upsilon and the exceptional irreducibles.

Formula dimensions are printed next to socle censuses so disagreements
(negative coefficients, shifted degrees) are visible at a glance.

    python3 scripts/character_tables.py --D 4
"""

import argparse
from dataclasses import dataclass, field

from toroidal_o import characters as ch
from toroidal_o.toroidal import AlgebraConfig


@dataclass
class TableConfig:
    D: int = 4
    cases: list = field(default_factory=lambda: [("W", 2), ("S", 3), ("H", 2), ("H", 4)])


def run(conf: TableConfig):
    for x, n in conf.cases:
        D = conf.D if n <= 3 else min(conf.D, 3)
        cfg = AlgebraConfig(x, n, 2, D)
        print(f"== {x}{n}, D={D}")
        print(f"  Gamma   {ch.gamma(cfg, D).dims()}")
        print(f"  Upsilon {ch.upsilon(cfg, D).dims()}")
        for k in range(cfg.n_x + 1):
            lw = ch.LabeledWeight.exceptional(cfg, k)
            formula = ch.ch_irreducible(cfg, lw, D)
            lo = min(0, formula.min_degree() or 0)
            census = ch._socle_character(cfg, k, D) if ch.reducible_index(cfg, lw) is not None else None
            line = f"  L(mu_{k}) formula {formula.dims(lo)}" + (f" from q^{lo}" if lo else "")
            if census is not None:
                line += f"  socle {census.dims()}"
            print(line)


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--D", type=int, default=4)
    run(TableConfig(D=p.parse_args().D))
