"""Decide the sign of the last sum in the term-by-term Hamiltonian action.

Both signs are run through the module axiom; the surviving sign is the
shipped default of SLModule(h_sign=...).

    python3 scripts/h_sign_arbitration.py --n 4 --D 2
"""

import argparse
from dataclasses import dataclass

from toroidal_o import shenlarsson as sl
from toroidal_o.toroidal import AlgebraConfig


@dataclass
class SignConfig:
    n: int = 4
    D: int = 2


def run(conf: SignConfig):
    cfg = AlgebraConfig("H", conf.n, 2, conf.D)
    for sign, rep in sorted(sl.arbitrate_h_sign(cfg, conf.D).items()):
        print(f"sign {sign:+d}: {rep.status}, {rep.checked} checks, {len(rep.violations)} violations")
    m = sl.SLModule(cfg, (0,), (1,) + (0,) * (conf.n // 2 - 1), (0,) * conf.n, conf.D, mode="literal")
    rep = sl.literal_vs_uniform(m, min(conf.D, 2))
    print(f"literal (sign -1) vs grouped action: {rep.status} over {rep.checked} checks")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--D", type=int, default=2)
    a = p.parse_args()
    run(SignConfig(a.n, a.D))
