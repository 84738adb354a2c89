"""Import the built extension and exercise each binding once.

Build first with `cargo build --release -p spherezeta-py`; the script copies
the shared library next to itself as spherezeta_py.so and imports it.
"""

import math
import shutil
import sys
from pathlib import Path

HERE = Path(__file__).resolve().parent
ROOT = HERE.parent


def locate_library():
    for profile in ("release", "debug"):
        lib = ROOT / "target" / profile / "libspherezeta_py.so"
        if lib.exists():
            return lib
    sys.exit("libspherezeta_py.so not found; run cargo build -p spherezeta-py")


def main():
    shutil.copy(locate_library(), HERE / "spherezeta_py.so")
    sys.path.insert(0, str(HERE))
    import spherezeta_py as sz

    assert sz.spectrum(2, 2)[2] == (2, 6.0, 6.25, 5)

    z = sz.regularized_zeta(2.0, 3)
    closed = sz.closed_form_z(2.0, 3)
    assert abs(z.value - (math.pi**2 / 6 - 1)) < 1e-8, z
    assert abs(float(closed) - z.value) < 1e-8
    assert abs(sz.closed_form_z(2.0, 3, printed=True).value - 0.2020569031595942) < 1e-12
    assert abs(sz.spectral_zeta(2.0, 2).value - 1.0) < 1e-8

    assert abs(sz.riemann_zeta(2.0).value - math.pi**2 / 6) < 1e-13
    assert abs(sz.hurwitz_zeta(2.0, 1.0).value - math.pi**2 / 6) < 1e-13
    direct = sz.hurwitz_style_z(1.5, 0.5)
    binom = sz.hurwitz_style_z(1.5, 0.5, m_max=60)
    assert abs(direct.value - binom.value) < 1e-8

    assert abs(sz.gegenbauer_ratio(1, 2, 0.3) - 0.3) < 1e-15
    h = sz.heat_kernel(1.0, 2, 1.0)
    tr = sz.heat_trace(1.0, 2)
    assert abs(4 * math.pi * h.value - tr.value) < 1e-9
    m = sz.mellin_zeta_kernel(2.0, 1, 0.5)
    k = sz.zeta_kernel(2.0, 1, 0.5, tol=1e-8, max_k=8_000_000)
    assert abs(m.value - k.value) < 1e-6

    pair = sz.compare_zeta_pair(3.0, 2)
    assert pair.dominated and pair.termwise and pair.gap > 0

    rep = sz.majorizes([3, 1, 0], [2, 1, 1])
    assert rep.strongly and rep.verdict == "majorizes"
    assert not sz.weak_majorizes([1, 1], [2, 0]).weakly

    op = sz.Operator.cycle(10)
    assert op.dim == 10 and abs(min(op.eigenvalues())) < 1e-12
    assert sz.kato_pointwise_trials(op, trials=100, seed=1).all_hold
    assert sz.generator_pairing_trials(op, trials=100, seed=2).all_hold
    assert sz.positivity_trials(op, trials=50, seed=3).all_hold
    assert sz.trace_domination_trials(sz.Operator.random_graph(8, 0.5, 7), trials=20).all_hold
    assert op.commute_residual(1.0) < 1e-12
    rows = op.semigroup(0.0)
    assert rows[0][0] == 1.0 and rows[0][1] == 0.0
    x = sz.Operator([[2.0, -1.0], [-1.0, 2.0]])
    y = sz.Operator([[0.5, 0.0], [0.0, 0.0]])
    assert sz.duhamel_residual(x, y, 1.0) < 1e-9

    for bad in (lambda: sz.closed_form_z(2.0, 9), lambda: sz.Operator([[1.0, 2.0], [0.0, 1.0]])):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")

    print("spherezeta_py smoke test passed")


if __name__ == "__main__":
    main()
