"""Walk through the quintic case N = (5) from coefficients to the radius of its mirror map.

Run with ``python3 demos/quintic_tour.py``.  Takes a few seconds.
"""
from mirrormaps import analytic
from mirrormaps.mirrormap import build, check_positivity, classify_z_signs
from mirrormaps.numbers import make_ntuple

ORDER = 300


def main():
    n = make_ntuple([5])
    print(f"N = ({n.label}):  C = {n.c_constant},  Phi = {n.phi_total},  M = {n.m_max}")

    d = build(n, ORDER)
    print("first canonical-coordinate coefficients:", [d.q_series[m] for m in range(1, 6)])
    print("first mirror-map coefficients:        ", [d.z_series[m] for m in range(1, 6)])
    print("positivity of q and of 1 - 1/F:", check_positivity(d).outcome)

    signs = classify_z_signs(d)
    print(f"sign pattern of z up to order {ORDER}: {signs.pattern} (expected {signs.expected})")

    # the mirror map's radius should sit at q(1/C); compare a ratio fit with the certified value
    fit = analytic.radius_fit(d.z_series)
    qc = analytic.qc_value(n, 100)
    rho = analytic.rho_value(n, 100)
    print(f"ratio-fit radius of z:   {fit.radius:.8f} +- {fit.error:.1e}  (heuristic)")
    print(f"q(1/C), certified:       {qc}")
    print(f"exp(-pi cot(pi/M)):      {rho}")
    print("rho > q(1/C):", rho.certainly_gt(qc))


if __name__ == "__main__":
    main()
