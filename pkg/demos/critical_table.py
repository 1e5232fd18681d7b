"""Certified critical values for a handful of tuples, one per line.

Shows where ``exp(-pi cot(pi/M))`` lies relative to ``q(1/C)`` as Phi grows.
"""
from mirrormaps import analytic
from mirrormaps.interval import digits_to_bits
from mirrormaps.numbers import make_ntuple

TUPLES = [(2,), (2, 2), (3,), (4,), (6,), (2, 3), (2, 6), (5,), (3, 3), (2, 2, 2, 2), (8,), (12, 12)]


def main(digits=30):
    prec = digits_to_bits(digits)
    print(f"{'tuple':<12}{'Phi':>4}  {'rho':<24}{'q(1/C)':<24}relation")
    for t in TUPLES:
        n = make_ntuple(t)
        rep = analytic.check_critical_inequality(n, prec)
        rho = analytic.rho_value(n, prec)
        qc = analytic.qc_value(n, 64, budget=rep.parameters.get("terms") or 2)
        print(f"({n.label})".ljust(12) + f"{n.phi_total:>4}  {float(rho):<24.15g}{float(qc):<24.15g}"
              f"{rep.parameters['relation']}  [{rep.outcome}]")


if __name__ == "__main__":
    main()
