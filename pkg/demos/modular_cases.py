"""Check every registered modular identity at a modest order and print a table."""
import sys

from mirrormaps import modular

ORDER = int(sys.argv[1]) if len(sys.argv) > 1 else 100


def main():
    print(f"{'case':<8}{'identity':<15}{'outcome':<9}cleared form")
    for label in modular.case_labels():
        case = modular.get_case(label)
        for name in case.names:
            rep = modular.verify_identity(case, name, ORDER)
            print(f"({label})".ljust(8) + f"{name:<15}{rep.outcome:<9}{rep.parameters['cleared_form']}")
        if label in modular.CLAUSEN_PARAMETERS:
            rep = modular.check_clausen(case, ORDER)
            print(f"({label})".ljust(8) + f"{'clausen':<15}{rep.outcome:<9}"
                  f"F = 2F1[{rep.parameters['alpha']}, {rep.parameters['beta']}; 1; Cz]^2")
    print("quadratic transform:", modular.check_quadratic_transform(ORDER).outcome)
    print("theta product vs lattice sum:", modular.check_theta_products(ORDER).outcome)


if __name__ == "__main__":
    main()
