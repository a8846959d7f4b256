"""Cross-exclusivity of the convergence criteria across the builtin corpus.

Each builtin scenario is designed to satisfy exactly one of the four
mixture-type criteria. Running all four checkers on all eight scenarios
shows a diagonal of passes and an off-diagonal of decisive failures or
hypothesis violations, which is what makes the checkers informative.

Run with: python3 demos/05_criteria_matrix.py
"""

from stablemix.empirics import builtin_scenarios, get_scenario, run_criterion

CHECKERS = ("degenerate", "gaussian_mixture", "cauchy_mixture", "stable_mixture")


def cell(spec, criterion: str) -> str:
    try:
        verdict = run_criterion(spec, criterion, 0)
    except ValueError:
        return "n/a "
    mark = {True: "PASS", False: "fail", None: "? "}[verdict.holds]
    return mark


def main() -> None:
    print("Criterion matrix over the builtin corpus (seed 0)")
    print("=" * 72)
    header = f"{'scenario':18s}" + "".join(f"{c[:12]:>14s}" for c in CHECKERS)
    print(header)
    print("-" * len(header))
    for name in builtin_scenarios():
        if name == "example1":
            continue
        spec = get_scenario(name)
        row = f"{name:18s}"
        for criterion in CHECKERS:
            value = cell(spec, criterion)
            star = "*" if criterion == spec.exclusive_pass else " "
            row += f"{value + star:>14s}"
        print(row)
    print()
    print("Starred column = the checker the scenario was designed for.")
    print("'n/a' marks a hypothesis violation (the checker refuses to run,")
    print("for example the stable checker on a scenario with no tail index).")


if __name__ == "__main__":
    main()
