"""Print the red/violet/energy/maximum verdicts for every preset law."""

from piradiance.laws import LAW_NAMES, evaluate_criteria, preset_law


def main():
    header = f"{'law':<15}{'N':>5}  {'red':<5}{'violet':<7}{'strong':<7}{'energy':<11}{'extreme':<11}"
    print(header)
    print("-" * len(header))
    for name in LAW_NAMES:
        r = evaluate_criteria(preset_law(name))
        mark = lambda ok: "yes" if ok else "no"
        print(
            f"{name:<15}{r.N:>5g}  {mark(r.red_pass):<5}{mark(r.violet_pass):<7}"
            f"{mark(r.strengthened_violet_pass):<7}{r.energy_integral.classification:<11}{r.max_kind:<11}"
        )


if __name__ == "__main__":
    main()
