"""Recompute the worked W and W3 numbers and print them beside the reference values.

Usage: python3 scripts/reproduce_examples.py
"""
import math

from gmebloch import bloch, criteria, states

REFERENCE = {
    "W: |N_1|23|": 35.0710,
    "W: T": 26.4918,
    "W: x not fully separable": 0.4296,
    "W: x 1|23": 0.4352,
    "W: x GME": 0.5762,
    "M(3)": 27.6257,
    "W3: T": 34.5797,
    "W3: x GME": 0.798899,
}


def compute(mid_index=1):
    cfg = bloch.SliceConfig(mid_index=mid_index)
    w, w3 = states.w_qubit(), states.w3_qutrit()
    b2, b3 = criteria.lemma_bounds(2), criteria.lemma_bounds(3)
    fam, fam3 = states.family(w), states.family(w3)
    return {
        "W: |N_1|23|": bloch.n_norms(w.density())[0],
        "W: T": bloch.t_value(w.density()),
        "W: x not fully separable": states.critical_x(fam, "norm_1_23", b2.b1_case_i),
        "W: x 1|23": states.critical_x(fam, "norm_1_23", b2.b1_case_ii),
        "W: x GME": states.critical_x(fam, "t_value", b2.M),
        "M(3)": b3.M,
        "W3: T": bloch.t_value(w3.density(), cfg),
        "W3: x GME": states.critical_x(fam3, "t_value", b3.M, config=cfg),
    }


def main():
    default, offdiag = compute(1), compute(3)
    print(f"{'quantity':28s}{'reference':>12s}{'default':>12s}{'mid=3':>12s}")
    for key, ref in REFERENCE.items():
        a, b = default[key], offdiag[key]
        print(f"{key:28s}{ref:12.6f}{a:12.6f}{b:12.6f}")
    print(f"\nsqrt(233) = {math.sqrt(233):.6f}")


if __name__ == "__main__":
    main()
