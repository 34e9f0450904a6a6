r"""Coarse text map of the capacity landscape over (C_g, C_nu).

Runs a small sweep with the same engine the command line uses and draws
the plane as characters: '#' where the capacity bound is positive, '.'
where the channel exists but carries no qubits, 'x' where the pump makes
the system unstable. The unstable wedge grows out of the C_g = 0 corner
at C_nu = 1/4 and the positive-capacity band hugs eta = 1.
"""
from transduction_lab import sweep_cli as sw


def main():
    # the c_nu grid deliberately avoids landing exactly on the marginal
    # line 2 nu = kappa_e, where the stable flag is a coin flip
    config = sw.SweepConfig(axes=(
        sw.SweepAxis.from_range("c_nu", 0.0, 1.19, 25),
        sw.SweepAxis.from_range("c_g", 0.01, 3.0, 61),
    ))
    table = sw.run_sweep(config)
    kc = table.columns.index("c_g")
    kn = table.columns.index("c_nu")
    kq = table.columns.index("q_lb")
    ks = table.columns.index("stable")

    rows = {}
    for row in table.rows:
        rows.setdefault(row[kn], []).append(row)

    print("C_nu")
    for c_nu in sorted(rows, reverse=True):
        line = []
        for row in sorted(rows[c_nu], key=lambda r: r[kc]):
            if not row[ks]:
                line.append("x")
            elif row[kq] is not None and row[kq] > 0.0:
                line.append("#")
            else:
                line.append(".")
        print(f"{c_nu:5.2f} |{''.join(line)}|")
    c_gs = sorted({row[kc] for row in table.rows})
    print(f"       C_g = {c_gs[0]:.2f} ... {c_gs[-1]:.2f}"
          f"   ('#' Q_lb > 0, '.' zero, 'x' unstable)")


if __name__ == "__main__":
    main()
