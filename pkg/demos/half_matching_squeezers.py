r"""Turn a half-matched converter into a perfect channel with squeezers.

Away from C_g = 1 the converter reflects part of the signal, but on the
curve C_nu = (1 - C_g)^2 / 4 exactly one quadrature becomes
reflectionless. Local single-mode squeezers on either side then remove
the leftover asymmetry: the composed channel has det T = 1 and rank-one
noise that an extra squeeze factor suppresses without bound.
"""
import numpy as np

from transduction_lab import (
    SystemParams,
    capacity_lower_bound,
    detect_half_matched,
    half_matching_cnu,
    metrics_from_channel,
    perfect_transduction_plan,
    quadrature_relations,
    signal_scattering,
    composed_channel,
    two_way_channels,
    two_way_plan,
)


def main():
    c_g = 0.25
    c_nu = half_matching_cnu(c_g)
    print(f"operating point: C_g = {c_g}, C_nu = {c_nu} (half matching)")

    rel = quadrature_relations(c_g, c_nu)
    print(f"quadrature reflections: x = {rel.x_reflection:+.4f},"
          f" p = {rel.p_reflection:+.4f}  -> '{rel.cancelled}' is matched")

    params = SystemParams.from_cooperativities(c_g, c_nu)
    s = signal_scattering(params)
    form = detect_half_matched(s)
    print(f"detected normal form: xi = {form.xi:.4f}, gamma = {form.gamma:+.4f}")

    print("\ncomposed with squeezers (one-way plan):")
    print(" squeeze   det T      noise eigenvalues          Q_lb")
    for squeeze in (1.0, 4.0, 32.0, 1e6):
        plan = perfect_transduction_plan(form, squeeze=squeeze)
        channel = composed_channel(s, plan)
        evals = np.linalg.eigvalsh(channel.noise)
        m = metrics_from_channel(channel)
        q = capacity_lower_bound(m.eta, m.n_e, m.sigma2)
        print(f" {squeeze:7.0f}  {np.linalg.det(channel.transform):7.4f}"
              f"   [{evals[0]:9.2e} {evals[1]:9.2e}]  {q}")

    print("\nboth directions at once (two-way plan, squeeze = 4):")
    ch_f, ch_b = two_way_channels(s, *two_way_plan(form, squeeze=4.0))
    for name, ch in (("a -> b", ch_f), ("b -> a", ch_b)):
        evals = np.linalg.eigvalsh(ch.noise)
        print(f"  {name}: det T = {np.linalg.det(ch.transform):.4f},"
              f" residual noise = {evals[-1]:.6f}")


if __name__ == "__main__":
    main()
