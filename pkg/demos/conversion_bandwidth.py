r"""Conversion bandwidth and how the pump narrows it.

Off resonance the transmissivity rolls off on the scale of the narrower
linewidth. Turning the microwave pump up pushes the system toward its
instability and the response sharpens: the same correction that lifts
the peak back to one eats bandwidth. Printed below for a strongly
asymmetric pair of linewidths (kappa_o = 500 kappa_e).
"""
import numpy as np

from transduction_lab import SystemParams, eta_bandwidth


def fwhm(params, omegas):
    etas = eta_bandwidth(params, omegas)
    inside = omegas[etas >= 0.5 * etas.max()]
    return inside.max() - inside.min()


def main():
    omegas = np.linspace(-0.3, 0.3, 2001)
    print("c_nu    eta(0)    FWHM (units of kappa_e)")
    for c_nu in (0.0, 0.1, 0.2):
        params = SystemParams.from_cooperativities(
            0.1, c_nu, kappa_o=100.0, kappa_e=0.2)
        width = fwhm(params, omegas)
        peak = float(eta_bandwidth(params, 0.0))
        print(f"{c_nu:4.2f}   {peak:7.4f}   {width / 0.2:7.3f}")

    print("\nprofile at c_nu = 0.2 (one row per frequency):")
    params = SystemParams.from_cooperativities(0.1, 0.2, kappa_o=100.0, kappa_e=0.2)
    for omega in np.linspace(-0.06, 0.06, 13):
        eta = float(eta_bandwidth(params, float(omega)))
        bar = "*" * int(round(40 * eta))
        print(f"  omega = {omega:+.3f}  {eta:6.4f} |{bar}")


if __name__ == "__main__":
    main()
