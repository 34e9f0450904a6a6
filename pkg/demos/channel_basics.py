r"""Walk through the basic channel quantities at a few operating points.

The converter couples an optical and a microwave resonator; what the
outside world sees is a one-mode Gaussian channel V -> T V T^t + N. This
script builds that channel from the scattering matrix and prints the
three numbers everything else is made of: the transmissivity det T, the
effective environment occupancy n_e, and the capacity lower bound.
"""
import numpy as np

from transduction_lab import (
    SystemParams,
    capacity_lower_bound,
    eta_closed_form,
    extract_channel,
    metrics_from_channel,
)


def describe(label, c_g, c_nu=0.0):
    params = SystemParams.from_cooperativities(c_g, c_nu)
    m = metrics_from_channel(extract_channel(params))
    closed = eta_closed_form(c_g, c_nu)
    print(f"{label:<34s} eta = {m.eta:8.5f}  (closed form {closed:8.5f})")
    if m.n_e is not None:
        print(f"{'':<34s} n_e = {m.n_e:8.5f}  Q_lb = {m.q_lb:8.5f}")
    else:
        print(f"{'':<34s} sigma^2 = {m.sigma2:.3e}  Q_lb = {m.q_lb}")


def main():
    print("weak coupling wastes most of the input:")
    describe("  C_g = 0.2", 0.2)

    print("\nimpedance matching (C_g = 1) converts everything:")
    describe("  C_g = 1", 1.0)

    print("\novercoupling reflects again:")
    describe("  C_g = 3", 3.0)

    print("\na blue pump on the microwave side compensates mismatch;")
    print("on the half-matching curve C_nu = (1 - C_g)^2 / 4 the")
    print("transmissivity returns to one at the price of added noise:")
    describe("  C_g = 0.25, C_nu = 0.140625", 0.25, 0.140625)

    print("\nthe capacity threshold without a pump sits at eta = 1/2,")
    print("i.e. C_g = 3 - 2 sqrt(2) ~ 0.1716:")
    for c_g in (0.15, 3.0 - 2.0 * np.sqrt(2.0), 0.20):
        describe(f"  C_g = {c_g:.4f}", float(c_g))


if __name__ == "__main__":
    main()
