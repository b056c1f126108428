"""Polynomial solutions of the one-dimensional heat equation.

The functions

    v_n(x, t) = sum_{m=0}^{floor(n/2)} a^(2m) * n! / (m! (n-2m)!) * x^(n-2m) t^m

satisfy v_t = a^2 v_xx exactly for every order n, reduce to the monomials
x^n at t = 0, and obey the ladder identities

    d/dx v_n = n v_{n-1},        d/dt v_n = a^2 n (n-1) v_{n-2}.

Truncated combinations sum(c_n v_n) therefore solve the heat equation
identically, which is what makes them usable as trial functions for
boundary-data fitting.
"""

import numpy as np

__all__ = ["HeatPolynomialBasis"]


class HeatPolynomialBasis:
    """Evaluates v_0 .. v_N and their first derivatives.

    Parameters
    ----------
    diffusivity : float
        Thermal diffusivity a > 0 of the underlying heat equation.
    max_order : int
        Largest usable order N >= 0.

    Notes
    -----
    Coefficients are built by the multiplicative recurrence

        K_0 = 1,   K_{m+1} = K_m * a^2 (n - 2m)(n - 2m - 1) / (m + 1),

    which avoids explicit factorials, and evaluation accumulates the sum
    Horner-style in x^2 with t powers updated incrementally.  Both are O(n)
    per point and stay exact in floating point for small integer data.
    """

    def __init__(self, diffusivity, max_order):
        diffusivity = float(diffusivity)
        if not np.isfinite(diffusivity) or diffusivity <= 0.0:
            raise ValueError(f"diffusivity must be a positive finite number, got {diffusivity}")
        if int(max_order) != max_order or max_order < 0:
            raise ValueError(f"max_order must be a non-negative integer, got {max_order}")
        self.diffusivity = diffusivity
        self.max_order = int(max_order)

    def __repr__(self):
        return f"HeatPolynomialBasis(diffusivity={self.diffusivity!r}, max_order={self.max_order})"

    @property
    def size(self):
        """Number of basis functions, N + 1."""
        return self.max_order + 1

    def _check_order(self, n):
        if int(n) != n or n < 0 or n > self.max_order:
            raise ValueError(f"order must be an integer in [0, {self.max_order}], got {n}")
        return int(n)

    def coefficients(self, n):
        """Coefficients K_m of the monomials x^(n-2m) t^m for m = 0 .. floor(n/2).

        Returns
        -------
        list of float
            [K_0, K_1, ...] with K_m = a^(2m) n! / (m! (n-2m)!).
        """
        n = self._check_order(n)
        a2 = self.diffusivity * self.diffusivity
        coeffs = [1.0]
        k = 1.0
        for m in range(n // 2):
            k *= a2 * (n - 2 * m) * (n - 2 * m - 1) / (m + 1)
            coeffs.append(k)
        return coeffs

    def eval(self, n, x, t):
        """Evaluate v_n at (x, t).  Accepts scalars or broadcastable arrays."""
        n = self._check_order(n)
        xb, tb = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
        a2 = self.diffusivity * self.diffusivity
        x2 = xb * xb
        acc = np.ones_like(x2)
        k = 1.0
        tp = np.ones_like(tb)
        for m in range(1, n // 2 + 1):
            k *= a2 * (n - 2 * (m - 1)) * (n - 2 * (m - 1) - 1) / m
            tp = tp * tb
            acc = acc * x2 + k * tp
        if n % 2:
            acc = acc * xb
        return float(acc) if acc.ndim == 0 else acc

    def eval_dx(self, n, x, t):
        """Evaluate d/dx v_n at (x, t) via the ladder identity n v_{n-1}."""
        n = self._check_order(n)
        if n == 0:
            shape = np.broadcast(np.asarray(x, dtype=float), np.asarray(t, dtype=float)).shape
            return 0.0 if shape == () else np.zeros(shape)
        return n * self.eval(n - 1, x, t)

    def eval_dt(self, n, x, t):
        """Evaluate d/dt v_n at (x, t) via a^2 n (n-1) v_{n-2}."""
        n = self._check_order(n)
        if n < 2:
            shape = np.broadcast(np.asarray(x, dtype=float), np.asarray(t, dtype=float)).shape
            return 0.0 if shape == () else np.zeros(shape)
        a2 = self.diffusivity * self.diffusivity
        return a2 * n * (n - 1) * self.eval(n - 2, x, t)

    def eval_combination(self, coeffs, x, t, deriv="value"):
        """Evaluate sum(c_n * v_n) or its first derivative in x or t.

        Parameters
        ----------
        coeffs : sequence of float
            Exactly N + 1 finite coefficients, index = order.
        x, t : scalars or broadcastable arrays
        deriv : {"value", "dx", "dt"}
        """
        coeffs = np.asarray(coeffs, dtype=float)
        if coeffs.shape != (self.size,):
            raise ValueError(
                f"expected {self.size} coefficients for max_order {self.max_order}, "
                f"got shape {coeffs.shape}")
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("coefficients must be finite")
        if deriv == "value":
            term = self.eval
        elif deriv == "dx":
            term = self.eval_dx
        elif deriv == "dt":
            term = self.eval_dt
        else:
            raise ValueError(f"deriv must be 'value', 'dx' or 'dt', got {deriv!r}")
        xb, tb = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
        acc = np.zeros(xb.shape)
        for n in range(self.size):
            if coeffs[n] != 0.0:
                acc = acc + coeffs[n] * term(n, xb, tb)
        return float(acc) if acc.ndim == 0 else acc
