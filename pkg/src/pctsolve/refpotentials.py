"""Exactly solvable constant-mass reference problems.

Each reference solves, in units hbar = mass = 1,

    Phi'' + 2 [eps - V(y)] Phi = 0

on its natural domain, i.e. H = -(1/2) d^2/dy^2 + V(y).  Provided families:

* Morse              V(y) = D (e^{-2 a y} - 2 e^{-a y}),  y in R
* Poeschl-Teller     V(y) = -U0 / cosh^2(a y),            y in R
* Hulthen            V(y) = -V0 e^{-a y} / (1 - e^{-a y}), y > 0

All three support a finite ladder of bound states with closed-form energies
and (unnormalized up to an analytic constant) eigenfunctions built from
generalized Laguerre / Jacobi polynomials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, ConfigError, DomainError
from .qmath import jacobi, laguerre_assoc

MORSE = "morse"
POSCHL_TELLER = "poschl_teller"
HULTHEN = "hulthen"

REFERENCE_KINDS = (MORSE, POSCHL_TELLER, HULTHEN)


@dataclass(frozen=True)
class Spectrum:
    """Bound-state energies of a reference problem, lowest first."""

    energies: tuple
    kind: str
    params: tuple

    def __len__(self):
        return len(self.energies)

    def __getitem__(self, n):
        return self.energies[n]


def _check_level(n, n_max, kind):
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 0:
        raise ArgumentError(f"level index must be a non-negative integer, got {n!r}")
    if n > n_max:
        raise ArgumentError(
            f"{kind} potential with these parameters has levels 0..{n_max}, got n={n}"
        )


def _normalize_numeric(psi, y):
    """Scale a bound-state profile to unit L2 norm on the given sample.

    Scalar or single-point input is returned unscaled (no measure to
    integrate against); callers needing normalized values pass a grid.
    """
    psi = np.asarray(psi, dtype=float)
    if psi.ndim == 0 or psi.size < 2:
        return psi
    norm = math.sqrt(np.trapezoid(psi * psi, y))
    return psi / norm if norm > 0 else psi


@dataclass(frozen=True)
class Morse:
    """Morse oscillator V(y) = D (e^{-2 a y} - 2 e^{-a y}) with well depth D > 0."""

    D: float
    alpha: float = 1.0

    def __post_init__(self):
        if not self.D > 0 or not self.alpha > 0:
            raise ConfigError("Morse requires D > 0 and alpha > 0")
        if self._dbar() <= 0.5:
            raise ConfigError("Morse well too shallow to bind a state")

    def _dbar(self):
        return math.sqrt(2.0 * self.D) / self.alpha

    @property
    def n_max(self):
        # beta = dbar - n - 1/2 must stay positive
        return int(math.floor(self._dbar() - 0.5 - 1e-12))

    def y_domain(self):
        return (-math.inf, math.inf)

    def potential(self, y):
        y = np.asarray(y, dtype=float)
        e = np.exp(-self.alpha * y)
        return self.D * (e * e - 2.0 * e)

    def energy(self, n):
        _check_level(n, self.n_max, MORSE)
        beta = self._dbar() - n - 0.5
        return -0.5 * self.alpha**2 * beta * beta

    def eigenfunction(self, n, y):
        """Unit-norm bound state: z^beta e^{-z/2} L_n^{2 beta}(z), z = 2 dbar e^{-a y}."""
        _check_level(n, self.n_max, MORSE)
        y = np.asarray(y, dtype=float)
        dbar = self._dbar()
        beta = dbar - n - 0.5
        logz = math.log(2.0 * dbar) - self.alpha * y
        z = np.exp(np.minimum(logz, 700.0))
        # envelope in log form; deep in the inner wall (z huge) the state is 0
        log_env = beta * logz - 0.5 * z
        alive = log_env > -745.0
        env = np.where(alive, np.exp(np.where(alive, log_env, 0.0)), 0.0)
        # the envelope kills everything past z ~ 1600; clip z there so the
        # polynomial cannot overflow into 0 * inf
        poly = laguerre_assoc(n, 2.0 * beta, np.minimum(z, 2000.0))
        psi = env * poly
        return _normalize_numeric(psi, y)


@dataclass(frozen=True)
class PoschlTeller:
    """Poeschl-Teller well V(y) = -U0 / cosh^2(a y) with depth U0 > 0."""

    U0: float
    alpha: float = 1.0

    def __post_init__(self):
        if not self.U0 > 0 or not self.alpha > 0:
            raise ConfigError("Poeschl-Teller requires U0 > 0 and alpha > 0")

    def _s(self):
        return 0.5 * (math.sqrt(1.0 + 8.0 * self.U0 / self.alpha**2) - 1.0)

    @property
    def n_max(self):
        s = self._s()
        n = int(math.ceil(s - 1e-12)) - 1
        if n < 0:
            raise ConfigError("Poeschl-Teller well too shallow to bind a state")
        return n

    def y_domain(self):
        return (-math.inf, math.inf)

    def potential(self, y):
        y = np.asarray(y, dtype=float)
        c = np.cosh(self.alpha * y)
        return -self.U0 / (c * c)

    def energy(self, n):
        _check_level(n, self.n_max, POSCHL_TELLER)
        beta = self._s() - n
        return -0.5 * self.alpha**2 * beta * beta

    def eigenfunction(self, n, y):
        """Unit-norm bound state: (1 - z^2)^{beta/2} P_n^{(beta,beta)}(z), z = tanh(a y)."""
        _check_level(n, self.n_max, POSCHL_TELLER)
        y = np.asarray(y, dtype=float)
        beta = self._s() - n
        u = self.alpha * y
        z = np.tanh(u)
        # (1 - z^2)^{beta/2} = sech^{beta}; evaluate in log form for large |u|
        log_env = -beta * (np.abs(u) + np.log1p(np.exp(-2.0 * np.abs(u))) - math.log(2.0))
        env = np.where(log_env > -745.0, np.exp(log_env), 0.0)
        psi = env * jacobi(n, beta, beta, z)
        return _normalize_numeric(psi, y)


@dataclass(frozen=True)
class Hulthen:
    """Hulthen potential V(y) = -V0 e^{-a y}/(1 - e^{-a y}) on the half line y > 0."""

    V0: float
    alpha: float = 1.0

    def __post_init__(self):
        if not self.V0 > 0 or not self.alpha > 0:
            raise ConfigError("Hulthen requires V0 > 0 and alpha > 0")
        if self._beta_sq() <= 1.0:
            raise ConfigError("Hulthen well too shallow to bind a state")

    def _beta_sq(self):
        return 2.0 * self.V0 / self.alpha**2

    @property
    def n_max(self):
        # bound states need (n + 1)^2 < beta^2
        b = math.sqrt(self._beta_sq())
        return int(math.ceil(b - 1e-12)) - 2

    def y_domain(self):
        return (0.0, math.inf)

    def potential(self, y):
        y = np.asarray(y, dtype=float)
        if np.any(y <= 0):
            raise DomainError("Hulthen potential is defined for y > 0 only")
        e = np.exp(-self.alpha * y)
        return -self.V0 * e / (1.0 - e)

    def energy(self, n):
        _check_level(n, self.n_max, HULTHEN)
        nbar = n + 1
        return -self.alpha**2 / 8.0 * ((self._beta_sq() - nbar * nbar) / nbar) ** 2

    def eigenfunction(self, n, y):
        """Unit-norm bound state: z^w (1 - z) P_n^{(2w, 1)}(1 - 2z), z = e^{-a y},
        with w = (beta^2 - (n+1)^2) / (2 (n+1))."""
        _check_level(n, self.n_max, HULTHEN)
        y = np.asarray(y, dtype=float)
        if np.any(y <= 0):
            raise DomainError("Hulthen eigenfunction is defined for y > 0 only")
        nbar = n + 1
        w = (self._beta_sq() - nbar * nbar) / (2.0 * nbar)
        z = np.exp(-self.alpha * y)
        psi = z**w * (1.0 - z) * jacobi(n, 2.0 * w, 1.0, 1.0 - 2.0 * z)
        return _normalize_numeric(psi, y)


def make_reference(kind, **params):
    """Factory keyed by kind string; raises ConfigError for unknown kinds."""
    try:
        if kind == MORSE:
            return Morse(**params)
        if kind == POSCHL_TELLER:
            return PoschlTeller(**params)
        if kind == HULTHEN:
            return Hulthen(**params)
    except TypeError as exc:
        raise ConfigError(f"bad parameters for reference {kind!r}: {exc}")
    raise ConfigError(f"unknown reference potential kind {kind!r}")


def spectrum(ref, n_levels=None):
    """Bound-state energies of a reference, lowest first."""
    top = ref.n_max if n_levels is None else min(n_levels - 1, ref.n_max)
    energies = tuple(ref.energy(n) for n in range(top + 1))
    kind = {Morse: MORSE, PoschlTeller: POSCHL_TELLER, Hulthen: HULTHEN}[type(ref)]
    params = tuple(sorted(ref.__dict__.items()))
    return Spectrum(energies, kind, params)
