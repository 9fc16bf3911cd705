"""Window functions with paired time/frequency evaluators.

The Fourier transform convention throughout the package is

    ghat(xi) = integral g(t) exp(-2*pi*i*xi*t) dt,

under which the standard Gaussian exp(-pi*t^2) is its own transform and the
Hermite function of order n is an eigenfunction with eigenvalue (-i)^n.

A window bundles closed-form (or quadrature-backed) evaluators with the
metadata the certification machinery needs: a parity classification and,
when available, a Gaussian decay envelope

    |ghat(xi)| <= amplitude * exp(-rate * xi^2)   for all real xi,

which drives rigorous truncation bounds for lattice sums.  Windows without
an envelope are still accepted; downstream truncation is then heuristic and
results carry a non-rigorous flag.
"""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial import hermite as _herm

from .errors import PreconditionError

# Standard sampling grid used for quadrature-backed transforms and for
# turning closed-form windows into sample vectors.
GRID_HALF_WIDTH = 8.0
GRID_SPACING = 0.005

# Relative symmetry residual below which a window counts as even or odd.
PARITY_TOL = 1e-10
_PARITY_PROBES = np.linspace(-5.0, 5.0, 201)

_SQRT_2PI = math.sqrt(2.0 * math.pi)
# Normalisation making hermite(1) exactly t*exp(-pi*t^2).
_HERMITE_NORM = 1.0 / (2.0 * _SQRT_2PI)

# Relative headroom applied to derived envelope amplitudes so a bound that is
# mathematically tight still holds after float rounding.
_ENVELOPE_PAD = 1.0 + 1e-12


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"
    NEITHER = "neither"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Envelope:
    """Pointwise bound |ghat(xi)| <= amplitude * exp(-rate * xi^2)."""

    amplitude: float
    rate: float

    def __post_init__(self) -> None:
        if not (self.amplitude > 0 and math.isfinite(self.amplitude)):
            raise PreconditionError("envelope amplitude must be positive and finite")
        if not (self.rate > 0 and math.isfinite(self.rate)):
            raise PreconditionError("envelope rate must be positive and finite")

    def bound(self, xi):
        xi = np.asarray(xi, dtype=float)
        return self.amplitude * np.exp(-self.rate * xi * xi)


@dataclass(frozen=True)
class Window:
    """A window function with paired time and frequency evaluators.

    Both evaluators are vectorised: they accept a float or an ndarray and
    return complex values of matching shape.
    """

    label: str
    kind: str
    time_eval: Callable = None  # type: ignore[assignment]
    freq_eval: Callable = None  # type: ignore[assignment]
    parity: Parity = Parity.UNKNOWN
    envelope: Envelope | None = None
    known_minimizer: float | None = None

    def __repr__(self) -> str:  # callables are noise in reprs
        return (
            f"Window(label={self.label!r}, kind={self.kind!r}, "
            f"parity={self.parity.value}, envelope={self.envelope!r})"
        )


def gaussian() -> Window:
    """The standard Gaussian window exp(-pi*t^2), self-dual under the FT.

    Its density profile attains its minimum at omega = 1/2, so the grid
    minimiser found by the criterion is known to be global.
    """

    def evaluate(t):
        t = np.asarray(t, dtype=float)
        return np.exp(-math.pi * t * t) + 0.0j

    return Window(
        label="gaussian",
        kind="gaussian",
        time_eval=evaluate,
        freq_eval=evaluate,
        parity=Parity.EVEN,
        envelope=Envelope(amplitude=1.0, rate=math.pi),
        known_minimizer=0.5,
    )


def _monomial_peak(j: int, beta: float) -> float:
    # sup over x >= 0 of x^j * exp(-beta*x^2)
    if j == 0:
        return 1.0
    return (j / (2.0 * beta)) ** (j / 2.0) * math.exp(-j / 2.0)


def hermite(n: int) -> Window:
    """Hermite window of order n in the self-dual scaling.

    h_n(t) = H_n(sqrt(2*pi)*t) * exp(-pi*t^2) / (2*sqrt(2*pi)) with H_n the
    physicists' Hermite polynomial, so h_1(t) = t*exp(-pi*t^2) exactly and
    the transform satisfies ghat = (-i)^n * g.
    """
    if not isinstance(n, int) or n < 0:
        raise PreconditionError(f"hermite order must be a nonnegative integer, got {n!r}")

    herm_coef = [0.0] * n + [1.0]
    eigenvalue = (-1j) ** n

    def time_eval(t):
        t = np.asarray(t, dtype=float)
        poly = _herm.hermval(_SQRT_2PI * t, herm_coef)
        return _HERMITE_NORM * poly * np.exp(-math.pi * t * t) + 0.0j

    def freq_eval(xi):
        return eigenvalue * time_eval(xi)

    # Global envelope with rate pi/2: bound |H_n| by the absolute-coefficient
    # polynomial and absorb each monomial's peak against exp(-(pi/2)*xi^2).
    power_coef = _herm.herm2poly(herm_coef)
    beta = math.pi / 2.0
    amplitude = _HERMITE_NORM * math.fsum(
        abs(a) * _SQRT_2PI**j * _monomial_peak(j, beta)
        for j, a in enumerate(power_coef)
        if a != 0.0
    )

    return Window(
        label=f"hermite{n}",
        kind="hermite",
        time_eval=time_eval,
        freq_eval=freq_eval,
        parity=Parity.EVEN if n % 2 == 0 else Parity.ODD,
        envelope=Envelope(amplitude=amplitude, rate=beta),
    )


def dilate(w: Window, b: float) -> Window:
    """L2-normalised dilation: (D_b w)(t) = b^(-1/2) * w(t/b), b > 0.

    The transform picks up the reciprocal scale: (D_b w)^hat(xi)
    = b^(1/2) * what(b*xi).  Parity is preserved.
    """
    b = float(b)
    if not (b > 0 and math.isfinite(b)):
        raise PreconditionError(f"dilation scale must be positive and finite, got {b!r}")
    if b == 1.0:
        return w

    base_time = w.time_eval
    base_freq = w.freq_eval
    inv_sqrt = b**-0.5
    sqrt_b = b**0.5

    def time_eval(t):
        t = np.asarray(t, dtype=float)
        return inv_sqrt * base_time(t / b)

    def freq_eval(xi):
        xi = np.asarray(xi, dtype=float)
        return sqrt_b * base_freq(b * xi)

    env = None
    if w.envelope is not None:
        # pad a hair: rescaled exponents travel a different float path than
        # the bound's, and a tight envelope must survive that ulp noise
        env = Envelope(
            amplitude=sqrt_b * w.envelope.amplitude * _ENVELOPE_PAD,
            rate=w.envelope.rate * b * b,
        )

    return Window(
        label=f"dilate({w.label},b={b!r})",
        kind="dilated",
        time_eval=time_eval,
        freq_eval=freq_eval,
        parity=w.parity,
        envelope=env,
    )


def _quadrature_freq_eval(t_grid: np.ndarray, values: np.ndarray) -> Callable:
    """Trapezoid quadrature of the transform integral over the sample grid."""
    weights = np.full(t_grid.shape, t_grid[1] - t_grid[0], dtype=float)
    weights[0] *= 0.5
    weights[-1] *= 0.5
    weighted = values * weights

    def freq_eval(xi):
        xi = np.asarray(xi, dtype=float)
        scalar = xi.ndim == 0
        pts = np.atleast_1d(xi)
        kernel = np.exp(-2j * math.pi * np.outer(pts, t_grid))
        out = kernel @ weighted
        return out[0] if scalar else out

    return freq_eval


def chirp_window(w: Window, q: float) -> Window:
    """Multiply a window by the unit chirp exp(i*pi*q*t^2).

    The chirp factor is even, so parity is preserved.  No decay envelope is
    propagated; the transform is evaluated by quadrature on the standard
    grid, and downstream truncation becomes heuristic.
    """
    q = float(q)
    if q == 0.0:
        return w
    base_time = w.time_eval

    def time_eval(t):
        t = np.asarray(t, dtype=float)
        return np.exp(1j * math.pi * q * t * t) * base_time(t)

    n = int(round(2 * GRID_HALF_WIDTH / GRID_SPACING)) + 1
    t_grid = np.linspace(-GRID_HALF_WIDTH, GRID_HALF_WIDTH, n)
    freq_eval = _quadrature_freq_eval(t_grid, np.asarray(time_eval(t_grid), dtype=complex))

    return Window(
        label=f"chirp({w.label},q={q!r})",
        kind="chirped",
        time_eval=time_eval,
        freq_eval=freq_eval,
        parity=w.parity,
        envelope=None,
    )


def combine(terms: Sequence[tuple[float, Window]], label: str | None = None) -> Window:
    """Finite linear combination sum_i c_i * w_i of windows.

    Envelopes add in absolute value (with the weakest rate) when every
    component carries one; otherwise the combination has no envelope.
    """
    terms = [(float(c), w) for c, w in terms]
    if not terms:
        raise PreconditionError("combine needs at least one (coefficient, window) term")

    def time_eval(t):
        t = np.asarray(t, dtype=float)
        acc = terms[0][0] * terms[0][1].time_eval(t)
        for c, w in terms[1:]:
            acc = acc + c * w.time_eval(t)
        return acc

    def freq_eval(xi):
        xi = np.asarray(xi, dtype=float)
        acc = terms[0][0] * terms[0][1].freq_eval(xi)
        for c, w in terms[1:]:
            acc = acc + c * w.freq_eval(xi)
        return acc

    env = None
    if all(w.envelope is not None for _, w in terms):
        env = Envelope(
            amplitude=math.fsum(abs(c) * w.envelope.amplitude for c, w in terms) * _ENVELOPE_PAD,
            rate=min(w.envelope.rate for _, w in terms),
        )

    if label is None:
        label = " + ".join(f"{c!r}*{w.label}" for c, w in terms)
    out = Window(
        label=label,
        kind="combo",
        time_eval=time_eval,
        freq_eval=freq_eval,
        parity=Parity.UNKNOWN,
        envelope=env,
    )
    return replace(out, parity=classify_parity(out))


def classify_parity(w: Window) -> Parity:
    """Classify parity from a 201-point probe grid on [-5, 5].

    Even or odd requires the corresponding symmetry residual to stay below
    PARITY_TOL relative to the largest probe magnitude.
    """
    vals = np.asarray(w.time_eval(_PARITY_PROBES), dtype=complex)
    flipped = vals[::-1]
    scale = float(np.max(np.abs(vals)))
    if scale == 0.0:
        return Parity.EVEN
    even_res = float(np.max(np.abs(vals - flipped))) / scale
    odd_res = float(np.max(np.abs(vals + flipped))) / scale
    if even_res < PARITY_TOL:
        return Parity.EVEN
    if odd_res < PARITY_TOL:
        return Parity.ODD
    return Parity.NEITHER


def envelope_violation(w: Window, n_probes: int = 101) -> float:
    """Worst violation of the declared envelope on probes with |xi| in [1, 10].

    Returns max(|ghat(xi)| - bound(xi)) over the probe grid; nonpositive
    values mean the envelope held everywhere it was checked.
    """
    if w.envelope is None:
        raise PreconditionError(f"window {w.label!r} declares no envelope")
    xi = np.linspace(1.0, 10.0, n_probes)
    xi = np.concatenate([-xi[::-1], xi])
    mag = np.abs(np.asarray(w.freq_eval(xi), dtype=complex))
    return float(np.max(mag - w.envelope.bound(xi)))


def sampled_window(
    t: np.ndarray,
    values: np.ndarray,
    label: str = "sampled",
    envelope: Envelope | None = None,
) -> Window:
    """Window backed by samples on a uniform symmetric grid.

    The grid spacing must be at most 0.01 and the grid symmetric about 0.
    Evaluation interpolates linearly inside the grid and is 0 outside; the
    transform is a trapezoid quadrature over the samples.  A declared
    envelope is checked on a probe grid before being accepted.
    """
    t = np.asarray(t, dtype=float)
    values = np.asarray(values, dtype=complex)
    if t.ndim != 1 or t.shape != values.shape or t.size < 2:
        raise PreconditionError("samples must be two matching 1-d arrays with at least 2 points")
    steps = np.diff(t)
    h = float(steps[0])
    if h <= 0 or not np.allclose(steps, h, rtol=0, atol=1e-9 * max(1.0, abs(h))):
        raise PreconditionError("sample grid must be strictly increasing and uniform")
    if h > 0.01 + 1e-12:
        raise PreconditionError(f"sample grid spacing {h} exceeds the 0.01 limit")
    if abs(t[0] + t[-1]) > 1e-9:
        raise PreconditionError("sample grid must be symmetric about 0")
    if not np.all(np.isfinite(values.view(float))):
        raise PreconditionError("sample values must be finite")

    def time_eval(x):
        x = np.asarray(x, dtype=float)
        return np.interp(x, t, values, left=0.0 + 0.0j, right=0.0 + 0.0j)

    freq_eval = _quadrature_freq_eval(t, values)

    out = Window(
        label=label,
        kind="sampled",
        time_eval=time_eval,
        freq_eval=freq_eval,
        parity=Parity.UNKNOWN,
        envelope=envelope,
    )
    out = replace(out, parity=classify_parity(out))
    if envelope is not None:
        violation = envelope_violation(out)
        if violation > 1e-12:
            raise PreconditionError(
                f"declared envelope violated by {violation:.3e} on the probe grid"
            )
    return out


def sample_grid(half_width: float = GRID_HALF_WIDTH, spacing: float = GRID_SPACING) -> np.ndarray:
    """Uniform symmetric grid [-half_width, half_width] including 0."""
    n = int(round(2 * half_width / spacing))
    if n % 2 == 1:
        n += 1
    return np.linspace(-half_width, half_width, n + 1)


CSV_HEADER = ("t", "re", "im")


def write_sampled_csv(path, t: np.ndarray, values: np.ndarray) -> None:
    """Write samples in the interchange format: header t,re,im."""
    values = np.asarray(values, dtype=complex)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for ti, vi in zip(np.asarray(t, dtype=float), values):
            writer.writerow([repr(float(ti)), repr(float(vi.real)), repr(float(vi.imag))])


def read_sampled_csv(path) -> tuple[np.ndarray, np.ndarray]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(h.strip() for h in header) != CSV_HEADER:
            raise PreconditionError(f"expected CSV header {','.join(CSV_HEADER)!r} in {path}")
        rows = [(float(r[0]), float(r[1]), float(r[2])) for r in reader if r]
    if not rows:
        raise PreconditionError(f"no samples in {path}")
    t = np.array([r[0] for r in rows])
    values = np.array([complex(r[1], r[2]) for r in rows])
    return t, values


def window_from_csv(path, label: str | None = None) -> Window:
    t, values = read_sampled_csv(path)
    return sampled_window(t, values, label=label or f"file:{path}")
