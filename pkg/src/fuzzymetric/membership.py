"""Membership functions ``t -> M(x, y, t)`` for a single pair of points.

Three backends share one interface:

* :class:`PiecewiseMembership` - constant or affine pieces on half-open
  intervals ``(a, b]``; left-continuity is built into that convention.
* :class:`RationalMembership` - ``scale * k t^n / (k t^n + m c)`` with an
  optional cap above which the value is 1.
* :class:`BlackBoxMembership` - any callable declared monotone by its
  supplier; level sets are found by bracketed bisection.

The exact backends answer every level query in closed form, so values such
as breakpoints at 1/4 or 3/4 come back bit-for-bit.
"""

from __future__ import annotations

import bisect
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .axioms import AxiomReport, GridConfig

DEFAULT_CAP = 1e12
DEFAULT_TOL = 1e-9
DEFAULT_LAMBDA_STAR = 1.0 - 1e-6
_MAX_BISECT = 400


class MembershipError(ValueError):
    """Malformed membership description."""


class LevelUnreachable(ArithmeticError):
    """The requested level cut lies beyond the search cap."""


class PlateauUndecidable(TypeError):
    """Exact level-set structure was requested from a black-box membership."""


def _check_level(lam) -> float:
    lam = float(lam)
    if not 0.0 < lam < 1.0:
        raise ValueError(f"level must lie in (0, 1), got {lam}")
    return lam


@dataclass(frozen=True)
class Plateau:
    """Solution set ``{t : f(t) = lam}``; always an interval since f is monotone."""

    kind: str  # "empty" | "singleton" | "interval"
    lo: float = math.nan
    hi: float = math.nan
    lo_closed: bool = False
    hi_closed: bool = False

    def __post_init__(self):
        if self.kind == "interval" and not self.lo < self.hi:
            raise ValueError("interval plateau needs lo < hi")
        if self.kind == "singleton" and self.lo != self.hi:
            raise ValueError("singleton plateau needs lo == hi")
        if self.kind not in ("empty", "singleton", "interval"):
            raise ValueError(f"bad plateau kind {self.kind!r}")

    @classmethod
    def empty(cls) -> "Plateau":
        return cls("empty")

    @classmethod
    def singleton(cls, t: float) -> "Plateau":
        return cls("singleton", t, t, True, True)

    @property
    def at_most_one(self) -> bool:
        return self.kind != "interval"

    def contains(self, t: float) -> bool:
        if self.kind == "empty":
            return False
        above = t > self.lo or (self.lo_closed and t == self.lo)
        below = t < self.hi or (self.hi_closed and t == self.hi)
        return above and below

    def __str__(self):
        if self.kind == "empty":
            return "{}"
        if self.kind == "singleton":
            return f"{{{self.lo!r}}}"
        return f"{'[' if self.lo_closed else '('}{self.lo!r}, {self.hi!r}{']' if self.hi_closed else ')'}"


@dataclass(frozen=True)
class OneThreshold:
    """Where a membership first reaches 1.

    ``t_star`` is ``inf{t : f(t) = 1}``; ``attained_at_threshold`` says
    whether ``f(t_star) == 1`` itself or only values strictly above it.
    """

    finite: bool
    t_star: float = math.inf
    attained_at_threshold: bool = False


class Membership(ABC):
    """Nondecreasing, left-continuous ``f : R -> [0, 1]`` with ``f = 0`` on ``(-inf, 0]``."""

    exact: bool = True

    def __call__(self, t: float) -> float:
        return self.eval(t)

    @abstractmethod
    def eval(self, t: float) -> float: ...

    def eval_array(self, ts) -> np.ndarray:
        ts = np.asarray(ts, dtype=float)
        return np.vectorize(self.eval, otypes=[float])(ts)

    @abstractmethod
    def level_inf(self, lam: float) -> float:
        """``inf{t : f(t) > lam}`` for ``0 < lam < 1``."""

    @abstractmethod
    def level_sup(self, lam: float) -> float:
        """``sup{t : f(t) < lam}`` for ``0 < lam < 1``."""

    @abstractmethod
    def plateau(self, lam: float) -> Plateau: ...

    @abstractmethod
    def one_threshold(self) -> OneThreshold: ...

    @abstractmethod
    def upper_limit(self, lam_star: float = DEFAULT_LAMBDA_STAR) -> float:
        """Limit of :meth:`level_inf` as the level rises to 1 (``inf`` if it diverges)."""

    @abstractmethod
    def lower_limit(self, lam_star: float = DEFAULT_LAMBDA_STAR) -> float:
        """Limit of :meth:`level_sup` as the level rises to 1 (``inf`` if it diverges)."""

    @abstractmethod
    def right_limit_at_zero(self) -> float: ...

    @abstractmethod
    def is_constant_one(self) -> bool:
        """True when ``f = 1`` on all of ``(0, inf)``."""

    @abstractmethod
    def rescale(self, factor: float) -> "Membership":
        """The membership ``t -> f(t / factor)``."""

    @property
    def breakpoints(self) -> tuple[float, ...]:
        """Positive abscissae where the closed form changes shape."""
        return ()

    def to_spec(self) -> dict:
        raise MembershipError(f"{type(self).__name__} has no serialisable spec")

    def verify(self, is_diagonal: bool = False, grid: GridConfig | None = None) -> AxiomReport:
        """Check the per-pair conditions KM1, KM2, KM5 and (off-diagonal) SDP."""
        if self.exact:
            return _verify_exact(self, is_diagonal)
        return _verify_sampled(self, is_diagonal, grid or GridConfig())


# ---------------------------------------------------------------- piecewise


def _affine_root(a: float, b: float, s: float, e: float, lam: float) -> float:
    # point in [a, b] where s + (e - s)(t - a)/(b - a) == lam, e > s
    if lam == e:
        return b
    t = a + (lam - s) * (b - a) / (e - s)
    return min(max(t, a), b)


@dataclass(frozen=True)
class PiecewiseMembership(Membership):
    """Piecewise constant/affine membership.

    Piece ``i`` lives on ``(knots[i], knots[i+1]]`` and runs affinely from
    ``starts[i]`` (the right-limit at its left end, not attained) to
    ``ends[i]`` (attained at its right end). ``knots[0]`` is always 0 and
    beyond the last knot the value is ``tail``.
    """

    knots: tuple[float, ...]
    starts: tuple[float, ...]
    ends: tuple[float, ...]
    tail: float = 1.0

    def __post_init__(self):
        bps = tuple(float(b) for b in self.knots)
        starts = tuple(float(v) for v in self.starts)
        ends = tuple(float(v) for v in self.ends)
        object.__setattr__(self, "knots", bps)
        object.__setattr__(self, "starts", starts)
        object.__setattr__(self, "ends", ends)
        object.__setattr__(self, "tail", float(self.tail))

        if not bps or bps[0] != 0.0:
            raise MembershipError("breakpoints must start at 0")
        if any(not math.isfinite(b) for b in bps):
            raise MembershipError("breakpoints must be finite")
        if any(b1 >= b2 for b1, b2 in zip(bps, bps[1:])):
            raise MembershipError(f"breakpoints must be strictly increasing: {bps}")
        if len(starts) != len(bps) - 1 or len(ends) != len(bps) - 1:
            raise MembershipError("need one (start, end) value pair per piece")
        prev = 0.0
        for i, (s, e) in enumerate(zip(starts, ends)):
            if not (0.0 <= s <= 1.0 and 0.0 <= e <= 1.0):
                raise MembershipError(f"piece {i} has a value outside [0, 1]")
            if s > e or s < prev:
                raise MembershipError(f"piece {i} breaks monotonicity")
            prev = e
        if not 0.0 <= self.tail <= 1.0 or self.tail < prev:
            raise MembershipError("tail value breaks monotonicity or range")
        if self.tail != 1.0:
            raise MembershipError("tail value must be 1 (limit at infinity)")

    @classmethod
    def from_pieces(cls, breakpoints: Sequence[float], values: Sequence, tail: float = 1.0):
        """Build from breakpoints and per-piece values.

        Each value is either a scalar (constant piece) or a ``(start, end)``
        pair for an affine piece.
        """
        starts, ends = [], []
        for v in values:
            if isinstance(v, (int, float, np.floating, np.integer)):
                starts.append(v)
                ends.append(v)
            else:
                s, e = v
                starts.append(s)
                ends.append(e)
        return cls(tuple(breakpoints), tuple(starts), tuple(ends), tail)

    @classmethod
    def step(cls, at: float) -> "PiecewiseMembership":
        """0 on ``(-inf, at]``, 1 on ``(at, inf)``."""
        at = float(at)
        if at <= 0:
            raise MembershipError("step location must be positive")
        return cls((0.0, at), (0.0,), (0.0,), 1.0)

    @classmethod
    def constant_one(cls) -> "PiecewiseMembership":
        return cls((0.0,), (), (), 1.0)

    def _pieces(self):
        bps = self.knots
        return zip(bps, bps[1:], self.starts, self.ends)

    @property
    def breakpoints(self):
        return self.knots[1:]

    def eval(self, t):
        t = float(t)
        if t <= 0.0:
            return 0.0
        bps = self.knots
        i = bisect.bisect_left(bps, t)
        if i == len(bps):
            return self.tail
        a, b = bps[i - 1], bps[i]
        s, e = self.starts[i - 1], self.ends[i - 1]
        if s == e or t == b:
            return e
        return s + (e - s) * (t - a) / (b - a)

    def eval_array(self, ts):
        ts = np.asarray(ts, dtype=float)
        bps = np.asarray(self.knots)
        out = np.zeros(ts.shape)
        if len(bps) == 1:
            out[ts > 0] = self.tail
            return out
        idx = np.searchsorted(bps, ts, side="left")
        inner = (ts > 0) & (idx < len(bps))
        j = idx[inner] - 1
        a, b = bps[j], bps[j + 1]
        s, e = np.asarray(self.starts)[j], np.asarray(self.ends)[j]
        t = ts[inner]
        with np.errstate(invalid="ignore", divide="ignore"):
            val = s + (e - s) * (t - a) / (b - a)
        val = np.where((s == e) | (t == b), e, val)
        out[inner] = val
        out[(ts > 0) & (idx == len(bps))] = self.tail
        return out

    def level_inf(self, lam):
        lam = _check_level(lam)
        for a, b, s, e in self._pieces():
            if s > lam:
                return a
            if e > lam:
                return _affine_root(a, b, s, e, lam)
        return self.knots[-1]

    def level_sup(self, lam):
        lam = _check_level(lam)
        for a, b, s, e in self._pieces():
            if s >= lam:
                return a
            if e >= lam:
                return _affine_root(a, b, s, e, lam)
        return self.knots[-1]

    def plateau(self, lam):
        lam = _check_level(lam)
        segments = []  # (lo, lo_closed, hi, hi_closed)
        for a, b, s, e in self._pieces():
            if s == e == lam:
                segments.append((a, False, b, True))
            elif s < lam <= e:
                t = _affine_root(a, b, s, e, lam)
                segments.append((t, True, t, True))
        if self.tail == lam:  # unreachable while tail == 1, kept for completeness
            segments.append((self.knots[-1], False, math.inf, False))
        if not segments:
            return Plateau.empty()
        merged = [list(segments[0])]
        for lo, lo_c, hi, hi_c in segments[1:]:
            last = merged[-1]
            if lo == last[2] and (last[3] or lo_c):
                last[2], last[3] = hi, hi_c
            else:
                merged.append([lo, lo_c, hi, hi_c])
        if len(merged) != 1:
            raise AssertionError(f"level set of a monotone function split in pieces: {merged}")
        lo, lo_c, hi, hi_c = merged[0]
        if lo == hi:
            return Plateau.singleton(lo)
        return Plateau("interval", lo, hi, lo_c, hi_c)

    def one_threshold(self):
        for a, b, s, e in self._pieces():
            if s >= 1.0:
                return OneThreshold(True, a, False)
            if e >= 1.0:
                return OneThreshold(True, b, True)
        return OneThreshold(True, self.knots[-1], False)

    def upper_limit(self, lam_star=DEFAULT_LAMBDA_STAR):
        # level_inf with lam -> 1: "s > lam" eventually iff s == 1, likewise for e
        for a, b, s, e in self._pieces():
            if s >= 1.0:
                return a
            if e >= 1.0:
                return b
        return self.knots[-1]

    def lower_limit(self, lam_star=DEFAULT_LAMBDA_STAR):
        # sup{t : f(t) < 1}, scanning from the top piece downwards
        for a, b, s, e in reversed(list(self._pieces())):
            if s < 1.0:
                return b
        return 0.0

    def right_limit_at_zero(self):
        return self.starts[0] if self.starts else self.tail

    def is_constant_one(self):
        return all(s >= 1.0 for s in self.starts)

    def rescale(self, factor):
        factor = float(factor)
        if not factor > 0:
            raise MembershipError("rescale factor must be positive")
        bps = tuple(b * factor for b in self.knots)
        return PiecewiseMembership(bps, self.starts, self.ends, self.tail)

    def to_spec(self):
        values = [s if s == e else [s, e] for s, e in zip(self.starts, self.ends)]
        return {"type": "piecewise", "breakpoints": list(self.knots),
                "values": values, "tail": self.tail}


# ----------------------------------------------------------------- rational


@dataclass(frozen=True)
class RationalMembership(Membership):
    """``scale * k t^n / (k t^n + m c)`` for ``t > 0``, 1 above ``cap`` if given.

    At ``t == cap`` the rational value applies, keeping the function
    left-continuous. Without a cap the tail condition forces ``scale == 1``.
    """

    m: float = 1.0
    n: float = 1.0
    k: float = 1.0
    c: float = 1.0
    scale: float = 1.0
    cap: Optional[float] = None

    def __post_init__(self):
        for name in ("m", "n", "k", "c", "scale"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if self.cap is not None:
            object.__setattr__(self, "cap", float(self.cap))
        if not (self.m > 0 and self.n > 0 and self.k > 0):
            raise MembershipError("m, n, k must be positive")
        if not (self.c >= 0 and math.isfinite(self.c)):
            raise MembershipError("c must be a finite non-negative number")
        if not 0.0 < self.scale <= 1.0:
            raise MembershipError("scale must lie in (0, 1]")
        if self.cap is None:
            if self.scale != 1.0:
                raise MembershipError("an uncapped profile needs scale == 1 to tend to 1")
        elif not (self.cap > 0 and math.isfinite(self.cap)):
            raise MembershipError("cap must be positive and finite")

    def _rational(self, t: float) -> float:
        if self.c == 0.0:
            return self.scale
        u = self.k * t if self.n == 1.0 else self.k * t ** self.n
        return self.scale * u / (u + self.m * self.c)

    def eval(self, t):
        t = float(t)
        if t <= 0.0:
            return 0.0
        if self.cap is not None and t > self.cap:
            return 1.0
        return self._rational(t)

    def eval_array(self, ts):
        ts = np.asarray(ts, dtype=float)
        out = np.zeros(ts.shape)
        pos = ts > 0
        t = ts[pos]
        if self.c == 0.0:
            val = np.full(t.shape, self.scale)
        else:
            u = self.k * t if self.n == 1.0 else self.k * t ** self.n
            val = self.scale * u / (u + self.m * self.c)
        if self.cap is not None:
            val = np.where(t > self.cap, 1.0, val)
        out[pos] = val
        return out

    @property
    def breakpoints(self):
        return () if self.cap is None else (self.cap,)

    @property
    def top(self) -> float:
        """Largest value on the rational branch (its supremum when uncapped)."""
        return self._rational(self.cap) if self.cap is not None else self.scale

    def _root(self, lam: float) -> float:
        # solves scale*u/(u + m c) = lam for u = k t^n; needs lam < scale
        q = lam * self.m * self.c / ((self.scale - lam) * self.k)
        t = q if self.n == 1.0 else q ** (1.0 / self.n)
        return t if self.cap is None else min(t, self.cap)

    def level_inf(self, lam):
        lam = _check_level(lam)
        if self.c == 0.0:
            return 0.0 if self.scale > lam else self.cap
        if self.cap is not None and lam >= self.top:
            return self.cap
        return self._root(lam)

    def level_sup(self, lam):
        lam = _check_level(lam)
        if self.c == 0.0:
            return self.cap if self.scale < lam else 0.0
        if self.cap is not None and lam >= self.top:
            return self.cap
        return self._root(lam)

    def plateau(self, lam):
        lam = _check_level(lam)
        if self.c == 0.0:
            if self.scale != lam:
                return Plateau.empty()
            return Plateau("interval", 0.0, self.cap, False, True)
        if self.cap is not None:
            top = self.top
            if lam > top:
                return Plateau.empty()
            if lam == top:
                return Plateau.singleton(self.cap)
        return Plateau.singleton(self._root(lam))

    def one_threshold(self):
        if self.is_constant_one():
            return OneThreshold(True, 0.0, False)
        if self.cap is None:
            return OneThreshold(False)
        return OneThreshold(True, self.cap, self.top >= 1.0)

    def upper_limit(self, lam_star=DEFAULT_LAMBDA_STAR):
        if self.is_constant_one():
            return 0.0
        return math.inf if self.cap is None else self.cap

    def lower_limit(self, lam_star=DEFAULT_LAMBDA_STAR):
        # sup{t : f(t) < 1}: the rational branch stays below 1 whenever c > 0
        if self.c == 0.0 and self.scale >= 1.0:
            return 0.0
        return self.cap if self.cap is not None else math.inf

    def right_limit_at_zero(self):
        return self.scale if self.c == 0.0 else 0.0

    def is_constant_one(self):
        return self.c == 0.0 and self.scale == 1.0

    def rescale(self, factor):
        factor = float(factor)
        if not factor > 0:
            raise MembershipError("rescale factor must be positive")
        c = self.c * (factor if self.n == 1.0 else factor ** self.n)
        cap = None if self.cap is None else self.cap * factor
        return RationalMembership(self.m, self.n, self.k, c, self.scale, cap)

    def to_spec(self):
        spec = {"type": "rational", "m": self.m, "n": self.n, "k": self.k, "c": self.c}
        if self.scale != 1.0:
            spec["scale"] = self.scale
        if self.cap is not None:
            spec["cap"] = self.cap
        return spec


# ---------------------------------------------------------------- black box


def bisect_predicate(pred: Callable[[float], bool], lo: float, hi: float,
                     tol: float = 0.0) -> tuple[float, float]:
    """Shrink ``[lo, hi]`` around the switch point of a monotone predicate.

    Requires ``pred(lo)`` false and ``pred(hi)`` true. Stops once the bracket
    is narrower than ``tol`` (relative above 1) or the floats are adjacent.
    """
    for _ in range(_MAX_BISECT):
        if hi - lo <= tol * max(1.0, abs(hi)):
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return lo, hi


@dataclass(frozen=True)
class BlackBoxMembership(Membership):
    """Membership given only by an evaluator.

    Monotonicity is taken on trust; :meth:`verify` samples it. Level queries
    bracket from ``[0, 1]`` by doubling up to ``cap`` and then bisect to
    ``tol``.
    """

    func: Callable[[float], float]
    tol: float = DEFAULT_TOL
    cap: float = DEFAULT_CAP
    fd_tol: float = 0.0
    name: str = field(default="black-box", compare=False)

    exact = False

    def eval(self, t):
        return float(self.func(float(t)))

    def _bracket(self, pred: Callable[[float], bool]) -> tuple[float, float]:
        if pred(0.0):
            return 0.0, 0.0
        lo, hi = 0.0, 1.0
        while not pred(hi):
            lo, hi = hi, hi * 2.0
            if hi > self.cap:
                if pred(self.cap):
                    hi = self.cap
                    break
                raise LevelUnreachable(f"level not reached below cap {self.cap:g}")
        return lo, hi

    def level_inf(self, lam):
        lam = _check_level(lam)
        pred = lambda t: self.eval(t) > lam  # noqa: E731
        lo, hi = self._bracket(pred)
        if hi == 0.0:
            return 0.0
        return bisect_predicate(pred, lo, hi, self.tol)[1]

    def level_sup(self, lam):
        lam = _check_level(lam)
        pred = lambda t: self.eval(t) >= lam  # noqa: E731
        lo, hi = self._bracket(pred)
        if hi == 0.0:
            return 0.0
        return bisect_predicate(pred, lo, hi, self.tol)[0]

    def plateau(self, lam):
        raise PlateauUndecidable("level sets of a black-box membership are not decidable")

    def one_threshold(self):
        threshold = 1.0 - self.fd_tol
        pred = lambda t: self.eval(t) >= threshold  # noqa: E731
        try:
            lo, hi = self._bracket(pred)
        except LevelUnreachable:
            return OneThreshold(False)
        if hi > 0.0:
            hi = bisect_predicate(pred, lo, hi, self.tol)[1]
        return OneThreshold(True, hi, self.eval(hi) >= 1.0)

    def upper_limit(self, lam_star=DEFAULT_LAMBDA_STAR):
        try:
            return self.level_inf(lam_star)
        except LevelUnreachable:
            return math.inf

    def lower_limit(self, lam_star=DEFAULT_LAMBDA_STAR):
        try:
            return self.level_sup(lam_star)
        except LevelUnreachable:
            return math.inf

    def right_limit_at_zero(self):
        return self.eval(1e-12)

    def is_constant_one(self):
        return all(self.eval(t) >= 1.0 for t in np.geomspace(1e-9, 1e9, 37))

    def rescale(self, factor):
        factor = float(factor)
        if not factor > 0:
            raise MembershipError("rescale factor must be positive")
        f = self.func
        return BlackBoxMembership(lambda t: f(t / factor), self.tol, self.cap, self.fd_tol,
                                  f"{self.name}(t/{factor:g})")


# ------------------------------------------------------------- verification


def _verify_exact(f: Membership, is_diagonal: bool) -> AxiomReport:
    rep = AxiomReport()
    rep.add("KM1", True, detail="value 0 on (-inf, 0] by construction")
    rep.add("KM5", True, detail="nondecreasing, left-continuous on (a, b] pieces, tail 1")
    const_one = f.is_constant_one()
    if is_diagonal:
        if const_one:
            rep.add("KM2", True, detail="diagonal membership is 1 on (0, inf)")
        else:
            t = f.one_threshold().t_star
            probe = t / 2 if math.isfinite(t) and t > 0 else 1.0
            rep.add("KM2", False, witness=(probe, f.eval(probe)),
                    detail="diagonal membership drops below 1 for some t > 0")
    else:
        if const_one:
            rep.add("KM2", False, witness=(1.0, f.eval(1.0)),
                    detail="distinct points with membership identically 1 on (0, inf)")
        else:
            rep.add("KM2", True, detail="off-diagonal membership not identically 1")
        r0 = f.right_limit_at_zero()
        if r0 == 0.0:
            rep.add("SDP", True, detail="right limit at 0 is 0")
        else:
            probe = min((b for b in f.breakpoints if b > 0), default=1.0) / 2
            probe = min(probe, 1e-9)
            rep.add("SDP", False, witness=(probe, f.eval(probe)),
                    detail=f"right limit at 0 is {r0!r}, not 0")
    return rep


def _sample_grid(f: Membership, grid: GridConfig) -> np.ndarray:
    n = grid.t_samples
    ts = np.concatenate([np.geomspace(1e-6, 1e6, n), np.linspace(0.0, 10.0, n + 1)[1:]])
    if grid.include_breakpoints:
        ts = np.concatenate([ts, np.asarray(f.breakpoints, dtype=float)])
    rng = np.random.default_rng(grid.seed)
    ts = np.concatenate([ts, rng.uniform(0.0, 10.0, n)])
    return np.unique(ts[ts > 0])


def _verify_sampled(f: Membership, is_diagonal: bool, grid: GridConfig,
                    jump_tol: float = 1e-6) -> AxiomReport:
    rep = AxiomReport()
    ts = _sample_grid(f, grid)
    res = f"grid(n={len(ts)})"
    vals = np.array([f.eval(t) for t in ts])

    neg = [t for t in (-1.0, -1e-9, 0.0) if f.eval(t) != 0.0]
    if neg:
        rep.add("KM1", False, witness=(neg[0], f.eval(neg[0])), detail="nonzero for t <= 0",
                resolution=res)
    else:
        rep.add("KM1", True, detail="zero at sampled t <= 0", resolution=res)

    problems = []
    out_of_range = np.flatnonzero((vals < 0) | (vals > 1))
    if out_of_range.size:
        i = out_of_range[0]
        problems.append(((ts[i], vals[i]), "value outside [0, 1]"))
    drops = np.flatnonzero(np.diff(vals) < 0)
    if drops.size:
        i = drops[0]
        problems.append(((ts[i], ts[i + 1]), "decreases between samples"))
    for t, v in zip(ts, vals):
        left = f.eval(t - 1e-9 * max(1.0, t))
        if abs(v - left) > jump_tol:
            problems.append(((t, left, v), "jump when approached from the left"))
            break
    far = min(f.cap if hasattr(f, "cap") else DEFAULT_CAP, DEFAULT_CAP)
    if f.eval(far) < 1.0 - jump_tol:
        problems.append(((far, f.eval(far)), "does not tend to 1"))
    if problems:
        witness, why = problems[0]
        rep.add("KM5", False, witness=witness, detail=why, resolution=res)
    else:
        rep.add("KM5", True, detail="monotone, left-continuous, tail 1 on samples", resolution=res)

    all_one = bool(np.all(vals >= 1.0))
    if is_diagonal:
        if all_one:
            rep.add("KM2", True, detail="diagonal samples all 1", resolution=res)
        else:
            i = int(np.argmin(vals))
            rep.add("KM2", False, witness=(ts[i], vals[i]), detail="diagonal below 1",
                    resolution=res)
    else:
        if all_one:
            rep.add("KM2", False, witness=(ts[0], vals[0]),
                    detail="distinct points sampled identically 1", resolution=res)
        else:
            rep.add("KM2", True, detail="off-diagonal not identically 1", resolution=res)
        r0 = f.right_limit_at_zero()
        if r0 <= jump_tol:
            rep.add("SDP", True, detail="value near 0+ vanishes", resolution=res)
        else:
            rep.add("SDP", False, witness=(1e-12, r0), detail=f"value {r0!r} near 0+",
                    resolution=res)
    return rep


# ------------------------------------------------------------------ factory


def build_membership(spec) -> Membership:
    """Construct a membership from a backend description.

    Accepted forms::

        {"type": "piecewise", "breakpoints": [0, .25, .75, 1],
         "values": [[0, .25], .5, [.75, 1]], "tail": 1}
        {"type": "step", "at": 5.0}
        {"type": "rational", "m": 1, "n": 1, "k": 1, "c": 1, "scale": 1, "cap": 2}
        {"type": "blackbox", "func": callable, "tol": 1e-9, "cap": 1e12}

    A :class:`Membership` instance is returned unchanged.
    """
    if isinstance(spec, Membership):
        return spec
    if not isinstance(spec, dict) or "type" not in spec:
        raise MembershipError(f"membership spec must be a mapping with a 'type': {spec!r}")
    kind = spec["type"]
    extra = set(spec) - {"type"}
    try:
        if kind == "piecewise":
            _only(extra, {"breakpoints", "values", "tail"})
            return PiecewiseMembership.from_pieces(spec["breakpoints"], spec["values"],
                                                   spec.get("tail", 1.0))
        if kind == "step":
            _only(extra, {"at"})
            return PiecewiseMembership.step(spec["at"])
        if kind == "rational":
            _only(extra, {"m", "n", "k", "c", "scale", "cap"})
            return RationalMembership(spec.get("m", 1.0), spec.get("n", 1.0), spec.get("k", 1.0),
                                      spec["c"], spec.get("scale", 1.0), spec.get("cap"))
        if kind == "blackbox":
            _only(extra, {"func", "tol", "cap", "fd_tol"})
            if not callable(spec.get("func")):
                raise MembershipError("blackbox spec needs a callable 'func'")
            return BlackBoxMembership(spec["func"], spec.get("tol", DEFAULT_TOL),
                                      spec.get("cap", DEFAULT_CAP), spec.get("fd_tol", 0.0))
    except KeyError as exc:
        raise MembershipError(f"{kind} spec is missing {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, MembershipError):
            raise
        raise MembershipError(f"bad {kind} spec: {exc}") from None
    raise MembershipError(f"unknown membership type {kind!r}")


def _only(keys: set, allowed: set) -> None:
    unknown = keys - allowed
    if unknown:
        raise MembershipError(f"unexpected keys {sorted(unknown)}")


CONSTANT_ONE = PiecewiseMembership.constant_one()


def verify_profile(f: Membership, is_diagonal: bool = False,
                   grid: GridConfig | None = None) -> AxiomReport:
    """KM1, KM2, KM5 and (off the diagonal) SDP for one membership."""
    return build_membership(f).verify(is_diagonal=is_diagonal, grid=grid)
