"""Continuous-game playthrough engine.

Continuous time is realized on a uniform dt grid with the escaper moving
first within each step: the escaper's position at (k+1)dt is computed from
the pursuer prefix [0, k*dt], then the pursuer's position at (k+1)dt from the
escaper prefix [0, (k+1)dt].  This staggered information flow is what makes
the playthrough unique, and the obliviate transform below makes any strategy
explicitly delay-tolerant.

Strategies are stateful objects queried monotonically in time; the engine
resets them at the start of every playthrough, so a strategy instance can be
reused across runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DomainViolation, SpeedViolation
from .geometry import MetricContext, PursuerModel

# ---------------------------------------------------------------------------
# domains
# ---------------------------------------------------------------------------


class DiskDomain:
    """Unit disk escaper domain; pursuer on the unit circle (moat)."""

    name = "disk"

    def escaper_contains(self, p, tol):
        return np.hypot(*p) <= 1.0 + tol

    def pursuer_contains(self, p, tol):
        return abs(np.hypot(*p) - 1.0) <= tol

    def on_exit(self, p, tol):
        return abs(np.hypot(*p) - 1.0) <= tol

    def escaper_distance(self, p, q):
        return float(np.hypot(*(np.subtract(q, p))))

    def pursuer_distance(self, p, q):
        a = math.atan2(p[1], p[0])
        b = math.atan2(q[1], q[0])
        d = abs(a - b) % (2.0 * math.pi)
        return min(d, 2.0 * math.pi - d)

    def scale(self):
        return 1.0


class HalfplaneDomain:
    """Halfplane game frame: boundary through the origin at angle theta.

    The escaper domain is the side containing (1, 0); the pursuer walks the
    boundary line.  theta = pi/2 makes the boundary the y-axis.
    """

    name = "halfplane"

    def __init__(self, theta: float):
        self.theta = float(theta)
        self.direction = np.array([math.cos(self.theta), math.sin(self.theta)])
        self.normal = np.array([math.sin(self.theta), -math.cos(self.theta)])
        if self.normal @ np.array([1.0, 0.0]) < 0:
            self.normal = -self.normal

    def _offset(self, p):
        return float(np.asarray(p, dtype=float) @ self.normal)

    def escaper_contains(self, p, tol):
        return self._offset(p) >= -tol

    def pursuer_contains(self, p, tol):
        return abs(self._offset(p)) <= tol

    def on_exit(self, p, tol):
        return abs(self._offset(p)) <= tol

    def escaper_distance(self, p, q):
        return float(np.hypot(*(np.subtract(q, p))))

    def pursuer_distance(self, p, q):
        sp = float(np.asarray(p, dtype=float) @ self.direction)
        sq = float(np.asarray(q, dtype=float) @ self.direction)
        return abs(sp - sq)

    def scale(self):
        return 1.0


class WedgeDomain:
    """Wedge with apex at the origin, bisector +x, half-angle theta."""

    name = "wedge"

    def __init__(self, half_angle: float):
        self.half_angle = float(half_angle)

    def _boundary_param(self, p):
        # signed arc coordinate along the V-shaped boundary through the apex
        r = float(np.hypot(*p))
        return r if p[1] >= 0 else -r

    def escaper_contains(self, p, tol):
        x, y = float(p[0]), float(p[1])
        return abs(y) <= x * math.tan(self.half_angle) + tol

    def pursuer_contains(self, p, tol):
        x, y = float(p[0]), float(p[1])
        if x < -tol:
            return False
        return abs(abs(y) - x * math.tan(self.half_angle)) <= tol * (1 + x)

    def on_exit(self, p, tol):
        return self.pursuer_contains(p, tol)

    def escaper_distance(self, p, q):
        return float(np.hypot(*(np.subtract(q, p))))

    def pursuer_distance(self, p, q):
        return abs(self._boundary_param(p) - self._boundary_param(q))

    def scale(self):
        return 1.0


class PolygonDomain:
    """Polygon escaper domain backed by a MetricContext."""

    name = "polygon"

    def __init__(self, ctx: MetricContext):
        self.ctx = ctx

    def escaper_contains(self, p, tol):
        return self.ctx.polygon.classify(p) != "outside"

    def pursuer_contains(self, p, tol):
        poly = self.ctx.polygon
        if self.ctx.model is PursuerModel.MOAT:
            return poly.distance_to_boundary(p) <= tol
        return poly.classify(p) != "inside"

    def on_exit(self, p, tol):
        return self.ctx.polygon.distance_to_boundary(p) <= tol

    def escaper_distance(self, p, q):
        return self.ctx.interior_distance(p, q)

    def pursuer_distance(self, p, q):
        return self.ctx.pursuer_distance(p, q)

    def scale(self):
        lo, hi = self.ctx.polygon.bbox
        return float(np.hypot(*(hi - lo)))


# ---------------------------------------------------------------------------
# motion paths
# ---------------------------------------------------------------------------


@dataclass
class MotionPath:
    """Timed piecewise-linear trajectory with a maximum-speed contract."""

    times: np.ndarray
    points: np.ndarray
    max_speed: float
    domain_tag: str  # "escaper" | "pursuer"

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.points = np.asarray(self.points, dtype=float)
        if len(self.times) != len(self.points):
            raise ValueError("times and points must have equal length")
        if len(self.times) and (self.times[0] != 0.0 or np.any(np.diff(self.times) <= 0)):
            raise ValueError("times must strictly increase from 0")

    def __len__(self):
        return len(self.times)

    def position_at(self, t: float) -> np.ndarray:
        """Linear interpolation; clamps beyond the sampled range."""
        ts = self.times
        if t <= ts[0]:
            return self.points[0]
        if t >= ts[-1]:
            return self.points[-1]
        k = int(np.searchsorted(ts, t, side="right") - 1)
        t0, t1 = ts[k], ts[k + 1]
        w = (t - t0) / (t1 - t0)
        return (1 - w) * self.points[k] + w * self.points[k + 1]


class PathView:
    """Read-only growing prefix of a trajectory handed to strategies."""

    __slots__ = ("_times", "_points", "_len")

    def __init__(self, times: np.ndarray, points: np.ndarray, length: int):
        self._times = times
        self._points = points
        self._len = length

    @property
    def times(self) -> np.ndarray:
        return self._times[: self._len]

    @property
    def points(self) -> np.ndarray:
        return self._points[: self._len]

    def __len__(self):
        return self._len

    def position_at(self, t: float) -> np.ndarray:
        ts = self.times
        if self._len == 0:
            raise ValueError("empty prefix")
        if t <= ts[0]:
            return self.points[0]
        if t >= ts[-1]:
            return self.points[-1]
        k = int(np.searchsorted(ts, t, side="right") - 1)
        t0, t1 = ts[k], ts[k + 1]
        w = (t - t0) / (t1 - t0)
        return (1 - w) * self.points[k] + w * self.points[k + 1]


# ---------------------------------------------------------------------------
# strategies
# ---------------------------------------------------------------------------


class Strategy:
    """Callback contract: position(opponent prefix up to time t, t) -> point.

    No-lookahead: the output at t may depend only on the prefix.  Escaper
    strategies additionally declare ``start_point`` (independent of the
    opponent).  ``max_speed`` is the licensed speed of the paths the strategy
    emits.  Instances may keep incremental state between the engine's monotone
    queries; ``reset`` returns them to the initial state.
    """

    start_point: Optional[np.ndarray] = None
    max_speed: float = 1.0

    def reset(self):
        pass

    def position(self, opponent: PathView, t: float) -> np.ndarray:
        raise NotImplementedError


class StraightRunEscaper(Strategy):
    """Runs at full speed through a fixed sequence of waypoints, then holds."""

    def __init__(self, waypoints, speed: float = 1.0):
        pts = [np.asarray(w, dtype=float) for w in waypoints]
        self.start_point = pts[0]
        self.max_speed = float(speed)
        self._legs = []
        t0 = 0.0
        for a, b in zip(pts[:-1], pts[1:]):
            L = float(np.hypot(*(b - a)))
            self._legs.append((t0, t0 + L / speed, a, b))
            t0 += L / speed
        self._t_end = t0
        self._final = pts[-1]

    def position(self, opponent, t):
        if t >= self._t_end:
            return self._final
        for t0, t1, a, b in self._legs:
            if t <= t1:
                w = (t - t0) / (t1 - t0)
                return (1 - w) * a + w * b
        return self._final


class HalfplaneProjectionPursuer(Strategy):
    """Tracks the boundary projection of the escaper in the halfplane frame.

    The target point at height y is (y/tan(theta), y) on the boundary line;
    the chase is clamped to the licensed speed.
    """

    def __init__(self, theta: float, r: float):
        self.theta = float(theta)
        self.r = float(r)
        self.max_speed = float(r)
        self.domain = HalfplaneDomain(theta)
        self.reset()

    def reset(self):
        self._s = None  # arc coordinate along the boundary line
        self._last_t = 0.0

    def _target_s(self, h) -> float:
        from .exact import halfplane_pursuer_position

        z = halfplane_pursuer_position(self.theta, h)
        return float(z @ self.domain.direction)

    def position(self, opponent, t):
        target = self._target_s(opponent.points[-1])
        if self._s is None:
            self._s = target
            self._last_t = t
        else:
            dt = t - self._last_t
            self._last_t = t
            step = np.clip(target - self._s, -self.r * dt, self.r * dt)
            self._s += float(step)
        return self._s * self.domain.direction


class WedgeProjectionPursuer(Strategy):
    """Tracks (|y|/tan(theta), y) on the wedge boundary, speed-clamped."""

    def __init__(self, half_angle: float, r: float):
        self.half_angle = float(half_angle)
        self.r = float(r)
        self.max_speed = float(r)
        self.domain = WedgeDomain(half_angle)
        self.reset()

    def reset(self):
        self._s = None
        self._last_t = 0.0

    def position(self, opponent, t):
        from .exact import wedge_pursuer_position

        z = wedge_pursuer_position(self.half_angle, opponent.points[-1])
        target = self.domain._boundary_param(z)
        if self._s is None:
            self._s = target
            self._last_t = t
        else:
            dt = t - self._last_t
            self._last_t = t
            step = np.clip(target - self._s, -self.r * dt, self.r * dt)
            self._s += float(step)
        s = self._s
        r = abs(s)
        sign = 1.0 if s >= 0 else -1.0
        return r * np.array(
            [math.cos(self.half_angle), sign * math.sin(self.half_angle)]
        )


class ObliviousStrategy(Strategy):
    """Delay wrapper: holds the start for delta time, then mimics the inner
    strategy fed with the opponent prefix shifted back by delta."""

    def __init__(self, inner: Strategy, delta: float):
        if delta <= 0:
            raise ValueError("delta must be positive")
        self.inner = inner
        self.delta = float(delta)
        self.start_point = getattr(inner, "start_point", None)
        self.max_speed = getattr(inner, "max_speed", 1.0)
        self.reset()

    def reset(self):
        self.inner.reset()
        self._start = None

    def position(self, opponent, t):
        if self._start is None:
            self._start = np.asarray(
                self.inner.position(_truncate(opponent, 0.0), 0.0), dtype=float
            )
        if t <= self.delta:
            return self._start
        shifted = t - self.delta
        return self.inner.position(_truncate(opponent, shifted), shifted)


def _truncate(view: PathView, t: float) -> PathView:
    ts = view.times
    n = int(np.searchsorted(ts, t + 1e-15, side="right"))
    return PathView(view._times, view._points, max(n, 1 if len(view) else 0))


def obliviate(strategy: Strategy, delta: float, r: float) -> Strategy:
    """Make a strategy delta-oblivious by delaying its information by delta.

    ``r`` is the speed ratio the delay was budgeted against (delta = eps/(2r)
    in the usual pairing); the transform itself only needs delta.
    """
    return ObliviousStrategy(strategy, delta)


# ---------------------------------------------------------------------------
# playthrough
# ---------------------------------------------------------------------------


@dataclass
class Playthrough:
    escaper_path: MotionPath
    pursuer_path: MotionPath
    outcome: str  # "escaped" | "no_escape_by_tmax"
    epsilon: float
    dt: float
    escape_time: Optional[float] = None
    exit_point: Optional[np.ndarray] = None
    separation: Optional[float] = None
    touches: list = field(default_factory=list)  # (t, separation) at exits

    @property
    def escaped(self) -> bool:
        return self.outcome == "escaped"

    def to_document(self) -> dict:
        doc = {
            "outcome": self.outcome,
            "epsilon": self.epsilon,
            "dt": self.dt,
            "steps": int(len(self.escaper_path)),
            "touch_count": len(self.touches),
        }
        if self.escaped:
            doc["escape_time"] = self.escape_time
            doc["exit"] = [float(c) for c in self.exit_point]
            doc["separation"] = self.separation
        if self.touches:
            doc["max_touch_separation"] = max(s for _, s in self.touches)
        return doc


def playthrough(
    escaper: Strategy,
    pursuer: Strategy,
    dt: float,
    t_max: float,
    epsilon: float,
    domain,
) -> Playthrough:
    """Run the alternating dt-grid game until escape or t_max.

    Escape fires at the first grid time the escaper is on an exit with
    pursuer-metric separation >= epsilon.  SpeedViolation/DomainViolation are
    raised when a strategy breaks its contract (tolerance tol absorbs
    roundoff).
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    tol = 1e-9 * max(1.0, domain.scale())
    n_steps = int(math.floor(t_max / dt + 1e-12))
    times = np.zeros(n_steps + 1)
    h_pts = np.zeros((n_steps + 1, 2))
    z_pts = np.zeros((n_steps + 1, 2))

    escaper.reset()
    pursuer.reset()

    if escaper.start_point is None:
        raise ValueError("escaper strategy must declare a start point")
    h_pts[0] = np.asarray(escaper.start_point, dtype=float)
    if not domain.escaper_contains(h_pts[0], tol):
        raise DomainViolation("escaper start outside its domain")
    z_pts[0] = np.asarray(
        pursuer.position(PathView(times, h_pts, 1), 0.0), dtype=float
    )
    if not domain.pursuer_contains(z_pts[0], tol):
        raise DomainViolation("pursuer start outside its domain")

    s_h = float(escaper.max_speed)
    s_z = float(pursuer.max_speed)
    touches = []

    def check_escape(k):
        if domain.on_exit(h_pts[k], tol):
            sep = domain.pursuer_distance(h_pts[k], z_pts[k])
            touches.append((times[k], sep))
            if sep >= epsilon:
                return sep
        return None

    sep = check_escape(0)
    k_end = 0
    escaped_at = None
    if sep is None:
        for k in range(n_steps):
            t_next = (k + 1) * dt
            times[k + 1] = t_next
            h = np.asarray(
                escaper.position(PathView(times, z_pts, k + 1), t_next), dtype=float
            )
            step_h = domain.escaper_distance(h_pts[k], h)
            if step_h > s_h * dt + tol:
                raise SpeedViolation(
                    f"escaper moved {step_h:.3g} in dt={dt:.3g} at t={t_next:.4g}"
                )
            if not domain.escaper_contains(h, tol):
                raise DomainViolation(f"escaper left its domain at t={t_next:.4g}")
            h_pts[k + 1] = h
            z = np.asarray(
                pursuer.position(PathView(times, h_pts, k + 2), t_next), dtype=float
            )
            step_z = domain.pursuer_distance(z_pts[k], z)
            if step_z > s_z * dt + tol:
                raise SpeedViolation(
                    f"pursuer moved {step_z:.3g} > r*dt={s_z * dt:.3g} at t={t_next:.4g}"
                )
            if not domain.pursuer_contains(z, tol):
                raise DomainViolation(f"pursuer left its domain at t={t_next:.4g}")
            z_pts[k + 1] = z
            k_end = k + 1
            sep = check_escape(k + 1)
            if sep is not None:
                escaped_at = t_next
                break
    else:
        escaped_at = 0.0

    last = k_end + 1
    h_path = MotionPath(times[:last].copy(), h_pts[:last].copy(), s_h, "escaper")
    z_path = MotionPath(times[:last].copy(), z_pts[:last].copy(), s_z, "pursuer")
    if escaped_at is not None:
        return Playthrough(
            h_path,
            z_path,
            "escaped",
            epsilon,
            dt,
            escape_time=escaped_at,
            exit_point=h_pts[k_end].copy(),
            separation=sep,
            touches=touches,
        )
    return Playthrough(h_path, z_path, "no_escape_by_tmax", epsilon, dt, touches=touches)


# ---------------------------------------------------------------------------
# speed validation
# ---------------------------------------------------------------------------


@dataclass
class SpeedReport:
    max_consecutive: float
    max_pairwise: float
    limit: float
    passed: bool


def validate_speed(path: MotionPath, domain, pairs: int = 200, seed: int = 0) -> SpeedReport:
    """Check the speed-limit contract over consecutive samples and random pairs.

    Passes iff every checked pair satisfies d <= max_speed * dt + tol (the
    MotionPath invariant); the reported maxima are observed speeds.
    """
    if len(path) == 0:
        raise ValueError("empty path")
    tol = 1e-9 * max(1.0, domain.scale())
    dist = (
        domain.escaper_distance
        if path.domain_tag == "escaper"
        else domain.pursuer_distance
    )
    limit = path.max_speed
    max_cons = 0.0
    ok = True
    for k in range(1, len(path)):
        d = dist(path.points[k - 1], path.points[k])
        dt = path.times[k] - path.times[k - 1]
        max_cons = max(max_cons, d / dt)
        ok &= d <= limit * dt + tol
    max_pair = 0.0
    if len(path) > 2:
        rng = np.random.default_rng(seed)
        for _ in range(pairs):
            i, j = sorted(rng.integers(0, len(path), size=2).tolist())
            if i == j:
                continue
            d = dist(path.points[i], path.points[j])
            span = path.times[j] - path.times[i]
            max_pair = max(max_pair, d / span)
            ok &= d <= limit * span + tol
    return SpeedReport(max_cons, max_pair, limit, bool(ok))


# ---------------------------------------------------------------------------
# SVG rendering
# ---------------------------------------------------------------------------


def _downsample(points: np.ndarray, limit: int = 400) -> np.ndarray:
    if len(points) <= limit:
        return points
    idx = np.linspace(0, len(points) - 1, limit).round().astype(int)
    return points[idx]


def emit_svg(pt: Playthrough, domain, size: int = 480) -> str:
    """Render the domain, both trajectories and the outcome annotation as SVG.

    Trajectories are polylines stroked with time-gradient colors; a degenerate
    (single-point) trajectory becomes a small square marker instead.
    """
    pts = np.vstack([pt.escaper_path.points, pt.pursuer_path.points])
    if isinstance(domain, DiskDomain):
        lo = np.array([-1.1, -1.1])
        hi = np.array([1.1, 1.1])
    elif isinstance(domain, PolygonDomain):
        blo, bhi = domain.ctx.polygon.bbox
        pad = 0.08 * float(np.hypot(*(bhi - blo)))
        lo, hi = blo - pad, bhi + pad
    else:
        lo = pts.min(axis=0) - 0.3
        hi = pts.max(axis=0) + 0.3
    span = hi - lo
    scale = size / max(span)

    def sx(p):
        return (p[0] - lo[0]) * scale

    def sy(p):
        return (hi[1] - p[1]) * scale  # flip y for SVG

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" '
        f'height="{size}" viewBox="0 0 {size} {size}">',
        "<defs>"
        '<linearGradient id="grad-h"><stop offset="0" stop-color="#9ecae1"/>'
        '<stop offset="1" stop-color="#08519c"/></linearGradient>'
        '<linearGradient id="grad-z"><stop offset="0" stop-color="#fcae91"/>'
        '<stop offset="1" stop-color="#a50f15"/></linearGradient>'
        "</defs>",
    ]

    if isinstance(domain, DiskDomain):
        c = np.array([0.0, 0.0])
        parts.append(
            f'<circle cx="{sx(c):.2f}" cy="{sy(c):.2f}" r="{scale:.2f}" '
            'fill="none" stroke="#444" stroke-width="1.5"/>'
        )
    elif isinstance(domain, PolygonDomain):
        coords = " ".join(
            f"{sx(v):.2f},{sy(v):.2f}" for v in domain.ctx.polygon.vertices
        )
        parts.append(
            f'<polygon points="{coords}" fill="#f7f7f7" stroke="#444" stroke-width="1.5"/>'
        )
    elif isinstance(domain, HalfplaneDomain):
        a = -2.0 * max(span) * domain.direction
        b = 2.0 * max(span) * domain.direction
        parts.append(
            f'<line x1="{sx(a):.2f}" y1="{sy(a):.2f}" x2="{sx(b):.2f}" '
            f'y2="{sy(b):.2f}" stroke="#444" stroke-width="1.5"/>'
        )
    elif isinstance(domain, WedgeDomain):
        for sgn in (1.0, -1.0):
            d = np.array(
                [math.cos(domain.half_angle), sgn * math.sin(domain.half_angle)]
            )
            b = 2.0 * max(span) * d
            parts.append(
                f'<line x1="{sx((0, 0)):.2f}" y1="{sy((0, 0)):.2f}" '
                f'x2="{sx(b):.2f}" y2="{sy(b):.2f}" stroke="#444" stroke-width="1.5"/>'
            )

    for path, grad in ((pt.escaper_path, "grad-h"), (pt.pursuer_path, "grad-z")):
        p = _downsample(path.points)
        distinct = len(np.unique(np.round(p, 12), axis=0))
        if distinct <= 1:
            q = p[0]
            parts.append(
                f'<rect x="{sx(q) - 3:.2f}" y="{sy(q) - 3:.2f}" width="6" height="6" '
                f'fill="url(#{grad})" class="point-marker"/>'
            )
        else:
            coords = " ".join(f"{sx(q):.2f},{sy(q):.2f}" for q in p)
            parts.append(
                f'<polyline points="{coords}" fill="none" '
                f'stroke="url(#{grad})" stroke-width="2"/>'
            )

    if pt.escaped:
        q = pt.exit_point
        parts.append(
            f'<rect x="{sx(q) - 4:.2f}" y="{sy(q) - 4:.2f}" width="8" height="8" '
            'fill="none" stroke="#2ca02c" stroke-width="2" class="exit-marker"/>'
        )
        parts.append(
            f'<text x="8" y="{size - 10}" font-size="13" fill="#222">'
            f"escaped at t={pt.escape_time:.4g}, separation={pt.separation:.4g}</text>"
        )
    else:
        parts.append(
            f'<text x="8" y="{size - 10}" font-size="13" fill="#222">'
            f"no escape by t={pt.escaper_path.times[-1]:.4g} (epsilon={pt.epsilon:.4g})</text>"
        )
    parts.append("</svg>")
    return "\n".join(parts)
