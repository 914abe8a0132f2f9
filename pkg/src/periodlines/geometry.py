"""Geometric apparatus on Cayley graphs: paths, periodic lines, quasi-geodesic
checks, hyperbolicity and acylindricity estimation, stable norms.

All distances are exact integers; derived quantities are exact Fractions.
Every estimator reports a certificate, because scan-based constants are
witnesses on a finite ball, not proofs for the whole group.
"""

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .backends import BudgetExceeded, letter_rank
from .freewords import inverse_word


class GeometryError(ValueError):
    pass


@dataclass(frozen=True)
class QuasiParams:
    kappa: Fraction
    eps: Fraction

    def __post_init__(self):
        if self.kappa < 1 or self.eps < 0:
            raise GeometryError("need kappa >= 1 and eps >= 0")


@dataclass
class PathInGraph:
    """Edge path: vertices are canonical elements, label is the formal word
    spelling the edges.  Periodic lines carry their phase vertices."""

    vertices: list[str]
    label: str
    phase_indices: list[int] | None = None
    period_element: str | None = None

    @property
    def start(self) -> str:
        return self.vertices[0]

    @property
    def end(self) -> str:
        return self.vertices[-1]

    def __len__(self) -> int:
        return len(self.label)


def path_from_word(backend, start: str, word: str) -> PathInGraph:
    state = backend.parse_state(start)
    vertices = [backend.render(state)]
    for c in word:
        backend.append_letter(state, c)
        vertices.append(backend.render(state))
    return PathInGraph(vertices, word)


def reverse_path(p: PathInGraph) -> PathInGraph:
    return PathInGraph(list(reversed(p.vertices)), inverse_word(p.label))


def concat_paths(p: PathInGraph, q: PathInGraph) -> PathInGraph:
    if p.vertices[-1] != q.vertices[0]:
        raise GeometryError("paths do not share an endpoint")
    return PathInGraph(p.vertices + q.vertices[1:], p.label + q.label)


def geodesic_word(backend, g: str) -> str:
    """ShortLex-least geodesic word for g; errors when the backend cannot
    certify the length exactly."""
    _, cert = backend.length(g)
    if cert != "exact":
        raise BudgetExceeded("geodesic unavailable at budget")
    return backend.geodesic_word(g)


def periodic_line(backend, x: str, a: str, n_min: int, n_max: int) -> PathInGraph:
    """Finite window of the line L(x, a): the broken geodesic through the
    phase vertices x * a^n, every period segment carrying the same label."""
    if backend.is_identity(a):
        raise GeometryError("period element must be nontrivial")
    if n_min >= n_max:
        raise GeometryError("need n_min < n_max")
    wa = geodesic_word(backend, a)
    start = backend.normal_form(x)
    if n_min != 0:
        step = wa if n_min > 0 else inverse_word(wa)
        for _ in range(abs(n_min)):
            start = backend.mul(start, step)
    path = path_from_word(backend, start, wa * (n_max - n_min))
    path.phase_indices = [i * len(wa) for i in range(n_max - n_min + 1)]
    path.period_element = backend.normal_form(a)
    return path


def quasi_geodesic_check(path: PathInGraph, params: QuasiParams, backend) -> list[tuple[int, int, int]]:
    """Violations (i, j, d) of d(v_i, v_j) >= (j - i)/kappa - eps over all
    vertex-to-vertex subpaths; empty list means the check passed."""
    violations = []
    n = len(path.vertices)
    for i in range(n):
        inv_i = backend.inv(path.vertices[i])
        for j in range(i + 1, n):
            d = backend.length(backend.mul(inv_i, path.vertices[j]))[0]
            if Fraction(d) < Fraction(j - i) / params.kappa - params.eps:
                violations.append((i, j, d))
    return violations


def _side_points(backend, u: str, v: str):
    """Vertices and edge midpoints of the ShortLex geodesic from u to v.
    Midpoints matter: vertex-only slimness can report 0 on graphs whose
    metric hyperbolicity constant is positive (e.g. trees of triangles)."""
    w = geodesic_word(backend, backend.mul(backend.inv(u), v))
    state = backend.parse_state(u)
    verts = [backend.render(state)]
    for c in w:
        backend.append_letter(state, c)
        verts.append(backend.render(state))
    points = []
    for i, vert in enumerate(verts):
        points.append(("v", vert, None))
        if i + 1 < len(verts):
            points.append(("m", vert, verts[i + 1]))
    return points


def _point_dist(dist, p, q) -> Fraction:
    kp, a1, a2 = p
    kq, b1, b2 = q
    if kp == "v" and kq == "v":
        return Fraction(dist(a1, b1))
    if kp == "v":
        return Fraction(min(dist(a1, b1), dist(a1, b2))) + Fraction(1, 2)
    if kq == "v":
        return Fraction(min(dist(a1, b1), dist(a2, b1))) + Fraction(1, 2)
    if {a1, a2} == {b1, b2}:
        return Fraction(0)
    return Fraction(min(dist(x, y) for x in (a1, a2) for y in (b1, b2))) + 1


def _cached_dist(backend):
    cache: dict[tuple[str, str], int] = {}

    def dist(u: str, v: str) -> int:
        key = (u, v) if u <= v else (v, u)
        if key not in cache:
            cache[key] = backend.dist(u, v)
        return cache[key]

    return dist


def slimness(backend, tri, dist=None) -> Fraction:
    """Minimal delta making the geodesic triangle on the given vertices
    delta-slim, measured on vertices and edge midpoints."""
    dist = dist or _cached_dist(backend)
    sides = [_side_points(backend, tri[i], tri[(i + 1) % 3]) for i in range(3)]
    worst = Fraction(0)
    for i in range(3):
        others = sides[(i + 1) % 3] + sides[(i + 2) % 3]
        for p in sides[i]:
            best = min(_point_dist(dist, p, q) for q in others)
            worst = max(worst, best)
    return worst


def estimate_delta(backend, radius: int, max_triangles: int = 20000, seed: int = 0):
    """Max slimness over geodesic triangles with vertices in ball(radius);
    exhaustive when feasible, otherwise a seeded sample.  The result is a
    lower-bound certificate for the true hyperbolicity constant."""
    elements = list(backend.ball(radius))
    dist = _cached_dist(backend)
    triples = itertools.combinations(elements, 3)
    total = len(elements) * (len(elements) - 1) * (len(elements) - 2) // 6
    cert = f"lower_bound(exhaustive on ball({radius}))"
    if total > max_triangles:
        rng = random.Random(seed)
        pool = [tuple(rng.sample(elements, 3)) for _ in range(max_triangles)]
        triples = pool
        cert = f"lower_bound(sampled {max_triangles} triangles on ball({radius}), seed={seed})"
    best = Fraction(0)
    for tri in triples:
        best = max(best, slimness(backend, tri, dist))
    return best, cert


def stable_norm_estimate(backend, g: str, n_max: int):
    """min over 1 <= n <= n_max of |g^n| / n; a valid upper bound on the
    stable norm, which is the infimum of that sequence."""
    if n_max < 1:
        raise GeometryError("n_max must be >= 1")
    best = None
    power = ""
    for n in range(1, n_max + 1):
        power = backend.mul(power, g)
        length, cert = backend.length(power)
        if cert != "exact":
            raise BudgetExceeded(f"|g^{n}| not exact within budget")
        val = Fraction(length, n)
        best = val if best is None else min(best, val)
    return best, f"upper_bound(n_max={n_max})"


def classify_element(backend, g: str, n_max: int = 12) -> str:
    """'elliptic', 'loxodromic', or 'undecided'."""
    if backend.is_identity(g):
        return "elliptic"
    if backend.kind == "free":
        return "loxodromic"
    if backend.kind == "free_product":
        _, core, _ = shortest_conjugate(backend, g)
        return "loxodromic" if len(core) >= 2 else "elliptic"
    power = ""
    for _ in range(n_max):
        power = backend.mul(power, g)
        if backend.is_identity(power):
            return "elliptic"
    return "undecided"


def shortest_conjugate(backend, g: str, conjugator_bound: int = 4):
    """Shortest element of the conjugacy class, as (conjugator, core, cert)
    with conjugator^-1 * g * conjugator = core.  The core is normalized to
    the ShortLex-least among its cyclic rotations (free and free_product
    backends, where the reduction is exact)."""
    if backend.kind in ("free", "free_product"):
        core = backend.normal_form(g)
        conj = ""
        while True:
            if len(core) >= 2 and core[0] == _inverse_letter_of(backend, core[-1]):
                conj = backend.mul(conj, core[0])
                core = backend.mul(backend.mul(backend.inv(core[0]), core), core[0])
            elif len(core) >= 2 and backend.kind == "free_product" and \
                    core[0].lower() == core[-1].lower():
                # first and last syllables in the same factor: fold them
                conj = backend.mul(conj, core[0])
                core = backend.mul(backend.mul(backend.inv(core[0]), core), core[0])
            else:
                break
        core, conj = _shortlex_rotation(backend, core, conj)
        return conj, core, "exact"
    # Dehn backend: brute-force conjugators within the bound.
    best_len, _ = backend.length(g)
    best, best_h = backend.normal_form(g), ""
    for h in backend.ball(conjugator_bound):
        cand = backend.mul(backend.mul(backend.inv(h), g), h)
        n, cert = backend.length(cand)
        if cert == "exact" and n < best_len:
            best_len, best, best_h = n, backend.normal_form(cand), h
    return best_h, best, f"bounded({conjugator_bound})"


def _inverse_letter_of(backend, c: str) -> str:
    return backend.normal_form(inverse_word(c)) or c.swapcase()


def _shortlex_rotation(backend, core: str, conj: str):
    if len(core) < 2:
        return core, conj
    best, best_conj = core, conj
    cur, cur_conj = core, conj
    for _ in range(len(core) - 1):
        head = cur[0]
        cur = backend.mul(backend.mul(backend.inv(head), cur), head)
        cur_conj = backend.mul(cur_conj, head)
        if len(cur) == len(core) and _shortlex_less(cur, best):
            best, best_conj = cur, cur_conj
    return best, best_conj


def _shortlex_less(u: str, v: str) -> bool:
    ku = (len(u), [letter_rank(c) for c in u])
    kv = (len(v), [letter_rank(c) for c in v])
    return ku < kv


def injectivity_radius_estimate(backend, length_bound: int, n_max: int = 8):
    """Upper bound on the injectivity radius: min stable-norm estimate over
    loxodromic conjugacy-shortest elements of length <= length_bound."""
    best = None
    witness = None
    for g in backend.ball(length_bound):
        if not g:
            continue
        if classify_element(backend, g, n_max) != "loxodromic":
            continue
        _, core, _ = shortest_conjugate(backend, g)
        if backend.length(core)[0] != backend.length(g)[0]:
            continue
        val, _ = stable_norm_estimate(backend, g, n_max)
        if best is None or val < best:
            best, witness = val, g
    if best is None:
        raise GeometryError(f"no loxodromic elements in ball({length_bound})")
    cert = f"upper_bound(scan length<={length_bound}, n_max={n_max}, witness={witness!r})"
    return best, cert


def acylindricity_profile(backend, eps: int, radius: int):
    """Observed acylindricity constants on ball(radius): for each threshold R,
    the max over g with R <= |g| <= radius of the number of f with
    |f| <= eps and |g^-1 f g| <= eps; returns the smallest R >= 1 where that
    max stabilizes together with the stabilized count N."""
    if eps > radius:
        raise GeometryError("need eps <= radius")
    ball = backend.ball(radius)
    small = [f for f, d in ball.items() if d <= eps]
    counts = {}
    for g, d in ball.items():
        if d < 1:
            continue
        ginv = backend.inv(g)
        c = 0
        for f in small:
            conj = backend.mul(backend.mul(ginv, f), g)
            n, cert = backend.length(conj)
            if cert == "exact" and n <= eps:
                c += 1
        counts[g] = (d, c)
    max_at = {}
    for r_thr in range(1, radius + 1):
        vals = [c for (d, c) in counts.values() if d >= r_thr]
        max_at[r_thr] = max(vals) if vals else 0
    n_est = max_at[radius]
    r_est = radius
    for r_thr in range(1, radius + 1):
        if max_at[r_thr] == n_est:
            r_est = r_thr
            break
    return r_est, n_est, f"observed_on_ball({radius})"


def _diff_update_prepend(backend, diff: str, letter: str) -> str:
    return backend.normal_form(inverse_word(letter) + diff)


def _diff_update_append(backend, diff: str, letter: str) -> str:
    return backend.normal_form(diff + letter)


def _neighborhood_flags(p: PathInGraph, q: PathInGraph, r: int, backend,
                        stop_on_miss: bool) -> list[bool]:
    """Per-vertex flags: flags[i] is True iff p.vertices[i] is within distance
    r of some vertex of q.

    Sweeps a difference element p_i^-1 q_j letter by letter so that long
    fellow-traveling paths are checked in near-linear time.  A vertex the
    sweep cannot place falls back to an exact full scan; a full scan that
    misses also yields a distance lower bound (distances change by at most 1
    per edge), so long far-away stretches skip their scans entirely.
    """
    m = len(q.vertices)
    # diffs[j - j_lo] = p_i^-1 q_j for j in a sliding window
    window = max(4, 2 * r + (len(q.label) // max(1, m - 1)) + 4)
    j_lo = 0
    diffs = [backend.mul(backend.inv(p.vertices[0]), q.vertices[0])]

    def extend_to(hi):
        while j_lo + len(diffs) <= hi:
            j = j_lo + len(diffs)
            diffs.append(_diff_update_append(backend, diffs[-1], q.label[j - 1]))

    flags = []
    center = 0
    dist_floor = 0  # known lower bound on d(p_i, q)
    for i, _ in enumerate(p.vertices):
        hit = None
        if dist_floor > r:
            hit = False
        else:
            lo = max(0, center - window)
            hi = min(m - 1, center + window)
            while j_lo < lo:
                diffs.pop(0)
                j_lo += 1
            extend_to(hi)
            best_j, best_len = None, None
            for j in range(lo, hi + 1):
                n = len(diffs[j - j_lo])
                if best_len is None or n < best_len:
                    best_j, best_len = j, n
            if best_len is not None and best_len <= r:
                center = best_j
                hit = True
            else:
                # exact fallback; a miss records the true minimum distance
                u_i = p.vertices[i]
                found, minimum = None, None
                for j, v in enumerate(q.vertices):
                    d = backend.dist(u_i, v)
                    if minimum is None or d < minimum:
                        minimum = d
                    if d <= r:
                        found = j
                        break
                if found is None:
                    hit = False
                    dist_floor = minimum
                else:
                    hit = True
                    if not lo <= found <= hi:
                        center = found
                        new_lo = max(0, center - window)
                        if new_lo < j_lo or j_lo + len(diffs) <= new_lo:
                            # window jumped; restart the sweep at the hit
                            diffs = [backend.mul(backend.inv(u_i),
                                                 q.vertices[new_lo])]
                            j_lo = new_lo
                        else:
                            while j_lo < new_lo:
                                diffs.pop(0)
                                j_lo += 1
                        extend_to(min(m - 1, center + window))
        flags.append(hit)
        if not hit and stop_on_miss:
            return flags
        if i + 1 < len(p.vertices):
            diffs = [_diff_update_prepend(backend, d, p.label[i]) for d in diffs]
            dist_floor = max(0, dist_floor - 1)
    return flags


def neighborhood_contains(p: PathInGraph, q: PathInGraph, r: int, backend) -> bool:
    """True iff every vertex of p is within distance r of some vertex of q."""
    return all(_neighborhood_flags(p, q, r, backend, stop_on_miss=True))


def neighborhood_profile(p: PathInGraph, q: PathInGraph, r: int, backend) -> list[bool]:
    """For each vertex of p, whether it is within distance r of q."""
    return _neighborhood_flags(p, q, r, backend, stop_on_miss=False)


def hausdorff_distance(p: PathInGraph, q: PathInGraph, backend) -> int:
    """Max over vertices of either path of the distance to the other path."""

    def directed(a: PathInGraph, b: PathInGraph) -> int:
        worst = 0
        for u in a.vertices:
            inv_u = backend.inv(u)
            best = min(backend.length(backend.mul(inv_u, v))[0] for v in b.vertices)
            worst = max(worst, best)
        return worst

    return max(directed(p, q), directed(q, p))
