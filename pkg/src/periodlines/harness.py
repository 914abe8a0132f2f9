"""Executable versions of the periodic-line lemmas and the main overlap
theorem: build lines, test the overlap hypotheses, search for the concluded
algebraic witnesses, and re-verify every witness through the backend.

Search bounds are experiment parameters, not claims: the statements assert
existence of witnesses but give no bound on the exponents, so "no witness
within bounds" is an unknown, except where an exact oracle exists (free
backend commensurability).
"""

import math
from dataclasses import dataclass, field

from .freewords import free_commensurate
from .words import primitive_root
from .geometry import (
    classify_element,
    neighborhood_contains,
    neighborhood_profile,
    periodic_line,
    shortest_conjugate,
)
from .constants import AcylUnavailable, C_and_f, F_of_r, K_of_r, k_trim


class HypothesisError(ValueError):
    """A stated precondition of the lemma/theorem is violated by the inputs."""


@dataclass
class HarnessResult:
    status: str  # "witness" | "no-witness-within-bounds" | "hypothesis-failed"
    witness: dict | None = None
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == "witness"


@dataclass
class TheoremInstance:
    backend: object
    a: str
    b: str
    x: str
    y: str
    r: int
    max_exponent: int = 8
    max_window: int = 64


def _require_loxodromic_shortest(backend, g: str, name: str) -> None:
    if classify_element(backend, g) != "loxodromic":
        raise HypothesisError(f"{name} is not loxodromic")
    _, core, cert = shortest_conjugate(backend, g)
    if backend.length(core)[0] < backend.length(g)[0]:
        msg = f"{name} is not shortest in its conjugacy class"
        if not cert.startswith("exact"):
            msg += f" (certificate {cert})"
        raise HypothesisError(msg)


def _power(backend, g: str, n: int) -> str:
    base = g if n >= 0 else backend.inv(g)
    out = ""
    for _ in range(abs(n)):
        out = backend.mul(out, base)
    return out


def _centralizer_note(backend, z: str, b: str) -> dict:
    """Free backend only: centralizers are cyclic, so z commutes with a power
    of b iff z is a power of b's primitive root."""
    if backend.kind != "free" or not z:
        return {}
    c, _ = primitive_root(backend.normal_form(b))
    for sign_c in (c, backend.inv(c)):
        w = ""
        for _ in range(len(z) // len(c) + 1):
            w = backend.mul(w, sign_c)
            if w == z:
                return {"centralizer_member": True, "primitive_root": c}
    return {"centralizer_member": False, "primitive_root": c}


def lemma41_check(backend, b: str, x_p: str, x_q: str, window: int, r: int,
                  profile=None, max_exponent: int = 8) -> HarnessResult:
    """Parallel b-periodic lines: if finite window subpaths of L(x_p, b) and
    L(x_q, b) have both endpoint pairs within r, search for n != 0 such that
    the phase difference element centralizes b^n."""
    _require_loxodromic_shortest(backend, b, "b")
    details = {"window": window, "r": r}
    if profile is not None:
        K = K_of_r(profile, r)
        details["K(r)"] = K
        if window < K:
            return HarnessResult("hypothesis-failed", None,
                                 {**details, "reason": f"window {window} < K(r) = {K}"})
    p = periodic_line(backend, x_p, b, 0, window)
    q = periodic_line(backend, x_q, b, 0, window)
    d_start = backend.length(backend.mul(backend.inv(p.start), q.start))[0]
    d_end = backend.length(backend.mul(backend.inv(p.end), q.end))[0]
    details["endpoint_distances"] = [d_start, d_end]
    if max(d_start, d_end) > r:
        return HarnessResult("hypothesis-failed", None,
                             {**details, "reason": "endpoints farther than r"})
    # A = phase vertex of the q-line, B = phase vertex of the p-line
    z = backend.mul(backend.inv(backend.normal_form(x_q)), backend.normal_form(x_p))
    bn = ""
    for n in range(1, max_exponent + 1):
        bn = backend.mul(bn, b)
        if backend.equal(backend.mul(z, bn), backend.mul(bn, z)):
            # re-verify via the conjugation form before emitting
            if not backend.equal(backend.mul(backend.mul(backend.inv(z), bn), z), bn):
                raise RuntimeError("witness failed re-verification")
            details.update(_centralizer_note(backend, z, b))
            return HarnessResult("witness", {"n": n, "element": z}, details)
    return HarnessResult("no-witness-within-bounds", None, details)


def _witness_search(backend, a: str, b: str, x: str, y: str, max_exponent: int):
    """Search s, t != 0 with (x^-1 y) b^s (y^-1 x) = a^t, smallest |s|+|t|
    first; every hit is re-verified by backend equality before emission."""
    u = backend.mul(backend.inv(backend.normal_form(x)), backend.normal_form(y))
    u_inv = backend.inv(u)
    powers_a = {t: _power(backend, a, t)
                for t in range(-max_exponent, max_exponent + 1) if t}
    candidates = sorted(
        ((s, t) for s in range(-max_exponent, max_exponent + 1) if s
         for t in range(-max_exponent, max_exponent + 1) if t),
        key=lambda st: (abs(st[0]) + abs(st[1]), st),
    )
    for s, t in candidates:
        lhs = backend.mul(backend.mul(u, _power(backend, b, s)), u_inv)
        if backend.equal(lhs, powers_a[t]):
            if not backend.equal(lhs, _power(backend, a, t)):
                raise RuntimeError("witness failed re-verification")
            return {"s": s, "t": t}
    return None


def _b_window(backend, inst: TheoremInstance, lo_phase: int, hi_phase: int):
    """Window of L(y, b) wide enough to cover the a-phase range
    [lo_phase, hi_phase] of L(x, a) plus slack r on both sides.  The window
    is symmetric so that b running against a's orientation is covered too."""
    la = backend.length(inst.a)[0]
    lb = backend.length(inst.b)[0]
    slack = (inst.r + la) // max(1, lb) + 2
    lo = (lo_phase * la) // max(1, lb) - slack
    hi = -((-hi_phase * la) // max(1, lb)) + slack
    lo, hi = min(lo, -hi), max(hi, -lo)
    return periodic_line(backend, inst.y, inst.b, lo, hi)


def weak_theorem_check(inst: TheoremInstance, profile=None,
                       min_periods: int | None = None) -> HarnessResult:
    """Overlap hypothesis at parameter r with enough a-periods implies a
    commensurability witness (x^-1 y) b^s (y^-1 x) = a^t."""
    backend = inst.backend
    _require_loxodromic_shortest(backend, inst.a, "a")
    _require_loxodromic_shortest(backend, inst.b, "b")
    if backend.length(inst.a)[0] < backend.length(inst.b)[0]:
        raise HypothesisError("|a| must be >= |b|")
    if min_periods is None:
        if profile is None:
            raise HypothesisError("need a profile or an explicit period count")
        min_periods = F_of_r(profile, inst.r)
    n_periods = max(min_periods, 2)
    details = {"r": inst.r, "periods": n_periods, "required_periods": min_periods}
    p = periodic_line(backend, inst.x, inst.a, 0, n_periods)
    q = _b_window(backend, inst, 0, n_periods)
    if not neighborhood_contains(p, q, inst.r, backend):
        return HarnessResult("hypothesis-failed", None,
                             {**details, "reason": "a-line window not in r-neighborhood of b-line"})
    witness = _witness_search(backend, inst.a, inst.b, inst.x, inst.y, inst.max_exponent)
    if witness is None:
        return HarnessResult("no-witness-within-bounds", None, details)
    return HarnessResult("witness", witness, details)


def main_theorem_check(inst: TheoremInstance, profile=None,
                       sharp_free: bool = False) -> HarnessResult:
    """Full overlap theorem: trim the line window and delegate to the weak
    version at the base overlap parameter.  With sharp_free (free backend,
    r = 0) the sharp two-period threshold is used instead of the pipeline."""
    backend = inst.backend
    if sharp_free:
        if backend.kind != "free":
            raise HypothesisError("sharp mode is exact only for the free backend")
        if inst.r != 0:
            raise HypothesisError("sharp mode applies at r = 0")
        return weak_theorem_check(inst, None, min_periods=2)
    if profile is None:
        raise HypothesisError("profile required outside sharp mode")
    _, f = C_and_f(profile)
    needed = math.ceil(f(inst.r))
    k = k_trim(profile, inst.r)
    r_base = profile.r_base
    base_needed = F_of_r(profile, r_base)
    trimmed = needed - 2 * k
    if trimmed < base_needed:
        raise AcylUnavailable("inconsistent profile: trimming eats too many periods")
    details = {"f(r)": str(f(inst.r)), "k": k, "r_base": r_base,
               "trimmed_periods": trimmed}
    # shift the window start by k periods: the trimmed path is a subpath of
    # L(x a^k, a) with trimmed period count
    x_shift = backend.mul(backend.normal_form(inst.x), _power(backend, inst.a, k))
    inner = TheoremInstance(backend, inst.a, inst.b, x_shift, inst.y, r_base,
                            inst.max_exponent, max(inst.max_window, trimmed))
    res = weak_theorem_check(inner, profile, min_periods=trimmed)
    res.details.update(details)
    return res


def commensurability_search(backend, a: str, b: str, max_exponent: int = 8,
                            conjugator_bound: int = 4):
    """(g, s, t) with a^s = g^-1 b^t g, exactly for the free backend and by
    bounded search elsewhere; the failure label records which."""
    if backend.is_identity(a) or backend.is_identity(b):
        raise HypothesisError("trivial element excluded")
    if backend.kind == "free":
        res = free_commensurate(backend.normal_form(a), backend.normal_form(b))
        if res is None:
            return None, "exact: non-commensurable"
        g, s, t = res
        return {"g": g, "s": s, "t": t}, "exact"
    for g in backend.ball(conjugator_bound):
        g_inv = backend.inv(g)
        for total in range(2, 2 * max_exponent + 1):
            for s in range(-max_exponent, max_exponent + 1):
                if not s:
                    continue
                t_abs = total - abs(s)
                if t_abs < 1 or t_abs > max_exponent:
                    continue
                for t in (t_abs, -t_abs):
                    lhs = _power(backend, a, s)
                    rhs = backend.mul(backend.mul(g_inv, _power(backend, b, t)), g)
                    if backend.equal(lhs, rhs):
                        return {"g": g, "s": s, "t": t}, f"bounded({max_exponent},{conjugator_bound})"
    return None, f"not found within bounds ({max_exponent},{conjugator_bound})"


def empirical_period_threshold(backend, a: str, b: str, x: str, y: str, r: int,
                               max_periods: int = 8, max_exponent: int = 8):
    """Smallest period count m such that some m-period subpath of L(x, a)
    lies in the r-neighborhood of the L(y, b) window AND the witness search
    succeeds; None when nothing fires up to max_periods."""
    _require_loxodromic_shortest(backend, a, "a")
    _require_loxodromic_shortest(backend, b, "b")
    inst = TheoremInstance(backend, a, b, x, y, r, max_exponent)
    # An m-period window is contained iff each of its m one-period pieces is,
    # so one profile of the widest window determines every (m, offset) case.
    q = _b_window(backend, inst, -max_periods, 2 * max_periods)
    p = periodic_line(backend, x, a, -max_periods, 2 * max_periods)
    vertex_ok = neighborhood_profile(p, q, r, backend)
    la = backend.length(a)[0]
    flags = [all(vertex_ok[k * la:(k + 1) * la + 1])
             for k in range(3 * max_periods)]
    if not any(flags):
        return None
    witness = _witness_search(backend, a, b, x, y, max_exponent)
    if witness is None:
        return None
    for m in range(1, max_periods + 1):
        for n0 in range(-max_periods, max_periods + 1):
            i = n0 + max_periods
            if all(flags[i:i + m]):
                return m
    return None
