"""Concrete computable groups: free groups, free products of two finite
cyclic groups, and C'(1/6) presentations via Dehn's algorithm.

Elements are canonical words over the backend's symmetric generating set
(lowercase = generator, uppercase = inverse).  The identity is "".
Ordering of generators and of ball enumerations is ShortLex with letter
order a < A < b < B < ...
"""

from dataclasses import dataclass, field
from collections import deque

from .freewords import free_reduce, inverse_word, is_cyclically_reduced


class BackendError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """A configured search radius or size budget was exhausted."""


def letter_rank(c: str) -> int:
    return 2 * (ord(c.lower()) - ord("a")) + (0 if c.islower() else 1)


def shortlex_key(w: str):
    return (len(w), [letter_rank(c) for c in w])


class FreeBackend:
    """Free group of given rank; reduced words are the normal forms and the
    unique geodesics."""

    kind = "free"

    def __init__(self, rank: int):
        if not 1 <= rank <= 26:
            raise BackendError(f"rank must be in 1..26, got {rank}")
        self.rank = rank
        lowers = [chr(ord("a") + i) for i in range(rank)]
        self.letters = [c for low in lowers for c in (low, low.upper())]
        self._letterset = frozenset(self.letters)
        self._cancelling = [low + low.upper() for low in lowers] + \
            [low.upper() + low for low in lowers]

    def describe(self) -> str:
        return f"free:{self.rank}"

    def check_word(self, w: str) -> None:
        if not self._letterset.issuperset(w):
            for c in w:
                if c not in self._letterset:
                    raise BackendError(f"letter {c!r} not in generating set")

    def normal_form(self, w: str) -> str:
        self.check_word(w)
        if not any(pair in w for pair in self._cancelling):
            return w
        return free_reduce(w)

    def nf_exact(self, w: str) -> bool:
        return True

    def equal(self, u: str, v: str) -> bool:
        return self.normal_form(u) == self.normal_form(v)

    def is_identity(self, w: str) -> bool:
        return self.normal_form(w) == ""

    def mul(self, u: str, v: str) -> str:
        return self.normal_form(u + v)

    def inv(self, w: str) -> str:
        return self.normal_form(inverse_word(w))

    def length(self, g: str) -> tuple[int, str]:
        return len(self.normal_form(g)), "exact"

    def dist(self, u: str, v: str) -> int:
        # reduced words live in a tree: strip the common prefix
        u, v = self.normal_form(u), self.normal_form(v)
        k = 0
        for a, b in zip(u, v):
            if a != b:
                break
            k += 1
        return (len(u) - k) + (len(v) - k)

    def geodesic_word(self, g: str) -> str:
        return self.normal_form(g)

    def append_letter(self, stack: list[str], c: str) -> None:
        if stack and stack[-1] == c.swapcase():
            stack.pop()
        else:
            stack.append(c)

    def parse_state(self, w: str) -> list[str]:
        return list(self.normal_form(w))

    def render(self, stack: list[str]) -> str:
        return "".join(stack)

    def ball(self, radius: int) -> dict[str, int]:
        """Every element at distance <= radius with its exact distance,
        in deterministic ShortLex BFS order."""
        if radius < 0:
            raise BackendError("radius must be >= 0")
        out = {"": 0}
        frontier = [""]
        letters = sorted(self.letters, key=letter_rank)
        for d in range(1, radius + 1):
            nxt = []
            for w in frontier:
                for c in letters:
                    if w and w[-1] == c.swapcase():
                        continue
                    out[w + c] = d
                    nxt.append(w + c)
            frontier = nxt
        return out


@dataclass(frozen=True)
class _Syllable:
    factor: int
    exp: int


class FreeProductBackend:
    """Free product of two finite cyclic groups of orders 2 or 3.

    The generating set consists of all nontrivial elements of each factor,
    so word length equals syllable count.  Factor 0 uses letter 'x',
    factor 1 uses 'y'; for an order-3 factor the uppercase letter is the
    inverse (the square), for an order-2 factor the letter is self-inverse
    and the uppercase form is accepted as an alias.
    """

    kind = "free_product"
    _BASES = "xy"

    def __init__(self, orders: tuple[int, int] = (2, 3)):
        if len(orders) != 2 or any(o not in (2, 3) for o in orders):
            raise BackendError("orders must be a pair drawn from {2, 3}")
        self.orders = tuple(orders)
        self.letters = []
        self._mergeable = []
        self._aliases = ""
        for i, o in enumerate(self.orders):
            base = self._BASES[i]
            self.letters.append(base)
            if o == 3:
                self.letters.append(base.upper())
            else:
                self._aliases += base.upper()
            both = base + base.upper()
            self._mergeable += [c + d for c in both for d in both]
        self._letterset = frozenset(self.letters)

    def describe(self) -> str:
        return "zmzn:" + ",".join(str(o) for o in self.orders)

    def _letter_syllable(self, c: str) -> _Syllable:
        low = c.lower()
        if low not in self._BASES[: len(self.orders)]:
            raise BackendError(f"letter {c!r} not in generating set")
        factor = self._BASES.index(low)
        order = self.orders[factor]
        exp = 1 if c.islower() else order - 1
        return _Syllable(factor, exp % order)

    def parse_state(self, w: str) -> list[_Syllable]:
        state: list[_Syllable] = []
        for c in w:
            self.append_letter(state, c)
        return state

    def append_letter(self, state: list[_Syllable], c: str) -> None:
        s = self._letter_syllable(c)
        if s.exp == 0:
            return
        if state and state[-1].factor == s.factor:
            exp = (state[-1].exp + s.exp) % self.orders[s.factor]
            state.pop()
            if exp:
                state.append(_Syllable(s.factor, exp))
        else:
            state.append(s)

    def render(self, state: list[_Syllable]) -> str:
        out = []
        for s in state:
            base = self._BASES[s.factor]
            out.append(base if s.exp == 1 else base.upper())
        return "".join(out)

    def normal_form(self, w: str) -> str:
        # canonical words have no adjacent same-factor letters and no
        # uppercase alias of an order-2 generator
        if self._letterset.issuperset(w) and \
                not any(c in w for c in self._aliases) and \
                not any(pair in w for pair in self._mergeable):
            return w
        return self.render(self.parse_state(w))

    def nf_exact(self, w: str) -> bool:
        return True

    def equal(self, u: str, v: str) -> bool:
        return self.normal_form(u) == self.normal_form(v)

    def is_identity(self, w: str) -> bool:
        return self.normal_form(w) == ""

    def mul(self, u: str, v: str) -> str:
        return self.normal_form(u + v)

    def inv(self, w: str) -> str:
        return self.normal_form(inverse_word(w))

    def length(self, g: str) -> tuple[int, str]:
        # Each nontrivial factor element is one generator, so the alternating
        # normal form is geodesic and length is the syllable count.
        return len(self.normal_form(g)), "exact"

    def dist(self, u: str, v: str) -> int:
        # strip the common syllable prefix of the canonical forms; at the
        # split the two first syllables merge (without cancelling) exactly
        # when they lie in the same factor
        u, v = self.normal_form(u), self.normal_form(v)
        k = 0
        for a, b in zip(u, v):
            if a != b:
                break
            k += 1
        nu, nv = len(u) - k, len(v) - k
        if nu and nv and u[k].lower() == v[k].lower():
            return nu + nv - 1
        return nu + nv

    def geodesic_word(self, g: str) -> str:
        return self.normal_form(g)

    def ball(self, radius: int) -> dict[str, int]:
        if radius < 0:
            raise BackendError("radius must be >= 0")
        out = {"": 0}
        frontier = [""]
        letters = sorted(self.letters, key=letter_rank)
        for d in range(1, radius + 1):
            nxt = []
            for w in frontier:
                for c in letters:
                    v = self.mul(w, c)
                    if v not in out:
                        out[v] = d
                        nxt.append(v)
            frontier = nxt
        return out


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[str, ...]

    def __post_init__(self):
        for g in self.generators:
            if not (len(g) == 1 and g.isascii() and g.islower()):
                raise BackendError(f"bad generator {g!r}")
        if len(set(self.generators)) != len(self.generators):
            raise BackendError("duplicate generators")
        for rel in self.relators:
            if not rel:
                raise BackendError("empty relator")
            for c in rel:
                if c.lower() not in self.generators:
                    raise BackendError(f"relator letter {c!r} unknown")
            if not is_cyclically_reduced(rel):
                raise BackendError(f"relator {rel!r} not cyclically reduced")

    def symmetrized_occurrences(self) -> list[str]:
        """All cyclic permutations of each relator and of its inverse, one
        entry per occurrence (duplicates kept: a repeated word signals a
        relator overlapping itself)."""
        occ = []
        for rel in self.relators:
            for w in (rel, inverse_word(rel)):
                for i in range(len(w)):
                    occ.append(w[i:] + w[:i])
        return occ

    def symmetrized(self) -> list[str]:
        seen = []
        for w in self.symmetrized_occurrences():
            if w not in seen:
                seen.append(w)
        return seen


def parse_presentation(text: str) -> Presentation:
    """File format: line `gens: a,b,...`, then `rel: <word>` lines.
    Uppercase letters denote inverses.  Blank lines and `#` comments
    are ignored."""
    gens: tuple[str, ...] | None = None
    rels: list[str] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("gens:"):
            gens = tuple(g.strip() for g in line[len("gens:"):].split(",") if g.strip())
        elif line.startswith("rel:"):
            rels.append(line[len("rel:"):].strip())
        else:
            raise BackendError(f"unparseable line {raw!r}")
    if gens is None:
        raise BackendError("missing gens: line")
    if not rels:
        raise BackendError("no relators")
    return Presentation(gens, tuple(rels))


def _common_prefix_len(u: str, v: str) -> int:
    n = 0
    for a, b in zip(u, v):
        if a != b:
            break
        n += 1
    return n


def verify_small_cancellation(p: Presentation, lambda_denominator: int) -> bool:
    """True iff every piece is strictly shorter than 1/lambda_denominator of
    each relator containing it.

    A piece is a common prefix of two distinct occurrences in the symmetrized
    closure (occurrences in cyclic words correspond to prefixes of cyclic
    shifts).  Two distinct occurrences carrying the identical word mean a
    relator overlaps itself completely, a piece of full length.
    """
    occ = p.symmetrized_occurrences()
    for i in range(len(occ)):
        for j in range(i + 1, len(occ)):
            u, v = occ[i], occ[j]
            piece = len(u) if u == v else _common_prefix_len(u, v)
            if piece == 0:
                continue
            if piece * lambda_denominator >= len(u) or piece * lambda_denominator >= len(v):
                return False
    return True


class DehnBackend:
    """Group given by a C'(1/6) presentation; the word problem is solved
    exactly by Dehn's algorithm, while geodesic lengths and canonical forms
    are certified only within a BFS radius budget."""

    kind = "dehn"

    def __init__(self, presentation: Presentation, max_radius: int = 4):
        if not verify_small_cancellation(presentation, 6):
            raise BackendError("presentation is not C'(1/6); Dehn backend refused")
        self.presentation = presentation
        self.max_radius = max_radius
        self.letters = [c for g in presentation.generators for c in (g, g.upper())]
        # Replacement rules: a subword covering more than half of a
        # symmetrized relator rho = s t is replaced by the shorter t^-1.
        self._rules: list[tuple[str, str]] = []
        for rho in presentation.symmetrized():
            n = len(rho)
            for k in range(n, n // 2, -1):
                if 2 * k > n:
                    self._rules.append((rho[:k], inverse_word(rho[k:])))
        self._rules.sort(key=lambda r: -len(r[0]))
        self._abelian_ok = all(
            self._abelian_vector(rel) == tuple([0] * len(presentation.generators))
            for rel in presentation.relators
        )
        self._ball_cache: dict[str, int] | None = None
        self._canon_cache: list[str] = []
        self._reduced_of_canon: list[str] = []
        self._buckets: dict[tuple, list[int]] = {}

    def describe(self) -> str:
        return "dehn:" + ";".join(self.presentation.relators)

    def check_word(self, w: str) -> None:
        for c in w:
            if c not in self.letters:
                raise BackendError(f"letter {c!r} not in generating set")

    def _abelian_vector(self, w: str) -> tuple:
        counts = [0] * len(self.presentation.generators)
        for c in w:
            i = self.presentation.generators.index(c.lower())
            counts[i] += 1 if c.islower() else -1
        return tuple(counts)

    def _bucket_key(self, w: str) -> tuple:
        # Exponent sums are a conjugation-free invariant exactly when every
        # relator abelianizes to zero; otherwise fall back to one bucket.
        return self._abelian_vector(w) if self._abelian_ok else ()

    def dehn_reduce(self, w: str) -> str:
        self.check_word(w)
        w = free_reduce(w)
        changed = True
        while changed:
            changed = False
            for s, repl in self._rules:
                i = w.find(s)
                if i >= 0:
                    w = free_reduce(w[:i] + repl + w[i + len(s):])
                    changed = True
                    break
        return w

    def is_identity(self, w: str) -> bool:
        return self.dehn_reduce(w) == ""

    def equal(self, u: str, v: str) -> bool:
        return self.is_identity(u + inverse_word(v))

    def inv(self, w: str) -> str:
        return self.dehn_reduce(inverse_word(w))

    def mul(self, u: str, v: str) -> str:
        return self.dehn_reduce(u + v)

    def _build_ball(self) -> None:
        if self._ball_cache is not None:
            return
        out = {"": 0}
        self._canon_cache = [""]
        self._reduced_of_canon = [""]
        self._buckets = {self._bucket_key(""): [0]}
        frontier = [""]
        letters = sorted(self.letters, key=letter_rank)
        for d in range(1, self.max_radius + 1):
            nxt = []
            for w in frontier:
                for c in letters:
                    cand = w + c
                    red = self.dehn_reduce(cand)
                    key = self._bucket_key(red)
                    known = False
                    for idx in self._buckets.get(key, []):
                        if self.is_identity(red + inverse_word(self._reduced_of_canon[idx])):
                            known = True
                            break
                    if known:
                        continue
                    # BFS explores candidate words in ShortLex order, so the
                    # first word reaching an element is its ShortLex geodesic.
                    idx = len(self._canon_cache)
                    out[cand] = d
                    self._canon_cache.append(cand)
                    self._reduced_of_canon.append(red)
                    self._buckets.setdefault(key, []).append(idx)
                    nxt.append(cand)
            frontier = nxt
        self._ball_cache = out

    def ball(self, radius: int) -> dict[str, int]:
        if radius > self.max_radius:
            raise BudgetExceeded(
                f"ball radius {radius} exceeds budget; largest completed radius is {self.max_radius}"
            )
        self._build_ball()
        return {w: d for w, d in self._ball_cache.items() if d <= radius}

    def _lookup(self, w: str) -> int | None:
        """Index of the ball element equal to w, or None if not in the ball."""
        self._build_ball()
        red = self.dehn_reduce(w)
        for idx in self._buckets.get(self._bucket_key(red), []):
            if self.is_identity(red + inverse_word(self._reduced_of_canon[idx])):
                return idx
        return None

    def normal_form(self, w: str) -> str:
        """ShortLex geodesic canonical form when w lies in the budget ball,
        otherwise the Dehn-irreducible form (check nf_exact)."""
        idx = self._lookup(w)
        if idx is not None:
            return self._canon_cache[idx]
        return self.dehn_reduce(w)

    def nf_exact(self, w: str) -> bool:
        return self._lookup(w) is not None

    def length(self, g: str) -> tuple[int, str]:
        idx = self._lookup(g)
        if idx is not None:
            return len(self._canon_cache[idx]), "exact"
        return self.max_radius, f"lower_bound({self.max_radius})"

    def dist(self, u: str, v: str) -> int:
        n, cert = self.length(inverse_word(u) + v)
        if cert != "exact":
            raise BudgetExceeded(f"distance not certified within radius {self.max_radius}")
        return n

    def geodesic_word(self, g: str) -> str:
        idx = self._lookup(g)
        if idx is None:
            raise BudgetExceeded("geodesic unavailable at budget")
        return self._canon_cache[idx]

    def append_letter(self, state: list[str], c: str) -> None:
        # Paths in the Dehn backend keep freely reduced representatives;
        # equality of vertices must go through `equal`.
        if state and state[-1] == c.swapcase():
            state.pop()
        else:
            state.append(c)

    def parse_state(self, w: str) -> list[str]:
        self.check_word(w)
        return list(free_reduce(w))

    def render(self, state: list[str]) -> str:
        return "".join(state)


SURFACE_GENUS2 = Presentation(("a", "b", "c", "d"), ("abABcdCD",))


def make_backend(spec: str):
    """Parse a backend descriptor: free:<rank> | zmzn:<m>,<n> | dehn:<file>."""
    if spec.startswith("free:"):
        return FreeBackend(int(spec[len("free:"):]))
    if spec.startswith("zmzn:"):
        parts = spec[len("zmzn:"):].split(",")
        if len(parts) != 2:
            raise BackendError("zmzn backend needs two orders")
        return FreeProductBackend((int(parts[0]), int(parts[1])))
    if spec.startswith("dehn:"):
        path = spec[len("dehn:"):]
        with open(path, encoding="utf-8") as fh:
            return DehnBackend(parse_presentation(fh.read()))
    raise BackendError(f"unknown backend spec {spec!r}")
