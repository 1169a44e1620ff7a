"""Recipe generation for 5-pattern counting under a separator pair.

A configuration of a 5-pattern against a vertical/horizontal separator pair
is a pair (p, m): the elements at pattern positions 1..p lie left of the
vertical cut and the elements with values 1..m lie below the horizontal cut.
Each element therefore occupies one quadrant (LB/LA/RB/RA).

A recipe fixes one element and processes the remaining four in order; each is
classified as

  STEP       iterate its candidates along one axis: all its order constraints
             against not-yet-processed elements on the other axis must
             already be resolved, and the live same-axis constraints must all
             point the same way, in which case the completion counts are
             monotone along the scan and a Birge schedule applies;
  SINGLETON  all constraints resolved; contributes an exact rectangle count;
  PAIR       mutually live with exactly the next element; counted by one
             range query (12/21 inside a shared rectangle when live on both
             axes, a cross-rectangle dominance count when live on one).

A constraint between two elements is resolved when quadrant geometry
separates them on that axis, or transitively when some already-fixed
element's coordinate lies between them in the pattern order.

Recipe search tries every (fixed element, processing order) in a canonical
order (fewer steps first, then fewer value-axis steps, then lexicographic)
and keeps the first valid recipe.  Exactly two pattern families resist every
ordering: the ones whose four-element block opposite a lone corner element is
order-equivalent to 2413 or 3142; those configurations carry a factorization
marker instead, and anything else failing the search is a build error.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .errors import CoverageGap, InvalidRecipe, ParseError
from .perm import Pattern

ROLE_STEP = 0
ROLE_SINGLETON = 1
ROLE_PAIR_LEAD = 2
ROLE_PAIR_TAIL = 3

PAIR_12 = 0
PAIR_21 = 1
PAIR_XDOM = 2  # position order live, value order resolved
PAIR_YDOM = 3  # value order live, position order resolved

AXIS_POS = 0
AXIS_VAL = 1


@dataclass(frozen=True)
class Step:
    element: int
    role: int
    axis: int = -1          # for STEP
    ascending: bool = True  # for STEP: candidate scan direction
    pair_kind: int = -1     # for PAIR_LEAD


@dataclass(frozen=True)
class Recipe:
    pattern: str
    p: int
    m: int
    fixed: int
    order: tuple[int, ...]
    steps: tuple[Step, ...] = ()

    @property
    def n_birge_steps(self) -> int:
        return sum(1 for s in self.steps if s.role == ROLE_STEP)

    @property
    def n_stages(self) -> int:
        """Approximating stages: Birge steps plus pair range queries."""
        return self.n_birge_steps + sum(1 for s in self.steps if s.role == ROLE_PAIR_LEAD)


@dataclass(frozen=True)
class FactorRecipe:
    pattern: str
    p: int
    m: int
    block: str  # "2413" or "3142"


def _pos_of(pattern: str) -> dict[int, int]:
    return {int(d): i + 1 for i, d in enumerate(pattern)}


def _sides(pattern: str, p: int, m: int) -> tuple[dict[int, bool], dict[int, bool]]:
    """(left?, below?) per element."""
    pos = _pos_of(pattern)
    left = {e: pos[e] <= p for e in range(1, 6)}
    below = {e: e <= m for e in range(1, 6)}
    return left, below


def _resolved(pattern: str, p: int, m: int, fixed: set[int], e: int, u: int, axis: int) -> bool:
    """Is the (e, u) order constraint on this axis implied without knowing
    either coordinate?  Geometry (different quadrant sides) or transitivity
    through a fixed element's coordinate."""
    pos = _pos_of(pattern)
    left, below = _sides(pattern, p, m)
    if axis == AXIS_POS:
        if left[e] != left[u]:
            return True
        ke, ku = pos[e], pos[u]
        return any(min(ke, ku) < pos[g] < max(ke, ku) for g in fixed)
    if below[e] != below[u]:
        return True
    return any(min(e, u) < g < max(e, u) for g in fixed)


def classify(pattern: str, p: int, m: int, fixed: int, order: tuple[int, ...]) -> tuple[Step, ...]:
    """Assign a role to every element of ``order``; raises InvalidRecipe."""
    pos = _pos_of(pattern)
    fixed_set = {fixed}
    out: list[Step] = []
    idx = 0
    while idx < len(order):
        e = order[idx]
        later = order[idx + 1 :]
        live_pos = [u for u in later if not _resolved(pattern, p, m, fixed_set, e, u, AXIS_POS)]
        live_val = [u for u in later if not _resolved(pattern, p, m, fixed_set, e, u, AXIS_VAL)]
        if not live_pos and not live_val:
            out.append(Step(e, ROLE_SINGLETON))
            idx += 1
            continue
        partners = set(live_pos) | set(live_val)
        if len(partners) == 1 and later and later[0] in partners:
            u = later[0]
            u_later = later[1:]
            u_live = [w for w in u_later
                      if not _resolved(pattern, p, m, fixed_set, u, w, AXIS_POS)
                      or not _resolved(pattern, p, m, fixed_set, u, w, AXIS_VAL)]
            if not u_live:
                both = bool(live_pos) and bool(live_val)
                a, b = (e, u) if pos[e] < pos[u] else (u, e)
                if both:
                    kind = PAIR_12 if a < b else PAIR_21
                elif live_pos:
                    kind = PAIR_XDOM
                else:
                    kind = PAIR_YDOM
                out.append(Step(e, ROLE_PAIR_LEAD, pair_kind=kind))
                out.append(Step(u, ROLE_PAIR_TAIL))
                idx += 2
                continue
        # must be a Birge step on exactly one axis
        if live_pos and live_val:
            raise InvalidRecipe(f"{pattern} {p}|{m}: element {e} live on both axes")
        axis = AXIS_POS if live_pos else AXIS_VAL
        live = live_pos if live_pos else live_val
        if axis == AXIS_POS:
            orient = [pos[e] < pos[u] for u in live]
        else:
            orient = [e < u for u in live]
        if len(set(orient)) > 1:
            raise InvalidRecipe(f"{pattern} {p}|{m}: element {e} has mixed-orientation live constraints")
        # constraints e < u relax as e's coordinate decreases: counts are
        # nonincreasing along an ascending scan
        out.append(Step(e, ROLE_STEP, axis=axis, ascending=orient[0]))
        fixed_set.add(e)
        idx += 1
    return tuple(out)


def check_recipe(r: Recipe) -> tuple[bool, str]:
    """Validate a recipe; returns (valid, reason)."""
    if sorted((r.fixed,) + r.order) != [1, 2, 3, 4, 5]:
        return False, "elements must be 1..5 exactly once"
    if not (1 <= r.p <= 4 and 1 <= r.m <= 4):
        return False, "configuration splits must be in 1..4"
    try:
        classify(r.pattern, r.p, r.m, r.fixed, r.order)
    except InvalidRecipe as exc:
        return False, str(exc)
    return True, ""


def make_recipe(pattern: str, p: int, m: int, fixed: int, order: tuple[int, ...]) -> Recipe:
    steps = classify(pattern, p, m, fixed, order)
    return Recipe(pattern, p, m, fixed, order, steps)


def _factor_block(pattern: str, p: int, m: int) -> str | None:
    """If the configuration is a lone corner element with the other four in
    the opposite corner, return the standardized 4-element block pattern."""
    if p not in (1, 4) or m not in (1, 4):
        return None
    lone_by_pos = int(pattern[0]) if p == 1 else int(pattern[4])
    lone_by_val = 1 if m == 1 else 5
    if lone_by_pos != lone_by_val:
        return None
    lone = lone_by_pos
    block_vals = [int(d) for d in pattern if int(d) != lone]
    ranks = sorted(block_vals)
    return "".join(str(ranks.index(v) + 1) for v in block_vals)


def search_recipe(pattern: str, p: int, m: int) -> Recipe | FactorRecipe:
    """Canonical search for one (pattern, configuration) pair."""
    elems = list(range(1, 6))
    best: tuple | None = None
    for fixed in elems:
        rest = tuple(e for e in elems if e != fixed)
        for order in permutations(rest):
            try:
                steps = classify(pattern, p, m, fixed, order)
            except InvalidRecipe:
                continue
            n_steps = sum(1 for s in steps if s.role == ROLE_STEP)
            n_val = sum(1 for s in steps if s.role == ROLE_STEP and s.axis == AXIS_VAL)
            key = (n_steps, n_val, fixed, order)
            if best is None or key < best[0]:
                best = (key, Recipe(pattern, p, m, fixed, order, steps))
    if best is not None:
        return best[1]
    block = _factor_block(pattern, p, m)
    if block in ("2413", "3142"):
        return FactorRecipe(pattern, p, m, block)
    raise CoverageGap(pattern, (p, m))


def search_recipes(k: int = 5) -> dict[tuple[str, int, int], Recipe | FactorRecipe]:
    """The full table: every 5-pattern x every (p, m) in {1..4}^2."""
    if k != 5:
        raise ValueError("the generator covers k = 5")
    from .perm import all_patterns

    table: dict[tuple[str, int, int], Recipe | FactorRecipe] = {}
    for sig in all_patterns(5):
        name = str(sig)
        for p in range(1, 5):
            for m in range(1, 5):
                table[(name, p, m)] = search_recipe(name, p, m)
    return table


# --- text format -----------------------------------------------------------


def _emit_line(entry: Recipe | FactorRecipe) -> str:
    pat = entry.pattern
    head = f"{pat[:entry.p]}|{pat[entry.p:]}, horizontal below{entry.m}"
    if isinstance(entry, FactorRecipe):
        return f"{head} ---> FACTOR {entry.block}"
    tail = ", ".join(str(e) for e in (entry.fixed,) + entry.order)
    return f"{head} ---> {tail}"


def emit_table(table: dict[tuple[str, int, int], Recipe | FactorRecipe]) -> str:
    lines = [_emit_line(table[key]) for key in sorted(table)]
    return "\n".join(lines) + "\n"


def parse_line(line: str, lineno: int = 0) -> Recipe | FactorRecipe:
    try:
        head, tail = line.split("--->")
    except ValueError:
        raise ParseError(lineno, "missing '--->' separator") from None
    head = head.strip().rstrip(",").strip()
    parts = [s.strip() for s in head.split(",")]
    if len(parts) != 2 or not parts[1].startswith("horizontal below"):
        raise ParseError(lineno, f"malformed configuration {head!r}")
    patpart = parts[0]
    if patpart.count("|") != 1:
        raise ParseError(lineno, "pattern must contain one vertical bar")
    lefts, rights = patpart.split("|")
    pattern = lefts + rights
    if sorted(pattern) != ["1", "2", "3", "4", "5"]:
        raise ParseError(lineno, f"not a 5-pattern: {pattern!r}")
    p = len(lefts)
    try:
        m = int(parts[1][len("horizontal below"):])
    except ValueError:
        raise ParseError(lineno, "malformed horizontal split") from None
    if not (1 <= p <= 4 and 1 <= m <= 4):
        raise ParseError(lineno, f"splits out of range: p={p}, m={m}")
    tail = tail.strip()
    if tail.startswith("FACTOR"):
        block = tail[len("FACTOR"):].strip()
        if block not in ("2413", "3142"):
            raise ParseError(lineno, f"unknown factor block {block!r}")
        return FactorRecipe(pattern, p, m, block)
    try:
        elems = tuple(int(s.strip()) for s in tail.split(","))
    except ValueError:
        raise ParseError(lineno, f"malformed element list {tail!r}") from None
    if sorted(elems) != [1, 2, 3, 4, 5]:
        raise ParseError(lineno, "element list must name 1..5 exactly once")
    try:
        return make_recipe(pattern, p, m, elems[0], elems[1:])
    except InvalidRecipe as exc:
        raise ParseError(lineno, f"invalid recipe: {exc}") from None


def parse_table(text: str) -> dict[tuple[str, int, int], Recipe | FactorRecipe]:
    table: dict[tuple[str, int, int], Recipe | FactorRecipe] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        entry = parse_line(line, lineno)
        table[(entry.pattern, entry.p, entry.m)] = entry
    return table


def load_default_table() -> dict[tuple[str, int, int], Recipe | FactorRecipe]:
    """The table shipped with the package (regenerable via the CLI)."""
    from importlib.resources import files

    text = files("patcount").joinpath("data/recipes-k5.txt").read_text()
    return parse_table(text)
