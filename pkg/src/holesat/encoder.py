"""CNF encodings of k-hole avoidance problems over abstract point sets.

A :class:`HoleProblem` fixes the point count, the structure to forbid, and
encoding flags; :func:`build_instance` compiles it into a
:class:`CnfInstance` with deterministic variable numbering (two builds of
the same problem are byte-identical).

Variables, by registry tag:

==============  ========================================================
``O a b c``     triple (a,b,c) is positively oriented
``E a b c d``   segment ab bounds conv{a,b,c,d} (c,d on the same side)
``G4 a b c d``  {a,b,c,d} is a 4-gon
``I i a b c``   point i lies inside triangle {a,b,c} (a < i < c)
``H3 a b c``    {a,b,c} is a 3-hole
``H k x...``    the k indices x form a k-hole (a k-gon in forbid-gon mode)
``L k a b``     a k-hole left of the directed line a->b exists
``R k a b``     a k-hole right of the directed line a->b exists
``C i j``       sequential-counter register (count-holes mode)
==============  ========================================================

Point indices are 0-based throughout; the model is a canonically labeled
set (x-sorted, sorted around point 0), so all triples (0,a,b) with a < b
are asserted positive. With ``orient_vars="explicit"`` all six O variables
per triple exist and are chained by equality clauses; the default
``"compact"`` mode keeps one variable per sorted triple and resolves other
orderings to possibly negated literals.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Literal, Sequence

from .geometry import _sort_triple

Mode = Literal[
    "two-disjoint-holes",
    "two-interior-disjoint-holes",
    "forbid-hole",
    "forbid-gon",
    "count-holes",
]

MODES = (
    "two-disjoint-holes",
    "two-interior-disjoint-holes",
    "forbid-hole",
    "forbid-gon",
    "count-holes",
)
DISJOINT_MODES = ("two-disjoint-holes", "two-interior-disjoint-holes")

# per-triple variable orderings in explicit mode: the three cyclic
# (positive) images first, then the three transpositions
_PERMS = ((0, 1, 2), (1, 2, 0), (2, 0, 1), (1, 0, 2), (0, 2, 1), (2, 1, 0))


@dataclass(frozen=True)
class HoleProblem:
    """An avoidance problem to be compiled to CNF.

    ``sizes`` holds (k1, k2) for the two disjoint-hole modes and a single
    (k,) otherwise; ``threshold`` is the count-holes bound t (UNSAT proves
    every set has at least t k-holes).
    """

    n: int
    mode: Mode
    sizes: tuple[int, ...]
    threshold: int = 0
    orient_vars: Literal["compact", "explicit"] = "compact"
    hints: bool = False
    relaxed_lr: bool = False
    simplified_h5: bool = False
    directional_defs: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "sizes", tuple(self.sizes))
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.orient_vars not in ("compact", "explicit"):
            raise ValueError(f"unknown orient_vars {self.orient_vars!r}")
        lo, hi, arity = {
            "two-disjoint-holes": (2, 6, 2),
            "two-interior-disjoint-holes": (3, 6, 2),
            "forbid-hole": (3, 6, 1),
            "forbid-gon": (4, 6, 1),
            "count-holes": (3, 6, 1),
        }[self.mode]
        if len(self.sizes) != arity:
            raise ValueError(f"{self.mode} takes {arity} size(s), got {self.sizes}")
        if any(not lo <= k <= hi for k in self.sizes):
            raise ValueError(f"sizes {self.sizes} outside [{lo},{hi}] for {self.mode}")
        if self.mode == "count-holes":
            if self.threshold < 1:
                raise ValueError("count-holes needs threshold >= 1")
        elif self.threshold:
            raise ValueError("threshold only applies to count-holes")
        if self.n < max(self.sizes) or self.n < 3:
            raise ValueError(f"n={self.n} too small for sizes {self.sizes}")
        if self.hints and not (
            self.mode == "two-disjoint-holes" and self.sizes == (5, 5)
        ):
            raise ValueError("hints are only valid for two-disjoint-holes (5,5)")
        if self.relaxed_lr and self.mode != "two-disjoint-holes":
            raise ValueError("relaxed_lr only applies to two-disjoint-holes")

    def key(self) -> str:
        """Stable identifier, used for file names and instance comments."""
        parts = [self.mode, "k" + "-".join(map(str, self.sizes)), f"n{self.n}"]
        if self.mode == "count-holes":
            parts.append(f"t{self.threshold}")
        parts.append(self.orient_vars)
        for flag, name in (
            (self.hints, "hints"),
            (self.relaxed_lr, "relaxedlr"),
            (self.simplified_h5, "simplh5"),
            (self.directional_defs, "dirdefs"),
        ):
            if flag:
                parts.append(name)
        return "-".join(parts)

    @property
    def hole_sizes(self) -> tuple[int, ...]:
        """Distinct hole sizes needing an H-variable family (k >= 4)."""
        if self.mode == "forbid-gon":
            return tuple(k for k in sorted(set(self.sizes)) if k >= 5)
        return tuple(k for k in sorted(set(self.sizes)) if k >= 4)


class VarRegistry:
    """Deterministic bijection between variable tags and DIMACS ids."""

    def __init__(self, problem: HoleProblem):
        self.problem = problem
        self._ids: dict[tuple, int] = {}
        self._tags: list[tuple] = []
        self.family_counts: dict[str, int] = {}
        n = problem.n
        triples = list(itertools.combinations(range(n), 3))
        quads = list(itertools.combinations(range(n), 4))
        if problem.orient_vars == "explicit":
            for t in triples:
                for p in _PERMS:
                    self._add(("O", t[p[0]], t[p[1]], t[p[2]]), "O")
        else:
            for t in triples:
                self._add(("O", *t), "O")
        if n >= 4:
            for a, b, c, d in quads:
                self._add(("E", a, b, c, d), "E")
                self._add(("E", c, d, a, b), "E")
            for q in quads:
                self._add(("G4", *q), "G4")
        if problem.mode != "forbid-gon":
            if n >= 4:
                for a, b, c, d in quads:
                    self._add(("I", b, a, c, d), "I")
                    self._add(("I", c, a, b, d), "I")
            for t in triples:
                self._add(("H3", *t), "H3")
        for k in problem.hole_sizes:
            for x in itertools.combinations(range(n), k):
                self._add(("H", k, *x), f"H{k}")
        if problem.mode in DISJOINT_MODES:
            for k in sorted(set(problem.sizes)):
                for fam in ("L", "R"):
                    for a in range(n):
                        for b in range(n):
                            if a != b:
                                self._add((fam, k, a, b), f"{fam}{k}")
        if problem.mode == "count-holes" and problem.threshold >= 2:
            m = len(list(itertools.combinations(range(n), problem.sizes[0])))
            for i in range(1, m):
                for j in range(1, problem.threshold):
                    self._add(("C", i, j), "C")

    def _add(self, tag: tuple, family: str) -> None:
        self._ids[tag] = len(self._tags) + 1
        self._tags.append(tag)
        self.family_counts[family] = self.family_counts.get(family, 0) + 1

    def __len__(self) -> int:
        return len(self._tags)

    def var(self, *tag) -> int:
        return self._ids[tag]

    def tag_of(self, var: int) -> tuple:
        return self._tags[var - 1]

    def olit(self, a: int, b: int, c: int) -> int:
        """Signed literal asserting that (a,b,c) is positively oriented."""
        if self.problem.orient_vars == "explicit":
            return self._ids[("O", a, b, c)]
        t, parity = _sort_triple(a, b, c)
        return parity * self._ids[("O", *t)]

    def hole_lit(self, k: int, x: Sequence[int]) -> int | None:
        """Variable standing for 'x is a k-hole', or None for k=2."""
        if k == 2:
            return None
        if k == 3:
            return self._ids[("H3", *x)]
        return self._ids[("H", k, *x)]

    def items(self) -> Iterator[tuple[int, tuple]]:
        for i, tag in enumerate(self._tags, start=1):
            yield i, tag


@dataclass
class CnfInstance:
    """A compiled problem: clauses plus per-group provenance counts."""

    problem: HoleProblem
    registry: VarRegistry
    clauses: list[tuple[int, ...]] = field(default_factory=list)
    groups: list[tuple[str, int]] = field(default_factory=list)

    @property
    def num_vars(self) -> int:
        return len(self.registry)

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def add_group(self, label: str, clauses: list[tuple[int, ...]]) -> None:
        for cl in clauses:
            if not cl:
                raise ValueError(f"empty clause in group {label}")
        self.clauses.extend(clauses)
        self.groups.append((label, len(clauses)))

    def write_dimacs(self, path) -> None:
        with open(path, "w") as f:
            f.write(f"c holesat instance {self.problem.key()}\n")
            p = self.problem
            f.write(
                f"c n={p.n} mode={p.mode} sizes={','.join(map(str, p.sizes))}"
                f" threshold={p.threshold} orient-vars={p.orient_vars}"
                f" hints={int(p.hints)} relaxed-lr={int(p.relaxed_lr)}"
                f" simplified-h5={int(p.simplified_h5)}"
                f" directional-defs={int(p.directional_defs)}\n"
            )
            fams = " ".join(
                f"{k}={v}" for k, v in self.registry.family_counts.items()
            )
            f.write(f"c vars {fams} total={self.num_vars}\n")
            for label, count in self.groups:
                f.write(f"c group {label} {count}\n")
            f.write(f"p cnf {self.num_vars} {self.num_clauses}\n")
            out = []
            for cl in self.clauses:
                out.append(" ".join(map(str, cl)) + " 0\n")
                if len(out) >= 65536:
                    f.write("".join(out))
                    out = []
            f.write("".join(out))

    def write_registry(self, path) -> None:
        with open(path, "w") as f:
            f.write(f"# holesat registry {self.problem.key()}\n")
            for i, tag in self.registry.items():
                f.write(f"{i} {' '.join(map(str, tag))}\n")


def load_registry(path) -> dict[int, tuple]:
    """Sidecar registry file back into an id -> tag mapping."""
    out: dict[int, tuple] = {}
    with open(path) as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            out[int(parts[0])] = (parts[1], *map(int, parts[2:]))
    return out


def _eq_clauses(u: int, v: int) -> list[tuple[int, int]]:
    return [(-u, v), (u, -v)]


def _neq_clauses(u: int, v: int) -> list[tuple[int, int]]:
    return [(u, v), (-u, -v)]


def _and_def(
    a: int, conj: Sequence[int], directional: str = "both"
) -> list[tuple[int, ...]]:
    """CNF for a = AND(conj); ``directional`` keeps one implication only.

    ``"fwd"`` keeps a -> AND(conj) (the binary clauses), ``"bwd"`` keeps
    AND(conj) -> a (the long clause), ``"both"`` keeps the biconditional.
    """
    out: list[tuple[int, ...]] = []
    if directional in ("both", "fwd"):
        out.extend((-a, lit) for lit in conj)
    if directional in ("both", "bwd"):
        out.append((a, *(-lit for lit in conj)))
    return out


def emit_orientation_axioms(
    problem: HoleProblem, reg: VarRegistry
) -> list[tuple[str, list[tuple[int, ...]]]]:
    """Families (1)-(3): alternation, signotope axioms, sortedness units."""
    n = problem.n
    groups: list[tuple[str, list[tuple[int, ...]]]] = []
    if problem.orient_vars == "explicit":
        alt: list[tuple[int, ...]] = []
        for a, b, c in itertools.combinations(range(n), 3):
            pos = [reg.var("O", *p) for p in ((a, b, c), (b, c, a), (c, a, b))]
            neg = [reg.var("O", *p) for p in ((b, a, c), (a, c, b), (c, b, a))]
            alt += _eq_clauses(pos[0], pos[1])
            alt += _eq_clauses(pos[1], pos[2])
            alt += _eq_clauses(neg[0], neg[1])
            alt += _eq_clauses(neg[1], neg[2])
            alt += _neq_clauses(pos[0], neg[0])
        groups.append(("alternating", alt))
    # at most one sign change along (abc, abd, acd, bcd) per sorted 4-tuple
    sig: list[tuple[int, ...]] = []
    for a, b, c, d in itertools.combinations(range(n), 4):
        s = (
            reg.olit(a, b, c),
            reg.olit(a, b, d),
            reg.olit(a, c, d),
            reg.olit(b, c, d),
        )
        for i, j, k in ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)):
            sig.append((s[i], -s[j], s[k]))
            sig.append((-s[i], s[j], -s[k]))
    groups.append(("signotope", sig))
    units = [
        (reg.olit(0, a, b),) for a, b in itertools.combinations(range(1, n), 2)
    ]
    groups.append(("sorted-around-first", units))
    return groups


def emit_hole_definitions(
    problem: HoleProblem, reg: VarRegistry
) -> list[tuple[str, list[tuple[int, ...]]]]:
    """Families (4)-(7): E, G4/I, H3, and the per-size hole variables."""
    n = problem.n
    directional = problem.directional_defs and not problem.hints
    groups: list[tuple[str, list[tuple[int, ...]]]] = []

    bounding: list[tuple[int, ...]] = []
    gons: list[tuple[int, ...]] = []
    if n >= 4:
        for a, b, c, d in itertools.combinations(range(n), 4):
            for (p, q, r, s) in ((a, b, c, d), (c, d, a, b)):
                e = reg.var("E", p, q, r, s)
                u = reg.olit(p, q, r)
                v = reg.olit(p, q, s)
                bounding += [(-e, u, -v), (-e, -u, v), (e, u, v), (e, -u, -v)]
            e1 = reg.var("E", a, b, c, d)
            e2 = reg.var("E", c, d, a, b)
            gons += _and_def(
                reg.var("G4", a, b, c, d),
                (e1, e2),
                "bwd" if directional else "both",
            )
            if problem.mode != "forbid-gon":
                gons += _and_def(
                    reg.var("I", b, a, c, d),
                    (-e1, e2),
                    "fwd" if directional else "both",
                )
                gons += _and_def(
                    reg.var("I", c, a, b, d),
                    (e1, -e2),
                    "fwd" if directional else "both",
                )
    groups.append(("bounding-segments", bounding))
    groups.append(("gons-and-containments", gons))

    if problem.mode != "forbid-gon":
        three: list[tuple[int, ...]] = []
        for a, b, c in itertools.combinations(range(n), 3):
            conj = [
                -reg.var("I", i, a, b, c) for i in range(a + 1, c) if i != b
            ]
            three += _and_def(
                reg.var("H3", a, b, c),
                conj,
                "bwd" if directional else "both",
            )
        groups.append(("three-holes", three))

    for k in problem.hole_sizes:
        holes: list[tuple[int, ...]] = []
        for x in itertools.combinations(range(n), k):
            if problem.mode == "forbid-gon":
                conj = [reg.var("G4", *q) for q in itertools.combinations(x, 4)]
            else:
                conj = [reg.var("H3", *t) for t in itertools.combinations(x, 3)]
                if k == 5 and not problem.simplified_h5:
                    conj = [
                        reg.var("G4", *q) for q in itertools.combinations(x, 4)
                    ] + conj
            holes += _and_def(
                reg.var("H", k, *x),
                conj,
                "bwd" if directional else "both",
            )
        label = f"{k}-gons" if problem.mode == "forbid-gon" else f"{k}-holes"
        groups.append((label, holes))
    return groups


def _side_clauses(
    problem: HoleProblem, reg: VarRegistry, k: int, a: int, b: int, fam: str
) -> Iterator[tuple[int, ...]]:
    """Defining clauses for L/R(k, a, b) per the mode's subset schema."""
    n = problem.n
    sign = 1 if fam == "L" else -1
    anchor = a if fam == "L" else b
    other = b if fam == "L" else a
    side_var = reg.var(fam, k, a, b)
    interior = problem.mode == "two-interior-disjoint-holes"
    if interior:
        pool = [i for i in range(n)]
        subsets = itertools.combinations(pool, k)
    elif problem.relaxed_lr:
        pool = [i for i in range(n) if i != other]
        subsets = itertools.combinations(pool, k)
    else:
        rest = [i for i in range(n) if i not in (a, b)]
        subsets = (
            tuple(sorted((anchor, *s)))
            for s in itertools.combinations(rest, k - 1)
        )
    skip = {a, b} if interior else {anchor}
    for x in subsets:
        hole = reg.hole_lit(k, x)
        body = tuple(-sign * reg.olit(a, b, c) for c in x if c not in skip)
        if hole is None:
            yield (side_var, *body)
        else:
            yield (side_var, -hole, *body)


def emit_disjointness(
    problem: HoleProblem, reg: VarRegistry
) -> list[tuple[str, list[tuple[int, ...]]]]:
    """Family (8): side-existence variables and their mutual exclusion."""
    if problem.mode not in DISJOINT_MODES:
        raise ValueError(f"no disjointness constraints in mode {problem.mode}")
    n = problem.n
    k1, k2 = problem.sizes
    clauses: list[tuple[int, ...]] = []
    for k in sorted(set(problem.sizes)):
        for a in range(n):
            for b in range(n):
                if a == b:
                    continue
                clauses.extend(_side_clauses(problem, reg, k, a, b, "L"))
                clauses.extend(_side_clauses(problem, reg, k, a, b, "R"))
    pairings = {(k1, k2), (k2, k1)}
    for ka, kb in sorted(pairings):
        for a in range(n):
            for b in range(n):
                if a != b:
                    clauses.append(
                        (-reg.var("L", ka, a, b), -reg.var("R", kb, a, b))
                    )
    return [("disjointness", clauses)]


def emit_hints(
    problem: HoleProblem, reg: VarRegistry
) -> list[tuple[str, list[tuple[int, ...]]]]:
    """Family (9): 10-point-window facts, plus end exclusions at n=17.

    Every 10 consecutive indices contain a 5-hole (sound because a hole of
    a consecutive window is automatically empty with respect to the whole
    set). At n=17 a 5-hole within the first 7 (last 7) indices would pair
    with the 5-hole guaranteed in the remaining 10 to form a disjoint pair,
    so those are excluded outright.
    """
    if not (problem.mode == "two-disjoint-holes" and problem.sizes == (5, 5)):
        raise ValueError("hints require two-disjoint-holes (5,5)")
    n = problem.n
    clauses: list[tuple[int, ...]] = []
    for i in range(n - 9):
        window = range(i, i + 10)
        clauses.append(
            tuple(reg.var("H", 5, *x) for x in itertools.combinations(window, 5))
        )
    if n == 17:
        for block in (range(0, 7), range(10, 17)):
            for x in itertools.combinations(block, 5):
                clauses.append((-reg.var("H", 5, *x),))
    return [("hints", clauses)]


def emit_cardinality(
    problem: HoleProblem, reg: VarRegistry
) -> list[tuple[str, list[tuple[int, ...]]]]:
    """Count mode: at most threshold-1 of the hole variables are true."""
    if problem.mode != "count-holes":
        raise ValueError("cardinality constraints only in count-holes mode")
    k = problem.sizes[0]
    xs = [
        reg.hole_lit(k, x)
        for x in itertools.combinations(range(problem.n), k)
    ]
    r = problem.threshold - 1
    clauses: list[tuple[int, ...]] = []
    if r == 0:
        clauses = [(-x,) for x in xs]
        return [("cardinality", clauses)]
    # sequential counter: C(i,j) means at least j of the first i inputs hold
    m = len(xs)
    s = lambda i, j: reg.var("C", i, j)
    clauses.append((-xs[0], s(1, 1)))
    for j in range(2, r + 1):
        clauses.append((-s(1, j),))
    for i in range(2, m):
        clauses.append((-xs[i - 1], s(i, 1)))
        clauses.append((-s(i - 1, 1), s(i, 1)))
        for j in range(2, r + 1):
            clauses.append((-xs[i - 1], -s(i - 1, j - 1), s(i, j)))
            clauses.append((-s(i - 1, j), s(i, j)))
        clauses.append((-xs[i - 1], -s(i - 1, r)))
    clauses.append((-xs[m - 1], -s(m - 1, r)))
    return [("cardinality", clauses)]


def emit_forbid(
    problem: HoleProblem, reg: VarRegistry
) -> list[tuple[str, list[tuple[int, ...]]]]:
    """Unit clauses negating every hole (gon) variable of the target size."""
    k = problem.sizes[0]
    if problem.mode == "forbid-gon" and k == 4:
        units = [
            (-reg.var("G4", *q),)
            for q in itertools.combinations(range(problem.n), 4)
        ]
    else:
        units = [
            (-reg.hole_lit(k, x),)
            for x in itertools.combinations(range(problem.n), k)
        ]
    return [("forbid", units)]


def build_instance(problem: HoleProblem) -> CnfInstance:
    """Compile the problem; deterministic for identical problems."""
    reg = VarRegistry(problem)
    inst = CnfInstance(problem, reg)
    for label, clauses in emit_orientation_axioms(problem, reg):
        inst.add_group(label, clauses)
    for label, clauses in emit_hole_definitions(problem, reg):
        inst.add_group(label, clauses)
    if problem.mode in DISJOINT_MODES:
        for label, clauses in emit_disjointness(problem, reg):
            inst.add_group(label, clauses)
        if problem.hints:
            for label, clauses in emit_hints(problem, reg):
                inst.add_group(label, clauses)
    elif problem.mode in ("forbid-hole", "forbid-gon"):
        for label, clauses in emit_forbid(problem, reg):
            inst.add_group(label, clauses)
    elif problem.mode == "count-holes":
        for label, clauses in emit_cardinality(problem, reg):
            inst.add_group(label, clauses)
    return inst


def assignment_from_chirotope(sig, problem: HoleProblem) -> dict[int, bool]:
    """Full variable assignment induced by a canonical signotope.

    O variables follow the signotope, every auxiliary follows its defining
    formula, and L/R follow their existential reading over the mode's
    subset schema; the result satisfies the orientation and definition
    groups outright, and the disjointness group exactly when the signotope
    has no forbidden pair. Used by tests and model verification.
    """
    if sig.n != problem.n:
        raise ValueError(f"signotope has n={sig.n}, problem n={problem.n}")
    reg = VarRegistry(problem)
    val: dict[int, bool] = {}

    def pos(a, b, c):
        return sig.chi(a, b, c) > 0

    for ident, tag in reg.items():
        kind = tag[0]
        if kind == "O":
            val[ident] = pos(tag[1], tag[2], tag[3])
        elif kind == "E":
            _, p, q, r, s = tag
            val[ident] = pos(p, q, r) == pos(p, q, s)
    for ident, tag in reg.items():
        kind = tag[0]
        if kind == "G4":
            _, a, b, c, d = tag
            val[ident] = (
                val[reg.var("E", a, b, c, d)] and val[reg.var("E", c, d, a, b)]
            )
        elif kind == "I":
            _, i, x, y, z = tag
            quad = tuple(sorted((i, x, y, z)))
            a_, b_, c_, d_ = quad
            e1 = val[reg.var("E", a_, b_, c_, d_)]
            e2 = val[reg.var("E", c_, d_, a_, b_)]
            val[ident] = (not e1 and e2) if i == b_ else (e1 and not e2)
    for ident, tag in reg.items():
        if tag[0] == "H3":
            _, a, b, c = tag
            val[ident] = all(
                not val[reg.var("I", i, a, b, c)]
                for i in range(a + 1, c)
                if i != b
            )
    for k in problem.hole_sizes:
        for x in itertools.combinations(range(problem.n), k):
            ident = reg.var("H", k, *x)
            if problem.mode == "forbid-gon":
                ok = all(
                    val[reg.var("G4", *q)]
                    for q in itertools.combinations(x, 4)
                )
            else:
                ok = all(
                    val[reg.var("H3", *t)]
                    for t in itertools.combinations(x, 3)
                )
                if k == 5 and not problem.simplified_h5:
                    ok = ok and all(
                        val[reg.var("G4", *q)]
                        for q in itertools.combinations(x, 4)
                    )
            val[ident] = ok
    if problem.mode in DISJOINT_MODES:
        for k in sorted(set(problem.sizes)):
            for fam in ("L", "R"):
                for a in range(problem.n):
                    for b in range(problem.n):
                        if a == b:
                            continue
                        exists = False
                        for cl in _side_clauses(problem, reg, k, a, b, fam):
                            # clause (side, -hole, body...) fires iff some
                            # subset witnesses the side condition
                            if all(val[abs(l)] != (l > 0) for l in cl[1:]):
                                exists = True
                                break
                        val[reg.var(fam, k, a, b)] = exists
    if problem.mode == "count-holes" and problem.threshold >= 2:
        k = problem.sizes[0]
        xs = [
            val[reg.hole_lit(k, x)]
            for x in itertools.combinations(range(problem.n), k)
        ]
        r = problem.threshold - 1
        running = 0
        for i in range(1, len(xs)):
            running += xs[i - 1]
            for j in range(1, r + 1):
                val[reg.var("C", i, j)] = running >= j
    return val


def violated_clauses(
    inst: CnfInstance, assignment: dict[int, bool], limit: int = 10
) -> list[tuple[str, tuple[int, ...]]]:
    """Up to ``limit`` (group label, clause) pairs the assignment falsifies."""
    out = []
    pos = 0
    for label, count in inst.groups:
        for cl in inst.clauses[pos : pos + count]:
            if not any(assignment[abs(l)] == (l > 0) for l in cl):
                out.append((label, cl))
                if len(out) >= limit:
                    return out
        pos += count
    return out
