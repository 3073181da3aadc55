"""Brute-force ground truth by exhaustive enumeration over small alphabets.

Enumeration walks length types first (all nonnegative vectors with a
bounded total), then every assignment of letters, so solution sets can be
sliced by length type without re-running.  All verdicts that depend on a
budget say so; the enumerator falsifies, it never proves anything beyond
its budget.
"""

from __future__ import annotations

import itertools
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .equations import Equation
from .errors import TheoremCheckError
from .words import (
    Morphism,
    Word,
    combinatorial_rank,
    words_of_length,
)

WORKERS_ENV = "WORDEQ_WORKERS"


@dataclass(frozen=True)
class EnumerationBudget:
    """Alphabet and total-image-length bound for one enumeration run."""

    alphabet: tuple[int, ...] = (1, 2)
    max_total_length: int = 10

    def __post_init__(self):
        letters = tuple(sorted(set(self.alphabet)))
        object.__setattr__(self, "alphabet", letters)
        if not letters:
            raise ValueError("the alphabet must not be empty")
        for a in letters:
            if not isinstance(a, int) or a < 1:
                raise ValueError(f"alphabet letters must be positive integers, got {a!r}")
        if self.max_total_length < 0:
            raise ValueError("max_total_length must be nonnegative")

    def describe(self) -> dict:
        return {"alphabet": list(self.alphabet), "max_total_length": self.max_total_length}


def compositions(n: int, total: int):
    """All vectors of n nonnegative integers with the given sum."""
    if n == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(n - 1, total - first):
            yield (first,) + rest


def length_types_up_to(n: int, max_total: int):
    for total in range(max_total + 1):
        yield from compositions(n, total)


@dataclass(frozen=True)
class SolutionSet:
    """Complete, sorted list of the solutions found within a budget."""

    system: tuple[Equation, ...]
    n: int
    budget: EnumerationBudget
    solutions: tuple[Morphism, ...]
    candidates_visited: int
    ranks: tuple[int, ...] | None = None

    def __len__(self):
        return len(self.solutions)

    def __iter__(self):
        return iter(self.solutions)

    def of_length_type(self, lt) -> "SolutionSet":
        wanted = tuple(lt)
        keep = [i for i, h in enumerate(self.solutions) if tuple(h.length_type()) == wanted]
        return self._filtered(keep)

    def of_rank(self, r: int, cap: int | None = None) -> "SolutionSet":
        """Solutions of exact combinatorial rank r (annotating on demand)."""
        annotated = self if self.ranks is not None else rank_annotate(self, cap)
        keep = [i for i, rk in enumerate(annotated.ranks) if rk == r]
        return annotated._filtered(keep)

    def nonerasing(self) -> "SolutionSet":
        keep = [i for i, h in enumerate(self.solutions) if h.is_nonerasing]
        return self._filtered(keep)

    def _filtered(self, indices) -> "SolutionSet":
        return SolutionSet(
            system=self.system,
            n=self.n,
            budget=self.budget,
            solutions=tuple(self.solutions[i] for i in indices),
            candidates_visited=self.candidates_visited,
            ranks=tuple(self.ranks[i] for i in indices) if self.ranks is not None else None,
        )

    def to_json_lines(self) -> str:
        lines = []
        for i, h in enumerate(self.solutions):
            entry = {
                "images": [w.to_text() for w in h.images],
                "length_type": list(h.length_type()),
                "rank": self.ranks[i] if self.ranks is not None else None,
            }
            lines.append(json.dumps(entry))
        return "\n".join(lines)


def _solve_length_types(system, n, alphabet, length_types):
    """Solutions (as image tuples) and candidate count for a batch of length types."""
    sides = [(eq.lhs, eq.rhs) for eq in system]
    found = []
    visited = 0
    word_cache: dict[int, list[tuple[int, ...]]] = {}
    for lt in length_types:
        # a mismatch of side lengths at this length type rules out every candidate
        feasible = True
        for lhs, rhs in sides:
            if sum(lt[x - 1] for x in lhs) != sum(lt[x - 1] for x in rhs):
                feasible = False
                break
        pools = []
        for k in lt:
            if k not in word_cache:
                word_cache[k] = list(words_of_length(alphabet, k))
            pools.append(word_cache[k])
        for images in itertools.product(*pools):
            visited += 1
            if not feasible:
                continue
            ok = True
            for lhs, rhs in sides:
                left: list[int] = []
                for x in lhs:
                    left.extend(images[x - 1])
                right: list[int] = []
                for x in rhs:
                    right.extend(images[x - 1])
                if left != right:
                    ok = False
                    break
            if ok:
                found.append(images)
    return found, visited


def enumerate_solutions(system, budget: EnumerationBudget, n: int | None = None) -> SolutionSet:
    """All morphisms within the budget solving every equation of the system.

    An empty system needs an explicit unknown count and is solved by
    every morphism.  The worker count comes from the WORDEQ_WORKERS
    environment variable (default 1); partitioning is by length type and
    the merged result is sorted, so it does not depend on the schedule.
    """
    system = tuple(system)
    if system:
        n = system[0].n
        if any(eq.n != n for eq in system):
            raise ValueError("equations disagree on the number of unknowns")
    elif n is None:
        raise ValueError("an empty system needs an explicit unknown count")
    lts = list(length_types_up_to(n, budget.max_total_length))
    workers = int(os.environ.get(WORKERS_ENV, "1") or "1")
    if workers > 1 and len(lts) > 1:
        chunks = [lts[i::workers] for i in range(workers)]
        found: list = []
        visited = 0
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part, count in pool.map(
                _solve_chunk, [(system, n, budget.alphabet, chunk) for chunk in chunks]
            ):
                found.extend(part)
                visited += count
    else:
        found, visited = _solve_length_types(system, n, budget.alphabet, lts)
    found.sort(key=lambda images: (tuple(len(w) for w in images), images))
    solutions = tuple(Morphism(tuple(Word(w) for w in images)) for images in found)
    return SolutionSet(
        system=system, n=n, budget=budget, solutions=solutions, candidates_visited=visited
    )


def _solve_chunk(args):
    system, n, alphabet, lts = args
    return _solve_length_types(system, n, alphabet, lts)


def rank_annotate(solset: SolutionSet, cap: int | None = None) -> SolutionSet:
    """Attach exact combinatorial ranks (up to cap, default n) to a solution set."""
    cap = cap or solset.n
    ranks = tuple(combinatorial_rank(h, cap) for h in solset.solutions)
    return SolutionSet(
        system=solset.system,
        n=solset.n,
        budget=solset.budget,
        solutions=solset.solutions,
        candidates_visited=solset.candidates_visited,
        ranks=ranks,
    )


def _first_separating_morphism(subsystem, omitted: Equation, budget, n: int):
    """First morphism within budget solving the subsystem but not the omitted equation."""
    word_cache: dict[int, list[tuple[int, ...]]] = {}
    for lt in length_types_up_to(n, budget.max_total_length):
        pools = []
        for k in lt:
            if k not in word_cache:
                word_cache[k] = list(words_of_length(budget.alphabet, k))
            pools.append(word_cache[k])
        for images in itertools.product(*pools):
            h = Morphism(tuple(Word(w) for w in images))
            if all(eq.holds_for(h) for eq in subsystem) and not omitted.holds_for(h):
                return h
    return None


def independence_check(system, budget: EnumerationBudget) -> dict:
    """Probe whether the system is equivalent to a leave-one-out subsystem.

    The system is equivalent to a proper subsystem exactly when it is
    equivalent to one obtained by dropping a single equation, so only
    those are examined.  A witness solves the remaining equations but not
    the dropped one; verdicts are relative to the budget except for the
    syntactic certainties (dropping a duplicate or trivial equation).
    """
    system = list(system)
    if not system:
        raise ValueError("independence needs at least one equation")
    n = system[0].n
    entries = []
    provably_dependent = False
    all_witnessed = True
    for i, omitted in enumerate(system):
        rest = [eq for j, eq in enumerate(system) if j != i]
        entry: dict = {"omitted_index": i, "omitted": omitted.to_text()}
        if omitted.is_trivial or any(
            (eq.lhs, eq.rhs) in ((omitted.lhs, omitted.rhs), (omitted.rhs, omitted.lhs))
            for eq in rest
        ):
            entry["provably_redundant"] = True
            entry["witness"] = None
            provably_dependent = True
            all_witnessed = False
        else:
            entry["provably_redundant"] = False
            witness = _first_separating_morphism(rest, omitted, budget, n)
            entry["witness"] = (
                [w.to_text() for w in witness.images] if witness is not None else None
            )
            if witness is None:
                all_witnessed = False
        entries.append(entry)
    if provably_dependent:
        verdict = "dependent"
    elif all_witnessed:
        verdict = "independent within budget"
    else:
        verdict = "not separable within budget"
    return {"verdict": verdict, "budget": budget.describe(), "subsystems": entries}


def entire_system_sample(h: Morphism, max_eq_length: int) -> list[Equation]:
    """All equations up to a total length satisfied by the morphism.

    Sides run over all words on the morphism's unknowns; a pair and its
    side-swapped twin count once.  Images of candidate sides are built
    incrementally by extending shorter sides.
    """
    n = h.n
    image_of: dict[tuple[int, ...], tuple[int, ...]] = {(): ()}
    sides_by_len: list[list[tuple[int, ...]]] = [[()]]
    for length in range(1, max_eq_length + 1):
        layer = []
        for shorter in sides_by_len[length - 1]:
            base = image_of[shorter]
            for x in range(1, n + 1):
                side = shorter + (x,)
                image_of[side] = base + h.images[x - 1].letters
                layer.append(side)
        sides_by_len.append(layer)
    out = []
    for llen in range(max_eq_length + 1):
        for rlen in range(llen, max_eq_length - llen + 1):
            for lhs in sides_by_len[llen]:
                for rhs in sides_by_len[rlen]:
                    if llen == rlen and rhs < lhs:
                        continue
                    if image_of[lhs] == image_of[rhs]:
                        out.append(Equation(lhs, rhs, n))
    out.sort(key=lambda eq: (eq.length, eq.lhs, eq.rhs))
    return out


def power_identity_check(s, t, u, v, indices) -> dict:
    """Interpolation-style certificate for families of power identities.

    The two sides are s_0 u_1^i s_1 ... u_m^i s_m and
    t_0 v_1^i t_1 ... v_n^i t_n.  If they agree for m+n distinct
    exponents they agree for every exponent; after checking the premise
    the identity is spot-verified up to max(indices)+5.
    """
    s, t, u, v = list(s), list(t), list(u), list(v)
    m, n = len(u), len(v)
    if m < 1 or n < 1:
        raise ValueError("need at least one repeated factor on each side")
    if len(s) != m + 1 or len(t) != n + 1:
        raise ValueError("separator counts must exceed factor counts by one")
    if any(not w.letters for w in u) or any(not w.letters for w in v):
        raise ValueError("repeated factors must be nonempty")
    idx = sorted(set(indices))
    if len(idx) < m + n or any(i < 0 for i in idx):
        raise ValueError(f"need at least {m + n} distinct nonnegative exponents")

    def build(seps, reps, i):
        word = seps[0]
        for r, sep in zip(reps, seps[1:]):
            word = word + r * i + sep
        return word

    for i in idx:
        if build(s, u, i) != build(t, v, i):
            return {"certified": False, "premise_fails_at": i, "indices": idx}
    top = max(idx) + 5
    for i in range(top + 1):
        if build(s, u, i) != build(t, v, i):
            raise TheoremCheckError(
                f"certified identity failed at exponent {i}",
                report={"indices": idx, "exponent": i},
            )
    return {
        "certified": True,
        "indices": idx,
        "spot_verified_through": top,
        "detail": "identity certified by exponent count, spot-verified",
    }
