"""Deciding which generators participate in an identity product.

Given a finite list A of UT(n, Z) matrices, find the subset of generators
whose inverse lies in the monoid generated by A; the identity is a nonempty
product over A exactly when that subset is nonempty.  Each pass presents the
subgroup generated by the surviving generators, counts signed generator
occurrences in the relations, and solves {Mv = 0, sum(v) = 1, v >= 0}:

  * a solution v is a nonnegative homomorphism to the reals vanishing on all
    relations, so generators with v_i > 0 can never occur in an identity
    product and are removed;
  * no solution yields an integer u with M^t u >= 1, exhibiting a product of
    relations that proves every surviving generator invertible over the
    survivors (the saturation argument for submonoids of nilpotent groups).

Every pass is recorded in a certificate bundle that verify_bundle re-checks
from scratch -- relation words re-evaluated, occurrence counts recounted,
certificates re-substituted -- without ever calling the solver again.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lp import (
    Infeasible,
    relative_interior_solution,
    solve_feasibility,
    verify_farkas,
    verify_feasible,
)
from .matrix import identity
from .presentation import RelationSet, exponent_matrix, subgroup_relations
from .words import WordEvaluator, relabel, word_indices


@dataclass(frozen=True)
class ProblemInstance:
    """A finite ordered list of UT(n, Z) generators, duplicates allowed."""

    n: int
    generators: tuple

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"dimension must be >= 1, got {self.n}")
        for g in self.generators:
            if g.n != self.n:
                raise ValueError(f"generator lives in UT({g.n}), instance says UT({self.n})")


@dataclass(frozen=True)
class Removal:
    """Pass pruned the support of v: kept indices are exactly the zeros of v."""

    v: tuple


@dataclass(frozen=True)
class Terminal:
    """Pass proved every surviving generator invertible; u is the Farkas vector."""

    u: tuple


@dataclass(frozen=True)
class RoundCertificate:
    indices: tuple  # surviving generator indices, ascending
    relations: RelationSet  # identity words over those indices
    matrix: object  # ExponentMatrix of the relations
    outcome: object  # Removal or Terminal


@dataclass(frozen=True)
class CertificateBundle:
    rounds: tuple
    result_indices: tuple


def _round(instance, indices):
    chosen = [instance.generators[i] for i in indices]
    local = subgroup_relations(chosen)
    relations = RelationSet(tuple(relabel(w, indices) for w in local))
    return relations, exponent_matrix(relations, indices)


def find_invertible_subset(instance):
    """Return (invertible indices, certificate bundle); Algorithm 1 end to end."""
    indices = list(range(len(instance.generators)))
    rounds = []
    while indices:
        relations, matrix = _round(instance, indices)
        v = relative_interior_solution(matrix)
        if v is None:
            outcome = solve_feasibility(matrix)
            if not isinstance(outcome, Infeasible):
                raise AssertionError("solver disagreed with itself on feasibility")
            rounds.append(RoundCertificate(tuple(indices), relations, matrix, Terminal(outcome.u)))
            return tuple(indices), CertificateBundle(tuple(rounds), tuple(indices))
        rounds.append(RoundCertificate(tuple(indices), relations, matrix, Removal(tuple(v))))
        indices = [i for i, vi in zip(indices, v) if vi == 0]
    return (), CertificateBundle(tuple(rounds), ())


def decide_identity(instance):
    """Is the identity matrix a nonempty product over the generators?"""
    result, _ = find_invertible_subset(instance)
    return bool(result)


def verify_bundle(instance, bundle, claimed):
    """Re-check a bundle against an instance without re-running the solver."""
    ok, _ = verify_bundle_detail(instance, bundle, claimed)
    return ok


def verify_bundle_detail(instance, bundle, claimed):
    """(ok, diagnostic): diagnostic is 'ok' or the first failed check's name."""
    claimed = tuple(sorted(claimed))
    count = len(instance.generators)
    if tuple(sorted(bundle.result_indices)) != claimed:
        return False, "result-differs-from-claimed"
    if count == 0:
        if bundle.rounds or claimed:
            return False, "empty-instance-with-rounds"
        return True, "ok"
    if not bundle.rounds:
        return False, "missing-rounds"
    one = identity(instance.n)
    evaluate = WordEvaluator(instance.generators)
    expected_indices = tuple(range(count))
    for pos, rnd in enumerate(bundle.rounds):
        if tuple(rnd.indices) != expected_indices:
            return False, "index-chain-broken"
        if not rnd.indices:
            return False, "empty-round"
        index_set = set(rnd.indices)
        for word in rnd.relations:
            if not word_indices(word) <= index_set:
                return False, "relation-uses-removed-generator"
            if evaluate(word) != one:
                return False, "relation-not-identity"
        try:
            recount = exponent_matrix(rnd.relations, rnd.indices)
        except ValueError:
            return False, "matrix-recount-failed"
        if recount != rnd.matrix:
            return False, "matrix-differs-from-relations"
        outcome = rnd.outcome
        if isinstance(outcome, Removal):
            try:
                if not verify_feasible(rnd.matrix, outcome.v):
                    return False, "removal-vector-rejected"
            except (TypeError, ValueError):
                return False, "removal-vector-rejected"
            survivors = tuple(i for i, vi in zip(rnd.indices, outcome.v) if vi == 0)
            if pos + 1 < len(bundle.rounds):
                expected_indices = survivors
            elif survivors:
                return False, "rounds-stop-early"
            else:
                expected_indices = ()
        elif isinstance(outcome, Terminal):
            if pos + 1 != len(bundle.rounds):
                return False, "terminal-round-not-last"
            try:
                if not verify_farkas(rnd.matrix, outcome.u):
                    return False, "farkas-vector-rejected"
            except (TypeError, ValueError):
                return False, "farkas-vector-rejected"
            expected_indices = tuple(rnd.indices)
        else:
            return False, "unknown-outcome"
    if tuple(sorted(bundle.result_indices)) != tuple(sorted(expected_indices)):
        return False, "result-differs-from-rounds"
    return True, "ok"
