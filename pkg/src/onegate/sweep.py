"""Exhaustive check of the universality theorem over all one-to-one gates of a given width."""

from __future__ import annotations

import hashlib
import itertools
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .basis import extract_basis, extract_not, fanout_candidates
from .errors import OnegateError, TrivialGateError
from .gate import Gate, classify

CHUNK = 2048
MAX_SWEEP_BITS = 3


@dataclass
class SweepResult:
    bits: int
    start: int
    stop: int
    gates: int = 0
    wire_permutations: int = 0
    affine_one_to_one: int = 0
    non_affine_one_to_one: int = 0
    not_failures: int = 0
    not_failures_wire_permutations: int = 0
    basis_kits_verified: int = 0
    basis_failures: list = field(default_factory=list)
    fanout_audit_failures: list = field(default_factory=list)
    kit_digest: str = ""

    @property
    def ok(self) -> bool:
        return (
            self.not_failures == self.not_failures_wire_permutations
            and self.not_failures_wire_permutations == self.wire_permutations
            and self.basis_kits_verified == self.non_affine_one_to_one
            and not self.basis_failures
            and not self.fanout_audit_failures
        )

    def as_dict(self) -> dict:
        return {
            "bits": self.bits,
            "range": [self.start, self.stop],
            "gates": self.gates,
            "wire_permutations": self.wire_permutations,
            "affine_one_to_one": self.affine_one_to_one,
            "non_affine_one_to_one": self.non_affine_one_to_one,
            "not_failures": self.not_failures,
            "not_failures_wire_permutations": self.not_failures_wire_permutations,
            "basis_kits_verified": self.basis_kits_verified,
            "basis_failures": self.basis_failures,
            "fanout_audit_failures": self.fanout_audit_failures,
            "kit_digest": self.kit_digest,
            "ok": self.ok,
        }

    def summary(self) -> str:
        wp = "wire permutations" if self.not_failures == self.not_failures_wire_permutations else (
            f"{self.not_failures_wire_permutations} wire permutations"
        )
        return (
            f"{self.gates} gates, {self.not_failures} NOT-failures ({wp}), "
            f"{self.non_affine_one_to_one} non-affine one-to-one, "
            f"{self.basis_kits_verified} basis kits verified"
        )


def _check_chunk(args):
    bits, start, stop = args
    size = 1 << bits
    rows = []
    perms = itertools.islice(itertools.permutations(range(size)), start, stop)
    for index, perm in enumerate(perms, start):
        g = Gate("perm", bits, bits, perm)
        cls = classify(g)
        try:
            extract_not(g)
            not_ok = True
        except TrivialGateError:
            not_ok = False
        sig = None
        kit_error = None
        fanout_ok = True
        if not cls.affine:
            fanout_ok = next(fanout_candidates(g), None) is not None
            try:
                kit = extract_basis(g)
                sig = hashlib.sha256(
                    json.dumps(kit.as_dict()["gadgets"], sort_keys=True).encode()
                ).digest()
            except OnegateError as exc:
                kit_error = f"{type(exc).__name__}: {exc}"
        rows.append((index, cls.affine, cls.wire_permutation, not_ok, fanout_ok, sig, kit_error))
    return rows


def parse_range(text: str, total: int) -> tuple[int, int]:
    """``"a..b"`` is the half-open index range [a, b); either end may be omitted."""
    lo, sep, hi = text.partition("..")
    if not sep:
        raise ValueError(f"range must look like a..b, got {text!r}")
    start = int(lo) if lo else 0
    stop = int(hi) if hi else total
    if not 0 <= start <= stop <= total:
        raise ValueError(f"range {start}..{stop} outside 0..{total}")
    return start, stop


def sweep(bits: int = 3, start: int = 0, stop: int | None = None, workers: int = 1,
          progress=None) -> SweepResult:
    """Classify and extract a basis from every permutation gate on ``bits`` bits.

    Permutations are taken in ``itertools.permutations`` order; ``start``/``stop``
    select a slice of that order for sharding. Counts and the kit digest do not
    depend on ``workers``.
    """
    if not 1 <= bits <= MAX_SWEEP_BITS:
        raise ValueError(f"sweep supports 1..{MAX_SWEEP_BITS} bits")
    total = math.factorial(1 << bits)
    stop = total if stop is None else stop
    if not 0 <= start <= stop <= total:
        raise ValueError(f"range {start}..{stop} outside 0..{total}")

    chunks = [(bits, a, min(a + CHUNK, stop)) for a in range(start, stop, CHUNK)]
    result = SweepResult(bits, start, stop)
    digest = hashlib.sha256()

    if workers > 1:
        pool = ProcessPoolExecutor(max_workers=workers)
        results = pool.map(_check_chunk, chunks)
    else:
        pool = None
        results = map(_check_chunk, chunks)
    try:
        for rows in results:
            for index, affine, wire_perm, not_ok, fanout_ok, sig, kit_error in rows:
                result.gates += 1
                result.wire_permutations += wire_perm
                if affine:
                    result.affine_one_to_one += 1
                else:
                    result.non_affine_one_to_one += 1
                if not not_ok:
                    result.not_failures += 1
                    result.not_failures_wire_permutations += wire_perm
                if not fanout_ok:
                    result.fanout_audit_failures.append(index)
                if kit_error:
                    result.basis_failures.append([index, kit_error])
                elif sig is not None:
                    result.basis_kits_verified += 1
                    digest.update(sig)
            if progress:
                progress(result.gates, stop - start)
    finally:
        if pool is not None:
            pool.shutdown()
    result.kit_digest = digest.hexdigest()
    return result
