"""Verification reports with re-checkable witnesses."""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import Subspace, Vec


@dataclass(frozen=True)
class Witness:
    """A falsifying input together with both sides of the violated identity.

    ``inputs`` are coordinate vectors, so the identity can be re-evaluated at
    the witness and must reproduce lhs != rhs.
    """

    inputs: tuple[Vec, ...]
    lhs: Vec
    rhs: Vec
    note: str = ""


@dataclass(frozen=True)
class Report:
    holds: bool
    identity: str = ""
    witness: Witness | None = None

    def __post_init__(self):
        if self.holds and self.witness is not None:
            raise ValueError("a holding report cannot carry a witness")
        if not self.holds and self.witness is None:
            raise ValueError("a failing report must carry a witness")

    def __bool__(self) -> bool:
        return self.holds


def ok(identity: str = "") -> Report:
    return Report(True, identity)


def fail(identity: str, inputs, lhs, rhs, note: str = "") -> Report:
    return Report(False, identity, Witness(tuple(inputs), tuple(lhs), tuple(rhs), note))


@dataclass(frozen=True)
class HomReport:
    """Result of a homomorphism check, with kernel and image attached."""

    holds: bool
    identity: str = ""
    witness: Witness | None = None
    injective: bool = False
    kernel: Subspace | None = None
    image: Subspace | None = None

    def __bool__(self) -> bool:
        return self.holds
