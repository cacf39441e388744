"""Monomial orders: degrevlex, lex, and block (elimination) orders.

An order is exposed as a key function on exponent tuples: bigger key means
bigger monomial. degrevlex refines total degree, which the affine Hilbert
machinery requires; block orders are product orders with the front block
compared first, giving the elimination property.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class MonomialOrder:
    kind: str                                   # "degrevlex" | "lex" | "block"
    perm: tuple[int, ...] | None = None         # variable priority, highest first
    front: tuple[int, ...] | None = None        # block order: indices compared first

    def __post_init__(self):
        if self.kind not in ("degrevlex", "lex", "block"):
            raise ValueError(f"unknown order kind {self.kind!r}")
        if self.kind == "block" and not self.front:
            raise ValueError("block order needs a nonempty front variable set")

    @property
    def degree_compatible(self) -> bool:
        return self.kind == "degrevlex"

    def cache_key(self):
        return (self.kind, self.perm, self.front)

    def key(self, nvars: int):
        """Key function exps -> tuple; larger key = larger monomial."""
        if self.kind == "degrevlex":
            perm = self.perm
            if perm is None:
                def key_drl(e):
                    return (sum(e), tuple(-x for x in reversed(e)))
                return key_drl

            def key_drl_perm(e):
                pe = tuple(e[i] for i in perm)
                return (sum(pe), tuple(-x for x in reversed(pe)))
            return key_drl_perm

        if self.kind == "lex":
            perm = self.perm if self.perm is not None else tuple(range(nvars))

            def key_lex(e):
                return tuple(e[i] for i in perm)
            return key_lex

        # block: degrevlex on the front block, then degrevlex on the rest
        front = self.front
        rest = tuple(i for i in range(nvars) if i not in front)
        rfront = front[::-1]
        rrest = rest[::-1]

        def key_block(e):
            fe = [-e[i] for i in rfront]
            re = [-e[i] for i in rrest]
            return (-sum(fe), tuple(fe), -sum(re), tuple(re))
        return key_block

    def negkey(self, nvars: int):
        """Order-reversing key: smaller means bigger monomial (for heaps)."""
        if self.kind == "degrevlex":
            perm = self.perm
            if perm is None:
                def nkey_drl(e):
                    return (-sum(e), tuple(reversed(e)))
                return nkey_drl

            def nkey_drl_perm(e):
                pe = tuple(e[i] for i in perm)
                return (-sum(pe), tuple(reversed(pe)))
            return nkey_drl_perm

        if self.kind == "lex":
            perm = self.perm if self.perm is not None else tuple(range(nvars))

            def nkey_lex(e):
                return tuple(-e[i] for i in perm)
            return nkey_lex

        front = self.front
        rest = tuple(i for i in range(nvars) if i not in front)
        rfront = front[::-1]
        rrest = rest[::-1]

        def nkey_block(e):
            fe = [e[i] for i in rfront]
            re = [e[i] for i in rrest]
            return (-sum(fe), tuple(fe), -sum(re), tuple(re))
        return nkey_block


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


def lex_order(perm: tuple[int, ...] | None = None) -> MonomialOrder:
    return MonomialOrder("lex", perm=perm)


def elimination_order(front: tuple[int, ...]) -> MonomialOrder:
    return MonomialOrder("block", front=tuple(sorted(front)))


def compare_monomials(m1: tuple[int, ...], m2: tuple[int, ...],
                      order: MonomialOrder) -> int:
    """-1, 0 or 1 as m1 <, =, > m2 under the order."""
    if len(m1) != len(m2):
        raise ValueError("monomials have different variable counts")
    k = order.key(len(m1))
    k1, k2 = k(m1), k(m2)
    if k1 < k2:
        return -1
    if k1 > k2:
        return 1
    return 0
