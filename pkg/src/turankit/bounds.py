"""Closed-form extremal upper bounds and exact-versus-bound comparison."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .graphs import Graph, GraphError

BOUND_NAMES = ("Hst", "theta_asym", "theta3p", "L3theta3p", "NV_cycle",
               "furedi_cube", "generic_power")


@dataclass(frozen=True)
class BoundSpec:
    name: str
    params: dict = field(default_factory=dict)


@dataclass(frozen=True)
class BoundValue:
    value: float
    exact: int | None      # set when every exponent reduced to an integer
    conditional: bool      # True when the constant was caller-supplied

    def best(self):
        return self.exact if self.exact is not None else self.value


def _int_power(x: int, exp: Fraction):
    """x**exp as an integer when x is a perfect power, else None."""
    if exp.denominator == 1:
        return x ** exp.numerator
    if x == 0:
        return 0
    root = round(x ** (1 / exp.denominator))
    for cand in (root - 1, root, root + 1):
        if cand >= 0 and cand ** exp.denominator == x:
            return cand ** exp.numerator
    return None


def _need(params: dict, *keys) -> list:
    vals = []
    for k in keys:
        if k not in params:
            raise GraphError(f"missing parameter {k!r}")
        vals.append(params[k])
    return vals


def _sum_terms(terms):
    """(float total, exact total or None) for a sum of power products.

    Each term is a list of (base, exponent) factors that get multiplied.
    """
    total = 0.0
    exact: int | None = 0
    for term in terms:
        fl = 1.0
        ex: int | None = 1
        for base, exp in term:
            if base < 0:
                raise GraphError("negative parameter")
            fl *= base ** float(exp)
            if ex is not None:
                piece = _int_power(base, Fraction(exp))
                ex = None if piece is None else ex * piece
        total += fl
        exact = None if ex is None or exact is None else exact + ex
    return total, exact


def _scaled(constant: int, terms, conditional=False) -> BoundValue:
    total, exact = _sum_terms(terms)
    return BoundValue(constant * total,
                      None if exact is None else constant * exact,
                      conditional)


def eval_bound(spec: BoundSpec) -> BoundValue:
    """Evaluate one closed-form bound; exact when the exponents allow it."""
    p = spec.params
    if spec.name == "theta3p":
        pp, m, n = _need(p, "p", "m", "n")
        _check_orders(m, n)
        return _scaled(144 * pp ** 3,
                       [[(m * n, Fraction(2, 3))], [(m, 1)], [(n, 1)]])
    if spec.name == "theta_asym":
        k, pp, m, n = _need(p, "k", "p", "m", "n")
        if k < 2 or pp < 1:
            raise GraphError("need k >= 2 and p >= 1")
        _check_orders(m, n)
        c = 16 * k * k * pp ** k
        return _scaled(c, _cycle_terms(k, m, n))
    if spec.name == "NV_cycle":
        k, m, n = _need(p, "k", "m", "n")
        if k < 2:
            raise GraphError("need k >= 2")
        _check_orders(m, n)
        return _scaled(2 * k - 3, _cycle_terms(k, m, n))
    if spec.name == "L3theta3p":
        pp, n = _need(p, "p", "n")
        return _scaled(12 ** 4 * pp ** 6, [[(n, Fraction(7, 5))]])
    if spec.name == "furedi_cube":
        (n,) = _need(p, "n")
        return _scaled(1, [[(n, Fraction(8, 5))], [(2 * n, Fraction(3, 2))]])
    if spec.name == "Hst":
        s, n = _need(p, "s", "n")
        if "C" not in p:
            raise GraphError("Hst bound needs an explicit constant C")
        exp = 2 - Fraction(2, 2 * s + 1)
        total, exact = _sum_terms([[(n, exp)]])
        c = p["C"]
        return BoundValue(c * total,
                          exact * c if exact is not None
                          and isinstance(c, int) else None, True)
    if spec.name == "generic_power":
        num, den, n = _need(p, "num", "den", "n")
        if "C" not in p:
            raise GraphError("generic_power bound needs a constant C")
        total, exact = _sum_terms([[(n, Fraction(num, den))]])
        c = p["C"]
        return BoundValue(c * total,
                          exact * c if exact is not None
                          and isinstance(c, int) else None, True)
    raise GraphError(f"unknown bound {spec.name!r}; expected one of "
                     + ", ".join(BOUND_NAMES))


def _cycle_terms(k: int, m: int, n: int):
    if k % 2 == 1:
        return [[(m * n, Fraction(k + 1, 2 * k))], [(m, 1)], [(n, 1)]]
    return [[(m, Fraction(k + 2, 2 * k)), (n, Fraction(1, 2))],
            [(m, 1)], [(n, 1)]]


def _check_orders(m: int, n: int):
    if m < 0 or n < 0:
        raise GraphError("orders must be nonnegative")
    if m > n:
        raise GraphError("formula requires m <= n")


@dataclass(frozen=True)
class CompareRow:
    orders: tuple[int, ...]
    exact: int
    mode: str
    bound: float
    ratio: float


def compare_exact_vs_bound(pattern: Graph, bound_name: str, params: dict,
                           orders_list, ledger=None, budget=None,
                           seed: int = 0) -> list[CompareRow]:
    """Exact (or best-known) values against a bound over a grid of orders.

    Each orders entry is (n,) for ex or (m, n) for z.  For bounds with an
    explicit constant, an exact value above the bound is an error.
    """
    from .engine import ex_exact, z_exact
    from .graphs import canonical_key
    rows = []
    conditional = bound_name in ("Hst", "generic_power")
    key = canonical_key(pattern)
    for orders in orders_list:
        orders = tuple(orders)
        rec = ledger.lookup(key, orders, "exact") if ledger else None
        if rec is None:
            if len(orders) == 1:
                rec = ex_exact(orders[0], pattern, budget=budget, seed=seed)
            else:
                rec = z_exact(orders[0], orders[1], pattern, budget=budget,
                              seed=seed)
            if ledger is not None:
                ledger.append(rec)
        p = dict(params)
        if len(orders) == 1:
            p["n"] = orders[0]
            p.setdefault("m", orders[0])
        else:
            p["m"], p["n"] = min(orders), max(orders)
        bv = eval_bound(BoundSpec(bound_name, p))
        bound = bv.best()
        ratio = rec.value / bound if bound else math.inf
        if not conditional and rec.mode == "exact" and rec.value > bound:
            raise AssertionError(
                f"exact value {rec.value} exceeds bound {bound} at {orders}")
        rows.append(CompareRow(orders, rec.value, rec.mode, float(bound),
                               ratio))
    return rows


def rows_to_csv(rows) -> str:
    out = ["orders,exact,bound,ratio"]
    for r in rows:
        out.append("%s,%d,%s,%s" % ("x".join(map(str, r.orders)), r.exact,
                                    _sig6(r.bound), _sig6(r.ratio)))
    return "\n".join(out) + "\n"


def _sig6(x: float) -> str:
    return f"{x:.6g}"
