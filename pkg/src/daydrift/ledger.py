"""Exact accounting for the round-trip trader: cash, costs, mark-to-market.

Cash and costs are held in integer micro-currency (1e-6 units) so that
conservation identities can be asserted exactly, with no float drift.  A
fill moves cash by the full fill-price value of the trade: a buy pays the
notional plus the half-spread cost, a sell receives the notional minus it.
Mark-to-market gains are float currency; they value a held book against
the day's mid move and are kept per day so gain and cost can be compared
day by day.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

MICRO_PER_UNIT = 10**6
_MICRO_LIMIT = 2**63 - 1  # ledger halts rather than exceeding i64 micro range


class AccountingError(OverflowError):
    """A ledger quantity left the representable micro-currency range."""


def to_micro(amount: float) -> int:
    """Currency to integer micro-currency, rounding half to even."""
    micro = round(amount * MICRO_PER_UNIT)
    if abs(micro) > _MICRO_LIMIT:
        raise AccountingError(f"{amount} does not fit in micro-currency range")
    return micro


def from_micro(micro: int) -> float:
    return micro / MICRO_PER_UNIT


@dataclass(frozen=True)
class Fill:
    """Audit record of one executed order (notional and cost in micro)."""

    fill_price: float
    signed_notional_micro: int
    cost_micro: int


@dataclass(frozen=True)
class Ledger:
    """Value-semantics account: every operation returns a new ledger."""

    cash_micro: int = 0
    cumulative_cost_micro: int = 0
    book_value_at_mark: float = 0.0
    period_cost_micro: int = 0  # costs accrued since the last mark
    cost_history_micro: tuple[int, ...] = ()
    mtm_history: tuple[tuple[int, float], ...] = ()
    fills: tuple[Fill, ...] = ()

    @property
    def cash(self) -> float:
        return from_micro(self.cash_micro)

    @property
    def cumulative_cost(self) -> float:
        return from_micro(self.cumulative_cost_micro)


def record_fill(ledger: Ledger, fill_price: float, signed_notional: float, cost: float) -> Ledger:
    """Book one fill: cash moves by -(notional + cost), cost accrues.

    ``signed_notional`` is the trade value at the fill price (positive =
    buy).  Aggressive fills always pay the cost, whichever the side.
    """
    if cost < 0:
        raise ValueError(f"cost must be >= 0, got {cost}")
    notional_micro = to_micro(signed_notional)
    cost_micro = to_micro(cost)
    cash = ledger.cash_micro - notional_micro - cost_micro
    if abs(cash) > _MICRO_LIMIT:
        raise AccountingError("cash balance left the micro-currency range")
    total_cost = ledger.cumulative_cost_micro + cost_micro
    if total_cost > _MICRO_LIMIT:
        raise AccountingError("cumulative cost left the micro-currency range")
    return replace(
        ledger,
        cash_micro=cash,
        cumulative_cost_micro=total_cost,
        period_cost_micro=ledger.period_cost_micro + cost_micro,
        fills=ledger.fills + (Fill(fill_price, notional_micro, cost_micro),),
    )


def mark_to_market(ledger: Ledger, book_value: float, mid_prev: float, mid_now: float) -> tuple[float, Ledger]:
    """Value the held book against the mid move; seals one accounting day.

    Returns the gain ``book_value * (mid_now/mid_prev - 1)`` and the ledger
    with the gain appended to its day history and the costs accrued since
    the previous mark sealed into the same day.
    """
    if not mid_prev > 0:
        raise ValueError(f"mid_prev must be positive, got {mid_prev}")
    gain = book_value * ((mid_now - mid_prev) / mid_prev)
    day = len(ledger.mtm_history) + 1
    marked = replace(
        ledger,
        book_value_at_mark=book_value,
        period_cost_micro=0,
        cost_history_micro=ledger.cost_history_micro + (ledger.period_cost_micro,),
        mtm_history=ledger.mtm_history + ((day, gain),),
    )
    return gain, marked


def daily_net_pnl(ledger: Ledger, day: int) -> float:
    """Mark-to-market gain minus spread costs for one recorded day (1-based)."""
    if not 1 <= day <= len(ledger.mtm_history):
        raise KeyError(f"day {day} not in ledger history of {len(ledger.mtm_history)} days")
    _, gain = ledger.mtm_history[day - 1]
    return gain - from_micro(ledger.cost_history_micro[day - 1])
