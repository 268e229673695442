"""Round-trip trader: buys a fixed leg at one tick, sells it back at a later one.

The trader holds a large levered book that is never traded intraday; the
legs are a separate, exactly offsetting round trip.  Splitting one trader
into n smaller ones divides the book and the legs but leaves the aggregate
order flow per tick unchanged, so the market sees the same trades while
each participant pays 1/n of the spread cost.
"""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class RoundTripTrader:
    """One participant doing the same intraday buy/sell round trip every day.

    A negative ``leg_notional`` flips the legs: sell at ``buy_tick``, buy
    back at ``sell_tick`` (the contract-first variant of the schedule).
    """

    capital: float
    leverage: float
    leg_notional: float
    buy_tick: int
    sell_tick: int
    enabled: bool = True
    agent_id: str = "M"

    def __post_init__(self):
        if not self.capital > 0:
            raise ValueError(f"capital must be positive, got {self.capital}")
        if not self.leverage > 0:
            raise ValueError(f"leverage must be positive, got {self.leverage}")
        if abs(self.leg_notional) > self.book_value:
            raise ValueError(
                f"leg_notional {self.leg_notional} exceeds book value {self.book_value}"
            )
        if not 0 <= self.buy_tick < self.sell_tick:
            raise ValueError(
                f"need 0 <= buy_tick < sell_tick, got buy={self.buy_tick} sell={self.sell_tick}"
            )

    @property
    def book_value(self) -> float:
        """Marked book notional: capital times leverage."""
        return self.capital * self.leverage


@dataclass(frozen=True)
class OrderIntent:
    """A single aggressive order: positive notional buys, negative sells."""

    signed_notional: float
    tick: int
    agent_id: str


def orders_for_tick(agent: RoundTripTrader, t: int, notional_scale: float = 1.0) -> list[OrderIntent]:
    """Orders the agent submits at tick ``t`` (empty when disabled or off-schedule).

    ``notional_scale`` is a hook for slow book-growth scenarios; at the
    default of 1.0 the legs are identical every day.
    """
    if not agent.enabled or agent.leg_notional == 0:
        return []
    if t == agent.buy_tick:
        return [OrderIntent(agent.leg_notional * notional_scale, t, agent.agent_id)]
    if t == agent.sell_tick:
        return [OrderIntent(-agent.leg_notional * notional_scale, t, agent.agent_id)]
    return []


def split_trader(n: int, template: RoundTripTrader) -> list[RoundTripTrader]:
    """Split one trader into ``n`` equal smaller ones with the same schedule.

    Each clone carries 1/n of the capital, book, and leg notional; summed
    over the clones the per-tick order flow equals the template's exactly.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n == 1:
        return [template]
    return [
        replace(
            template,
            capital=template.capital / n,
            leg_notional=template.leg_notional / n,
            agent_id=f"{template.agent_id}{i + 1}",
        )
        for i in range(n)
    ]
