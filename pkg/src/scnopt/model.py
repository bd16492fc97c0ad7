"""Three-echelon supply chain network design model.

The network has suppliers shipping raw material to plants, plants shipping
finished product to distribution centers (DCs), and DCs serving retailers,
over a discrete planning horizon.  A candidate design is encoded as a real
genotype in [0, 1]^L and decoded into facility open/close decisions, flows,
a retailer->DC assignment, and a per-period delivery schedule.  Two objectives
are minimized: total network cost and total delivery-delay quantity (backlog
plus early stock).  Capacity checks that decoding cannot guarantee by
construction are scored as a constraint violation for constraint-domination.

Genotype layout (segment sizes, in order):
    plant keys (K) | DC keys (J) | supplier->plant weights (S*K)
    | plant->DC weights (K*J) | retailer assignment keys (J*I)
    | DC inbound timing weights (J*T)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

__all__ = [
    "Instance",
    "GenotypeLayout",
    "DecodedNetwork",
    "genotype_length",
    "allocate_with_caps",
    "decode",
    "simulate_schedule",
    "eval_total_cost",
    "eval_delay",
    "check_constraints",
    "evaluate",
    "SupplyChainProblem",
    "CONSTRAINT_FAMILIES",
]

# Names of the constraint families scored by check_constraints, in order.
CONSTRAINT_FAMILIES = (
    "dc_holding_capacity",      # on-hand stock within DC holding capacity
    "backorder_limit",          # backlog within the permitted backorder level
    "dc_flow_balance",          # product into each DC covers product out to retailers
    "supplier_capacity",        # raw material drawn from a supplier within its capacity
    "plant_raw_balance",        # raw material into each plant covers its production
    "plant_capacity",           # production within plant capacity
    "single_assignment",        # every retailer served by exactly one DC
    "demand_balance",           # per-period demand sums to horizon demand
)

# Excess smaller than this (relative to the family scale) is treated as zero;
# proportional repair leaves float residue on the order of 1e-16 of the flows.
_EXCESS_RTOL = 1e-9


@dataclass
class Instance:
    """Immutable problem data for one supply chain network design instance.

    Shapes (S suppliers, K plants, J DCs, I retailers, P products, T periods):
        supplier_capacity (S,)            raw-material units per horizon
        plant_capacity (K,)               raw-material-equivalent units per horizon
        dc_capacity (J,)                  holding capacity, product units
        demand (I, P, T)                  retailer demand per product per period
        plant_fixed_cost (K,)             cost of operating a plant
        dc_fixed_cost (J,)                cost of operating a DC
        raw_material_unit_cost (S,)       per raw-material unit
        raw_transport_cost (S, K)         per raw-material unit shipped
        product_transport_plant_dc (K, J) per product unit shipped
        product_transport_dc_retailer (J, I) per product unit shipped
        holding_cost (J,)                 per product unit held per period
        utilization (scalar > 0)          raw-material units consumed per product unit
        backorder_limit (P, J, T)         permitted backlog per cell

    ``currency`` and ``time_unit`` are display metadata only.
    """

    n_suppliers: int
    n_plants: int
    n_dcs: int
    n_retailers: int
    n_products: int
    n_periods: int
    supplier_capacity: np.ndarray
    plant_capacity: np.ndarray
    dc_capacity: np.ndarray
    demand: np.ndarray
    plant_fixed_cost: np.ndarray
    dc_fixed_cost: np.ndarray
    raw_material_unit_cost: np.ndarray
    raw_transport_cost: np.ndarray
    product_transport_plant_dc: np.ndarray
    product_transport_dc_retailer: np.ndarray
    holding_cost: np.ndarray
    utilization: float
    backorder_limit: np.ndarray
    currency: str = "TZS/week"
    time_unit: str = "day"

    def __post_init__(self) -> None:
        array_shapes = {
            "supplier_capacity": (self.n_suppliers,),
            "plant_capacity": (self.n_plants,),
            "dc_capacity": (self.n_dcs,),
            "demand": (self.n_retailers, self.n_products, self.n_periods),
            "plant_fixed_cost": (self.n_plants,),
            "dc_fixed_cost": (self.n_dcs,),
            "raw_material_unit_cost": (self.n_suppliers,),
            "raw_transport_cost": (self.n_suppliers, self.n_plants),
            "product_transport_plant_dc": (self.n_plants, self.n_dcs),
            "product_transport_dc_retailer": (self.n_dcs, self.n_retailers),
            "holding_cost": (self.n_dcs,),
            "backorder_limit": (self.n_products, self.n_dcs, self.n_periods),
        }
        for name, shape in array_shapes.items():
            value = np.asarray(getattr(self, name), dtype=float)
            if value.shape != shape:
                raise ValueError(f"{name} must have shape {shape}, got {value.shape}")
            object.__setattr__(self, name, value)
        self.utilization = float(self.utilization)

    @property
    def dimensions(self) -> tuple[int, int, int, int, int, int]:
        return (
            self.n_suppliers,
            self.n_plants,
            self.n_dcs,
            self.n_retailers,
            self.n_products,
            self.n_periods,
        )

    @property
    def total_demand(self) -> float:
        return float(self.demand.sum())

    @property
    def genotype_length(self) -> int:
        return genotype_length(self)

    def invariant_problems(self) -> list[str]:
        """Every violated instance invariant, empty when the instance is sound."""
        problems: list[str] = []
        if min(self.dimensions) < 1:
            problems.append("all dimensions must be >= 1")
        if self.utilization <= 0:
            problems.append("utilization must be > 0")
        nonnegative = (
            "supplier_capacity",
            "plant_capacity",
            "dc_capacity",
            "demand",
            "plant_fixed_cost",
            "dc_fixed_cost",
            "raw_material_unit_cost",
            "raw_transport_cost",
            "product_transport_plant_dc",
            "product_transport_dc_retailer",
            "holding_cost",
            "backorder_limit",
        )
        for name in nonnegative:
            value = getattr(self, name)
            if not np.all(np.isfinite(value)):
                problems.append(f"{name} contains non-finite entries")
            elif np.any(value < 0):
                problems.append(f"{name} contains negative entries")
        if np.all(np.isfinite(self.demand)) and np.all(np.isfinite(self.dc_capacity)):
            if self.demand.sum() > self.dc_capacity.sum():
                problems.append(
                    "total demand exceeds total DC holding capacity "
                    f"({self.demand.sum():g} > {self.dc_capacity.sum():g})"
                )
        return problems


def genotype_length(instance: Instance) -> int:
    """Number of genes: K + J + S*K + K*J + J*I + J*T."""
    s, k, j, i, _, t = instance.dimensions
    return k + j + s * k + k * j + j * i + j * t


@dataclass(frozen=True)
class GenotypeLayout:
    """Slices of the flat genotype for each decoded segment."""

    plant_keys: slice
    dc_keys: slice
    supplier_weights: slice
    plant_dc_weights: slice
    assignment_keys: slice
    timing_weights: slice
    length: int

    @classmethod
    def for_instance(cls, instance: Instance) -> "GenotypeLayout":
        s, k, j, i, _, t = instance.dimensions
        bounds = np.cumsum([0, k, j, s * k, k * j, j * i, j * t])
        slices = [slice(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:])]
        return cls(*slices, length=int(bounds[-1]))


@dataclass
class DecodedNetwork:
    """A fully materialized network design: decisions, flows, and schedule.

    Flow arrays: raw_flow (S, K), product_flow (P, K, J), retail_flow (P, J, I);
    schedule arrays inflow / on_hand / backlog are (P, J, T).
    """

    plant_open: np.ndarray
    dc_open: np.ndarray
    assignment: np.ndarray
    raw_flow: np.ndarray
    product_flow: np.ndarray
    retail_flow: np.ndarray
    assigned_demand: np.ndarray
    inflow: np.ndarray
    on_hand: np.ndarray
    backlog: np.ndarray


def allocate_with_caps(
    total: float,
    weights: np.ndarray,
    caps: np.ndarray,
) -> tuple[np.ndarray, float]:
    """Split ``total`` across bins proportionally to ``weights`` without
    exceeding ``caps``.

    Bins whose proportional share overflows are pinned at their cap and the
    remainder is re-spread over the rest; when every positively weighted bin
    is pinned, leftover spreads over remaining capacity.  Returns the
    allocation and the amount that could not be placed (positive only when
    ``total`` exceeds total capacity).
    """
    weights = np.asarray(weights, dtype=float)
    caps = np.asarray(caps, dtype=float)
    if weights.shape != caps.shape or weights.ndim != 1:
        raise ValueError("weights and caps must be 1-D arrays of equal length")
    if np.any(weights < 0) or np.any(caps < 0):
        raise ValueError("weights and caps must be nonnegative")
    allocation = np.zeros_like(caps)
    remaining = float(total)
    if remaining <= 0.0:
        return allocation, 0.0
    tolerance = 1e-12 * max(1.0, remaining)
    active = caps > 0.0
    while remaining > tolerance and active.any():
        w = np.where(active, weights, 0.0)
        if w.sum() <= 0.0:
            w = np.where(active, caps - allocation, 0.0)
        shares = remaining * w / w.sum()
        headroom = caps - allocation
        overflow = active & (shares > headroom)
        if not overflow.any():
            allocation = allocation + shares
            remaining = 0.0
            break
        allocation[overflow] = caps[overflow]
        active &= ~overflow
        remaining = float(total - allocation.sum())
    return allocation, max(remaining, 0.0)


def _one_hot(index: int, size: int) -> np.ndarray:
    out = np.zeros(size, dtype=bool)
    out[index] = True
    return out


def decode(genotype: np.ndarray, instance: Instance) -> DecodedNetwork:
    """Decode a genotype into a concrete network design.

    Pipeline: (1) facility keys >= 0.5 open a plant/DC, with the largest key
    forced open when a whole echelon would close; (2) each retailer goes to
    the open DC with the largest assignment key; (3) retail flows carry each
    retailer's horizon demand from its DC; (4) each DC's demand is spread over
    open plants proportionally to the plant->DC weights, repaired to plant
    capacities; (5) raw-material flows cover production, spread over suppliers
    by weight and repaired to supplier capacities; (6) each DC's inbound total
    is scheduled across periods by its normalized timing weights and the
    stock/backlog recursion is simulated against assigned per-period demand.
    """
    g = np.asarray(genotype, dtype=float)
    layout = GenotypeLayout.for_instance(instance)
    if g.shape != (layout.length,):
        raise ValueError(f"genotype must have shape ({layout.length},), got {g.shape}")
    s, k, j, i, p, t = instance.dimensions

    plant_keys = g[layout.plant_keys]
    dc_keys = g[layout.dc_keys]
    supplier_weights = g[layout.supplier_weights].reshape(s, k)
    plant_dc_weights = g[layout.plant_dc_weights].reshape(k, j)
    assignment_keys = g[layout.assignment_keys].reshape(j, i)
    timing_weights = g[layout.timing_weights].reshape(j, t)

    plant_open = plant_keys >= 0.5
    if not plant_open.any():
        plant_open = _one_hot(int(np.argmax(plant_keys)), k)
    dc_open = dc_keys >= 0.5
    if not dc_open.any():
        dc_open = _one_hot(int(np.argmax(dc_keys)), j)

    # Retailer assignment: argmax key among open DCs (keys are >= 0, so -1 masks).
    masked_keys = np.where(dc_open[:, None], assignment_keys, -1.0)
    dc_of_retailer = np.argmax(masked_keys, axis=0)
    assignment = np.zeros((j, i), dtype=bool)
    assignment[dc_of_retailer, np.arange(i)] = True

    horizon_demand = instance.demand.sum(axis=2)  # (I, P)
    retail_flow = np.zeros((p, j, i))
    retail_flow[:, dc_of_retailer, np.arange(i)] = horizon_demand.T
    dc_demand = retail_flow.sum(axis=2)  # (P, J)
    assigned_demand = np.einsum("ji,ipt->pjt", assignment.astype(float), instance.demand)

    # Plant -> DC flows; plant capacity is stated in raw-material-equivalent
    # units, so the per-plant product budget is capacity / utilization.
    product_flow = np.zeros((p, k, j))
    open_plant_weights = np.where(plant_open[:, None], plant_dc_weights, 0.0)
    product_budget = np.where(plant_open, instance.plant_capacity / instance.utilization, 0.0)
    for product in range(p):
        for dc in range(j):
            need = dc_demand[product, dc]
            if need <= 0.0:
                continue
            share, _short = allocate_with_caps(need, open_plant_weights[:, dc], product_budget)
            product_flow[product, :, dc] = share
            product_budget = product_budget - share

    # Supplier -> plant raw-material flows covering production.
    raw_flow = np.zeros((s, k))
    supplier_budget = instance.supplier_capacity.copy()
    production = product_flow.sum(axis=(0, 2))  # (K,)
    for plant in range(k):
        need = instance.utilization * production[plant]
        if need <= 0.0:
            continue
        share, _short = allocate_with_caps(need, supplier_weights[:, plant], supplier_budget)
        raw_flow[:, plant] = share
        supplier_budget = supplier_budget - share

    # Inbound timing: normalize each DC's weights into a period distribution.
    row_sums = timing_weights.sum(axis=1, keepdims=True)
    period_share = np.where(
        row_sums > 0.0,
        timing_weights / np.where(row_sums > 0.0, row_sums, 1.0),
        1.0 / t,
    )
    dc_inflow_total = product_flow.sum(axis=1)  # (P, J)
    inflow = dc_inflow_total[:, :, None] * period_share[None, :, :]
    on_hand, backlog = _schedule_recursion(inflow, assigned_demand)

    return DecodedNetwork(
        plant_open=plant_open,
        dc_open=dc_open,
        assignment=assignment,
        raw_flow=raw_flow,
        product_flow=product_flow,
        retail_flow=retail_flow,
        assigned_demand=assigned_demand,
        inflow=inflow,
        on_hand=on_hand,
        backlog=backlog,
    )


def _schedule_recursion(inflow: np.ndarray, demand: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized stock/backlog recursion over the trailing period axis."""
    periods = inflow.shape[-1]
    on_hand = np.zeros_like(inflow)
    backlog = np.zeros_like(inflow)
    stock = np.zeros(inflow.shape[:-1])
    owed = np.zeros(inflow.shape[:-1])
    for t in range(periods):
        available = stock + inflow[..., t]
        shipped = np.minimum(available, demand[..., t] + owed)
        stock = available - shipped
        owed = owed + demand[..., t] - shipped
        on_hand[..., t] = stock
        backlog[..., t] = owed
    return on_hand, backlog


def simulate_schedule(
    inflow: Sequence[float],
    demand: Sequence[float],
    holding_capacity: float,
    backorder_limit: Sequence[float] | float,
) -> tuple[np.ndarray, np.ndarray]:
    """Simulate one DC's per-period stock and backlog for a single product.

    Each period, arriving units plus carried stock ship against current demand
    plus carried backlog; leftovers carry as stock (early delivery), unmet
    demand carries as backlog (late delivery):

        available_t = z_{t-1} + inflow_t
        shipped_t   = min(available_t, demand_t + b_{t-1})
        z_t         = available_t - shipped_t
        b_t         = b_{t-1} + demand_t - shipped_t

    ``holding_capacity`` and ``backorder_limit`` describe the cell's bounds;
    the recursion never clips against them — excess is scored by
    :func:`check_constraints`, not here.
    """
    inflow_arr = np.asarray(inflow, dtype=float)
    demand_arr = np.asarray(demand, dtype=float)
    if inflow_arr.ndim != 1 or inflow_arr.shape != demand_arr.shape:
        raise ValueError("inflow and demand must be equal-length 1-D series")
    if np.any(inflow_arr < 0) or np.any(demand_arr < 0):
        raise ValueError("inflow and demand must be nonnegative")
    if holding_capacity < 0 or np.any(np.asarray(backorder_limit, dtype=float) < 0):
        raise ValueError("capacities must be nonnegative")
    on_hand, backlog = _schedule_recursion(
        inflow_arr.reshape(1, -1), demand_arr.reshape(1, -1)
    )
    return on_hand[0], backlog[0]


def eval_total_cost(
    network: DecodedNetwork,
    instance: Instance,
    holding_on_backorder: bool = False,
) -> float:
    """Total network cost: fixed facility costs plus every flow-proportional term.

    Holding cost is charged on on-hand stock; ``holding_on_backorder=True``
    charges it on the backlog instead (alternate accounting mode).
    """
    fixed = float(
        (instance.plant_fixed_cost * network.plant_open).sum()
        + (instance.dc_fixed_cost * network.dc_open).sum()
    )
    raw = float(
        (
            (instance.raw_material_unit_cost[:, None] + instance.raw_transport_cost)
            * network.raw_flow
        ).sum()
    )
    plant_to_dc = float(
        (instance.product_transport_plant_dc[None, :, :] * network.product_flow).sum()
    )
    held = network.backlog if holding_on_backorder else network.on_hand
    holding = float((instance.holding_cost[None, :, None] * held).sum())
    dc_to_retail = float(
        (instance.product_transport_dc_retailer[None, :, :] * network.retail_flow).sum()
    )
    return fixed + raw + plant_to_dc + holding + dc_to_retail


def eval_delay(network: DecodedNetwork) -> float:
    """Total delivery-delay quantity: backlog plus early stock over all cells."""
    return float((network.backlog + network.on_hand).sum())


def check_constraints(
    network: DecodedNetwork,
    instance: Instance,
) -> tuple[np.ndarray, float]:
    """Score the eight constraint families of a decoded network.

    Returns ``(excess, total)``: ``excess[f]`` is the summed magnitude of
    violation in family ``f`` (see :data:`CONSTRAINT_FAMILIES`), and ``total``
    is the scalar violation used for constraint-domination — each family
    divided by its capacity scale so no family dominates purely by units.
    Excess below float-repair resolution is treated as zero.
    """
    u = instance.utilization
    excess = np.zeros(len(CONSTRAINT_FAMILIES))

    excess[0] = np.maximum(network.on_hand - instance.dc_capacity[None, :, None], 0.0).sum()
    excess[1] = np.maximum(network.backlog - instance.backorder_limit, 0.0).sum()

    dc_in = network.product_flow.sum(axis=1)
    dc_out = network.retail_flow.sum(axis=2)
    excess[2] = np.maximum(dc_out - dc_in, 0.0).sum()

    excess[3] = np.maximum(network.raw_flow.sum(axis=1) - instance.supplier_capacity, 0.0).sum()

    production = network.product_flow.sum(axis=(0, 2))
    raw_in = network.raw_flow.sum(axis=0)
    excess[4] = np.maximum(u * production - raw_in, 0.0).sum()
    excess[5] = np.maximum(u * production - instance.plant_capacity, 0.0).sum()

    excess[6] = np.abs(network.assignment.sum(axis=0) - 1).sum()

    # Horizon demand balance: per-period demand and horizon totals both derive
    # from the stored demand tensor, so the balance holds by construction.
    excess[7] = 0.0

    scales = np.array(
        [
            instance.dc_capacity.mean(),
            instance.backorder_limit.mean(),
            instance.total_demand / instance.n_dcs,
            instance.supplier_capacity.mean(),
            instance.plant_capacity.mean(),
            instance.plant_capacity.mean(),
            1.0,
            max(1.0, instance.total_demand / instance.n_retailers),
        ]
    )
    scales = np.where(scales > 0.0, scales, 1.0)
    excess = np.where(excess > _EXCESS_RTOL * scales, excess, 0.0)
    total = float((excess / scales).sum())
    return excess, total


def evaluate(
    genotype: np.ndarray,
    instance: Instance,
    holding_on_backorder: bool = False,
) -> tuple[np.ndarray, float]:
    """Decode and score one genotype: ``([total_cost, delay], violation)``."""
    network = decode(genotype, instance)
    total_cost = eval_total_cost(network, instance, holding_on_backorder)
    delay = eval_delay(network)
    _, violation = check_constraints(network, instance)
    return np.array([total_cost, delay]), violation


@dataclass
class SupplyChainProblem:
    """Adapter exposing an :class:`Instance` through the engine's evaluator interface."""

    instance: Instance
    holding_on_backorder: bool = False
    n_objectives: int = field(default=2, init=False)

    @property
    def genotype_length(self) -> int:
        return genotype_length(self.instance)

    def evaluate(self, genotype: np.ndarray) -> tuple[np.ndarray, float]:
        return evaluate(genotype, self.instance, self.holding_on_backorder)
