from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from entropicpy._typing import Exponents, Matrix, Vector
from entropicpy.basis import count_library_columns, polynomial_terms
from entropicpy.constants import (
    ADJACENCY_ERROR,
    DEFAULT_COUPLING,
    DEFAULT_NODE_COUNT,
    NODE_COUNT_ERROR,
    SYSTEM_DIMENSION_ERROR,
    TRUTH_DEGREE_ERROR,
    UNKNOWN_PARAMETER_ERROR,
    UNKNOWN_SYSTEM_ERROR,
)
from entropicpy.errors import InvalidInputError
from entropicpy.integrators import VectorField
from entropicpy.time_series import Mode

Edge = tuple[int, int]
Polynomial = dict[Exponents, float]


class SystemName(Enum):
    LORENZ = "lorenz"
    ROSSLER = "rossler"
    VAN_DER_POL = "van_der_pol"
    LOGISTIC_MAP = "logistic_map"
    COUPLED_LOGISTIC_NETWORK = "coupled_logistic_network"
    COUPLED_LORENZ_NETWORK = "coupled_lorenz_network"

    @classmethod
    def parse(cls, name: str | SystemName) -> SystemName:
        if isinstance(name, SystemName):
            return name
        try:
            return cls(name)
        except ValueError:
            known = ", ".join(member.value for member in cls)
            raise InvalidInputError(
                UNKNOWN_SYSTEM_ERROR.format(name=name, known=known)
            ) from None


_NETWORKS = (
    SystemName.COUPLED_LOGISTIC_NETWORK,
    SystemName.COUPLED_LORENZ_NETWORK,
)
_MAPS = (SystemName.LOGISTIC_MAP, SystemName.COUPLED_LOGISTIC_NETWORK)

# Parameters of every system with their chaotic regime defaults
DEFAULT_PARAMETERS: dict[SystemName, dict[str, float]] = {
    SystemName.LORENZ: {"sigma": 10.0, "rho": 28.0, "beta": 8.0 / 3.0},
    SystemName.ROSSLER: {"a": 0.2, "b": 0.2, "c": 5.7},
    SystemName.VAN_DER_POL: {"mu": 2.0},
    SystemName.LOGISTIC_MAP: {"r": 4.0},
    SystemName.COUPLED_LOGISTIC_NETWORK: {
        "r": 4.0,
        "coupling": DEFAULT_COUPLING,
        "node_count": DEFAULT_NODE_COUNT,
    },
    SystemName.COUPLED_LORENZ_NETWORK: {
        "sigma": 10.0,
        "rho": 28.0,
        "beta": 8.0 / 3.0,
        "coupling": DEFAULT_COUPLING,
        "node_count": DEFAULT_NODE_COUNT,
    },
}

_NODE_DIMS = {
    SystemName.LORENZ: 3,
    SystemName.ROSSLER: 3,
    SystemName.VAN_DER_POL: 2,
    SystemName.LOGISTIC_MAP: 1,
    SystemName.COUPLED_LOGISTIC_NETWORK: 1,
    SystemName.COUPLED_LORENZ_NETWORK: 3,
}

_SYSTEM_DEGREE = {
    SystemName.LORENZ: 2,
    SystemName.ROSSLER: 2,
    SystemName.VAN_DER_POL: 3,
    SystemName.LOGISTIC_MAP: 2,
    SystemName.COUPLED_LOGISTIC_NETWORK: 2,
    SystemName.COUPLED_LORENZ_NETWORK: 2,
}


def ring_adjacency(node_count: int) -> tuple[Edge, ...]:
    """
    Edges (i, i + 1 mod n) of a ring of nodes.
    """
    return tuple((i, (i + 1) % node_count) for i in range(node_count))


def adjacency_matrix(node_count: int, edges: Iterable[Edge]) -> Matrix:
    """
    Symmetric 0/1 adjacency matrix of undirected edges; self loops are
    ignored.

    Raises:
        InvalidInputError: If an edge refers to a missing node.
    """
    adjacency = np.zeros((node_count, node_count))
    for edge in edges:
        i, j = edge
        if not (0 <= i < node_count and 0 <= j < node_count):
            raise InvalidInputError(
                ADJACENCY_ERROR.format(edge=edge, last=node_count - 1)
            )
        if i != j:
            adjacency[i, j] = adjacency[j, i] = 1.0
    return adjacency


@dataclass(frozen=True)
class SystemSpec:
    """
    A benchmark system with its parameters.

    Attributes:
        name (SystemName): Which system.
        params (dict[str, float]): Parameter values, defaults filled in.
        dims (int): State dimension (node_count x node dims for networks).
        kind (Mode): Flow or map.
        adjacency (tuple[Edge, ...]): Undirected edges of a network.
    """

    name: SystemName
    params: dict[str, float]
    dims: int
    kind: Mode
    adjacency: tuple[Edge, ...] = field(default=())

    def __post_init__(self) -> None:
        expected = _NODE_DIMS[self.name] * self.node_count
        if self.dims != expected:
            raise InvalidInputError(
                SYSTEM_DIMENSION_ERROR.format(
                    got=self.dims, name=self.name.value, expected=expected
                )
            )

    @classmethod
    def create(
        cls,
        name: str | SystemName,
        params: Mapping[str, float] | None = None,
        adjacency: Iterable[Edge] | None = None,
    ) -> SystemSpec:
        """
        Builds a system, filling in default parameters and the ring
        topology of networks.

        Args:
            name (str | SystemName): The system.
            params (Mapping[str, float] | None): Parameters to override.
            adjacency (Iterable[Edge] | None): Network edges (ring default).

        Returns:
            SystemSpec: The system.

        Raises:
            InvalidInputError: On an unknown system or parameter, fewer than
                two nodes or edges outside the network.
        """
        system = SystemName.parse(name)
        values = dict(DEFAULT_PARAMETERS[system])
        for parameter, value in (params or {}).items():
            if parameter not in values:
                raise InvalidInputError(
                    UNKNOWN_PARAMETER_ERROR.format(
                        name=system.value, parameter=parameter
                    )
                )
            values[parameter] = float(value)
        edges: tuple[Edge, ...] = ()
        nodes = 1
        if system in _NETWORKS:
            nodes = int(values["node_count"])
            if nodes < 2:  # noqa: PLR2004
                raise InvalidInputError(NODE_COUNT_ERROR)
            edges = (
                ring_adjacency(nodes)
                if adjacency is None
                else tuple((int(i), int(j)) for i, j in adjacency)
            )
            adjacency_matrix(nodes, edges)
        kind = Mode.MAP if system in _MAPS else Mode.FLOW
        return cls(system, values, _NODE_DIMS[system] * nodes, kind, edges)

    @property
    def node_count(self) -> int:
        return int(self.params.get("node_count", 1))

    @property
    def degree(self) -> int:
        """
        Polynomial degree of the system.
        """
        return _SYSTEM_DEGREE[self.name]

    @property
    def var_names(self) -> tuple[str, ...]:
        if self.name == SystemName.LORENZ or self.name == SystemName.ROSSLER:
            return ("x", "y", "z")
        if self.name == SystemName.VAN_DER_POL:
            return ("x", "y")
        if self.name == SystemName.LOGISTIC_MAP:
            return ("x",)
        if self.name == SystemName.COUPLED_LOGISTIC_NETWORK:
            return tuple(f"x{i + 1}" for i in range(self.node_count))
        return tuple(
            f"{variable}{i + 1}"
            for i in range(self.node_count)
            for variable in ("x", "y", "z")
        )

    def adjacency_matrix(self) -> Matrix:
        return adjacency_matrix(self.node_count, self.adjacency)


def _logistic_weights(spec: SystemSpec) -> Matrix:
    # x_i <- (1 - c) f(x_i) + (c / deg_i) sum_j A_ij f(x_j)
    adjacency = spec.adjacency_matrix()
    coupling = spec.params["coupling"]
    weights = np.eye(spec.node_count)
    for i, degree in enumerate(adjacency.sum(axis=1)):
        if degree > 0:
            weights[i] = coupling * adjacency[i] / degree
            weights[i, i] = 1.0 - coupling
    return weights


def system_function(spec: SystemSpec) -> VectorField:
    """
    The vector field (flows) or the map (maps) of the system as a function
    of the state.
    """
    p = spec.params
    if spec.name == SystemName.LORENZ:

        def lorenz(state: Vector) -> Vector:
            x, y, z = state
            return np.array(
                [
                    p["sigma"] * (y - x),
                    x * (p["rho"] - z) - y,
                    x * y - p["beta"] * z,
                ]
            )

        return lorenz

    if spec.name == SystemName.ROSSLER:

        def rossler(state: Vector) -> Vector:
            x, y, z = state
            return np.array(
                [-y - z, x + p["a"] * y, p["b"] + z * (x - p["c"])]
            )

        return rossler

    if spec.name == SystemName.VAN_DER_POL:

        def van_der_pol(state: Vector) -> Vector:
            x, y = state
            return np.array([y, p["mu"] * (1.0 - x * x) * y - x])

        return van_der_pol

    if spec.name == SystemName.LOGISTIC_MAP:

        def logistic(state: Vector) -> Vector:
            return p["r"] * state * (1.0 - state)

        return logistic

    if spec.name == SystemName.COUPLED_LOGISTIC_NETWORK:
        weights = _logistic_weights(spec)

        def logistic_network(state: Vector) -> Vector:
            return weights @ (p["r"] * state * (1.0 - state))

        return logistic_network

    adjacency = spec.adjacency_matrix()
    degrees = adjacency.sum(axis=1)
    coupling = p["coupling"]

    def lorenz_network(state: Vector) -> Vector:
        x, y, z = state.reshape(-1, 3).T
        dx = p["sigma"] * (y - x) + coupling * (adjacency @ x - degrees * x)
        dy = x * (p["rho"] - z) - y
        dz = x * y - p["beta"] * z
        return np.column_stack((dx, dy, dz)).ravel()

    return lorenz_network


def _term(d: int, *variables: int) -> Exponents:
    exponents = [0] * d
    for variable in variables:
        exponents[variable] += 1
    return tuple(exponents)


def _lorenz_polynomials(
    d: int, offset: int, p: Mapping[str, float]
) -> list[Polynomial]:
    x, y, z = offset, offset + 1, offset + 2
    equations: list[Polynomial] = [defaultdict(float) for _ in range(3)]
    equations[0][_term(d, x)] -= p["sigma"]
    equations[0][_term(d, y)] += p["sigma"]
    equations[1][_term(d, x)] += p["rho"]
    equations[1][_term(d, y)] -= 1.0
    equations[1][_term(d, x, z)] -= 1.0
    equations[2][_term(d, x, y)] += 1.0
    equations[2][_term(d, z)] -= p["beta"]
    return equations


def truth_polynomials(spec: SystemSpec) -> list[Polynomial]:
    """
    The right hand sides of the system as sparse polynomials, one mapping
    from exponents to coefficient per dimension; zero coefficients are
    left out.
    """
    d, p = spec.dims, spec.params
    equations: list[Polynomial]
    if spec.name == SystemName.LORENZ:
        equations = _lorenz_polynomials(d, 0, p)
    elif spec.name == SystemName.ROSSLER:
        equations = [defaultdict(float) for _ in range(3)]
        equations[0][_term(d, 1)] = -1.0
        equations[0][_term(d, 2)] = -1.0
        equations[1][_term(d, 0)] = 1.0
        equations[1][_term(d, 1)] = p["a"]
        equations[2][_term(d)] = p["b"]
        equations[2][_term(d, 0, 2)] = 1.0
        equations[2][_term(d, 2)] = -p["c"]
    elif spec.name == SystemName.VAN_DER_POL:
        equations = [defaultdict(float) for _ in range(2)]
        equations[0][_term(d, 1)] = 1.0
        equations[1][_term(d, 1)] = p["mu"]
        equations[1][_term(d, 0, 0, 1)] = -p["mu"]
        equations[1][_term(d, 0)] = -1.0
    elif spec.name == SystemName.LOGISTIC_MAP:
        equations = [{_term(d, 0): p["r"], _term(d, 0, 0): -p["r"]}]
    elif spec.name == SystemName.COUPLED_LOGISTIC_NETWORK:
        weights = _logistic_weights(spec)
        equations = [defaultdict(float) for _ in range(d)]
        for i, j in zip(*np.nonzero(weights)):
            equations[i][_term(d, j)] += p["r"] * weights[i, j]
            equations[i][_term(d, j, j)] -= p["r"] * weights[i, j]
    else:
        adjacency = spec.adjacency_matrix()
        equations = []
        for node in range(spec.node_count):
            equations.extend(_lorenz_polynomials(d, 3 * node, p))
        for i, degree in enumerate(adjacency.sum(axis=1)):
            equations[3 * i][_term(d, 3 * i)] -= p["coupling"] * degree
            for j in np.nonzero(adjacency[i])[0]:
                equations[3 * i][_term(d, 3 * j)] += p["coupling"]
    return [
        {term: value for term, value in equation.items() if value != 0.0}
        for equation in equations
    ]


def truth_matrix(spec: SystemSpec, degree: int | None = None) -> Matrix:
    """
    True coefficient matrix (K x d) in the graded lexicographic ordering of
    the polynomial library of the given degree.

    Args:
        spec (SystemSpec): The system.
        degree (int | None): Library degree (the system's degree by default).

    Returns:
        Matrix: The coefficients.

    Raises:
        InvalidInputError: If degree is below the system's degree.
    """
    degree = spec.degree if degree is None else degree
    if degree < spec.degree:
        raise InvalidInputError(
            TRUTH_DEGREE_ERROR.format(
                name=spec.name.value, needed=spec.degree, degree=degree
            )
        )
    position = {
        term.exponents: index
        for index, term in enumerate(polynomial_terms(spec.dims, degree))
    }
    truth = np.zeros((len(position), spec.dims))
    for j, equation in enumerate(truth_polynomials(spec)):
        for exponents, value in equation.items():
            truth[position[exponents], j] = value
    return truth


def default_initial_condition(spec: SystemSpec, seed: int = 0) -> Vector:
    """
    An initial condition on (or close to) the attractor of the system;
    network nodes are perturbed with a generator seeded by seed.
    """
    generator = np.random.default_rng(seed)
    if spec.name == SystemName.LORENZ:
        return np.array([-8.0, 7.0, 27.0])
    if spec.name == SystemName.ROSSLER:
        return np.array([1.0, 1.0, 0.0])
    if spec.name == SystemName.VAN_DER_POL:
        return np.array([1.0, 0.0])
    if spec.name == SystemName.LOGISTIC_MAP:
        return np.array([0.3])
    if spec.name == SystemName.COUPLED_LOGISTIC_NETWORK:
        return generator.uniform(0.1, 0.9, spec.node_count)
    start = np.tile([-8.0, 7.0, 27.0], (spec.node_count, 1))
    return (start + generator.normal(size=start.shape)).ravel()


# Large configurations and their state dimensions
LARGE_SCALE_CONFIGURATIONS: dict[str, int] = {
    "kuramoto_sivashinsky_16": 16,
    "coupled_logistic_network_100": 100,
    "coupled_lorenz_network_300": 300,
}


def library_size_report(
    degree: int = 2, specs: Iterable[SystemSpec] | None = None
) -> dict[str, tuple[int, int]]:
    """
    State dimension d and library size K for each configuration, without
    building any matrix.

    Args:
        degree (int): Library degree.
        specs (Iterable[SystemSpec] | None): Systems to report; by default
            the large scale configurations the method is known for.

    Returns:
        dict[str, tuple[int, int]]: (d, K) by configuration name.
    """
    if specs is None:
        sizes = LARGE_SCALE_CONFIGURATIONS
    else:
        sizes = {
            f"{spec.name.value}_{spec.dims}": spec.dims for spec in specs
        }
    return {
        name: (d, count_library_columns(d, degree))
        for name, d in sizes.items()
    }
