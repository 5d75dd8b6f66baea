# -*- coding: utf-8 -*-
"""Meridian grids, fields and the axisymmetric operators on them.

An axially symmetric function on a ball of R^n is fully described by its
values on the meridian rectangle (rho, sigma) in [0, R] x [0, pi]; an
axially symmetric function on the half-space by its values on
(s, t) in [0, s_max] x [0, t_max].

The operators are assembled as a conservative (finite-volume) five point
scheme: every node owns a control volume measured exactly against
rho^{n-1} sin^{n-2}(sigma) d rho d sigma (resp. s^{n-2} ds dt), and every
pair of neighbours shares a face with a flux weight. With D the face
difference matrix, W the face weights and M the control volumes

    dirichlet_energy(v) = v^T D^T W D v,    apply_laplacian(v) = -M^{-1} D^T W D v.

Discrete integration by parts therefore holds exactly. The rho = 0 ring of
the polar grid is a single unknown, the axis lines sigma in {0, pi} and
s = 0 carry natural (regularity) conditions, so the L'Hopital limits of
the polar Laplacian come out of the control volumes without special cases.
On the first ring around the origin linear functions are balanced up to the
angular error, O(h); quadratic ones keep an O(1) defect there that vanishes
in every integral norm.

The surface area of S^{n-2} is omitted from every measure ("meridian
normalization"). It cancels in all comparisons between a quotient and a
limit constant of the same dimension.
"""


from __future__ import annotations

from .exceptions import BadResolution, BoundaryMismatch, MeshError, OutputError
from .location import Location
from .helper.csvio import read_table, write_table
from .reduction import CylindricalPoint, ReducedPoint, WeightKind, eval_weight

from enum import Enum, unique
import math
import numpy as np
from scipy import sparse, special
import typing


MIN_NODES = 8


class BallPolar(typing.NamedTuple):
    """Polar meridian of the ball B(0, radius)."""

    radius: float = 1.0


class HalfSpaceBox(typing.NamedTuple):
    """Truncated meridian [0, s_max] x [0, t_max] of the upper half-space."""

    s_max: float = 12.0
    t_max: float = 24.0


Domain = typing.Union[BallPolar, HalfSpaceBox]


@unique
class Pole(Enum):
    """Where angular grading clusters the nodes."""

    NORTH = "north"  # sigma = 0
    SOUTH = "south"  # sigma = pi
    BOTH = "both"


@unique
class BoundaryTag(Enum):
    """Boundary data a field promises to honour."""

    DIRICHLET = "dirichlet"  # zero on the outer boundary, regular on axes
    FREE = "free"  # anything, e.g. restrictions of analytic functions


class DiscreteOperators(typing.NamedTuple):
    """Assembled operators of a grid, on collapsed node numbering."""

    index: np.ndarray  # grid shape -> collapsed node
    difference: sparse.csr_matrix  # faces x nodes
    face_weights: np.ndarray
    stiffness: sparse.csr_matrix  # D^T W D, all nodes
    mass: np.ndarray  # control volumes, all nodes
    interior: np.ndarray  # bool mask of the unknowns


class Quadrature(typing.NamedTuple):
    """Per node weights of the meridian measure, in grid shape."""

    weights: np.ndarray

    @property
    def total(self) -> float:
        return float(self.weights.sum())

    def integrate(self, values: np.ndarray) -> float:
        return float(np.sum(self.weights * values))


def _sine_power_primitive(
    sigma: np.ndarray, k: int, cosine_power: float = 0.0
) -> np.ndarray:
    """int_0^sigma |cos|^c sin^k, sigma in [0, pi], via the incomplete beta function."""
    a, b = 0.5 * (k + 1), 0.5 * (cosine_power + 1.0)
    total = special.beta(a, b)
    folded = np.minimum(sigma, math.pi - sigma)
    half = 0.5 * total * special.betainc(a, b, np.sin(folded) ** 2)
    return np.where(sigma <= 0.5 * math.pi, half, total - half)


def _half_angle_primitive(sigma: np.ndarray, k: int, power: float) -> np.ndarray:
    """int_0^sigma sin^power(s/2) sin^k(s) ds, sigma in [0, pi].

    With u = sin^2(s/2) the integrand is 2^k u^{(power+k-1)/2} (1-u)^{(k-1)/2} du.
    """
    a, b = 0.5 * (power + k + 1), 0.5 * (k + 1)
    u = np.sin(0.5 * sigma) ** 2
    return 2.0**k * special.beta(a, b) * special.betainc(a, b, u)


class _SeparatedWeight(typing.NamedTuple):
    """A ball weight written as factor * rho^exponent * g(sigma)."""

    factor: float
    exponent: float
    angular: str  # "one", "cosine" (|cos|^power) or "half_angle" (sin^power(s/2))
    power: float = 0.0


def _separate(kind: WeightKind, alpha: float) -> _SeparatedWeight:
    reduced = 0.5 * (alpha - 2.0)
    if kind is WeightKind.FULL_HENON_REDUCED:
        return _SeparatedWeight(1.0, reduced, "one")
    if kind is WeightKind.FULL_HENON_HALF_BALL:
        return _SeparatedWeight(2.0**reduced, reduced, "one")
    if kind is WeightKind.PARTIAL_REDUCED:
        return _SeparatedWeight(1.0, reduced, "half_angle", alpha)
    if kind is WeightKind.PARTIAL_HALF_BALL:
        return _SeparatedWeight(2.0**reduced, reduced, "half_angle", alpha)
    if kind is WeightKind.HYPERPLANE_DIRECT:
        return _SeparatedWeight(1.0, alpha, "cosine", alpha)
    if kind is WeightKind.RADIAL_POWER:
        return _SeparatedWeight(1.0, alpha, "one")
    raise MeshError(f"Weight {kind.value} does not live on a ball.")


def sine_power_integral(k: int) -> float:
    """int_0^pi sin^k."""
    return float(special.beta(0.5, 0.5 * (k + 1)))


def ball_measure(n: int, radius: float = 1.0) -> float:
    """Meridian normalized volume of B_n(0, radius)."""
    return radius**n / n * sine_power_integral(n - 2)


def _nodes_from_spacings(length: float, spacings: np.ndarray) -> np.ndarray:
    nodes = np.concatenate(([0.0], np.cumsum(spacings / spacings.sum()) * length))
    nodes[-1] = length
    return nodes


def _edges(nodes: np.ndarray) -> np.ndarray:
    """Control volume boundaries: the outer nodes and all midpoints."""
    return np.concatenate(([nodes[0]], 0.5 * (nodes[1:] + nodes[:-1]), [nodes[-1]]))


class MeridianGrid:
    """Immutable tensor grid on a meridian domain, with its operators.

    Axis 0 of every value array is the radial direction (rho or s), axis 1
    the angular or height direction (sigma or t).
    """

    def __init__(
        self,
        domain: Domain,
        n: int,
        radial_nodes: np.ndarray,
        angular_nodes: np.ndarray,
        *,
        grading: float = 1.0,
        sigma_grading: float = 1.0,
        pole: Pole = Pole.BOTH,
    ) -> None:
        """Constructor, use `build_grid`."""
        assert n >= 3
        self._domain = domain
        self._n = n
        self._radial = np.array(radial_nodes, dtype=float)
        self._angular = np.array(angular_nodes, dtype=float)
        self._radial.flags.writeable = False
        self._angular.flags.writeable = False
        self._grading = grading
        self._sigma_grading = sigma_grading
        self._pole = pole

        self._operators = self._assemble()
        self._quadrature = self._assemble_quadrature()

    @property
    def domain(self) -> Domain:
        return self._domain

    @property
    def n(self) -> int:
        return self._n

    @property
    def is_ball(self) -> bool:
        return isinstance(self._domain, BallPolar)

    @property
    def shape(self) -> typing.Tuple[int, int]:
        return (len(self._radial), len(self._angular))

    @property
    def radial_nodes(self) -> np.ndarray:
        return self._radial

    @property
    def angular_nodes(self) -> np.ndarray:
        return self._angular

    @property
    def radial_spacing(self) -> np.ndarray:
        return np.diff(self._radial)

    @property
    def angular_spacing(self) -> np.ndarray:
        return np.diff(self._angular)

    @property
    def grading(self) -> float:
        return self._grading

    @property
    def sigma_grading(self) -> float:
        return self._sigma_grading

    @property
    def pole(self) -> Pole:
        return self._pole

    @property
    def axis_names(self) -> typing.Tuple[str, str]:
        return ("rho", "sigma") if self.is_ball else ("s", "t")

    @property
    def operators(self) -> DiscreteOperators:
        return self._operators

    @property
    def quadrature(self) -> Quadrature:
        return self._quadrature

    @property
    def angular_symmetric(self) -> bool:
        """Whether the node set is mirror symmetric under sigma -> pi - sigma."""
        return self.is_ball and bool(
            np.allclose(self._angular, math.pi - self._angular[::-1], atol=1e-13)
        )

    def coordinates(self) -> typing.Tuple[np.ndarray, np.ndarray]:
        """Node coordinates in grid shape."""
        r, a = np.meshgrid(self._radial, self._angular, indexing="ij")
        return r, a

    def point(self, i: int, j: int) -> typing.Tuple[float, float]:
        return (float(self._radial[i]), float(self._angular[j]))

    def scaled(self, factor: float) -> MeridianGrid:
        """The same polar grid on the ball of radius `factor` * radius."""
        assert self.is_ball and factor > 0.0
        assert isinstance(self._domain, BallPolar)
        return MeridianGrid(
            BallPolar(self._domain.radius * factor),
            self._n,
            self._radial * factor,
            self._angular,
            grading=self._grading,
            sigma_grading=self._sigma_grading,
            pole=self._pole,
        )

    def dirichlet_mask(self) -> np.ndarray:
        """Nodes held at zero by homogeneous Dirichlet data, in grid shape."""
        mask = np.zeros(self.shape, dtype=bool)
        mask[-1, :] = True
        if not self.is_ball:
            mask[:, 0] = True
            mask[:, -1] = True
        return mask

    # Node numbering:

    @property
    def node_count(self) -> int:
        return len(self._operators.mass)

    def collapse(self, values: np.ndarray) -> np.ndarray:
        """Grid shaped values -> one value per node (the origin ring is averaged)."""
        index = self._operators.index
        x = np.empty(self.node_count)
        x[index] = values
        if self.is_ball:
            x[0] = float(np.mean(values[0]))
        return x

    def expand(self, x: np.ndarray) -> np.ndarray:
        """One value per node -> grid shaped values."""
        return x[self._operators.index]

    def restrict(self, values: np.ndarray) -> np.ndarray:
        """Grid shaped values -> the unknowns (Dirichlet nodes dropped)."""
        return self.collapse(values)[self._operators.interior]

    def extend(self, unknowns: np.ndarray) -> np.ndarray:
        """The unknowns -> grid shaped values, zero on Dirichlet nodes."""
        x = np.zeros(self.node_count)
        x[self._operators.interior] = unknowns
        return self.expand(x)

    def weight(self, kind: WeightKind, alpha: float, *, gamma: float = 1.0) -> np.ndarray:
        """A weight evaluated at every node, in grid shape."""
        if kind.on_half_space == self.is_ball:
            raise MeshError(f"Weight {kind.value} does not live on this grid.")
        a, b = self.coordinates()
        if self.is_ball:
            return np.asarray(eval_weight(kind, ReducedPoint(a, b), alpha))
        return np.asarray(eval_weight(kind, CylindricalPoint(a, b), alpha, gamma=gamma))

    def weighted_quadrature(
        self, kind: WeightKind, alpha: float, *, gamma: float = 1.0
    ) -> Quadrature:
        """int h over every control volume, in grid shape.

        The weights factor into a function of rho (resp. t) times one of
        sigma (resp. s), so both factors are integrated in closed form; only
        the integrand multiplying h is lumped to the nodes.
        """
        if kind.on_half_space == self.is_ball:
            raise MeshError(f"Weight {kind.value} does not live on this grid.")
        radial_volume, _, _ = self._radial_measures()
        if self.is_ball:
            weight = _separate(kind, alpha)
            edges = _edges(self._radial)
            power = weight.exponent + self._n
            radial = weight.factor * (edges[1:] ** power - edges[:-1] ** power) / power
            angular_edges = _edges(self._angular)
            k = self._n - 2
            if weight.angular == "half_angle":
                primitive = _half_angle_primitive(angular_edges, k, weight.power)
            else:
                primitive = _sine_power_primitive(angular_edges, k, weight.power)
            weights = np.outer(radial, np.diff(primitive))
        else:
            edges = _edges(self._angular)
            if gamma == 0.0:
                height = np.diff(edges)
            else:
                decay = np.expm1(-gamma * np.diff(edges))
                height = -np.exp(-gamma * edges[:-1]) * decay / gamma
            weights = np.outer(radial_volume, height)
        weights.flags.writeable = False
        return Quadrature(weights)

    def weighted_mass(
        self, kind: WeightKind, alpha: float, *, gamma: float = 1.0
    ) -> np.ndarray:
        """int h over every control volume, one value per node."""
        weights = self.weighted_quadrature(kind, alpha, gamma=gamma).weights
        x = np.empty(self.node_count)
        x[self._operators.index] = weights
        if self.is_ball:
            x[0] = float(weights[0].sum())
        return x

    def cell_weight(self, kind: WeightKind, alpha: float, *, gamma: float = 1.0) -> np.ndarray:
        """The weight averaged over every control volume, in grid shape."""
        mass = self.weighted_mass(kind, alpha, gamma=gamma) / self._operators.mass
        return self.expand(mass)

    def _key(self) -> typing.Tuple[typing.Any, ...]:
        return (
            self._domain,
            self._n,
            self._radial.tobytes(),
            self._angular.tobytes(),
        )

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MeridianGrid) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __str__(self) -> str:
        kind = "ball" if self.is_ball else "half-space"
        return f"{kind} grid {self.shape[0]}x{self.shape[1]} (n={self._n})"

    # Assembly:

    def _radial_measures(
        self,
    ) -> typing.Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Control volumes in the radial direction, and face weights."""
        n = self._n
        edges = _edges(self._radial)
        if self.is_ball:
            volume = (edges[1:] ** n - edges[:-1] ** n) / n
            face = edges[1:-1] ** (n - 1) / self.radial_spacing
            # Radial factor of the angular faces, ~ int rho^{n-3}. Chosen so
            # the radial fluxes of rho * g(sigma) balance the angular ones on
            # every ring, the first one included.
            dual = np.zeros_like(volume)
            dual[1:] = (edges[2:] ** (n - 1) - edges[1:-1] ** (n - 1)) / (
                (n - 1) * self._radial[1:]
            )
        else:
            volume = (edges[1:] ** (n - 1) - edges[:-1] ** (n - 1)) / (n - 1)
            dual = volume
            face = edges[1:-1] ** (n - 2) / self.radial_spacing
        return volume, dual, face

    def _angular_measures(self) -> typing.Tuple[np.ndarray, np.ndarray]:
        edges = _edges(self._angular)
        if self.is_ball:
            primitive = _sine_power_primitive(edges, self._n - 2)
            volume = np.diff(primitive)
            face = np.sin(edges[1:-1]) ** (self._n - 2) / self.angular_spacing
        else:
            volume = np.diff(edges)
            face = 1.0 / self.angular_spacing
        return volume, face

    def _assemble_quadrature(self) -> Quadrature:
        radial, _, _ = self._radial_measures()
        angular, _ = self._angular_measures()
        weights = np.outer(radial, angular)
        weights.flags.writeable = False
        return Quadrature(weights)

    def _assemble(self) -> DiscreteOperators:
        nr, na = self.shape
        if self.is_ball:
            index = np.empty((nr, na), dtype=np.int64)
            index[0, :] = 0
            index[1:, :] = 1 + np.arange((nr - 1) * na).reshape(nr - 1, na)
            count = 1 + (nr - 1) * na
        else:
            index = np.arange(nr * na).reshape(nr, na)
            count = nr * na

        radial_volume, radial_dual, radial_face = self._radial_measures()
        angular_volume, angular_face = self._angular_measures()

        rows: typing.List[np.ndarray] = []
        cols_a: typing.List[np.ndarray] = []
        cols_b: typing.List[np.ndarray] = []
        weights: typing.List[np.ndarray] = []

        # Faces between (i, j) and (i + 1, j):
        a = index[:-1, :].ravel()
        b = index[1:, :].ravel()
        cols_a.append(a)
        cols_b.append(b)
        weights.append(np.outer(radial_face, angular_volume).ravel())

        # Faces between (i, j) and (i, j + 1); the origin ring has none:
        first = 1 if self.is_ball else 0
        cols_a.append(index[first:, :-1].ravel())
        cols_b.append(index[first:, 1:].ravel())
        weights.append(np.outer(radial_dual[first:], angular_face).ravel())

        col_a = np.concatenate(cols_a)
        col_b = np.concatenate(cols_b)
        face_weights = np.concatenate(weights)
        face_count = len(face_weights)
        rows = [np.arange(face_count)] * 2

        difference = sparse.coo_matrix(
            (
                np.concatenate((np.ones(face_count), -np.ones(face_count))),
                (np.concatenate(rows), np.concatenate((col_a, col_b))),
            ),
            shape=(face_count, count),
        ).tocsr()
        stiffness = (difference.T @ sparse.diags(face_weights) @ difference).tocsr()

        mass = np.empty(count)
        mass[index] = np.outer(radial_volume, angular_volume)
        if self.is_ball:
            mass[0] = radial_volume[0] * angular_volume.sum()

        interior = np.ones(count, dtype=bool)
        interior[index[self.dirichlet_mask()]] = False

        for array in (index, face_weights, mass, interior):
            array.flags.writeable = False
        return DiscreteOperators(
            index, difference, face_weights, stiffness, mass, interior
        )


def _spacings(count: int, ratio: float, finest: str) -> np.ndarray:
    """Geometric spacings for `count` intervals, ratio between neighbours."""
    k = np.arange(count, dtype=float)
    if finest == "end":
        exponent = count - 1 - k
    elif finest == "start":
        exponent = k
    else:
        exponent = np.minimum(k, count - 1 - k)
    return ratio**exponent


def build_grid(
    domain: Domain,
    n: int,
    resolutions: typing.Tuple[int, int],
    grading: float = 1.0,
    *,
    sigma_grading: float = 1.0,
    pole: Pole = Pole.BOTH,
) -> MeridianGrid:
    """Place the nodes of a meridian grid.

    On BallPolar a grading g > 1 makes the radial spacing shrink by the
    factor g from one interval to the next, finest at rho = radius, and
    `sigma_grading` does the same in sigma toward `pole`. HalfSpaceBox
    grids are uniform.
    """
    nr, na = resolutions
    if n < 3:
        raise BadResolution(f"Ambient dimension {n} must be at least 3.")
    if nr < MIN_NODES or na < MIN_NODES:
        raise BadResolution(
            f"Resolution {nr}x{na} is too coarse, need at least {MIN_NODES} "
            "nodes per direction."
        )
    for name, value in (("grading", grading), ("sigma_grading", sigma_grading)):
        if not math.isfinite(value) or value < 1.0:
            raise BadResolution(f"{name}={value} must be a finite number >= 1.")

    if isinstance(domain, BallPolar):
        if not math.isfinite(domain.radius) or domain.radius <= 0.0:
            raise BadResolution(f"Ball radius {domain.radius} must be positive.")
        radial = _nodes_from_spacings(domain.radius, _spacings(nr - 1, grading, "end"))
        finest = {Pole.NORTH: "start", Pole.SOUTH: "end", Pole.BOTH: "both"}[pole]
        angular = _nodes_from_spacings(
            math.pi, _spacings(na - 1, sigma_grading, finest)
        )
        if pole is Pole.BOTH:
            # Keep the node set exactly mirror symmetric.
            angular = 0.5 * (angular + (math.pi - angular[::-1]))
    else:
        if not (domain.s_max > 0.0 and domain.t_max > 0.0):
            raise BadResolution(f"Box {domain} must have positive extent.")
        if grading != 1.0 or sigma_grading != 1.0:
            raise BadResolution("Half-space boxes are always uniform.")
        radial = np.linspace(0.0, domain.s_max, nr)
        angular = np.linspace(0.0, domain.t_max, na)

    if np.any(np.diff(radial) <= 0.0) or np.any(np.diff(angular) <= 0.0):
        raise BadResolution("Grading is too strong, node spacing underflows.")

    return MeridianGrid(
        domain,
        n,
        radial,
        angular,
        grading=grading,
        sigma_grading=sigma_grading,
        pole=pole,
    )


class Field:
    """Real values on the nodes of a grid, tagged with their boundary data."""

    def __init__(
        self,
        grid: MeridianGrid,
        values: np.ndarray,
        *,
        boundary: BoundaryTag = BoundaryTag.DIRICHLET,
    ) -> None:
        """Constructor."""
        array = np.array(values, dtype=float)
        if array.shape != grid.shape:
            raise BoundaryMismatch(
                f"Values of shape {array.shape} do not fit {grid}."
            )
        if not np.all(np.isfinite(array)):
            raise MeshError("Field values must be finite.")
        if boundary is BoundaryTag.DIRICHLET:
            if np.any(array[grid.dirichlet_mask()] != 0.0):
                raise BoundaryMismatch("Dirichlet nodes must hold exactly 0.")
            if grid.is_ball and np.any(array[0] != array[0, 0]):
                raise BoundaryMismatch("Values on the rho = 0 ring must agree.")
        array.flags.writeable = False

        self._grid = grid
        self._values = array
        self._boundary = boundary

    @staticmethod
    def zeros(grid: MeridianGrid) -> Field:
        return Field(grid, np.zeros(grid.shape))

    @staticmethod
    def from_function(
        grid: MeridianGrid,
        function: typing.Callable[[np.ndarray, np.ndarray], np.ndarray],
        *,
        boundary: BoundaryTag = BoundaryTag.FREE,
    ) -> Field:
        """Sample function(radial, angular) at every node."""
        a, b = grid.coordinates()
        return Field(grid, np.broadcast_to(function(a, b), grid.shape), boundary=boundary)

    @staticmethod
    def from_unknowns(grid: MeridianGrid, unknowns: np.ndarray) -> Field:
        return Field(grid, grid.extend(unknowns))

    @property
    def grid(self) -> MeridianGrid:
        return self._grid

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def boundary(self) -> BoundaryTag:
        return self._boundary

    def unknowns(self) -> np.ndarray:
        return self._grid.restrict(self._values)

    def scaled(self, factor: float) -> Field:
        return Field(self._grid, factor * self._values, boundary=self._boundary)

    def argmax(self) -> typing.Tuple[int, int]:
        """Node of the maximum; ties go to the smallest rho (t), then sigma (s)."""
        if self._grid.is_ball:
            i, j = np.unravel_index(int(np.argmax(self._values)), self._grid.shape)
        else:
            # t-major search order for the half-space
            j, i = np.unravel_index(int(np.argmax(self._values.T)), self._grid.shape[::-1])
        return int(i), int(j)

    @property
    def max_value(self) -> float:
        return float(np.max(self._values))

    @property
    def max_location(self) -> typing.Tuple[float, float]:
        return self._grid.point(*self.argmax())

    def __str__(self) -> str:
        return f"field on {self._grid}, max {self.max_value:.6g}"


def _check_boundary(f: Field) -> None:
    if f.boundary is BoundaryTag.FREE:
        return
    grid = f.grid
    if np.any(f.values[grid.dirichlet_mask()] != 0.0):
        raise BoundaryMismatch("Field violates its Dirichlet data.")


def apply_laplacian(f: Field) -> Field:
    """Discrete Delta_n of an axially symmetric field.

    Interior (and axis) nodes use the values of all neighbours, including
    nonzero boundary values of FREE fields. Dirichlet nodes of the result
    are 0.
    """
    _check_boundary(f)
    grid = f.grid
    ops = grid.operators
    x = grid.collapse(f.values)
    y = -(ops.stiffness @ x) / ops.mass
    y[~ops.interior] = 0.0
    return Field(grid, grid.expand(y), boundary=BoundaryTag.FREE)


def dirichlet_energy(f: Field) -> float:
    """int |grad f|^2 against the meridian measure."""
    grid = f.grid
    ops = grid.operators
    gradient = ops.difference @ grid.collapse(f.values)
    return float(np.dot(ops.face_weights, gradient * gradient))


def weighted_lp_norm(
    f: Field, kind: WeightKind, alpha: float, p: float, *, gamma: float = 1.0
) -> float:
    """int h |f|^p against the meridian measure, before the 2/p power.

    h is integrated exactly over each control volume, |f|^p taken at its node.
    """
    assert p > 2.0
    quadrature = f.grid.weighted_quadrature(kind, alpha, gamma=gamma)
    return quadrature.integrate(np.abs(f.values) ** p)


# Snapshots:


def write_field_csv(
    f: Field, path: str, *, provenance: typing.Optional[str] = None
) -> None:
    """Write one row per node, row-major by radial index."""
    grid = f.grid
    rows = (
        (float(a), float(b), float(f.values[i, j]))
        for i, a in enumerate(grid.radial_nodes)
        for j, b in enumerate(grid.angular_nodes)
    )
    write_table(path, (*grid.axis_names, "value"), rows, provenance=provenance)


def read_field_csv(
    path: str,
    grid: MeridianGrid,
    *,
    boundary: BoundaryTag = BoundaryTag.DIRICHLET,
) -> Field:
    """Read a snapshot written by `write_field_csv` back onto `grid`."""
    location = Location(file_name=path)
    header, body = read_table(path)
    if tuple(header) != (*grid.axis_names, "value"):
        raise OutputError(f"Unexpected field header {header}.", location=location)

    nr, na = grid.shape
    if len(body) != nr * na:
        raise MeshError(
            f"Snapshot has {len(body)} nodes, {grid} has {nr * na}.",
            location=location,
        )
    try:
        data = np.array([[float(c) for c in row] for row in body])
    except ValueError as e:
        raise OutputError(
            "Malformed number in field.", location=location, original_exception=e
        )

    a, b = grid.coordinates()
    if not (
        np.allclose(data[:, 0], a.ravel(), rtol=0.0, atol=1e-12)
        and np.allclose(data[:, 1], b.ravel(), rtol=0.0, atol=1e-12)
    ):
        raise MeshError("Snapshot nodes do not match the grid.", location=location)
    return Field(grid, data[:, 2].reshape(nr, na), boundary=boundary)
