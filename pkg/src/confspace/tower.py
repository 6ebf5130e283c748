"""First-page pieces of the tower spectral sequence and the rank pipeline built on them.

``E^1_{i,j}`` is a direct sum over faces: injective monotone maps
``{0..j} -> {0..3}``, stored as their image sets.  The differential block from
face ``sigma`` to face ``tau`` is ``(-1)^m delta^m`` when ``sigma = tau o delta^m``.

Only ``d^1`` is computed.  Second differentials enter through their known
constraints (image inside N), so every rank reported here is a lower bound.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .confmod import ManifoldSpec, ModuleSpace, build_space, coface
from .exactlin import Certificate, IndexSpace, QMatrix, QVector, kernel, quotient_rank
from .symbols import LinComb
from .whprod import NSpan, build_N


@dataclass(frozen=True, order=True)
class FaceIndex:
    image: tuple[int, ...]

    def __post_init__(self):
        if list(self.image) != sorted(set(self.image)) or not all(0 <= x <= 3 for x in self.image):
            raise ValueError(f"bad face {self.image}")

    @property
    def level(self) -> int:
        return len(self.image) - 1

    def __str__(self):
        return "{" + ",".join(map(str, self.image)) + "}"


def faces(level: int) -> list[FaceIndex]:
    return [FaceIndex(c) for c in combinations(range(4), level + 1)]


def face_relation(sigma: FaceIndex, tau: FaceIndex) -> int | None:
    """The ``m`` with ``sigma = tau o delta^m``, or ``None``."""
    if len(tau.image) != len(sigma.image) + 1 or not set(sigma.image) <= set(tau.image):
        return None
    (missing,) = set(tau.image) - set(sigma.image)
    return tau.image.index(missing)


# grading (i, j) -> homotopy degree i + j, level j, and the window factor of the space
GRADINGS = {(3, 1): 4, (2, 2): 4, (1, 3): 4, (3, 2): 5, (2, 3): 5}


class EPage:
    """Direct sum of copies of one module space indexed by faces."""

    def __init__(self, spec: ManifoldSpec, grading: tuple[int, int], window: int | None = None):
        if grading not in GRADINGS:
            raise ValueError(f"grading {grading} is not modelled")
        i, j = grading
        self.grading = grading
        self.page = 1
        self.faces = faces(j)
        self.block = build_space(spec, f"pi{GRADINGS[grading]}C{j}", window)
        self.space = IndexSpace(
            f"E1_{i},{j}",
            [(f, s) for f in self.faces for s in self.block.symbols],
            key=("E1", grading, self.block.key),
        )

    def offset(self, face: FaceIndex) -> int:
        return self.faces.index(face) * len(self.block)

    def component(self, v: QVector, face: FaceIndex) -> QVector:
        off = self.offset(face)
        n = len(self.block)
        return QVector(self.block, {i - off: c for i, c in v.entries.items() if off <= i < off + n})


def d1(spec: ManifoldSpec, grading: tuple[int, int], mode: str = "mod_n5") -> tuple[QMatrix, EPage, EPage]:
    """Matrix of ``d^1`` out of ``E^1_{grading}``.

    Implemented for ``(3,1)``, ``(2,2)`` and ``(3,2)``.  At ``(3,2)`` only the
    top face is a target and the blocks are the four level-two cofaces on
    degree 5, computed by naturality in ``mode`` coordinates inside a level-3
    space of window ``2L``.
    """
    if grading not in ((3, 1), (2, 2), (3, 2)):
        raise ValueError(f"d1 is implemented out of (3,1), (2,2) and (3,2), not {grading}")
    i, j = grading
    src = EPage(spec, grading)
    tgt_window = 2 * spec.window if grading == (3, 2) else None
    tgt = EPage(spec, (i - 1, j + 1), tgt_window)
    cols: dict[int, dict[int, Fraction]] = {}
    for sigma in src.faces:
        for tau in tgt.faces:
            m = face_relation(sigma, tau)
            if m is None:
                continue
            sign = -1 if m % 2 else 1
            so, to = src.offset(sigma), tgt.offset(tau)
            for k in range(len(src.block)):
                img = coface(j, m, src.block.basis_comb(k), spec, mode if src.block.kind.startswith("pi5") else "exact")
                col = cols.setdefault(so + k, {})
                for idx, c in tgt.block.vector(img).entries.items():
                    col[to + idx] = col.get(to + idx, 0) + sign * c
    mat = QMatrix(src.space, tgt.space, {k: QVector(tgt.space, c) for k, c in cols.items()})
    return mat, src, tgt


def e2_31_kernel(spec: ManifoldSpec) -> tuple[list[QVector], bool]:
    """Kernel of ``d^1`` out of ``(3,1)`` and whether it lies in the diagonal."""
    mat, src, _ = d1(spec, (3, 1))
    basis = kernel(mat)
    diagonal = True
    for v in basis:
        comps = [src.component(v, f) for f in src.faces]
        if any(c != comps[0] for c in comps[1:]):
            diagonal = False
            break
    return basis, diagonal


def diagonal_embedding(src: EPage, v: QVector) -> QVector:
    entries = {}
    for f in src.faces:
        off = src.offset(f)
        for i, c in v.entries.items():
            entries[off + i] = c
    return QVector(src.space, entries)


def e3_quotient(spec: ManifoldSpec) -> tuple[IndexSpace, QMatrix]:
    """Surviving chart of ``pi5C3 / N`` and the projector onto it."""
    n = build_N(build_space(spec, "pi5C3"))
    return n.chart, n.projector()


def rank_of_family(
    classes: list,
    spec: ManifoldSpec,
    config_hash: str | None = None,
    threads: int = 1,
) -> tuple[int, Certificate]:
    """Rank of the images of ``classes`` (pi5C3 combinations or vectors) in the chart of ``pi5C3 / N``."""
    space = build_space(spec, "pi5C3")
    n: NSpan = build_N(space)

    def reduce(v):
        if isinstance(v, LinComb):
            v = space.vector(v)
        return n.to_chart(n.reduce(v))

    if threads > 1:
        # reductions are independent; map() keeps input order
        with ThreadPoolExecutor(max_workers=threads) as pool:
            family = list(pool.map(reduce, classes))
    else:
        family = [reduce(v) for v in classes]
    rank, cert = quotient_rank(family, [])
    cert.chart_dim = n.chart_dim
    cert.window = spec.window
    cert.config_hash = config_hash
    cert.extra.update({"mode": "quotient", "bound": "lower"})
    return rank, cert
