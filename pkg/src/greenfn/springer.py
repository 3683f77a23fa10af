"""
Unipotent classes, local systems and blocks: the data substrate for the
generalized Springer correspondence.

The GL_n table is generated from partition combinatorics: classes are
partitions of n in dominance order, component groups are trivial, and the
correspondence matches the trivial local system on the class of Jordan type
lambda with the irreducible character chi^lambda of S_n (regular class <->
trivial character).  Other groups are loaded from curated JSON packs and
validated against the same invariants.

Numerology for GL_n (lambda' the transpose partition, m_i multiplicities):
    dim C_lambda   = n^2 - sum lambda'_j^2
    |Z(u_lambda)^F| = q^{sum lambda'_j^2} prod_i prod_{j<=m_i} (1 - q^{-j})
    c_lambda       = n(lambda) = sum_j binom(lambda'_j, 2)
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product as _iter_product

from .characters import DataPackRequired, partitions
from .cyclo import CycQ
from .qpoly import QPoly, parse_phi_string, render_poly
from .rootdata import LeviDatum, RootDatumF, cartan_type, gl, relative_weyl_group


@dataclass(frozen=True)
class UnipotentClass:
    """A geometric unipotent class with its F-rational structure."""

    label: str
    dimension: int
    below: frozenset  # labels of classes strictly smaller in closure order
    component_group: tuple  # invariant factors of A(u); () means trivial
    f_classes: tuple  # labels a of F-classes, one per twisted class of A(u)
    c0_order: QPoly  # |C^0(u_a)^F|, one polynomial for the geometric class

    def leq(self, other: "UnipotentClass") -> bool:
        """closure(self) contained in closure(other)."""
        return self.label == other.label or self.label in other.below


@dataclass(frozen=True)
class LocalSystem:
    """An F-stable local system on a unipotent class."""

    class_label: str
    chi: tuple  # chi(a) as CycQ, aligned with the class's f_classes
    block: int
    c_value: int
    irrep: object  # label of the corresponding irreducible of the block coset
    f_stable: bool = True

    @property
    def key(self):
        return (self.class_label, self.irrep)


@dataclass(frozen=True)
class Block:
    """A block of the correspondence: all systems with fixed cuspidal datum."""

    block_id: int
    levi_subset: tuple  # simple-root subset of the cuspidal Levi L0
    cuspidal_label: str
    y_normalization_assumed: bool = False


class SpringerTable:
    """Everything the Green-function solver needs about one group."""

    def __init__(self, group: RootDatumF, classes, systems, blocks, induced_map=None):
        self.group = group
        self.classes = tuple(classes)
        self.systems = tuple(systems)
        self.blocks = tuple(blocks)
        self.induced_map = induced_map  # callable or None
        self._by_label = {c.label: c for c in self.classes}
        self._cosets = {}
        _validate_table(self)

    # -- lookups -------------------------------------------------------------

    def unipotent_class(self, label: str) -> UnipotentClass:
        return self._by_label[label]

    def block_systems(self, block_id: int):
        return tuple(s for s in self.systems if s.block == block_id)

    def block_levi(self, block_id: int) -> LeviDatum:
        blk = self.blocks[block_id]
        return self.group.levi(blk.levi_subset)

    def block_coset(self, block_id: int):
        if block_id not in self._cosets:
            self._cosets[block_id] = relative_weyl_group(
                self.group, self.block_levi(block_id)
            )
        return self._cosets[block_id]

    def centralizer_order(self, label: str) -> QPoly:
        cls = self.unipotent_class(label)
        out = cls.c0_order
        a_order = 1
        for d in cls.component_group:
            a_order *= d
        return out * QPoly([a_order])

    def class_size(self, label: str) -> QPoly:
        return self.group.group_order().exact_div(self.centralizer_order(label))

    def regular_label(self) -> str:
        maximal = [
            c for c in self.classes if not any(c.label in d.below for d in self.classes)
        ]
        if len(maximal) != 1:
            raise DataPackRequired("no unique regular class in the table")
        return maximal[0].label

    def induced_class(self, L: LeviDatum, levi_class_label: str) -> str:
        if self.induced_map is None:
            raise DataPackRequired("induced-class map unknown for this group")
        return self.induced_map(L, levi_class_label)


# ---------------------------------------------------------------------------
# validation


def _validate_table(table: SpringerTable):
    G = table.group
    labels = {c.label for c in table.classes}
    if len(labels) != len(table.classes):
        raise DataPackRequired("duplicate class labels")
    for c in table.classes:
        if not c.below <= labels:
            raise DataPackRequired(f"class {c.label}: unknown closure predecessor")
        if c.label in c.below:
            raise DataPackRequired(f"class {c.label}: closure order not strict")
        if c.dimension + c.c0_order.degree() != G.dimension:
            raise DataPackRequired(
                f"class {c.label}: dimension + centralizer degree != dim G"
            )
        n_tw = 1
        for d in c.component_group:
            n_tw *= d  # abelian A(u) with trivial F-action: one class per element
        if len(c.f_classes) != n_tw:
            raise DataPackRequired(
                f"class {c.label}: F-class count does not match |H^1(F, A(u))|"
            )
    # closure order: unique maximal (regular) and unique minimal (trivial)
    minimal = [c for c in table.classes if not c.below]
    if len(minimal) != 1:
        raise DataPackRequired("no unique minimal (trivial) class")
    table.regular_label()
    # blocks partition the systems; correspondence is a bijection per block
    seen_keys = set()
    for s in table.systems:
        if s.key in seen_keys:
            raise DataPackRequired(f"duplicate local system {s.key}")
        seen_keys.add(s.key)
        if s.class_label not in labels:
            raise DataPackRequired(f"system on unknown class {s.class_label}")
        if s.block >= len(table.blocks):
            raise DataPackRequired(f"system {s.key}: unknown block")
        cls = table.unipotent_class(s.class_label)
        if len(s.chi) != len(cls.f_classes):
            raise DataPackRequired(f"system {s.key}: chi length mismatch")
    reg = table.regular_label()
    for blk in table.blocks:
        systems = table.block_systems(blk.block_id)
        if not systems:
            raise DataPackRequired(f"block {blk.block_id} is empty")
        reg_support = [s for s in systems if s.class_label == reg]
        if len(reg_support) > 1:
            raise DataPackRequired(
                f"block {blk.block_id}: two systems supported on the regular class"
            )
        from .characters import character_table

        coset = table.block_coset(blk.block_id)
        tab = character_table(coset)
        irreps = [s.irrep for s in systems]
        if sorted(map(repr, irreps)) != sorted(map(repr, tab.labels)):
            raise DataPackRequired(
                f"block {blk.block_id}: correspondence is not a bijection onto "
                "the irreducibles of the relative Weyl group"
            )


# ---------------------------------------------------------------------------
# GL_n generator


def transpose_partition(lam):
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > j) for j in range(lam[0]))


def dominates(lam, mu) -> bool:
    """lam >= mu in dominance order (both partitions of the same n)."""
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if a < b:
            return False
    return True


def partition_label(lam) -> str:
    return "".join(str(p) for p in lam) if lam else "0"


def n_of_partition(lam) -> int:
    return sum(j * p for j, p in enumerate(lam))


def gl_centralizer_order(lam) -> QPoly:
    """|Z_{GL_n(F_q)}(u_lambda)| by the standard multiplicity formula."""
    lt = transpose_partition(lam)
    power = sum(v * v for v in lt)
    mults = {}
    for p in lam:
        mults[p] = mults.get(p, 0) + 1
    out = QPoly.q(power)
    shift = 0
    # prod (1 - q^{-j}) carried as q^{-j}(q^j - 1): collect the q-shift
    for m in mults.values():
        for j in range(1, m + 1):
            out = out * (QPoly.q(j) - 1)
            shift += j
    quo, rem = divmod(out, QPoly.q(shift))
    if not rem.is_zero():
        raise AssertionError("centralizer order not integral")
    return quo


def gl_springer(n: int) -> SpringerTable:
    """The full Springer table of GL_n: one principal block over the torus."""
    G = gl(n)
    parts = partitions(n)
    classes = []
    systems = []
    for lam in parts:
        lt = transpose_partition(lam)
        dim = n * n - sum(v * v for v in lt)
        below = frozenset(
            partition_label(mu) for mu in parts if mu != lam and dominates(lam, mu)
        )
        classes.append(
            UnipotentClass(
                label=partition_label(lam),
                dimension=dim,
                below=below,
                component_group=(),
                f_classes=("1",),
                c0_order=gl_centralizer_order(lam),
            )
        )
        systems.append(
            LocalSystem(
                class_label=partition_label(lam),
                chi=(CycQ(1),),
                block=0,
                c_value=n_of_partition(lam),
                irrep=(lam,),
            )
        )
    blocks = (Block(0, (), "torus/trivial"),)
    return SpringerTable(G, classes, systems, blocks, induced_map=_gl_induced(n))


def gl_levi_springer(L: LeviDatum) -> SpringerTable:
    """Springer table of a standard Levi of GL_n: a product of GL blocks.

    Classes are tuples of partitions, one per block, labeled by joining the
    per-block labels with commas; the single block sits over the torus and
    its relative Weyl group is the product of the block symmetric groups.
    """
    G = L.parent
    if G.gl_size is None:
        raise DataPackRequired("Levi Springer table: only generated inside GL_n")
    n = G.gl_size
    sizes = _gl_block_sizes(n, L.subset)
    tuples = list(_iter_product(*[partitions(s) for s in sizes]))
    classes = []
    systems = []
    for lams in tuples:
        label = gl_levi_class_label(lams)
        dim = sum(
            s * s - sum(v * v for v in transpose_partition(lam))
            for s, lam in zip(sizes, lams)
        )
        below = frozenset(
            gl_levi_class_label(mus)
            for mus in tuples
            if mus != lams
            and all(dominates(lam, mu) for lam, mu in zip(lams, mus))
        )
        c0 = QPoly([1])
        for lam in lams:
            c0 = c0 * gl_centralizer_order(lam)
        classes.append(
            UnipotentClass(
                label=label,
                dimension=dim,
                below=below,
                component_group=(),
                f_classes=("1",),
                c0_order=c0,
            )
        )
        systems.append(
            LocalSystem(
                class_label=label,
                chi=(CycQ(1),),
                block=0,
                c_value=sum(n_of_partition(lam) for lam in lams),
                irrep=lams,
            )
        )
    blocks = (Block(0, (), "torus/trivial"),)
    return SpringerTable(L.as_datum(), classes, systems, blocks)


def _gl_induced(n: int):
    def induced(L: LeviDatum, levi_class_label: str):
        # Levi = product of GL blocks; class label = comma-joined partitions
        sizes = _gl_block_sizes(n, L.subset)
        parts = [tuple(int(ch) for ch in piece) for piece in levi_class_label.split(",")]
        if len(parts) != len(sizes) or any(
            sum(p) != s for p, s in zip(parts, sizes)
        ):
            raise ValueError(
                f"class {levi_class_label!r} does not match Levi blocks {sizes}"
            )
        depth = max((len(p) for p in parts), default=0)
        total = [sum(p[i] if i < len(p) else 0 for p in parts) for i in range(depth)]
        return partition_label(tuple(sorted(total, reverse=True)))

    return induced


def _gl_block_sizes(n, subset):
    sizes = []
    start = 0
    cut = set(range(n - 1)) - set(subset)
    for i in sorted(cut):
        sizes.append(i + 1 - start)
        start = i + 1
    sizes.append(n - start)
    return sizes


def gl_levi_class_label(partitions_per_block) -> str:
    return ",".join(partition_label(p) for p in partitions_per_block)


# ---------------------------------------------------------------------------
# pack load / export

PACK_FORMAT = "greenfn-pack-v1"


def load_pack(document) -> SpringerTable:
    """Build and validate a SpringerTable from a JSON pack document."""
    if isinstance(document, str):
        document = json.loads(document)
    if document.get("format") != PACK_FORMAT:
        raise DataPackRequired(f"unknown pack format {document.get('format')!r}")
    group = cartan_type(document["group"])
    classes = []
    for c in document["classes"]:
        classes.append(
            UnipotentClass(
                label=c["label"],
                dimension=int(c["dimension"]),
                below=frozenset(c["below"]),
                component_group=tuple(int(d) for d in c.get("component_group", ())),
                f_classes=tuple(c.get("f_classes", ("1",))),
                c0_order=parse_phi_string(c["c0_order"]),
            )
        )
    systems = []
    for s in document["systems"]:
        c_raw = s["c"]
        if int(c_raw) != c_raw:
            raise DataPackRequired(
                f"system on {s['class']}: c-value {c_raw!r} is not an integer"
            )
        systems.append(
            LocalSystem(
                class_label=s["class"],
                chi=tuple(CycQ.from_json(v) for v in s["chi"]),
                block=int(s["block"]),
                c_value=int(c_raw),
                irrep=_irrep_from_json(s["irrep"]),
                f_stable=bool(s.get("f_stable", True)),
            )
        )
    blocks = []
    for b in document["blocks"]:
        blocks.append(
            Block(
                block_id=int(b["id"]),
                levi_subset=tuple(int(i) for i in b["levi_subset"]),
                cuspidal_label=b.get("cuspidal", ""),
                y_normalization_assumed=bool(b.get("y_normalization_assumed", False)),
            )
        )
    return SpringerTable(group, classes, systems, blocks)


def export_pack(table: SpringerTable) -> dict:
    """Serialize a table to the JSON pack schema (inverse of load_pack)."""
    return {
        "format": PACK_FORMAT,
        "group": table.group.label.replace("|", ""),
        "classes": [
            {
                "label": c.label,
                "dimension": c.dimension,
                "below": sorted(c.below),
                "component_group": list(c.component_group),
                "f_classes": list(c.f_classes),
                "c0_order": render_poly(c.c0_order),
            }
            for c in table.classes
        ],
        "systems": [
            {
                "class": s.class_label,
                "chi": [v.to_json() for v in s.chi],
                "block": s.block,
                "c": s.c_value,
                "irrep": _irrep_to_json(s.irrep),
                "f_stable": s.f_stable,
            }
            for s in table.systems
        ],
        "blocks": [
            {
                "id": b.block_id,
                "levi_subset": list(b.levi_subset),
                "cuspidal": b.cuspidal_label,
                "y_normalization_assumed": b.y_normalization_assumed,
            }
            for b in table.blocks
        ],
    }


def _irrep_to_json(irrep):
    if isinstance(irrep, tuple):
        return [list(p) if isinstance(p, tuple) else p for p in irrep]
    return irrep


def _irrep_from_json(doc):
    if isinstance(doc, list):
        return tuple(tuple(p) if isinstance(p, list) else p for p in doc)
    return doc
