"""Finite cell complexes with signed incidences and integral homology."""

import csv
import io
from dataclasses import dataclass, field

from .lattice.snf import invariant_factors


@dataclass(frozen=True)
class Cell:
    id: int
    dim: int
    piece: str
    label: tuple


@dataclass(frozen=True)
class HomologyProfile:
    ranks: tuple
    torsion: tuple

    def rank(self, k):
        return self.ranks[k] if k < len(self.ranks) else 0

    @property
    def euler(self):
        return sum((-1) ** k * r for k, r in enumerate(self.ranks))

    def as_tuple(self, length=None):
        length = len(self.ranks) if length is None else length
        return tuple(self.rank(k) for k in range(length))

    def to_json(self):
        return {str(k): {"rank": r, "torsion": list(t)}
                for k, (r, t) in enumerate(zip(self.ranks, self.torsion))}

    def table(self):
        lines = ["degree  rank  torsion"]
        for k, (r, t) in enumerate(zip(self.ranks, self.torsion)):
            lines.append("%6d  %4d  %s" % (k, r, ",".join(map(str, t)) or "-"))
        return "\n".join(lines)

    def csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["degree", "rank", "torsion"])
        for k, (r, t) in enumerate(zip(self.ranks, self.torsion)):
            w.writerow([k, r, " ".join(map(str, t))])
        return buf.getvalue()


class CellComplex:
    """Cells indexed by hashable labels; boundary stored as face id -> coefficient."""

    def __init__(self):
        self.cells = []
        self.index = {}
        self.boundary = []
        self.faces = []
        self.identifications = []

    def __len__(self):
        return len(self.cells)

    def add(self, label, dim, piece, faces):
        """Add a cell whose faces already exist.

        ``faces`` is a mapping or a list of (label, coefficient) occurrences;
        faces whose occurrences cancel are still remembered as touching.
        """
        if label in self.index:
            raise ValueError("duplicate cell %r" % (label,))
        bd = {}
        items = faces.items() if isinstance(faces, dict) else faces
        for f, c in items:
            fid = self.index[f]
            if self.cells[fid].dim != dim - 1:
                raise ValueError("face %r of %r has the wrong dimension" % (f, label))
            bd[fid] = bd.get(fid, 0) + c
        cid = len(self.cells)
        self.cells.append(Cell(cid, dim, piece, label))
        self.index[label] = cid
        self.boundary.append({f: c for f, c in sorted(bd.items()) if c})
        self.faces.append(frozenset(bd))
        return cid

    def id(self, label):
        return self.index[label]

    def cell(self, label):
        return self.cells[self.index[label]]

    @property
    def top_dim(self):
        return max((c.dim for c in self.cells), default=-1)

    def cells_of_dim(self, k):
        return [c for c in self.cells if c.dim == k]

    def census(self):
        out = [0] * (self.top_dim + 1)
        for c in self.cells:
            out[c.dim] += 1
        return out

    def boundary_matrix(self, k):
        """Rows are (k-1)-cells, columns k-cells, in cell order."""
        rows = self.cells_of_dim(k - 1)
        cols = self.cells_of_dim(k)
        ri = {c.id: i for i, c in enumerate(rows)}
        m = [[0] * len(cols) for _ in rows]
        for j, c in enumerate(cols):
            for f, v in self.boundary[c.id].items():
                m[ri[f]][j] = v
        return m

    def boundary_of_chain(self, chain):
        out = {}
        for cid, w in chain.items():
            for f, c in self.boundary[cid].items():
                out[f] = out.get(f, 0) + w * c
        return {f: v for f, v in sorted(out.items()) if v}

    def check_dd(self):
        for cid in range(len(self.cells)):
            if self.boundary_of_chain(self.boundary[cid]):
                return False
        return True

    def homology(self):
        top = self.top_dim
        if top < 0:
            return HomologyProfile((), ())
        counts = self.census()
        factors = [[]]
        for k in range(1, top + 1):
            cols = self.cells_of_dim(k)
            m = self.boundary_matrix(k)
            factors.append(invariant_factors(m, len(cols)))
        factors.append([])
        ranks, tors = [], []
        for k in range(top + 1):
            r = counts[k] - len(factors[k]) - len(factors[k + 1])
            ranks.append(r)
            tors.append(tuple(d for d in factors[k + 1] if d > 1))
        return HomologyProfile(tuple(ranks), tuple(tors))

    def euler_characteristic(self):
        return sum((-1) ** c.dim for c in self.cells)

    def components(self):
        """Number of connected components by union-find on incidences."""
        parent = list(range(len(self.cells)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for cid, faces in enumerate(self.faces):
            for f in faces:
                parent[find(cid)] = find(f)
        return len({find(x) for x in range(len(self.cells))})

    def closure(self, ids):
        seen = set()
        todo = list(ids)
        while todo:
            c = todo.pop()
            if c in seen:
                continue
            seen.add(c)
            todo.extend(self.faces[c])
        return seen

    def subcomplex(self, ids):
        """Closed subcomplex generated by ``ids`` with induced boundaries."""
        keep = sorted(self.closure(ids))
        sub = type(self).__new__(type(self))
        CellComplex.__init__(sub)
        for cid in keep:
            c = self.cells[cid]
            occ = [(self.cells[f].label, self.boundary[cid].get(f, 0)) for f in sorted(self.faces[cid])]
            sub.add(c.label, c.dim, c.piece, occ)
        return sub

    def reorient(self, signs):
        """Flip the orientation of the cells listed in ``signs`` (id -> +-1)."""
        for cid, bd in enumerate(self.boundary):
            s = signs.get(cid, 1)
            self.boundary[cid] = {f: v * s * signs.get(f, 1) for f, v in bd.items()}

    def to_json(self):
        return {"cells": [{"id": c.id, "dim": c.dim, "piece": c.piece,
                           "label": _label_out(c.label)} for c in self.cells],
                "boundary": {str(c.id): [[f, self.boundary[c.id].get(f, 0)]
                                         for f in sorted(self.faces[c.id])]
                             for c in self.cells}}

    @classmethod
    def from_json(cls, data):
        cx = cls.__new__(cls)
        CellComplex.__init__(cx)
        cells = sorted(data["cells"], key=lambda c: c["id"])
        labels = {c["id"]: _label_in(c["label"]) for c in cells}
        for c in cells:
            faces = [(labels[f], v) for f, v in data["boundary"][str(c["id"])]]
            cx.add(labels[c["id"]], c["dim"], c["piece"], faces)
        return cx

    def structurally_equal(self, other):
        return (self.cells == other.cells and self.boundary == other.boundary
                and self.faces == other.faces)


def _label_out(x):
    if isinstance(x, tuple):
        return [_label_out(y) for y in x]
    return x


def _label_in(x):
    if isinstance(x, list):
        return tuple(_label_in(y) for y in x)
    return x
