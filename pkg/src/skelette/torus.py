"""Cell decompositions of the torus R^n / Z^n cut by rational line families.

Each family is a primitive normal u with a set of offsets in [0, 1); its
lines are {x : <x, u> = k + o}. The coordinate families are always included,
so every open cell sits inside one translate of the unit cube and has a
canonical lift in [0, 1)^n.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor

from .errors import Unsupported
from .lattice.matrix import content, dot, primitive, solve


def _normalize(u):
    u = tuple(u)
    for x in u:
        if x:
            return u if x > 0 else tuple(-y for y in u)
    return u


def reduce_point(p):
    return tuple(Fraction(x) - floor(x) for x in p)


def floor_vec(p):
    return tuple(floor(x) for x in p)


@dataclass(frozen=True)
class LineFamily:
    normal: tuple
    offsets: tuple

    def value(self, x):
        return dot(self.normal, x)

    def on_line(self, t):
        return (t - floor(t)) in self.offsets

    def position(self, t):
        k = floor(t)
        r = t - k
        if r in self.offsets:
            return ("on", t)
        lo = max(o for o in self.offsets if o < r)
        return ("in", k + lo)

    def above(self, t):
        k = floor(t)
        r = t - k
        bigger = [o for o in self.offsets if o > r]
        return k + bigger[0] if bigger else k + 1 + self.offsets[0]

    def below(self, t):
        k = floor(t)
        r = t - k
        smaller = [o for o in self.offsets if o < r]
        return k + smaller[-1] if smaller else k - 1 + self.offsets[-1]

    def lines_in(self, lo, hi):
        out = []
        for k in range(floor(lo) - 1, floor(hi) + 2):
            for o in self.offsets:
                c = k + o
                if lo <= c <= hi:
                    out.append(c)
        return sorted(out)

    def gap(self):
        offs = list(self.offsets) + [1 + self.offsets[0]]
        return min(b - a for a, b in zip(offs, offs[1:]))

    def direction(self):
        """Lexicographically positive primitive direction of the lines (n=2)."""
        a, b = self.normal
        return _normalize((-b, a))


def families_for_rays(rays, n):
    """Line families {<x, v> in Z} for all rays plus the coordinate families."""
    acc = {}
    for v in rays:
        g = content(v)
        u = _normalize(tuple(x // g for x in v))
        acc.setdefault(u, set()).update(Fraction(j, g) for j in range(g))
    for i in range(n):
        e = tuple(int(i == j) for j in range(n))
        acc.setdefault(e, set()).add(Fraction(0))
    return tuple(LineFamily(u, tuple(sorted(o))) for u, o in sorted(acc.items()))


@dataclass
class TorusCell:
    id: int
    dim: int
    key: tuple
    point: tuple
    direction: tuple = None
    faces: list = field(default_factory=list)  # (face id, coefficient, translation)


class TorusComplex:
    """Regular cell structure on the torus with explicit face translations."""

    def __init__(self, n, families, cells):
        self.n = n
        self.families = families
        self.cells = cells
        self.by_key = {c.key: c.id for c in cells}
        self._lifts = {}

    @classmethod
    def from_rays(cls, rays, n):
        if n > 2:
            raise Unsupported("torus cellulation is implemented for n <= 2")
        fams = families_for_rays(rays, n)
        if n == 1:
            return cls._build_circle(fams)
        return cls._build_plane(fams)

    def key(self, p):
        return tuple(f.position(f.value(p)) for f in self.families)

    def locate(self, p):
        return self.by_key[self.key(reduce_point(p))]

    def families_through(self, p):
        return [f for f in self.families if f.on_line(f.value(p))]

    def cells_of_dim(self, d):
        return [c for c in self.cells if c.dim == d]

    def boundary(self, cid):
        out = {}
        for f, c, _ in self.cells[cid].faces:
            out[f] = out.get(f, 0) + c
        return {f: c for f, c in sorted(out.items()) if c}

    def lifts(self, cid):
        """Faces of the lifted closed cell as (face id, translation) pairs."""
        if cid not in self._lifts:
            seen = {(cid, (0,) * self.n)}
            todo = [(cid, (0,) * self.n)]
            while todo:
                c, t = todo.pop()
                for f, _, s in self.cells[c].faces:
                    item = (f, tuple(a + b for a, b in zip(t, s)))
                    if item not in seen:
                        seen.add(item)
                        todo.append(item)
            self._lifts[cid] = frozenset(seen)
        return self._lifts[cid]

    def closure(self, cid):
        return {f for f, _ in self.lifts(cid)}

    def face_multiplicity(self, face, cid):
        return sum(1 for f, _ in self.lifts(cid) if f == face)

    def euler_characteristic(self):
        return sum((-1) ** c.dim for c in self.cells)

    def identifications(self):
        """Face occurrences glued through a nonzero lattice translation."""
        return [(c.id, f, t) for c in self.cells for f, _, t in c.faces if any(t)]

    # construction -------------------------------------------------------

    @classmethod
    def _finish(cls, n, fams, raw):
        # raw: key -> dict(dim, point, direction, faces by key)
        order = sorted(raw, key=lambda k: (raw[k]["dim"], raw[k]["point"]))
        ids = {k: i for i, k in enumerate(order)}
        cells = []
        for k in order:
            r = raw[k]
            faces = [(ids[fk], c, t) for fk, c, t in r["faces"]]
            cells.append(TorusCell(ids[k], r["dim"], k, r["point"], r.get("direction"), faces))
        return cls(n, fams, cells)

    @classmethod
    def _build_circle(cls, fams):
        (fam,) = fams
        offs = list(fam.offsets)
        raw = {}
        tmp = cls(1, fams, [])
        for o in offs:
            raw[tmp.key((o,))] = {"dim": 0, "point": (o,), "faces": []}
        for i, o in enumerate(offs):
            nxt = offs[i + 1] if i + 1 < len(offs) else Fraction(1)
            mid = ((o + nxt) / 2,)
            end = reduce_point((nxt,))
            raw[tmp.key(mid)] = {
                "dim": 1, "point": mid, "direction": (1,),
                "faces": [(tmp.key((o,)), -1, (0,)),
                          (tmp.key(end), 1, (int(nxt - end[0]),))]}
        return cls._finish(1, fams, raw)

    @classmethod
    def _build_plane(cls, fams):
        tmp = cls(2, fams, [])
        raw = {}
        lines = []
        for fi, f in enumerate(fams):
            lo = sum(min(0, x) for x in f.normal)
            hi = sum(max(0, x) for x in f.normal)
            for c in f.lines_in(lo, hi):
                lines.append((fi, c))
        on_line = {ln: set() for ln in lines}
        for a in range(len(lines)):
            for b in range(a + 1, len(lines)):
                (fa, ca), (fb, cb) = lines[a], lines[b]
                if fa == fb:
                    continue
                x = solve([list(fams[fa].normal), list(fams[fb].normal)], [ca, cb])
                x = tuple(x)
                if all(0 <= t <= 1 for t in x):
                    on_line[lines[a]].add(x)
                    on_line[lines[b]].add(x)
        for pts in on_line.values():
            for x in pts:
                rx = reduce_point(x)
                raw.setdefault(tmp.key(rx), {"dim": 0, "point": rx, "faces": []})
        edges = []
        for (fi, c), pts in sorted(on_line.items()):
            d = fams[fi].direction()
            ordered = sorted(pts, key=lambda p: dot(d, p))
            for p, q in zip(ordered, ordered[1:]):
                mid = tuple((a + b) / 2 for a, b in zip(p, q))
                shift = floor_vec(mid)
                cmid = tuple(a - s for a, s in zip(mid, shift))
                k = tmp.key(cmid)
                if k in raw:
                    continue
                ends = []
                for pt, sign in ((p, -1), (q, 1)):
                    local = tuple(a - s for a, s in zip(pt, shift))
                    ends.append((tmp.key(reduce_point(local)), sign, floor_vec(local)))
                raw[k] = {"dim": 1, "point": cmid, "direction": d, "faces": ends}
                edges.append((k, cmid, fi, d))
        for k, mid, fi, d in edges:
            u = fams[fi].normal
            uu = dot(u, u)
            bound = fams[fi].gap() / uu
            for gi, g in enumerate(fams):
                if gi == fi:
                    continue
                t = g.value(mid)
                dist = min(g.above(t) - t, t - g.below(t))
                slope = abs(dot(u, g.normal))
                if slope:
                    bound = min(bound, dist / slope)
            delta = bound / 2
            for s in (1, -1):
                p = tuple(a + s * delta * b for a, b in zip(mid, u))
                shift = floor_vec(p)
                cp = tuple(a - t for a, t in zip(p, shift))
                fk = tmp.key(cp)
                rec = raw.setdefault(fk, {"dim": 2, "point": cp, "faces": []})
                coeff = 1 if d[0] * (s * u[1]) - d[1] * (s * u[0]) > 0 else -1
                rec["faces"].append((k, coeff, tuple(-t for t in shift)))
        return cls._finish(2, fams, raw)
