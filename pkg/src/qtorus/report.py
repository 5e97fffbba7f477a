"""Invariant reports: assembly, JSON round trip and text rendering.

The JSON document is self-describing (``format`` names the schema version)
and is validated by ``report_schema.json`` shipped with the package.  Integers
are decimal, exponent vectors and lattice vectors are JSON arrays.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from importlib import resources
from typing import Any

from . import algebra, invariants, predict, scalars
from .algebra import QTorusPresentation, ScalarAutomorphismSpec
from .errors import HypothesisFailed, InexactKdim
from .predict import DimSet

FORMAT = "qtorus-report/1"

OK = "ok"
HYPOTHESIS_FAILED = "hypothesis_failed"
INEXACT = "inexact_kdim"

Vec = tuple[int, ...]


@dataclass(frozen=True)
class Entry:
    i: int
    j: int
    value: str
    exponents: Vec


@dataclass(frozen=True)
class SigmaEntry:
    i: int
    value: str
    exponents: Vec


@dataclass(frozen=True)
class PresentationEcho:
    n: int
    m: int
    mode: str
    generators: tuple[str, ...]
    entries: tuple[Entry, ...]


@dataclass(frozen=True)
class KdimBlock:
    lower: int
    upper: int
    exact: bool
    witness: tuple[Vec, ...]
    method: str
    search_bound: int


@dataclass(frozen=True)
class HypothesisRecord:
    name: str
    satisfied: bool
    detail: str


@dataclass(frozen=True)
class DimBlock:
    """A predicted set of GK dimensions, or why it could not be produced."""

    status: str
    values: tuple[int, ...] = ()
    semantics: str | None = None
    hypotheses: tuple[HypothesisRecord, ...] = ()
    detail: str = ""


@dataclass(frozen=True)
class ExtensionBlock:
    sigma: tuple[SigmaEntry, ...]
    q_star: PresentationEcho
    sigma_rank: int
    trivial_intersection: bool
    base_vset: DimBlock
    superset: DimBlock
    forbidden: tuple[int, ...]
    kdim: KdimBlock


@dataclass(frozen=True)
class InvariantReport:
    command: str
    presentation: PresentationEcho
    lambda_rank: int
    center_rank: int
    center_basis: tuple[Vec, ...]
    kdim: KdimBlock
    gk_algebra: int
    holonomic_bound: int | None
    dichotomy: DimBlock
    extension: ExtensionBlock | None = None
    assumptions: tuple[str, ...] = field(default=())

    # -- serialisation ---------------------------------------------------

    def to_dict(self) -> dict[str, Any]:
        return {"format": FORMAT, **_plain(asdict(self))}

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> InvariantReport:
        if d.get("format") != FORMAT:
            raise ValueError(f"not a {FORMAT} document")
        ext = d.get("extension")
        return cls(
            command=d["command"],
            presentation=_echo(d["presentation"]),
            lambda_rank=d["lambda_rank"],
            center_rank=d["center_rank"],
            center_basis=_vecs(d["center_basis"]),
            kdim=_kdim(d["kdim"]),
            gk_algebra=d["gk_algebra"],
            holonomic_bound=d["holonomic_bound"],
            dichotomy=_dimblock(d["dichotomy"]),
            extension=None if ext is None else ExtensionBlock(
                sigma=tuple(SigmaEntry(e["i"], e["value"], tuple(e["exponents"])) for e in ext["sigma"]),
                q_star=_echo(ext["q_star"]),
                sigma_rank=ext["sigma_rank"],
                trivial_intersection=ext["trivial_intersection"],
                base_vset=_dimblock(ext["base_vset"]),
                superset=_dimblock(ext["superset"]),
                forbidden=tuple(ext["forbidden"]),
                kdim=_kdim(ext["kdim"]),
            ),
            assumptions=tuple(d["assumptions"]),
        )


def _plain(x):
    if isinstance(x, dict):
        return {k: _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


def _vecs(rows) -> tuple[Vec, ...]:
    return tuple(tuple(r) for r in rows)


def _entry(d) -> Entry:
    return Entry(d["i"], d["j"], d["value"], tuple(d["exponents"]))


def _echo(d) -> PresentationEcho:
    return PresentationEcho(d["n"], d["m"], d["mode"], tuple(d["generators"]), tuple(_entry(e) for e in d["entries"]))


def _kdim(d) -> KdimBlock:
    return KdimBlock(d["lower"], d["upper"], d["exact"], _vecs(d["witness"]), d["method"], d["search_bound"])


def _dimblock(d) -> DimBlock:
    return DimBlock(
        d["status"],
        tuple(d["values"]),
        d["semantics"],
        tuple(HypothesisRecord(**h) for h in d["hypotheses"]),
        d["detail"],
    )


def render_json(report: InvariantReport) -> str:
    return json.dumps(report.to_dict(), indent=2) + "\n"


def parse_json(text: str) -> InvariantReport:
    return InvariantReport.from_dict(json.loads(text))


def schema() -> dict:
    return json.loads(resources.files("qtorus").joinpath("report_schema.json").read_text(encoding="utf-8"))


# -- assembly ------------------------------------------------------------

def _labels(basis) -> tuple[str, ...]:
    return tuple(str(x) for x in basis.labels)


def echo(Q: QTorusPresentation) -> PresentationEcho:
    entries = tuple(
        Entry(i + 1, j + 1, scalars.render(Q.Q[i][j], Q.basis), Q.Q[i][j])
        for i in range(Q.n)
        for j in range(i + 1, Q.n)
        if any(Q.Q[i][j])
    )
    return PresentationEcho(Q.n, Q.m, Q.basis.mode, _labels(Q.basis), entries)


def kdim_block(kd: invariants.KdimEstimate, bound: int) -> KdimBlock:
    return KdimBlock(kd.lower, kd.upper, kd.exact, kd.witness.rows, kd.method, bound)


def dim_block(S: DimSet) -> DimBlock:
    return DimBlock(OK, S.values, S.semantics, tuple(HypothesisRecord(h.name, h.satisfied, h.detail) for h in S.hypotheses))


def _assumptions(basis) -> list[str]:
    if basis.mode == scalars.SYMBOLIC:
        return ["symbolic generators are taken to be multiplicatively independent in k^x (free abelian scalar group)"]
    return ["k = Q; scalars are positive rationals, factored over the listed primes"]


def analyze(Q: QTorusPresentation, bound: int = invariants.DEFAULT_SEARCH_BOUND) -> InvariantReport:
    return _analyze(Q, bound, invariants.kdim(Q, bound))


def _analyze(Q: QTorusPresentation, bound: int, kd: invariants.KdimEstimate) -> InvariantReport:
    center = invariants.center_lattice(Q)
    try:
        dich = dim_block(predict.dichotomy_set(Q, kd))
    except HypothesisFailed as exc:
        dich = DimBlock(
            HYPOTHESIS_FAILED,
            hypotheses=(HypothesisRecord("K.dim = n - 1", False, f"K.dim = {exc.kdim}, n = {exc.n}"),),
            detail=str(exc),
        )
    except InexactKdim as exc:
        dich = DimBlock(INEXACT, detail=str(exc))
    return InvariantReport(
        command="analyze",
        presentation=echo(Q),
        lambda_rank=invariants.lambda_group_rank(Q),
        center_rank=center.rank,
        center_basis=center.rows,
        kdim=kdim_block(kd, bound),
        gk_algebra=invariants.gk_algebra(Q),
        holonomic_bound=invariants.holonomic_bound(Q, kd) if kd.exact else None,
        dichotomy=dich,
        assumptions=tuple(_assumptions(Q.basis)),
    )


def extend(
    Q: QTorusPresentation,
    sigma: ScalarAutomorphismSpec,
    bound: int = invariants.DEFAULT_SEARCH_BOUND,
    vset=None,
) -> InvariantReport:
    """Analyze ``Q`` and its skew-Laurent extension by ``sigma``.

    Raises HypothesisFailed when the scalar groups meet nontrivially and
    MissingVSet when no set of base dimensions is available.
    """
    kd = invariants.kdim(Q, bound)
    base = _analyze(Q, bound, kd)
    if not predict.trivial_intersection(Q, sigma):
        raise HypothesisFailed("the groups generated by the q_ij and by the p_i intersect nontrivially")
    V = predict.base_vset(Q, kd, vset)
    S = predict.extension_superset(Q, sigma, V)
    Qs = algebra.skew_extension(Q, sigma)
    ext = ExtensionBlock(
        sigma=tuple(
            SigmaEntry(i + 1, scalars.render(p, sigma.basis), p) for i, p in enumerate(sigma.p) if any(p)
        ),
        q_star=echo(Qs),
        sigma_rank=predict.scalar_group_rank(sigma),
        trivial_intersection=True,
        base_vset=dim_block(V),
        superset=dim_block(S),
        forbidden=predict.forbidden_dims(S, Qs.n),
        kdim=kdim_block(invariants.kdim(Qs, bound), bound),
    )
    notes = list(base.assumptions) + [
        "the extension set is a superset: its values are not claimed to occur as GK dimensions of simple modules",
        f"forbidden dimensions range over 1..{Qs.n}; dimension 0 is not decided",
    ]
    if V.semantics == predict.USER_SUPPLIED:
        notes.append("the base set V was supplied by the user and is not verified")
    return InvariantReport(
        command="extend",
        presentation=base.presentation,
        lambda_rank=base.lambda_rank,
        center_rank=base.center_rank,
        center_basis=base.center_basis,
        kdim=base.kdim,
        gk_algebra=base.gk_algebra,
        holonomic_bound=base.holonomic_bound,
        dichotomy=base.dichotomy,
        extension=ext,
        assumptions=tuple(notes),
    )


# -- text ----------------------------------------------------------------

def _set(values) -> str:
    return "{" + ", ".join(map(str, values)) + "}"


def _vec(v) -> str:
    return "(" + ", ".join(map(str, v)) + ")"


def _dim_text(label: str, b: DimBlock) -> list[str]:
    if b.status == OK:
        head = f"{label}: {_set(b.values)} [{b.semantics}]"
    else:
        head = f"{label}: not available [{b.status}] {b.detail}"
    return [head] + [
        f"  hypothesis {h.name}: {'holds' if h.satisfied else 'fails'} ({h.detail})" for h in b.hypotheses
    ]


def _echo_text(p: PresentationEcho, name: str) -> list[str]:
    out = [f"{name}: n = {p.n}, mode = {p.mode}, m = {p.m}, generators = [{', '.join(p.generators)}]"]
    out += [f"  q {e.i} {e.j} = {e.value}  {_vec(e.exponents)}" for e in p.entries]
    return out


def _kdim_text(k: KdimBlock, label: str) -> list[str]:
    if k.exact:
        head = f"{label}: {k.lower} (exact, {k.method}; equals the global dimension)"
    else:
        head = f"{label}: between {k.lower} and {k.upper} (not closed at search bound {k.search_bound})"
    return [head, "  witness basis: " + (", ".join(_vec(w) for w in k.witness) or "(none)")]


def render_text(r: InvariantReport) -> str:
    out = _echo_text(r.presentation, "presentation")
    out.append(f"lambda group rank: {r.lambda_rank}")
    out.append(f"center rank: {r.center_rank}")
    out.append("  center basis: " + (", ".join(_vec(z) for z in r.center_basis) or "(none)"))
    out += _kdim_text(r.kdim, "Krull dimension")
    out.append(f"GK dimension of the algebra: {r.gk_algebra}")
    hb = "unknown (Krull dimension not exact)" if r.holonomic_bound is None else str(r.holonomic_bound)
    out.append(f"holonomic bound: {hb}")
    out += _dim_text("simple-module dichotomy", r.dichotomy)
    if r.extension is not None:
        e = r.extension
        out.append("extension by sigma:")
        out += ["  " + s for s in (f"p {x.i} = {x.value}  {_vec(x.exponents)}" for x in e.sigma)]
        out += ["  " + s for s in _echo_text(e.q_star, "q*")]
        out.append(f"  sigma group rank: {e.sigma_rank}")
        out.append(f"  q and p groups intersect trivially: {str(e.trivial_intersection).lower()}")
        out += ["  " + s for s in _kdim_text(e.kdim, "Krull dimension of the extension")]
        out += ["  " + s for s in _dim_text("base set V", e.base_vset)]
        out += ["  " + s for s in _dim_text("candidate GK dimensions", e.superset)]
        out.append(f"  forbidden GK dimensions: {_set(e.forbidden)}")
    out += ["assumption: " + a for a in r.assumptions]
    return "\n".join(out) + "\n"
