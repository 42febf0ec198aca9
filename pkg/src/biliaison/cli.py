"""Command-line front end.

Inputs are given either as file paths or inline text.  A ring is declared by
a ``ring { x, y, z, w }`` block (optionally ``ring { vars: x,y,z,w; field: QQ }``)
in any input, or by ``--vars``; the field defaults to ``$BILIAISON_FIELD`` or
GF(32003).  Reports are JSON (``--format json``) or aligned text.

Exit codes: 0 verified or computed, 1 refuted, 2 inconclusive or error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path

from . import __version__
from .determinantal import (
    GaetaError,
    HomogeneousMatrix,
    MatrixError,
    determinantal_report,
    gaeta_chain,
    gaeta_step,
    lemma42_check,
    parse_matrix,
    random_matrix,
)
from .divisor import (
    AmbientScheme,
    Divisor,
    DivisorError,
    divisor_negate,
    divisor_sub,
    divisor_sum,
    effective_divisor_from_subscheme,
    hyperplane_divisor,
    linear_system_dimension,
    linearly_equivalent,
    sections_of_M,
    twist_by_H,
)
from .groebner import (
    Ideal,
    ImproperIdealError,
    NotHomogeneousError,
    codimension,
    ideal_quotient,
    intersect,
    parse_ideal,
    saturation,
)
from .liaison import (
    BiliaisonCertificate,
    BiliaisonError,
    LinkCertificate,
    LinkError,
    biliaison_to_strict_links,
    intersection_divisor_check,
    link,
    verify_elementary_biliaison,
    verify_link,
    verify_strict_AG,
)
from .resolve import (
    NotEquidimensionalError,
    NotSaturatedError,
    canonical_module,
    equidimensional_hull,
    free_resolution,
    hilbert_data,
    is_ACM,
    is_AG,
    rao_dimensions,
    satisfies_S2,
)
from .ring import PolyRing, PolynomialParseError, PrimeField, field_from_string

FIELD_ENV = "BILIAISON_FIELD"
FIXTURE_DIR = Path(__file__).with_name("fixtures")

VERIFIED, REFUTED, INCONCLUSIVE = 0, 1, 2


class InputError(ValueError):
    pass


# -- text blocks -------------------------------------------------------------------------


def split_blocks(text: str) -> list[tuple[str, str]]:
    """Top-level ``keyword { body }`` blocks; ``#`` starts a comment line."""
    text = "\n".join(line.split("#", 1)[0] for line in text.splitlines())
    out = []
    i, n = 0, len(text)
    while i < n:
        if text[i].isspace():
            i += 1
            continue
        j = i
        while j < n and (text[j].isalnum() or text[j] in "_."):
            j += 1
        kw = text[i:j]
        k = j
        while k < n and text[k] != "{" and text[k] != "\n":
            k += 1
        if not kw or k >= n or text[k] != "{":
            raise InputError(f"expected 'keyword {{ ... }}' at position {i}")
        header = text[j:k].strip()
        depth, e = 0, k
        while e < n:
            if text[e] == "{":
                depth += 1
            elif text[e] == "}":
                depth -= 1
                if depth == 0:
                    break
            e += 1
        if depth:
            raise InputError(f"unbalanced braces in block '{kw}' starting at position {i}")
        body = text[k + 1 : e]
        out.append((kw, body if not header else f"{header} {{{body}}}"))
        i = e + 1
    return out


def read_source(arg: str) -> str:
    """File contents if ``arg`` names a file, else ``arg`` itself."""
    if arg == "-":
        return sys.stdin.read()
    p = Path(arg)
    try:
        if p.is_file():
            return p.read_text()
    except OSError:
        pass
    return arg


def _parse_ring_body(body: str, default_field):
    field = default_field
    names = body
    if ":" in body:
        items = dict(
            (k.strip(), v.strip()) for k, v in (part.split(":", 1) for part in body.split(";") if part.strip())
        )
        names = items.get("vars", "")
        if "field" in items:
            field = field_from_string(items["field"])
    return PolyRing(names, field)


def default_field(arg: str | None = None):
    text = arg or os.environ.get(FIELD_ENV)
    return field_from_string(text) if text else PrimeField()


class Session:
    """The ring and parsed inputs of one invocation."""

    def __init__(self, args, sources: list[str]):
        self.args = args
        self.seed = args.seed
        self.window = tuple(args.window)
        self.bound = args.bound
        self.texts = [read_source(s) for s in sources if s is not None]
        fld = default_field(getattr(args, "field", None))
        ring = None
        if getattr(args, "vars", None):
            ring = PolyRing(args.vars, fld)
        for t in self.texts:
            if "ring" not in t or "{" not in t:
                continue
            try:
                blocks = split_blocks(t)
            except InputError:
                continue
            for kw, body in blocks:
                if kw == "ring":
                    r = _parse_ring_body(body, fld)
                    if ring is not None and r != ring:
                        raise InputError("inputs declare different rings")
                    ring = r
        if ring is None:
            raise InputError("no ring declared: add 'ring { x, y, ... }' to an input or pass --vars")
        self.ring = ring

    def digest(self) -> str:
        h = hashlib.sha256()
        h.update(repr(self.ring).encode())
        for t in self.texts:
            h.update(b"\0" + t.encode())
        return h.hexdigest()[:16]

    def _block(self, text: str, kw: str) -> str | None:
        if "{" not in text:
            return None
        for k, body in split_blocks(text):
            if k == kw:
                return body
        return None

    def ideal(self, arg: str) -> Ideal:
        text = read_source(arg)
        body = self._block(text, "ideal") if "ideal" in text else None
        if body is None:
            if "{" in text:
                raise InputError(f"no ideal block in {arg!r}")
            body = text
        return parse_ideal(self.ring, body)

    def poly(self, arg: str):
        return self.ring.parse(read_source(arg).strip())

    def matrix(self, arg: str) -> HomogeneousMatrix:
        for kw, body in split_blocks(read_source(arg)):
            if kw == "matrix":
                return parse_matrix(self.ring, "matrix " + (body if "{" in body else "{" + body + "}"))
        raise InputError(f"no matrix block in {arg!r}")

    def divisor(self, arg: str, X: AmbientScheme | None = None) -> Divisor:
        """``ambient { ideal {...} } divisor { ideal {...} den: g }``."""
        text = read_source(arg)
        blocks = dict(split_blocks(text))
        if "divisor" not in blocks:
            raise InputError(f"no divisor block in {arg!r}")
        if X is None:
            if "ambient" not in blocks:
                raise InputError(f"no ambient block in {arg!r}")
            X = self.ambient(blocks["ambient"])
        elif "ambient" in blocks and parse_ideal(self.ring, dict(split_blocks(blocks["ambient"]))["ideal"]) != X.ideal:
            raise InputError("divisors live on different ambient schemes")
        body = blocks["divisor"]
        den = self.ring.one()
        if "den:" in body:
            body, dtext = body.split("den:", 1)
            den = self.ring.parse(dtext.strip().rstrip(";"))
        sub = dict(split_blocks(body))
        if "ideal" not in sub:
            raise InputError("divisor block needs an ideal")
        J = parse_ideal(self.ring, sub["ideal"]) + X.ideal
        if den == self.ring.one():
            return effective_divisor_from_subscheme(X, J)
        return Divisor(X, X.hull(J), den)

    def ambient(self, arg: str) -> AmbientScheme:
        return AmbientScheme(self.ideal(arg), seed=self.seed)


# -- output ----------------------------------------------------------------------------------


def _flatten(prefix: str, value, rows: list):
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, rows)
    elif isinstance(value, list) and value and all(isinstance(v, (dict, list)) for v in value):
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, rows)
    else:
        rows.append((prefix, value if isinstance(value, str) else json.dumps(value)))


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2)
    rows: list = []
    _flatten("", report, rows)
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def _status(ok) -> int:
    if ok is None:
        return INCONCLUSIVE
    return VERIFIED if ok else REFUTED


def _show(I: Ideal) -> str:
    """An ideal printed on monic minimal generators."""
    if I.is_unit():
        return "ideal { 1 }"
    return str(Ideal(I.ring, [g.monic() for g in I.minimal_generators()]))


# -- commands -------------------------------------------------------------------------------


def cmd_gb(s: Session, a):
    I = s.ideal(a.ideal)
    return {"groebner_basis": [str(g) for g in I.groebner_basis()]}, VERIFIED


def cmd_nf(s: Session, a):
    I = s.ideal(a.ideal)
    f = s.poly(a.poly)
    r = I.normal_form(f)
    return {"normal_form": str(r), "member": r.is_zero()}, VERIFIED


def _ideal_or_poly(s: Session, arg: str):
    text = read_source(arg)
    if "ideal" in text or ";" in text:
        return s.ideal(arg)
    return s.poly(arg)


def cmd_quotient(s: Session, a):
    Q = ideal_quotient(s.ideal(a.I), _ideal_or_poly(s, a.J))
    return {"quotient": _show(Q)}, VERIFIED


def cmd_saturate(s: Session, a):
    I = s.ideal(a.I)
    J = s.ideal(a.J) if a.J else None
    return {"saturation": _show(saturation(I, J))}, VERIFIED


def cmd_intersect(s: Session, a):
    return {"intersection": _show(intersect(s.ideal(a.I), s.ideal(a.J)))}, VERIFIED


def cmd_codim(s: Session, a):
    I = s.ideal(a.ideal)
    return {"codimension": codimension(I) if not I.is_unit() else s.ring.nvars + 1}, VERIFIED


def cmd_resolve(s: Session, a):
    F = free_resolution(s.ideal(a.ideal))
    out = F.to_dict()
    out["betti_table"] = F.betti().to_text()
    return out, VERIFIED


def cmd_betti(s: Session, a):
    F = free_resolution(s.ideal(a.ideal))
    return {"betti": F.betti().to_dict(), "table": F.betti().to_text()}, VERIFIED


def cmd_hilbert(s: Session, a):
    return hilbert_data(s.ideal(a.ideal)).to_dict(), VERIFIED


def cmd_canonical(s: Session, a):
    I = s.ideal(a.ideal)
    w = canonical_module(I)
    acm = is_ACM(I)
    ag, ell = is_AG(I)
    return {"omega": w.to_dict(), "ACM": acm, "AG": ag, "ell": ell}, VERIFIED


def cmd_rao(s: Session, a):
    I = s.ideal(a.ideal)
    dim = I.krull_dimension() - 1
    idx = [a.index] if a.index else list(range(1, dim + 1))
    lo = s.window[0]
    return {
        "window": list(s.window),
        "rao": {str(i): {str(lo + k): v for k, v in enumerate(rao_dimensions(I, i, s.window)) if v} for i in idx},
    }, VERIFIED


def cmd_s2(s: Session, a):
    from .modules import GradedModule

    I = s.ideal(a.ideal)
    ok = satisfies_S2(GradedModule.quotient(I))
    return {"S2": ok}, _status(ok)


def cmd_hull(s: Session, a):
    return {"hull": _show(equidimensional_hull(s.ideal(a.ideal)))}, VERIFIED


def cmd_divisor(s: Session, a):
    op = a.op
    D1 = s.divisor(a.D1)
    X = D1.X
    D2 = s.divisor(a.D2, X) if a.D2 else None
    if op in ("sum", "sub", "equiv") and D2 is None:
        raise InputError(f"divisor {op} needs two divisors")
    if op == "sum":
        return {"divisor": divisor_sum(D1, D2).to_dict()}, VERIFIED
    if op == "sub":
        return {"divisor": divisor_sub(D1, D2).to_dict()}, VERIFIED
    if op == "neg":
        return {"divisor": divisor_negate(D1).to_dict()}, VERIFIED
    if op == "twist":
        return {"divisor": twist_by_H(D1, a.m).to_dict()}, VERIFIED
    if op == "equiv":
        f = linearly_equivalent(D1, D2, shift=a.shift, seed=s.seed)
        return {"equivalent": f is not None, "shift": a.shift, "multiplier": f.to_dict() if f else None}, _status(
            f is not None
        )
    if op == "sections":
        rep = sections_of_M(D1, window=s.window)
        return {"sections": rep.to_dict(), "linear_system_dimension": linear_system_dimension(D1)}, VERIFIED
    raise InputError(f"unknown divisor operation {op}")


def cmd_link(s: Session, a):
    V2, cert = link(s.ideal(a.Y), s.ideal(a.V1))
    return {"V2": _show(V2), "certificate": cert.to_dict()}, _status(cert.ok)


def cmd_verify_link(s: Session | None, a):
    if a.certificate:
        found = [c for c in _find_certificates(json.loads(read_source(a.certificate))) if c["type"] == "link"]
        if not found:
            raise InputError("no link certificate found in the input")
        cert = LinkCertificate.from_dict(found[0])
        ok = cert.verify()
        return {"verified": ok, "certificate": cert.to_dict()}, _status(ok)
    if not (a.Y and a.V1):
        raise InputError("verify-link needs --certificate or both --Y and --V1")
    cert = verify_link(s.ideal(a.Y), s.ideal(a.V1), s.ideal(a.V2) if a.V2 else None)
    return {"verified": cert.ok, "certificate": cert.to_dict()}, _status(cert.ok)


def cmd_verify_biliaison(s: Session | None, a):
    data = json.loads(read_source(a.certificate))
    certs = list(_find_certificates(data))
    if not certs:
        raise InputError("no certificate found in the input")
    results = []
    for c in certs:
        obj = BiliaisonCertificate.from_dict(c) if c["type"] == "biliaison" else LinkCertificate.from_dict(c)
        results.append({"type": c["type"], "verified": obj.verify()})
    ok = all(r["verified"] for r in results)
    return {"verified": ok, "checked": results}, _status(ok)


def _find_certificates(data):
    if isinstance(data, dict):
        if data.get("type") in ("link", "biliaison"):
            yield data
            return
        for v in data.values():
            yield from _find_certificates(v)
    elif isinstance(data, list):
        for v in data:
            yield from _find_certificates(v)


def cmd_strict_ag(s: Session, a):
    X = s.ambient(a.X)
    rep = verify_strict_AG(s.ideal(a.Y), X, a.m, s.window, s.seed)
    code = {"verified": VERIFIED, "refuted": REFUTED}.get(rep.status, INCONCLUSIVE)
    return {"strict_AG": rep.to_dict()}, code


def _divisor_pair(s: Session, a):
    X = s.ambient(a.X)
    V1 = effective_divisor_from_subscheme(X, s.ideal(a.V1) + X.ideal)
    V2 = effective_divisor_from_subscheme(X, s.ideal(a.V2) + X.ideal)
    return X, V1, V2


def cmd_biliaison(s: Session, a):
    X, V1, V2 = _divisor_pair(s, a)
    cert = verify_elementary_biliaison(V1, V2, X, a.h, s.seed, rao=a.rao, window=s.window)
    return {"certificate": cert.to_dict(), "ok": cert.ok}, _status(cert.ok)


def cmd_strict_links(s: Session, a):
    X, V1, V2 = _divisor_pair(s, a)
    out = biliaison_to_strict_links(V1, V2, X, a.h, s.seed, max_m=s.bound or 10)
    ok = out.verify()
    return out.to_dict() | {"verified": ok}, _status(ok)


def cmd_lemma53(s: Session, a):
    rep = intersection_divisor_check(s.ideal(a.X1), s.ideal(a.X2), s.ideal(a.S), s.window, s.seed)
    return rep.to_dict() | {"ok": rep.ok}, _status(rep.ok)


def cmd_minors(s: Session, a):
    M = s.matrix(a.matrix)
    t = a.t or min(M.nrows, M.ncols)
    rep = determinantal_report(M, t)
    out = rep.to_dict()
    out["ideal"] = str(rep.ideal)
    if a.hilbert and not rep.ideal.is_unit():
        out["hilbert"] = hilbert_data(rep.ideal).to_dict()
    return out, VERIFIED


def cmd_lemma42(s: Session, a):
    M = s.matrix(a.matrix)
    res = lemma42_check(M, a.i, a.j, a.k, a.l)
    return res.to_dict(), _status(res.holds)


def cmd_gaeta(s: Session, a):
    M = s.matrix(a.matrix)
    if a.op == "step":
        st = gaeta_step(M, seed=s.seed)
        return st.to_dict() | {"ok": st.ok}, _status(st.ok)
    ch = gaeta_chain(M, seed=s.seed)
    out = ch.to_dict()
    out["hilbert_replay"] = ch.replay_hilbert()
    return out, _status(ch.ok and out["hilbert_replay"])


# -- bundled examples ----------------------------------------------------------------------


def _example_rmk29(seed: int, window) -> dict:
    R = PolyRing("x,y,z")
    x, y, z = R.gens()
    X = AmbientScheme(Ideal(R, [x * y]), seed=seed)
    D = effective_divisor_from_subscheme(X, Ideal(R, [x, y]))
    return {"X": str(X.ideal), "D": str(D.J), "linear_system_dimension": linear_system_dimension(D)}


def _example_ex39(seed: int, window) -> dict:
    R = PolyRing("x,y,z,w")
    x, y, z, w = R.gens()
    X = AmbientScheme(Ideal(R, [x * y, x * z, y * z]), seed=seed)
    P = effective_divisor_from_subscheme(X, Ideal(R, [x, y, z]))
    H = hyperplane_divisor(X, x + y + z)
    PH = divisor_sum(P, H)
    expected = Ideal(R, [x, y, z]) ** 2 + X.ideal
    links = biliaison_to_strict_links(P, PH, X, 1, seed)
    return {
        "X": str(X.ideal),
        "P_plus_H": str(PH.J),
        "P_plus_H_is_square_of_point": PH.J == expected,
        "strict_links": links.to_dict(),
        "links_replay": links.verify(),
    }


def _example_ex43(seed: int, window) -> dict:
    R = PolyRing("x0,x1,x2,x3,x4")
    A = random_matrix(R, 4, 6, seed=seed)
    rep = determinantal_report(A, 4)
    hd = hilbert_data(rep.ideal)
    return {
        "matrix": A.to_dict(),
        "codimension": rep.codimension,
        "degree": hd.degree,
        "genus": hd.genus,
        "hilbert_polynomial": hd.to_dict()["hilbert_polynomial"],
    }


def _example_tc(seed: int, window) -> dict:
    R = PolyRing("x,y,z,w")
    x, y, z, w = R.gens()
    A = HomogeneousMatrix(R, [[x, y, z], [y, z, w]])
    ch = gaeta_chain(A, seed=seed)
    return ch.to_dict() | {"hilbert_replay": ch.replay_hilbert()}


EXAMPLES = {
    "2.9": _example_rmk29,
    "3.9": _example_ex39,
    "4.3": _example_ex43,
    "tc": _example_tc,
}


def cmd_example(s, a):
    out = EXAMPLES[a.name](a.seed, tuple(a.window))
    ok = out.get("links_replay", out.get("ok", True))
    return out, _status(ok)


# -- fixtures -----------------------------------------------------------------------------------


def load_fixtures() -> dict:
    manifest = json.loads((FIXTURE_DIR / "manifest.json").read_text())
    return manifest


def expected_path(name: str) -> Path:
    return FIXTURE_DIR / "expected" / f"{name}.json"


def run_fixture(name: str, fx: dict) -> tuple[dict, int]:
    base = FIXTURE_DIR / fx.get("dir", name)
    argv = [x.replace("{dir}", str(base)) for x in fx["argv"]]
    parser = build_parser()
    args = parser.parse_args(argv)
    return execute(args)


def cmd_fixtures(s, a):
    fixtures = load_fixtures()
    names = a.names or sorted(fixtures)
    results = {}
    worst = VERIFIED
    for name in names:
        if name not in fixtures:
            raise InputError(f"unknown fixture {name!r}")
        fx = fixtures[name]
        entry = {"description": fx["description"], "argv": fx["argv"]}
        if a.check:
            report, code = run_fixture(name, fx)
            expected = json.loads(expected_path(name).read_text())
            same = report["outputs"] == expected["outputs"] and code == expected.get("exit_code", code)
            entry["match"] = same
            if not same:
                entry["diff"] = _diff(expected["outputs"], report["outputs"])
                worst = max(worst, REFUTED)
        results[name] = entry
    return {"fixtures": results}, worst


def _diff(expected, actual, prefix: str = "") -> list[str]:
    if isinstance(expected, dict) and isinstance(actual, dict):
        out = []
        for k in sorted(set(expected) | set(actual), key=str):
            out += _diff(expected.get(k), actual.get(k), f"{prefix}.{k}" if prefix else str(k))
        return out
    return [] if expected == actual else [f"{prefix}: expected {expected!r}, got {actual!r}"]


# -- parser ----------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--vars", help="comma-separated variables when no ring block is given")
    common.add_argument("--field", help=f"QQ or GF(p); default ${FIELD_ENV} or GF(32003)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--window", type=int, nargs=2, default=[-5, 10], metavar=("LO", "HI"))
    common.add_argument("--bound", type=int, default=None, help="search bound for twists")
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--timing", action="store_true", help="include wall-clock time in the report")

    p = argparse.ArgumentParser(prog="biliaison", description="Generalized divisors and Gorenstein biliaison.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    sp = add("gb", cmd_gb, "reduced Groebner basis")
    sp.add_argument("ideal")
    sp = add("nf", cmd_nf, "normal form of a polynomial")
    sp.add_argument("ideal")
    sp.add_argument("poly")
    sp = add("quotient", cmd_quotient, "colon ideal I : J")
    sp.add_argument("I")
    sp.add_argument("J")
    sp = add("saturate", cmd_saturate, "saturation (by the irrelevant ideal by default)")
    sp.add_argument("I")
    sp.add_argument("J", nargs="?")
    sp = add("intersect", cmd_intersect, "intersection of two ideals")
    sp.add_argument("I")
    sp.add_argument("J")
    for name, func, h in (
        ("codim", cmd_codim, "codimension"),
        ("resolve", cmd_resolve, "minimal free resolution"),
        ("betti", cmd_betti, "Betti table"),
        ("hilbert", cmd_hilbert, "Hilbert series, polynomial, degree and genus"),
        ("canonical", cmd_canonical, "canonical module, ACM and AG tests"),
        ("s2", cmd_s2, "Serre S2 test for R/I"),
        ("hull", cmd_hull, "equidimensional hull"),
    ):
        add(name, func, h).add_argument("ideal")
    sp = add("rao", cmd_rao, "graded dimensions of the deficiency modules")
    sp.add_argument("ideal")
    sp.add_argument("--index", type=int, default=None)

    sp = add("divisor", cmd_divisor, "generalized divisor arithmetic")
    sp.add_argument("op", choices=["sum", "neg", "sub", "twist", "equiv", "sections"])
    sp.add_argument("D1")
    sp.add_argument("D2", nargs="?")
    sp.add_argument("--m", type=int, default=1, help="twist amount")
    sp.add_argument("--shift", type=int, default=0, help="degree of the multiplier")

    sp = add("link", cmd_link, "link V1 by Y")
    sp.add_argument("--Y", required=True)
    sp.add_argument("--V1", required=True)
    sp = add("verify-link", cmd_verify_link, "check or replay a link")
    sp.add_argument("--Y")
    sp.add_argument("--V1")
    sp.add_argument("--V2")
    sp.add_argument("--certificate")
    sp = add("verify-biliaison", cmd_verify_biliaison, "replay every certificate in a report")
    sp.add_argument("--certificate", required=True)
    sp = add("strict-ag", cmd_strict_ag, "is Y of the form M + mH on X")
    sp.add_argument("--Y", required=True)
    sp.add_argument("--X", required=True)
    sp.add_argument("--m", type=int, required=True)
    for name, func, h in (
        ("biliaison", cmd_biliaison, "certify V2 ~ V1 + hH on X"),
        ("strict-links", cmd_strict_links, "realize a biliaison by two strict Gorenstein links"),
    ):
        sp = add(name, func, h)
        sp.add_argument("--X", required=True)
        sp.add_argument("--V1", required=True)
        sp.add_argument("--V2", required=True)
        sp.add_argument("--h", type=int, required=True)
        if name == "biliaison":
            sp.add_argument("--rao", action="store_true", help="also compare deficiency modules")
    sp = add("lemma53", cmd_lemma53, "intersection of two linked schemes as M + ell H")
    sp.add_argument("--X1", required=True)
    sp.add_argument("--X2", required=True)
    sp.add_argument("--S", required=True)
    sp = add("minors", cmd_minors, "determinantal ideal of t x t minors")
    sp.add_argument("matrix")
    sp.add_argument("--t", type=int, default=None)
    sp.add_argument("--hilbert", action="store_true")
    sp = add("lemma42", cmd_lemma42, "minor identity for indices i, j, k, l (0-based)")
    sp.add_argument("matrix")
    for n in "ijkl":
        sp.add_argument(n, type=int)
    sp = add("gaeta", cmd_gaeta, "Gaeta biliaison step or full chain")
    sp.add_argument("op", choices=["step", "run"])
    sp.add_argument("--matrix", required=True)
    sp = add("example", cmd_example, "run a bundled worked example")
    sp.add_argument("name", choices=sorted(EXAMPLES))
    sp = add("fixtures", cmd_fixtures, "list bundled fixtures or check them against expectations")
    sp.add_argument("names", nargs="*")
    sp.add_argument("--check", action="store_true")
    return p


_INPUT_ATTRS = ("ideal", "poly", "I", "J", "D1", "D2", "Y", "V1", "V2", "X", "X1", "X2", "S", "matrix")
_RINGLESS = (cmd_example, cmd_fixtures)


def execute(args) -> tuple[dict, int]:
    """Run parsed arguments; returns the report and the exit code."""
    start = time.perf_counter()
    sources = [getattr(args, k, None) for k in _INPUT_ATTRS]
    session = None
    if args.func not in _RINGLESS and not (args.func in (cmd_verify_link, cmd_verify_biliaison) and args.certificate):
        session = Session(args, sources)
    outputs, code = args.func(session, args)
    echo = {k: v for k, v in vars(args).items() if k not in ("func", "timing", "format") and v is not None}
    report = {
        "command": echo,
        "inputs_digest": session.digest() if session else None,
        "seed": args.seed,
        "outputs": outputs,
    }
    if args.timing:
        report["timing"] = round(time.perf_counter() - start, 4)
    return report, code


ERRORS = (
    InputError,
    PolynomialParseError,
    MatrixError,
    GaetaError,
    DivisorError,
    LinkError,
    BiliaisonError,
    ImproperIdealError,
    NotHomogeneousError,
    NotSaturatedError,
    NotEquidimensionalError,
    ValueError,
    OSError,
)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, code = execute(args)
    except ERRORS as exc:
        print(render({"error": type(exc).__name__, "message": str(exc)}, args.format), file=sys.stderr)
        return INCONCLUSIVE
    print(render(report, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
