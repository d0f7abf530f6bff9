"""Command-line entry point: batch verification, table dumps, caching.

Exit codes: 0 all checks passed (or skipped), 1 a mathematical check failed,
2 usage or environment error.  Reports are deterministic for a fixed
configuration once the timing and cache-hit fields are stripped; JSON is the
machine contract, markdown/csv are for human diffing.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import re
import sys
import tempfile
import time
from dataclasses import asdict, dataclass
from math import comb

from . import __version__
from .cyclo import CycNumber, root_of_unity
from .errors import (
    CapExceededError,
    DomainError,
    SpetskitError,
    UnsupportedGroupError,
    ValidationError,
)
from .refgroup import DEFAULT_ORDER_CAP, Group, GroupSpec
from .chars import CharTable
from .heckeschur import (
    HookIndex,
    a_A_hook,
    degree_at_coxeter_root,
    degree_at_one,
    degree_hook,
)
from . import fourier as fourier_mod
from . import towereq

log = logging.getLogger("spetskit")

CACHE_ENV = "SPETSKIT_CACHE_DIR"
_PRIMITIVE_RE = re.compile(r"^G_?\d+$")


@dataclass(frozen=True)
class RunConfig:
    group: str
    towers: str = "conj"
    sample_count: int = 0
    seed: int = 0
    cap: int = DEFAULT_ORDER_CAP
    cache_dir: str | None = None
    fmt: str = "json"
    fourier_data: str | None = None


class JsonCache:
    """Content-addressed JSON artifact cache with atomic writes."""

    def __init__(self, directory: str):
        self.directory = directory
        os.makedirs(directory, exist_ok=True)

    def _path(self, kind: str, key) -> str:
        blob = canonical_json({"version": __version__, "kind": kind, "key": key})
        h = hashlib.sha256(blob.encode()).hexdigest()
        return os.path.join(self.directory, f"{h}.json")

    def load(self, kind: str, key):
        path = self._path(kind, key)
        if not os.path.exists(path):
            return None
        try:
            with open(path) as fh:
                doc = json.load(fh)
            if (
                doc.get("version") != __version__
                or doc.get("kind") != kind
                or doc.get("key") != _jsonable(key)
            ):
                log.warning("cache entry %s is stale or mismatched; ignoring", path)
                return None
            return doc["payload"]
        except (json.JSONDecodeError, KeyError, OSError) as ex:
            log.warning("discarding corrupt cache entry %s (%s)", path, ex)
            return None

    def store(self, kind: str, key, payload) -> None:
        path = self._path(kind, key)
        doc = {"version": __version__, "kind": kind, "key": key, "payload": payload}
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(canonical_json(doc))
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise


def _jsonable(obj):
    return json.loads(json.dumps(obj, sort_keys=True))


def canonical_json(obj, strip_volatile: bool = False) -> str:
    def clean(x):
        if isinstance(x, dict):
            return {
                k: clean(v)
                for k, v in x.items()
                if not (strip_volatile and k in ("timing_ms", "cache_hit"))
            }
        if isinstance(x, list):
            return [clean(v) for v in x]
        return x

    return json.dumps(clean(obj), sort_keys=True, separators=(",", ":")) + "\n"


# -- shared builders ----------------------------------------------------------


def _load_group(cfg: RunConfig) -> Group:
    if _PRIMITIVE_RE.match(cfg.group.strip()):
        raise UnsupportedGroupError(
            f"{cfg.group}: primitive/exceptional reflection groups are out of scope "
            "(the G_32 kernel/image figures 102/78/77 are not reproduced at desk scale)"
        )
    spec = GroupSpec.parse(cfg.group)
    return Group(spec, order_cap=cfg.cap)


def _towers(group: Group, cfg: RunConfig):
    if cfg.towers == "all":
        return group.towers("all")
    if cfg.towers == "conj":
        return group.towers("conj")
    return group.towers("sample", seed=cfg.seed, count=cfg.sample_count)


def _fourier(table: CharTable, cfg: RunConfig):
    return fourier_mod.families_and_fourier(table, dihedral_path=cfg.fourier_data)


def _check(name: str, ok: bool, witness=None) -> dict:
    entry = {"name": name, "status": "pass" if ok else "fail"}
    if witness is not None:
        entry["witness"] = witness
    return entry


def _skip(name: str, reason: str) -> dict:
    return {"name": name, "status": "skipped", "witness": {"reason": reason}}


def _report(cfg: RunConfig, checks: list[dict], data=None, timing_ms=None) -> dict:
    rep = {
        "tool": "spetskit",
        "version": __version__,
        "config": asdict(cfg),
        "checks": checks,
    }
    if data is not None:
        rep["data"] = data
    if timing_ms is not None:
        rep["timing_ms"] = timing_ms
    return rep


# -- subcommands ---------------------------------------------------------------


def cmd_group(cfg: RunConfig) -> dict:
    t0 = time.monotonic()
    g = _load_group(cfg)
    classes = g.conjugacy_classes()
    cox = g.coxeter_element()
    ce = g.elements[cox]
    data = {
        "spec": str(g.spec),
        "order": len(g.elements),
        "rank": g.spec.rank,
        "degrees": list(g.spec.degrees),
        "coxeter_number": g.spec.coxeter_number,
        "num_reflections": len(g.reflections()),
        "classes": [
            {
                "label": c.label,
                "size": c.size,
                "rep_perm": list(g.elements[c.rep].perm),
                "rep_phases": list(g.elements[c.rep].phases),
            }
            for c in classes
        ],
        "coxeter_element": {"perm": list(ce.perm), "phases": list(ce.phases)},
    }
    return _report(cfg, [], data, {"total": _ms(t0)})


def cmd_chartable(cfg: RunConfig) -> dict:
    t0 = time.monotonic()
    cache = _cache_for(cfg)
    key = {"group": cfg.group, "cap": cfg.cap}
    payload = cache.load("chartable", key) if cache else None
    hit = payload is not None
    if payload is None:
        g = _load_group(cfg)
        table = CharTable(g)
        payload = table_dump(table)
        if cache:
            cache.store("chartable", key, payload)
    rep = _report(cfg, [], payload, {"total": _ms(t0)})
    rep["cache_hit"] = hit
    return rep


def table_dump(table: CharTable) -> dict:
    g = table.group
    return {
        "spec": str(g.spec),
        "labels": [str(l) for l in table.labels],
        "classes": [c.label for c in g.conjugacy_classes()],
        "class_sizes": [c.size for c in g.conjugacy_classes()],
        "values": [[str(v) for v in row] for row in table.values],
    }


def cmd_coxnum(cfg: RunConfig) -> dict:
    t0 = time.monotonic()
    g = _load_group(cfg)
    table = CharTable(g)
    hook_aa = _hook_aa_by_row(table)
    rows = []
    for i, lab in enumerate(table.labels):
        j = table.conjugate_row(i)
        rows.append(
            {
                "label": str(lab),
                "degree": str(table.degree(i)),
                "N": str(table.n_of(i)),
                "N_conj": str(table.n_of(j)),
                "coxeter_number": str(table.coxeter_number(i)),
                "a_plus_A": hook_aa.get(i),
            }
        )
    data = {"spec": str(g.spec), "rows": rows}
    return _report(cfg, [], data, {"total": _ms(t0)})


def _hook_aa_by_row(table: CharTable) -> dict[int, int]:
    """a+A for the rows that are exterior powers, via the hook formulas."""
    spec = table.group.spec
    out: dict[int, int] = {}
    if spec.e == 1:
        return out  # hook formulas take e >= 2; type A handled by its own tests
    for k in range(spec.rank + 1):
        row = table.row_of_values(table.ext_power_char(k))
        if row is None:
            continue
        try:
            a, big_a = a_A_hook(HookIndex(spec.e, spec.p, spec.n, k))
        except DomainError:
            continue
        out[row] = a + big_a
    return out


def cmd_verify(cfg: RunConfig, which: str) -> dict:
    t0 = time.monotonic()
    checks: list[dict] = []
    if which == "cchi":
        checks = _verify_cchi(cfg)
    elif which == "lemma1":
        checks = _verify_lemma1(cfg)
    elif which == "coxeter":
        checks = _verify_coxeter(cfg)
    elif which == "symmetric":
        checks = _verify_symmetric(cfg)
    elif which == "main":
        checks = _verify_main(cfg)
    elif which == "tower-f":
        checks = _verify_tower_f(cfg)
    else:
        raise DomainError(f"unknown verification {which!r}")
    return _report(cfg, checks, timing_ms={"total": _ms(t0)})


def _verify_cchi(cfg: RunConfig) -> list[dict]:
    g = _load_group(cfg)
    table = CharTable(g)
    bad = []
    for i in range(table.nrows()):
        j = table.conjugate_row(i)
        lhs = table.coxeter_number(i)
        rhs = (table.n_of(i) + table.n_of(j)) / table.degree(i)
        if lhs != rhs:
            bad.append({"label": str(table.labels[i]), "c": str(lhs), "NNbar": str(rhs)})
    return [
        _check(
            "cchi_first_equality",
            not bad,
            {"irreducibles": table.nrows(), "failures": bad},
        )
    ]


def _verify_lemma1(cfg: RunConfig) -> list[dict]:
    g = _load_group(cfg)
    table = CharTable(g)
    tws = _towers(g, cfg)
    bad = []
    for i in range(table.nrows()):
        j = table.conjugate_row(i)
        if not towereq.tower_equivalent(g, table.values[i], table.values[j], tws):
            bad.append(str(table.labels[i]))
    return [
        _check(
            "lemma_chi_equiv_conj",
            not bad,
            {"towers": len(tws), "irreducibles": table.nrows(), "failures": bad},
        )
    ]


def _verify_coxeter(cfg: RunConfig) -> list[dict]:
    spec = GroupSpec.parse(cfg.group) if not _PRIMITIVE_RE.match(cfg.group.strip()) else None
    if spec is None:
        return [_skip("coxeter_hook_values", "primitive groups unsupported")]
    if spec.e == 1:
        return [_skip("coxeter_hook_values", "hook formulas are for e >= 2")]
    kmax = spec.rank
    column = []
    bad = []
    for k in range(kmax + 1):
        idx = HookIndex(spec.e, spec.p, spec.n, k)
        v = degree_at_coxeter_root(idx)
        column.append(str(v))
        if v != CycNumber.from_rational((-1) ** k):
            bad.append({"k": k, "value": str(v)})
        if degree_at_one(idx) != CycNumber.from_rational(comb(spec.n, k)):
            bad.append({"k": k, "at_one": str(degree_at_one(idx))})
    return [
        _check("coxeter_hook_values", not bad, {"column": column, "failures": bad})
    ]


def _verify_symmetric(cfg: RunConfig) -> list[dict]:
    g = _load_group(cfg)
    table = CharTable(g)
    try:
        fd = _fourier(table, cfg)
    except (UnsupportedGroupError, ValidationError) as ex:
        return [_skip("fourier_symmetric", str(ex))]
    full = fd.full_matrix()
    n = table.nrows()
    sym = all(full[i][j] == full[j][i] for i in range(n) for j in range(n))
    frows = fourier_mod.transform_rows(fd)
    ncls = len(g.conjugacy_classes())
    ok = True
    for w in range(ncls):
        lhs = [CycNumber.zero()] * ncls
        for i in range(n):
            coef = table.values[i][w]
            if coef.is_zero():
                continue
            for c in range(ncls):
                lhs[c] = lhs[c] + coef * table.values[i][c]
        got = fourier_mod.transform_f(fd, tuple(lhs))
        want = [CycNumber.zero()] * ncls
        for i in range(n):
            coef = frows[i][w]
            if coef.is_zero():
                continue
            for c in range(ncls):
                want[c] = want[c] + coef * table.values[i][c]
        if got != tuple(want):
            ok = False
            break
    return [
        _check("fourier_matrix_symmetric", sym),
        _check("symmetric_transform_identity", ok, {"classes": ncls}),
    ]


def _verify_main(cfg: RunConfig) -> list[dict]:
    g = _load_group(cfg)
    table = CharTable(g)
    tws = _towers(g, cfg)
    lhs, rhs = _main_theorem_sides(table)
    ok = towereq.tower_equivalent(g, lhs, rhs, tws)
    return [_check("main_coxeter_alternating_sum", ok, {"towers": len(tws)})]


def _main_theorem_sides(table: CharTable):
    g = table.group
    c = g.coxeter_element()
    cinv_class = g.class_of(g.inv(c))
    ncls = len(g.conjugacy_classes())
    lhs = [CycNumber.zero()] * ncls
    for i in range(table.nrows()):
        coef = table.values[i][cinv_class]
        if coef.is_zero():
            continue
        for cc in range(ncls):
            lhs[cc] = lhs[cc] + coef * table.values[i][cc]
    rhs = [CycNumber.zero()] * ncls
    for k in range(g.spec.rank + 1):
        ek = table.ext_power_char(k)
        for cc in range(ncls):
            rhs[cc] = rhs[cc] + ((-1) ** k) * ek[cc]
    return tuple(lhs), tuple(rhs)


def _verify_tower_f(cfg: RunConfig) -> list[dict]:
    g = _load_group(cfg)
    table = CharTable(g)
    try:
        fd = _fourier(table, cfg)
    except (UnsupportedGroupError, ValidationError) as ex:
        return [_skip("tower_f_fixes_characters", str(ex))]
    tws = _towers(g, cfg)
    frows = fourier_mod.transform_rows(fd)
    bad = []
    for i in range(table.nrows()):
        if not towereq.tower_equivalent(g, table.values[i], frows[i], tws):
            bad.append(str(table.labels[i]))
    return [
        _check(
            "tower_f_fixes_characters",
            not bad,
            {"towers": len(tws), "failures": bad},
        )
    ]


def cmd_kernel_vs_image(cfg: RunConfig) -> dict:
    t0 = time.monotonic()
    g = _load_group(cfg)
    table = CharTable(g)
    try:
        fd = _fourier(table, cfg)
    except (UnsupportedGroupError, ValidationError) as ex:
        return _report(cfg, [_skip("kernel_vs_image", str(ex))])
    tws = _towers(g, cfg)
    kernel = towereq.tower_kernel(g, tws)
    summary = fourier_mod.compare_kernel_image(fd, kernel)
    image = fourier_mod.image_id_minus_f(fd)
    data = {
        "spec": str(g.spec),
        "kernel_dim": summary["kernel_dim"],
        "image_dim": summary["image_dim"],
        "image_in_kernel": summary["image_in_kernel"],
        "equal": summary["equal"],
        "kernel_basis": [[str(x) for x in row] for row in kernel],
        "image_basis": [[str(x) for x in row] for row in image],
    }
    checks = [
        _check("image_contained_in_kernel", bool(summary["image_in_kernel"])),
        _check(
            "kernel_equals_image",
            bool(summary["equal"]),
            {"kernel_dim": summary["kernel_dim"], "image_dim": summary["image_dim"]},
        ),
    ]
    return _report(cfg, checks, data, {"total": _ms(t0)})


def cmd_hooktable(cfg: RunConfig) -> dict:
    t0 = time.monotonic()
    spec = GroupSpec.parse(cfg.group)
    if spec.e == 1:
        raise UnsupportedGroupError("hook tables need e >= 2")
    rows = []
    for k in range(spec.rank + 1):
        idx = HookIndex(spec.e, spec.p, spec.n, k)
        a, big_a = a_A_hook(idx)
        rows.append(
            {
                "k": k,
                "degree_poly": str(degree_hook(idx)),
                "a": a,
                "A": big_a,
                "value_at_coxeter_root": str(degree_at_coxeter_root(idx)),
                "value_at_one": str(degree_at_one(idx)),
            }
        )
    data = {"spec": str(spec), "coxeter_number": _hook_h(spec), "rows": rows}
    return _report(cfg, [], data, {"total": _ms(t0)})


def _hook_h(spec: GroupSpec) -> int:
    return HookIndex(spec.e, spec.p, spec.n, 0).coxeter_number


def _cache_for(cfg: RunConfig) -> JsonCache | None:
    directory = cfg.cache_dir or os.environ.get(CACHE_ENV)
    return JsonCache(directory) if directory else None


def _ms(t0: float) -> int:
    return int((time.monotonic() - t0) * 1000)


# -- rendering -----------------------------------------------------------------


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return canonical_json(report)
    if fmt == "csv":
        return _render_csv(report)
    return _render_markdown(report)


def _render_csv(report: dict) -> str:
    import csv
    import io

    buf = io.StringIO()
    w = csv.writer(buf)
    data = report.get("data", {})
    if "values" in data:
        w.writerow(["label"] + data["classes"])
        for lab, row in zip(data["labels"], data["values"]):
            w.writerow([lab] + row)
    elif "rows" in data:
        keys = list(data["rows"][0]) if data["rows"] else []
        w.writerow(keys)
        for r in data["rows"]:
            w.writerow([r.get(k) for k in keys])
    else:
        w.writerow(["check", "status"])
        for c in report["checks"]:
            w.writerow([c["name"], c["status"]])
    return buf.getvalue()


def _render_markdown(report: dict) -> str:
    lines = [f"# spetskit {report['version']} report", ""]
    cfgline = ", ".join(f"{k}={v}" for k, v in sorted(report["config"].items()))
    lines += [f"*config:* {cfgline}", ""]
    if report.get("checks"):
        lines += ["| check | status |", "|---|---|"]
        for c in report["checks"]:
            lines.append(f"| {c['name']} | {c['status']} |")
        lines.append("")
    data = report.get("data", {})
    if "values" in data:
        lines += ["| label | " + " | ".join(data["classes"]) + " |"]
        lines += ["|" + "---|" * (len(data["classes"]) + 1)]
        for lab, row in zip(data["labels"], data["values"]):
            lines.append("| " + lab + " | " + " | ".join(row) + " |")
        lines.append("")
    elif "rows" in data and data["rows"]:
        keys = list(data["rows"][0])
        lines += ["| " + " | ".join(keys) + " |", "|" + "---|" * len(keys)]
        for r in data["rows"]:
            lines.append("| " + " | ".join(str(r.get(k)) for k in keys) + " |")
        lines.append("")
    return "\n".join(lines)


# -- argument parsing ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="spetskit",
        description="Exact verification toolkit for imprimitive spetsial reflection groups",
    )
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--group", required=True, help='group spec, e.g. "G(2,1,3)"')
        p.add_argument(
            "--towers",
            default="conj",
            help="tower set: all | conj | sample:<k>:<seed>",
        )
        p.add_argument("--cap", type=int, default=DEFAULT_ORDER_CAP)
        p.add_argument("--cache-dir", default=None)
        p.add_argument("--format", default="json", choices=["json", "csv", "markdown"])
        p.add_argument("--fourier-data", default=None)

    for name in ("group", "chartable", "coxnum", "kernel-vs-image", "hooktable"):
        common(sub.add_parser(name))
    vp = sub.add_parser("verify")
    vp.add_argument(
        "which", choices=["cchi", "lemma1", "coxeter", "symmetric", "main", "tower-f"]
    )
    common(vp)
    return ap


def _config_from(args) -> RunConfig:
    towers, count, seed = args.towers, 0, 0
    if towers.startswith("sample"):
        parts = towers.split(":")
        if len(parts) != 3:
            raise DomainError("--towers=sample needs sample:<count>:<seed>")
        towers, count, seed = "sample", int(parts[1]), int(parts[2])
    elif towers not in ("all", "conj"):
        raise DomainError(f"unknown tower mode {args.towers!r}")
    return RunConfig(
        group=args.group,
        towers=towers,
        sample_count=count,
        seed=seed,
        cap=args.cap,
        cache_dir=args.cache_dir,
        fmt=args.format,
        fourier_data=args.fourier_data,
    )


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(message)s")
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = _config_from(args)
        if args.command == "group":
            report = cmd_group(cfg)
        elif args.command == "chartable":
            report = cmd_chartable(cfg)
        elif args.command == "coxnum":
            report = cmd_coxnum(cfg)
        elif args.command == "verify":
            report = cmd_verify(cfg, args.which)
        elif args.command == "kernel-vs-image":
            report = cmd_kernel_vs_image(cfg)
        elif args.command == "hooktable":
            report = cmd_hooktable(cfg)
        else:  # pragma: no cover
            raise DomainError(f"unknown command {args.command}")
    except (DomainError, CapExceededError, UnsupportedGroupError, OSError) as ex:
        print(f"spetskit: error: {ex}", file=sys.stderr)
        return 2
    except ValidationError as ex:
        print(f"spetskit: validation failure: {ex}", file=sys.stderr)
        return 1
    sys.stdout.write(render(report, cfg.fmt))
    failed = any(c["status"] == "fail" for c in report.get("checks", []))
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
