"""Command-line entry point: single computations and batch verification sweeps.

Every flag can also be set through an environment variable named ``WEYLEXT_`` plus the
flag name in upper case (``--max-degree`` -> ``WEYLEXT_MAX_DEGREE``); a flag given on the
command line wins over the environment.

Exit codes: 0 all checks passed, 1 a verification failed, 2 invalid input.
"""

from __future__ import annotations

import hashlib
import json
import os
import random
import sys
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import click

from . import __version__
from .abw import WeylModule
from .combinatorics import Partition, SkewShape, as_partition, parse_row, partitions
from .homology import ExtFinitenessError, ext_groups, hom_presented
from . import theorems as th

CACHE_TAG = f"weylext-{__version__}-1"
KINDS = ("thm21", "thm22", "lemmas", "vanishing", "removal", "skewrep", "stability", "digit")


@dataclass(frozen=True)
class RunConfig:
    max_degree: int = 4
    max_i: int = 2
    n_override: int | None = None
    cache_dir: Path | None = None
    output_format: str = "json"
    parallelism: int = 1

    def __post_init__(self):
        if self.max_i < 1:
            raise click.BadParameter("--max-i must be >= 1")
        if self.max_degree < 1:
            raise click.BadParameter("--max-degree must be >= 1")
        if self.parallelism < 1:
            raise click.BadParameter("--jobs must be >= 1")


# ---------------------------------------------------------------------------
# cache

class ResultCache:
    """One JSON file per case key; writes go to a temp file that is then renamed."""

    def __init__(self, directory: Path | None):
        self.directory = directory
        if directory is not None:
            try:
                directory.mkdir(parents=True, exist_ok=True)
            except OSError as exc:
                raise CacheError(f"cannot create cache directory {directory}: {exc}") from exc

    def _path(self, key: str) -> Path:
        return self.directory / (hashlib.sha256(key.encode()).hexdigest()[:32] + ".json")

    def get(self, key: str):
        if self.directory is None:
            return None
        path = self._path(key)
        if not path.exists():
            return None
        try:
            entry = json.loads(path.read_text())
        except (OSError, ValueError) as exc:
            click.echo(f"warning: unreadable cache entry {path.name} ({exc}); recomputing", err=True)
            return None
        if not isinstance(entry, dict) or entry.get("version") != CACHE_TAG or entry.get("key") != key:
            return None
        return entry.get("value")

    def put(self, key: str, value) -> None:
        if self.directory is None:
            return
        payload = json.dumps({"key": key, "version": CACHE_TAG, "value": value}, sort_keys=True)
        try:
            fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
            with os.fdopen(fd, "w") as fh:
                fh.write(payload + "\n")
            os.replace(tmp, self._path(key))
        except OSError as exc:
            raise CacheError(f"cannot write cache entry in {self.directory}: {exc}") from exc


class CacheError(click.ClickException):
    exit_code = 2


# ---------------------------------------------------------------------------
# cases

def _pk(p) -> str:
    return ",".join(map(str, as_partition(p).parts)) or "0"


def cases_for(kind: str, cfg: RunConfig) -> list[tuple[str, tuple]]:
    """``(kind, args)`` jobs; each is run by ``run_case``."""
    D = cfg.max_degree
    if kind == "thm21":
        return [("thm21", (lam.parts, mu.parts, cfg.max_i)) for lam, mu in th.thm21_pairs(D)]
    if kind == "thm22":
        return [("thm22", (lam.parts, via)) for lam in th.thm22_shapes(D) for via in ("direct", "dual")]
    if kind == "lemmas":
        return [(k, (nu.parts,)) for nu in th.lemma_shapes(D) for k in ("lemmaC", "lemmaB", "lemmaA")]
    if kind == "vanishing":
        return [("vanishing", (lam.parts, cfg.max_i)) for d in range(1, D + 1) for lam in partitions(d)]
    if kind == "removal":
        return [("removal", (lam.parts, mu.parts)) for lam, mu in th.thm21_pairs(D)]
    if kind == "stability":
        pairs = th.thm21_pairs(D)
        sample = random.Random(0).sample(pairs, min(20, len(pairs)))
        return [("stability", (lam.parts, mu.parts, cfg.n_override)) for lam, mu in sample]
    if kind == "skewrep":
        return [("skewrep", (lam.parts, t, cfg.max_i)) for d in range(1, D + 1) for lam in partitions(d)
                for t in (1, 2) if len(lam) >= t]
    if kind == "digit":
        return [("digit", (lam.parts, p)) for d in range(1, D + 1) for lam in partitions(d) for p in (2, 3)]
    raise click.BadParameter(f"unknown verification {kind!r}")


def run_case(job: tuple[str, tuple]) -> dict:
    kind, args = job
    if kind == "thm21":
        lam, mu, max_i = args
        rep = th.verify_thm21(th.Thm21Case.from_pair(lam, mu), max_i=max_i)
    elif kind == "thm22":
        rep = th.verify_thm22(Partition(args[0]), via=args[1])
    elif kind == "lemmaC":
        rep = th.verify_lemmaC(Partition(args[0]))
    elif kind == "lemmaB":
        rep = th.verify_lemmaB(Partition(args[0]))
    elif kind == "lemmaA":
        rep = th.verify_lemmaA(Partition(args[0]))
    elif kind == "vanishing":
        rep = th.verify_vanishing(Partition(args[0]), max_i=args[1])
    elif kind == "removal":
        rep = th.verify_removal(Partition(args[0]), Partition(args[1]))
    elif kind == "stability":
        rep = th.verify_stability(Partition(args[0]), Partition(args[1]), n=args[2])
    elif kind == "skewrep":
        rep = th.verify_skewrep(Partition(args[0]), args[1], max_i=args[2])
    elif kind == "digit":
        rep = th.digit_vs_modular(Partition(args[0]), args[1])
    else:
        raise ValueError(f"unknown case kind {kind!r}")
    return rep.to_dict(timing=True)


def case_key(job: tuple[str, tuple]) -> str:
    kind, args = job
    return f"{CACHE_TAG}|{kind}|{json.dumps(args)}"


def run_jobs(jobs: list, cfg: RunConfig, cache: ResultCache) -> list[dict]:
    results: dict[int, dict] = {}
    todo = []
    for k, job in enumerate(jobs):
        hit = cache.get(case_key(job))
        if hit is not None:
            results[k] = dict(hit, cached=True)
        else:
            todo.append(k)
    if cfg.parallelism > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=cfg.parallelism) as pool:
            fresh = list(pool.map(run_case, [jobs[k] for k in todo]))
    else:
        fresh = [run_case(jobs[k]) for k in todo]
    for k, rep in zip(todo, fresh):
        stored = {key: v for key, v in rep.items() if key != "ms"}
        cache.put(case_key(jobs[k]), stored)
        results[k] = rep
    return sorted(results.values(), key=lambda r: r["case"])


# ---------------------------------------------------------------------------
# output

def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _short(x) -> str:
    text = x if isinstance(x, str) else json.dumps(x, sort_keys=True)
    return text if len(text) <= 40 else text[:37] + "..."


def emit_reports(reports: list[dict], fmt: str) -> bool:
    failed = [r["case"] for r in reports if r["status"] != "pass"]
    summary = {"summary": {"total": len(reports), "passed": len(reports) - len(failed),
                           "failed": len(failed), "failed_cases": failed}}
    if fmt == "json":
        for r in reports:
            click.echo(_dump({k: v for k, v in r.items() if k not in ("ms", "cached")}))
        click.echo(_dump(summary))
    else:
        click.echo(f"{'case':<34} {'predicted':<40} {'computed':<40} {'status':<6} {'ms':>9}")
        for r in reports:
            ms = "cached" if r.get("cached") else f"{r.get('ms', 0):.1f}"
            click.echo(f"{r['case']:<34} {_short(r['predicted']):<40} {_short(r['computed']):<40} "
                       f"{r['status']:<6} {ms:>9}")
        click.echo(f"{summary['summary']['passed']}/{len(reports)} passed")
    return not failed


# ---------------------------------------------------------------------------
# parsing

def parse_partition(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except ValueError as exc:
        raise click.BadParameter(f"cannot parse partition {text!r}: {exc}") from exc


def parse_shape(text: str) -> SkewShape:
    try:
        return SkewShape.parse(text)
    except ValueError as exc:
        raise click.BadParameter(f"cannot parse shape {text!r}: {exc}") from exc


def parse_element(text: str) -> tuple:
    """Rows separated by ``|``, each row in the ``1^2 2`` syntax."""
    try:
        return tuple(parse_row(r) for r in text.split("|"))
    except ValueError as exc:
        raise click.BadParameter(f"cannot parse tableau {text!r}: {exc}") from exc


def _n_for(shape: SkewShape, n: int | None) -> int:
    n = shape.num_rows if n is None else n
    if n < max(shape.num_rows, 1):
        raise click.BadParameter(f"--n {n} is smaller than the {shape.num_rows} rows of {shape}")
    return n


# ---------------------------------------------------------------------------
# commands

def common(f):
    opts = [
        click.option("--max-degree", type=int, default=4, show_default=True, envvar="WEYLEXT_MAX_DEGREE"),
        click.option("--max-i", type=int, default=2, show_default=True, envvar="WEYLEXT_MAX_I"),
        click.option("--n", "n", type=int, default=None, envvar="WEYLEXT_N"),
        click.option("--format", "fmt", type=click.Choice(["json", "table"]), default="json",
                     show_default=True, envvar="WEYLEXT_FORMAT"),
        click.option("--cache-dir", type=click.Path(file_okay=False, path_type=Path), default=None,
                     envvar="WEYLEXT_CACHE_DIR"),
        click.option("--no-cache", is_flag=True, default=False, envvar="WEYLEXT_NO_CACHE"),
        click.option("--jobs", type=int, default=1, show_default=True, envvar="WEYLEXT_JOBS"),
    ]
    for opt in reversed(opts):
        f = opt(f)
    return f


def _config(max_degree, max_i, n, fmt, cache_dir, no_cache, jobs) -> tuple[RunConfig, ResultCache]:
    cfg = RunConfig(max_degree, max_i, n, None if no_cache else cache_dir, fmt, jobs)
    return cfg, ResultCache(cfg.cache_dir)


@click.group()
@click.version_option(__version__)
def main():
    """Weyl modules, Hom and Ext over the integers, and verification sweeps."""


@main.command()
@click.argument("shape")
@common
def basis(shape, **kw):
    """Standard basis of K_SHAPE, grouped by weight."""
    cfg, _ = _config(**kw)
    sh = parse_shape(shape)
    K = WeylModule(sh, _n_for(sh, cfg.n_override))
    weights = {",".join(map(str, w)): [K.render(t) for t in K.weight_basis(w)] for w in K.weights()}
    weights = {w: b for w, b in weights.items() if b}
    if cfg.output_format == "json":
        click.echo(_dump({"shape": str(sh), "n": K.n, "rank": K.rank, "weights": weights}))
    else:
        click.echo(f"K({sh}) over n={K.n}: rank {K.rank}")
        for w, b in weights.items():
            click.echo(f"  ({w}): " + "; ".join(b))


@main.command()
@click.argument("shape")
@click.argument("element")
@common
def straighten(shape, element, **kw):
    """Standard-basis coordinates of a tableau ELEMENT like '1^2 2 | 3'."""
    cfg, _ = _config(**kw)
    sh = parse_shape(shape)
    label = parse_element(element)
    if tuple(len(r) for r in label) != sh.row_lengths:
        raise click.BadParameter(f"row lengths of {element!r} do not fit {sh}")
    n = max(_n_for(sh, cfg.n_override), max((x for r in label for x in r), default=1))
    K = WeylModule(sh, n)
    coords = K.straighten({label: 1})
    terms = [{"tableau": K.render(t), "coef": c} for t, c in sorted(coords.items())]
    if cfg.output_format == "json":
        click.echo(_dump({"shape": str(sh), "n": n, "input": K.render(label), "result": terms}))
    else:
        click.echo(" + ".join(f"{t['coef']}*[{t['tableau']}]" for t in terms) or "0")


@main.command()
@click.argument("source")
@click.argument("target")
@common
def hom(source, target, **kw):
    """Hom(K_SOURCE, K_TARGET) from the presentation of the source."""
    cfg, _ = _config(**kw)
    a, b = parse_shape(source), parse_shape(target)
    if a.degree != b.degree:
        raise click.BadParameter(f"degree mismatch: {a.degree} vs {b.degree}")
    n = cfg.n_override or max(a.num_rows, b.num_rows, 1)
    N = WeylModule(b, _n_for(b, n))
    if a.num_rows > n:
        raise click.BadParameter(f"--n {n} is smaller than the rows of {a}")
    gens = hom_presented(a, N)
    out = {"source": str(a), "target": str(b), "n": n, "rank": len(gens),
           "generators": [[{"tableau": N.render(t), "coef": c} for t, c in sorted(g.items())] for g in gens]}
    if cfg.output_format == "json":
        click.echo(_dump(out))
    else:
        click.echo(f"Hom(K({a}), K({b})) over n={n}: free of rank {len(gens)}")


@main.command()
@click.argument("lam")
@click.argument("mu")
@common
def ext(lam, mu, **kw):
    """Ext^i(K_LAM, K_MU) for 0 <= i <= --max-i, one JSON object per i."""
    cfg, cache = _config(**kw)
    a, b = parse_shape(lam), parse_shape(mu)
    if a.degree != b.degree:
        raise click.BadParameter(f"degree mismatch: {a.degree} vs {b.degree}")
    n = cfg.n_override or max(a.num_rows, b.num_rows, 1)
    if max(a.num_rows, b.num_rows) > n:
        raise click.BadParameter(f"--n {n} is too small")
    key = f"{CACHE_TAG}|ext|{a}|{b}|{n}|{cfg.max_i}"
    rows = cache.get(key)
    if rows is None:
        try:
            res = ext_groups(WeylModule(a, n), WeylModule(b, n), max_i=cfg.max_i)
        except ExtFinitenessError as exc:
            raise click.ClickException(str(exc)) from exc
        rows = [r.to_dict() for r in res]
        cache.put(key, rows)
    if cfg.output_format == "json":
        for r in rows:
            click.echo(_dump(r))
    else:
        for r in rows:
            tors = " + ".join(f"Z/{t}" for t in r["torsion"])
            free = f"Z^{r['free_rank']}" if r["free_rank"] else ""
            click.echo(f"Ext^{r['i']} = {' + '.join(x for x in (free, tors) if x) or '0'}")


@main.command()
@click.argument("kind", type=click.Choice(KINDS))
@common
def verify(kind, **kw):
    """Run one family of verifications; JSON Lines reports and a summary."""
    cfg, cache = _config(**kw)
    ok = emit_reports(run_jobs(cases_for(kind, cfg), cfg, cache), cfg.output_format)
    sys.exit(0 if ok else 1)


@main.command()
@common
def sweep(**kw):
    """Run every verification family up to --max-degree."""
    cfg, cache = _config(**kw)
    t0 = time.perf_counter()
    jobs = [job for kind in KINDS for job in cases_for(kind, cfg)]
    ok = emit_reports(run_jobs(jobs, cfg, cache), cfg.output_format)
    if cfg.output_format == "table":
        click.echo(f"total {time.perf_counter() - t0:.1f}s")
    sys.exit(0 if ok else 1)


if __name__ == "__main__":
    main()
