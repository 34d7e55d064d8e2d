"""Command-line front end.

Exit status: 0 success, 1 other errors, 2 parse or usage errors, 3 degree
overflow (raise --bound), 4 a verification failed.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from fractions import Fraction
from pathlib import Path

from .algebra import Element, TypeSequence, alphabet
from .cartan import CartanData, CartanError, cartan_type, validate
from .coeff import eval_at
from .parsing import ParseError, parse
from .reports import CheckResult, Report
from .rewrite import DegreeOverflow, counts_by_degree, graded_counts

log = logging.getLogger("weakquantum")

EXIT_OK, EXIT_ERROR, EXIT_PARSE, EXIT_OVERFLOW, EXIT_FAILED = 0, 1, 2, 3, 4

CHECKS = (
    "relations", "coalgebra", "weak-antipode", "grouplikes", "braid",
    "basis-counts", "rho", "non-hopf", "automorphism",
)


class UsageError(ValueError):
    pass


@dataclass
class SessionConfig:
    type: str | None = None
    matrix: str | None = None
    dseq: str | None = None
    bound: int = 8
    q: str | None = None
    cache_dir: str | None = None
    json: bool = False
    jobs: int = 1
    max_len: int | None = None

    def cartan(self) -> CartanData:
        if self.matrix:
            return validate(_read_matrix(self.matrix))
        if not self.type:
            raise UsageError("give --type or --matrix")
        return cartan_type(self.type)

    def dseqs(self, n: int) -> list[TypeSequence]:
        if self.dseq is None:
            return [TypeSequence.all_ones(n)]
        if self.dseq.strip().lower() == "all":
            return TypeSequence.enumerate(n)
        return [TypeSequence.parse(self.dseq, n)]

    def qval(self) -> Fraction | None:
        if self.q is None:
            return None
        try:
            return Fraction(self.q)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"--q expects a rational, got {self.q!r}") from None

    def validate(self):
        if self.bound < 2:
            raise UsageError("--bound must be at least 2")
        if self.jobs < 1:
            raise UsageError("--jobs must be positive")


def _read_matrix(path: str) -> list[list[int]]:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        data = [[int(x) for x in line.replace(",", " ").split()]
                for line in text.splitlines() if line.strip()]
    return data


def load_config(path: str | None, args: argparse.Namespace) -> SessionConfig:
    """Config-file values, overridden by any flag given on the command line."""
    cfg = SessionConfig()
    if path:
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {path}: {exc}") from None
        known = {f.name for f in fields(SessionConfig)}
        for key, value in data.items():
            key = key.replace("-", "_")
            if key not in known:
                raise UsageError(f"unknown config key {key!r}")
            setattr(cfg, key, value)
    for f in fields(SessionConfig):
        value = getattr(args, f.name, None)
        if value is not None and value is not False:
            setattr(cfg, f.name, value)
    cfg.validate()
    return cfg


# ---------------------------------------------------------------------------
# systems
# ---------------------------------------------------------------------------

def _system(cfg: SessionConfig, c: CartanData, d: TypeSequence, variant: str = "base"):
    from .cache import get_system

    return get_system(c, d, cfg.bound, variant, cfg.cache_dir)


def _format_evaluated(x: Element, qval: Fraction) -> str:
    names = alphabet(x.n).names
    parts = []
    for w, c in x.sorted_terms():
        v = eval_at(c, qval)
        if not v:
            continue
        word = "*".join(names[a] for a in w) or "1"
        parts.append((v, word))
    if not parts:
        return "0"
    out = ""
    for k, (v, word) in enumerate(parts):
        sign = "-" if v < 0 else "+"
        v = abs(v)
        body = word if v == 1 and word != "1" else (str(v) if word == "1" else f"{v}*{word}")
        out += (("-" if sign == "-" else "") + body) if k == 0 else f" {sign} {body}"
    return out


def _element_json(x: Element, qval) -> dict:
    names = alphabet(x.n).names
    out = {"normal_form": str(x), "terms": [
        {"word": [names[a] for a in w], "coeff": c.to_string()} for w, c in x.sorted_terms()
    ]}
    if qval is not None:
        out["evaluated"] = _format_evaluated(x, qval)
    return out


def _emit(cfg: SessionConfig, payload: dict, text: str):
    print(json.dumps(payload, indent=2, ensure_ascii=False) if cfg.json else text)


# ---------------------------------------------------------------------------
# expression commands
# ---------------------------------------------------------------------------

def cmd_expr(cfg: SessionConfig, args) -> int:
    from .hopf import WeakHopf

    c = cfg.cartan()
    d = cfg.dseqs(c.n)
    if len(d) != 1:
        raise UsageError("expression commands need a single --dseq")
    sys_ = _system(cfg, c, d[0])
    x = parse(args.expr, c.n)
    h = WeakHopf(sys_)
    qval = cfg.qval()
    if args.command == "normalize":
        y = sys_.normalize(x)
        payload = {"input": args.expr, **_element_json(y, qval)}
        text = _format_evaluated(y, qval) if qval is not None else str(y)
    elif args.command == "antipode":
        y = h.antipode(sys_.normalize(x))
        payload = {"input": args.expr, **_element_json(y, qval)}
        text = _format_evaluated(y, qval) if qval is not None else str(y)
    elif args.command == "counit":
        v = h.counit(sys_.normalize(x))
        payload = {"input": args.expr, "counit": v.to_string()}
        if qval is not None:
            payload["evaluated"] = str(eval_at(v, qval))
        text = payload.get("evaluated", v.to_string())
    else:  # delta
        t = h.delta(sys_.normalize(x))
        names = alphabet(c.n).names
        payload = {"input": args.expr, "tensor_normal_form": str(t), "terms": [
            {"words": [[names[a] for a in w] for w in ws], "coeff": cf.to_string()}
            for ws, cf in t.terms.items()
        ]}
        text = str(t)
    _emit(cfg, payload, text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------

def _run_check(job: dict) -> dict:
    """Run one check on one (cartan, d) instance; top level so worker
    processes can pickle it."""
    from . import auto, hopf, pbw

    cfg = SessionConfig(**job["cfg"])
    c = cfg.cartan()
    d = TypeSequence.parse(job["dseq"], c.n)
    kind = job["check"]
    maxlen = cfg.max_len
    try:
        sys_ = _system(cfg, c, d)
        h = hopf.WeakHopf(sys_)
        rep = Report()
        if kind == "relations":
            rep = hopf.relation_soundness(sys_)
        elif kind == "coalgebra":
            rep = hopf.coalgebra_axiom_checks(h, maxlen or 3)
            rep.extend(hopf.counit_generator_identities(h))
        elif kind == "weak-antipode":
            rep = hopf.weak_antipode_checks(h, maxlen or 3)
        elif kind == "grouplikes":
            rep = hopf.grouplike_checks(h, maxlen or 4)
        elif kind == "rho":
            rep = hopf.rho_check(h)
        elif kind == "non-hopf":
            rep = hopf.non_hopf_witness(h)
        elif kind == "braid":
            q1 = _system(cfg, c, d, "J1")
            for i in range(1, c.n + 1):
                rep.extend(pbw.homomorphism_check(q1, i))
                for j in range(i + 1, c.n + 1):
                    rep.extend(pbw.braid_check(q1, i, j))
        elif kind == "basis-counts":
            rep = pbw.basis_count_check(
                sys_, maxlen or 4, oracle_len=job.get("oracle_len"),
                quotient=_system(cfg, c, d, "J1"), ideal=_system(cfg, c, d, "J0"),
            )
        elif kind == "automorphism":
            params = auto.parse_params(job["a"])
            if params.n != c.n:
                raise UsageError(f"--a needs {c.n} entries")
            sigma = auto.parse_perm(job["sigma"]) if job.get("sigma") else auto.DiagramSymmetry.identity(c.n)
            if sigma.n != c.n:
                raise UsageError(f"--sigma needs {c.n} entries")
            m = auto.compose(h, auto.phi_a(params), auto.sigma_map(sigma, c, d))
            m.name = f"phi_a o sigma (a={job['a']}, sigma={sigma})"
            rep = auto.verify_weak_hopf_automorphism(h, m, maxlen or 3)
            rep.extend(auto.semidirect_check(h, sigma, params))
        else:
            raise UsageError(f"unknown check {kind!r}")
        return {"report": rep.to_dict()}
    except DegreeOverflow as exc:
        return {"overflow": f"{c.key} d={d}: {exc}"}
    except (UsageError, ValueError) as exc:
        return {"usage": str(exc)}


def cmd_check(cfg: SessionConfig, args) -> int:
    c = cfg.cartan()
    if args.check == "automorphism" and args.a is None:
        raise UsageError("check automorphism needs --a")
    base = {f.name: getattr(cfg, f.name) for f in fields(SessionConfig)}
    jobs = [
        {"cfg": base, "dseq": str(d), "check": args.check, "a": args.a, "sigma": args.sigma,
         "oracle_len": getattr(args, "oracle_len", None)}
        for d in cfg.dseqs(c.n)
    ]
    if cfg.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_run_check, jobs))
    else:
        results = [_run_check(j) for j in jobs]
    report = Report()
    for res in results:
        if "usage" in res:
            raise UsageError(res["usage"])
        if "overflow" in res:
            print(f"degree overflow: {res['overflow']}; rerun with a larger --bound "
                  f"(currently {cfg.bound})", file=sys.stderr)
            return EXIT_OVERFLOW
        for r in res["report"]["results"]:
            report.results.append(CheckResult(r["check"], r["instance"], r["pass"],
                                              r.get("counterexample")))
    _emit(cfg, report.to_dict(verbose=args.verbose), report.to_text())
    return EXIT_OK if report.passed else EXIT_FAILED


# ---------------------------------------------------------------------------
# dims and cache
# ---------------------------------------------------------------------------

def cmd_dims(cfg: SessionConfig, args) -> int:
    c = cfg.cartan()
    ds = cfg.dseqs(c.n)
    if len(ds) != 1:
        raise UsageError("dims needs a single --dseq")
    sys_ = _system(cfg, c, ds[0], "J1" if args.quotient else "base")
    counts = counts_by_degree(graded_counts(sys_, args.max_len))
    by_len = graded_counts(sys_, args.max_len)
    rows = sorted(counts.items(), key=lambda t: (sum(abs(x) for x in t[0]), t[0]))
    payload = {
        "cartan": c.key, "dseq": str(ds[0]), "quotient": bool(args.quotient),
        "max_len": args.max_len,
        "by_degree": [{"degree": list(k), "count": v} for k, v in rows],
        "by_length": _by_length(by_len),
    }
    text = "\n".join(f"{' '.join(f'{x:>3d}' for x in k)}  {v}" for k, v in rows)
    text += "\ntotal by length: " + ", ".join(f"{k}:{v}" for k, v in payload["by_length"].items())
    _emit(cfg, payload, text)
    return EXIT_OK


def _by_length(counts) -> dict:
    out: dict = {}
    for (_, length), v in counts.items():
        out[length] = out.get(length, 0) + v
    return {str(k): out[k] for k in sorted(out)}


def cmd_cache(cfg: SessionConfig, args) -> int:
    from .algebra import build_relations
    from .cache import cache_store, default_cache_dir
    from .rewrite import build_system, quotient_J0, quotient_J1

    cache_dir = Path(cfg.cache_dir) if cfg.cache_dir else default_cache_dir()
    if args.action == "info":
        entries = []
        for path in sorted(cache_dir.glob("*.json")) if cache_dir.exists() else []:
            try:
                data = json.loads(path.read_text())
                entries.append({"file": path.name, "version": data.get("version"),
                                "cartan": data["cartan"]["key"], "dseq": data["dseq"],
                                "variant": data["variant"], "bound": data["bound"],
                                "rules": len(data["rules"]),
                                "globally_confluent": data["globally_confluent"]})
            except (OSError, KeyError, json.JSONDecodeError) as exc:
                entries.append({"file": path.name, "error": str(exc)})
        text = f"cache directory: {cache_dir}\n" + "\n".join(
            (f"{e['file']}: {e['rules']} rules, bound {e['bound']}, "
             f"{'global' if e['globally_confluent'] else 'truncated'}")
            if "error" not in e else f"{e['file']}: unreadable ({e['error']})"
            for e in entries
        )
        _emit(cfg, {"cache_dir": str(cache_dir), "entries": entries}, text)
        return EXIT_OK
    c = cfg.cartan()
    written = []
    for d in cfg.dseqs(c.n):
        base = build_system(build_relations(c, d), cfg.bound)
        for s in (base, quotient_J1(base), quotient_J0(base)):
            written.append(str(cache_store(s, cache_dir)))
    _emit(cfg, {"written": written}, "\n".join(written))
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_common(p: argparse.ArgumentParser, suppress: bool):
    """Session flags; accepted before or after the subcommand."""
    kw = {"default": argparse.SUPPRESS} if suppress else {}
    p.add_argument("--type", help="Cartan type name such as A2, B2, G2", **kw)
    p.add_argument("--matrix", help="file with a Cartan matrix (JSON or whitespace rows)", **kw)
    p.add_argument("--dseq", help="type sequence such as '11|01', or 'all' for checks", **kw)
    p.add_argument("--bound", type=int, help="completion bound L (default 8)", **kw)
    p.add_argument("--q", help="rational value at which to evaluate coefficients", **kw)
    p.add_argument("--cache-dir", dest="cache_dir", help="directory for cached rewrite systems", **kw)
    p.add_argument("--json", action="store_true", help="print JSON instead of text", **kw)
    p.add_argument("--config", help="JSON config file; flags override it", **kw)
    p.add_argument("--jobs", type=int, help="worker processes for multi-instance checks", **kw)
    p.add_argument("-v", "--verbose", action="store_true",
                   help="include passing results in JSON reports", **kw)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="weakquantum",
        description="Normal forms and structure checks for weak quantum algebras.",
    )
    _add_common(p, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _add_common(common, suppress=True)
    sub = p.add_subparsers(dest="command", required=True)
    for name, help_ in (("normalize", "canonical normal form"), ("delta", "coproduct"),
                        ("antipode", "weak antipode T"), ("counit", "counit")):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("expr")
    sp = sub.add_parser("check", parents=[common], help="run a verification and report")
    sp.add_argument("check", choices=CHECKS)
    sp.add_argument("--a", help="comma-separated nonzero rationals for automorphism checks")
    sp.add_argument("--sigma", help="diagram permutation in one-line notation, e.g. 2,1")
    sp.add_argument("--max-len", dest="max_len", type=int, help="word length for sweeps")
    sp.add_argument("--oracle-len", dest="oracle_len", type=int,
                    help="also compare with the linear-algebra oracle up to this length")
    sp = sub.add_parser("dims", parents=[common], help="graded counts of irreducible words")
    sp.add_argument("--max-len", dest="max_len", type=int, required=True)
    sp.add_argument("--quotient", action="store_true", help="use the J -> 1 quotient")
    sp = sub.add_parser("cache", parents=[common], help="manage cached rewrite systems")
    sp.add_argument("action", choices=("rebuild", "info"))
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        cfg = load_config(args.config, args)
        if args.command == "check":
            return cmd_check(cfg, args)
        if args.command == "dims":
            return cmd_dims(cfg, args)
        if args.command == "cache":
            return cmd_cache(cfg, args)
        return cmd_expr(cfg, args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        if exc.text is not None and exc.pos is not None:
            print(f"  {exc.text}\n  {' ' * exc.pos}^", file=sys.stderr)
        return EXIT_PARSE
    except (UsageError, CartanError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DegreeOverflow as exc:
        print(f"degree overflow: {exc}; rerun with a larger --bound", file=sys.stderr)
        return EXIT_OVERFLOW
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except Exception as exc:  # noqa: BLE001
        log.error("%s: %s", type(exc).__name__, exc)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
