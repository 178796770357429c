"""Command-line front end.

Exit codes: 0 success / pass / true, 1 failed check / false predicate,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from .certifier import DEFAULT_MAX_D, certify, dumps, search_tuple, verify
from .cubic_lattice_model import A2_GRAM, E8_GRAM, U_GRAM, build_ambient
from .errors import Infeasible, LatticeError, SchemaError
from .exact_linalg import IntMatrix, short_vectors
from .predicates import DEFAULT_BOUND, predicate_report

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # one-line diagnostic instead of argparse's usage dump
        raise UsageError(f"{self.prog}: {message}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hassett-lattice", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("info", help="summarise the ambient lattice")
    s.add_argument("--json", action="store_true")

    s = sub.add_parser("predicates", help="arithmetic conditions on a discriminant")
    s.add_argument("d", type=_positive)
    s.add_argument("--bound", type=_positive, default=DEFAULT_BOUND)
    s.add_argument("--json", action="store_true")

    s = sub.add_parser("certify", help="build and certify a sublattice")
    s.add_argument("--discriminants", type=_int_list)
    s.add_argument("--mode", default="auto", help="auto or case:<ID>")
    s.add_argument("--params", type=_int_list)
    s.add_argument("--bound", type=_positive, default=DEFAULT_BOUND)
    s.add_argument("--no-extended", action="store_true", help="skip the informational norm-6 count")
    s.add_argument("--out", type=Path)
    s.add_argument("--json", action="store_true")

    s = sub.add_parser("verify", help="re-check a certificate file")
    s.add_argument("file", type=Path)
    s.add_argument("--json", action="store_true")

    s = sub.add_parser("search", help="find a certified tuple")
    s.add_argument("--count", type=_positive, required=True)
    s.add_argument("--include", type=_int_list, default=[])
    s.add_argument("--max-d", type=_positive, default=DEFAULT_MAX_D)
    s.add_argument("--no-distinct", action="store_true")
    s.add_argument("--bound", type=_positive, default=DEFAULT_BOUND)
    s.add_argument("--no-extended", action="store_true")
    s.add_argument("--out", type=Path)
    s.add_argument("--json", action="store_true")

    s = sub.add_parser("shortvec", help="enumerate short vectors of a Gram matrix")
    s.add_argument("--lattice", required=True, help="E8, A2, U2, ambient or file:<gram.json>")
    s.add_argument("--bound", type=_positive, required=True)
    s.add_argument("--json", action="store_true")
    return p


def _emit(obj: Any) -> None:
    sys.stdout.write(dumps(obj) if isinstance(obj, dict) else json.dumps(obj) + "\n")


def _write(path: Path, text: str) -> None:
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}")


def _cmd_info(args) -> int:
    amb = build_ambient()
    h2 = [amb.names[i] for i, c in enumerate(amb.h2) if c]
    info = {
        "rank": str(amb.rank),
        "blocks": [{"name": name, "rank": str(r)} for name, r in amb.blocks()],
        "basis": list(amb.names),
        "h2": {"support": h2, "norm": str(amb.pair(amb.h2, amb.h2))},
    }
    if args.json:
        _emit(info)
    else:
        print(f"ambient rank {info['rank']}: " + " + ".join(f"{b['name']}({b['rank']})" for b in info["blocks"]))
        print("basis: " + " ".join(amb.names))
        print(f"h^2 = {' + '.join(h2)}, (h^2, h^2) = {info['h2']['norm']}")
    return EXIT_OK


def _fmt_tri(t: dict[str, Any]) -> str:
    w = t["witness"]
    ws = ", ".join(f"{k}={v}" for k, v in w.items()) if w else ""
    if t["status"] == "true":
        return f"true ({ws})"
    if t["status"] == "false_up_to_bound":
        return f"false up to bound {t['bound']}"
    return "false"


def _cmd_predicates(args) -> int:
    rep = predicate_report(args.d, args.bound).to_json()
    if args.json:
        _emit(rep)
    else:
        ds = rep["double_star"]
        fh = rep["fano_hilb"]
        print(f"d = {rep['d']}")
        print(f"  (*)     admissible        : {str(rep['star']).lower()}")
        print(f"  (**)    6m^2 or 6m^2+2    : {str(ds['value']).lower()}" + (f" (m={ds['m']})" if ds["m"] else ""))
        print(f"  (*')    associated K3     : {str(rep['assoc_k3']).lower()}")
        print(f"  (***)   d = f^2 g         : {_fmt_tri(rep['bulles'])}")
        print(f"  (***')  8fold condition   : {_fmt_tri(rep['llsvs'])}")
        print(f"  Fano    d = 2(n^2+n+1)    : {str(fh['value']).lower()}" + (f" (n={fh['n']})" if fh["n"] else ""))
        print(f"  Addington                 : {_fmt_tri(rep['addington'])}")
    return EXIT_OK if rep["star"] else EXIT_FAIL


def _print_cert_summary(payload: dict[str, Any]) -> None:
    print(f"tuple: {','.join(payload['tuple'])}  mode: {payload['mode']}")
    for row in payload["gram"]:
        print("  " + " ".join(f"{x:>5}" for x in row))
    for k, v in payload["checks"].items():
        print(f"  {k}: {v if not isinstance(v, bool) else str(v).lower()}")
    for lab in payload["labellings"]:
        g = lab["gram_2x2"]
        print(f"  labelling {lab['index']}: [[{g[0][0]},{g[0][1]}],[{g[1][0]},{g[1][1]}]] "
              f"disc {lab['discriminant']} matches={str(lab['matches_d']).lower()} "
              f"saturated={str(lab['saturated_in_M']).lower()}")
    k3 = payload["k3_report"]
    print(f"  rank A(X) >= {k3['rank_AX_lower_bound']}; NS rank of associated K3 >= "
          f"{k3['ns_rank_lower_bound'] if k3['ns_rank_lower_bound'] is not None else 'n/a'}"
          + (f" (witness slots {','.join(k3['witnesses'])})" if k3["witnesses"] else ""))
    ext = payload.get("extended_checks")
    if ext:
        print(f"  informational: {ext['norm6_pairs_orthogonal_to_h2']} norm-{ext['norm']} pairs orthogonal to h^2")
    v = payload["verdict"]
    print(f"verdict: {v['result']}" + (f" ({', '.join(v['failed_checks'])})" if v["failed_checks"] else ""))


def _finish_cert(payload: dict[str, Any], args) -> int:
    if args.out:
        _write(args.out, dumps(payload))
    if args.json:
        _emit(payload)
    else:
        _print_cert_summary(payload)
        if args.out:
            print(f"certificate written to {args.out}")
    return EXIT_OK if payload["verdict"]["result"] == "pass" else EXIT_FAIL


def _cmd_certify(args) -> int:
    if args.discriminants is None and args.mode == "auto":
        raise UsageError("certify: --discriminants is required in auto mode")
    if args.params is not None and args.mode == "auto":
        raise UsageError("certify: --params only applies to --mode case:<ID>")
    cert = certify(args.discriminants, args.mode, args.params, bound=args.bound, extended=not args.no_extended)
    return _finish_cert(cert.to_json(), args)


def _cmd_verify(args) -> int:
    try:
        text = args.file.read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc.strerror}")
    result = verify(text)
    if args.json:
        _emit({"result": "pass" if result.ok else "fail", "reasons": list(result.reasons)})
    else:
        print("pass" if result.ok else "fail: " + "; ".join(result.reasons))
    return EXIT_OK if result.ok else EXIT_FAIL


def _cmd_search(args) -> int:
    try:
        _, cert = search_tuple(
            args.count, args.include, args.max_d, not args.no_distinct,
            bound=args.bound, extended=not args.no_extended,
        )
    except Infeasible as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_FAIL
    return _finish_cert(cert.to_json(), args)


_NAMED_LATTICES = {
    "E8": E8_GRAM,
    "A2": A2_GRAM,
    "U2": tuple(
        tuple(U_GRAM[i % 2][j % 2] if i // 2 == j // 2 else 0 for j in range(4)) for i in range(4)
    ),
}


def _load_gram(spec: str) -> IntMatrix:
    if spec in _NAMED_LATTICES:
        return IntMatrix(_NAMED_LATTICES[spec])
    if spec == "ambient":
        return build_ambient().gram
    if spec.startswith("file:"):
        path = Path(spec[5:])
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
            gram = IntMatrix([[int(x) for x in row] for row in data["gram"]])
            r = int(data["rank"])
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}")
        except (ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"{path}: expected {{\"rank\": r, \"gram\": [[decimal strings]]}} ({exc})")
        if gram.shape != (r, r):
            raise UsageError(f"{path}: rank {r} does not match a {gram.nrows}x{gram.ncols} Gram matrix")
        return gram
    raise UsageError(f"unknown lattice {spec!r}; use E8, A2, U2, ambient or file:<gram.json>")


def _cmd_shortvec(args) -> int:
    gram = _load_gram(args.lattice)
    found = short_vectors(gram, args.bound)
    out = {
        "lattice": args.lattice,
        "bound": str(args.bound),
        "pairs_count": str(len(found)),
        "vectors_count": str(found.count_vectors()),
        "pairs": [{"vector": [str(x) for x in v], "norm": str(q)} for v, q in found],
    }
    if args.json:
        _emit(out)
    else:
        print(f"{args.lattice}: {out['pairs_count']} pairs ({out['vectors_count']} vectors) of norm <= {args.bound}")
        for v, q in found:
            print(f"  {' '.join(f'{x:>3}' for x in v)}   norm {q}")
    return EXIT_OK


_COMMANDS = {
    "info": _cmd_info,
    "predicates": _cmd_predicates,
    "certify": _cmd_certify,
    "verify": _cmd_verify,
    "search": _cmd_search,
    "shortvec": _cmd_shortvec,
}


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return _COMMANDS[args.command](args)
    except (UsageError, SchemaError, LatticeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
