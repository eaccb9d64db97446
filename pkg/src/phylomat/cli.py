"""Command-line driver: enumerate cases, run campaigns, check results.

Exit codes: 0 success, 1 error (I/O, malformed input), 2 some cases unsolved
or some records failed verification, 3 comparison budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
from multiprocessing import Pool
from random import Random

from .cases import (CaseDescriptor, CaseResult, case_seed, certify_case,
                    mixture_case, verify_certificate)
from .certfile import (CertificateFileError, append_certificate,
                       read_certificates, write_header)
from .matroid import exhaustive_matroid_equal, model_dimension
from .models import ModelKind
from .orbits import enumerate_mixture_cases


def _enumerated_case_ids(kind: ModelKind, leaves: int) -> list[str]:
    cases = enumerate_mixture_cases(leaves)
    return [mixture_case(kind, c.left, c.right).case_id for c in cases]


def cmd_enumerate(args) -> int:
    kind = ModelKind(args.model)
    ids = _enumerated_case_ids(kind, args.leaves)
    for cid in ids:
        print(cid)
    print(f"total {len(ids)}")
    return 0


def _collect_cases(args) -> list[str]:
    ids: list[str] = []
    if args.case_ids:
        ids.extend(args.case_ids)
    if args.cases:
        with open(args.cases, encoding="utf-8") as fh:
            ids.extend(line.strip() for line in fh if line.strip())
    if not ids:
        ids = _enumerated_case_ids(ModelKind(args.model), args.leaves)
    # normalize through the parser so ids are canonical
    ids = [CaseDescriptor.parse(cid).case_id for cid in ids]
    exclude = set()
    for cid in args.exclude or ():
        exclude.add(CaseDescriptor.parse(cid).case_id)
    if args.exclude_file:
        with open(args.exclude_file, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    exclude.add(CaseDescriptor.parse(line).case_id)
    ids = [cid for cid in ids if cid not in exclude]
    if args.sample is not None:
        rng = Random(args.sample_seed)
        if args.sample < len(ids):
            ids = sorted(rng.sample(ids, args.sample))
    return ids


def _run_case(payload) -> tuple[str, CaseResult]:
    cid, mode, epsilon, trials, master_seed = payload
    case = CaseDescriptor.parse(cid)
    result = certify_case(case, mode=mode, epsilon=epsilon, trials=trials,
                          seed=case_seed(master_seed, cid))
    return cid, result


def cmd_certify(args) -> int:
    try:
        ids = _collect_cases(args)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    payloads = [(cid, args.mode, args.epsilon, args.trials, args.seed) for cid in ids]
    solved = 0
    unsolved: list[tuple[str, CaseResult]] = []
    try:
        out = open(args.out, "w", encoding="utf-8") if args.out else None
    except OSError as exc:
        print(f"error: cannot open output file: {exc}", file=sys.stderr)
        return 1
    try:
        if out:
            write_header(out)
        if args.jobs > 1 and len(payloads) > 1:
            with Pool(args.jobs) as pool:
                results = pool.imap_unordered(_run_case, payloads)
                solved, unsolved = _drain(results, out)
        else:
            solved, unsolved = _drain(map(_run_case, payloads), out)
    finally:
        if out:
            out.close()
    for cid, result in unsolved:
        print(f"unsolved {cid} trials={result.trials_used} "
              f"screen_hits={result.screen_hits}")
    print(f"solved {solved}/{len(ids)}")
    return 0 if not unsolved else 2


def _drain(results, out):
    solved = 0
    unsolved = []
    for cid, result in results:
        if result.solved:
            solved += 1
            if out:
                append_certificate(out, result.certificate)
            print(f"solved {cid} trials={result.trials_used} "
                  f"subset_size={len(result.certificate.subset)}")
        else:
            unsolved.append((cid, result))
    return solved, unsolved


def cmd_verify(args) -> int:
    try:
        certs = read_certificates(args.file)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except CertificateFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    failures = 0
    for i, cert in enumerate(certs, start=1):
        try:
            ok = verify_certificate(cert)
        except ValueError as exc:
            ok = False
            print(f"record {i} ({cert.case_id}): invalid ({exc})")
        if ok:
            print(f"record {i} ({cert.case_id}): verified")
        else:
            failures += 1
            if ok is False:
                print(f"record {i} ({cert.case_id}): FAILED")
    print(f"verified {len(certs) - failures}/{len(certs)}")
    return 0 if failures == 0 else 2


def cmd_dimension(args) -> int:
    for cid in args.case_ids:
        case = CaseDescriptor.parse(cid)
        left, right = case.build()
        dl = model_dimension(left.matroid_matrix())
        dr = model_dimension(right.matroid_matrix())
        print(f"{cid} left={dl} right={dr}")
    return 0


def cmd_matroid_compare(args) -> int:
    case = CaseDescriptor.parse(args.case_id)
    left, right = case.build()
    try:
        cmp = exhaustive_matroid_equal(left.matroid_matrix(), right.matroid_matrix(),
                                       args.max_size, budget=args.budget)
    except RuntimeError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    if cmp.equal:
        print(f"equal (checked {cmp.subsets_checked} subsets up to size {args.max_size})")
        return 0
    coords = left.coords
    witness = [coords[j] for j in cmp.witness]
    side = "left" if cmp.witness_direction == "first" else "right"
    print(f"witness {witness} independent only in {side} model")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="phylomat",
        description="matroid separation certificates for group-based phylogenetic models",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_enum = sub.add_parser("enumerate", help="list mixture cases up to leaf relabelling")
    p_enum.add_argument("--model", choices=[k.value for k in ModelKind], default="cfn")
    p_enum.add_argument("--leaves", type=int, choices=(4, 5, 6), required=True)
    p_enum.set_defaults(func=cmd_enumerate)

    p_cert = sub.add_parser("certify", help="search separation certificates for cases")
    p_cert.add_argument("case_ids", nargs="*", help="explicit case ids")
    p_cert.add_argument("--cases", help="file with one case id per line")
    p_cert.add_argument("--model", choices=[k.value for k in ModelKind], default="cfn")
    p_cert.add_argument("--leaves", type=int, choices=(4, 5, 6), default=6)
    p_cert.add_argument("--mode", choices=("exact", "sz"), default="sz")
    p_cert.add_argument("--epsilon", type=float, default=1e-10)
    p_cert.add_argument("--trials", type=int, default=2000)
    p_cert.add_argument("--seed", type=int, default=0)
    p_cert.add_argument("--jobs", type=int, default=1)
    p_cert.add_argument("--out", help="certificate file to write (JSON lines)")
    p_cert.add_argument("--sample", type=int, help="seeded random subsample of the case list")
    p_cert.add_argument("--sample-seed", type=int, default=0)
    p_cert.add_argument("--exclude", action="append", help="case id to skip")
    p_cert.add_argument("--exclude-file", help="file of case ids to skip")
    p_cert.set_defaults(func=cmd_certify)

    p_ver = sub.add_parser("verify", help="re-verify a certificate file symbolically")
    p_ver.add_argument("file")
    p_ver.set_defaults(func=cmd_verify)

    p_dim = sub.add_parser("dimension", help="exact model dimensions for cases")
    p_dim.add_argument("case_ids", nargs="+")
    p_dim.set_defaults(func=cmd_dimension)

    p_cmp = sub.add_parser("matroid-compare", help="exhaustively compare two matroids")
    p_cmp.add_argument("case_id")
    p_cmp.add_argument("--max-size", type=int, required=True)
    p_cmp.add_argument("--budget", type=int, default=20000)
    p_cmp.set_defaults(func=cmd_matroid_compare)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
