"""Reproduction cases over the shipped data files.

Each case prints one verdict line per claim and returns True only when every
claim holds.  ``qce`` covers the rank-4 counterexample quiver (no maximal
green sequence anywhere in its class, yet locally acyclic with a green-to-red
sequence), ``x7`` the rank-7 exceptional class whose cluster algebra is
smaller than its upper cluster algebra, and ``markov`` the rank-3
all-double-arrow cycle.
"""

from __future__ import annotations

import json
from importlib import resources
from typing import Callable, TextIO

from . import certcheck, obstructions, seeds, sequences
from .classes import NotWithinCap, class_contains_acyclic, enumerate_class
from .core import ExchangeMatrix, IceQuiver
from .docio import as_exchange, parse_laurent, parse_quiver

CASES = ("qce", "x7", "markov")


def load_data(name: str):
    text = resources.files("quiverlab.data").joinpath(name).read_text()
    return json.loads(text)


def load_quiver(name: str) -> ExchangeMatrix:
    return as_exchange(parse_quiver(load_data(name)))


def _verdict(out: TextIO, label: str, ok: bool, detail: str = "") -> bool:
    mark = "ok" if ok else "FAILED"
    suffix = f" ({detail})" if detail else ""
    print(f"  [{mark}] {label}{suffix}", file=out)
    return ok


def run_qce(out: TextIO) -> bool:
    b = load_quiver("qce.json")
    ok = True

    cert = obstructions.no_mgs_certificate(b)
    ok &= _verdict(
        out,
        "no-MGS certificate: oriented cycle of multiple arrows",
        cert is not None and not certcheck.check_certificate(obstructions.certificate_document(cert)),
        f"cycle {cert.vertices}" if cert else "missing",
    )

    la = obstructions.local_acyclicity_certificate(IceQuiver.from_exchange(b))
    la_ok = isinstance(la, obstructions.LocalAcyclicityCertificate)
    if la_ok:
        problems = certcheck.check_certificate(obstructions.certificate_document(la))
        la_ok = not problems
    ok &= _verdict(
        out,
        "local-acyclicity certificate verified by the independent checker",
        la_ok,
        f"root arrow {la.root.arrow}" if la_ok else "missing or invalid",
    )

    trace = sequences.replay(b, (1, 4, 3, 4, 2, 4))
    ok &= _verdict(
        out,
        "green-to-red replay of 1,4,3,4,2,4 ends all red",
        trace.all_red(),
    )

    class_cert = obstructions.class_no_mgs_certificate(b)
    class_ok = class_cert is not None and not certcheck.check_certificate(
        obstructions.certificate_document(class_cert)
    )
    ok &= _verdict(
        out,
        "class-level certificate: column gcds and coloring refutation",
        class_ok,
        f"gcds {class_cert.gcds}, {len(class_cert.refutation.cycles)} cycles"
        if class_cert
        else "missing",
    )
    return ok


def run_x7(out: TextIO) -> bool:
    b1 = load_quiver("x7_b1.json")
    b2 = load_quiver("x7_b2.json")
    z = parse_laurent(load_data("x7_z.json"))
    ok = True

    cls = enumerate_class(b1)
    ok &= _verdict(
        out,
        "mutation class of the first matrix has exactly 2 representatives",
        cls.complete and len(cls.representatives) == 2,
        f"found {len(cls.representatives)}",
    )

    ok &= _verdict(
        out,
        "both matrices are coprime",
        seeds.is_coprime_matrix(b1) and seeds.is_coprime_matrix(b2),
    )
    coprime_all, complete = seeds.totally_coprime(b1)
    ok &= _verdict(
        out,
        "coprimality verified over the enumerated class",
        coprime_all and complete,
        "complete enumeration" if complete else "partial enumeration",
    )

    ok &= _verdict(
        out,
        "candidate element is Laurent in all 7 adjacent clusters",
        seeds.depth1_upper_membership(z, b1),
    )

    weights = (2, 1, 1, 1, 1, 1, 1)
    ok &= _verdict(out, "grading 2,1,1,1,1,1,1 is valid", seeds.grading_check(b1, weights))
    deg = seeds.degree(z, weights)
    ok &= _verdict(
        out,
        "candidate element is homogeneous of degree <= 0",
        deg is not None and deg <= 0,
        f"degree {deg}",
    )
    return ok


def run_markov(out: TextIO) -> bool:
    b = load_quiver("markov.json")
    ok = True
    cycle = obstructions.multiple_arrow_cycle(b)
    ok &= _verdict(
        out,
        "all-double-arrow oriented cycle found",
        cycle == (1, 2, 3),
        f"cycle {cycle}",
    )
    outcome = sequences.search_mgs(b, max_depth=6)
    ok &= _verdict(
        out,
        "maximal green sequence search reports the obstruction",
        isinstance(outcome, sequences.Obstructed),
    )
    acyclic = class_contains_acyclic(b)
    ok &= _verdict(
        out,
        "class closes on one representative with no acyclic member",
        isinstance(acyclic, NotWithinCap),
        type(acyclic).__name__,
    )
    return ok


RUNNERS: dict[str, Callable[[TextIO], bool]] = {
    "qce": run_qce,
    "x7": run_x7,
    "markov": run_markov,
}


def run_case(name: str, out: TextIO) -> bool:
    if name not in RUNNERS:
        raise ValueError(f"unknown case {name!r}; choose from {', '.join(CASES)}")
    print(f"case {name}:", file=out)
    return RUNNERS[name](out)
