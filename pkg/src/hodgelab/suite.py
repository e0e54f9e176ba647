"""The full verification run behind ``hodgelab verify``."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Optional

from . import derhamring as dr
from . import hdrring as hdr
from . import hodgering as hr
from .report import Report, VerificationFailure, checking

DEFAULT_MAX = 8
DEFAULT_MAX_HDR = 5
SOFT_CEILING = 12


def _count_ijk(m: int) -> int:
    """Number of (i, j, k) >= 0 with i + j + 2k = m."""
    return sum(m - 2 * k + 1 for k in range(m // 2 + 1)) if m >= 0 else 0


def check_ranks(max_n: int) -> Report:
    chk = checking("ranks", "H_n free of rank r_n, DR_n free of rank n+1")
    for n in range(max_n + 1):
        with chk.degree(n) as rec:
            rH = hr.rank_H(n)
            if not (rH == len(hr.basis_H(n)) == _count_ijk(n) + _count_ijk(n - 2) == len(hr.presentation_basis(n))):
                chk.fail(rec, f"rank_H({n}) = {rH} disagrees with the basis counts")
            rD = dr.rank_DR(n)
            if not (rD == len(dr.basis_DR(n)) == len(dr.normal_monomials_DR(n))):
                chk.fail(rec, f"rank_DR({n}) = {rD} disagrees with the basis counts")
    return chk.finish()


def check_decompose(max_n: int, samples: int = 50, seed: int = 0) -> Report:
    chk = checking("hodge.decompose", "H_n = image of the degree-n basis of Z[A,B,C,D]/(G)")
    rng = random.Random(seed)
    for n in range(max_n + 1):
        with chk.degree(n) as rec:
            basis = hr.basis_H(n)
            elements = list(basis)
            for _ in range(samples):
                coords = [rng.randint(-9, 9) for _ in basis]
                elements.append(hr.HodgeDiamond.from_coords(n, hr.basis_matrix(n) @ coords))
            for d in elements:
                if hr.phi_n(hr.decompose(d), n) != d:
                    chk.fail(rec, f"round trip failed for {d}")
                    break
            for v in dr.basis_DR(n):
                if dr.psi_n(dr.decompose_DR(v), n) != v:
                    chk.fail(rec, f"de Rham round trip failed for {v}")
                    break
    return chk.finish()


def check_tau_negative_control(max_n: int) -> Report:
    """Without T' the tau image must fall short in degree 3."""
    chk = checking("hdr.tau_without_tprime", "T' is needed: without it tau misses odd h^2 in degree 3")
    with chk.degree(3) as rec:
        try:
            hdr.verify_tau_surjective(min(max_n, 3), use_tprime=False)
        except VerificationFailure as exc:
            degrees = [c.degree for c in exc.report.failures]
            if degrees != [3]:
                chk.fail(rec, f"failures in degrees {degrees}, expected [3]")
        else:
            chk.fail(rec, "tau without T' was surjective")
    return chk.finish()


def _tampered_serre(n: int):
    return hr.serre_vectors(n)[1:]


# (check id, group, runner(max_n, max_hdr, tamper))
CHECKS: list[tuple[str, str, Callable[[int, int, bool], Report]]] = []


def _register(check_id: str, group: str):
    def deco(fn):
        CHECKS.append((check_id, group, fn))
        return fn
    return deco


@_register("ranks", "ranks")
def _ranks(max_n, max_hdr, tamper):
    return check_ranks(max(max_n, SOFT_CEILING))


@_register("hodge.presentation", "hodge")
def _presentation(max_n, max_hdr, tamper):
    return hr.verify_presentation(max_n)


@_register("hodge.decompose", "hodge")
def _decompose(max_n, max_hdr, tamper):
    return check_decompose(max_n)


@_register("hodge.relations", "hodge")
def _relations(max_n, max_hdr, tamper):
    if tamper:
        return hr.verify_relations(max_n, expected=_tampered_serre)
    return hr.verify_relations(max_n)


@_register("hodge.birational", "hodge")
def _birational(max_n, max_hdr, tamper):
    return hr.verify_birational(max_n)


@_register("derham.presentation", "derham")
def _derham(max_n, max_hdr, tamper):
    return dr.verify_derham(max_n)


@_register("derham.relations", "derham")
def _derham_relations(max_n, max_hdr, tamper):
    return dr.verify_dr_relations(max_n)


@_register("hdr.kernel_I", "hdr")
def _kernel_I(max_n, max_hdr, tamper):
    return hdr.verify_kernel_I(max_n)


@_register("hdr.tprime_alternatives", "hdr")
def _alternatives(max_n, max_hdr, tamper):
    return hdr.verify_tprime_alternatives()


@_register("hdr.tau_surjective", "hdr")
def _tau(max_n, max_hdr, tamper):
    return hdr.verify_tau_surjective(max_hdr)


@_register("hdr.tau_without_tprime", "hdr")
def _tau_negative(max_n, max_hdr, tamper):
    return check_tau_negative_control(max_hdr)


@_register("hdr.relations", "hdr")
def _hdr_relations(max_n, max_hdr, tamper):
    return hdr.verify_hdr_relations(max_hdr)


def select(only: Optional[Iterable[str]]) -> list[tuple[str, str, Callable]]:
    if not only:
        return list(CHECKS)
    wanted = set(only)
    known = {c for c, _, _ in CHECKS} | {g for _, g, _ in CHECKS}
    unknown = wanted - known
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    return [c for c in CHECKS if c[0] in wanted or c[1] in wanted]


def _run_one(check_id: str, max_n: int, max_hdr: int, tamper: bool) -> Report:
    fn = next(f for c, _, f in CHECKS if c == check_id)
    try:
        return fn(max_n, max_hdr, tamper)
    except VerificationFailure as exc:
        return exc.report


def run_suite(max_n: int = DEFAULT_MAX, max_hdr: int = DEFAULT_MAX_HDR, only=None,
              jobs: int = 1, tamper: bool = False) -> Report:
    """Run the selected checks; results are ordered by check id registration order."""
    selected = [c for c, _, _ in select(only)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_run_one, c, max_n, max_hdr, tamper) for c in selected]
            parts = [f.result() for f in futures]
    else:
        parts = [_run_one(c, max_n, max_hdr, tamper) for c in selected]
    report = Report()
    for part in parts:
        report.extend(part)
    return report
