"""Command line workbench: build complexes, assemble the square codes, run
the exact oracles, drive tester and decoder experiments, and evaluate the
asymptotic parameter chain.

Every verdict printed carries a stable check id, and the process exits zero
exactly when no asserted check failed. Reports are byte-identical across
runs with the same config and seed: rationals print as p/q, floats with
twelve significant digits, and wall-clock timings go to a sidecar file that
is excluded from the determinism claim.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import codes, complexes, decoder, gensets, gf2, groups, ltc, planner, spectral
from .errors import SizeCapExceeded

DIST_EXACT_DIM_CAP = gf2.EXACT_DISTANCE_DIM_CAP


# -- deterministic formatting


def fmt_float(x) -> str:
    return f"{float(x):.12g}"


def fmt(x):
    """Report-ready form: fractions as p/q strings, floats at fixed width,
    containers recursively."""
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return fmt_float(x)
    if isinstance(x, dict):
        return {str(k): fmt(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, np.ndarray)):
        return [fmt(v) for v in x]
    return x


class Checks:
    """Collector for pass/fail/na verdict lines."""

    def __init__(self) -> None:
        self.items: list[dict] = []

    def add(self, check_id: str, status, detail: str = "") -> None:
        if isinstance(status, (bool, np.bool_)):
            status = "pass" if status else "fail"
        assert status in ("pass", "fail", "na")
        self.items.append({"id": check_id, "status": status, "detail": detail})
        print(f"[{status.upper():>4}] {check_id}" + (f": {detail}" if detail else ""))

    @property
    def counts(self) -> dict:
        out = {"pass": 0, "fail": 0, "na": 0}
        for item in self.items:
            out[item["status"]] += 1
        return out

    @property
    def failed(self) -> bool:
        return any(item["status"] == "fail" for item in self.items)


# -- config to objects


def load_config(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def build_group_and_pair(cfg: dict):
    """Returns (group, a indices, b indices, metadata dict)."""
    gspec = cfg["group"]
    kind = gspec["kind"]
    if kind == "morgenstern":
        mb, pair = gensets.morgenstern_pair(
            gspec["q"], gspec["i"], variant=gspec.get("variant", "a_prime"))
        meta = {"kind": kind, "q": gspec["q"], "i": gspec["i"],
                "variant": gspec.get("variant", "a_prime"),
                "field_order": gspec["q"] ** gspec["i"],
                "group": mb.group.name}
        return mb.group, np.asarray(pair.a), np.asarray(pair.b), meta
    gens = cfg["generators"]
    if kind == "cyclic":
        group = groups.cyclic_group(gspec["n"])
        a = np.asarray(gens["a"], dtype=np.int64) % gspec["n"]
        b = np.asarray(gens["b"], dtype=np.int64) % gspec["n"]
    elif kind == "perm":
        group = groups.perm_group([tuple(p) for p in gspec["gens"]],
                                  name=gspec.get("name", "perm"))
        lookup = {group.label(i): i for i in range(group.order)}
        a = np.asarray([lookup[repr(tuple(p))] for p in gens["a"]])
        b = np.asarray([lookup[repr(tuple(p))] for p in gens["b"]])
    else:
        raise ValueError(f"unknown group kind {kind!r}")
    meta = {"kind": kind, "group": group.name}
    return group, a, b, meta


def build_component_code(spec: dict):
    """Returns (code, factor graph or None)."""
    kind = spec["kind"]
    if kind == "repetition":
        return codes.repetition_code(spec["n"]), None
    if kind == "parity":
        return codes.parity_code(spec["n"]), None
    if kind == "ldpc":
        code, fg = codes.random_ldpc(spec["c"], spec["d"], spec["n"], spec["seed"])
        return code, fg
    if kind == "explicit":
        gen = gf2.BitMatrix.from_dense(np.asarray(spec["rows"], dtype=np.uint8))
        return codes.from_generator(gen, name=spec.get("name", "explicit")), None
    raise ValueError(f"unknown code kind {kind!r}")


def build_instance(cfg: dict):
    group, a, b, meta = build_group_and_pair(cfg)
    cx = complexes.build_complex(group, a, b)
    code_a, fg_a = build_component_code(cfg["code_a"])
    code_b, fg_b = build_component_code(cfg["code_b"])
    inst = ltc.assemble(cx, code_a, code_b, mode=cfg.get("mode", "edges"),
                        name=cfg.get("name", "instance"))
    return inst, meta, (fg_a, fg_b)


def _instance_lambda(cfg: dict, inst, timings: dict) -> float:
    """Expansion parameter for distance and soundness claims: the larger of
    the two one-sided second eigenvalues, unless pinned in the config."""
    pinned = cfg.get("lambda")
    if pinned is not None:
        return float(Fraction(pinned)) if isinstance(pinned, str) else float(pinned)
    t0 = time.perf_counter()
    cx = inst.cx
    lam = max(
        spectral.lambda2(spectral.cayley_graph(cx.group, cx.a_els, side="left")).lambda2,
        spectral.lambda2(spectral.cayley_graph(cx.group, cx.b_els, side="right")).lambda2)
    timings["lambda2"] = time.perf_counter() - t0
    return lam


def _trial_seed(master: int, row: int) -> int:
    return int(np.random.SeedSequence(master, spawn_key=(row,)).generate_state(1)[0])


def _corrupted_word(inst, seed: int, weight: int):
    rng = np.random.default_rng(seed)
    base = ltc.random_codeword(inst, int(rng.integers(2 ** 31)))
    f = base.copy()
    if weight:
        flips = rng.choice(inst.n_bits, size=weight, replace=False)
        f[flips] ^= 1
    return f, base


# -- subcommands


def cmd_build(cfg: dict, check: Checks, timings: dict) -> dict:
    group, a, b, meta = build_group_and_pair(cfg)
    t0 = time.perf_counter()
    cx = complexes.build_complex(group, a, b)
    timings["build_complex"] = time.perf_counter() - t0

    tnc = complexes.check_tnc(group, a, b)
    check.add("complex-no-conjugacy", tnc.ok,
              f"method={tnc.method} violations={len(tnc.violations)}")
    n, na, nb = cx.n, cx.na, cx.nb
    check.add("complex-edge-count", cx.n_edges * 2 == (na + nb) * n,
              f"edges={cx.n_edges} expected={(na + nb) * n // 2}")
    check.add("complex-square-count", cx.n_squares * 4 == na * nb * n,
              f"squares={cx.n_squares} expected={na * nb * n // 4}")

    # a class {c, inverse of c} covers n edges, or n/2 when c is an involution
    ok_labels = True
    for side, els in (("a", cx.a_els), ("b", cx.b_els)):
        for rep, ids in cx.label_classes(side).items():
            el = int(els[rep])
            expected = n // 2 if group.inv(el) == el else n
            ok_labels &= len(ids) == expected
    check.add("complex-label-class-sizes", ok_labels,
              f"classes_a={len(cx.label_classes('a'))} "
              f"classes_b={len(cx.label_classes('b'))}")

    girth_a = spectral.cayley_girth(group, a)
    girth_b = spectral.cayley_girth(group, b)
    section = {"meta": meta, "summary": cx.summary(),
               "girth_a": girth_a, "girth_b": girth_b}
    return section


def cmd_spectrum(cfg: dict, check: Checks, timings: dict) -> dict:
    group, a, b, meta = build_group_and_pair(cfg)
    cx = complexes.build_complex(group, a, b)
    scfg = cfg.get("spectrum", {})
    method = scfg.get("method", "auto")

    t0 = time.perf_counter()
    ga = spectral.cayley_graph(group, cx.a_els, side="left")
    gb = spectral.cayley_graph(group, cx.b_els, side="right")
    rep_a = spectral.lambda2(ga, method=method)
    rep_b = spectral.lambda2(gb, method=method)
    timings["cayley_lambda2"] = time.perf_counter() - t0
    section = {"meta": meta,
               "lambda2_a": rep_a.to_dict(), "lambda2_b": rep_b.to_dict()}

    if meta["kind"] == "morgenstern":
        q = meta["q"]
        bound = 2 * math.sqrt(q) / (q + 1)
        section["ramanujan_bound"] = bound
        check.add("cayley-second-eigenvalue-ramanujan",
                  rep_a.lambda2 <= bound + 1e-9 and rep_b.lambda2 <= bound + 1e-9,
                  f"a={fmt_float(rep_a.lambda2)} b={fmt_float(rep_b.lambda2)} "
                  f"bound={fmt_float(bound)}")

    if scfg.get("operators", True):
        t0 = time.perf_counter()
        ops = spectral.build_operators(cx)
        res = spectral.operator_checks(cx, ops, seed=cfg.get("seed", 0))
        timings["operators"] = time.perf_counter() - t0
        section["operator_residuals"] = res
        rows = max(res["m0_row_sum"], res["m_row_sum"], res["m_par_row_sum"],
                   res["up_constants"])
        check.add("walk-row-sums", rows <= 1e-8, f"residual={fmt_float(rows)}")
        sym = max(res["m0_self_adjoint"], res["m_self_adjoint"],
                  res["m_par_self_adjoint"])
        check.add("walk-self-adjoint", sym <= 1e-8, f"residual={fmt_float(sym)}")
        check.add("updown-adjointness", res["down_up_adjoint"] <= 1e-8,
                  f"residual={fmt_float(res['down_up_adjoint'])}")
        if "down_up_identity" in res:
            check.add("updown-halves-identity", res["down_up_identity"] <= 1e-8,
                      f"residual={fmt_float(res['down_up_identity'])}")
        else:
            check.add("updown-halves-identity", "na", "dense check over size cap")
        t0 = time.perf_counter()
        lam_m = spectral.markov_lambda2(ops.m, ops.d1, method=method)
        lam_m0 = spectral.markov_lambda2(ops.m0, np.ones(cx.n), method=method)
        timings["square_walk_lambda2"] = time.perf_counter() - t0
        section["lambda2_square_walk"] = lam_m.to_dict()
        section["lambda2_join"] = lam_m0.to_dict()
        check.add("square-walk-dominated", lam_m.lambda2 <= lam_m0.lambda2 + 1e-9,
                  f"squares={fmt_float(lam_m.lambda2)} join={fmt_float(lam_m0.lambda2)}")

    if scfg.get("class_walks", False):
        # the parallel walk restricted to one label class mirrors the
        # opposite-side Cayley walk, so the eigenvalues must line up
        worst = 0.0
        for side, opposite in (("a", rep_b.lambda2), ("b", rep_a.lambda2)):
            for rep in cx.label_classes(side):
                ids, p, _ = spectral.class_walk(cx, side, rep)
                lam_c = spectral.markov_lambda2(
                    p, np.ones(p.shape[0]), method=method).lambda2
                worst = max(worst, abs(lam_c - opposite))
        section["class_walk_max_gap"] = worst
        check.add("parallel-class-walk-matches-opposite", worst <= 1e-7,
                  f"max spectral gap={fmt_float(worst)}")
    return section


def cmd_code(cfg: dict, check: Checks, timings: dict) -> dict:
    t0 = time.perf_counter()
    inst, meta, _ = build_instance(cfg)
    timings["assemble"] = time.perf_counter() - t0
    section = {"meta": meta, "summary": inst.summary()}
    ccfg = cfg.get("code", {})

    if ccfg.get("nullspace_check", True):
        t0 = time.perf_counter()
        same = ltc.nullspace_match(inst)
        timings["nullspace_match"] = time.perf_counter() - t0
        check.add("parity-systems-agree", same,
                  "edge and vertex systems have the same nullspace")
    else:
        check.add("parity-systems-agree", "na", "skipped by config")

    try:
        bounds = ltc.rate_bounds(inst)
        section["rate_bounds"] = bounds
        check.add("rate-generic-bound", inst.rate >= bounds["generic"],
                  f"rate={fmt(inst.rate)} bound={fmt(bounds['generic'])}")
        check.add("rate-cover-bound", inst.rate >= bounds["cover"],
                  f"bound={fmt(bounds['cover'])} nu={fmt(bounds['nu'])} "
                  f"({bounds['cover_method']})")
        if bounds["bipartite"] is None:
            check.add("rate-bipartite-bound", "na", "skeleton not bipartite")
        else:
            check.add("rate-bipartite-bound", inst.rate >= bounds["bipartite"],
                      f"bound={fmt(bounds['bipartite'])}")
    except AssertionError as exc:
        check.add("rate-generic-bound", False, f"violated: {exc}")

    lam = _instance_lambda(ccfg, inst, timings)
    section["lambda"] = lam
    t0 = time.perf_counter()
    try:
        dist = ltc.distance_report(inst, lam, seed=cfg.get("seed", 0))
        section["distance"] = dist
        if dist["measured"] is None:
            check.add("distance-designed-bound", "na", dist["method"])
        elif dist["bound_relative"] <= 0:
            check.add("distance-designed-bound", "pass",
                      f"bound={fmt_float(dist['bound_relative'])} vacuous, "
                      f"measured={fmt(dist['measured_relative'])} ({dist['method']})")
        elif dist["exact"]:
            check.add("distance-designed-bound",
                      float(dist["measured_relative"]) >= dist["bound_relative"] - 1e-12,
                      f"measured={fmt(dist['measured_relative'])} "
                      f"bound={fmt_float(dist['bound_relative'])}")
        else:
            check.add("distance-designed-bound", "na",
                      f"upper bound {fmt(dist['measured_relative'])} only "
                      f"({dist['method']}); designed bound "
                      f"{fmt_float(dist['bound_relative'])} not certified")
    except AssertionError as exc:
        check.add("distance-designed-bound", False, f"violated: {exc}")
    timings["distance"] = time.perf_counter() - t0

    try:
        t0 = time.perf_counter()
        kappa0 = codes.agreement_kappa(inst.code_a, inst.code_b).kappa
        timings["agreement_kappa"] = time.perf_counter() - t0
        tc = ltc.kappa_theorem(inst.cx.na, inst.cx.nb, inst.code_a.delta,
                               inst.code_b.delta, kappa0, Fraction(lam).limit_denominator(10 ** 12))
        section["soundness"] = {"kappa0": kappa0, "c": tc.c, "kappa": tc.kappa,
                                "condition_holds": tc.condition_holds}
        if tc.condition_holds:
            check.add("soundness-premise", "pass",
                      f"c={fmt(tc.c)} > lambda={fmt_float(lam)}; kappa={fmt(tc.kappa)}")
        else:
            check.add("soundness-premise", "na",
                      f"c={fmt(tc.c)} <= lambda={fmt_float(lam)} at this scale; "
                      "constants reported unasserted")
    except SizeCapExceeded as exc:
        check.add("soundness-premise", "na", f"agreement oracle over cap: {exc}")
    return section


def _pair_oracles(name: str, ca, cb, check: Checks) -> dict:
    entry = {"pair": name, "code_a": ca.name, "code_b": cb.name}
    try:
        rep = codes.testability_report(ca, cb)
        entry.update({
            "tau": rep.tau, "kappa": rep.kappa,
            "kappa_bound_from_tau": rep.kappa_bound_from_tau,
            "tau_bound_from_kappa": rep.tau_bound_from_kappa})
        check.add(f"testability-positive[{name}]", rep.tau > 0 and rep.kappa > 0,
                  f"tau={fmt(rep.tau)} kappa={fmt(rep.kappa)}")
        check.add(f"testability-conversions[{name}]", rep.consistent,
                  f"kappa>={fmt(rep.kappa_bound_from_tau)} "
                  f"tau>={fmt(rep.tau_bound_from_kappa)}")
    except (SizeCapExceeded, ValueError) as exc:
        entry["skipped"] = str(exc)
        check.add(f"testability-positive[{name}]", "na", str(exc))
    return entry


def cmd_oracles(cfg: dict, check: Checks, timings: dict) -> dict:
    ocfg = cfg.get("oracles", {})
    section: dict = {"pairs": []}
    t0 = time.perf_counter()
    if "code_a" in cfg and "code_b" in cfg and ocfg.get("include_instance_pair", True):
        ca, _ = build_component_code(cfg["code_a"])
        cb, _ = build_component_code(cfg["code_b"])
        section["pairs"].append(_pair_oracles("instance", ca, cb, check))
    for idx, pair in enumerate(ocfg.get("pairs", [])):
        ca, _ = build_component_code(pair["code_a"])
        cb, _ = build_component_code(pair["code_b"])
        section["pairs"].append(_pair_oracles(pair.get("name", f"pair{idx}"),
                                              ca, cb, check))
    timings["pair_oracles"] = time.perf_counter() - t0

    if "expander" in ocfg:
        espec = ocfg["expander"]
        t0 = time.perf_counter()
        ldpc, fg = codes.random_ldpc(espec["c"], espec["d"], espec["n"], espec["seed"])
        delta, gamma = Fraction(espec["delta"]), Fraction(espec["gamma"])
        cert = codes.check_expander(fg, delta, gamma)
        other, _ = build_component_code(espec["other"])
        entry = {"ldpc": ldpc.name, "other": other.name,
                 "delta": delta, "gamma": gamma,
                 "certified": cert.ok, "sets_checked": cert.checked}
        check.add("expander-certificate", cert.ok,
                  f"checked {cert.checked} sets up to {cert.max_size} bits")
        if cert.ok:
            bound = codes.dsw_tau_bound(ldpc.delta, other.delta, gamma, espec["d"])
            tau = codes.robustness_tau(ldpc, other).tau
            entry.update({"dsw_bound": bound, "tau": tau})
            check.add("dsw-robustness-bound", float(tau) >= bound - 1e-12,
                      f"tau={fmt(tau)} bound={fmt_float(bound)}")
        else:
            entry["witness"] = list(cert.witness) if cert.witness else None
            check.add("dsw-robustness-bound", "na", "expander premise failed")
        section["expander"] = entry
        timings["expander"] = time.perf_counter() - t0
    return section


def cmd_montecarlo(cfg: dict, check: Checks, timings: dict, outdir: Path) -> dict:
    inst, meta, _ = build_instance(cfg)
    mcfg = cfg.get("montecarlo", {})
    trials = mcfg.get("trials", 10)
    weights = mcfg.get("weights", [0, 1, 2])
    master = cfg.get("seed", 0)
    exact_dist = inst.code.dim <= mcfg.get("dist_cap", DIST_EXACT_DIM_CAP)

    d0 = 4 * (1 + inst.cx.na + inst.cx.nb)
    rows = []
    agg = {"termination": True, "delta_vs_zeta": True, "dist_bound": True,
           "weight_zero": True}
    reject_by_weight: dict[int, list] = {w: [] for w in weights}
    t0 = time.perf_counter()
    for row_id, (w, t) in enumerate((w, t) for w in weights for t in range(trials)):
        seed = _trial_seed(master, row_id)
        f, _base = _corrupted_word(inst, seed, w)
        z = ltc.zeta(inst, f)
        reject_by_weight[w].append(z)
        out = decoder.run(inst, f)
        if exact_dist:
            wt, _, _ = gf2.coset_min_weight(inst.code.gen, gf2.BitVector.from_bits(f))
            dist = Fraction(wt, inst.n_bits)
            dist_str = fmt(dist)
        else:
            dist = None
            dist_str = fmt_float(out.dist_in_out) if out.dist_in_out is not None else ""
        rows.append({
            "trial": row_id, "seed": seed, "weight": w, "zeta": fmt(z),
            "dist": dist_str, "verdict": out.verdict, "iters": out.iterations,
            "dist_out": fmt(out.dist_in_out) if out.dist_in_out is not None else "",
        })
        agg["termination"] &= out.iterations <= out.delta_init * inst.cx.n_edges
        agg["delta_vs_zeta"] &= out.delta_init <= 2 * z
        if out.dist_in_out is not None:
            agg["dist_bound"] &= out.dist_in_out <= d0 * z
        if w == 0:
            agg["weight_zero"] &= out.verdict == "codeword" and out.dist_in_out == 0
    timings["montecarlo"] = time.perf_counter() - t0

    csv_path = outdir / "montecarlo.csv"
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(
            fh, fieldnames=["trial", "seed", "weight", "zeta", "dist",
                            "verdict", "iters", "dist_out"],
            lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)

    check.add("decoder-termination-bound", agg["termination"],
              "iterations within the initial dispute budget on every trial")
    check.add("dispute-at-most-twice-zeta", agg["delta_vs_zeta"],
              "initial dispute fraction <= 2 * rejection fraction")
    check.add("decoder-output-distance-bound", agg["dist_bound"],
              f"dist(in, out) <= {d0} * zeta on every resolved trial")
    if 0 in weights:
        check.add("codeword-fixed-point", agg["weight_zero"],
                  "weight-0 inputs decode to themselves")
    rejection = {w: Fraction(sum(1 for z in zs if z > 0), len(zs))
                 for w, zs in reject_by_weight.items() if zs}
    mean_zeta = {w: sum(zs, Fraction(0)) / len(zs)
                 for w, zs in reject_by_weight.items() if zs}
    return {"meta": meta, "summary": inst.summary(), "trials": trials,
            "weights": weights, "csv": csv_path.name,
            "nonzero_zeta_rate": rejection, "mean_zeta": mean_zeta,
            "dist_column": "exact" if exact_dist else "decoder upper bound"}


def cmd_decode(cfg: dict, check: Checks, timings: dict) -> dict:
    inst, meta, _ = build_instance(cfg)
    dcfg = cfg.get("decode", {})
    section = {"meta": meta, "summary": inst.summary(), "words": []}
    d0 = 4 * (1 + inst.cx.na + inst.cx.nb)

    jobs = []
    if "word" in dcfg:
        jobs.append(("explicit", ltc.word_from_text(dcfg["word"], inst)))
    else:
        w = dcfg.get("weight", 1)
        for t in range(dcfg.get("trials", 3)):
            seed = _trial_seed(cfg.get("seed", 0), 10 ** 6 + t)
            f, _ = _corrupted_word(inst, seed, w)
            jobs.append((f"weight{w}/{t}", f))

    kappa0 = None
    try:
        kappa0 = codes.agreement_kappa(inst.code_a, inst.code_b).kappa
    except SizeCapExceeded:
        pass

    all_ok = {"term": True, "in_code": True, "dist": True, "far_delta": True}
    t0 = time.perf_counter()
    for name, f in jobs:
        out = decoder.run(inst, f)
        entry = {"word": name, **out.to_dict()}
        all_ok["term"] &= out.iterations <= out.delta_init * inst.cx.n_edges
        if out.verdict == "codeword":
            in_code = inst.code.contains(gf2.BitVector.from_bits(out.codeword))
            all_ok["in_code"] &= in_code and ltc.zeta(inst, out.codeword) == 0
            all_ok["dist"] &= out.dist_in_out <= d0 * out.zeta_in
        else:
            all_ok["far_delta"] &= out.delta_final > 0
        if dcfg.get("diagnostics", True):
            assign = decoder.init_views(inst, f)
            while decoder.step(assign) is not None:
                pass
            diag = decoder.dispute_diagnostics(assign, kappa0=kappa0)
            entry["n_disputes"] = diag["n_disputes"]
            for side in ("edge_span_a", "edge_span_b"):
                if side in diag:
                    entry[side] = {"need": diag[side]["need"],
                                   "holds": diag[side]["holds"]}
                    check.add(f"dispute-edge-neighborhood-spread[{name}]",
                              diag[side]["holds"],
                              f"{side}: every dispute edge meets >= "
                              f"{diag[side]['need']} disputes nearby")
            if kappa0 is not None:
                holds = all(diag["vertex_holds"])
                entry["vertex_ratio_holds"] = holds
                check.add(f"dispute-vertex-two-step-ratio[{name}]", holds,
                          f"kappa0={fmt(kappa0)}")
        section["words"].append(entry)
    timings["decode"] = time.perf_counter() - t0

    check.add("decoder-termination-bound", all_ok["term"], "")
    check.add("decoder-output-in-code", all_ok["in_code"],
              "resolved outputs satisfy every parity row")
    check.add("decoder-output-distance-bound", all_ok["dist"],
              f"dist(in, out) <= {d0} * zeta")
    check.add("far-state-dispute-positive", all_ok["far_delta"],
              "far verdicts keep a positive dispute fraction")
    return section


def cmd_plan(cfg: dict, check: Checks, timings: dict) -> dict:
    pcfg = cfg.get("plan", {})
    dps = pcfg.get("dps", planner.PLAN_DPS)
    section: dict = {}
    t0 = time.perf_counter()
    if "r0" in pcfg:
        base = planner.plan_base_code(Fraction(pcfg["r0"]), dps=dps)
        section["base"] = base.to_flat()
        check.add("plan-base-invariants",
                  base.d0 > base.c0 and 0 < base.delta0 < 1 and base.kappa0 > 0,
                  f"d0={base.d0}")
    if "r" in pcfg:
        plan = planner.plan_c3(Fraction(pcfg["r"]), dps=dps)
        section["chain"] = plan.to_flat()
        for key, ok in plan.chain.items():
            check.add(f"plan-{key.replace('_', '-')}", bool(ok), "")
    if "sweep" in pcfg:
        sweep = planner.delta0_scaling_sweep(
            [Fraction(e) for e in pcfg["sweep"]], dps=dps)
        section["sweep"] = {"slope": sweep["slope"],
                            "points": [[fmt_float(x), fmt_float(y)]
                                       for x, y in sweep["points"]]}
        check.add("plan-distance-scaling-slope",
                  abs(sweep["slope"] - 21) < 0.5,
                  f"log-log slope={fmt_float(sweep['slope'])} expected 21")
    timings["plan"] = time.perf_counter() - t0
    return section


COMMANDS = {
    "build": cmd_build, "spectrum": cmd_spectrum, "code": cmd_code,
    "oracles": cmd_oracles, "montecarlo": cmd_montecarlo,
    "decode": cmd_decode, "plan": cmd_plan,
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="sqcodes",
        description="workbench for square Tanner codes on left-right "
                    "Cayley complexes")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--config", required=True, help="JSON config path")
    parser.add_argument("--out", default="out", help="output directory")
    parser.add_argument("--seed", type=int, default=None,
                        help="override the config seed")
    parser.add_argument("--threads", type=int, default=1,
                        help="accepted for interface stability; the oracles "
                             "run single-threaded")
    args = parser.parse_args(argv)

    cfg = load_config(args.config)
    if args.seed is not None:
        cfg["seed"] = args.seed
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)

    check = Checks()
    timings: dict = {}
    t_start = time.perf_counter()
    fn = COMMANDS[args.command]
    if args.command == "montecarlo":
        section = fn(cfg, check, timings, outdir)
    else:
        section = fn(cfg, check, timings)
    timings["total"] = time.perf_counter() - t_start

    report = {
        "command": args.command,
        "name": cfg.get("name", Path(args.config).stem),
        "seed": cfg.get("seed", 0),
        "threads": args.threads,
        "section": fmt(section),
        "checks": check.items,
        "counts": check.counts,
    }
    report_path = outdir / "report.json"
    with open(report_path, "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")
    with open(outdir / "timings.json", "w", encoding="utf-8") as fh:
        json.dump({k: f"{v:.6g}" for k, v in timings.items()}, fh, indent=2,
                  sort_keys=True)
        fh.write("\n")

    counts = check.counts
    print(f"summary: pass={counts['pass']} fail={counts['fail']} na={counts['na']}")
    print(f"wrote {report_path}")
    return 1 if check.failed else 0


if __name__ == "__main__":
    sys.exit(main())
