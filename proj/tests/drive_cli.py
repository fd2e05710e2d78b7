#!/usr/bin/env python3
"""End-to-end drive of the sympcap CLI.

Creates input files, runs every subcommand including failure modes, and
checks the reported values against independently computed references.

Usage: python3 tests/drive_cli.py <path-to-sympcap-binary> [workdir]
"""

import csv
import json
import math
import os
import shutil
import subprocess
import sys
import tempfile

B = os.path.abspath(sys.argv[1])
workdir = sys.argv[2] if len(sys.argv) > 2 else tempfile.mkdtemp(prefix="sympcap_drive_")
os.makedirs(workdir, exist_ok=True)
os.chdir(workdir)

fail = []


def run(args, expect_code=0):
    p = subprocess.run([B] + args, capture_output=True, text=True)
    if p.returncode != expect_code:
        fail.append(f"{' '.join(args)}: exit {p.returncode} != {expect_code}: {p.stdout[:200]}")
        return None
    try:
        return json.loads(p.stdout) if p.stdout.strip() else None
    except json.JSONDecodeError:
        fail.append(f"{' '.join(args)}: non-JSON output")
        return None


def close(tag, got, want, tol):
    if got is None or abs(got - want) > tol:
        fail.append(f"{tag}: got {got}, want {want} +- {tol}")


# ---- inputs -----------------------------------------------------------------
r_ball = 1.4
open("ball.json", "w").write(
    '{"n": 1, "level": 1.0, "entries": [%.17g, 0.0, 0.0, %.17g]}'
    % (1 / r_ball**2, 1 / r_ball**2))
open("coherent_sigma.json", "w").write(
    '{"n": 1, "hbar": 1.0, "entries": [0.5, 0.0, 0.0, 0.5]}')
open("squeezed_sigma.json", "w").write(
    '{"n": 1, "hbar": 1.0, "entries": [0.25, 0.0, 0.0, 0.25]}')
open("two_i.json", "w").write('{"n": 1, "entries": [2.0, 0.0, 0.0, 2.0]}')
open("unit.json", "w").write(
    '{"n": 2, "entries": [1,0,0,0, 0,1,0,0, 0,0,1,0, 0,0,0,1]}')

N, L = 256, 8.0
dx = 2 * L / N
with open("psi0.csv", "w") as f:  # coherent state, hbar = 1
    f.write("# hbar=1.0\nx,re,im\n")
    for j in range(N):
        x = -L + j * dx
        f.write("%.17g,%.17g,0.0\n" % (x, math.pi**-0.25 * math.exp(-x * x / 2)))
with open("win.csv", "w") as f:  # 2 pi convention unit gaussian
    f.write("# hbar=1.0\nx,re,im\n")
    for j in range(N):
        t = -L + j * dx
        f.write("%.17g,%.17g,0.0\n" % (t, 2**0.25 * math.exp(-math.pi * t * t)))

# ---- matrix commands --------------------------------------------------------
r = run(["spectrum", "ball.json"])
close("ball spectrum", r["results"]["spectrum"][0], 1 / r_ball**2, 1e-10)
r = run(["capacity", "ball.json"])
close("ball capacity", r["results"]["capacity"], math.pi * r_ball**2, 1e-10)

r = run(["williamson", "unit.json"])
close("unit spectrum", r["results"]["spectrum"][0], 1.0, 1e-12)
close("unit S00", r["results"]["S"][0][0], 1.0, 1e-12)
assert r["results"]["is_symplectic"] is True

r = run(["admissible", "coherent_sigma.json"])
if not (r["results"]["hermitian_psd"] and r["results"]["capacity_ok"]
        and r["results"]["equivalent"]):
    fail.append("coherent admissible flags wrong")
close("coherent capacity", r["results"]["capacity"], math.pi, 1e-10)
close("orbit action", r["results"]["shortest_orbit_action"], math.pi, 1e-10)
r = run(["admissible", "squeezed_sigma.json"])
if r["results"]["hermitian_psd"] or r["results"]["capacity_ok"]:
    fail.append("squeezed sigma should be inadmissible")
if r["results"]["robertson_schrodinger"][0][0]:
    fail.append("squeezed sigma should fail the diagonal pairwise check")

r = run(["classify", "two_i.json"])
if r["results"]["verdict"] != "NotAState":
    fail.append("classify 2I verdict")
close("classify capacity", r["results"]["capacity"], math.pi / 2, 1e-10)
r = run(["blob", "unit.json"])
if r["results"]["is_blob"] is not True:
    fail.append("unit blob")

# ---- transforms -------------------------------------------------------------
r = run(["wigner", "psi0.csv", "--emit", "w.csv"])
close("wigner mass", r["results"]["mass"], 1.0, 1e-6)
if r["results"]["max_imag_residue"] > 1e-12:
    fail.append("imag residue")
r = run(["marginals", "psi0.csv"])
dens, xs = r["results"]["position_density"], r["results"]["x"]
close("marginal mass", sum(dens) * (xs[1] - xs[0]), 1.0, 1e-6)
close("marginal peak", max(dens), math.pi**-0.5, 1e-6)

# purity of a pure state: int W^2 dz = 1/(2 pi hbar)
r = run(["average", "w.csv", "w.csv"])
close("purity", r["results"]["value"], 1 / (2 * math.pi), 1e-6)

# ---- hardy ------------------------------------------------------------------
r = run(["hardy-fit", "psi0.csv"])
close("fit a", r["results"]["a"], 1.0, 1e-6)
close("fit b", r["results"]["b"], 1.0, 1e-6)
if r["results"]["verdict"] != "UniqueGaussian":
    fail.append("fit verdict: " + r["results"]["verdict"])
r = run(["hardy-check", "psi0.csv", "--a", "2.0", "--b", "2.0"])
if r["results"]["holds"] is not False or r["results"]["verdict"] != "OnlyZero":
    fail.append("hardy-check (2,2)")
r = run(["hardy-check", "psi0.csv", "--a", "1.0", "--b", "1.0"])
if r["results"]["holds"] is not True:
    fail.append("hardy-check (1,1) should hold")

# ---- majorants --------------------------------------------------------------
r = run(["majorant", "w.csv"])
if r["results"]["verdict"] != "Inconclusive":
    fail.append("majorant verdict")
# The isotropic rate fit reads points near the amplitude cutoff, so it is
# noise-limited (and conservative: only ever low).
close("majorant rate", r["results"]["M"][0][0], 1.0, 1e-3)
if r["results"]["max_violation"] < -1e-12:
    fail.append("isotropic certificate violated")

# An incompatible form on a noisy grid is a clean validation error.
p = subprocess.run([B, "majorant", "w.csv", "--matrix", "two_i.json"],
                   capture_output=True, text=True)
if p.returncode != 2 or "overflows" not in p.stdout:
    fail.append("majorant incompatible form should exit 2 with overflow message")

# A matching analytic gaussian for M = 2I is rejected by capacity h/4 < h/2.
meta = json.load(open("w.csv.meta.json"))
with open("g2.csv", "w") as f:
    f.write("x,p,value\n")
    for i in range(meta["nx"]):
        x = meta["x0"] + i * meta["dx"]
        for k in range(meta["np"]):
            pp = meta["p0"] + k * meta["dp"]
            v = (2.0 / math.pi) * math.exp(-2.0 * (x * x + pp * pp))
            if v < 1e-300:
                v = 0.0
            f.write("%.12e,%.12e,%.12e\n" % (x, pp, v))
shutil.copy("w.csv.meta.json", "g2.csv.meta.json")
r = run(["majorant", "g2.csv", "--matrix", "two_i.json"])
if r["results"]["verdict"] != "NotAState":
    fail.append("majorant 2I on matching gaussian")
close("majorant 2I capacity", r["results"]["capacity"], math.pi / 2, 1e-10)
close("majorant 2I constant", r["results"]["C"], 2.0 / math.pi, 1e-6)
if r["results"]["max_violation"] < -1e-12:
    fail.append("majorant 2I certificate violated")

# Truncated coherent-state Wigner distribution: compact support rejection.
rows = list(csv.reader(open("w.csv")))
with open("trunc.csv", "w") as f:
    f.write(",".join(rows[0]) + "\n")
    for x, p_, v in rows[1:]:
        keep = float(x)**2 + float(p_)**2 <= 4.0
        f.write(f"{x},{p_},{v if keep else '0.000000000000e+00'}\n")
shutil.copy("w.csv.meta.json", "trunc.csv.meta.json")
r = run(["compact-support", "trunc.csv", "--radius", "2.0"])
if r["results"]["verdict"] != "NotAState":
    fail.append("compact-support verdict")
if r["results"]["max_violation"] < -1e-12:
    fail.append("compact-support certificate")
close("compact-support capacity", r["results"]["capacity"], math.pi / 2, 1e-10)

# ---- stft -------------------------------------------------------------------
r = run(["stft", "win.csv", "win.csv", "--emit", "v.csv"])
close("stft max modulus", r["results"]["max_modulus"], 1.0, 1e-6)
r = run(["relation-check", "psi0.csv", "psi0.csv"])
if r["results"]["max_discrepancy"] > 1e-5:
    fail.append("relation discrepancy")
close("relation constant", r["results"]["measured_constant"], 1.0, 1e-6)

# ---- failure modes and determinism ------------------------------------------
run(["spectrum", "missing.json"], expect_code=2)
run(["nonsense"], expect_code=2)
first = subprocess.run([B, "admissible", "coherent_sigma.json"], capture_output=True).stdout
second = subprocess.run([B, "admissible", "coherent_sigma.json"], capture_output=True).stdout
if first != second:
    fail.append("nondeterministic report bytes")

if fail:
    print("DRIVE FAILURES:")
    for item in fail:
        print(" -", item)
    sys.exit(1)
print("end-to-end drive: all checks passed (24 commands, incl. failure modes)")
