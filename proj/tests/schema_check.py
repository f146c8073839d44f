"""Runs the CLI with --json across subcommands and validates each report."""
import json
import subprocess
import sys

import jsonschema

cli, schema_path, data = sys.argv[1:4]
schema = json.load(open(schema_path))

runs = [
    ["invariants", "--knot", "trefoil_rh"],
    ["invariants", "--knot", "10_118", "--table", f"{data}/knotinfo.csv"],
    ["invariants", "--a2", "1", "--a4", "0", "--a6", "0", "--j3", "6", "--j4", "0"],
    ["surgery", "--knot", "unknot", "--slope", "2/1"],
    ["surgery", "--knot", "figure8", "--slope", "3/2", "--v5", "0"],
    ["obstruct", "cosmetic", "--knot", "10_118", "--table", f"{data}/knotinfo.csv"],
    ["obstruct", "cosmetic", "--knot", "trefoil_rh"],
    ["obstruct", "chiral", "--knot", "trefoil_rh"],
    ["obstruct", "chiral", "--knot", "figure8", "--slope", "2", "--slope2", "3"],
    ["obstruct", "same-slope", "--knot", "trefoil_rh", "--knot2", "trefoil_lh", "--slope", "5"],
    ["obstruct", "lens", "--a2", "1", "--v3", "-1/4", "--a4", "0", "--non-torus"],
    ["obstruct", "high-even", "--mode", "2", "--m", "1", "--coeff", "6=2", "--assume", "C_6-trivial"],
    ["obstruct", "cor17", "--table", f"{data}/paper_table.csv"],
    ["dioph", "--a", "32", "--b", "1420", "--c", "20", "--verify", "20", "3"],
    ["dioph", "--a", "8", "--b", "40", "--c", "5"],
    ["dioph", "--a", "1", "--b", "-1", "--c", "25"],
    ["dioph", "--a", "1", "--b", "2", "--c", "1", "--pell"],
    ["jacobi", "weight", "theta"],
    ["jacobi", "pair", "wheel(2); strut"],
    ["jacobi", "reduce", "pair(wheel(2)*wheel(2); strut^2)", "--kill-theta"],
]

failed = 0
for args in runs:
    p = subprocess.run([cli, *args, "--json"], capture_output=True, text=True)
    try:
        doc = json.loads(p.stdout)
        jsonschema.validate(doc, schema)
        print("ok  ", " ".join(args))
    except (json.JSONDecodeError, jsonschema.ValidationError) as e:
        failed += 1
        print("FAIL", " ".join(args), "--", str(e).splitlines()[0])
sys.exit(1 if failed else 0)
