#!/usr/bin/env python3
"""Sample one presentation per stratum and print its classification report.

Writes presentation files into an output directory (default ./samples) and
prints one JSON report line per stratum.

    python3 scripts/sample_all_strata.py --seed 42 --out samples/
"""

from __future__ import annotations

import argparse
import json
import pathlib

from sextic_strata.fields import parse_field
from sextic_strata.presentation import save
from sextic_strata.sampler import SampleRequest, sample
from sextic_strata.strata import StratumLabel, classification_report


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--field", default="p:101")
    ap.add_argument("--out", default="samples")
    args = ap.parse_args()

    field = parse_field(args.field)
    outdir = pathlib.Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    for label in StratumLabel:
        P = sample(SampleRequest(label, field, seed=args.seed))
        path = outdir / f"{label.value.lower()}_seed{args.seed}.json"
        save(P, path)
        report = classification_report(P)
        report["file"] = str(path)
        print(json.dumps(report, sort_keys=True))


if __name__ == "__main__":
    main()
