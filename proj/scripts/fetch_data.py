#!/usr/bin/env python3
"""Prepare the two real-data case-study files in data/ (not versioned).

aids.csv
    Australian AIDS survival data (R package MASS, data set Aids2), male
    patients only (2754 rows).  z = death - diag + 0.9 days, the offset
    used by Venables & Ripley to keep same-day deaths positive; delta = 1
    when status == "D" (death observed), 0 when alive at the end of the
    study.  Requires `pip install rdatasets`, which ships the MASS tables.

insurance.csv
    Loss / ALAE data of the R package copula (data set `loss`), 1500 rows of
    which 34 are censored by the policy limit.  Not available from any Python
    package; export it from R with

        library(copula); data(loss)
        write.csv(data.frame(z = loss$loss, delta = 1 - loss$censored),
                  "data/insurance.csv", row.names = FALSE)

    or pass an existing export with --insurance FILE (columns loss and
    censored, or z and delta).

The acceptance suite looks for these files in $CENSTAIL_DATA_DIR or data/.
"""

import argparse
import pathlib
import sys

import pandas as pd


def aids(out: pathlib.Path) -> None:
    try:
        import rdatasets
    except ImportError:
        sys.exit("aids: the rdatasets package is missing (pip install rdatasets)")
    raw = rdatasets.data("MASS", "Aids2")
    males = raw[raw["sex"] == "M"]
    table = pd.DataFrame({
        "z": males["death"] - males["diag"] + 0.9,
        "delta": (males["status"] == "D").astype(int),
    })
    table.to_csv(out, index=False)
    print(f"{out}: n={len(table)} censored={int((table.delta == 0).sum())}")


def insurance(source: pathlib.Path, out: pathlib.Path) -> None:
    raw = pd.read_csv(source)
    if {"z", "delta"} <= set(raw.columns):
        table = raw[["z", "delta"]]
    elif {"loss", "censored"} <= set(raw.columns):
        table = pd.DataFrame({"z": raw["loss"], "delta": 1 - raw["censored"].astype(int)})
    else:
        sys.exit(f"insurance: {source} needs columns loss,censored or z,delta")
    table.to_csv(out, index=False)
    print(f"{out}: n={len(table)} censored={int((table.delta == 0).sum())}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--out-dir", type=pathlib.Path, default=pathlib.Path(__file__).resolve().parent.parent / "data")
    parser.add_argument("--insurance", type=pathlib.Path, help="CSV export of copula::loss")
    args = parser.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)
    aids(args.out_dir / "aids.csv")
    if args.insurance:
        insurance(args.insurance, args.out_dir / "insurance.csv")
    else:
        print("insurance.csv: export it from R, see --help")


if __name__ == "__main__":
    main()
