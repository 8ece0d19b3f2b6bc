"""Export the scikit-learn diabetes table as CSV plus a column description.

The target (disease progression one year after baseline) is cut into three
equal-width goals. Continuous inputs use equal-width bins with boundaries
rounded to one decimal, with hand-picked boundaries for BMI and S5.
"""
import csv
import json
import sys
from pathlib import Path

from sklearn.datasets import load_diabetes

COLUMNS = [
    ("AGE", "continuous", "AGE", "Age in years"),
    ("SEX", "categorical", "SEX", "Sex"),
    ("BMI", "continuous", "BMI", "Body mass index"),
    ("BP", "continuous", "BP", "Average blood pressure"),
    ("S1", "continuous", "S1", "Total serum cholesterol"),
    ("S2", "continuous", "S2", "Low-density lipoproteins"),
    ("S3", "continuous", "S3", "High-density lipoproteins"),
    ("S4", "continuous", "S4", "Total cholesterol / HDL"),
    ("S5", "continuous", "S5", "Log of serum triglycerides"),
    ("S6", "continuous", "S6", "Blood sugar level"),
]
OVERRIDES = {"BMI": [26.1, 33.7], "S5": [4.2, 5.1]}
GOALS = ["Goal0", "Goal1", "Goal2"]


def equal_width(values, bins=3, digits=1):
    lo, hi = min(values), max(values)
    step = (hi - lo) / bins
    return [round(lo + step * j, digits) for j in range(1, bins)]


def main(out_dir):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    data = load_diabetes(scaled=False)
    x, y = data.data, data.target

    target_bounds = equal_width(list(y), digits=0)
    columns = [{
        "name": "Y",
        "kind": "target",
        "short": "Goal",
        "classes": 3,
        "values": GOALS,
        "full_name": "Disease progression after one year (equal-width tertile of range)",
    }]
    for j, (name, kind, short, full) in enumerate(COLUMNS):
        if kind == "categorical":
            columns.append({"name": name, "kind": kind, "short": short, "classes": 2,
                            "values": ["1", "2"], "full_name": full})
        else:
            bounds = OVERRIDES.get(name) or equal_width(list(x[:, j]))
            columns.append({"name": name, "kind": kind, "short": short, "classes": 3,
                            "values": bounds, "full_name": full})

    with open(out / "diabetes.dbd.json", "w") as f:
        json.dump({"columns": columns}, f, indent=2)
        f.write("\n")

    with open(out / "diabetes.csv", "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["Y"] + [c[0] for c in COLUMNS])
        for row, target in zip(x, y):
            goal = sum(target >= b for b in target_bounds)
            cells = []
            for (name, kind, _, _), v in zip(COLUMNS, row):
                cells.append(str(int(v)) if kind == "categorical" else repr(float(v)))
            w.writerow([GOALS[goal]] + cells)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data")
