#!/usr/bin/env python3
# Copyright 2026 The groupcf Authors.
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Reference logistic-regression test accuracy on the groupcf split.

Trains scikit-learn's unregularized LogisticRegression on the balanced
training rows listed in a manifest written by `groupcf train` and prints the
accuracy on the test rows. The values are frozen into test_models.cpp.

  groupcf train --seed 0 --output-dir /tmp/ref0
  python3 ibm_logistic_reference.py data/ibm_hr_attrition.csv /tmp/ref0/manifest.json
"""

import json
import sys

import numpy as np
import pandas as pd
from sklearn.linear_model import LogisticRegression


def main(csv_path, manifest_path):
    manifest = json.load(open(manifest_path))
    df = pd.read_csv(csv_path)
    features = manifest["features"]
    X = df[features].to_numpy(dtype=float)
    y = np.where(df[manifest["target_column"]] == "Yes", -1, 1)

    train = manifest["train_rows"]
    mean = X[train].mean(axis=0)
    std = X[train].std(axis=0, ddof=1)
    Z = (X - mean) / std

    balanced = manifest["balanced_train_rows"]
    test = manifest["test_rows"]
    clf = LogisticRegression(penalty=None, max_iter=100000, tol=1e-10)
    clf.fit(Z[balanced], y[balanced])
    acc = clf.score(Z[test], y[test])
    print(f"seed={manifest['seed']} test_accuracy={acc:.6f}")
    print("weights=" + ",".join(f"{v:.6f}" for v in clf.coef_[0]) + f" bias={clf.intercept_[0]:.6f}")


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])
