#!/usr/bin/env python3
# Copyright 2026 The groupcf Authors.
#
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
"""Rebuilds the IBM HR Analytics attrition CSV from the copy bundled in the
`rdatasets` wheel (R package modeldata, data set `attrition`).

modeldata stores the ordinal survey columns as labelled factors and drops the
four constant/identifier columns. This script maps the labels back to the
original integer codes and restores the 35-column layout of the IBM file.
EmployeeNumber is not recoverable and is filled with the 1-based row index.

    pip download --no-deps rdatasets -d /tmp/rd
    python3 tools/make_ibm_csv.py /tmp/rd/rdatasets-*.whl data/ibm_hr_attrition.csv
"""
import csv
import lzma
import pickle
import sys
import zipfile

SATISFACTION = {"Low": 1, "Medium": 2, "High": 3, "Very_High": 4}
ORDINAL = {
    "Education": {"Below_College": 1, "College": 2, "Bachelor": 3, "Master": 4, "Doctor": 5},
    "EnvironmentSatisfaction": SATISFACTION,
    "JobInvolvement": SATISFACTION,
    "JobSatisfaction": SATISFACTION,
    "RelationshipSatisfaction": SATISFACTION,
    "PerformanceRating": {"Low": 1, "Good": 2, "Excellent": 3, "Outstanding": 4},
    "WorkLifeBalance": {"Bad": 1, "Good": 2, "Better": 3, "Best": 4},
}
# modeldata replaced spaces and '&' with underscores.
RENAMED = {
    "Department": {"Research_Development": "Research & Development",
                   "Human_Resources": "Human Resources"},
    "EducationField": {"Life_Sciences": "Life Sciences", "Technical_Degree": "Technical Degree",
                       "Human_Resources": "Human Resources"},
}
COLUMNS = [
    "Age", "Attrition", "BusinessTravel", "DailyRate", "Department", "DistanceFromHome",
    "Education", "EducationField", "EmployeeCount", "EmployeeNumber",
    "EnvironmentSatisfaction", "Gender", "HourlyRate", "JobInvolvement", "JobLevel", "JobRole",
    "JobSatisfaction", "MaritalStatus", "MonthlyIncome", "MonthlyRate", "NumCompaniesWorked",
    "Over18", "OverTime", "PercentSalaryHike", "PerformanceRating", "RelationshipSatisfaction",
    "StandardHours", "StockOptionLevel", "TotalWorkingYears", "TrainingTimesLastYear",
    "WorkLifeBalance", "YearsAtCompany", "YearsInCurrentRole", "YearsSinceLastPromotion",
    "YearsWithCurrManager",
]


def main(wheel, out_path):
    with zipfile.ZipFile(wheel) as z:
        frame = pickle.loads(lzma.decompress(z.read("rdatasets/_data/modeldata/attrition.pkl.compress")))
    with open(out_path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(COLUMNS)
        for idx, rec in enumerate(frame.to_dict("records"), start=1):
            row = dict(rec)
            for col, codes in ORDINAL.items():
                row[col] = codes[row[col]]
            for col, names in RENAMED.items():
                row[col] = names.get(row[col], row[col])
            row["JobRole"] = row["JobRole"].replace("_", " ")
            row["EmployeeCount"] = 1
            row["EmployeeNumber"] = idx
            row["Over18"] = "Y"
            row["StandardHours"] = 80
            writer.writerow([row[c] for c in COLUMNS])


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])
