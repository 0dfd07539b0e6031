"""Builds the fixture workbook: a three-sheet expense model seeded with 42
errors (4 clerical, 4 rule violation, 8 data entry, 26 formula).

Run from the repo root to regenerate payroll_workbook.json:

    python3 tests/fixtures/build_workbook.py
"""

import json
import os

SHEETS = {}
SEEDS = []


def put(sheet, addr, content):
    SHEETS.setdefault(sheet, {})[addr] = {"content": content}


def seed(sheet, addr, category, faulty, accept):
    put(sheet, addr, faulty)
    SEEDS.append(
        {"sheet": sheet, "addr": addr, "category": category, "faulty": faulty,
         "accept": accept}
    )


def exact(*contents):
    return [{"exact": c} for c in contents]


def value(v):
    return [{"value": v}]


# --- Payroll --------------------------------------------------------------

put("Payroll", "A1", "Choi Construction Company")
put("Payroll", "A2", "Payroll for Current Month")
for col, title in zip("ACDEFGHIJ", ["Employee", "Rate", "Hours", "Overtime Hours",
                                    "Regular Pay", "Overtime Pay", "Gross Pay",
                                    "Deductions", "Net Pay"]):
    put("Payroll", f"{col}4", title)

rows = [
    # row, name, rate, hours, overtime, deductions
    (5, "Adams", "7.50", "40", "0", "25"),
    (6, "Baker", "8.00", "38", "2", "30"),
    (7, "Chen", "7.25", "40", "0", "22"),
    (8, "Diaz", "9.00", "35", "5", "40"),
    (9, "Evans", "8.50", "40", "3", "35"),
    (10, "Field", "8.25", "40", "0", "28"),   # hours seeded below
    (11, "Grant", "7.75", "40", "4", "26"),
    (12, "Hale", "9.50", "36", "0", "45"),
    (13, "Irwin", "6.75", "40", "6", "20"),   # rate seeded below
    (14, "Jones", "8.00", "39", "10", "30"),  # overtime seeded below
]
for r, name, rate, hours, ot, ded in rows:
    put("Payroll", f"A{r}", name)
    put("Payroll", f"C{r}", rate)
    put("Payroll", f"D{r}", hours)
    put("Payroll", f"E{r}", ot)
    put("Payroll", f"I{r}", ded)
    put("Payroll", f"F{r}", f"=C{r}*D{r}")
    put("Payroll", f"G{r}", f"=C{r}*1.5*E{r}")
    put("Payroll", f"H{r}", f"=F{r}+G{r}")
    put("Payroll", f"J{r}", f"=H{r}-I{r}")

put("Payroll", "A16", "Total:")
for col in "CDEFGHIJ":
    put("Payroll", f"{col}16", f"=SUM({col}5:{col}14)")

seed("Payroll", "D10", "data_entry", "44", exact("40") + value(40))
seed("Payroll", "C13", "data_entry", "6.85", exact("6.75") + value(6.75))
seed("Payroll", "E14", "data_entry", "1", exact("10") + value(10))

seed("Payroll", "F9", "formula", "=C9*D8", exact("=C9*D9"))
seed("Payroll", "F10", "formula", "=C10*D10+10", exact("=C10*D10"))
seed("Payroll", "F12", "formula", "=C12*D11", exact("=C12*D12"))
seed("Payroll", "F13", "formula", "=C13*D12", exact("=C13*D13"))
seed("Payroll", "F14", "formula", "=C14*D13", exact("=C14*D14"))
seed("Payroll", "H5", "formula", "=F5-G5", exact("=F5+G5"))
seed("Payroll", "J14", "formula", "=H14+I14", exact("=H14-I14"))
seed("Payroll", "C16", "formula", "=SUM(C5:C13)", exact("=SUM(C5:C14)"))
seed("Payroll", "G16", "formula", "=SUM(G5:G13)", exact("=SUM(G5:G14)"))
seed("Payroll", "H16", "formula", "=SUM(H5:H13)", exact("=SUM(H5:H14)"))
seed("Payroll", "J16", "formula", "=SUM(J5:H14)", exact("=SUM(J5:J14)"))

# overtime must be paid at time-and-a-half; 1.4 breaks the stated rule
for r in (11, 12, 13, 14):
    seed("Payroll", f"G{r}", "rule_violation",
         f"=C{r}*1.4*E{r}", exact(f"=C{r}*1.5*E{r}"))

# --- Office Expenses ------------------------------------------------------

OE = "Office Expenses"
put(OE, "A1", "Choi Construction Company")
seed(OE, "A2", "clerical",
     "Office Expenses for First Three Months of 2023 and Estimated for Year",
     exact("Office Expenses for First Three Months of 2024 and Estimated for Year"))

for col, title in zip("ABCDEF", ["Variable Expenses", "Jan", "Feb", "Mar",
                                 "Total", "Year (Est)"]):
    put(OE, f"{col}4", title)

variable = [
    (5, "Electricity", "245", "261", "221"),   # Feb seeded below
    (6, "Telephone", "1,350", "2,350", "1,175"),
    (7, "Heating (Gas)", "383", "456", "403"),
    (8, "Subscriptions", "117", "113", "150"),
    (9, "Petty Cash", "250", "275", "290"),    # Jan seeded below
]
for r, name, jan, feb, mar in variable:
    put(OE, f"A{r}", name)
    put(OE, f"B{r}", jan)
    put(OE, f"C{r}", feb)
    put(OE, f"D{r}", mar)
    put(OE, f"E{r}", f"=SUM(B{r}:D{r})")
    put(OE, f"F{r}", f"=4*E{r}")
put(OE, "A10", "Total:")
put(OE, "F10", "=SUM(F5:F9)")

for col, title in zip("ABCDEF", ["Fixed Expenses", "Jan", "Feb", "Mar",
                                 "Total", "Year (Est)"]):
    put(OE, f"{col}12", title)
fixed = [
    (13, "Rent", "2,500", "2,500", "2,500"),
    (14, "Water", "250", "250", "250"),
    (15, "Custodial(Cleaning)", "130", "130", "130"),
    (16, "Maintenance Fees", "350", "350", "350"),  # Mar seeded below
    (17, "Food Services", "450", "450", "450"),     # Mar seeded below
]
for r, name, jan, feb, mar in fixed:
    put(OE, f"A{r}", name)
    put(OE, f"B{r}", jan)
    put(OE, f"C{r}", feb)
    put(OE, f"D{r}", mar)
    put(OE, f"E{r}", f"=SUM(B{r}:D{r})")
    put(OE, f"F{r}", f"=4*E{r}")
put(OE, "A18", "Total:")
put(OE, "A20", "Variable + Fixed Expenses exceed 70,000 limit?")

seed(OE, "D12", "clerical", "March", exact("Mar"))
seed(OE, "C5", "data_entry", "216", exact("261") + value(261))
seed(OE, "B9", "data_entry", "205", exact("250") + value(250))
seed(OE, "D16", "data_entry", "330", exact("350") + value(350))
seed(OE, "D17", "data_entry", "410", exact("450") + value(450))
seed(OE, "F5", "formula", "=3*E5", exact("=4*E5"))
seed(OE, "E8", "formula", "=SUM(B8:C8)", exact("=SUM(B8:D8)"))
seed(OE, "F10", "formula", "=SUM(F5:F8)", exact("=SUM(F5:F9)"))
seed(OE, "F18", "formula", "=SUM(F13:F16)", exact("=SUM(F13:F17)"))
seed(OE, "F20", "formula",
     '=IF(F10>70000,"Exceeds Limit","Within Limit")',
     exact('=IF(F10+F18>70000,"Exceeds Limit","Within Limit")'))

# F10 was seeded above with its faulty content; drop the earlier correct put
# (seed() already overwrote it)

# --- Projections ----------------------------------------------------------

PR = "Projections"
seed(PR, "A1", "clerical", "Choi Construction Compny 5-Year Projections",
     exact("Choi Construction Company 5-Year Projections"))
put(PR, "A2", "Today's Date")
seed(PR, "B2", "clerical", "2024-31-01", exact("2024-01-31"))

put(PR, "A5", "Projection Rates:")
rates = [
    (6, "Payroll A Employees", "0.03"),
    (7, "Payroll B Employees", "0.04"),
    (8, "Payroll C Employees", "0.05"),
    (9, "Office Variable Expenses", "0.02"),
    (10, "Office Fixed Expenses", "0.01"),
]
for r, label, rate in rates:
    put(PR, f"A{r}", label)
    put(PR, f"B{r}", rate)

put(PR, "B13", "Current Year")
for i, col in enumerate("CDEFG", start=1):
    put(PR, f"{col}13", f"Year {i}")
put(PR, "A14", "Payroll Expenses")

put(PR, "A15", "Category A")
put(PR, "B15", "=Payroll!F16")
put(PR, "A16", "Category B")
put(PR, "B16", "=Payroll!G16")
put(PR, "A17", "Category C")
for r, rate_row in ((15, 6), (16, 7), (17, 8)):
    for prev, col in zip("BCDEF", "CDEFG"):
        put(PR, f"{col}{r}", f"={prev}{r}*(1+$B${rate_row})")

put(PR, "A18", "Office Expenses")
put(PR, "A19", "Fixed Expenses")
put(PR, "A20", "Variable Expenses")
for prev, col in zip("BCDEF", "CDEFG"):
    put(PR, f"{col}20", f"={prev}20*(1+$B$9)")

put(PR, "A22", "Total:")
for col in "BCDEF":
    put(PR, f"{col}22", f"={col}15+{col}16+{col}17+{col}19+{col}20")

put(PR, "A24", "Does yearly increase in expenses exceed 4%")
for prev, col in zip("BCDEF", "CDEFG"):
    put(PR, f"{col}24", f'=IF(({col}22-{prev}22)/{prev}22>0.04,"Yes","No")')

seed(PR, "B17", "formula", "=Payroll!I16", exact("=Payroll!J16"))
seed(PR, "G17", "formula", "=F17*(1+$B$7)", exact("=F17*(1+$B$8)"))
seed(PR, "B19", "formula", "='Office Expenses'!F10", exact("='Office Expenses'!F18"))
for prev, col in zip("BCDE", "CDEF"):
    seed(PR, f"{col}19", "formula", f"={prev}19*(1+$B$9)", exact(f"={prev}19*(1+$B$10)"))
seed(PR, "G19", "formula", "=F19*(1+$B$9)", exact("=F19*(1+$B$10)"))
seed(PR, "B20", "formula", "='Office Expenses'!F18", exact("='Office Expenses'!F10"))
seed(PR, "G21", "data_entry", "1,200", exact(""))
seed(PR, "G22", "formula", "=G15+G16+G17+G19", exact("=G15+G16+G17+G19+G20"))


def main():
    doc = {
        "title": "Choi Construction Expense Model",
        "version": "1",
        "sheets": [
            {"name": "Payroll", "cols": 12, "rows": 30, "cells": SHEETS["Payroll"]},
            {"name": OE, "cols": 8, "rows": 24, "cells": SHEETS[OE]},
            {"name": PR, "cols": 8, "rows": 26, "cells": SHEETS[PR]},
        ],
        "seeds": SEEDS,
    }
    by_cat = {}
    for s in SEEDS:
        by_cat[s["category"]] = by_cat.get(s["category"], 0) + 1
    assert by_cat == {"clerical": 4, "rule_violation": 4, "data_entry": 8,
                      "formula": 26}, by_cat
    assert len(SEEDS) == 42, len(SEEDS)
    out = os.path.join(os.path.dirname(__file__), "payroll_workbook.json")
    with open(out, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1)
    print(f"wrote {out} ({len(SEEDS)} seeds)")


if __name__ == "__main__":
    main()
