"""Oxidize the step-3 and step-4 data from R^4 and print the tables and series.

    python3 demos/oxidation_tour.py
"""

from cslie.families import step3_data, step4_data, step4_uncorrected_data
from cslie.lie import central_series
from cslie.redox import format_bracket_table, oxidation_labels, oxidize, validate_oxidation_data


def show(title, data, strict=True):
    print(f"== {title}")
    rep = validate_oxidation_data(data)
    if not rep.ok:
        for msg in rep.messages():
            print("  fails", msg)
    pair = oxidize(data, strict=strict)
    for line in format_bracket_table(pair.g, oxidation_labels(data.n)):
        print("  " + line)
    s = central_series(pair.g)
    print(f"  step {s.nilpotency_step}, ascending type {s.ascending_type}, valid pair: {pair.ok}")


show("step 3: case (v), S11 = e^3, S12 = e^1", step3_data())
show("step 4 uncorrected: case (iv), S22 = 1/2 e^4", step4_uncorrected_data(), strict=False)
show("step 4 corrected: S12 = e^1 + 1/2 e^4, S22 = 0", step4_data())
