"""Walk the example catalog: validate, reduce, re-oxidize, certify.

    python3 demos/catalog_tour.py
"""

from cslie.families import example_catalog, qh7_identification, qh7_reoxidation_data
from cslie.forms import format_form, pullback
from cslie.lie import Subspace, central_series, is_isomorphism
from cslie.notation import print_salamon
from cslie.redox import oxidize, reduce
from cslie.structures import complex_symplectic_existence

cat = example_catalog()
for name, e in cat.items():
    pair = e.pair
    status = "no omega" if pair is None else ("ok" if pair.ok else "FAILED")
    s = central_series(e.g)
    print(f"{name:14s} {print_salamon(e.g):40s} step {s.nilpotency_step}  pair: {status}")

qh7 = cat["qh7+R"]
red = reduce(qh7.pair, Subspace.span_of(8, [5, 6]))
print("\nqh7+R reduced by <e5,e6>:", print_salamon(red.g), "omega =", format_form(red.omega))

src = oxidize(qh7_reoxidation_data())
P = qh7_identification()
same = is_isomorphism(src.g, qh7.g, P) and P @ src.J.J == qh7.J @ P and pullback(P, qh7.omega) == src.omega
print("re-oxidation with tau = (8,0) identified with qh7+R:", same)

h5 = cat["h5+R3"]
cert = complex_symplectic_existence(h5.g, h5.J)
print("h5+R3 with I:", cert.label, "polynomial", cert.polynomial)
