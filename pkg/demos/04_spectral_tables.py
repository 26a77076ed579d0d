"""Mod-2 spectral-sequence tables for central elementary abelian towers.

For V >-> G ->> W with V, W elementary abelian the transgression d2 reads
off the quadratic presentation data, d3 on squares is Sq^1 of d2 (Kudo),
and the page-3 ideal decides which degree-4 classes of W survive.
"""

from twogroups import extension_class_rep, lhs_data_for, shipped_catalog, survives_deg4
from twogroups.ktheory import central_extension_from_hom
from twogroups.lhs import dead_quartic_subspace
from twogroups.pcgroup import homomorphism

cat = shipped_catalog()

for name in ["G16384", "SG256_9039"]:
    g = cat[name]
    data = lhs_data_for(g)
    print(f"=== {name}: V = <{', '.join(g.element_str(b) for b in data.v_basis)}> ===")
    for label in data.v_labels:
        print(f"  d2(zeta{label}) = {data.d2[label]}")
    for label in data.v_labels:
        raw, red = data.d3_raw[label], data.d3[label]
        print(f"  d3(zeta{label}^2) = {raw}   [reduced mod I2: {red}]")
    print("  degree-4 survival of pure powers:")
    for var in data.variables:
        verdict = survives_deg4(data, data.poly(f"{var}^4"))
        print(f"    {var}^4: {verdict.verdict}")
    _masks, dead = dead_quartic_subspace(data)
    print(f"  dead pure-quartic subspace: {[str(p) for p in dead]}")
    print()

print("=== combination survivors for SG256_9039 ===")
data = lhs_data_for(cat["SG256_9039"])
for f in ["X2^4+X3^4", "X3^4+X4^4", "X2^4+X3^4+X4^4"]:
    print(f"  {f}: {survives_deg4(data, data.poly(f)).verdict}")

print()
print("=== extension-class recovery for the order-256 tower ===")
pi, pit = cat["SG128_1376"], cat["SG256_8129"]
alpha = homomorphism(pit, pi, [pi.generators[i] for i in range(7)] + [pi.generators[4]])
rep = extension_class_rep(central_extension_from_hom(pit, alpha), lhs_data_for(pi))
print(f"  theta = {rep.theta}   (complement: {rep.complement})")
