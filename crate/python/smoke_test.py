"""Smoke test for the quantale extension module: python python/smoke_test.py"""

import json

import quantale as qw

two = qw.Quantale.load("catalog:TWO")
assert len(two) == 2 and two.unit == "1"
assert two.mul("1", "0") == "0"
assert two.is_commutative()

nil = qw.Quantale.load("catalog:C3-nil")
assert nil.mul("a", "a") == "0"
assert nil.left_residual("a", "0") == "a"
assert nil.right_residual("0", "a") == "a"
assert not nil.isomorphic(qw.Quantale.load("catalog:C3-idem"))

free = qw.Module.load("catalog:TWO^2")
assert free.side == "left" and len(free) == 4
report = free.progenerator_report()
assert report["progenerator"] and report["generator"] and report["projective"]

end = free.end()
assert len(end) == 16
assert end.isomorphic(qw.Quantale.load("catalog:MAT2"))
assert len(free.dual()) == 4

homs = qw.Module.load("catalog:diamond").homs(qw.Module.load("catalog:chain3"), kind="left")
assert len(homs) == 9, len(homs)

chain = qw.Module.load("catalog:TWO-chain")
assert len(qw.tensor(chain, chain)) == 2

assert qw.morita(two, qw.Quantale.load("catalog:PZ2"), bound=4) is None
cert = qw.morita(two, qw.Quantale.load("catalog:MAT2"), bound=4)
assert cert is not None and cert["kind"] == "certificate"
assert qw.verify_certificate(json.dumps(cert))

tampered = dict(cert, endIso={"fwd": cert["endIso"]["bwd"][::-1], "bwd": cert["endIso"]["bwd"]})
try:
    qw.verify_certificate(json.dumps(tampered))
    raise AssertionError("tampered certificate accepted")
except qw.QuantaleError:
    pass

try:
    qw.Module.load("catalog:M3").end(cap=4)
    raise AssertionError("cap not enforced")
except qw.SizeCapError:
    pass

try:
    qw.Quantale.load('{"kind": "lattice", "elements": [')
    raise AssertionError("bad JSON accepted")
except qw.ParseError:
    pass

names = qw.catalog_names()
assert "MAT2" in names and set(qw.catalog_names("quantale")) <= set(names)
for name in names:
    entry = qw.catalog_entry(name)
    assert entry["name"] == name
    loaded = qw.Module.load("catalog:" + name, cap=64)
    again = qw.Module.load(json.dumps(loaded.to_json()), cap=64)
    assert again.to_json() == loaded.to_json(), name

print("smoke test passed:", len(names), "catalog entries")
