import pytest

from hodgelab import catalog
from hodgelab.derhamring import TZ
from hodgelab.hodgering import XYZ

x, y, z = XYZ.gens()
t, w = TZ.gens()


def test_get_examples():
    p1 = catalog.get("P1")
    assert p1.hodge.to_poly() == (1 + x * y) * z
    assert p1.derham.to_poly() == (1 + t**2) * w
    e = catalog.get("E")
    assert e.hodge.to_poly() == (1 + x + y + x * y) * z
    assert e.derham.to_poly() == (1 + 2 * t + t**2) * w
    serre = catalog.get("SerreSurface")
    assert not serre.concrete
    assert serre.known == {"h[1,0]": 0, "h[0,1]": 1}


def test_unknown_name():
    with pytest.raises(catalog.UnknownName):
        catalog.get("K3")


def test_concrete_entries_are_members():
    for name in catalog.names():
        entry = catalog.get(name)
        if entry.concrete:
            assert entry.element().is_member, name
            assert entry.hodge.n == entry.dim


def test_products():
    pp = catalog.product(["P1", "P1"])
    assert pp.a.to_poly() == (1 + x * y) ** 2 * z**2
    assert pp.b.to_poly() == (1 + t**2) ** 2 * w**2
    ee = catalog.product(["E", "E"])
    assert ee.a.h[1][1] == 4
    assert catalog.product([]) == catalog.get("point").element()
    with pytest.raises(catalog.PartialEntry):
        catalog.product(["SerreSurface"])


def test_to_json_is_serializable():
    import json
    for name in catalog.names():
        json.dumps(catalog.get(name).to_json())
