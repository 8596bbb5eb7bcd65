import pytest

from sylowkit.corpus import (
    PRODUCT_NAMES, corpus_names, cyclic, dihedral, direct_product, group_by_name, quaternion8,
)
from sylowkit.errors import PreconditionError
from sylowkit.groups import center, element_order


def test_corpus_contents():
    names = corpus_names(200)
    assert len(names) == len(set(names))
    for expected in ["C1", "C200", "D4", "D200", "Q8", "S5", "A5", "S3xS3", "A5xC2"]:
        assert expected in names
    assert len(PRODUCT_NAMES) >= 20
    assert all(group_by_name(n).order <= 200 for n in PRODUCT_NAMES)


@pytest.mark.parametrize("name,order", [
    ("C7", 7), ("D12", 12), ("S4", 24), ("A5", 60), ("Q8", 8), ("C2xC2xC3", 12), ("S3xS3", 36),
])
def test_orders(name, order):
    assert group_by_name(name).order == order


def test_labels_and_cache():
    G = group_by_name("D8xC2")
    assert G.label == "D8xC2" and group_by_name("D8xC2") is G


@pytest.mark.parametrize("bad", ["X9", "D7", "C0", "", "S3x"])
def test_bad_names(bad):
    with pytest.raises(PreconditionError):
        group_by_name(bad)


def test_constructors():
    assert cyclic(6).is_abelian() and element_order(cyclic(6), 1) == 6
    D = dihedral(10)
    assert not D.is_abelian() and center(D).order == 1
    Q = quaternion8()
    assert [element_order(Q, x) for x in range(8)] == [1, 2, 4, 4, 4, 4, 4, 4]
    P = direct_product(cyclic(2), cyclic(3))
    assert P.order == 6 and P.is_abelian()
    P.check_axioms()
