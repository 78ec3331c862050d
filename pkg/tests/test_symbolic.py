import random
from fractions import Fraction as F

from rcg.positivity.chain import beta_chain
from rcg.positivity.symbolic import region_symbolic
from rcg.rootsys import longest_word, root_system


def test_golden_a3():
    reg = region_symbolic(root_system("A3"), (1, 2, 3, 1, 2, 1))
    assert [str(p) for p in reg.nontrivial()] == ["b1*b4*b6 - b1*b5 - b2*b6 + b3", "b2*b5 - b3*b4", "b4*b6 - b5"]
    assert [k + 1 for k, t in enumerate(reg.trivial) if t] == [3, 5, 6]
    assert reg.beta_text(1) == "b1 - (b2*b6 - b3)/(b4*b6 - b5)"
    assert reg.beta_text(2) == "b2 - b3*b4/b5"
    assert reg.beta_text(4) == "b4 - b5/b6"
    js = reg.to_json()
    assert js["word"] == [1, 2, 3, 1, 2, 1] and len(js["inequalities"]) == 6


def test_a2():
    reg = region_symbolic(root_system("A2"), (1, 2, 1))
    assert sorted(str(p) for p in reg.inequalities) == ["b1*b3 - b2", "b2", "b3"]


def test_symbolic_agrees_with_numeric():
    rng = random.Random(3)
    for name in ("A3", "D4"):
        rs = root_system(name)
        w = longest_word(rs)
        reg = region_symbolic(rs, w)
        for _ in range(50):
            b = [F(rng.randint(1, 12), rng.randint(1, 4)) for _ in w]
            assert reg.contains(b) == beta_chain(rs, w, b).member
