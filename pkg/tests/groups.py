"""Small named groups shared by the tests, plus hypothesis strategies."""

from hypothesis import strategies as st

from mingen.shell.expr import evaluate_text

SMALL = {
    "Sym3": "Sym(3)",
    "Sym4": "Sym(4)",
    "Alt4": "Alt(4)",
    "Q8": "Q8",
    "D8": "Dih(4)",
    "D10": "Dih(5)",
    "D12": "Dih(6)",
    "Cyc6": "Cyc(6)",
    "2^3": "Direct(Cyc(2),Direct(Cyc(2),Cyc(2)))",
    "S3xS3": "Direct(Sym(3),Sym(3))",
    "S2xS3": "Direct(Sym(2),Sym(3))",
    "F20": "Affine(5,1,[[2]])",
    "M9": "Affine(3,2,[[0,2],[1,0]],[[1,1],[1,2]])",
    "SL23": "Lin(3,2,[[1,1],[0,1]],[[1,0],[1,1]])",
    "Q8xC2": "Direct(Q8,Cyc(2))",
    "A4xC3": "Direct(Alt(4),Cyc(3))",
    "S2wr2": "Wreath(Sym(2),2)",
    "C3wr2": "Wreath(Cyc(3),2)",
    "CP(S3,2)": "CrownPower(Sym(3),2)",
    "CP(A4,2)": "CrownPower(Alt(4),2)",
}

_cache = {}


def group(name):
    if name not in _cache:
        _cache[name] = evaluate_text(SMALL[name])
    return _cache[name]


small_names = st.sampled_from(sorted(SMALL))


@st.composite
def permutations(draw, degree=None, max_degree=9):
    n = degree if degree is not None else draw(st.integers(1, max_degree))
    return tuple(draw(st.permutations(range(n))))


@st.composite
def generator_sets(draw, max_degree=7, max_gens=3):
    n = draw(st.integers(1, max_degree))
    k = draw(st.integers(0, max_gens))
    gens = [tuple(draw(st.permutations(range(n)))) for _ in range(k)]
    return n, gens
