import sympy
from hypothesis import HealthCheck, settings, strategies as st

from symred import Polynomial, VariableRegistry

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def to_sympy(p: Polynomial, symbols=None):
    """Independent oracle view: rebuild p term by term as a sympy expression."""
    names = p.ring.names
    syms = symbols or sympy.symbols(names)
    expr = sympy.Integer(0)
    for e, c in p.terms.items():
        term = sympy.Rational(int(c.numerator), int(c.denominator))
        for s, k in zip(syms, e):
            term *= s ** k
        expr += term
    return expr


def sympy_poly_dict(p: Polynomial) -> dict:
    syms = sympy.symbols(p.ring.names)
    return sympy.Poly(to_sympy(p, syms), *syms).as_dict() if p else {}


def polynomials(R: VariableRegistry, max_terms: int = 4, max_exp: int = 2, coeffs=(-3, 3)):
    """Hypothesis strategy for small sparse polynomials in R."""
    n = len(R.names)
    term = st.tuples(st.integers(*coeffs), st.tuples(*[st.integers(0, max_exp)] * n))

    def build(terms):
        out = R.zero()
        for c, e in terms:
            out = out + R.monomial(e, c)
        return out
    return st.lists(term, min_size=0, max_size=max_terms).map(build)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
