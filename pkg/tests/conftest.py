import itertools

from hypothesis import strategies as st

from beliefchange.formula import TOP, Atom, Iff, Implies, Not, Or, Signature

SIG2 = Signature.of("p, q")
SIG3 = Signature.of("p, q, r")

ACCEPTANCE_LINES = []


def formulas(atoms=("p", "q", "r"), max_leaves=8):
    leaves = st.sampled_from([Atom(a) for a in atoms] + [TOP, Not(TOP)])
    return st.recursive(
        leaves,
        lambda sub: st.one_of(
            st.builds(Not, sub),
            st.builds(lambda a, b: a & b, sub, sub),
            st.builds(Or, sub, sub),
            st.builds(Implies, sub, sub),
            st.builds(Iff, sub, sub),
        ),
        max_leaves=max_leaves,
    )


def truth_table(f, sig):
    """Valuations (as ints in the library encoding) satisfying ``f``, by direct evaluation."""
    n = len(sig)
    out = set()
    for v, bits in enumerate(itertools.product([False, True], repeat=n)):
        true = {a for a, b in zip(sig.atoms, bits) if b}
        if f.evaluate(true):
            out.add(v)
    return out


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
