"""Independent sympy computations frozen into tests/oracle_values.inc.

Run from the repository root:  python3 tests/oracle/oracle.py > tests/oracle_values.inc
The C++ suites never call this script; it only documents where the numbers came from.
"""
import json
import sys

import sympy as sp

t = sp.Symbol("t")


def load_catalog():
    with open("data/catalog.json") as f:
        return {c["id"]: c for c in json.load(f)["classes"]}


def tensor(cls, params):
    n = cls["dim"]
    C = [[[sp.Integer(0)] * n for _ in range(n)] for _ in range(n)]
    env = {k: sp.Rational(v) for k, v in params.items()}
    for b in cls["brackets"]:
        i, j, k = b["i"] - 1, b["j"] - 1, b["k"] - 1
        c = sp.sympify(b["c"]).subs(env)
        C[i][j][k] += c
        C[j][i][k] -= c
    return C


def ad(C, x):
    n = len(C)
    return sp.Matrix(n, n, lambda k, j: sum(x[i] * C[i][j][k] for i in range(n)))


def bracket_span(C, A, B):
    n = len(C)
    vecs = []
    for a in A:
        for b in B:
            vecs.append([sum(a[i] * b[j] * C[i][j][k] for i in range(n) for j in range(n)) for k in range(n)])
    if not vecs:
        return []
    M = sp.Matrix(vecs)
    return [list(M.row(r)) for r in range(M.rank())] if M.rank() == 0 else [list(v) for v in M.T.columnspace()]


def series(C):
    n = len(C)
    whole = [list(sp.eye(n).row(i)) for i in range(n)]
    central, derived = [n], [n]
    c = whole
    while len(c) > 0:
        nx = bracket_span(C, whole, c)
        central.append(len(nx))
        if len(nx) == len(c):
            break
        c = nx
    d = whole
    while len(d) > 0:
        nx = bracket_span(C, d, d)
        derived.append(len(nx))
        if len(nx) == len(d):
            break
        d = nx
    return central, derived


def center_dim(C):
    n = len(C)
    rows = []
    for j in range(n):
        for k in range(n):
            rows.append([C[i][j][k] for i in range(n)])
    return n - sp.Matrix(rows).rank()


def killing(C):
    n = len(C)
    ads = [ad(C, [1 if a == i else 0 for a in range(n)]) for i in range(n)]
    return sp.Matrix(n, n, lambda i, j: (ads[i] * ads[j]).trace())


def inertia(M):
    ev = M.eigenvals()
    pos = sum(m for v, m in ev.items() if sp.re(sp.N(v)) > 1e-12)
    neg = sum(m for v, m in ev.items() if sp.re(sp.N(v)) < -1e-12)
    return pos, neg, M.shape[0] - pos - neg


def unimodular(C):
    n = len(C)
    return all(sum(C[i][k][k] for k in range(n)) == 0 for i in range(n))


def behr(C):
    """Solve C^k_ij = eps_ijl n^{lk} + delta^k_i a_j - delta^k_j a_i for symmetric n and a."""
    ns = sp.symbols("n0:6")
    a = sp.symbols("a0:3")
    idx = {(0, 0): 0, (1, 1): 1, (2, 2): 2, (0, 1): 3, (1, 0): 3, (0, 2): 4, (2, 0): 4, (1, 2): 5, (2, 1): 5}
    N = sp.Matrix(3, 3, lambda l, k: ns[idx[(l, k)]])
    eqs = []
    for i in range(3):
        for j in range(3):
            for k in range(3):
                rhs = sum(sp.LeviCivita(i, j, l) * N[l, k] for l in range(3))
                rhs += (a[j] if k == i else 0) - (a[i] if k == j else 0)
                eqs.append(sp.Eq(C[i][j][k], rhs))
    sol = sp.solve(eqs, list(ns) + list(a), dict=True)
    assert len(sol) == 1
    s = sol[0]
    return N.subs(s), [s.get(x, x) for x in a]


def contract(C, A):
    n = len(C)
    Ainv = A.inv()
    out = [[[0] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            v = sp.zeros(n, 1)
            for f in range(n):
                for g in range(n):
                    if A[f, i] == 0 or A[g, j] == 0:
                        continue
                    for h in range(n):
                        if C[f][g][h] != 0:
                            v[h] += A[f, i] * A[g, j] * C[f][g][h]
            w = sp.simplify(Ainv * v)
            for k in range(n):
                out[i][j][k] = sp.limit(sp.simplify(w[k]), t, 0)
    return out


def cpp_q(x):
    x = sp.Rational(x)
    return f'"{x.p}/{x.q}"' if x.q != 1 else f'"{x.p}"'


def cpp_brackets(C):
    n = len(C)
    items = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                if C[i][j][k] != 0:
                    items.append(f"{{{i + 1}, {j + 1}, {k + 1}, {cpp_q(C[i][j][k])}}}")
    return "{" + ", ".join(items) + "}"


def main():
    cat = load_catalog()
    w = sys.stdout.write
    w("// Generated by tests/oracle/oracle.py (sympy); do not edit by hand.\n\n")

    # invariants of every catalog sample
    w("inline const std::vector<OracleInvariants>& oracle_invariants() {\n  static const std::vector<OracleInvariants> v{\n")
    for cid, cls in cat.items():
        for p in cls.get("samples", [{}]):
            C = tensor(cls, p)
            ce, de = series(C)
            kp, kn, kz = inertia(killing(C))
            ps = ", ".join(f'{{"{k}", {cpp_q(v)}}}' for k, v in p.items())
            w(f'    {{"{cid}", {{{ps}}}, {{{", ".join(map(str, ce))}}}, {{{", ".join(map(str, de))}}}, '
              f'{center_dim(C)}, {{{kp}, {kn}, {kz}}}, {"true" if unimodular(C) else "false"}}},\n')
    w("  };\n  return v;\n}\n\n")

    # Behr pairs for dim 3
    w("inline const std::vector<OracleBehr>& oracle_behr() {\n  static const std::vector<OracleBehr> v{\n")
    for cid, cls in cat.items():
        if cls["dim"] != 3:
            continue
        for p in cls.get("samples", [{}]):
            N, a = behr(tensor(cls, p))
            ps = ", ".join(f'{{"{k}", {cpp_q(v)}}}' for k, v in p.items())
            nn = ", ".join("{" + ", ".join(cpp_q(N[r, c]) for c in range(3)) + "}" for r in range(3))
            w(f'    {{"{cid}", {{{ps}}}, {{{nn}}}, {{{", ".join(cpp_q(x) for x in a)}}}}},\n')
    w("  };\n  return v;\n}\n\n")

    # Killing matrices of the simple algebras and A_{4,10}
    w("inline const std::vector<OracleKilling>& oracle_killing() {\n  static const std::vector<OracleKilling> v{\n")
    for cid in ["A_{3,8}", "A_{3,9}", "A_{3,3}", "A_{4,10}", "A_{4,12}"]:
        K = killing(tensor(cat[cid], cat[cid]["samples"][0]))
        rows = ", ".join("{" + ", ".join(cpp_q(K[r, c]) for c in range(K.shape[1])) + "}" for r in range(K.shape[0]))
        w(f'    {{"{cid}", {{{rows}}}}},\n')
    w("  };\n  return v;\n}\n\n")

    # a fixed basis change
    C = tensor(cat["A_{4,9}"], {"b": "1/2"})
    M = sp.Matrix([[1, 2, 0, -1], [0, 1, 3, 0], [1, 0, 1, 0], [0, 0, 2, 1]])
    Cp = contract(C, M)
    w(f"inline const std::vector<OracleBracket> oracle_basis_change_a49 = {cpp_brackets(Cp)};\n\n")

    # contraction limits
    lims = {}
    lims["ix_iw1"] = contract(tensor(cat["A_{3,9}"], {}), sp.diag(1, t, t))
    U = sp.Matrix([[0, 0, 0], [1, 0, 0], [0, 0, 1]])
    A = U + t * sp.eye(3)
    first = contract(tensor(cat["A_{3,8}"], {}), A)
    lims["viii_saletan1"] = first
    lims["viii_saletan2"] = contract(first, A)
    cls = cat["A_{4,9}"]
    Cb = tensor_sym(cls, {"b": -1 + t / 2})
    lims["a49_path"] = contract(Cb, sp.eye(4))
    cls = cat["A_{4,11}"]
    lims["a411_path"] = contract(tensor_sym(cls, {"a": t}), sp.eye(4))
    lims["ii4_iw2"] = contract(tensor(cat["A_1+A_{3,1}"], {}), sp.diag(1, 1, t, t))
    for k, v in lims.items():
        w(f"inline const std::vector<OracleBracket> oracle_limit_{k} = {cpp_brackets(v)};\n")
    w("\n")

    # real Jordan data: (re, |im|, size), one entry per conjugate pair
    mats = {
        "jordan_mixed": sp.Matrix([[2, 1, 0], [0, 2, 0], [0, 0, 3]]),
        "jordan_nilpotent3": sp.Matrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]]),
        "jordan_rotation": sp.Matrix([[0, -2], [1, 0]]),
        "jordan_cubic_real": sp.Matrix([[0, 0, 1], [1, 0, 3], [0, 1, 0]]),
        "jordan_cubic_complex": sp.Matrix([[0, 0, 2], [1, 0, 0], [0, 1, 0]]),
        "jordan_conjugated": sp.Matrix([[1, 0, 0], [1, 1, 0], [0, 1, 1]]).inv()
        * sp.Matrix([[5, 1, 0], [0, 5, 0], [0, 0, 5]])
        * sp.Matrix([[1, 0, 0], [1, 1, 0], [0, 1, 1]]),
    }
    w("inline const std::vector<OracleJordan>& oracle_jordan() {\n  static const std::vector<OracleJordan> v{\n")
    for name, m in mats.items():
        P, J = m.jordan_form()
        blocks = []
        i = 0
        n = J.shape[0]
        while i < n:
            s = 1
            while i + s < n and J[i + s - 1, i + s] == 1 and J[i + s, i + s] == J[i, i]:
                s += 1
            lam = sp.N(J[i, i], 30)
            re, im = float(sp.re(lam)), float(sp.im(lam))
            if abs(im) < 1e-20:
                im = 0.0
            # one real block per conjugate pair
            if im >= 0:
                blocks.append((re, im, s))
            i += s
        blocks.sort()
        rows = ", ".join("{" + ", ".join(cpp_q(m[r, c]) for c in range(m.shape[1])) + "}" for r in range(m.shape[0]))
        bl = ", ".join(f"{{{re:.15g}, {im:.15g}, {s}}}" for re, im, s in blocks)
        w(f'    {{"{name}", {{{rows}}}, {{{bl}}}}},\n')
    w("  };\n  return v;\n}\n")


def tensor_sym(cls, env):
    n = cls["dim"]
    C = [[[sp.Integer(0)] * n for _ in range(n)] for _ in range(n)]
    for b in cls["brackets"]:
        i, j, k = b["i"] - 1, b["j"] - 1, b["k"] - 1
        c = sp.sympify(b["c"]).subs(env)
        C[i][j][k] += c
        C[j][i][k] -= c
    return C


if __name__ == "__main__":
    main()
