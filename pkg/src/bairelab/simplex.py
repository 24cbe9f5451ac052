"""Dense two-phase simplex over exact rationals.

Minimizes c.x subject to A_ub x <= b_ub, A_eq x = b_eq, x >= 0.  Bland's
rule is used for both the entering and the leaving choice, which rules
out cycling; with Fractions there is no numerical pivoting concern, only
growth of numerators, which stays tame at the problem sizes this library
produces.
"""

from fractions import Fraction

from .errors import BaireLabError


class LPInfeasible(BaireLabError):
    pass


class LPUnbounded(BaireLabError):
    pass


def _pivot(tableau, basis, row, col):
    piv = tableau[row][col]
    tableau[row] = [v / piv for v in tableau[row]]
    for i, r in enumerate(tableau):
        if i != row and r[col] != 0:
            factor = r[col]
            prow = tableau[row]
            tableau[i] = [v - factor * p for v, p in zip(r, prow)]
    basis[row] = col


def _run(tableau, basis, cost, allowed):
    """Bland-rule simplex loop; `cost` is indexed by column."""
    m = len(tableau)
    while True:
        dual = [cost[basis[i]] for i in range(m)]
        entering = -1
        for j in allowed:
            rc = cost[j]
            for i in range(m):
                if tableau[i][j]:
                    rc -= dual[i] * tableau[i][j]
            if rc < 0:
                entering = j
                break
        if entering < 0:
            return
        leaving = -1
        best_ratio = None
        for i in range(m):
            a = tableau[i][entering]
            if a > 0:
                ratio = tableau[i][-1] / a
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[leaving])
                ):
                    best_ratio = ratio
                    leaving = i
        if leaving < 0:
            raise LPUnbounded("objective unbounded below")
        _pivot(tableau, basis, leaving, entering)


def solve_lp(c, a_ub=(), b_ub=(), a_eq=(), b_eq=()):
    """Returns (optimal value, solution for the original variables)."""
    c = [Fraction(v) for v in c]
    n = len(c)
    rows = []
    for a, b in zip(a_ub, b_ub):
        rows.append(([Fraction(v) for v in a], Fraction(b), True))
    for a, b in zip(a_eq, b_eq):
        rows.append(([Fraction(v) for v in a], Fraction(b), False))
    m = len(rows)
    n_slack = sum(1 for _, _, is_ub in rows if is_ub)
    width = n + n_slack

    data = []
    slack_at = 0
    for a, b, is_ub in rows:
        row = a + [Fraction(0)] * (width - n)
        if is_ub:
            row[n + slack_at] = Fraction(1)
            slack_at += 1
        if b < 0:
            row = [-v for v in row]
            b = -b
        data.append((row, b))

    basis = []
    needs_art = []
    for i, (row, b) in enumerate(data):
        slack_col = next(
            (j for j in range(n, width) if row[j] == 1
             and all(data[k][0][j] == 0 for k in range(m) if k != i)),
            None,
        )
        if slack_col is not None:
            basis.append(slack_col)
        else:
            basis.append(None)
            needs_art.append(i)

    n_art = len(needs_art)
    total = width + n_art
    tableau = []
    for i, (row, b) in enumerate(data):
        full = row + [Fraction(0)] * n_art + [b]
        tableau.append(full)
    for k, i in enumerate(needs_art):
        tableau[i][width + k] = Fraction(1)
        basis[i] = width + k

    if n_art:
        phase1 = [Fraction(0)] * width + [Fraction(1)] * n_art
        _run(tableau, basis, phase1, range(total))
        value = sum(phase1[basis[i]] * tableau[i][-1] for i in range(m))
        if value != 0:
            raise LPInfeasible("no feasible point")
        # drive surviving artificials out where possible; rows that carry
        # only the artificial are redundant and stay harmlessly basic
        for i in range(m):
            if basis[i] >= width:
                col = next(
                    (j for j in range(width) if tableau[i][j] != 0), None
                )
                if col is not None:
                    _pivot(tableau, basis, i, col)

    phase2 = c + [Fraction(0)] * (total - n)
    _run(tableau, basis, phase2, range(width))
    value = sum(phase2[basis[i]] * tableau[i][-1] for i in range(m))
    solution = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            solution[basis[i]] = tableau[i][-1]
    return value, solution
