"""Independent oracles shared by the unit and acceptance suites."""

from stabglue.scalars import XC, arg_cmp, parse_qs3


def phase_key(sig, E, ph=None):
    ph = ph or sig.heart_phase(E)
    z = ph.z
    return (ph.window, str(z.re), str(z.im))


def phase_key_lt(k1, k2):
    if k1[0] != k2[0]:
        return k1[0] < k2[0]
    z1 = XC(parse_qs3(k1[1]), parse_qs3(k1[2]))
    z2 = XC(parse_qs3(k2[1]), parse_qs3(k2[2]))
    return arg_cmp(z1, z2) < 0


def brute_force_hn(sig, E, _memo=None):
    """All factor sequences of filtrations with semistable factors and
    strictly decreasing phases, enumerated through the finite subobject
    lattice. HN uniqueness says exactly one sequence survives."""
    heart = sig.heart
    memo = _memo if _memo is not None else {}
    key = E.pieces
    if key in memo:
        return memo[key]
    results = set()
    if sig.is_semistable_heart(E):
        results.add(((tuple(heart.k0(E)), phase_key(sig, E)),))
    for S, Q in heart.subquotients(E):
        if heart.is_zero(S) or heart.is_zero(Q):
            continue
        if not sig.is_semistable_heart(S):
            continue
        ps = sig.heart_phase(S)
        for tail in brute_force_hn(sig, Q, memo):
            first = tail[0]
            if phase_key_lt(first[1], phase_key(sig, S, ps)):
                results.add(((tuple(heart.k0(S)), phase_key(sig, S, ps)),) + tail)
    memo[key] = results
    return results
