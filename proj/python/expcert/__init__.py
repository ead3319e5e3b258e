"""Certified checks for a^x + b^y = c^z over (a, b, c) built from (m, n, r)."""

import json

from . import _core

SCHEMA_VERSION = _core.SCHEMA_VERSION
InvalidInstance = _core.InvalidInstance


def generate(m, n, r=2):
    return json.loads(_core.instance_json(str(m), str(n), r))["instance"]


def certify(m, n, r=2, *, start_bits=128, cap_bits=65536, shortcuts=True):
    return json.loads(_core.certify_json(str(m), str(n), r, start_bits, cap_bits, shortcuts))


def certify_symbolic(log10_m, n, r=2):
    return json.loads(_core.certify_symbolic_json(str(log10_m), str(n), r))


def search(m, n, r=2, box=(30, 30, 30), *, sieve=True, jobs=1):
    x_max, y_max, z_max = box
    return json.loads(_core.search_json(str(m), str(n), r, x_max, y_max, z_max, sieve, jobs))


def cfcheck(m, n):
    return json.loads(_core.cfcheck_json(str(m), str(n)))


def verify_solution(m, n, r, x, y, z):
    return _core.verify_solution(str(m), str(n), r, x, y, z)


def jacobi(a, n):
    return _core.jacobi(str(a), str(n))


def ord_p(n, p):
    return _core.ord_p(str(n), str(p))


def lte_valuation(u, v, p, k):
    return _core.lte_valuation(str(u), str(v), str(p), str(k))


def partial_quotients(a, c, q_limit):
    return [int(q) for q in _core.partial_quotients(str(a), str(c), str(q_limit))]
