"""Checked-in reference data: graphs, connections, low-weight bases, flatness
forms, norm tables, and search fixtures.

Everything larger than a graph declaration lives in data/*.json; loaders here
attach field elements and graph structure.  Content hashes of the data files
are exposed for report stamping.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .bigraph import BigraphPair, FourPartiteGraph, parse_bigraph
from .numfield import NumberField, field_create

GAMMA_A_CODE = "bwd1v1p1v1x0p1x1duals1v1x2"
GAMMA_B_CODE = "bwd1v1v1p1v1x0p0x1p0x1v0x1x0p1x0x1duals1v1v2x1x3"

# Vertex names in encoding-appearance order, plus the display order used by
# the path fixtures (which follows the four-partite figures).
_GAMMA_A_NAMES = [["1"], ["X"], ["Y", "Z"], ["g", "W"]]
_GAMMA_A_ORDER = ["1", "X", "Z", "Y", "W", "g"]
_GAMMA_B_NAMES_P = [["1"], ["f"], ["A"], ["B", "F"], ["C", "G", "E"], ["z", "D"]]
_GAMMA_B_ORDER_P = ["1", "f", "A", "B", "F", "G", "C", "E", "z", "D"]
_GAMMA_B_NAMES_D = [["1"], ["f"], ["H"], ["B", "F"], ["I", "J", "K"], ["z", "D"]]
_GAMMA_B_ORDER_D = ["1", "f", "H", "B", "F", "J", "I", "K", "z", "D"]


@lru_cache(maxsize=None)
def field_d() -> NumberField:
    """Q(d), d ~ 2.24698 the largest root of x^3 - 2x^2 - x + 1; the canonical
    field for both graph pairs (d^2 is the index; e = d^2 - d - 1)."""
    return field_create([1, -2, -1, 1], "2.25", generator="d")


@lru_cache(maxsize=None)
def gamma_a_pair() -> BigraphPair:
    p = parse_bigraph(GAMMA_A_CODE, _GAMMA_A_NAMES, _GAMMA_A_ORDER)
    d = parse_bigraph(GAMMA_A_CODE, _GAMMA_A_NAMES, _GAMMA_A_ORDER)
    return BigraphPair(p, d)


@lru_cache(maxsize=None)
def gamma_b_pair() -> BigraphPair:
    p = parse_bigraph(GAMMA_B_CODE, _GAMMA_B_NAMES_P, _GAMMA_B_ORDER_P)
    d = parse_bigraph(GAMMA_B_CODE, _GAMMA_B_NAMES_D, _GAMMA_B_ORDER_D)
    return BigraphPair(p, d)


@lru_cache(maxsize=None)
def gamma_a_fourpartite() -> FourPartiteGraph:
    return FourPartiteGraph(gamma_a_pair())


@lru_cache(maxsize=None)
def gamma_b_fourpartite() -> FourPartiteGraph:
    return FourPartiteGraph(gamma_b_pair())


def _data_text(name: str) -> str:
    return resources.files("gpakit.data").joinpath(name).read_text()


@lru_cache(maxsize=None)
def data_json(name: str):
    return json.loads(_data_text(name))


def data_hash(name: str) -> str:
    return hashlib.sha256(_data_text(name).encode()).hexdigest()


def load_graph_pair(payload) -> BigraphPair:
    """Build a pair from the JSON envelope {"principal": ..., "dual": ...,
    optional "names"/"order" per graph} or from a known fixture name."""
    if isinstance(payload, str):
        if payload == "gamma_A":
            return gamma_a_pair()
        if payload == "gamma_B":
            return gamma_b_pair()
        return BigraphPair(parse_bigraph(payload), parse_bigraph(payload))
    p = parse_bigraph(payload["principal"], payload.get("names_principal"),
                      payload.get("order_principal"))
    d = parse_bigraph(payload["dual"], payload.get("names_dual"),
                      payload.get("order_dual"))
    return BigraphPair(p, d)


def parse_coeff(field: NumberField, text: str):
    """Fixture coefficients: brace shorthand, generator polynomials, or
    lambda-root tags like "lam2^2*{1,-5,1}^2" are handled by callers; here we
    parse the plain field-element strings."""
    return field.parse(text)


def paths_fixture(which: str):
    return data_json("paths.json")[which]


@lru_cache(maxsize=None)
def connection_fixture(name: str):
    """Load one of the shipped connections (K1_lopsided, K2_lopsided,
    KB_lopsided) over Q(d)."""
    from .connection import connection_load

    payload = data_json("connections.json")[name]
    field = field_d()
    fp = gamma_a_fourpartite() if payload["graph_pair"] == "gamma_A" else gamma_b_fourpartite()
    return connection_load(fp, field, field.gen, payload, name=name)
