#!/usr/bin/env python3
"""Dev tool: parse the source tables (connection matrices, low-weight bases,
flatness forms, norm tables, gauges, path orders, figure lists) into the
checked-in JSON fixtures under src/gpakit/data/.

Not shipped as part of the package; the test suite validates the generated
fixtures independently by exact computation.
"""

import json
import re
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
PAPER = (ROOT / "paper.md").read_text()
OUT = ROOT / "src" / "gpakit" / "data"
OUT.mkdir(parents=True, exist_ok=True)

HAT = "\u0302"
BAR = "\u0304"

# -- row/column tag maps -------------------------------------------------------

A_PRINCIPAL_ROWS = {  # (hatted even, barred odd)
    "r1X": ("1" + HAT, "X" + BAR), "rZX": ("Z" + HAT, "X" + BAR),
    "rZW": ("Z" + HAT, "W" + BAR), "rYX": ("Y" + HAT, "X" + BAR),
    "rYW": ("Y" + HAT, "W" + BAR), "rYg": ("Y" + HAT, "g" + BAR),
}
A_PRINCIPAL_COLS = {
    "c1X": ("1", "X"), "cZX": ("Z", "X"), "cZW": ("Z", "W"),
    "cYX": ("Y", "X"), "cYW": ("Y", "W"), "cYg": ("Y", "g"),
}
A_DUAL_ROWS = {  # (plain odd, hatted even)
    "rX1": ("X", "1" + HAT), "rXZ": ("X", "Z" + HAT), "rXY": ("X", "Y" + HAT),
    "rWZ": ("W", "Z" + HAT), "rWY": ("W", "Y" + HAT), "rgY": ("g", "Y" + HAT),
}
A_DUAL_COLS = {  # (barred odd, plain even)
    "cX1": ("X" + BAR, "1"), "cXZ": ("X" + BAR, "Z"), "cXY": ("X" + BAR, "Y"),
    "cWZ": ("W" + BAR, "Z"), "cWY": ("W" + BAR, "Y"), "cgY": ("g" + BAR, "Y"),
}

B_PRINCIPAL_ROWS = {
    "r1f": ("1" + HAT, "f" + BAR), "rHf": ("H" + HAT, "f" + BAR),
    "rHB": ("H" + HAT, "B" + BAR), "rHF": ("H" + HAT, "F" + BAR),
    "rIB": ("I" + HAT, "B" + BAR), "rID": ("I" + HAT, "D" + BAR),
    "rJF": ("J" + HAT, "F" + BAR), "rJz": ("J" + HAT, "z" + BAR),
    "rKF": ("K" + HAT, "F" + BAR), "rKD": ("K" + HAT, "D" + BAR),
}
B_PRINCIPAL_COLS = {
    "c1f": ("1", "f"), "cAf": ("A", "f"), "cAB": ("A", "B"), "cAF": ("A", "F"),
    "cGF": ("G", "F"), "cGz": ("G", "z"), "cCB": ("C", "B"), "cCD": ("C", "D"),
    "cEF": ("E", "F"), "cED": ("E", "D"),
}
B_DUAL_ROWS = {
    "rf1": ("f", "1" + HAT), "rfH": ("f", "H" + HAT), "rBH": ("B", "H" + HAT),
    "rBJ": ("B", "J" + HAT), "rFI": ("F", "I" + HAT), "rFH": ("F", "H" + HAT),
    "rFK": ("F", "K" + HAT), "rzI": ("z", "I" + HAT), "rDJ": ("D", "J" + HAT),
    "rDK": ("D", "K" + HAT),
}
B_DUAL_COLS = {
    "cf1": ("f" + BAR, "1"), "cfA": ("f" + BAR, "A"), "cBA": ("B" + BAR, "A"),
    "cBG": ("B" + BAR, "G"), "cFC": ("F" + BAR, "C"), "cFA": ("F" + BAR, "A"),
    "cFE": ("F" + BAR, "E"), "czC": ("z" + BAR, "C"), "cDG": ("D" + BAR, "G"),
    "cDE": ("D" + BAR, "E"),
}


def latex_value_to_string(tex: str) -> str:
    """Normalize a cell value: {a,b,c} shorthand stays braced; fractions and
    plain polynomials become parser-ready strings."""
    s = tex.strip().strip("$").strip()
    s = s.replace(r"\left", "").replace(r"\right", "")
    s = re.sub(r"\\frac\{([^{}]*)\}\{([^{}]*)\}", r"(\1)/(\2)", s)
    s = s.replace(r"\{", "{").replace(r"\}", "}")
    s = s.replace("\\,", "").replace("~", " ")
    s = re.sub(r"\s+", "", s)
    if s.startswith("{") and s.endswith("}"):
        inner = s[1:-1]
        parts = [p for p in _split_top(inner, ",")]
        return "{" + ",".join(_frac_to_rational(p) for p in parts) + "}"
    if s.startswith("-{") and s.endswith("}"):
        inner = s[2:-1]
        parts = [p for p in _split_top(inner, ",")]
        return "{" + ",".join(_frac_to_rational("-(" + p + ")") for p in parts) + "}"
    return s


def _split_top(s: str, sep: str):
    depth = 0
    cur = ""
    for ch in s:
        if ch in "({[":
            depth += 1
        elif ch in ")}]":
            depth -= 1
        if ch == sep and depth == 0:
            yield cur
            cur = ""
        else:
            cur += ch
    yield cur


def _frac_to_rational(p: str) -> str:
    p = p.strip()
    m = re.fullmatch(r"(-?)\(?(-?\d+)\)?/\((\d+)\)", p)
    if m:
        sign = "-" if (m.group(1) == "-") != (m.group(2).startswith("-")) else ""
        num = m.group(2).lstrip("-")
        return f"{sign}{num}/{m.group(3)}"
    return p


def extract_cells(section: str, macro: str, rows: dict, cols: dict) -> dict:
    """Pull every \\<macro>{rTAG}{cTAG}{..}{..}{..}{$value$} in order."""
    out = {}
    inner2 = r"(?:[^{}]|\{(?:[^{}]|\{[^{}]*\})*\})*"
    pat = re.compile(r"\\" + macro + r"\{(r\w+)\}\{(c\w+)\}\{[^{}]*\}\{[^{}]*\}\{[^{}]*\}\{(" + inner2 + r")\}")
    for m in pat.finditer(section):
        rtag, ctag, val = m.groups()
        key = (rows[rtag], cols[ctag])
        out[key] = latex_value_to_string(val)
    return out


def cells_to_json(cells: dict, kind: str) -> list:
    """kind 'principal': key ((b_hat, eta_bar), (a, xi)) -> loop a,xi;b_hat,eta_bar
    kind 'dual': key ((xi, b_hat), (eta_bar, a)) -> loop eta_bar,a;xi,b_hat"""
    out = []
    for (rk, ck), val in sorted(cells.items()):
        if kind == "principal":
            (bh, eb), (a, xi) = rk, ck
            loop = f"{a},{xi};{bh},{eb}"
        else:
            (xi, bh), (eb, a) = rk, ck
            loop = f"{eb},{a};{xi},{bh}"
        out.append([loop, val])
    return out


def section_between(start: str, end: str) -> str:
    i = PAPER.index(start)
    j = PAPER.index(end, i)
    return PAPER[i:j]


def main():
    # -- connections on Gamma(A) -----------------------------------------------
    k1_zone = section_between("Applying these, we have  $K^{(1)}",
                              "and  $K^{(2)}_{\\text{lopsided}}")
    k1_parts = k1_zone.split("\\dualmatrixA")
    k1_principal = extract_cells(k1_parts[0], "longcellA", A_PRINCIPAL_ROWS, A_PRINCIPAL_COLS)
    k1_dual = extract_cells(k1_parts[1], "longcellA", A_DUAL_ROWS, A_DUAL_COLS)

    k2_zone = section_between("and  $K^{(2)}_{\\text{lopsided}}",
                              "We use the abbreviation $\\{a,b,c\\}$")
    k2_parts = k2_zone.split("\\dualmatrixA")
    k2_principal = extract_cells(k2_parts[0], "cellA", A_PRINCIPAL_ROWS, A_PRINCIPAL_COLS)
    k2_dual = extract_cells(k2_parts[1], "cellA", A_DUAL_ROWS, A_DUAL_COLS)

    kb_zone = section_between("We call this bi-invertible connection",
                              "\\section{Flat low weight vectors}")
    kb_parts = kb_zone.split("\\dualmatrixB")
    kb_principal = extract_cells(kb_parts[0], "cellB", B_PRINCIPAL_ROWS, B_PRINCIPAL_COLS)
    kb_dual = extract_cells(kb_parts[1], "cellB", B_DUAL_ROWS, B_DUAL_COLS)

    connections = {
        "K1_lopsided": {"graph_pair": "gamma_A",
                        "cells": cells_to_json(k1_principal, "principal"),
                        "dual_cells": cells_to_json(k1_dual, "dual")},
        "K2_lopsided": {"graph_pair": "gamma_A",
                        "cells": cells_to_json(k2_principal, "principal"),
                        "dual_cells": cells_to_json(k2_dual, "dual")},
        "KB_lopsided": {"graph_pair": "gamma_B",
                        "cells": cells_to_json(kb_principal, "principal"),
                        "dual_cells": cells_to_json(kb_dual, "dual")},
    }
    (OUT / "connections.json").write_text(json.dumps(connections, indent=1, ensure_ascii=False))
    print("connections:", {k: (len(v["cells"]), len(v["dual_cells"])) for k, v in connections.items()})

    # -- norm tables for Gamma(B) ------------------------------------------------
    norm_zone = section_between("the norms of all the entries in the dual principal",
                                "From each 2-by-2 block")
    nb_parts = norm_zone.split("\\dualmatrixB")
    nb_principal = extract_cells(nb_parts[0], "normcellB", B_PRINCIPAL_ROWS, B_PRINCIPAL_COLS)
    nb_dual = extract_cells(nb_parts[1], "normcellB", B_DUAL_ROWS, B_DUAL_COLS)

    def norm_value(val: str) -> dict:
        s = val.replace(" ", "")
        sign = 1
        lam = 0
        m = re.match(r"^(-?)\\?lambda_(\d)(.*)$", s.replace("\\lambda_", "lambda_").replace("lambda _", "lambda_"))
        s2 = s.replace("\\lambda _", "lambda_").replace("\\lambda_", "lambda_")
        m = re.match(r"^(-?)lambda_(\d)(.*)$", s2)
        if m:
            sign = -1 if m.group(1) == "-" else 1
            lam = int(m.group(2))
            rest = m.group(3)
            poly = rest if rest else "1"
        else:
            poly = s2
            if poly.startswith("-{"):
                pass
        return {"sign": sign, "lam": lam, "poly": poly if poly else "1"}

    norm_table = {
        "principal": [[loop, norm_value(val)] for loop, val in cells_to_json(nb_principal, "principal")],
        "dual": [[loop, norm_value(val)] for loop, val in cells_to_json(nb_dual, "dual")],
        "lambda_roots": {
            "1": {"poly": [1, 0, -2, 0, -1, 0, 1], "near": "-0.744955"},
            "2": {"poly": [1, 0, -1, 0, -2, 0, 1], "near": "0.667115"},
            "3": {"poly": [1, 0, 9, 0, -1, 0, -1], "near": "0.619712"},
        },
    }
    (OUT / "norm_table_B.json").write_text(json.dumps(norm_table, indent=1, ensure_ascii=False))
    print("norm cells:", len(norm_table["principal"]), len(norm_table["dual"]))

    # -- low weight basis and flat generator for A -------------------------------
    def parse_matrix_blocks(zone: str, label_pat: str) -> dict:
        out = {}
        pat = re.compile(label_pat + r"\s*&\s*=\s*\\left\(\s*\\begin\{array\}\{c+\}(.*?)\\end\{array\}\s*\\right\)", re.S)
        for m in pat.finditer(zone):
            groups = m.groups()
            key = groups[:-1]
            body = groups[-1]
            rows = []
            for rline in re.split(r"\\\\", body):
                rline = rline.strip()
                if not rline:
                    continue
                rows.append([clean_poly(x) for x in rline.split("&")])
            out[key] = rows
        return out

    def clean_poly(tex: str) -> str:
        s = tex.strip().replace(r"\left", "").replace(r"\right", "")
        s = re.sub(r"\s+", "", s)
        s = re.sub(r"(\d)d", r"\1*d", s)
        return s

    lw_zone = section_between("\\subsection{Low weight vectors for", "\\subsection{Flat generators for $\\cA$}")
    smats = parse_matrix_blocks(lw_zone, r"\(S_\{(\d)\}\)_\{(\w),(\w)\}")
    sbasis = {}
    for (i, a, b), rows in smats.items():
        sbasis.setdefault(f"S{i}", {})[f"{a},{b}"] = rows
    (OUT / "lowweight_basis_A.json").write_text(json.dumps(sbasis, indent=1, ensure_ascii=False))
    print("S basis blocks:", {k: len(v) for k, v in sbasis.items()})

    ta_zone = section_between("\\subsection{Flat generators for $\\cA$}", "We denote by $\\cF$")
    tmats = parse_matrix_blocks(ta_zone, r"T_\{(\w),(\w)\}")
    t_a = {f"{a},{b}": rows for (a, b), rows in tmats.items()}
    (OUT / "flat_generator_A.json").write_text(json.dumps(t_a, indent=1, ensure_ascii=False))
    print("T_A blocks:", len(t_a))

    tb_zone = section_between("\\subsection{Flat generators for $\\cB$}", "\\bibliographystyle")
    tbmats = parse_matrix_blocks(tb_zone, r"T_\{(\w),(\w)\}")
    t_b = {f"{a},{b}": rows for (a, b), rows in tbmats.items()}
    (OUT / "flat_generator_B.json").write_text(json.dumps(t_b, indent=1, ensure_ascii=False))
    print("T_B blocks:", len(t_b))

    # -- the flatness linear forms ------------------------------------------------
    forms_zone = section_between("\\cF(1\\bar{X}\\hat{1}\\bar{X}1X)", "\\subsection{Flat generators for $\\cB$}")
    entries = re.split(r"\\cF\(", forms_zone)
    forms = []
    for ent in entries:
        m = re.match(r"([^)]*)\)\s*&\s*=(.*?)(?:\\displaybreak|$)", ent, re.S)
        if not m:
            continue
        loop_tex, expr = m.groups()
        loop = parse_loop_tex(loop_tex)
        coeffs = parse_linear_form(expr)
        forms.append({"loop": loop, "c0": coeffs[0], "c1": coeffs[1]})
    (OUT / "flatness_forms_A.json").write_text(json.dumps(forms, indent=1, ensure_ascii=False))
    print("flatness forms:", len(forms))

    # -- gauges -------------------------------------------------------------------
    def parse_mu(zone: str) -> list:
        out = []
        pat = re.compile(r"\\mu(?:\^\{\((\d)\)\})?\s*(?:\\left)?\(\s*(.*?)\s*,\s*(.*?)\s*(?:\\right)?\)\s*&?\s*=\s*&?\s*(-?)\\lambda_\{([0-9,\-]+)\}\^\{\(([-0-9.]+)\)\}", re.S)
        for m in pat.finditer(zone):
            _, va, vb, sign, coeffs, near = m.groups()
            out.append({
                "edge": [decorate(va), decorate(vb)],
                "sign": -1 if sign == "-" else 1,
                "poly": [int(c) for c in coeffs.split(",")],
                "near": near,
            })
        return out

    def decorate(tex: str) -> str:
        t = tex.strip()
        m = re.match(r"\\bar\{(\w)\}", t)
        if m:
            return m.group(1) + BAR
        m = re.match(r"\\hat\{(\w)\}", t)
        if m:
            return m.group(1) + HAT
        return t

    mu_zone1 = section_between("we choose elements of the complex gauge group $\\mu^{(i)}$",
                               "\\mu^{(2)}(1, X)")
    mu_zone2 = section_between("\\mu^{(2)}(1, X)", "(Here, $\\lambda_p^{(x)}$")
    mu1 = parse_mu(mu_zone1)
    mu2 = parse_mu(mu_zone2)
    (OUT / "gauges_A.json").write_text(json.dumps({"mu1": mu1, "mu2": mu2}, indent=1, ensure_ascii=False))
    print("mu gauges:", len(mu1), len(mu2))

    # -- path orders ----------------------------------------------------------------
    paths_zone = section_between("\\operatorname{paths}^2_{\\mathcal{A}}(1, 1)",
                                 "\\begin{thm}")
    paths = {"A2": {}, "B3": {}}
    pat = re.compile(r"\\operatorname\{paths\}\^(\d)_\{\\mathcal\{(\w)\}\}\((\w),\s*(\w)\)\s*&\s*=\s*\\left\\\{(.*?)\\right\\\}", re.S)
    for m in pat.finditer(paths_zone):
        n, g, a, b, body = m.groups()
        items = re.findall(r"\(([\w]+)\)", body)
        key = "A2" if g == "A" else "B3"
        paths[key][f"{a},{b}"] = [list(s) for s in items]
    (OUT / "paths.json").write_text(json.dumps(paths, indent=1, ensure_ascii=False))
    print("paths:", len(paths["A2"]), len(paths["B3"]))

    # -- odometer figures -------------------------------------------------------------
    fig1_zone = section_between("\\left(\\bigraph{bwd1v1p1v1x0p0x1duals1v1x2}",
                                "\\caption{Principals graphs for which")
    fig1_pairs = re.findall(r"\\left\(\\bigraph\{(bwd[\w]+)\},\s*\\bigraph\{(bwd[\w]+)\}\\right\)", fig1_zone)
    fig2_zone = section_between("\\caption{Running the odometer.}", "has a depth 2 object")
    # leaves listed before the caption; capture from the tree block instead
    tree_zone = section_between("\\@call\\@subtree\\@Tree", "\\caption{Running the odometer.}")
    leaves = re.findall(r"fill=(red!30|blue!10)\]\{\$\\!\\!\\begin\{array\}\{c\}\\bigraph\{(bwd[\w]+)\}\\\\\\bigraph\{(bwd[\w]+)\}\\end\{array\}",
                        tree_zone)
    fig2 = [{"color": c.split("!")[0], "principal": p, "dual": d} for c, p, d in leaves]
    del fig2_zone
    (OUT / "odometer_figures.json").write_text(json.dumps(
        {"figure1_pairs": fig1_pairs, "figure2_leaves": fig2}, indent=1, ensure_ascii=False))
    print("figure1 pairs:", len(fig1_pairs), "figure2 leaves:", len(fig2))

    # -- branch data -------------------------------------------------------------------
    branch = {
        "first_row_squares": ["{0,0,1}/{0,1,0}", None, None],
        "r1": ["d^2-4*d+3", "d^2-3*d+2", "d^2-3*d+1"],
        "r2": ["-d^2+2*d+1", "-d^2+d+2", "-d^2+d+3"],
    }
    (OUT / "branch_A.json").write_text(json.dumps(branch, indent=1))
    print("done")


def parse_loop_tex(tex: str) -> list:
    toks = []
    s = tex.strip()
    i = 0
    while i < len(s):
        if s.startswith("\\bar{", i):
            j = s.index("}", i)
            toks.append(s[i + 5:j] + BAR)
            i = j + 1
        elif s.startswith("\\hat{", i):
            j = s.index("}", i)
            toks.append(s[i + 5:j] + HAT)
            i = j + 1
        elif s[i].isalnum():
            toks.append(s[i])
            i += 1
        else:
            i += 1
    return toks


def parse_linear_form(expr: str) -> tuple:
    s = expr.replace("\\\\", " ").replace("&", " ").replace("\\quad", " ")
    s = s.replace("\\left", "").replace("\\right", "")
    s = re.sub(r"\s+", " ", s).strip()
    # normalize the pattern "POLY (-c_{i,j})" to "-POLY c_{i,j}"
    s = re.sub(r"\(\s*-\s*c_\{(\d),(\d)\}\s*\)", r"NEGC\1\2", s)
    c0 = ["0", "0", "0", "0"]
    c1 = ["0", "0", "0", "0"]
    pat = re.compile(r"([+-]?)\s*(\([^()]*\)|[^c($]*?)\s*(c_\{(\d),(\d)\}|NEGC(\d)(\d))")
    for m in pat.finditer(s):
        sign, coef, _, i1, j1, i2, j2 = m.groups()
        i, j = (i1, j1) if i1 is not None else (i2, j2)
        neg = i1 is None  # NEGC form carries its own minus
        coef = coef.strip()
        if coef in ("", "+"):
            val = "1"
        else:
            val = coef.strip()
            if val.startswith("(") and val.endswith(")"):
                val = val[1:-1]
        val = re.sub(r"\s+", "", val)
        val = re.sub(r"(\d)d", r"\1*d", val)
        val = val.replace("(", "").replace(")", "")
        total_neg = (sign == "-") != neg
        out = ("-" if total_neg else "") + (val if val not in ("", "1") else "1")
        tgt = c0 if i == "0" else c1
        idx = int(j) - 1
        assert tgt[idx] == "0", (s, i, j)
        tgt[idx] = out
    return c0, c1


if __name__ == "__main__":
    sys.exit(main())
