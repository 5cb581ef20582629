#!/usr/bin/env python3
"""Expand data/toy_corpus.src into the tab-separated corpus format.

Source lines hold one sentence each.  Tokens are written form/TAG>GOV with an
optional !role suffix; "[" and "]" delimit noun phrases.  GOV is ROOT or the
form of the governor, with ~n selecting its n-th occurrence.  Lines starting
with '#' are copied as comments of the following sentence.
"""

import re
import sys

ROLES = {
    "pro": "ProsodicComma",
    "lcc": "LogicalConjunctiveComma",
    "ccc": "ClausalConjunctiveComma",
    "lc": "LogicalConjunction",
    "cc": "ClausalConjunction",
    "sub": "SubordinatingPreposition",
    "nsp": "NonSegmentingPreposition",
}
SUBORDINATING = {"although", "if", "while", "that", "when", "until", "unless",
                 "because", "since", "whereas", "before", "after"}
TOKEN = re.compile(r"^(.+?)/([^/>]+)>([^!]+)(?:!(\w+))?$")


def convert(line, lineno):
    tokens, bio, depth = [], [], 0
    for item in line.split():
        if item == "[":
            if depth:
                raise SystemExit(f"line {lineno}: nested [")
            depth, opened = 1, True
            continue
        if item == "]":
            if not depth:
                raise SystemExit(f"line {lineno}: unmatched ]")
            depth = 0
            continue
        m = TOKEN.match(item)
        if not m:
            raise SystemExit(f"line {lineno}: bad token {item!r}")
        form, tag, gov, role = m.groups()
        if depth:
            bio.append("B-NP" if opened else "I-NP")
            opened = False
        else:
            bio.append("O")
        tokens.append([form, tag, gov, role])
    if depth:
        raise SystemExit(f"line {lineno}: unclosed [")

    forms = [t[0] for t in tokens]
    rows = []
    for i, (form, tag, gov, role) in enumerate(tokens):
        if gov == "ROOT":
            g = "ROOT"
        else:
            name, _, nth = gov.partition("~")
            hits = [j for j, f in enumerate(forms) if f == name]
            if not hits:
                raise SystemExit(f"line {lineno}: governor {gov!r} of {form!r} not found")
            if not nth and len(hits) > 1:
                raise SystemExit(f"line {lineno}: governor {gov!r} of {form!r} is ambiguous")
            k = int(nth) - 1 if nth else 0
            if k >= len(hits):
                raise SystemExit(f"line {lineno}: governor {gov!r} of {form!r} not found")
            g = str(hits[k])
            if hits[k] == i:
                raise SystemExit(f"line {lineno}: {form!r} governs itself")
        if role is None:
            if tag in (",", "CC"):
                raise SystemExit(f"line {lineno}: {form!r} needs a role")
            if tag == "IN":
                role = "sub" if form.lower() in SUBORDINATING else "nsp"
        r = ROLES[role] if role else "_"
        rows.append(f"{i}\t{form}\t{tag}\t{g}\t{r}\t{bio[i]}")
    return rows


def main():
    src, dst = sys.argv[1], sys.argv[2]
    out, comments = [], []
    with open(src) as f:
        for lineno, raw in enumerate(f, 1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                comments.append(line)
                continue
            out.extend(comments)
            comments = []
            out.extend(convert(line, lineno))
            out.append("")
    with open(dst, "w") as f:
        f.write("\n".join(out) + "\n")


if __name__ == "__main__":
    main()
