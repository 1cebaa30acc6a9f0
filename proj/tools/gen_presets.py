#!/usr/bin/env python3
"""Regenerates presets/*.json and include/hilbert/presets.hpp."""
import itertools
import json
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent


def term(basis, coeff):
    return {"basis": basis, "coeff": str(coeff)}


def p2():
    return {
        "name": "p2",
        "basis": [{"id": "1", "degree": 0}, {"id": "h", "degree": 2}, {"id": "h2", "degree": 4}],
        "unit": "1",
        "products": [{"left": "h", "right": "h", "result": [term("h2", 1)]}],
        "integral": [term("h2", 1)],
        "canonical_class": [term("h", -3)],
    }


def p1xp1():
    return {
        "name": "p1xp1",
        "basis": [{"id": "1", "degree": 0}, {"id": "a", "degree": 2},
                  {"id": "b", "degree": 2}, {"id": "pt", "degree": 4}],
        "unit": "1",
        "products": [
            {"left": "a", "right": "b", "result": [term("pt", 1)]},
        ],
        "integral": [term("pt", 1)],
        "canonical_class": [term("a", -2), term("b", -2)],
    }


def torus_like():
    gens = [1, 2, 3, 4]
    subsets = [s for k in range(5) for s in itertools.combinations(gens, k)]
    name = lambda s: "1" if not s else "x" + "".join(map(str, s))
    basis = [{"id": name(s), "degree": len(s)} for s in subsets]
    index = {s: i for i, s in enumerate(subsets)}
    products = []
    for i, s in enumerate(subsets):
        for j, t in enumerate(subsets):
            if j < i or not s or not t or set(s) & set(t):
                continue
            merged = list(s) + list(t)
            inversions = sum(1 for a in range(len(merged)) for b in range(a + 1, len(merged))
                             if merged[a] > merged[b])
            sign = -1 if inversions % 2 else 1
            products.append({"left": name(s), "right": name(t),
                             "result": [term(name(tuple(sorted(merged))), sign)]})
    return {
        "name": "torus_like",
        "basis": basis,
        "unit": "1",
        "products": products,
        "integral": [term("x1234", 1)],
        "canonical_class": [],
    }


def point():
    return {
        "name": "point",
        "basis": [{"id": "1", "degree": 0}],
        "unit": "1",
        "products": [],
        "integral": [term("1", 1)],
        "canonical_class": [],
    }


def main():
    presets = [p2(), p1xp1(), torus_like(), point()]
    texts = {}
    for p in presets:
        text = json.dumps(p, indent=2) + "\n"
        (ROOT / "presets" / f"{p['name']}.json").write_text(text)
        texts[p["name"]] = text
    out = ["// Generated by tools/gen_presets.py; do not edit.",
           "#ifndef HILBERT_PRESETS_HPP", "#define HILBERT_PRESETS_HPP", "",
           "#include <array>", "#include <string_view>", "#include <utility>", "",
           "namespace hilbert::presets {", ""]
    for name, text in texts.items():
        out.append(f'inline constexpr std::string_view k_{name} = R"json({text})json";')
        out.append("")
    names = ", ".join(f'std::pair<std::string_view, std::string_view>{{"{n}", k_{n}}}' for n in texts)
    out.append(f"inline constexpr std::array kAll = {{{names}}};")
    out += ["", "}  // namespace hilbert::presets", "", "#endif  // HILBERT_PRESETS_HPP", ""]
    (ROOT / "include" / "hilbert" / "presets.hpp").write_text("\n".join(out))


if __name__ == "__main__":
    main()
