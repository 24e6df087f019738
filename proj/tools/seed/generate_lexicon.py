#!/usr/bin/env python3
"""Regenerate the derived seed lexicon files under data/lexicon.

Inputs are the unpacked wheels of tashaphyne, arramooz-pysqlite and pyarabic:

    pip download --no-deps tashaphyne arramooz-pysqlite pyarabic -d wheels
    for w in wheels/*.whl; do python3 -m zipfile -e "$w" src; done
    python3 tools/seed/generate_lexicon.py src data/lexicon

Hand-maintained files (closed words, patterns, affixes, verb lemma map) are
not touched.
"""

import argparse
import collections
import re
import sqlite3
import sys
from pathlib import Path

TRI_ROOTS = 3829
QUAD_ROOTS = 900
THIRD_CLASS = 943

HARAKAT = re.compile("[ً-ْـ]")
HAMZA = str.maketrans("أإؤئآ", "ءءءءء")
ARABIC_WORD = re.compile("^[ء-ي]+$")

# roots the bundled corpora rely on; always kept in the ranked selection
REQUIRED_TRI = """
حوج درج خرج نزل علم كتب شرع عمد بلد خدم نظم بني نشء شغل صون قطع صنع زرع صحح
تجر بنك خلف سوس خصص مثل ءسس قوم حسب ءلي ضبط كرم جهل عقب فرض دخل ورث حرك سرع
عود ءمل ءول قلد سلط حكم جمع دول وقع نهب عطل شهر سقط عصم دمر وضع سبق نتج حرب
ورط عنو وقت حلل ضخم شكل همل عزل سيس قدم كبر ءثر عرب عمل وطن خلو طلب
""".split()
REQUIRED_QUAD = "دهور دحرج ترجم".split()


def strip(s):
    return HARAKAT.sub("", s or "").strip()


def hamza_fold(s):
    return s.translate(HAMZA)


def load_roots(src):
    sys.path.insert(0, str(src))
    from tashaphyne.roots_const import ROOTS  # noqa: E402
    return sorted({hamza_fold(r) for r in ROOTS})


def root_frequency(dic, freq):
    wf = collections.Counter()
    for word, f in freq.execute("select unvocalized, freq from wordfreq"):
        wf[word] += f
    score = collections.Counter()
    for table in ("nouns", "verbs"):
        for word, root in dic.execute(f"select unvocalized, root from {table}"):
            if root:
                score[hamza_fold(strip(root))] += wf.get(word, 0)
    return score


def select_roots(roots, score, arity, limit, required):
    pool = [r for r in roots if len(r) == arity]
    ranked = sorted(pool, key=lambda r: (-score.get(r, 0), r))
    chosen = [r for r in required if r in pool]
    for r in ranked:
        if len(chosen) >= limit:
            break
        if r not in chosen:
            chosen.append(r)
    missing = [r for r in required if r not in pool]
    if missing:
        raise SystemExit(f"required roots missing from source: {missing}")
    return sorted(chosen)


GENERAL = [
    re.compile(p)
    for p in (
        r"^...$",
        r"^.ا..$",
        r"^ت.ا.$",
        r"^ت...$",
        r"^[أا]...$",
        r"^ن...$",
        r"^.ا.$",
        r"^[أا].ا.$",
        r"^....$",
    )
]


def third_class_verbs(dic, freq, tri):
    verb_f = collections.Counter()
    nominal_f = collections.Counter()
    for word, kind, f in freq.execute("select unvocalized, word_type, freq from wordfreq"):
        if kind == "verb":
            verb_f[word] += f
        elif kind.startswith(("noun", "adj")):
            nominal_f[word] += f
    cands = {}
    for word, root in dic.execute("select unvocalized, root from verbs"):
        word = strip(word)
        if not any(p.match(word) for p in GENERAL):
            continue
        if len(hamza_fold(strip(root))) == 3 and hamza_fold(strip(root)) not in tri:
            continue
        if verb_f[word] > nominal_f[word]:
            cands[word] = verb_f[word]
    ranked = sorted(cands, key=lambda w: (-cands[w], w))
    return sorted(ranked[:THIRD_CLASS])


def broken_plurals(dic, freq):
    wf = collections.Counter()
    for word, f in freq.execute("select unvocalized, freq from wordfreq"):
        wf[word] += f
    listed = collections.defaultdict(set)
    claimed = collections.defaultdict(set)
    sound = set()
    lists_plurals = set()
    for word, number, single, bp, fem, masc in dic.execute(
        "select unvocalized, number, single, broken_plural, feminin_plural, masculin_plural from nouns"
    ):
        word = strip(word)
        if number == "مفرد":
            plurals = [strip(p) for p in (bp or "").split(";")]
            plurals = [p for p in plurals if ARABIC_WORD.match(p)]
            for p in plurals:
                listed[p].add(word)
            if plurals:
                lists_plurals.add(word)
            if fem or masc:
                sound.add(word)
        elif number == "جمع تكسير" and ARABIC_WORD.match(strip(single)):
            claimed[word].add(strip(single))
    # singular if it takes a sound plural, or lists plurals without being claimed as one
    singular = sound | (lists_plurals - set(claimed))
    out = {}
    for plural in set(listed) | set(claimed):
        if len(plural) < 3 or plural in singular or not ARABIC_WORD.match(plural):
            continue
        options = listed.get(plural) or claimed.get(plural)
        options = [s for s in options if s != plural and len(s) >= 2]
        if not options:
            continue
        key = plural
        if plural.startswith("ال"):
            # the source cites defective plurals with the article; drop other article forms
            if not plural.endswith("ي"):
                continue
            key = plural[2:]
        out.setdefault(key, sorted(options, key=lambda s: (-wf.get(s, 0), s))[0])
    singulars = set(out.values())
    return {k: v for k, v in sorted(out.items()) if k not in singulars}


def feminine_singulars(dic, freq):
    wf = collections.Counter()
    for word, f in freq.execute("select unvocalized, freq from wordfreq"):
        wf[word] += f
    out = set()
    for (word,) in dic.execute(
        "select unvocalized from nouns where number = 'مفرد' and feminin_plural = 1"
    ):
        word = strip(word)
        if word.endswith("ة") and len(word) >= 3 and wf.get(word, 0) > wf.get(word[:-1], 0):
            out.add(word)
    return sorted(out)


def proper_nouns(src):
    sys.path.insert(0, str(src))
    import pyarabic.propernouns as pn  # noqa: E402
    keep = ("دولة", "عاصِمة", "عاصمة", "قارَّة")
    out = set()
    for text in (pn.TEXT1, pn.TEXT2):
        for line in text.splitlines():
            if "اسم علم" not in line:
                continue
            name, info = line.split("اسم علم", 1)
            name = strip(name)
            if "مكان" not in info or not any(k in info for k in keep) or " " in name or "-" in name:
                continue
            for variant in name.split("/"):
                if ARABIC_WORD.match(variant):
                    out.add(variant)
    return sorted(out)


def write(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for h in header:
            fh.write(f"# {h}\n")
        for r in rows:
            fh.write("\t".join(r) if isinstance(r, tuple) else r)
            fh.write("\n")
    print(f"{path.name}: {len(rows)}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("source", type=Path)
    ap.add_argument("out", type=Path)
    args = ap.parse_args()

    data = args.source / "arramooz" / "data"
    dic = sqlite3.connect(data / "arabicdictionary.sqlite")
    freq = sqlite3.connect(data / "wordfreq.sqlite")

    roots = load_roots(args.source)
    score = root_frequency(dic, freq)
    tri = select_roots(roots, score, 3, TRI_ROOTS, REQUIRED_TRI)
    quad = select_roots(roots, score, 4, QUAD_ROOTS, REQUIRED_QUAD)
    write(args.out / "roots_tri.tsv", ["triliteral roots, hamza written as ء"], tri)
    write(args.out / "roots_quad.tsv", ["quadriliteral roots, hamza written as ء"], quad)

    verbs = third_class_verbs(dic, freq, set(tri))
    write(args.out / "verbs_third_class.tsv",
          ["perfective verbs whose template is shared with nouns"], verbs)

    bp = broken_plurals(dic, freq)
    write(args.out / "broken_plurals.tsv", ["plural\tsingular"], list(bp.items()))

    write(args.out / "feminine_singular.tsv",
          ["singular nouns ending in ة whose sound plural takes ات"],
          feminine_singulars(dic, freq))

    write(args.out / "proper_nouns.tsv", ["countries, capitals and continents"],
          proper_nouns(args.source))


if __name__ == "__main__":
    main()
