#!/usr/bin/env python3
"""Regenerates data/schemes/{ta,ml}.tsv from the consonant and vowel lists below.

Keys are lowercase social-media romanizations in an ITRANS-like style; the
uppercase E/O keys follow ITRANS for long e/o. Every consonant+vowel pair gets
its own entry so the greedy longest-match transliterator never has to combine
signs itself.
"""
import pathlib

TAMIL = {
    "name": "Tamil",
    "virama": "்",
    "vowels": [  # key, independent letter, dependent sign ("" = inherent a)
        ("a", "அ", ""), ("aa", "ஆ", "ா"), ("i", "இ", "ி"), ("ii", "ஈ", "ீ"),
        ("ee", "ஈ", "ீ"), ("u", "உ", "ு"), ("uu", "ஊ", "ூ"), ("oo", "ஊ", "ூ"),
        ("e", "எ", "ெ"), ("E", "ஏ", "ே"), ("ai", "ஐ", "ை"), ("o", "ஒ", "ொ"),
        ("O", "ஓ", "ோ"), ("au", "ஔ", "ௌ"),
    ],
    "consonants": [
        ("k", "க"), ("g", "க"), ("ng", "ங"), ("ch", "ச"), ("c", "ச"),
        ("s", "ச"), ("j", "ஜ"), ("nj", "ஞ"), ("t", "ட"), ("d", "ட"),
        ("N", "ண"), ("th", "த"), ("dh", "த"), ("n", "ந"), ("p", "ப"),
        ("b", "ப"), ("m", "ம"), ("y", "ய"), ("r", "ர"), ("R", "ற"),
        ("l", "ல"), ("L", "ள"), ("zh", "ழ"), ("v", "வ"), ("w", "வ"),
        ("sh", "ஷ"), ("S", "ஸ"), ("h", "ஹ"),
    ],
}

MALAYALAM = {
    "name": "Malayalam",
    "virama": "്",
    "vowels": [
        ("a", "അ", ""), ("aa", "ആ", "ാ"), ("i", "ഇ", "ി"), ("ii", "ഈ", "ീ"),
        ("ee", "ഈ", "ീ"), ("u", "ഉ", "ു"), ("uu", "ഊ", "ൂ"), ("oo", "ഊ", "ൂ"),
        ("e", "എ", "െ"), ("E", "ഏ", "േ"), ("ai", "ഐ", "ൈ"), ("o", "ഒ", "ൊ"),
        ("O", "ഓ", "ോ"), ("au", "ഔ", "ൌ"),
    ],
    "consonants": [
        ("k", "ക"), ("kh", "ഖ"), ("g", "ഗ"), ("gh", "ഘ"), ("ng", "ങ"),
        ("ch", "ച"), ("chh", "ഛ"), ("j", "ജ"), ("jh", "ഝ"), ("nj", "ഞ"),
        ("t", "ട"), ("d", "ഡ"), ("N", "ണ"), ("th", "ത"), ("dh", "ദ"),
        ("n", "ന"), ("p", "പ"), ("ph", "ഫ"), ("f", "ഫ"), ("b", "ബ"),
        ("bh", "ഭ"), ("m", "മ"), ("y", "യ"), ("r", "ര"), ("R", "റ"),
        ("l", "ല"), ("L", "ള"), ("zh", "ഴ"), ("v", "വ"), ("w", "വ"),
        ("sh", "ശ"), ("S", "ഷ"), ("s", "സ"), ("h", "ഹ"),
    ],
}


def build(spec):
    entries = {}
    for key, letter, _ in spec["vowels"]:
        entries[key] = letter
    for ckey, base in spec["consonants"]:
        entries[ckey] = base + spec["virama"]
        for vkey, _, sign in spec["vowels"]:
            entries[ckey + vkey] = base + sign
    return entries


def write(path, spec):
    entries = build(spec)
    lines = [f"# {spec['name']} romanization table, generated by tools/gen_schemes.py",
             "# latin<TAB>native"]
    lines += [f"{k}\t{v}" for k, v in sorted(entries.items())]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


if __name__ == "__main__":
    root = pathlib.Path(__file__).resolve().parent.parent / "data" / "schemes"
    root.mkdir(parents=True, exist_ok=True)
    write(root / "ta.tsv", TAMIL)
    write(root / "ml.tsv", MALAYALAM)
