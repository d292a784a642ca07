#!/usr/bin/env python3
"""Regenerates core/src/unicode_tables.inc from Python's unicodedata.

Emits canonical decomposition pairs, nonzero combining classes, simple
lowercase mappings, and P*-category intervals. Hangul is handled
algorithmically in unicode.cpp and is excluded here.
"""
import sys
import unicodedata

SBASE, LBASE = 0xAC00, 0x1100
SCOUNT = 11172

def hangul(cp):
    return SBASE <= cp < SBASE + SCOUNT

def main(out_path):
    decomp = []       # (cp, first, second) ; second == 0 for singletons
    ccc = []          # (cp, class)
    lower = []        # (cp, lower_cp)
    for cp in range(0x110000):
        if hangul(cp):
            continue
        ch = chr(cp)
        d = unicodedata.decomposition(ch)
        if d and not d.startswith('<'):
            parts = [int(p, 16) for p in d.split()]
            if len(parts) == 1:
                decomp.append((cp, parts[0], 0))
            elif len(parts) == 2:
                decomp.append((cp, parts[0], parts[1]))
        c = unicodedata.combining(ch)
        if c:
            ccc.append((cp, c))
        lo = ch.lower()
        if len(lo) == 1 and lo != ch:
            lower.append((cp, ord(lo)))

    exclusions = set()
    # Full composition exclusions: singletons, non-starter decompositions,
    # and the explicit exclusion list (derivable: a primary composite is
    # excluded iff recomposition would not survive NFC).
    for cp, a, b in decomp:
        if b == 0:
            exclusions.add(cp)
            continue
        if unicodedata.combining(chr(a)) != 0:
            exclusions.add(cp)
            continue
        if unicodedata.normalize('NFC', chr(a) + chr(b)) != chr(cp):
            exclusions.add(cp)

    comp = sorted(((a, b, cp) for cp, a, b in decomp
                   if b != 0 and cp not in exclusions))

    punct = []        # closed intervals of category P*
    start = None
    prev = None
    for cp in range(0x110000):
        if unicodedata.category(chr(cp)).startswith('P'):
            if start is None:
                start = cp
            prev = cp
        elif start is not None:
            punct.append((start, prev))
            start = None
    if start is not None:
        punct.append((start, prev))

    with open(out_path, 'w') as f:
        w = f.write
        w('// Generated by scripts/gen_unicode_tables.py (Unicode %s). Do not edit.\n'
          % unicodedata.unidata_version)
        w('static const DecompEntry kDecomp[] = {\n')
        for cp, a, b in decomp:
            w('{0x%X,0x%X,0x%X},' % (cp, a, b))
        w('\n};\n')
        w('static const CccEntry kCcc[] = {\n')
        for cp, c in ccc:
            w('{0x%X,%d},' % (cp, c))
        w('\n};\n')
        w('static const CompEntry kComp[] = {\n')
        for a, b, cp in comp:
            w('{0x%X,0x%X,0x%X},' % (a, b, cp))
        w('\n};\n')
        w('static const LowerEntry kLower[] = {\n')
        for cp, lo in lower:
            w('{0x%X,0x%X},' % (cp, lo))
        w('\n};\n')
        w('static const Interval kPunct[] = {\n')
        for a, b in punct:
            w('{0x%X,0x%X},' % (a, b))
        w('\n};\n')

if __name__ == '__main__':
    main(sys.argv[1] if len(sys.argv) > 1 else 'core/src/unicode_tables.inc')
