#!/usr/bin/env python3
"""Straight-line reference for the lbap / core / IC50 / assay recipe.

Shares no code with the C++ pipeline. Molecules are grouped by graph
isomorphism (networkx) rather than by canonical strings, and the random
stream used for the per-domain ID split is rebuilt from the MT19937-64
definition.

Usage: reference_curate.py SOURCE.jsonl OUT_DIR [--seed N]
Writes OUT_DIR/stats.json and OUT_DIR/counts.json.
"""

import argparse
import json
import math
import os
import sys

import networkx as nx
from networkx.algorithms import isomorphism

MASK64 = (1 << 64) - 1

# --- recipe constants -------------------------------------------------------

MEASUREMENT = "IC50"
UNITS = {"nM", "uM"}
RELATIONS = {"=", "~"}
DELTA = {"<": -1, "<=": -1, ">": 1, ">=": 1}
MOLECULES = (50, 3000)
MIN_CONFIDENCE = 9
TARGET_TYPES = {"SINGLE PROTEIN"}
THRESHOLD_LOWER, THRESHOLD_UPPER, THRESHOLD_FIX = 4.0, 6.0, 5.0
TRAIN_OOD, VAL_OOD = 0.6, 0.2
IID_TRAIN, IID_VAL = 0.6, 0.2
EPS = 1e-9
SPLITS = ["train", "iid_val", "iid_test", "ood_val", "ood_test"]


# --- random stream ----------------------------------------------------------

class MT19937_64:
    NN, MM = 312, 156
    MATRIX_A = 0xB5026F5AA96619E9
    UM, LM = 0xFFFFFFFF80000000, 0x7FFFFFFF

    def __init__(self, seed):
        self.mt = [0] * self.NN
        self.mt[0] = seed & MASK64
        for i in range(1, self.NN):
            prev = self.mt[i - 1]
            self.mt[i] = (6364136223846793005 * (prev ^ (prev >> 62)) + i) & MASK64
        self.idx = self.NN

    def _twist(self):
        mt = self.mt
        for i in range(self.NN):
            x = (mt[i] & self.UM) | (mt[(i + 1) % self.NN] & self.LM)
            xa = x >> 1
            if x & 1:
                xa ^= self.MATRIX_A
            mt[i] = mt[(i + self.MM) % self.NN] ^ xa
        self.idx = 0

    def next(self):
        if self.idx >= self.NN:
            self._twist()
        x = self.mt[self.idx]
        self.idx += 1
        x ^= (x >> 29) & 0x5555555555555555
        x ^= (x << 17) & 0x71D67FFFEDA60000
        x ^= (x << 37) & 0xFFF7EEE000000000
        x ^= x >> 43
        return x & MASK64

    def below(self, n):
        threshold = ((1 << 64) - n) % n
        while True:
            r = self.next()
            if r >= threshold:
                return r % n


def fnv1a64(data):
    h = 0xCBF29CE484222325
    for b in data.encode("utf-8"):
        h ^= b
        h = (h * 0x100000001B3) & MASK64
    return h


def derive_seed(seed, key):
    z = ((seed * 0x9E3779B97F4A7C15) & MASK64) ^ fnv1a64(key)
    z = (z + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def shuffle(items, rng):
    for i in range(len(items), 1, -1):
        j = rng.below(i)
        items[i - 1], items[j] = items[j], items[i - 1]


# --- SMILES subset ----------------------------------------------------------

ORGANIC = ["Cl", "Br", "B", "C", "N", "O", "P", "S", "F", "I"]
AROMATIC_ORGANIC = {"b", "c", "n", "o", "p", "s"}
ELEMENTS = {
    "H", "He", "Li", "Be", "B", "C", "N", "O", "F", "Ne", "Na", "Mg", "Al",
    "Si", "P", "S", "Cl", "Ar", "K", "Ca", "Se", "Br", "Kr", "I", "Xe", "As",
    "Te", "Fe", "Zn", "Cu", "Co", "Ni", "Mn", "Cr", "Sn", "Pt", "Hg", "Ag",
    "Au",
}
# element -> (group, period) for the atoms whose valence is checked
PLACEMENT = {
    "B": (3, 2), "C": (4, 2), "N": (5, 2), "O": (6, 2), "F": (7, 2),
    "P": (5, 3), "S": (6, 3), "Cl": (7, 3), "Br": (7, 4), "I": (7, 5),
}
BOND_SYMBOLS = {"-": 1, "=": 2, "#": 3, ":": 4, "/": 1, "\\": 1}


class Illegal(Exception):
    pass


def parse_smiles(text):
    """Returns (atoms, bonds). atoms: dicts; bonds: {(i, j): order}."""
    if not text:
        raise Illegal("empty")
    atoms, bonds = [], {}
    stack, rings = [], {}
    prev, pending, i = None, None, 0

    def connect(a, b, order):
        if a == b or (min(a, b), max(a, b)) in bonds:
            raise Illegal("bad bond")
        if order is None:
            order = 4 if atoms[a]["aromatic"] and atoms[b]["aromatic"] else 1
        bonds[(min(a, b), max(a, b))] = order

    while i < len(text):
        c = text[i]
        if c == "(":
            if prev is None:
                raise Illegal("branch")
            stack.append(prev)
            i += 1
        elif c == ")":
            if not stack or pending is not None:
                raise Illegal("paren")
            prev = stack.pop()
            i += 1
        elif c in BOND_SYMBOLS:
            if prev is None or pending is not None:
                raise Illegal("bond")
            pending = BOND_SYMBOLS[c]
            i += 1
        elif c == ".":
            if prev is None or pending is not None:
                raise Illegal("dot")
            prev = None
            i += 1
        elif c.isdigit() or c == "%":
            if prev is None:
                raise Illegal("ring")
            if c == "%":
                num = text[i + 1:i + 3]
                if len(num) != 2 or not num.isdigit():
                    raise Illegal("ring number")
                i += 3
            else:
                num = c
                i += 1
            if num in rings:
                other, order = rings.pop(num)
                if pending is not None and order is not None and pending != order:
                    raise Illegal("ring bond conflict")
                connect(prev, other, pending if pending is not None else order)
            else:
                rings[num] = (prev, pending)
            pending = None
        else:
            if c == "[":
                end = text.find("]", i)
                if end < 0:
                    raise Illegal("bracket")
                atom = parse_bracket(text[i + 1:end])
                i = end + 1
            else:
                atom = None
                for sym in ORGANIC:
                    if text.startswith(sym, i):
                        atom = {"symbol": sym, "aromatic": False}
                        i += len(sym)
                        break
                if atom is None and c in AROMATIC_ORGANIC:
                    atom = {"symbol": c.upper(), "aromatic": True}
                    i += 1
                if atom is None:
                    raise Illegal("char " + c)
                atom.update(charge=0, isotope=None, hcount=None)
            atoms.append(atom)
            idx = len(atoms) - 1
            if prev is not None:
                connect(prev, idx, pending)
            elif pending is not None:
                raise Illegal("dangling bond")
            pending = None
            prev = idx
    if stack or rings or pending is not None:
        raise Illegal("unclosed")
    return atoms, bonds


def parse_bracket(body):
    i = 0
    iso = ""
    while i < len(body) and body[i].isdigit():
        iso += body[i]
        i += 1
    atom = {"isotope": int(iso) if iso else None, "aromatic": False}
    for sym in ("se", "as", "te"):
        if body.startswith(sym, i):
            atom.update(symbol=sym.capitalize(), aromatic=True)
            i += 2
            break
    else:
        if i < len(body) and body[i] in AROMATIC_ORGANIC:
            atom.update(symbol=body[i].upper(), aromatic=True)
            i += 1
        else:
            sym = body[i:i + 2] if body[i:i + 2] in ELEMENTS else body[i:i + 1]
            if sym not in ELEMENTS:
                raise Illegal("element")
            atom["symbol"] = sym
            i += len(sym)
    if body.startswith("@", i):
        i += 2 if body.startswith("@@", i) else 1
        if body[i:i + 2] in ("TH", "AL", "SP", "TB", "OH"):
            i += 2
            while i < len(body) and body[i].isdigit():
                i += 1
    h = 0
    if i < len(body) and body[i] == "H":
        i += 1
        j = i
        while i < len(body) and body[i].isdigit():
            i += 1
        h = int(body[j:i]) if i > j else 1
    charge = 0
    if i < len(body) and body[i] in "+-":
        sign = 1 if body[i] == "+" else -1
        j = i
        while i < len(body) and body[i] == body[j]:
            i += 1
        if i - j == 1 and i < len(body) and body[i].isdigit():
            k = i
            while i < len(body) and body[i].isdigit():
                i += 1
            charge = sign * int(body[k:i])
        else:
            charge = sign * (i - j)
    if i < len(body) and body[i] == ":":
        i += 1
        while i < len(body) and body[i].isdigit():
            i += 1
    if i != len(body):
        raise Illegal("bracket tail")
    atom.update(charge=charge, hcount=h)
    return atom


def allowed_valences(group, period):
    if group < 0 or group > 8:
        return []
    if group <= 4:
        return [group]
    if group == 8:
        return [0]
    if period == 2:
        return [8 - group]
    if group == 5:
        return [3, 5]
    if group == 6:
        return [2, 4, 6]
    return [1, 3, 5] if period >= 5 else [1]


def bond_totals(atoms, bonds):
    localized = [0] * len(atoms)
    aromatic = [0] * len(atoms)
    for (a, b), order in bonds.items():
        for x in (a, b):
            if order == 4:
                aromatic[x] += 1
            else:
                localized[x] += order
    return localized, aromatic


def valence_ok(atoms, bonds):
    localized, aromatic = bond_totals(atoms, bonds)
    for i, atom in enumerate(atoms):
        place = PLACEMENT.get(atom["symbol"])
        if place is None:
            continue
        allowed = allowed_valences(place[0] - atom["charge"], place[1])
        if not allowed:
            return False
        if localized[i] + aromatic[i] + (atom["hcount"] or 0) > max(allowed):
            return False
    return True


def hydrogens(atoms, bonds):
    localized, aromatic = bond_totals(atoms, bonds)
    out = []
    for i, atom in enumerate(atoms):
        if atom["hcount"] is not None:
            out.append(atom["hcount"])
            continue
        place = PLACEMENT[atom["symbol"]]
        allowed = allowed_valences(place[0], place[1])
        if aromatic[i]:
            s = localized[i] + aromatic[i] + 1
            out.append(allowed[0] - s if s <= allowed[0] else 0)
        else:
            out.append(next((v - localized[i] for v in allowed if v >= localized[i]), 0))
    return out


def molecule_graph(smiles):
    """networkx graph of a legal molecule, or None."""
    try:
        atoms, bonds = parse_smiles(smiles)
    except Illegal:
        return None
    if not valence_ok(atoms, bonds):
        return None
    hs = hydrogens(atoms, bonds)
    g = nx.Graph()
    for i, atom in enumerate(atoms):
        g.add_node(i, label=(atom["symbol"], atom["aromatic"], atom["charge"],
                             atom["isotope"], hs[i]))
    for (a, b), order in bonds.items():
        g.add_edge(a, b, order=order)
    return g


class MoleculeClasses:
    """Assigns one integer per isomorphism class."""

    def __init__(self):
        self.buckets = {}
        self.count = 0

    def classify(self, g):
        inv = (tuple(sorted(d["label"] for _, d in g.nodes(data=True))),
               tuple(sorted(d["order"] for _, _, d in g.edges(data=True))),
               tuple(sorted(dict(g.degree()).values())))
        bucket = self.buckets.setdefault(inv, [])
        for rep, cid in bucket:
            if nx.is_isomorphic(rep, g,
                                node_match=isomorphism.categorical_node_match("label", None),
                                edge_match=isomorphism.categorical_edge_match("order", None)):
                return cid
        bucket.append((g, self.count))
        self.count += 1
        return self.count - 1


# --- pipeline ---------------------------------------------------------------

def read_records(path):
    records, seen = [], set()
    with open(path, "rb") as f:
        for raw in f:
            line = raw.decode("utf-8").rstrip("\r\n")
            if not line.strip():
                continue
            try:
                row = json.loads(line)
            except ValueError:
                continue
            rec = decode(row)
            if rec is not None:
                records.append(rec)
    records.sort(key=lambda r: r["activity_id"])
    out = []
    for r in records:
        if r["activity_id"] in seen:
            continue
        seen.add(r["activity_id"])
        out.append(r)
    return out


def decode(row):
    if not isinstance(row, dict):
        return None
    aid = row.get("activity_id")
    if not isinstance(aid, int) or isinstance(aid, bool):
        return None
    assay = row.get("assay_id")
    if not isinstance(assay, str) or not assay:
        return None
    mtype = row.get("standard_type")
    if not isinstance(mtype, str):
        return None
    value = row.get("standard_value")
    if value is not None:
        if isinstance(value, str):
            try:
                value = float(value)
            except ValueError:
                return None
        elif isinstance(value, bool) or not isinstance(value, (int, float)):
            return None
        if not math.isfinite(value):
            return None
    conf = row.get("confidence_score")
    if conf is not None and (not isinstance(conf, int) or isinstance(conf, bool)):
        return None
    for key in ("smiles", "standard_units", "standard_relation", "target_type"):
        if row.get(key) is not None and not isinstance(row[key], str):
            return None
    return {
        "activity_id": aid, "assay_id": assay, "smiles": row.get("smiles") or None,
        "type": mtype, "value": value, "units": row.get("standard_units"),
        "relation": row.get("standard_relation"), "confidence": conf,
        "target_type": row.get("target_type"),
    }


def curate(path, seed):
    records = read_records(path)
    classes = MoleculeClasses()
    mol_class = {}
    for r in records:
        s = r["smiles"]
        if s is not None and s not in mol_class:
            g = molecule_graph(s)
            mol_class[s] = None if g is None else classes.classify(g)

    # Sample-level screen.
    survivors = []
    for r in records:
        if r["type"] != MEASUREMENT:
            continue
        if r["value"] is None or r["units"] is None or r["relation"] is None or r["smiles"] is None:
            continue
        if r["value"] <= 0 or r["units"] not in UNITS or r["relation"] not in RELATIONS:
            continue
        if mol_class.get(r["smiles"]) is None:
            continue
        survivors.append(r)

    # Assay-level screen over the survivors.
    assays = {}
    for r in survivors:
        a = assays.setdefault(r["assay_id"], {"first": r, "mols": set()})
        if r["activity_id"] < a["first"]["activity_id"]:
            a["first"] = r
        a["mols"].add(mol_class[r["smiles"]])
    kept = set()
    for aid, a in assays.items():
        n = len(a["mols"])
        conf = a["first"]["confidence"]
        ttype = a["first"]["target_type"]
        if not MOLECULES[0] <= n <= MOLECULES[1]:
            continue
        if conf is None or conf < MIN_CONFIDENCE:
            continue
        if ttype not in TARGET_TYPES:
            continue
        kept.add(aid)
    filtered = [r for r in survivors if r["assay_id"] in kept]

    # pValues, then one sample per molecule class.
    groups = {}
    for r in filtered:
        v = r["value"]
        if r["relation"] in DELTA:
            v = v * 10.0 ** DELTA[r["relation"]]
        if r["units"] == "uM":
            v = v * 1000.0
        p = 9.0 - math.log10(v)
        groups.setdefault(mol_class[r["smiles"]], []).append(r | {"pvalue": p})
    samples = []
    for members in groups.values():
        members.sort(key=lambda r: r["activity_id"])
        total = 0.0
        for m in members:
            total += m["pvalue"]
        samples.append({
            "pvalue": total / len(members),
            "first": members[0]["activity_id"],
            "domain": min(m["assay_id"] for m in members),
        })
    if not samples:
        raise SystemExit("no samples survive")

    ps = sorted(s["pvalue"] for s in samples)
    mid = len(ps) // 2
    median = ps[mid] if len(ps) % 2 else (ps[mid - 1] + ps[mid]) / 2.0
    threshold = median if THRESHOLD_LOWER <= median <= THRESHOLD_UPPER else THRESHOLD_FIX
    for s in samples:
        s["label"] = 1 if s["pvalue"] >= threshold else 0

    # Domains by capacity, largest first.
    domains = {}
    for s in samples:
        domains.setdefault(s["domain"], []).append(s)
    order = sorted(domains, key=lambda k: (-len(domains[k]), k))
    total = len(samples)
    splits = {name: [] for name in SPLITS}
    c = 0
    for key in order:
        members = sorted(domains[key], key=lambda s: s["first"])
        if c < TRAIN_OOD * total - EPS:
            n = len(members)
            if n < 3:
                splits["train"] += members
            else:
                n_val = math.floor(IID_VAL * n + EPS)
                n_test = math.floor((1.0 - IID_TRAIN - IID_VAL) * n + EPS)
                shuffle(members, MT19937_64(derive_seed(seed, key)))
                splits["iid_val"] += members[:n_val]
                splits["iid_test"] += members[n_val:n_val + n_test]
                splits["train"] += members[n_val + n_test:]
        elif c < (TRAIN_OOD + VAL_OOD) * total - EPS:
            splits["ood_val"] += members
        else:
            splits["ood_test"] += members
        c += len(members)
    return threshold, splits


def stats(name, threshold, splits):
    out = {"dataset_name": name, "threshold": threshold,
           "total_domains": len({s["domain"] for v in splits.values() for s in v}),
           "total_samples": sum(len(v) for v in splits.values()), "splits": {}}
    for split in SPLITS:
        members = splits[split]
        pos = sum(s["label"] for s in members)
        out["splits"][split] = {
            "domain_count": len({s["domain"] for s in members}),
            "sample_count": len(members),
            "positive_count": pos,
            "negative_count": len(members) - pos,
            "positive_ratio": pos / len(members) if members else 0.0,
        }
    return out


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("source")
    parser.add_argument("out_dir")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    check = MT19937_64(5489)
    for _ in range(9999):
        check.next()
    assert check.next() == 9981545732273789042, "MT19937-64 self-check failed"

    threshold, splits = curate(args.source, args.seed)
    os.makedirs(args.out_dir, exist_ok=True)
    with open(os.path.join(args.out_dir, "stats.json"), "w") as f:
        json.dump(stats("lbap-core-ic50-assay", threshold, splits), f, indent=2)
        f.write("\n")
    with open(os.path.join(args.out_dir, "counts.json"), "w") as f:
        json.dump({k: len(v) for k, v in splits.items()}, f, indent=2)
        f.write("\n")
    # Membership by the first activity id of each merged sample.
    with open(os.path.join(args.out_dir, "members.json"), "w") as f:
        rows = []
        for k, v in splits.items():
            pairs = sorted([s["first"], s["label"]] for s in v)
            rows.append("  %s: %s" % (json.dumps(k), json.dumps(pairs)))
        f.write("{\n" + ",\n".join(rows) + "\n}\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
