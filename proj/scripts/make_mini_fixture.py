#!/usr/bin/env python3
"""Regenerates the bundled synthetic mini dataset under data/mini/.

Everything is derived from a fixed seed so the checked-in files are
reproducible byte for byte. The dataset is small on purpose: it exists to
exercise the full pipeline (ingest, topic training, pivot training,
judging, evaluation) quickly, not to approximate web-scale corpora.
"""
import csv
import json
import random
from pathlib import Path

SEED = 20260809
OUT = Path(__file__).resolve().parent.parent / "data" / "mini"

OCCUPATIONS = {
    "Q900": "soccer player",
    "Q901": "monk",
    "Q902": "singer",
    "Q903": "politician",
}

PROPERTIES = [
    ("P10", "member of sports team", "sports team the subject plays or played for", False),
    ("P11", "position played on team", "position or speciality of the player on a team", False),
    ("P12", "goals scored", "goals or points scored in a match or an event", False),
    ("P13", "religious order", "order of monks or nuns to which the subject belongs", False),
    ("P14", "residence", "place where the subject resides or has resided", False),
    ("P15", "languages spoken", "language a person speaks or writes", False),
    ("P16", "political party", "political party the subject is a member of", False),
    ("P17", "spouse", "the subject has the object as their spouse", False),
    ("P18", "height", "standing height of the subject", False),
    ("P19", "record label", "music label the recording is released on", False),
    ("P20", "military rank", "military rank achieved or used by the subject", False),
    ("P21", "catalog code", "identifier of the subject in an external catalog", True),
]

# property assignment probabilities per occupation
PROFILE = {
    "Q900": {"P10": 0.95, "P11": 0.90, "P12": 0.70, "P17": 0.30, "P18": 0.60, "P21": 0.50},
    "Q901": {"P13": 0.95, "P14": 0.70, "P15": 0.50, "P21": 0.30},
    "Q902": {"P19": 0.90, "P15": 0.60, "P17": 0.40, "P18": 0.30, "P21": 0.60},
    "Q903": {"P16": 0.95, "P14": 0.60, "P15": 0.40, "P17": 0.50, "P20": 0.20, "P21": 0.40},
}
NOISE = 0.02  # chance of any off-profile property

WORDPOOLS = {
    "Q900": ("football soccer played team season league goals club striker match "
             "defender cup championship scored tournament transfer coach stadium "
             "midfielder debut squad penalty kick winger caps friendly").split(),
    "Q901": ("monastery monk prayer order church priest religious faith abbey "
             "brother vows chapel scripture devotion cloister pilgrimage liturgy "
             "monastic silence contemplation rule habit vespers novice").split(),
    "Q902": ("album song music singer concert recorded band tour vocals single "
             "chart studio release melody label stage performance acoustic lyrics "
             "record duet festival audience harmony producer").split(),
    "Q903": ("election party parliament minister law government campaign votes "
             "policy senate coalition cabinet reform debate legislation mayor "
             "council opposition ballot constituency deputy speech mandate").split(),
}
FILLER = ("born career life year known work early later family moved studied "
          "began received first second national international award honors "
          "period active retired history public").split()

FIRST = ("Milan Anders Bruno Carla Dora Edgar Fanny Goran Hilda Ivo Jana Karel "
         "Lena Marek Nina Otto Petra Quint Rosa Stefan Tana Ugo Vera Wim Xenia "
         "Yann Zora Alba Boris Clara Dino Elsa Franz Greta Hugo Irma Janek Klara "
         "Lars Mira").split()
LAST = ("Abasov Bergson Cervenka Dorn Eklund Farkas Gering Horak Ilic Jansen "
        "Kovacs Lindqvist Moravec Novak Olsen Petrov Quist Ruzicka Svoboda "
        "Tamm Urban Vacek Weiss Ybarra Zeman Antal Bosko Cizek Dudek Erben").split()


def main():
    rng = random.Random(SEED)
    OUT.mkdir(parents=True, exist_ok=True)

    # ---- properties -------------------------------------------------------
    with open(OUT / "properties.jsonl", "w") as f:
        for pid, label, desc, is_id in PROPERTIES:
            f.write(json.dumps({"id": pid, "label": label, "description": desc,
                                "is_identifier": is_id}, sort_keys=True) + "\n")

    # ---- entities + articles ---------------------------------------------
    counts = [("Q900", 80), ("Q901", 60), ("Q902", 50), ("Q903", 50)]
    names = set()
    entities = []
    articles = []
    qnum = 1
    for occ, n in counts:
        for _ in range(n):
            while True:
                label = f"{rng.choice(FIRST)} {rng.choice(LAST)}"
                if label not in names:
                    names.add(label)
                    break
            eid = f"Q{qnum}"
            qnum += 1
            props = set()
            for pid, prob in PROFILE[occ].items():
                if rng.random() < prob:
                    props.add(pid)
            for pid, _, _, _ in PROPERTIES:
                if pid not in PROFILE[occ] and rng.random() < NOISE:
                    props.add(pid)
            if not props:
                props.add(next(iter(PROFILE[occ])))
            has_article = rng.random() > 0.05  # a few entities lack articles
            doc_id = f"D{eid[1:]}" if has_article else None
            desc = f"{OCCUPATIONS[occ]}"
            entities.append({
                "id": eid, "label": label, "description": desc,
                "occupations": [occ], "properties": sorted(props),
                **({"article": doc_id} if doc_id else {}),
            })
            if has_article:
                pool = WORDPOOLS[occ]
                length = rng.randint(60, 120)
                words = [label.split()[0], "was", "a", OCCUPATIONS[occ].split()[0]]
                for _ in range(length):
                    src = pool if rng.random() < 0.7 else FILLER
                    words.append(rng.choice(src))
                articles.append({"doc_id": doc_id, "text": " ".join(words)})

    with open(OUT / "entities.jsonl", "w") as f:
        for e in entities:
            f.write(json.dumps(e, sort_keys=True) + "\n")
    with open(OUT / "corpus.jsonl", "w") as f:
        for a in articles:
            f.write(json.dumps(a, sort_keys=True) + "\n")

    # ---- gold records over the mini store ---------------------------------
    plabel = {pid: label for pid, label, _, _ in PROPERTIES}
    interesting = {  # which property annotators lean to, per occupation
        "Q900": ["P10", "P11", "P12"],
        "Q901": ["P13", "P14"],
        "Q902": ["P19", "P15"],
        "Q903": ["P16", "P14"],
    }
    with_article = [e for e in entities if "article" in e]
    rows = []
    for e in rng.sample(with_article, 30):
        occ = e["occupations"][0]
        pa = rng.choice(interesting[occ])
        others = [p for p, _, _, is_id in PROPERTIES if p != pa and not is_id]
        pb = rng.choice(others)
        lean = rng.choice([6, 7, 7, 8, 8, 9, 10])
        votes_a, votes_b = lean, 10 - lean
        if rng.random() < 0.3:
            votes_a, votes_b = votes_b, votes_a
        rows.append([e["label"], e["description"], plabel[pa], plabel[pb],
                     votes_a, votes_b])
    with open(OUT / "gold.csv", "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["entity_label", "entity_description", "prop_a", "prop_b",
                    "votes_a", "votes_b"])
        w.writerows(rows)

    # ---- search count fixture: full entity x property cross product -------
    def fnv1a(s):
        h = 0xCBF29CE484222325
        for byte in s.encode():
            h = ((h ^ byte) * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
        return h

    with open(OUT / "search_counts.jsonl", "w") as f:
        for e in entities:
            for pid, label, _, _ in PROPERTIES:
                q = f"{e['label']} {label}"
                f.write(json.dumps({"query": q, "count": fnv1a(q) % 5_000_000},
                                   sort_keys=True) + "\n")

    # ---- pivot pair list for train-pivot ----------------------------------
    with open(OUT / "pivot_pairs.txt", "w") as f:
        f.write("P11 P13\nP10 P16\nP12 P19\n")

    print(f"entities={len(entities)} articles={len(articles)} gold={len(rows)}")


if __name__ == "__main__":
    main()
