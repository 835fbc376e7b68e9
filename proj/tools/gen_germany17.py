"""Regenerates data/germany17/{topology,traffic}.json.

Node set and adjacency follow the public 17-node German backbone. Link length
is the great-circle distance times a 1.25 route factor, rounded to 10 km, and
split into equal amplified spans of at most 80 km.
"""
import itertools
import json
import math
import pathlib

NODES = {
    "Berlin": (52.52, 13.40),
    "Bremen": (53.08, 8.80),
    "Dortmund": (51.51, 7.47),
    "Duesseldorf": (51.22, 6.78),
    "Essen": (51.46, 7.01),
    "Frankfurt": (50.11, 8.68),
    "Hamburg": (53.55, 10.00),
    "Hannover": (52.37, 9.73),
    "Karlsruhe": (49.01, 8.40),
    "Koeln": (50.94, 6.96),
    "Leipzig": (51.34, 12.37),
    "Mannheim": (49.49, 8.47),
    "Muenchen": (48.14, 11.58),
    "Norden": (53.60, 7.21),
    "Nuernberg": (49.45, 11.08),
    "Stuttgart": (48.78, 9.18),
    "Ulm": (48.40, 9.99),
}

LINKS = [
    ("Norden", "Dortmund"), ("Norden", "Bremen"), ("Hamburg", "Bremen"),
    ("Hamburg", "Hannover"), ("Hamburg", "Berlin"), ("Hannover", "Bremen"),
    ("Hannover", "Berlin"), ("Hannover", "Dortmund"), ("Hannover", "Leipzig"),
    ("Hannover", "Frankfurt"), ("Berlin", "Leipzig"), ("Dortmund", "Essen"),
    ("Dortmund", "Koeln"), ("Essen", "Duesseldorf"), ("Duesseldorf", "Koeln"),
    ("Koeln", "Frankfurt"), ("Frankfurt", "Leipzig"), ("Frankfurt", "Mannheim"),
    ("Frankfurt", "Nuernberg"), ("Mannheim", "Karlsruhe"), ("Karlsruhe", "Stuttgart"),
    ("Stuttgart", "Nuernberg"), ("Stuttgart", "Ulm"), ("Ulm", "Muenchen"),
    ("Muenchen", "Nuernberg"), ("Leipzig", "Nuernberg"),
]

ROUTE_FACTOR = 1.25
MAX_SPAN_KM = 80.0


def great_circle_km(a, b):
    la1, lo1 = map(math.radians, a)
    la2, lo2 = map(math.radians, b)
    h = math.sin((la2 - la1) / 2) ** 2 + math.cos(la1) * math.cos(la2) * math.sin((lo2 - lo1) / 2) ** 2
    return 2 * 6371.0 * math.asin(math.sqrt(h))


def topology():
    links = []
    for i, (a, b) in enumerate(LINKS, start=1):
        length = round(great_circle_km(NODES[a], NODES[b]) * ROUTE_FACTOR / 10.0) * 10.0
        n = max(1, math.ceil(length / MAX_SPAN_KM))
        span = {
            "length_km": round(length / n, 3),
            "attenuation_db_per_km": 0.2,
            "dispersion_ps_nm_km": 16.7,
            "gamma_per_w_km": 1.3,
            "amp_noise_figure_db": 5.5,
        }
        links.append({"id": f"L{i:02d}", "endpoints": [a, b], "spans": [span] * n})
    return {
        "schema_version": 1,
        "name": "germany17",
        "nodes": [{"id": n} for n in sorted(NODES)],
        "links": links,
    }


def traffic():
    demands = []
    for a, b in itertools.combinations(sorted(NODES), 2):
        # Gravity-like base load: shorter pairs exchange more traffic.
        d = great_circle_km(NODES[a], NODES[b])
        base = 100 if d > 350 else 150
        demands.append({
            "id": f"{a}-{b}",
            "source": a,
            "destination": b,
            "base_rate_gbps": base,
            "jitter": {"max_gbps": 20},
        })
    return {
        "schema_version": 1,
        "periods": 10,
        "growth_factor": 1.25,
        "growth_only": True,
        "demands": demands,
    }


def main():
    out = pathlib.Path(__file__).resolve().parent.parent / "data" / "germany17"
    out.mkdir(parents=True, exist_ok=True)
    for name, doc in (("topology.json", topology()), ("traffic.json", traffic())):
        (out / name).write_text(json.dumps(doc, indent=2) + "\n")


if __name__ == "__main__":
    main()
