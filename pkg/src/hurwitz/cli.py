"""Command-line driver: spec file parsing, command dispatch, the orbit
cache, and deterministic JSON/TSV/DOT reports."""

import argparse
import hashlib
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .groups import ConsistencyError, BudgetExceeded
from .nielsen import (NielsenSpec, NielsenTuple, enumerate_tuples,
                      cover_genus, hm_detect, di_detect, DEFAULT_BUDGET)
from .braid import all_orbits, BraidOrbit, component_lattice
from .reduced import (reduce_orbit, gamma_actions, cusps, reduced_genus,
                      sh_incidence, moduli_checks, wohlfahrt)
from .lift import (orbit_lift_invariant, obstructed, tower_lift,
                   component_moduli_degree, normalizer_action_on_lift,
                   bcl_data)

COMMANDS = ("enumerate", "orbits", "cusps", "genus", "shmatrix", "lift",
            "tower", "report")

EXIT_OK, EXIT_CONFIG, EXIT_BUDGET, EXIT_INTERNAL = 0, 2, 3, 4


def _to_jsonable(x):
    if isinstance(x, tuple):
        return [_to_jsonable(v) for v in x]
    if isinstance(x, (list, set, frozenset)):
        return [_to_jsonable(v) for v in sorted(x)] if isinstance(
            x, (set, frozenset)) else [_to_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _to_jsonable(v) for k, v in x.items()}
    return x


def _to_tuple(x):
    if isinstance(x, list):
        return tuple(_to_tuple(v) for v in x)
    return x


def spec_hash(spec):
    blob = json.dumps(spec.to_json(), sort_keys=True,
                      separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


# ---------------------------------------------------------------------
# orbit cache

def _cache_path(cache_dir, spec):
    return os.path.join(cache_dir, "orbits-%s.json" % spec_hash(spec)[:24])


def load_cached_orbits(cache_dir, spec):
    path = _cache_path(cache_dir, spec)
    if not os.path.exists(path):
        return None
    with open(path) as fh:
        data = json.load(fh)
    if data.get("spec_hash") != spec_hash(spec):
        return None
    orbits = []
    for members in data["orbits"]:
        tuples = [NielsenTuple(_to_tuple(l), _to_tuple(e))
                  for l, e in members]
        orbits.append(BraidOrbit(spec, tuples))
    return orbits


def store_cached_orbits(cache_dir, spec, orbits):
    os.makedirs(cache_dir, exist_ok=True)
    data = {"spec_hash": spec_hash(spec),
            "orbits": [[[_to_jsonable(t.labels), _to_jsonable(t.entries)]
                        for t in sorted(o.members)] for o in orbits]}
    with open(_cache_path(cache_dir, spec), "w") as fh:
        json.dump(data, fh, sort_keys=True, separators=(",", ":"))


def get_orbits(spec, budget, cache_dir):
    if cache_dir:
        cached = load_cached_orbits(cache_dir, spec)
        if cached is not None:
            return cached, True
    orbits = all_orbits(spec, budget)
    if cache_dir:
        store_cached_orbits(cache_dir, spec, orbits)
    return orbits, False


# ---------------------------------------------------------------------
# per-command report builders

def _pmap(fn, items, jobs):
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def cmd_enumerate(spec, budget, orbits):
    forms = sorted(set().union(*[o.members for o in orbits])) if orbits \
        else enumerate_tuples(spec, budget)
    classes = spec.group.classes()
    return {"count": len(forms),
            "class_sizes": {lab: len(classes[lab].members)
                            for lab in spec.labels}}


def cmd_orbits(spec, budget, orbits, jobs=1):
    out = {"orbits": [{"size": o.size,
                       "seed": [_to_jsonable(o.seed.labels),
                                _to_jsonable(o.seed.entries)]}
                      for o in orbits]}
    lat = component_lattice(spec, budget)
    out["lattice"] = {
        "inner_sizes": [o.size for o in lat.inner_orbits],
        "absolute_sizes": [o.size for o in lat.abs_orbits],
        "covering": {str(j): i for j, i in sorted(lat.covering.items())},
        "v": {str(i): lat.v_data[i]["v"] for i in lat.v_data},
    }
    return out


def _cusp_rows(spec, orbits, jobs):
    def one(o):
        rc = reduce_orbit(o)
        cl = cusps(rc)
        return {"orbit_size": o.size, "degree": rc.degree,
                "cusps": [{"width": c.width, "u": c.u, "v": c.v, "f": c.f,
                           "label": c.label} for c in cl]}
    return _pmap(one, orbits, jobs)


def cmd_cusps(spec, budget, orbits, jobs=1):
    return {"components": _cusp_rows(spec, orbits, jobs)}


def cmd_genus(spec, budget, orbits, jobs=1):
    def one(o):
        rc = reduce_orbit(o)
        row = {"orbit_size": o.size, "degree": rc.degree,
               "reduced_genus": reduced_genus(rc)}
        return row
    rows = _pmap(one, orbits, jobs)
    out = {"components": rows}
    if spec.T is not None:
        out["cover_genus"] = cover_genus(spec)
    return out


def cmd_shmatrix(spec, budget, orbits, jobs=1):
    def one(o):
        rc = reduce_orbit(o)
        cl = cusps(rc)
        mat, labels = sh_incidence(rc, cl)
        return {"orbit_size": o.size, "labels": labels,
                "matrix": [[int(v) for v in row] for row in mat]}
    return {"components": _pmap(one, orbits, jobs)}


def cmd_lift(spec, budget, orbits, jobs=1):
    inner = spec.as_inner()

    def one(o):
        val = orbit_lift_invariant(inner, o)
        return {"size": o.size, "lift": val,
                "obstructed": obstructed(inner, o),
                "hm": any(hm_detect(inner, t) for t in o.members),
                "di": any(di_detect(inner, t) for t in o.members),
                "moduli_degree": component_moduli_degree(inner, o)}
    return {"orbits": _pmap(one, orbits, jobs)}


def cmd_tower(spec, budget, orbits, jobs=1):
    inner = spec.as_inner()
    iorbs = orbits if spec.equivalence == "inner" \
        else all_orbits(inner, budget)

    def one(o):
        above = tower_lift(inner, o, budget)
        return {"size": o.size, "level_up_orbits": [x.size for x in above]}
    return {"orbits": _pmap(one, iorbs, jobs)}


def cmd_report(spec, budget, orbits, jobs=1):
    rep = {"spec": spec.to_json()}
    rep["enumerate"] = cmd_enumerate(spec, budget, orbits)
    rep["orbits"] = cmd_orbits(spec, budget, orbits, jobs)
    if spec.r == 4:
        rep["cusps"] = cmd_cusps(spec, budget, orbits, jobs)
        rep["genus"] = cmd_genus(spec, budget, orbits, jobs)
        rep["shmatrix"] = cmd_shmatrix(spec, budget, orbits, jobs)
        components = []
        inner = spec.as_inner()
        for o in orbits:
            rc = reduce_orbit(o)
            row = {"degree": rc.degree, "genus": reduced_genus(rc)}
            try:
                row["lift"] = orbit_lift_invariant(inner, o)
            except ValueError:
                pass
            components.append(row)
        rep["components"] = components
        wrows = []
        for o in orbits:
            rc = reduce_orbit(o)
            cl = cusps(rc)
            wrows.append(wohlfahrt(rc, cl))
        rep["wohlfahrt"] = wrows
        rep["moduli"] = [moduli_checks(spec, reduce_orbit(o))
                        for o in orbits]
    try:
        rep["lift"] = cmd_lift(spec, budget, orbits, jobs)
    except ValueError:
        pass
    b = bcl_data(spec)
    rep["bcl"] = {"N_C": b.N_C, "M_inn": b.M_inn, "M_abs": b.M_abs,
                  "rational_union": b.rational_union}
    return rep


BUILDERS = {"enumerate": lambda s, b, o, j: cmd_enumerate(s, b, o),
            "orbits": cmd_orbits, "cusps": cmd_cusps, "genus": cmd_genus,
            "shmatrix": cmd_shmatrix, "lift": cmd_lift, "tower": cmd_tower,
            "report": cmd_report}


# ---------------------------------------------------------------------
# emission

def to_json_bytes(report):
    return (json.dumps(_to_jsonable(report), sort_keys=True, indent=1,
                       separators=(",", ": ")) + "\n").encode()


def to_tsv(report):
    """Flatten leaf rows of the canonical JSON into label<TAB>value lines."""
    lines = []

    def walk(prefix, x):
        if isinstance(x, dict):
            for k in sorted(x):
                walk(prefix + (str(k),), x[k])
        elif isinstance(x, list):
            for i, v in enumerate(x):
                walk(prefix + (str(i),), v)
        else:
            lines.append("%s\t%s" % (".".join(prefix), x))

    walk((), _to_jsonable(report))
    return "\n".join(lines) + "\n"


def to_dot(report):
    """Component lattice digraph (inner orbits -> absolute orbits)."""
    lines = ["digraph components {"]
    lat = report.get("orbits", {}).get("lattice") if isinstance(
        report.get("orbits"), dict) else report.get("lattice")
    if lat:
        for i, sz in enumerate(lat["absolute_sizes"]):
            lines.append('  abs%d [label="abs %d (size %d)"];' % (i, i, sz))
        for j, sz in enumerate(lat["inner_sizes"]):
            lines.append('  inn%d [label="inner %d (size %d)"];' % (j, j, sz))
            lines.append("  inn%d -> abs%s;" % (j, lat["covering"][str(j)]))
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit(report, fmt, out_dir, cmd):
    if fmt == "json":
        payload = to_json_bytes(report)
    elif fmt == "tsv":
        payload = to_tsv(report).encode()
    elif fmt == "dot":
        payload = to_dot(report).encode()
    elif fmt == "text":
        payload = to_tsv(report).encode()
    else:
        raise ValueError("unknown format %r" % fmt)
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
        path = os.path.join(out_dir, "%s.%s" % (cmd, fmt))
        with open(path, "wb") as fh:
            fh.write(payload)
        return path
    sys.stdout.write(payload.decode())
    return None


# ---------------------------------------------------------------------
# entry point

def build_parser():
    p = argparse.ArgumentParser(
        prog="hurwitz",
        description="Braid orbits, cusps, and lift invariants of Nielsen "
                    "classes.")
    p.add_argument("--spec", required=True, help="Nielsen spec JSON file")
    p.add_argument("--cmd", default="report", choices=COMMANDS)
    p.add_argument("--out", default=None, help="output directory")
    p.add_argument("--format", default="json",
                   choices=("json", "tsv", "dot", "text"))
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--budget", type=int,
                   default=int(os.environ.get("HURWITZ_BUDGET",
                                              DEFAULT_BUDGET)))
    p.add_argument("--cache", default=os.environ.get("HURWITZ_CACHE"))
    return p


def run(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_CONFIG if e.code not in (0, None) else EXIT_OK
    try:
        with open(args.spec) as fh:
            spec = NielsenSpec.from_json(json.load(fh))
        if args.budget <= 0 or args.jobs <= 0:
            raise ValueError("budget and jobs must be positive")
    except (OSError, ValueError, KeyError, TypeError,
            json.JSONDecodeError) as e:
        print("config error: %s" % e, file=sys.stderr)
        return EXIT_CONFIG
    try:
        orbits, _hit = get_orbits(spec, args.budget, args.cache)
        report = BUILDERS[args.cmd](spec, args.budget, orbits, args.jobs)
        emit(report, args.format, args.out, args.cmd)
    except BudgetExceeded as e:
        print("budget exceeded: %s" % e, file=sys.stderr)
        return EXIT_BUDGET
    except ConsistencyError as e:
        print("internal inconsistency: %s" % e, file=sys.stderr)
        return EXIT_INTERNAL
    except ValueError as e:
        print("config error: %s" % e, file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
