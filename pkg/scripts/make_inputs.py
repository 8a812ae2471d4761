#!/usr/bin/env python3
"""Regenerate the sample input documents under data/."""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

import yaml

from finloop import b_group, discrete, indiscrete
from finloop.group import FiniteGroup
from finloop.io import functor_to_document, group_to_document, groupoid_to_document

ROOT = pathlib.Path(__file__).resolve().parents[1] / "data"


def write(relpath, doc):
    path = ROOT / relpath
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(yaml.safe_dump(doc, sort_keys=False))
    print("wrote", path)


def main():
    write("groups/trivial.yaml", {"name": "1", "table": [[0]]})
    write("groups/z2.yaml", group_to_document(FiniteGroup.cyclic(2)))
    write("groups/z3.yaml", group_to_document(FiniteGroup.cyclic(3)))
    write("groups/z4.yaml", group_to_document(FiniteGroup.cyclic(4)))
    write("groups/z5.yaml", group_to_document(FiniteGroup.cyclic(5)))
    write("groups/s3.yaml",
          {"name": "S3", "perm_generators": ["(1 2)", "(1 2 3)"], "n_points": 3})
    write("groups/a4.yaml",
          {"name": "A4", "perm_generators": ["(1 2 3)", "(2 3 4)"], "n_points": 4})
    write("groups/d4.yaml",
          {"name": "D4", "perm_generators": ["(1 2 3 4)", "(1 3)"], "n_points": 4})
    write("groups/q8.yaml", group_to_document(FiniteGroup.quaternion()))

    for name, grp in [("b_z2", FiniteGroup.cyclic(2)),
                      ("b_z3", FiniteGroup.cyclic(3)),
                      ("b_s3", FiniteGroup.symmetric(3))]:
        write(f"groupoids/{name}.yaml", groupoid_to_document(b_group(grp)))
    write("groupoids/terminal.yaml", groupoid_to_document(discrete(1)))
    write("groupoids/discrete2.yaml", groupoid_to_document(discrete(2)))
    write("groupoids/indiscrete3.yaml", groupoid_to_document(indiscrete(3)))

    write("spaces/point.yaml", {"points": ["p"], "relations": []})
    write("spaces/discrete2.yaml", {"points": [1, 2], "relations": []})
    write("spaces/pseudo_circle.yaml",
          {"points": ["a", "b", "c", "d"],
           "relations": [["a", "c"], ["b", "c"], ["a", "d"], ["b", "d"]]})

    # the inclusion of the rotation subgroup into the symmetries of a triangle
    s3 = FiniteGroup.symmetric(3)
    a3 = FiniteGroup.alternating(3)
    bs3, ba3 = b_group(s3), b_group(a3)
    mor_map = tuple(s3.labels.index(a3.labels[i]) for i in range(3))
    doc = {
        "name": "rotations-into-triangle-symmetries",
        "domain": groupoid_to_document(ba3),
        "codomain": groupoid_to_document(bs3),
        "object_map": {"*": "*"},
        "morphism_map": {str(a3.labels[i]): str(s3.labels[mor_map[i]])
                         for i in range(3)},
    }
    write("functors/a3_into_s3.yaml", doc)


if __name__ == "__main__":
    main()
