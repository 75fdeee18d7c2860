#!/usr/bin/env python3
"""Convert the Sioux Falls reference project bundled with the aequilibrae
source distribution into TNTP ``_net.tntp`` / ``_trips.tntp`` files.

Usage: convert_aequilibrae_sioux_falls.py <extracted_project_dir> <out_dir>

The project directory is the unpacked ``aequilibrae/reference_files/sioux_falls.zip``
(it contains ``project_database.sqlite`` and ``matrices/demand.omx``).
"""
import os
import sqlite3
import sys

import h5py


def write_net(db_path, out_path):
    con = sqlite3.connect(db_path)
    rows = list(con.execute(
        "select a_node, b_node, capacity_ab, free_flow_time, b, power "
        "from links order by link_id"))
    nodes = con.execute("select count(*) from nodes").fetchone()[0]
    with open(out_path, "w") as f:
        f.write(f"<NUMBER OF ZONES> {nodes}\n")
        f.write(f"<NUMBER OF NODES> {nodes}\n")
        f.write("<FIRST THRU NODE> 1\n")
        f.write(f"<NUMBER OF LINKS> {len(rows)}\n")
        f.write("<END OF METADATA>\n\n\n")
        f.write("~\tinit_node\tterm_node\tcapacity\tlength\tfree_flow_time"
                "\tb\tpower\tspeed\ttoll\tlink_type\t;\n")
        for a, b, cap, fft, bpr_b, power in rows:
            f.write(f"\t{a}\t{b}\t{cap}\t{fft:g}\t{fft:g}\t{bpr_b:g}\t{power:g}"
                    "\t0\t0\t1\t;\n")


def write_trips(omx_path, out_path):
    with h5py.File(omx_path, "r") as f:
        m = f["data/matrix"][:]
        zones = [int(z) for z in f["lookup/taz"][:]]
    with open(out_path, "w") as f:
        f.write(f"<NUMBER OF ZONES> {len(zones)}\n")
        f.write(f"<TOTAL OD FLOW> {m.sum():.1f}\n")
        f.write("<END OF METADATA>\n\n\n")
        for i, o in enumerate(zones):
            f.write(f"Origin \t{o}\n")
            for k, d in enumerate(zones):
                f.write(f"{d:5d} : {m[i, k]:8.1f};")
                if k % 5 == 4:
                    f.write("\n")
            f.write("\n\n")


def main():
    src, out = sys.argv[1], sys.argv[2]
    os.makedirs(out, exist_ok=True)
    write_net(os.path.join(src, "project_database.sqlite"),
              os.path.join(out, "SiouxFalls_net.tntp"))
    write_trips(os.path.join(src, "matrices", "demand.omx"),
                os.path.join(out, "SiouxFalls_trips.tntp"))


if __name__ == "__main__":
    main()
