"""
The Fano plane and its incidence graph
======================================

Seven points, seven lines, three points per line: the smallest projective
plane.  Its point-line incidence graph (the Heawood graph) is the object
everything else in this package embeds into the plane.
"""

from heawood_udg import build_heawood_incidence, girth, verify_fano_axioms

inc = build_heawood_incidence()

print("line triples:")
for line, points in sorted(inc.lines.items()):
    print(f"  {line}: {{{', '.join(str(p) for p in sorted(points))}}}")

print(f"\nflags (incident point-line pairs): {len(inc.flags)}")

report = verify_fano_axioms(inc)
print(f"3 points per line:            {report.three_points_per_line}")
print(f"3 lines per point:            {report.three_lines_per_point}")
print(f"unique line per point pair:   {report.unique_line_per_point_pair}")
print(f"unique point per line pair:   {report.unique_point_per_line_pair}")

# girth 6 = shortest cycle length; the rectangle cycle P5-l5-P7-l7-P2-l3
# realizes it and is what the construction chain pins down
print(f"girth of the incidence graph: {girth(inc)}")
