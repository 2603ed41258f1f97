"""
Render a puzzle to a printable sheet
====================================

"""

import pathlib
import tempfile

# rendering is pure: state in, grayscale pixels out, same bytes every time
from rpmgen import (
    CONFIGURATIONS,
    ConfigName,
    generate_problem,
    png_bytes,
    render_panel,
    render_sheet,
)

problem = generate_problem(CONFIGURATIONS[ConfigName.OUT_IN_CENTER], seed=3)

# a single 160x160 panel
panel = render_panel(problem.context[0])
print("panel:", panel.width, "x", panel.height,
      "min intensity", int(panel.pixels.min()))

# the full sheet: 3x3 matrix with a question mark, candidates below
sheet = render_sheet(problem)
print("sheet:", sheet.width, "x", sheet.height)

out = pathlib.Path(tempfile.mkdtemp()) / "sheet.png"
out.write_bytes(png_bytes(sheet))
print("wrote", out)
