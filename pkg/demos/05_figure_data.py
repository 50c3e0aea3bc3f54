# coding: utf-8

# # Capacity landscapes as CSV
#
# Two parameter grids: qutrit amplitude damping over (gamma0, gamma1), and
# the qubit extreme family over its two angles. Values are in qubits. Point
# any plotting tool at the CSV files.
#
# usage: python 05_figure_data.py [output_dir]

import sys
from pathlib import Path

import numpy as np

from qcapacity.cli import main

out = Path(sys.argv[1] if len(sys.argv) > 1 else "figure_data")
out.mkdir(parents=True, exist_ok=True)

main(["sweep", "ad_qutrit", "--grid", "101", "--out", str(out / "ad_qutrit.csv")])
main(["sweep", "qubit_extreme", "--grid", "50", "--out", str(out / "qubit_extreme.csv")])


# The qutrit landscape changes sign: lightly damped corners are positive and
# the heavily damped ones are negative.

data = np.loadtxt(out / "ad_qutrit.csv", delimiter=",", skiprows=1)
grid = data[:, 2].reshape(101, 101)
print("I range:", grid.min(), grid.max())
diag = grid.diagonal()
k = int(np.argmax(np.sign(diag[:-1]) != np.sign(diag[1:])))
print("sign change on the diagonal between gamma =", data[k * 102, 0], "and", data[(k + 1) * 102, 0])
