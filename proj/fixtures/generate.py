# Copyright 2026 The tetris-adapt Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the committed FCIDUMP fixtures (RHF/STO-3G via PySCF).

Not used at build or test time. Run from this directory:
    python3 generate.py
"""
import hashlib
import json

import pyscf
from pyscf import fci, gto, scf
from pyscf.tools import fcidump

BOND_LENGTHS = (1.0, 1.5, 2.0, 2.5, 3.0)


def geometry(molecule, d):
    if molecule == "h4":
        return [("H", (0.0, 0.0, i * d)) for i in range(4)]
    if molecule == "h6":
        return [("H", (0.0, 0.0, i * d)) for i in range(6)]
    if molecule == "lih":
        return [("Li", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, d))]
    if molecule == "beh2":
        return [("H", (0.0, 0.0, -d)), ("Be", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, d))]
    raise ValueError(molecule)


def generate(molecule, d):
    atoms = geometry(molecule, d)
    mol = gto.M(atom=atoms, basis="sto-3g", unit="Angstrom", symmetry=False, verbose=0)
    mf = scf.RHF(mol)
    mf.conv_tol = 1e-12
    mf.max_cycle = 500
    e_hf = mf.kernel()
    if not mf.converged:
        raise RuntimeError(f"SCF did not converge for {molecule} at {d}")
    stem = f"{molecule}_{d:.1f}"
    fcidump.from_scf(mf, f"{stem}.fcidump", tol=1e-15)
    e_fci = fci.FCI(mf).kernel()[0]
    with open(f"{stem}.fcidump", "rb") as f:
        digest = hashlib.sha256(f.read()).hexdigest()
    manifest = {
        "molecule": molecule,
        "geometry": [{"element": a, "xyz_angstrom": list(x)} for a, x in atoms],
        "basis": "sto-3g",
        "bond_length_angstrom": d,
        "hf_energy": e_hf,
        "fci_energy": e_fci,
        "generator": f"pyscf {pyscf.__version__}",
        "fcidump_sha256": digest,
    }
    with open(f"{stem}.json", "w") as f:
        json.dump(manifest, f, indent=2)
        f.write("\n")
    print(f"{stem}: HF {e_hf:.10f}  FCI {e_fci:.10f}")


if __name__ == "__main__":
    for molecule in ("h4", "lih", "h6", "beh2"):
        for d in BOND_LENGTHS:
            generate(molecule, d)
