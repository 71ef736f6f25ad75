"""On-disk formats: binary field snapshots, CSV tables, record directories.

Binary field container (little-endian throughout):
    magic   4s   b"QFLD"
    version u32  (currently 1)
    mode    u8   0 = quantum, 1 = optics
    ndim    u8   1 or 2
    hbar    f64
    mass    f64
    param   f64
    per axis: x_min f64, x_max f64, n_points u64
    payload: n_total complex samples as interleaved re/im f64

All CSV floats are printed with 17 significant digits so round-trips are
bit-exact and repeated runs diff clean.
"""

import hashlib
import json
import struct
from pathlib import Path

import numpy as np

from .grids import Grid1D, Grid2D
from .fields import WaveField

_MAGIC = b"QFLD"
_VERSION = 1
_MODES = {"quantum": 0, "optics": 1}
_MODES_INV = {v: k for k, v in _MODES.items()}

FLOAT_FMT = "%.17g"


def fmt(x: float) -> str:
    return FLOAT_FMT % x


def field_to_bytes(field: WaveField) -> bytes:
    grid = field.grid
    header = struct.pack("<4sIBBddd", _MAGIC, _VERSION, _MODES[field.mode],
                         grid.ndim, field.hbar, field.mass, field.param)
    if isinstance(grid, Grid1D):
        axes = struct.pack("<ddQ", grid.x_min, grid.x_max, grid.n_points)
    else:
        axes = struct.pack("<ddQddQ", grid.x_min, grid.x_max, grid.nx,
                           grid.y_min, grid.y_max, grid.ny)
    payload = np.ascontiguousarray(field.values, dtype="<c16").tobytes()
    return header + axes + payload


def field_from_bytes(data: bytes) -> WaveField:
    head_size = struct.calcsize("<4sIBBddd")
    magic, version, mode, ndim, hbar, mass, param = struct.unpack(
        "<4sIBBddd", data[:head_size])
    if magic != _MAGIC:
        raise ValueError("not a qflux field container")
    if version != _VERSION:
        raise ValueError(f"unsupported container version {version}")
    offset = head_size
    if ndim == 1:
        x_min, x_max, n = struct.unpack_from("<ddQ", data, offset)
        offset += struct.calcsize("<ddQ")
        grid = Grid1D(x_min, x_max, int(n))
    elif ndim == 2:
        x_min, x_max, nx, y_min, y_max, ny = struct.unpack_from("<ddQddQ", data, offset)
        offset += struct.calcsize("<ddQddQ")
        grid = Grid2D(x_min, x_max, int(nx), y_min, y_max, int(ny))
    else:
        raise ValueError(f"unsupported ndim {ndim}")
    values = np.frombuffer(data, dtype="<c16", offset=offset).reshape(grid.shape)
    return WaveField(grid, values.astype(np.complex128), param=param,
                     mode=_MODES_INV[mode], hbar=hbar, mass=mass)


def save_field(path, field: WaveField):
    Path(path).write_bytes(field_to_bytes(field))


def load_field(path) -> WaveField:
    return field_from_bytes(Path(path).read_bytes())


def field_to_csv(path, field: WaveField):
    """Inspection CSV: x[,y], re, im."""
    grid = field.grid
    with open(path, "w", newline="") as fh:
        if isinstance(grid, Grid1D):
            fh.write("x,re,im\n")
            for xi, vi in zip(grid.x, field.values):
                fh.write(f"{fmt(xi)},{fmt(vi.real)},{fmt(vi.imag)}\n")
        else:
            fh.write("x,y,re,im\n")
            for ix, xi in enumerate(grid.x):
                for iy, yi in enumerate(grid.y):
                    vi = field.values[ix, iy]
                    fh.write(f"{fmt(xi)},{fmt(yi)},{fmt(vi.real)},{fmt(vi.imag)}\n")


def sha256_of(path) -> str:
    h = hashlib.sha256()
    h.update(Path(path).read_bytes())
    return h.hexdigest()


def save_record(directory, record, potential_spec: dict | None = None):
    """Persist a PropagationRecord as snapshot files plus a manifest."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    checksums = {}
    for i, snap in enumerate(record.snapshots):
        name = f"snapshot_{i:06d}.qfld"
        save_field(directory / name, snap)
        checksums[name] = sha256_of(directory / name)
    grid = record.grid
    if isinstance(grid, Grid1D):
        grid_spec = {"x_min": grid.x_min, "x_max": grid.x_max, "n_points": grid.n_points}
    else:
        grid_spec = {"x_min": grid.x_min, "x_max": grid.x_max, "nx": grid.nx,
                     "y_min": grid.y_min, "y_max": grid.y_max, "ny": grid.ny}
    manifest = {
        "grid": grid_spec,
        "dt": record.dt,
        "t_final": record.t_final,
        "mode": record.snapshots[0].mode,
        "norm_drift": record.norm_drift,
        "potential": potential_spec,
        "snapshots": checksums,
    }
    (directory / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True))


def load_record(directory):
    from .propagator import PropagationRecord

    directory = Path(directory)
    manifest = json.loads((directory / "manifest.json").read_text())
    snapshots = []
    for name, digest in sorted(manifest["snapshots"].items()):
        path = directory / name
        if sha256_of(path) != digest:
            raise ValueError(f"checksum mismatch for {name}")
        snapshots.append(load_field(path))
    return PropagationRecord(snapshots=snapshots, dt=manifest["dt"],
                             t_final=manifest["t_final"],
                             norm_drift=manifest["norm_drift"])


def write_trajectories_csv(path, trajectories):
    """Long-format CSV: label, t, x[, y], vx[, vy], status."""
    two_d = any(t.positions.ndim == 2 for t in trajectories)
    with open(path, "w", newline="") as fh:
        fh.write("label,t,x,y,vx,vy,status\n" if two_d else "label,t,x,vx,status\n")
        for traj in trajectories:
            for i, ti in enumerate(traj.params):
                if two_d:
                    x, y = traj.positions[i]
                    vx, vy = traj.velocities[i]
                    fh.write(f"{traj.label},{fmt(ti)},{fmt(x)},{fmt(y)},"
                             f"{fmt(vx)},{fmt(vy)},{traj.status}\n")
                else:
                    fh.write(f"{traj.label},{fmt(ti)},{fmt(traj.positions[i])},"
                             f"{fmt(traj.velocities[i])},{traj.status}\n")


def write_probabilities_csv(path, times, columns: dict):
    """Wide-format CSV: t, one column per named probability series."""
    names = list(columns)
    with open(path, "w", newline="") as fh:
        fh.write(",".join(["t"] + names) + "\n")
        for i, ti in enumerate(times):
            row = [fmt(ti)] + [fmt(columns[name][i]) for name in names]
            fh.write(",".join(row) + "\n")
