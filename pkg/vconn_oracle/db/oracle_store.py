"""
Versioned binary persistence for built oracles.

All integers are little-endian and fixed width; docs/oracle_format.md has
the byte layout. Dictionaries are written in sorted key order so that two
builds from the same input produce identical files.
"""
import logging
import os
import struct
from typing import List, Sequence, Tuple, Union

import numpy as np

from ..core.flow import Cut
from ..core.general_oracle import GeneralOracle
from ..core.kconn_oracle import KConnOracle, SourceRecord
from ..core.laminar import LaminarForest

logger = logging.getLogger(__name__)

MAGIC = b"VCQO"
FORMAT_VERSION = 1
MODE_KCONN = 1
MODE_GENERAL = 2
MODE_NAMES = {MODE_KCONN: "kconn", MODE_GENERAL: "general"}

_HEADER = struct.Struct("<4sHBII")
_U32 = struct.Struct("<I")

Oracle = Union[KConnOracle, GeneralOracle]


class OracleFormatError(ValueError):
    """Raised for files that are not oracles of a supported version."""


class _Writer:
    def __init__(self) -> None:
        self.chunks: List[bytes] = []

    def u32(self, value: int) -> None:
        self.chunks.append(_U32.pack(value))

    def array(self, values: Sequence[int], dtype: str = "<u4") -> None:
        self.chunks.append(np.asarray(values, dtype=dtype).tobytes())

    def counted(self, values: Sequence[int]) -> None:
        self.u32(len(values))
        self.array(values)

    def raw(self, data: bytes) -> None:
        self.chunks.append(data)

    def getvalue(self) -> bytes:
        return b"".join(self.chunks)


class _Reader:
    def __init__(self, data: bytes) -> None:
        self.data = data
        self.offset = 0

    def _take(self, size: int) -> int:
        start = self.offset
        if start + size > len(self.data):
            raise OracleFormatError(f"truncated oracle file at byte {start}")
        self.offset += size
        return start

    def unpack(self, fmt: struct.Struct) -> Tuple:
        return fmt.unpack_from(self.data, self._take(fmt.size))

    def u32(self) -> int:
        return self.unpack(_U32)[0]

    def array(self, count: int, dtype: str = "<u4") -> np.ndarray:
        itemsize = np.dtype(dtype).itemsize
        start = self._take(count * itemsize)
        if count == 0:
            return np.empty(0, dtype=dtype)
        return np.frombuffer(self.data, dtype=dtype, count=count, offset=start)

    def counted(self) -> List[int]:
        return self.array(self.u32()).tolist()

    def done(self) -> None:
        if self.offset != len(self.data):
            raise OracleFormatError(f"{len(self.data) - self.offset} trailing bytes")


def _write_cuts(w: _Writer, cuts: Sequence[Cut]) -> None:
    w.u32(len(cuts))
    for cut in cuts:
        vertices, edges = cut.key
        w.counted(vertices)
        w.u32(len(edges))
        w.array([x for e in edges for x in e])


def _read_cuts(r: _Reader) -> Tuple[Cut, ...]:
    cuts = []
    for _ in range(r.u32()):
        vertices = r.counted()
        flat = r.array(2 * r.u32()).tolist()
        edges = zip(flat[0::2], flat[1::2])
        cuts.append(Cut(vertices=frozenset(vertices), edges=frozenset(edges)))
    return tuple(cuts)


def _write_kconn(w: _Writer, oracle: KConnOracle) -> None:
    w.u32(len(oracle.incident_cut_ids))
    w.array([x for v in sorted(oracle.incident_cut_ids) for x in (v, oracle.incident_cut_ids[v])])

    w.u32(len(oracle.critical_cuts))
    w.array([x for e in sorted(oracle.critical_cuts) for x in (e[0], e[1], oracle.critical_cuts[e])])

    w.u32(len(oracle.forests))
    for forest in oracle.forests:
        w.u32(forest.size)
        w.array(forest.parent, dtype="<i4")
        w.array(forest.dfs_in)
        w.array(forest.dfs_out)
        w.array(forest.psi)
        w.counted(forest.set_ids)

    w.u32(len(oracle.records))
    for s in sorted(oracle.records):
        record = oracle.records[s]
        w.array([s, record.forest, record.node, record.cut_id])
        w.counted(sorted(record.boundary))


def _read_kconn(r: _Reader, k: int, n: int, cuts: Tuple[Cut, ...]) -> KConnOracle:
    flat = r.array(2 * r.u32()).tolist()
    incident = dict(zip(flat[0::2], flat[1::2]))

    flat = r.array(3 * r.u32()).tolist()
    critical = {(flat[i], flat[i + 1]): flat[i + 2] for i in range(0, len(flat), 3)}

    forests = []
    for _ in range(r.u32()):
        size = r.u32()
        parent = tuple(r.array(size, dtype="<i4").tolist())
        dfs_in = tuple(r.array(size).tolist())
        dfs_out = tuple(r.array(size).tolist())
        psi = tuple(r.array(n).tolist())
        set_ids = tuple(r.counted())
        forests.append(LaminarForest(n, parent, psi, dfs_in, dfs_out, set_ids))

    records = {}
    for _ in range(r.u32()):
        s, forest, node, cut_id = r.array(4).tolist()
        records[s] = SourceRecord(forest, node, frozenset(r.counted()), cut_id)

    return KConnOracle(
        k=k,
        n=n,
        incident_cut_ids=incident,
        critical_cuts=critical,
        records=records,
        forests=tuple(forests),
        cut_list=cuts,
    )


def _write_general(w: _Writer, oracle: GeneralOracle) -> None:
    w.raw(np.ascontiguousarray(oracle.kappa, dtype="<u1").tobytes())
    w.raw(np.ascontiguousarray(oracle.cut_ids, dtype="<u4").tobytes())
    w.array([oracle.adjacent_cut_count, oracle.nonadjacent_cut_count, oracle.max_sets_per_source])


def _read_general(r: _Reader, k: int, n: int, cuts: Tuple[Cut, ...]) -> GeneralOracle:
    kappa = r.array(n * n, dtype="<u1").reshape(n, n).astype(np.uint8)
    cut_ids = r.array(n * n, dtype="<u4").reshape(n, n).astype(np.uint32)
    adjacent, nonadjacent, per_source = r.array(3).tolist()
    return GeneralOracle(
        k=k,
        n=n,
        kappa=kappa,
        cut_ids=cut_ids,
        cut_list=cuts,
        adjacent_cut_count=adjacent,
        nonadjacent_cut_count=nonadjacent,
        max_sets_per_source=per_source,
    )


def mode_of(oracle: Oracle) -> int:
    if isinstance(oracle, KConnOracle):
        return MODE_KCONN
    if isinstance(oracle, GeneralOracle):
        return MODE_GENERAL
    raise TypeError(f"not an oracle: {type(oracle).__name__}")


def dumps(oracle: Oracle) -> bytes:
    """Serialize an oracle."""
    mode = mode_of(oracle)
    w = _Writer()
    w.raw(_HEADER.pack(MAGIC, FORMAT_VERSION, mode, oracle.k, oracle.n))
    _write_cuts(w, oracle.cut_list)
    if mode == MODE_KCONN:
        _write_kconn(w, oracle)
    else:
        _write_general(w, oracle)
    return w.getvalue()


def loads(data: bytes) -> Oracle:
    """
    Deserialize an oracle.

    Raises:
        OracleFormatError: Bad magic, unsupported version or mode, truncation
    """
    r = _Reader(data)
    magic, version, mode, k, n = r.unpack(_HEADER)
    if magic != MAGIC:
        raise OracleFormatError(f"bad magic {magic!r}, expected {MAGIC!r}")
    if version != FORMAT_VERSION:
        raise OracleFormatError(f"unsupported oracle version {version} (supported: {FORMAT_VERSION})")
    if mode not in MODE_NAMES:
        raise OracleFormatError(f"unknown oracle mode {mode}")

    cuts = _read_cuts(r)
    oracle = _read_kconn(r, k, n, cuts) if mode == MODE_KCONN else _read_general(r, k, n, cuts)
    r.done()
    return oracle


def save_oracle(oracle: Oracle, path: str) -> int:
    """Write an oracle file; returns the number of bytes written."""
    data = dumps(oracle)
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    with open(path, "wb") as f:
        f.write(data)
    logger.info(f"Oracle ({MODE_NAMES[mode_of(oracle)]}) saved to {path}: {len(data)} bytes")
    return len(data)


def load_oracle(path: str) -> Oracle:
    if not os.path.exists(path):
        raise FileNotFoundError(f"Oracle file not found: {path}")
    with open(path, "rb") as f:
        oracle = loads(f.read())
    logger.debug(f"Loaded {MODE_NAMES[mode_of(oracle)]} oracle from {path}")
    return oracle
