"""graph6, sparse6 and plain edge-list files.

graph6 and sparse6 follow nauty's formats.txt bit for bit, so files written
here are readable by nauty/geng tooling and census collections. The edge
list format is ``n m`` on the first line followed by ``m`` lines ``u v``.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Iterator

from .graphcore import Graph

FORMATS = ("graph6", "sparse6", "edgelist")


class FormatError(ValueError):
    pass


def _encode_size(n: int) -> list[int]:
    if n < 0:
        raise FormatError("negative vertex count")
    if n <= 62:
        return [n + 63]
    if n <= 258047:
        return [126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)]
    if n <= 68719476735:
        return [126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)]
    raise FormatError(f"{n} vertices is too many for graph6/sparse6")


def _decode_size(data: bytes) -> tuple[int, int]:
    """Vertex count and the number of header bytes it used."""
    if not data:
        raise FormatError("empty graph string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise FormatError("truncated 8-byte size field")
        n = 0
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
        return n, 8
    if len(data) < 4:
        raise FormatError("truncated 4-byte size field")
    n = 0
    for b in data[1:4]:
        n = (n << 6) | (b - 63)
    return n, 4


def _pack(bits: list[int]) -> list[int]:
    out = []
    for i in range(0, len(bits), 6):
        chunk = bits[i: i + 6]
        chunk += [0] * (6 - len(chunk))
        v = 0
        for b in chunk:
            v = (v << 1) | b
        out.append(v + 63)
    return out


def _unpack(data: bytes) -> Iterator[int]:
    for byte in data:
        v = byte - 63
        if not 0 <= v < 64:
            raise FormatError(f"byte {byte} outside the printable range 63..126")
        for s in range(5, -1, -1):
            yield (v >> s) & 1


def encode_graph6(g: Graph, header: bool = False) -> bytes:
    n = g.n
    adj = [set(a) for a in g.adj]
    bits = [1 if i in adj[j] else 0 for j in range(1, n) for i in range(j)]
    body = bytes(_encode_size(n) + _pack(bits))
    return (b">>graph6<<" if header else b"") + body


def decode_graph6(data: bytes | str, *, connected: bool = True) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    n, used = _decode_size(data)
    need = n * (n - 1) // 2
    nbytes = (need + 5) // 6
    body = data[used:]
    if len(body) != nbytes:
        raise FormatError(f"graph6 body has {len(body)} bytes, expected {nbytes}")
    bits = list(_unpack(body))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    if any(bits[need:]):
        raise FormatError("nonzero graph6 padding bits")
    return Graph.from_edges(n, edges, connected=connected)


def _sparse6_width(n: int) -> int:
    k = 1
    while (1 << k) < n:
        k += 1
    return k


def encode_sparse6(g: Graph, header: bool = False) -> bytes:
    n = g.n
    k = _sparse6_width(n)

    def enc(x: int) -> list[int]:
        return [(x >> s) & 1 for s in range(k - 1, -1, -1)]

    edges = sorted(((u, v) for u, v in g.edges()), key=lambda e: (e[1], e[0]))
    bits: list[int] = []
    cur = 0
    for u, v in edges:
        if v == cur:
            bits.append(0)
            bits += enc(u)
        elif v == cur + 1:
            cur += 1
            bits.append(1)
            bits += enc(u)
        else:
            cur = v
            bits.append(1)
            bits += enc(v)
            bits.append(0)
            bits += enc(u)
    # nauty's rule: a padding run of ones could be misread as one more edge
    # to vertex n-1 when n is a power of two and k < 6
    if k < 6 and n == (1 << k) and (-len(bits)) % 6 >= k and cur < n - 1:
        bits.append(0)
    bits += [1] * ((-len(bits)) % 6)
    body = bytes([ord(":")] + _encode_size(n) + _pack(bits))
    return (b">>sparse6<<" if header else b"") + body


def decode_sparse6(data: bytes | str, *, connected: bool = True) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(b">>sparse6<<"):
        data = data[11:]
    if not data.startswith(b":"):
        raise FormatError("sparse6 data must start with ':'")
    n, used = _decode_size(data[1:])
    k = _sparse6_width(n)
    bits = list(_unpack(data[1 + used:]))
    edges = []
    v = 0
    i = 0
    while i + 1 + k <= len(bits):
        b = bits[i]
        x = 0
        for bit in bits[i + 1: i + 1 + k]:
            x = (x << 1) | bit
        i += 1 + k
        if b:
            v += 1
        if x >= n or v >= n:
            break
        if x > v:
            v = x
        else:
            edges.append((x, v))
    return Graph.from_edges(n, edges, connected=connected)


def encode_edgelist(g: Graph) -> bytes:
    lines = [f"{g.n} {g.edge_count}"] + [f"{u} {v}" for u, v in g.edges()]
    return ("\n".join(lines)).encode("ascii")


def decode_edgelist(data: bytes | str, *, connected: bool = True) -> Graph:
    if isinstance(data, bytes):
        data = data.decode("ascii")
    rows = [ln.split() for ln in data.splitlines() if ln.strip() and not ln.startswith("#")]
    if not rows:
        raise FormatError("empty edge list")
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
        edges = [(int(r[0]), int(r[1])) for r in rows[1:]]
    except (ValueError, IndexError) as exc:
        raise FormatError(f"malformed edge list: {exc}") from exc
    if len(edges) != m:
        raise FormatError(f"header promises {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges, connected=connected)


ENCODERS = {"graph6": encode_graph6, "sparse6": encode_sparse6, "edgelist": encode_edgelist}


def encode(g: Graph, fmt: str) -> bytes:
    try:
        return ENCODERS[fmt](g)
    except KeyError:
        raise FormatError(f"unknown format {fmt!r}; expected one of {FORMATS}") from None


def detect_format(data: bytes) -> str:
    head = data.lstrip()
    if head.startswith(b">>sparse6<<") or head.startswith(b":"):
        return "sparse6"
    if head.startswith(b">>graph6<<"):
        return "graph6"
    first = head.split(b"\n", 1)[0].strip()
    if b" " in first or b"\t" in first:
        return "edgelist"
    return "graph6"


def decode(data: bytes, fmt: str | None = None, *, connected: bool = True) -> Graph:
    fmt = fmt or detect_format(data)
    if fmt == "graph6":
        return decode_graph6(data, connected=connected)
    if fmt == "sparse6":
        return decode_sparse6(data, connected=connected)
    if fmt == "edgelist":
        return decode_edgelist(data, connected=connected)
    raise FormatError(f"unknown format {fmt!r}")


def write_graph(g: Graph, path: str | Path, fmt: str) -> None:
    Path(path).write_bytes(encode(g, fmt) + b"\n")


def read_graph(path: str | Path, fmt: str | None = None, *, connected: bool = True) -> Graph:
    return decode(Path(path).read_bytes(), fmt, connected=connected)


def iter_graph6_lines(lines: Iterable[bytes]) -> Iterator[Graph]:
    """Decode a multi-graph file with one graph6/sparse6 string per line."""
    for line in lines:
        line = line.strip()
        if line:
            yield decode(line)
