"""Text format for decompositions of cuboids, plus the grid renderer.

Document layout:

* comment lines start with ``#`` (the serializer records the host and
  any provenance notes there);
* the first non-comment line is the header ``k n``;
* every following line is one chain, elements space-separated in
  ascending rank order.

Elements come in two spellings.  The compact form (only for n <= 10)
is k binary digits followed by a single decimal level digit, e.g.
``110102``.  The general form is comma-separated binary digits, a
semicolon, then a decimal level: ``1,1,0,1,0;12``.  Bit 1 is always the
leftmost digit.  Output is 7-bit text with bare newlines, so identical
inputs serialize to identical bytes.
"""

from __future__ import annotations

from functools import lru_cache

from .chains import SCD, canonical_chain_order, validate_scd
from .posets import GradedPoset, build_cuboid, packet_grid
from .tables import BUILTIN_TABLES


class ParseError(ValueError):
    """Raised for malformed decomposition documents."""


COMPACT_LEVEL_LIMIT = 10  # single level digit; larger n needs the general form


def _parse_compact(token: str, k: int, n: int) -> tuple[int, int]:
    if n > COMPACT_LEVEL_LIMIT:
        raise ParseError(
            f"token {token!r}: compact form is ambiguous for n={n} > "
            f"{COMPACT_LEVEL_LIMIT}; use the general form 'b1,...,bk;level'"
        )
    if len(token) != k + 1:
        raise ParseError(f"token {token!r}: expected {k} bits plus one level digit")
    bits, level = token[:k], token[k:]
    if bits.strip("01") != "":
        raise ParseError(f"token {token!r}: bits must be 0/1")
    if not level.isdigit():
        raise ParseError(f"token {token!r}: level must be a decimal digit")
    c = int(level)
    if c >= n:
        raise ParseError(f"token {token!r}: level {c} outside chain of length {n}")
    return (int(bits, 2) if k else 0, c)


def _parse_general(token: str, k: int, n: int) -> tuple[int, int]:
    head, sep, level = token.partition(";")
    if not sep or not level.isdigit():
        raise ParseError(f"token {token!r}: expected 'b1,...,bk;level'")
    digits = head.split(",") if head else []
    if len(digits) != k or any(d not in ("0", "1") for d in digits):
        raise ParseError(f"token {token!r}: expected {k} binary digits")
    c = int(level)
    if c >= n:
        raise ParseError(f"token {token!r}: level {c} outside chain of length {n}")
    return (int("".join(digits), 2) if k else 0, c)


def parse_scd(text: str, k: int | None = None, n: int | None = None, strict: bool = False) -> SCD:
    """Parse a decomposition document into an SCD over ``build_cuboid(k, n)``.

    If ``k``/``n`` are not supplied the header line is mandatory; if they
    are, a matching header line is skipped when present.  Chains written
    top-down are flipped to the canonical bottom-up order, and any
    ``# note:`` comment lines are recovered as the decomposition's notes
    so that documents survive tool pipelines byte-for-byte.  With
    ``strict`` set, duplicated elements are rejected here rather than
    left for the validator.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    notes = tuple(
        ln[len("# note:"):].strip() for ln in lines if ln.startswith("# note:")
    )
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if k is None or n is None:
        if not lines:
            raise ParseError("empty document")
        parts = lines[0].split()
        # Canonical decimals only: a compact chain line like "000000 000001"
        # must not pass for a header.
        if len(parts) != 2 or not all(p.isdigit() and str(int(p)) == p for p in parts):
            raise ParseError(f"expected header 'k n', got {lines[0]!r}")
        k, n = int(parts[0]), int(parts[1])
        lines = lines[1:]
    elif lines and lines[0] == f"{k} {n}":
        lines = lines[1:]
    if n < 1 or k < 0:
        raise ParseError(f"bad dimensions k={k}, n={n}")

    host = build_cuboid(k, n)
    chains = []
    seen: dict[tuple[int, int], int] = {}
    for idx, line in enumerate(lines):
        elems = []
        for token in line.split():
            el = _parse_general(token, k, n) if ";" in token else _parse_compact(token, k, n)
            elems.append(el)
        if not elems:
            continue
        ranks = [host.rank[e] for e in elems]
        if ranks == sorted(ranks, reverse=True) and len(ranks) > 1:
            elems.reverse()
        if strict:
            for e in elems:
                if e in seen:
                    raise ParseError(f"chain {idx}: element repeats chain {seen[e]}")
                seen[e] = idx
        chains.append(tuple(elems))
    return SCD(host, tuple(chains), notes)


def _format_element(el: tuple[int, int], k: int, compact: bool) -> str:
    bits, level = el
    s = format(bits, f"0{k}b") if k else ""
    if compact:
        return f"{s}{level}"
    return ",".join(s) + f";{level}"


def serialize_scd(scd: SCD) -> str:
    """Render an SCD over a cuboid host as a document (see module doc)."""
    host = scd.host
    if host.chain_factor is None or host.chain_factor[0].hypercube_k is None:
        raise ParseError(f"{host.label} is not a cuboid; only cuboid hosts serialize")
    k = host.chain_factor[0].hypercube_k
    n = host.chain_factor[1]
    compact = n <= COMPACT_LEVEL_LIMIT
    out = [f"# {host.label}", f"# chains: {scd.chain_count}"]
    out += [f"# note: {note}" for note in scd.notes]
    out.append(f"{k} {n}")
    for ch in scd.chains:
        out.append(" ".join(_format_element(e, k, compact) for e in ch))
    return "\n".join(out) + "\n"


@lru_cache(maxsize=None)
def builtin_table(table_id: str) -> SCD:
    """One of the bundled decompositions, by id P53 | P54 | P55.

    Chain order is preserved exactly as shipped (it is meaningful data,
    not a canonical ordering).  The result is validated once per process.
    """
    if table_id not in BUILTIN_TABLES:
        raise ParseError(
            f"unknown table id {table_id!r}; expected one of {sorted(BUILTIN_TABLES)}"
        )
    k, n, raw = BUILTIN_TABLES[table_id]
    scd = parse_scd(raw, k, n, strict=True).with_notes(f"builtin: {table_id}")
    report = validate_scd(scd.host, scd)
    if not report.valid or report.taut_count:
        raise ParseError(f"builtin table {table_id} failed validation: {report.messages}")
    return scd


def render_pictorial(p: GradedPoset, n: int) -> str:
    """ASCII packet grid of ``p x chain(n)``, one row per total rank.

    Rows run top rank down to 0; column x holds the packet sizes of base
    rank x, right-aligned, blank where the packet does not exist.
    """
    grid = packet_grid(p, n)
    width = max(len(str(c)) for c in grid.counts.values())
    rows = []
    for y in range(p.rk + n - 1, -1, -1):
        row = grid.row(y)
        cells = [
            str(row[x]).rjust(width) if x in row else " " * width
            for x in range(p.rk + 1)
        ]
        rows.append(" ".join(cells).rstrip())
    return "\n".join(rows) + "\n"
