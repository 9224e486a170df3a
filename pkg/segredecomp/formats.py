"""
Line-oriented text formats: product map tables, semilinear maps,
decomposition certificates and the answer files of generated instances.

Blank lines and lines starting with ``#`` are ignored everywhere.
"""

from typing import List, Optional, Sequence, Tuple

from .decomp import DecompositionCertificate
from .errors import FormatError, SegreDecompError
from .gf import Field, field_new
from .linmap import ProductMapTable, SemilinearMap
from .product import ProductPoint
from .projspace import ProjPoint, Subspace

UNDEF = 'UNDEF'

_Lines = List[Tuple[int, str]]


def _lines(text: str) -> _Lines:
    return [
        (i, line.strip())
        for i, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.strip().startswith('#')
    ]


class _Reader:
    def __init__(self, text: str):
        self._lines = _lines(text)
        self._pos = 0

    @property
    def lineno(self) -> Optional[int]:
        if self._pos < len(self._lines):
            return self._lines[self._pos][0]
        return self._lines[-1][0] if self._lines else None

    def done(self) -> bool:
        return self._pos >= len(self._lines)

    def peek(self) -> Optional[str]:
        return None if self.done() else self._lines[self._pos][1]

    def next(self, what: str) -> Tuple[int, str]:
        if self.done():
            raise FormatError(f'Unexpected end of file, expected {what}', self.lineno)
        item = self._lines[self._pos]
        self._pos += 1
        return item

    def keyword(self, keyword: str, count: Optional[int] = None) -> Tuple[int, List[str]]:
        lineno, line = self.next(f'"{keyword}"')
        tokens = line.split()
        if tokens[0] != keyword:
            raise FormatError(f'Expected "{keyword}", got "{tokens[0]}"', lineno)
        if count is not None and len(tokens) != count + 1:
            raise FormatError(f'"{keyword}" takes {count} values', lineno)
        return lineno, tokens[1:]


def _ints(tokens: Sequence[str], lineno: int) -> List[int]:
    try:
        return [int(tok) for tok in tokens]
    except ValueError:
        raise FormatError(f'Expected integers, got {" ".join(tokens)}', lineno)


def _point(field: Field, text: str, d: int, lineno: int) -> ProjPoint:
    try:
        point = ProjPoint.parse(text)
    except ValueError as e:
        raise FormatError(str(e), lineno)

    if point.dimension != d:
        raise FormatError(f'{point} is not a point of PG({d})', lineno)
    if any(c >= field.q for c in point.coords):
        raise FormatError(f'{point} has coordinates outside {field}', lineno)
    if next((c for c in point.coords if c), 0) != 1:
        raise FormatError(f'{point} is not normalized', lineno)
    return point


def _field(reader: _Reader) -> Field:
    lineno, tokens = reader.keyword('field', 2)
    try:
        return field_new(*_ints(tokens, lineno))
    except SegreDecompError as e:
        raise FormatError(str(e), lineno)


def dump_table(t: ProductMapTable) -> str:
    lines = [f'field {t.field.p} {t.field.k}', f'shape {t.n} {t.m} {t.N}']
    lines += [
        f'{p} -> {t[p] if t[p] is not None else UNDEF}' for p in t.points()
    ]
    return '\n'.join(lines) + '\n'


def load_table(text: str) -> ProductMapTable:
    reader = _Reader(text)
    field = _field(reader)
    lineno, tokens = reader.keyword('shape', 3)
    n, m, N = _ints(tokens, lineno)
    if min(n, m) < 0 or N < 0:
        raise FormatError('Negative dimensions', lineno)

    entries = {}
    while not reader.done():
        lineno, line = reader.next('a table entry')
        source, sep, target = line.partition('->')
        if not sep:
            raise FormatError(f'Expected "<point> -> <image>", got "{line}"', lineno)

        try:
            point = ProductPoint.parse(source)
        except ValueError as e:
            raise FormatError(str(e), lineno)
        point = ProductPoint(
            _point(field, str(point.x), n, lineno), _point(field, str(point.y), m, lineno)
        )
        if point in entries:
            raise FormatError(f'Duplicate entry for {point}', lineno)

        target = target.strip()
        entries[point] = None if target == UNDEF else _point(field, target, N, lineno)

    try:
        return ProductMapTable(field, n, m, N, entries)
    except ValueError as e:
        raise FormatError(str(e), reader.lineno)


def dump_semilinear(f: SemilinearMap) -> List[str]:
    lines = [f'semilinear {len(f.matrix)} {len(f.matrix[0])} sigma {f.sigma}']
    lines += [' '.join(str(c) for c in row) for row in f.matrix]
    return lines


def _semilinear(reader: _Reader, field: Field) -> SemilinearMap:
    lineno, tokens = reader.keyword('semilinear', 4)
    if tokens[2] != 'sigma':
        raise FormatError('Expected "semilinear <rows> <cols> sigma <j>"', lineno)
    rows, cols, sigma = _ints([tokens[0], tokens[1], tokens[3]], lineno)
    if rows < 1 or cols < 1 or not 0 <= sigma < field.k:
        raise FormatError('Invalid semilinear map header', lineno)

    matrix = []
    for _ in range(rows):
        lineno, line = reader.next('a matrix row')
        row = _ints(line.split(), lineno)
        if len(row) != cols or any(not 0 <= c < field.q for c in row):
            raise FormatError(f'Expected {cols} elements of {field}', lineno)
        matrix.append(tuple(row))

    return SemilinearMap(field, tuple(matrix), sigma)


def _block(reader: _Reader, name: str, field: Field) -> SemilinearMap:
    reader.keyword(name, 0)
    return _semilinear(reader, field)


def _points(field: Field, tokens: Sequence[str], d: int, lineno: int) -> List[ProjPoint]:
    return [_point(field, tok, d, lineno) for tok in tokens]


def dump_certificate(cert: DecompositionCertificate) -> str:
    def fmt(points):
        return ' '.join(str(p) for p in points)

    lines = ['certificate', 'alpha', *dump_semilinear(cert.alpha_prime)]
    lines += ['phi', *dump_semilinear(cert.phi)]
    lines.append(f'witness A {cert.a}')
    lines.append(f'witness B {fmt(cert.basis)}'.rstrip())
    lines.append(f'witness E {fmt(ProjPoint(row) for row in cert.plane.basis)}'.rstrip())
    if cert.annihilated is not None:
        lines.append(
            f'witness U {fmt(ProjPoint(row) for row in cert.annihilated.basis)}'.rstrip()
        )
    lines.append(f'verified {"true" if cert.verified else "false"}')
    return '\n'.join(lines) + '\n'


def load_certificate(text: str, t: ProductMapTable) -> DecompositionCertificate:
    """Parse a certificate for the table ``t``, checking its dimensions."""
    field = t.field
    ambient = t.n * t.m + t.n + t.m
    reader = _Reader(text)
    reader.keyword('certificate', 0)

    lineno = reader.lineno
    alpha_prime = _block(reader, 'alpha', field)
    if len(alpha_prime.matrix) != t.m + 1 or len(alpha_prime.matrix[0]) != t.m + 1:
        raise FormatError(f'alpha must be a square matrix of size {t.m + 1}', lineno)

    lineno = reader.lineno
    phi = _block(reader, 'phi', field)
    if len(phi.matrix) != ambient + 1 or len(phi.matrix[0]) != t.N + 1:
        raise FormatError(f'phi must be a {ambient + 1}x{t.N + 1} matrix', lineno)

    witnesses = {}
    while reader.peek() is not None and reader.peek().startswith('witness'):
        lineno, tokens = reader.keyword('witness')
        if not tokens or tokens[0] not in ('A', 'B', 'E', 'U') or tokens[0] in witnesses:
            raise FormatError('Expected one of "witness A|B|E|U"', lineno)
        witnesses[tokens[0]] = (lineno, tokens[1:])

    for name in ('A', 'B', 'E'):
        if name not in witnesses:
            raise FormatError(f'Missing "witness {name}"', reader.lineno)

    lineno, tokens = witnesses['A']
    if len(tokens) != 1:
        raise FormatError('"witness A" takes one point', lineno)
    a = _point(field, tokens[0], t.n, lineno)
    basis = tuple(_points(field, witnesses['B'][1], t.m, witnesses['B'][0]))
    plane = Subspace.from_vectors(
        field, t.n,
        [p.coords for p in _points(field, witnesses['E'][1], t.n, witnesses['E'][0])],
    )

    annihilated = None
    if 'U' in witnesses:
        lineno, tokens = witnesses['U']
        annihilated = Subspace.from_vectors(
            field, ambient, [p.coords for p in _points(field, tokens, ambient, lineno)]
        )

    lineno, tokens = reader.keyword('verified', 1)
    if tokens[0] not in ('true', 'false'):
        raise FormatError('"verified" must be true or false', lineno)
    if not reader.done():
        raise FormatError('Trailing content after "verified"', reader.lineno)

    return DecompositionCertificate(
        alpha_prime, phi, a, basis, plane, tokens[0] == 'true', annihilated
    )


def dump_answer(beta: SemilinearMap, psi: SemilinearMap) -> str:
    lines = ['answer', 'beta', *dump_semilinear(beta), 'psi', *dump_semilinear(psi)]
    return '\n'.join(lines) + '\n'


def load_answer(text: str, field: Field) -> Tuple[SemilinearMap, SemilinearMap]:
    reader = _Reader(text)
    reader.keyword('answer', 0)
    beta = _block(reader, 'beta', field)
    psi = _block(reader, 'psi', field)
    if not reader.done():
        raise FormatError('Trailing content after the answer', reader.lineno)
    return beta, psi


def read_file(path: str) -> str:
    with open(path, 'r', encoding='utf-8') as f:
        return f.read()


def write_file(path: str, content: str):
    with open(path, 'w', encoding='utf-8') as f:
        f.write(content)


# vim:sw=4:ts=4:et:
