import argparse
import logging
import sys
from typing import List, Optional

from .config import config, init_config
from .errors import (
    FormatError, HypothesisFailure, NonPrimeCharacteristic, RadicalNotSubspace,
    SegreDecompError, UnsupportedSize,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT_ERROR = 2

# Bad files and parameters. Other SegreDecompErrors are semantic failures
_input_errors = (OSError, FormatError, NonPrimeCharacteristic, UnsupportedSize)


def _common_args() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument('--config', dest='config', default='segredecomp.yaml', required=False,
                        help='Path to a configuration file (default: segredecomp.yaml in the current directory)')
    parser.add_argument('--log-level', dest='log_level', required=False, default=None,
                        help='Logging level (default: WARNING)')
    parser.add_argument('--parallel', dest='parallel', type=int, required=False, default=None,
                        help='Number of worker processes used for the exhaustive checks (default: 1)')
    return parser


def get_args(args):
    common = _common_args()
    parser = argparse.ArgumentParser(description='''Decompose linear mappings of a product of two projective spaces
through the Segre embedding.

Tables list the image of every point of PG(n, q) x PG(m, q) in PG(N, q):

  field <p> <k>
  shape <n> <m> <N>
  (x0:..:xn)x(y0:..:ym) -> (z0:..:zN) | UNDEF
  ...

Exit codes: 0 success, 1 failed check or decomposition, 2 invalid input.
''', formatter_class=argparse.RawTextHelpFormatter)
    verbs = parser.add_subparsers(dest='verb', metavar='verb')
    verbs.required = True

    info = verbs.add_parser('info', parents=[common], help='Summarize a table')
    info.add_argument('table', help='Path to the table')

    axioms = verbs.add_parser('axioms', parents=[common], help='Check the axioms (L1) and (L2)')
    axioms.add_argument('table', help='Path to the table')

    decompose = verbs.add_parser('decompose', parents=[common], help='Decompose a table and write a certificate')
    decompose.add_argument('table', help='Path to the table')
    decompose.add_argument('--out', dest='out', required=False, default=None,
                           help='Certificate path (default: standard output)')

    verify = verbs.add_parser('verify', parents=[common], help='Re-check a certificate against a table')
    verify.add_argument('table', help='Path to the table')
    verify.add_argument('certificate', help='Path to the certificate')

    generate = verbs.add_parser('generate', parents=[common], help='Generate a test instance')
    generate.add_argument('--kind', dest='kind', default='segre',
                          choices=['segre', 'roundtrip', 'degenerate', 'grid'],
                          help='Kind of instance (default: segre)')
    generate.add_argument('--field', dest='field', nargs=2, type=int, metavar=('P', 'K'), default=None,
                          help='Field GF(p^k) (default: 2 1)')
    generate.add_argument('--shape', dest='shape', nargs=3, type=int, metavar=('N1', 'M', 'N'), default=None,
                          help='Dimensions n m N (default: 2 1 5)')
    generate.add_argument('--seed', dest='seed', type=int, default=None, help='Random seed (default: 0)')
    generate.add_argument('--radicals', dest='radicals', nargs=2, type=int, metavar=('R1', 'R2'),
                          default=[-1, 0], help='Radical dimensions of degenerate instances (default: -1 0)')
    generate.add_argument('--out', dest='out', required=False, default=None,
                          help='Table path (default: standard output); the answer goes to <out>.answer')

    return parser.parse_args(args)


def _load_table(path: str):
    from .formats import load_table, read_file
    return load_table(read_file(path))


def _emit(content: str, out: Optional[str]):
    from .formats import write_file

    if out:
        write_file(out, content)
    else:
        sys.stdout.write(content)


def cmd_info(opts) -> int:
    from .decomp import check_condition_i, check_condition_ii
    from .linmap import radicals

    t = _load_table(opts.table)
    print(f'field {t.field}')
    print(f'shape {t.n} {t.m} {t.N}')
    print(f'defined {len(t.domain())}')
    print(f'undefined {len(t.exceptional())}')

    try:
        rad1, rad2 = radicals(t)
        print(f'radicals {rad1.dimension} {rad2.dimension}')
    except RadicalNotSubspace as e:
        print(f'radicals not subspaces ({e})')

    found = check_condition_i(t)
    if found:
        plane, basis = found
        print(f'condition-i E={plane} B={" ".join(str(b) for b in basis)}')
    else:
        print('condition-i fail')

    a = check_condition_ii(t)
    print(f'condition-ii A={a}' if a is not None else 'condition-ii fail')
    return EXIT_OK


def cmd_axioms(opts) -> int:
    from .linmap import check_axioms

    report = check_axioms(_load_table(opts.table), workers=config.parallel)
    for violation in report.violations:
        print(violation)

    if not report.ok:
        print(f'{len(report.violations)} violations', file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_OK


def cmd_decompose(opts) -> int:
    from .decomp import decompose, decompose_degenerate
    from .formats import dump_certificate

    t = _load_table(opts.table)
    try:
        degenerate = t.is_degenerate()
    except RadicalNotSubspace:
        degenerate = False

    cert = None
    try:
        cert = decompose(t, workers=config.parallel)
    except HypothesisFailure as e:
        logger.info('%s, falling back to the degenerate construction', e)
        degenerate = True
    except SegreDecompError as e:
        if not degenerate:
            print(f'decomposition failed: {e}', file=sys.stderr)
            return EXIT_FAILURE
        logger.info('%s, falling back to the degenerate construction', e)

    if degenerate and (cert is None or not cert.verified):
        try:
            cert = decompose_degenerate(t, workers=config.parallel)
        except SegreDecompError as e:
            print(f'decomposition failed: {e}', file=sys.stderr)
            return EXIT_FAILURE

    _emit(dump_certificate(cert), opts.out)
    if not cert.verified:
        print(f'certificate not verified: {len(cert.report.mismatches)} mismatches', file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_OK


def cmd_verify(opts) -> int:
    from .decomp import unannihilated_points, verify_decomposition
    from .formats import load_certificate, read_file

    t = _load_table(opts.table)
    cert = load_certificate(read_file(opts.certificate), t)
    report = verify_decomposition(t, cert.alpha_prime, cert.phi, workers=config.parallel)
    if cert.annihilated is not None:
        report.unannihilated = unannihilated_points(cert.phi, cert.annihilated)

    for mismatch in report.mismatches[:config.max_reported_mismatches]:
        print(mismatch)
    for point in report.unannihilated[:config.max_reported_mismatches]:
        print(f'{point} lies in U but phi maps it to a point')

    if not report.ok:
        print(
            f'{len(report.mismatches)} mismatches on {report.checked} points, '
            f'{len(report.unannihilated)} points of U not annihilated',
            file=sys.stderr,
        )
        return EXIT_FAILURE

    print(f'ok {report.checked} points')
    return EXIT_OK


def cmd_generate(opts) -> int:
    from ._generators import DegenerateInstance, generators
    from .formats import dump_answer, dump_table, write_file
    from .gf import field_new

    field = field_new(*(opts.field or config.field))
    n, m, N = opts.shape or config.shape
    seed = opts.seed if opts.seed is not None else config.seed

    kind = generators[opts.kind]
    if kind is DegenerateInstance:
        generator = kind(field, n, m, N, seed=seed, radicals=tuple(opts.radicals))
    else:
        generator = kind(field, n, m, N, seed=seed)

    instance = generator()
    _emit(dump_table(instance.table), opts.out)
    if instance.answer is not None:
        if opts.out:
            write_file(opts.out + '.answer', dump_answer(*instance.answer))
        else:
            # stdout holds the table
            sys.stderr.write(dump_answer(*instance.answer))
    return EXIT_OK


_commands = {
    'info': cmd_info,
    'axioms': cmd_axioms,
    'decompose': cmd_decompose,
    'verify': cmd_verify,
    'generate': cmd_generate,
}


def main(argv: Optional[List[str]] = None) -> int:
    try:
        opts = get_args(sys.argv[1:] if argv is None else argv)
    except SystemExit as e:
        return EXIT_INPUT_ERROR if e.code else EXIT_OK

    init_config(config_file=opts.config)
    if opts.parallel is not None:
        config.parallel = opts.parallel
    if opts.log_level:
        config.log_level = opts.log_level.upper()

    logging.basicConfig(
        level=getattr(logging, config.log_level, logging.WARNING),
        format='[%(asctime)s] %(levelname)s %(name)s: %(message)s',
    )

    try:
        return _commands[opts.verb](opts)
    except _input_errors as e:
        print(f'{opts.verb}: {e}', file=sys.stderr)
        return EXIT_INPUT_ERROR
    except SegreDecompError as e:
        print(f'{opts.verb}: {e}', file=sys.stderr)
        return EXIT_FAILURE
    except ValueError as e:
        # Invalid parameters, e.g. a shape a generator cannot fill
        print(f'{opts.verb}: {e}', file=sys.stderr)
        return EXIT_INPUT_ERROR


def run():
    sys.exit(main(sys.argv[1:]))


# vim:sw=4:ts=4:et:
