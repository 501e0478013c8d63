#!/usr/bin/env python3
"""
garside-germs - Command-Line Runner
Checks germs, computes normal forms, lcms, gcds and atoms, and drives the
Coxeter, ribbon, conjugacy and decomposition tools
"""

import argparse
import os
import sys
from enum import IntEnum
from pathlib import Path
from typing import List, Optional, Sequence

import psutil

project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from src.__version__ import __description__, __title__, __version__
from src.core.category_engine import Category
from src.core.conjugacy import ConjObject, conj_simples, conjugate_by
from src.core.coxeter import (
    CoxeterSystem,
    cartan_type,
    coxeter_preset,
    is_finite,
    lift_germ,
    parse_coxeter_matrix,
    root_set,
)
from src.core.decomposition import build_Eg, check_simply_connected
from src.core.garside_structure import build_left_garside, check_garside_bilatere
from src.core.germ_core import (
    AxiomReport,
    GermAutomorphism,
    GermTable,
    check_locally_garside,
    fixed_subgerm,
    germ_atoms,
    germ_automorphism,
)
from src.core.ribbon import build_ribbon_germ, ribbon_atoms, spherical_garside
from src.utils.config_loader import GarsideConfig, create_config_template, load_config
from src.utils.console_formatter import ConsoleFormatter, print_table
from src.utils.error_handler import GarsideError, GermAxiomViolation, MalformedSpec, explain
from src.utils.germ_io import load_germ_file, save_germ_file
from src.utils.logger import Logger


class ExitCode(IntEnum):
    OK = 0
    AXIOM_FAILURE = 1
    PARSE_ERROR = 2
    DOMAIN_ERROR = 3


def parse_arguments(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    """Parse command-line arguments"""
    parser = argparse.ArgumentParser(
        prog='garside',
        description=__description__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  garside check germs/a2.germ                  Verify the locally Garside axioms
  garside check germs/counterexample.germ --g4 search=8
  garside nf germs/a2.germ "a b a"             Normal form: [aba]
  garside lcm germs/a2.germ a b                Right lcm: [aba]
  garside lcm germs/counterexample.germ a b --target X
  garside coxeter A3                           Lift germ of a Coxeter group
  garside ribbon A3 s1                         Ribbon germ of the conjugates of {s1}
  garside conj germs/a2.germ a                 Conjugating simples of {a}
  garside eposet germs/a2.germ "a b a" --h1    vertices=7 connected=true h1=0
        """
    )

    parser.add_argument('--version', action='version', version=f'{__title__} v{__version__}')
    parser.add_argument('-v', '--verbose', action='store_true', help='Enable debug logging on stderr')
    parser.add_argument('--config', type=str, help='Path to a YAML configuration file', metavar='FILE')
    parser.add_argument('--progress', action='store_true', help='Show progress bars on stderr')

    commands = parser.add_subparsers(dest='command', metavar='COMMAND')
    commands.required = True

    check = commands.add_parser('check', help='Verify G1-G4 and G2\'/G3\' on a germ file')
    check.add_argument('germ', help='Germ file')
    check.add_argument('--g4', help='"assume" or "search" / "search=L"', metavar='STRATEGY')
    check.add_argument('--probe-length', type=int, default=3,
                       help='ν bound for the endomorphism lcm probe (default: 3)')

    nf = commands.add_parser('nf', help='Normal form of a word')
    nf.add_argument('germ')
    nf.add_argument('word', help='Whitespace-separated element names')
    nf.add_argument('--source', help='Source object for the empty word', metavar='OBJ')

    lcm = commands.add_parser('lcm', help='Right lcm of a family of words')
    lcm.add_argument('germ')
    lcm.add_argument('words', nargs='+')
    lcm.add_argument('--target', help='Minimal common multiples ending at OBJ', metavar='OBJ')
    lcm.add_argument('--max-len', type=int, help='ν bound for --target (default: enumeration_max_len)')

    gcd = commands.add_parser('gcd', help='Left gcd of a family of words')
    gcd.add_argument('germ')
    gcd.add_argument('words', nargs='+')

    atoms = commands.add_parser('atoms', help='Atoms of the germ')
    atoms.add_argument('germ')

    coxeter = commands.add_parser('coxeter', help='Lift germ of a Coxeter system')
    coxeter.add_argument('system', help='Preset (A2, A3, B3, A~1) or matrix "1,3;3,1"')
    coxeter.add_argument('--max-length', type=int, help='Truncate the carrier at this length')
    coxeter.add_argument('--check', action='store_true', help='Run the axiom checks on the lift')
    coxeter.add_argument('--dump', help='Write the lift germ to FILE', metavar='FILE')
    coxeter.add_argument('--roots', help='Positive roots of W_I and the I-reduced elements, I e.g. s1,s2',
                         metavar='LABELS')

    ribbon = commands.add_parser('ribbon', help='Ribbon germ of the conjugates of a generator subset')
    ribbon.add_argument('system', help='Preset or matrix')
    ribbon.add_argument('subset', help='Comma-separated generator labels, e.g. s1')
    ribbon.add_argument('--check', action='store_true', help='Run the axiom checks on the ribbon germ')

    conj = commands.add_parser('conj', help='Conjugacy category: simples or a conjugation')
    conj.add_argument('germ')
    conj.add_argument('family', help='Comma-separated words, e.g. "a" or "a,b"')
    conj.add_argument('x', nargs='?', help='Conjugating word; lists the simples when omitted')

    eposet = commands.add_parser('eposet', help='Decomposition poset E(g)')
    eposet.add_argument('germ')
    eposet.add_argument('word')
    eposet.add_argument('--h1', action='store_true', help='Report the first homology rank')
    eposet.add_argument('--export', help='Write the poset in line format to FILE', metavar='FILE')

    fixed = commands.add_parser('fixed', help='Fixed subgerm of a germ automorphism')
    fixed.add_argument('germ')
    fixed.add_argument('mapping', help='Element images, e.g. "a=b,b=a"; unnamed elements are fixed')

    garside = commands.add_parser('garside', help='Synthesize Δ and Φ')
    garside.add_argument('germ')
    garside.add_argument('--bound', type=int, default=3, help='ν bound for the two-sided check')

    config = commands.add_parser('config', help='Write a configuration template')
    config.add_argument('--output', default='garside_config.yaml', metavar='FILE')

    return parser.parse_args(argv)


# === INPUT HELPERS ===

def _category(germ: GermTable, config: GarsideConfig) -> Category:
    return Category(germ, show_progress=config.show_progress)


def _parse_g4(text: Optional[str], config: GarsideConfig) -> tuple:
    if not text:
        return config.g4_strategy, config.g4_search_length
    strategy, _, length = text.partition('=')
    if strategy not in ('assume', 'search'):
        raise MalformedSpec(f"unknown G4 strategy '{text}'", (text,))
    if length and not length.isdigit():
        raise MalformedSpec(f"bad G4 search length '{length}'", (text,))
    return strategy, int(length) if length else config.g4_search_length


def _coxeter_system(text: str) -> CoxeterSystem:
    if ',' in text or ';' in text:
        return parse_coxeter_matrix(text)
    return coxeter_preset(text)


def _parse_automorphism(germ: GermTable, text: str) -> GermAutomorphism:
    element_map = list(range(len(germ)))
    object_map = list(range(len(germ.objects)))
    for item in filter(None, (part.strip() for part in text.split(','))):
        name, sep, image = item.partition('=')
        if not sep:
            raise MalformedSpec(f"mapping entry '{item}' is not name=image", (item,))
        e, f = germ.element(name.strip()), germ.element(image.strip())
        element_map[e] = f
        object_map[germ.source(e)] = germ.source(f)
        object_map[germ.target(e)] = germ.target(f)
    for obj, identity in germ.identity_of.items():
        element_map[identity] = germ.identity_of[object_map[obj]]
    return germ_automorphism(germ, object_map, element_map)


def _print_report(report: AxiomReport) -> None:
    print_table(["axiom", "status", "witness", "note"],
                [[row["axiom"], ConsoleFormatter.status_badge(row["status"]).strip(),
                  row["witness"] or "-", row["note"] or "-"] for row in report.rows()])
    for warning in report.warnings:
        print(f"warning: {warning}")


# === COMMANDS ===

def cmd_check(args, config: GarsideConfig) -> int:
    germ = load_germ_file(args.germ)
    strategy, length = _parse_g4(args.g4, config)
    report = check_locally_garside(germ, strategy, length)
    _print_report(report)
    if not report.passed:
        return ExitCode.AXIOM_FAILURE
    category = _category(germ, config)
    for probe in category.probe_endomorphism_lcms(args.probe_length):
        a, b = germ.labels(probe.pair)
        print(f"note: {a} and {b} have {len(probe.minimal)} minimal common multiples ending at "
              f"{germ.object_name(probe.target)}: {category.format_all(probe.minimal)}; no lcm")
    return ExitCode.OK


def cmd_nf(args, config: GarsideConfig) -> int:
    germ = load_germ_file(args.germ)
    source = germ.object(args.source) if args.source else None
    category = _category(germ, config)
    print(category.format(category.parse(args.word, source)))
    return ExitCode.OK


def cmd_lcm(args, config: GarsideConfig) -> int:
    germ = load_germ_file(args.germ)
    category = _category(germ, config)
    family = [category.parse(word) for word in args.words]
    if args.target:
        max_len = args.max_len or config.enumeration_max_len
        minimal = category.minimal_common_multiples(family, germ.object(args.target), max_len)
        if not minimal:
            print("no common multiple")
        else:
            print(category.format_all(minimal))
            if len(minimal) > 1:
                print("no lcm")
        return ExitCode.OK
    joined = category.lcm(family)
    print("no common multiple" if joined is None else category.format(joined))
    return ExitCode.OK


def cmd_gcd(args, config: GarsideConfig) -> int:
    germ = load_germ_file(args.germ)
    category = _category(germ, config)
    print(category.format(category.gcd([category.parse(word) for word in args.words])))
    return ExitCode.OK


def cmd_atoms(args, config: GarsideConfig) -> int:
    germ = load_germ_file(args.germ)
    print(" ".join(germ.labels(germ_atoms(germ))))
    return ExitCode.OK


def cmd_coxeter(args, config: GarsideConfig) -> int:
    cox = _coxeter_system(args.system)
    lift = lift_germ(cox, args.max_length, config.coxeter_element_guard)
    types = cartan_type(cox)
    print(f"name={cox.name} rank={cox.rank} type={'+'.join(types) if types else 'infinite'} "
          f"finite={str(is_finite(cox)).lower()} elements={len(lift.germ)}"
          + (" truncated=true" if lift.germ.truncated else ""))
    print("atoms: " + " ".join(lift.germ.labels(germ_atoms(lift.germ))))
    if args.roots:
        roots = root_set(cox, cox.generators(label.strip() for label in args.roots.split(',') if label.strip()))
        reduced = sum(1 for w in lift.elements if roots.is_reduced(w))
        print(f"roots {cox.format_subset(roots.subset)}: {len(roots)} reduced={reduced}")
    status = ExitCode.OK
    if args.check:
        report = check_locally_garside(lift.germ, "assume", g4_note="Artin monoids are cancellative")
        _print_report(report)
        if not report.passed:
            status = ExitCode.AXIOM_FAILURE
    if args.dump:
        save_germ_file(lift.germ, args.dump)
    return status


def cmd_ribbon(args, config: GarsideConfig) -> int:
    cox = _coxeter_system(args.system)
    start = cox.generators(label.strip() for label in args.subset.split(',') if label.strip())
    rg = build_ribbon_germ(cox, start, config.coxeter_element_guard)
    print(f"objects={len(rg.orbit)} elements={len(rg.germ)}")
    print("orbit: " + " ".join(cox.format_subset(o.generators) for o in rg.orbit))
    for atom in ribbon_atoms(rg):
        print("atom " + rg.describe(rg.elements[atom]))
    gs = spherical_garside(rg)
    for obj, delta in sorted(gs.delta_element.items()):
        print(f"delta {rg.describe(rg.elements[delta])}")
    if args.check:
        report = check_locally_garside(rg.germ, "assume", g4_note="embeds in a cancellative category")
        _print_report(report)
        if not report.passed:
            return ExitCode.AXIOM_FAILURE
    return ExitCode.OK


def cmd_conj(args, config: GarsideConfig) -> int:
    germ = load_germ_file(args.germ)
    category = _category(germ, config)
    members = [category.parse(word) for word in args.family.split(',') if word.strip()]
    source = ConjObject(tuple(members))
    if args.x is not None:
        x = category.parse(args.x, source.obj)
        print(category.format_all(conjugate_by(category, source, x).target.family))
        return ExitCode.OK
    for simple in conj_simples(category, source):
        print(f"{category.format(simple.x)} -> {category.format_all(simple.target.family)}")
    return ExitCode.OK


def cmd_eposet(args, config: GarsideConfig) -> int:
    germ = load_germ_file(args.germ)
    category = _category(germ, config)
    poset = build_Eg(category, category.parse(args.word), config.eposet_vertex_budget)
    report = check_simply_connected(poset, config.tietze_max_rounds)
    line = f"vertices={len(poset.vertices)} connected={str(report.connected).lower()}"
    if args.h1:
        line += f" h1={report.h1_rank}"
        if report.h1_torsion:
            line += " torsion=" + ",".join(str(t) for t in report.h1_torsion)
    print(line)
    Logger("Main").info(f"covers={len(poset.covers)} certificate={report.pi1_certificate or 'none'}")
    if args.export:
        Path(args.export).write_text("\n".join(poset.export_lines()) + "\n", encoding='utf-8')
    return ExitCode.OK if report.consistent else ExitCode.AXIOM_FAILURE


def cmd_fixed(args, config: GarsideConfig) -> int:
    germ = load_germ_file(args.germ)
    sigma = _parse_automorphism(germ, args.mapping)
    fixed = fixed_subgerm(germ, sigma)
    local_atoms = [fixed.ambient(a) for a in germ_atoms(fixed.germ)]
    category = _category(germ, config)
    from_orbits = category.fixed_atoms_from_orbits(sigma)
    print("fixed atoms: " + " ".join(germ.labels(germ.sorted_ids(local_atoms))))
    print("orbit lcms: " + category.format_all(from_orbits))
    agree = {category.element(a) for a in local_atoms} == set(from_orbits)
    return ExitCode.OK if agree else ExitCode.AXIOM_FAILURE


def cmd_garside(args, config: GarsideConfig) -> int:
    germ = load_germ_file(args.germ)
    gs = build_left_garside(germ, _category(germ, config))
    for obj, delta in sorted(gs.delta_element.items()):
        print(f"delta {germ.object_name(obj)}: {germ.label(delta)} -> {germ.object_name(gs.phi_obj[obj])}")
    print("phi: " + " ".join(f"{germ.label(e)}->{germ.label(f)}"
                             for e, f in sorted(gs.phi_elem.items()) if not germ.is_identity(e)))
    bilatere = check_garside_bilatere(gs, args.bound)
    rows = [[v.name, "pass" if v.passed else "fail", " ".join(v.witness) or "-", v.checked]
            for v in (gs.naturality, bilatere)]
    print_table(["check", "status", "witness", "checked"], rows)
    return ExitCode.OK if gs.naturality.passed and bilatere.passed else ExitCode.AXIOM_FAILURE


def cmd_config(args, config: GarsideConfig) -> int:
    return ExitCode.OK if create_config_template(args.output) else ExitCode.DOMAIN_ERROR


COMMANDS = {
    'check': cmd_check,
    'nf': cmd_nf,
    'lcm': cmd_lcm,
    'gcd': cmd_gcd,
    'atoms': cmd_atoms,
    'coxeter': cmd_coxeter,
    'ribbon': cmd_ribbon,
    'conj': cmd_conj,
    'eposet': cmd_eposet,
    'fixed': cmd_fixed,
    'garside': cmd_garside,
    'config': cmd_config,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point"""
    args = parse_arguments(argv)
    config = load_config(args.config)
    if args.progress:
        config.show_progress = True
    if config.log_to_file and config.log_file_path:
        os.environ.setdefault("GARSIDE_LOG_FILE", config.log_file_path)
    Logger.set_console_level('DEBUG' if args.verbose else config.log_level)
    logger = Logger("Main")
    logger.debug(f"{__title__} v{__version__}: {args.command}")

    start = logger.timing_start(args.command)
    try:
        status = COMMANDS[args.command](args, config)
    except MalformedSpec as e:
        explain(e, logger)
        return ExitCode.PARSE_ERROR
    except GermAxiomViolation as e:
        explain(e, logger)
        return ExitCode.AXIOM_FAILURE
    except GarsideError as e:
        explain(e, logger)
        return ExitCode.DOMAIN_ERROR
    except OSError as e:
        logger.error(f"Cannot read input: {e}")
        return ExitCode.PARSE_ERROR
    logger.timing_end(args.command, start)
    logger.memory_usage("garside", psutil.Process().memory_info().rss / (1024 * 1024))
    return int(status)


if __name__ == "__main__":
    sys.exit(main())
