"""
Kommandozeile `aw`
Befehle nf, eq, apply, relations, casimir, phi, racah, selfcheck und serve

Exit-Codes: 0 Erfolg/gleich, 1 verschieden (ProvedNonzero) oder Prüfung
fehlgeschlagen, 2 unentschieden, 3 fachlicher Fehler oder Bedienfehler,
4 interner Fehler
"""
import functools
import logging
import sys
from typing import List, Optional

import click

from awn.config import Config, parse_rational, parse_spins
from awn.services.errors import AwError
from awn.utils.logger import setup_all_loggers

cli_logger = logging.getLogger('cli')
error_logger = logging.getLogger('errors')

EXIT_OK = 0
EXIT_DIFFERENT = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 3
EXIT_INTERNAL = 4

STATUS_EXIT = {
    'syntactic': EXIT_OK,
    'proved': EXIT_OK,
    'nonzero': EXIT_DIFFERENT,
    'rep-consistent': EXIT_INCONCLUSIVE,
    'inconclusive': EXIT_INCONCLUSIVE,
}


def _guarded(command):
    """AwError -> Exit 3, alles andere -> Exit 4 (mit Log im errors-Logger)"""
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        try:
            return command(*args, **kwargs)
        except click.exceptions.Exit:
            raise
        except click.ClickException:
            raise
        except AwError as e:
            click.echo(f"Fehler: {e}", err=True)
            cli_logger.warning(f"⚠️ {ctx.command_path}: {e}")
            ctx.exit(EXIT_USAGE)
        except Exception as e:
            error_logger.exception(f"❌ Interner Fehler in {ctx.command_path}: {e}")
            click.echo(f"Interner Fehler: {e}", err=True)
            ctx.exit(EXIT_INTERNAL)
    return wrapper


class ConfigError(click.UsageError):
    exit_code = EXIT_USAGE


def _config(ctx: click.Context) -> Config:
    return ctx.obj


@click.group()
@click.option('--n', 'n', type=int, default=None, help='Rang n (AW_N)')
@click.option('--degree-bound', type=int, default=None, help='Gradschranke der Vervollständigung')
@click.option('--max-iter', type=int, default=None, help='Maximale Runden der Vervollständigung')
@click.option('--spins', default=None, help='Spins des Falsifizierers, z.B. 1/2,1,1/2')
@click.option('--eval-q', default=None, help='Rationales q0 für phi')
@click.option('--seed', type=int, default=None, help='Zufallssaat')
@click.option('--cache', default=None, help='Pfad des Regel-Caches')
@click.option('--generalized/--adjacent', default=None, help='Nicht benachbarte Tupel aufzählen')
@click.pass_context
def cli(ctx: click.Context, n, degree_bound, max_iter, spins, eval_q, seed, cache, generalized):
    """Exakte Rechnungen in der Askey-Wilson-Algebra aw(n)"""
    setup_all_loggers()
    try:
        ctx.obj = Config.from_env().with_overrides(
            n=n, degree_bound=degree_bound, max_iter=max_iter, spins=parse_spins(spins),
            eval_q=parse_rational(eval_q), seed=seed, cache=cache, generalized=generalized,
        )
    except AwError as e:
        raise ConfigError(str(e))


def _comparator(config: Config):
    from awn.services.selfcheck import make_comparator
    return make_comparator(config)


@cli.command()
@click.argument('expr')
@click.option('--echo', is_flag=True, help='Nur einlesen und unverändert ausgeben')
@click.pass_context
@_guarded
def nf(ctx: click.Context, expr: str, echo: bool):
    """Normalform eines Ausdrucks"""
    from awn.services.parser import read
    config = _config(ctx)
    if echo:
        click.echo(str(read(expr, config.n, expand=False)))
        ctx.exit(EXIT_OK)
    x = read(expr, config.n, expand=False)
    rules = _comparator(config).rules_for(config.n)
    if rules is None:
        cli_logger.warning(f"⚠️ Keine Regeln für n={config.n}, Ausgabe nur entwickelt")
        click.echo(str(x.expand_letters().absorb_central()))
        ctx.exit(EXIT_OK)
    if rules.incomplete:
        click.echo("Hinweis: Regelsystem unvollständig (max_iter erreicht)", err=True)
    click.echo(str(rules.reduce(x)))
    ctx.exit(EXIT_OK)


@cli.command()
@click.argument('left')
@click.argument('right')
@click.pass_context
@_guarded
def eq(ctx: click.Context, left: str, right: str):
    """Vergleicht zwei Ausdrücke (ProvedZero / ProvedNonzero / Inconclusive)"""
    from awn.services.parser import read
    config = _config(ctx)
    result = _comparator(config).compare(read(left, config.n, expand=False), read(right, config.n, expand=False))
    label = {EXIT_OK: 'ProvedZero', EXIT_DIFFERENT: 'ProvedNonzero'}.get(STATUS_EXIT[result.status], 'Inconclusive')
    click.echo(f"{label} ({result.status})" + (f": {result.detail}" if result.detail else ''))
    ctx.exit(STATUS_EXIT[result.status])


@cli.command('apply')
@click.argument('word')
@click.argument('expr')
@click.option('--formula', is_flag=True, help='Formeln statt struktureller Abbildung verwenden')
@click.pass_context
@_guarded
def apply_command(ctx: click.Context, word: str, expr: str, formula: bool):
    """Wendet ein Morphismus-Wort an (rechts zuerst), z.B. "r0 r1" """
    from awn.services.morphisms import apply, parse_word, word_rank
    from awn.services.parser import read
    config = _config(ctx)
    morphism = parse_word(word)
    target = word_rank(morphism, config.n)
    image = apply(morphism, read(expr, config.n, expand=False), structural=not formula)
    cli_logger.info(f"✅ apply {word}: Rang {config.n} -> {target}")
    click.echo(str(image))
    ctx.exit(EXIT_OK)


@cli.command()
@click.option('--family', default=None, help='Familie, z.B. three-adjacent; ohne Angabe alle')
@click.option('--describe', is_flag=True, help='Instanz-Bezeichnung voranstellen')
@click.pass_context
@_guarded
def relations(ctx: click.Context, family: Optional[str], describe: bool):
    """Relationsinstanzen in der Ausdrucksgrammatik, eine pro Zeile"""
    from awn.services.relations import RelationFamily, relation_instances
    config = _config(ctx)
    try:
        families = [RelationFamily(family)] if family else list(RelationFamily)
    except ValueError:
        raise AwError(f"Unbekannte Familie {family!r}, erlaubt: {', '.join(f.value for f in RelationFamily)}")
    for fam in families:
        for instance in relation_instances(config.n, fam, config.generalized):
            click.echo(f"{instance.describe()}: {instance}" if describe else str(instance))
    ctx.exit(EXIT_OK)


def _set_option(text: Optional[str]) -> Optional[List[int]]:
    if not text:
        return None
    try:
        return [int(x) for x in text.split(',')]
    except ValueError:
        raise AwError(f"Ungültige Menge: {text!r}")


@cli.command()
@click.option('--set', 'subset', default=None, help='Menge S, z.B. 1,2,4')
@click.option('--check', type=click.Choice(['central', 'partitions', 'identities', 'gamma', 'r0', 'kernel']),
              default=None)
@click.pass_context
@_guarded
def casimir(ctx: click.Context, subset: Optional[str], check: Optional[str]):
    """ω_S ausgeben oder Casimir-Prüfungen ausführen"""
    from awn.services import casimir as cas
    config = _config(ctx)
    n = config.n
    S = _set_option(subset)
    if check is None:
        sets = [S] if S else cas.gamma_basis(n)
        for s in sets:
            prefix = '' if S else f"w{cas.set_str(s)} = "
            click.echo(prefix + str(cas.omega(s, n)))
        ctx.exit(EXIT_OK)

    comparator = _comparator(config)
    if check in ('central', 'partitions'):
        if not S:
            raise AwError("--check central/partitions braucht --set")
        fn = cas.check_centrality if check == 'central' else cas.check_partition_independence
        report = fn(S, n, comparator)
    elif check == 'identities':
        report = cas.check_casimir_identities(n, comparator)
    elif check == 'gamma':
        report = cas.check_gamma_action(n, comparator, config.seed)
    elif check == 'kernel':
        report = cas.check_kernel(n)
    else:
        report = cas.check_r0_matrix(comparator)
    click.echo(report.render())
    ctx.exit(EXIT_OK if report.passed else EXIT_DIFFERENT)


@cli.command()
@click.argument('expr')
@click.pass_context
@_guarded
def phi(ctx: click.Context, expr: str):
    """Bild in U_q(sl2)^⊗n (Spins aus --spins, Standard 1/2)"""
    from awn.services.parser import read
    from awn.services.uq import RepSpec, matrix_str, phi as phi_map
    config = _config(ctx)
    spec = RepSpec(config.rep_spins())
    image = phi_map(read(expr, config.n, expand=False), spec, config.eval_q)
    click.echo(matrix_str(image))
    ctx.exit(EXIT_OK)


@cli.command()
@click.argument('expr', required=False)
@click.option('--precision', type=int, default=None, help='Höchste Ordnung in h (Standard 6)')
@click.option('--check', is_flag=True, help='Rac1/Rac2/cub0-Prüfbericht')
@click.pass_context
@_guarded
def racah(ctx: click.Context, expr: Optional[str], precision: Optional[int], check: bool):
    """Erster nichttrivialer Koeffizient nach C_I = εK_I + 1"""
    from awn.services import racah as rac
    from awn.services.parser import read
    config = _config(ctx)
    precision = precision or rac.DEFAULT_PRECISION
    if check:
        report = rac.check_racah(precision)
        click.echo(report.render())
        ctx.exit(EXIT_OK if report.passed else EXIT_DIFFERENT)
    if not expr:
        raise AwError("Ausdruck fehlt (oder --check angeben)")
    series = rac.substitute_K(read(expr, config.n, expand=False), precision)
    if series.is_zero():
        click.echo("0")
        ctx.exit(EXIT_OK)
    order, poly = rac.leading_term(series)
    click.echo(rac.format_leading(order, poly))
    ctx.exit(EXIT_OK)


@cli.command()
@click.option('--level', type=click.Choice(['fast', 'full']), default='fast')
@click.pass_context
@_guarded
def selfcheck(ctx: click.Context, level: str):
    """Selbstprüfung; der Bericht hängt nur von den Ergebnissen ab"""
    from awn.services.selfcheck import render, run_selfcheck
    config = _config(ctx)
    reports = run_selfcheck(level, config)
    click.echo(render(reports))
    passed = all(report.passed for report in reports)
    cli_logger.info(f"{'✅' if passed else '❌'} selfcheck {level}")
    ctx.exit(EXIT_OK if passed else EXIT_DIFFERENT)


@cli.command()
@click.option('--port', type=int, default=None)
@click.option('--debug', is_flag=True)
@click.pass_context
def serve(ctx: click.Context, port: Optional[int], debug: bool):
    """Startet die HTTP-Schnittstelle"""
    from awn import create_app
    config = _config(ctx)
    port = port or config.port
    cli_logger.info(f"🔄 Starte HTTP-Schnittstelle auf Port {port}")
    create_app(config).run(host='0.0.0.0', port=port, debug=debug)


def run(argv: Optional[List[str]] = None) -> int:
    """Führt die CLI aus und liefert den Exit-Code"""
    try:
        code = cli.main(args=argv, prog_name='aw', standalone_mode=False)
    except click.exceptions.Abort:
        click.echo("Abgebrochen", err=True)
        return EXIT_USAGE
    except click.ClickException as e:
        e.show()
        return EXIT_USAGE
    except AwError as e:
        click.echo(f"Fehler: {e}", err=True)
        return EXIT_USAGE
    except Exception as e:
        error_logger.exception(f"❌ Interner Fehler: {e}")
        click.echo(f"Interner Fehler: {e}", err=True)
        return EXIT_INTERNAL
    return code if isinstance(code, int) else EXIT_OK


def main() -> None:
    sys.exit(run())
