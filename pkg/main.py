#!/usr/bin/env python3
"""
Mendelsohn 三元系序列工具包
命令行入口：报表写到 stdout（默认 TSV），日志写到 stderr
"""

import sys
from functools import wraps
from pathlib import Path

import click

from src.utils.logger import setup_logger, set_level
from src.utils.config_loader import config_loader
from src.core.constructor import construct, construct_all_pivots
from src.core.design_model import develop_mod_v, validate
from src.core.enumeration import enumerate_mts, write_designs
from src.core.exceptions import DesignFormatError, MTSError
from src.core.reports import compare_table1, format_claims, format_table1, table1_rows, verify_appendix
from src.core.search import TSV_HEADER, SearchMode, count_l_good, optimal_l, search as run_search
from src.core.sequencing import is_l_good
from src.formats.design_io import format_design, read_design, write_design


# 设置日志
logger = setup_logger()


def handle_errors(func):
    """MTSError 转成非零退出码"""
    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except MTSError as e:
            logger.error(f"{func.__name__} 失败: {e}")
            click.secho(f"error: {e}", fg="red", err=True)
            sys.exit(1)
    return wrapper


def _jobs_option(func):
    return click.option('--jobs', '-j', default=None, type=int,
                        help='进程数（默认取配置 search.jobs）')(func)


def _jobs(jobs):
    return int(config_loader.get('search.jobs', 1) or 1) if jobs is None else jobs


def _format_option(func):
    return click.option('--format', 'fmt', type=click.Choice(['tsv', 'human']), default=None,
                        help='输出格式（默认取配置 output.format）')(func)


def _fmt(fmt):
    return fmt or config_loader.get('output.format', 'tsv')


def _exit_on_failures(results):
    """打印与已发表数值不一致的行（-/+），有不一致时退出码为 1"""
    failed = [r for r in results if not r.passed]
    for r in failed:
        click.secho(f"- {r.claim} {r.design}: expected {r.expected}", fg="red", err=True)
        click.secho(f"+ {r.claim} {r.design}: actual   {r.actual}", fg="green", err=True)
    if failed:
        sys.exit(1)


@click.group()
@click.version_option(version="1.0.0")
@click.option('--log-level', default=None,
              type=click.Choice(['DEBUG', 'INFO', 'WARNING', 'ERROR'], case_sensitive=False),
              help='日志级别')
def cli(log_level):
    """Mendelsohn 三元系 l-good 序列工具包"""
    if log_level:
        set_level(log_level)


@cli.command('validate')
@click.argument('file', type=click.Path(exists=True, dir_okay=False))
@handle_errors
def validate_cmd(file):
    """校验设计文件"""
    ts = read_design(file)
    report = validate(ts)
    if report.ok:
        click.echo(f"{ts.label()}\tv={ts.v}\t{ts.kind.value}\t{len(ts)} triples\tok")
        return
    for violation in report.violations:
        click.echo(violation)
    logger.error(f"{ts.label()}: {len(report.violations)} 条违规")
    sys.exit(1)


@cli.command()
@click.argument('base')
@click.argument('v', type=int)
@click.option('--output', '-o', default=None, type=click.Path(dir_okay=False),
              help='输出文件（默认写到 stdout）')
@handle_errors
def develop(base, v, output):
    """循环展开，BASE 形如 "0 1 3; 0 3 2" """
    try:
        blocks = [tuple(int(p) for p in part.replace(',', ' ').split())
                  for part in base.split(';') if part.strip()]
    except ValueError as e:
        raise DesignFormatError(f"bad base block list {base!r}: {e}") from e
    if any(len(b) != 3 for b in blocks):
        raise DesignFormatError(f"base blocks need 3 points each: {base!r}")

    name = Path(output).stem if output else ""
    ts = develop_mod_v(blocks, v, name=name)
    report = validate(ts)
    comments = [f"developed from {base.strip()} mod {v}"]
    if output:
        write_design(ts, output, comments)
        logger.info(f"已写出 {output}: {len(ts)} 个三元组, {ts.kind.value}")
    else:
        click.echo(format_design(ts, comments), nl=False)
    if not report.ok:
        for violation in report.violations:
            click.echo(violation, err=True)
        sys.exit(1)


@cli.command('enumerate')
@click.argument('v', type=int)
@click.option('--outdir', '-o', default=None, help='输出目录（默认取配置 output.design_dir）')
@click.option('--long-running', is_flag=True, help='允许 v = 10 的长时间枚举')
@click.option('--resume', is_flag=True, help='从断点继续')
@click.option('--budget', default=None, type=int, help='节点预算')
@_jobs_option
@handle_errors
def enumerate_cmd(v, outdir, long_running, resume, budget, jobs):
    """穷举两两不同构的 MTS(v) 并写成 mts<v>_<序号>.txt"""
    designs = enumerate_mts(v, limit=budget, jobs=_jobs(jobs), long_running=long_running,
                            resume=resume, progress=True)
    outdir = Path(outdir) if outdir else config_loader.resolve_path('output.design_dir', 'designs')
    for path in write_designs(designs, outdir):
        click.echo(str(path))


@cli.command('search')
@click.argument('file', type=click.Path(exists=True, dir_okay=False))
@click.option('--l', 'l', required=True, type=int, help='窗口长度 l（≥ 3）')
@click.option('--mode', type=click.Choice([m.value for m in SearchMode]), default=SearchMode.LEX.value,
              help='find | lex | count')
@click.option('--timing', is_flag=True, help='ms 列写实际耗时')
@_jobs_option
@handle_errors
def search_cmd(file, l, mode, timing, jobs):
    """搜索 l-good 序列，输出一行 TSV"""
    ts = read_design(file)
    report = run_search(ts, l, mode=mode, jobs=_jobs(jobs))
    click.echo(TSV_HEADER)
    click.echo(report.to_tsv(timing=timing))


@cli.command()
@click.argument('file', type=click.Path(exists=True, dir_okay=False))
@click.option('--l', 'l', default=4, show_default=True, type=int, help='窗口长度 l')
@_jobs_option
@handle_errors
def count(file, l, jobs):
    """l-good 序列个数（按位置计）"""
    ts = read_design(file)
    click.echo(str(count_l_good(ts, l, jobs=_jobs(jobs))))


@cli.command()
@click.argument('file', type=click.Path(exists=True, dir_okay=False))
@_jobs_option
@handle_errors
def optimal(file, jobs):
    """最大的 l 及其证据序列"""
    ts = read_design(file)
    best, witness = optimal_l(ts, jobs=_jobs(jobs))
    click.echo(f"{ts.label()}\tl*={best}\t{witness.to_text() if witness else '-'}")


@cli.command('construct')
@click.argument('file', type=click.Path(exists=True, dir_okay=False))
@click.option('--pivot', '-x', default=None, type=int, help='枢轴点（默认 0）')
@click.option('--all-pivots', is_flag=True, help='对每个点各构造一次')
@_jobs_option
@handle_errors
def construct_cmd(file, pivot, all_pivots, jobs):
    """构造 3-good 序列并校验（v ≥ 7）"""
    ts = read_design(file)
    insertions = construct_all_pivots(ts, jobs=_jobs(jobs)) if all_pivots else [construct(ts, pivot)]
    for ins in insertions:
        verdict = "yes" if is_l_good(ins.sequencing, ts, 3) else "no"
        click.echo(f"x={ins.pivot}\t{ins.case}\t{ins.sequencing.to_text()}\t3-good: {verdict}")


@cli.command()
@click.option('--max-v', default=9, show_default=True, type=int, help='最大阶')
@click.option('--include-10', is_flag=True, help='包含 v = 10（长时间运行，带断点）')
@click.option('--resume', is_flag=True, help='v = 10 从断点继续')
@_format_option
@_jobs_option
@handle_errors
def table1(max_v, include_10, resume, fmt, jobs):
    """序列统计表：v, 设计数, 3-good 数, 4-good 数"""
    rows = table1_rows(max_v, include_10=include_10, jobs=_jobs(jobs), resume=resume, progress=True)
    click.echo(format_table1(rows, _fmt(fmt)), nl=False)
    _exit_on_failures(compare_table1(rows))


@cli.command('verify-appendix')
@click.option('--fixtures', 'fixture_dir', default=None, type=click.Path(file_okay=False),
              help='设计文件目录（默认取 MTS_FIXTURE_DIR 或配置 fixtures.dir）')
@_format_option
@_jobs_option
@handle_errors
def verify_appendix_cmd(fixture_dir, fmt, jobs):
    """核验附录中的全部断言"""
    results = verify_appendix(Path(fixture_dir) if fixture_dir else None, jobs=_jobs(jobs),
                              progress=True)
    click.echo(format_claims(results, _fmt(fmt)), nl=False)
    _exit_on_failures(results)


if __name__ == "__main__":
    cli()
