"""Command-line entry points: query, play, serve."""

from __future__ import annotations

import json
import logging
import math
import sys
import time
from fractions import Fraction

import click

from .clock import LiveLoop, Slot, config_from_env
from .expr import EvalError, compile_expr
from .mini import ParseError
from .osc import DEFAULT_HOST, DEFAULT_PORT, OscSender, parse_host_port
from .timespan import Span


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise click.BadParameter(f"expected a rational like 3/2, got {text!r}")


def _compile_or_exit(expr: str):
    try:
        return compile_expr(expr)
    except (ParseError, EvalError) as e:
        click.echo(str(e.diagnostic), err=True)
        sys.exit(2)


@click.group()
@click.version_option(package_name="riptide")
def main():
    """A cycle-based pattern engine for live coding."""
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")


@main.command()
@click.option("--expr", required=True, envvar="RIPTIDE_EXPR", help="Pattern expression to evaluate.")
@click.option("--begin", default="0", show_default=True, envvar="RIPTIDE_BEGIN",
              help="Query begin, in cycles (rational).")
@click.option("--end", default="1", show_default=True, envvar="RIPTIDE_END",
              help="Query end, in cycles (rational).")
@click.option(
    "--format", "fmt", type=click.Choice(["json", "table"]), default="json", show_default=True,
    envvar="RIPTIDE_FORMAT", help="Output format.",
)
@click.option("--plot", default=None, envvar="RIPTIDE_PLOT", help="Also render a timeline figure to this file.")
def query(expr, begin, end, fmt, plot):
    """Print the events of an expression over a span of cycles."""
    b, e = _fraction(begin), _fraction(end)
    if b > e:
        click.echo(f"begin must not exceed end: {b} > {e}", err=True)
        sys.exit(2)
    pattern = _compile_or_exit(expr)
    span = Span(b, e)
    try:
        events = pattern.query(span)
    except (EvalError, ValueError) as err:
        click.echo(str(err), err=True)
        sys.exit(2)
    if fmt == "json":
        click.echo(json.dumps([ev.to_json() for ev in events], indent=2))
    else:
        from .report import format_table

        click.echo(format_table(events))
    if plot:
        from .report import render_timeline

        render_timeline(events, span, plot, title=expr)
        click.echo(f"wrote {plot}", err=True)


@main.command()
@click.option("--expr", required=True, envvar="RIPTIDE_EXPR", help="Pattern expression to play.")
@click.option("--cps", type=float, default=None, envvar="RIPTIDE_CPS", help="Cycles per second (default 0.5).")
@click.option("--latency", type=float, default=None, envvar="RIPTIDE_LATENCY", help="Send-ahead in seconds.")
@click.option("--osc", default=f"{DEFAULT_HOST}:{DEFAULT_PORT}", envvar="RIPTIDE_OSC", help="SuperDirt HOST:PORT.")
@click.option("--duration", type=float, default=0.0, envvar="RIPTIDE_DURATION",
              help="Seconds to run; 0 runs until interrupted.")
def play(expr, cps, latency, osc, duration):
    """Schedule an expression and send it to SuperDirt over OSC."""
    pattern = _compile_or_exit(expr)
    try:
        host, port = parse_host_port(osc)
    except ValueError as e:
        click.echo(str(e), err=True)
        sys.exit(2)
    cfg = config_from_env(cps=cps, latency=latency, origin=time.time())
    sender = OscSender(host, port, cps=cfg.cps)
    slot = Slot(pattern)
    loop = LiveLoop(slot, sender, cfg)
    try:
        if duration > 0:
            loop.run(max_ticks=math.ceil(duration / cfg.tick_interval))
        else:
            loop.run()
    except KeyboardInterrupt:
        pass
    finally:
        loop.stop()
        sender.close()


@main.command()
@click.option("--port", type=int, default=8404, show_default=True, envvar="RIPTIDE_PORT", help="HTTP port.")
@click.option("--host", default="127.0.0.1", show_default=True, envvar="RIPTIDE_HOST", help="HTTP bind address.")
@click.option("--cps", type=float, default=None, envvar="RIPTIDE_CPS", help="Cycles per second (default 0.5).")
@click.option("--latency", type=float, default=None, envvar="RIPTIDE_LATENCY", help="Send-ahead in seconds.")
@click.option("--osc", default=f"{DEFAULT_HOST}:{DEFAULT_PORT}", envvar="RIPTIDE_OSC",
              help="SuperDirt HOST:PORT; pass 'off' to disable OSC output.")
@click.option("--static", default=None, envvar="RIPTIDE_STATIC",
              help="Directory of built REPL assets to serve (default: autodetect).")
def serve(port, host, cps, latency, osc, static):
    """Run the live scheduler with the HTTP/WebSocket API and browser REPL."""
    import uvicorn
    from pathlib import Path

    from .service import build_app, default_static_dir, make_service

    cfg = config_from_env(cps=cps, latency=latency, origin=time.time())
    sinks = []
    if osc != "off":
        try:
            osc_host, osc_port = parse_host_port(osc)
        except ValueError as e:
            click.echo(str(e), err=True)
            sys.exit(2)
        sinks.append(OscSender(osc_host, osc_port, cps=cfg.cps))
    static_dir = Path(static) if static else default_static_dir()
    service = make_service(cfg, sinks=sinks)
    app = build_app(service, static_dir=static_dir)
    if static_dir is None:
        click.echo("no built REPL found; serving the API only", err=True)
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
