"""
Command-line entry point for the oblique fusion frame toolkit
Registers the analyze, construct, verify and generate commands
"""

import os
import sys

# Allow running as ``python src/main.py`` from the repository root
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import click

from src.commands.analyze import analyze
from src.commands.common import FusionGroup
from src.commands.construct import construct
from src.commands.generate import generate
from src.commands.verify import verify
from src.logging_config import configure_logging


@click.group(cls=FusionGroup)
@click.option('--log-level', default=None, help='DEBUG, INFO, WARNING or ERROR (default from FUSION_LOG_LEVEL)')
@click.option('--log-json/--no-log-json', default=None, help='Render log lines as JSON')
@click.version_option('1.0.0', prog_name='fusionframes')
def cli(log_level, log_json):
    """Construct and analyze non-orthogonal fusion frames"""
    configure_logging(log_level, log_json)


# Register all commands
cli.add_command(analyze)
cli.add_command(construct)
cli.add_command(verify)
cli.add_command(generate)


if __name__ == '__main__':
    cli()
