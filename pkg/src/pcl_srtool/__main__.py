import sys

import rich_click as click

from pcl_srtool import cli
from pcl_srtool.errors import SrToolError

EXIT_USAGE = 1
EXIT_DATA = 2


def _fail(error: Exception, code: int) -> int:
    click.echo(click.style(f"❌ {type(error).__name__}: {error}", fg="red"), err=True)
    return code


def run(args: list[str] | None = None) -> int:
    """Run the CLI and translate failures into exit statuses."""
    try:
        cli.main(args=args, prog_name="pcl-srtool", standalone_mode=False)
    except click.UsageError as e:
        e.show()
        return EXIT_USAGE
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.Abort:
        return EXIT_USAGE
    except SrToolError as e:
        return _fail(e, e.exit_code)
    except OSError as e:
        return _fail(e, EXIT_DATA)
    except ValueError as e:
        return _fail(e, EXIT_USAGE)
    return 0


def main():
    """Entry point for the CLI."""
    sys.exit(run())


if __name__ == "__main__":
    main()
