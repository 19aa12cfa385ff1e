import logging

from rich.console import Console
from rich.logging import RichHandler
from rich.traceback import install

install(show_locals=False)

LOG_LEVEL = logging.INFO
logging.basicConfig(level=LOG_LEVEL, format="%(message)s", handlers=[RichHandler(console=Console(stderr=True), rich_tracebacks=True)])
logger = logging.getLogger(__name__)
logger.parent = logging.getLogger("rich")
