from __future__ import annotations

import logging
import sys

from .cli import execute, parse_args
from .cli.texts import ERROR_PREFIX
from .config import get_settings

logger = logging.getLogger("app.cli")


def main() -> None:
    try:
        settings = get_settings()
    except RuntimeError as error:
        print(f"{ERROR_PREFIX} {error}", file=sys.stderr)
        sys.exit(2)
    args = parse_args(settings=settings)
    logging.basicConfig(
        level=args.log_level or settings.log_level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    logger.debug("Настройки: %s", settings)
    sys.exit(execute(args))


if __name__ == "__main__":
    main()
