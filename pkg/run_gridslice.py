import logging

from app.cli import main


logger = logging.getLogger(__name__)


if __name__ == "__main__":
    # main() configures logging from Config and -v before doing any work
    raise SystemExit(main())
