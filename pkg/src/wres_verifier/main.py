from __future__ import annotations

from wres_verifier.config import configure_logging, load_config
from wres_verifier.server import create_app


def main() -> None:
    config = load_config()
    configure_logging(config.log_level)
    app = create_app(config)
    app.run()


if __name__ == "__main__":
    main()
