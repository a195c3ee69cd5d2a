"""MCP server entry point for hyperchroma."""

import argparse

from hyperchroma.config import HyperchromaConfig
from hyperchroma.config_manager import ConfigManager
from hyperchroma.logger import RunLogger
from hyperchroma.mcp import setup_mcp


def parse_overrides(pairs: list[str], logger: RunLogger) -> dict[str, str]:
    """Split KEY=VALUE pairs, skipping keys the config does not know."""
    overrides = {}
    for override in pairs:
        if "=" not in override:
            logger.error(f"Invalid override format: {override} (expected key=value)")
            raise ValueError(f"Invalid override format: {override}")
        key, value = override.split("=", 1)
        key = key.strip()
        if key not in HyperchromaConfig.model_fields:
            logger.warning(f"Unknown config key: {key}")
            continue
        overrides[key] = value.strip()
    return overrides


def main(argv: list[str] | None = None) -> None:
    """Start MCP server for a config profile.

    CLI: hyperchroma-server [--profile <name>] [--config-override key=value ...]
    """
    parser = argparse.ArgumentParser(
        description="hyperchroma MCP server - randomized hypergraph coloring",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Config Override Examples:
  --config-override r=3
  --config-override p=0.05 seed=42 max_retries=200
        """,
    )
    parser.add_argument(
        "--profile",
        default=ConfigManager.DEFAULT_PROFILE,
        help="Config profile to load",
    )
    parser.add_argument(
        "--enable-guidance-tool",
        action="store_true",
        help="Enable the guidance tool for LLM instruction visibility",
    )
    parser.add_argument(
        "--config-override",
        nargs="+",
        metavar="KEY=VALUE",
        help="Override config values (e.g., r=3)",
    )
    args = parser.parse_args(argv)

    with RunLogger(args.profile) as logger:
        logger.info("=" * 60)
        logger.info(f"Starting hyperchroma-server with profile: {args.profile}")

        config = ConfigManager.load_for_profile(args.profile)

        if args.config_override:
            overrides = parse_overrides(args.config_override, logger)
            config = HyperchromaConfig(**{**config.model_dump(), **overrides})
            logger.info(f"Config overrides applied: {overrides}")

        logger.info(f"Active config: {config.model_dump_json()}")

        try:
            mcp_server = setup_mcp(
                args.profile,
                config_override=config,
                enable_guidance_tool=args.enable_guidance_tool,
            )
            logger.info("MCP server initialized successfully")
            logger.info("Starting MCP server (press Ctrl+C to stop)")

            mcp_server.run()

        except KeyboardInterrupt:
            logger.info("Received shutdown signal, stopping server...")
        except Exception as e:
            logger.error(f"MCP server crashed: {e}")
            raise
        finally:
            logger.info("hyperchroma-server stopped")
            logger.info("=" * 60)


if __name__ == "__main__":
    main()
