"""
Application Settings
Configuration management using environment variables
"""
import os


class Settings:
    """Application settings with environment variable support"""

    # Logging Configuration
    log_level: str = os.getenv("LOG_LEVEL", "INFO")
    log_dir: str = os.getenv("LOG_DIR", "logs")
    log_format: str = os.getenv("LOG_FORMAT", "text")  # "text" or "json"
    log_rotation: str = os.getenv("LOG_ROTATION", "500 MB")
    log_retention: str = os.getenv("LOG_RETENTION", "10 days")
    log_to_file: bool = os.getenv("LOG_TO_FILE", "false").lower() == "true"

    # Application Configuration
    app_name: str = os.getenv("APP_NAME", "latticereduce")
    app_version: str = os.getenv("APP_VERSION", "0.1.0")

    # Output Configuration
    output_dir: str = os.getenv("OUTPUT_DIR", "data/runs")
    schema_version: str = os.getenv("SCHEMA_VERSION", "1")


# Global settings instance
settings = Settings()


__all__ = ["settings", "Settings"]
