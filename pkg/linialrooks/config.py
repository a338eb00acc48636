from pydantic_settings import BaseSettings
from functools import lru_cache


class Settings(BaseSettings):
    # Enumeration / DP caps
    max_partition_size: int = 12
    max_rook_rows: int = 20
    max_gjw_rows: int = 9
    max_enum: int = 10_000_000
    max_degree: int = 512
    max_sequence_enum: int = 2_000_000

    # Graphs
    max_chromatic_vertices: int = 14
    max_matching_rows: int = 8
    max_generic_matching_vertices: int = 12

    # Arrangements
    max_finite_field_n: int = 6
    finite_field_cross_check: bool = True

    # Series
    max_series_order: int = 12

    # Verification
    max_verify_enum: int = 200_000
    verify_workers: int = 4
    random_seed: int = 20240601

    # App
    log_level: str = "INFO"

    class Config:
        env_prefix = "LINIALROOKS_"
        env_file = ".env"
        extra = "ignore"


@lru_cache()
def get_settings() -> Settings:
    return Settings()
