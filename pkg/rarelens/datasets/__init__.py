"""
Bundled demo datasets and benchmark configuration
"""

from pathlib import Path

DATASETS_DIR = Path(__file__).parent
BENCH_CONFIG = DATASETS_DIR / "bench.json"
SERVO_DELAY = DATASETS_DIR / "servo_delay.csv"
AIR_QUALITY = DATASETS_DIR / "air_quality.csv"
