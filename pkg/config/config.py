import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

class Config:
    """Base configuration class"""
    THREADS = int(os.environ.get('CATHAUL_THREADS') or os.cpu_count() or 1)
    N_STEPS = int(os.environ.get('CATHAUL_N_STEPS') or 2000)
    REFINE_LEVELS = int(os.environ.get('CATHAUL_REFINE') or 3)
    SEED = 42
    OUTPUT_DIR = os.environ.get('CATHAUL_OUT') or 'reports'
    INTEGRATOR_ORDER = int(os.environ.get('CATHAUL_INTEGRATOR_ORDER') or 2)

    # Logging Configuration
    LOG_FILE = os.environ.get('CATHAUL_LOG_FILE') or 'cathaul.log'
    LOG_LEVEL = os.environ.get('CATHAUL_LOG_LEVEL') or 'INFO'

    # Tolerances
    JOIN_TOL = 1e-9
    ALGEBRAIC_TOL = 1e-10
    ODE_TOL = 1e-6
    GAUGE_TOL = 1e-5
    HORIZONTAL_TOL = 1e-3
    SLOPE_TARGET = 2.0
    SLOPE_WINDOW = 0.3

    # Sampling
    LIE_SAMPLES = 1000
    BATTERY_LINES = 8
    BATTERY_ARCS = 6
    BATTERY_L_COMPOSITES = 6

class DevelopmentConfig(Config):
    """Development configuration with coarse grids"""
    N_STEPS = int(os.environ.get('CATHAUL_N_STEPS') or 400)
    LIE_SAMPLES = 200
    ODE_TOL = 1e-4
    GAUGE_TOL = 1e-4

class AcceptanceConfig(Config):
    """Acceptance configuration"""
    N_STEPS = int(os.environ.get('CATHAUL_N_STEPS') or 2000)

config = {
    'development': DevelopmentConfig,
    'acceptance': AcceptanceConfig,
    'default': AcceptanceConfig
}
