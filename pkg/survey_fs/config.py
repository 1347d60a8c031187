"""
Configuration for survey-fs
Feature selection and classification benchmark for nominal survey data
"""

import os
from pathlib import Path
from typing import Dict, List

from dotenv import load_dotenv

# Base paths
PROJECT_DIR = Path(__file__).parent
DEFAULT_OUTPUT_DIR = PROJECT_DIR / "reports"

# Overrides opcionales desde .env
load_dotenv(PROJECT_DIR / ".env")

TOOL_NAME = "survey-fs"
TOOL_VERSION = "1.0.0"

# Ingestion
DEFAULT_TARGET = "gender"
MISSING_LABEL = "NA"
MAX_CATEGORIES = 255  # codes 0..254, 255 is reserved for MISSING
MISSING_CODE = 255
DEFAULT_MISSING_POLICY = "as_category"

# Scoring parameters
RELIEFF_ITERATIONS = 50
RELIEFF_NEIGHBORS = 10
FCBF_THRESHOLD = 0.0

# Model parameters
NB_ALPHA = 1.0
N_TREES = 10
MIN_SAMPLES_SPLIT = 2

# Evaluation
N_FOLDS = 10
RANDOM_STATE = int(os.getenv("SURVEY_FS_SEED", "42"))
POSITIVE_CLASS_INDEX = 1  # AUC positive class = second class category

# Sweep
K_MIN = 2
CHART_WIDTH_PX = 800
CHART_HEIGHT_PX = 500
SVG_HASH_SALT = "survey-fs"

# Runtime
N_JOBS = int(os.getenv("SURVEY_FS_N_JOBS", "1"))
LOG_LEVEL = os.getenv("SURVEY_FS_LOG_LEVEL", "INFO")
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

# Output files
SWEEP_FILE = "sweep.csv"
SWEEP_CHART_TEMPLATE = "sweep_{classifier}.svg"
SUMMARY_FILE = "summary.txt"
CSV_FLOAT_FORMAT = "%.10g"  # 10 significant digits; small scores keep their exponent

# Stable command-line tokens
SCORER_NAMES: List[str] = ["infogain", "gainratio", "gini", "chi2", "relieff", "fcbf"]
CLASSIFIER_NAMES: List[str] = ["nb", "rf", "majority"]
CLASSIFIER_LABELS: Dict[str, str] = {
    "nb": "Naive Bayes",
    "rf": "Random Forest",
    "majority": "Majority",
}

# Life Satisfaction Survey 2013 reference shape
SURVEY_N_ROWS = 196203
SURVEY_CLASS_COUNTS = {"male": 83074, "female": 113129}
SURVEY_CLASS_RATIO = SURVEY_CLASS_COUNTS["female"] / SURVEY_N_ROWS
CLASS_LABELS = ["male", "female"]

# Answer scale: 1 - Strongly satisfied ... 5 - Strongly disagreed
LIKERT_LABELS = ["1", "2", "3", "4", "5"]

# Satisfaction attributes in survey numbering (1-based position = attribute number)
TSI_ATTRIBUTES = [
    {"name": "Personal Health", "question": "B12.1"},
    {"name": "Marriage", "question": "B12.2"},
    {"name": "Personal Education", "question": "B12.3"},
    {"name": "Housing", "question": "B12.4"},
    {"name": "District", "question": "B12.5"},
    {"name": "Job", "question": "B12.6"},
    {"name": "Job Income", "question": "B12.7"},
    {"name": "Household Income", "question": "B12.8"},
    {"name": "Social Life", "question": "B12.9"},
    {"name": "Self-care", "question": "B12.10"},
    {"name": "Time spent on traffic to and from work", "question": "B12.11"},
    {"name": "Relative", "question": "B13.1"},
    {"name": "Friend", "question": "B13.2"},
    {"name": "Neighbor", "question": "B13.3"},
    {"name": "Workplace Relations", "question": "B13.4"},
    {"name": "General Health Services", "question": "B14.1"},
    {"name": "Public Order", "question": "B14.2"},
    {"name": "Judicial", "question": "B14.3"},
    {"name": "General Education", "question": "B14.4"},
    {"name": "SII Services", "question": "B14.5"},
    {"name": "Transportation", "question": "B14.6"},
]
