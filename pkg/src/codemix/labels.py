"""The EN/HI/OTHER label alphabet used throughout the pipeline.

Label order matters: argmax ties during prediction break toward the
earlier label, so EN < HI < OTHER.
"""

EN = "EN"
HI = "HI"
OTHER = "OTHER"

LABELS = (EN, HI, OTHER)
LABEL_INDEX = {label: i for i, label in enumerate(LABELS)}

# Labels that count as languages for mixing metrics and filtering.
LANGUAGE_LABELS = (EN, HI)
