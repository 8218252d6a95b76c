#!/usr/bin/env python3
"""Merge the reviewed queue into the training pool and retrain.

Writes a JSON summary (held sentences before the merge, merged label
sequences, pool sizes) so a caller can diff exactly which corrections
were consumed.

Usage: consume_corrections.py STATE_DIR OUT_JSON
"""

import json
import sys
from pathlib import Path

from codemix.bootstrap import BootstrapState, bootstrap_round, merge_corrections


def main(state_dir, out_path):
    state = BootstrapState.load(state_dir)
    held_before = {sid: [[t, l] for t, l in sent] for sid, sent in state.held}
    held_ids = [sid for sid, _ in state.held]
    accepted_before = len(state.accepted)

    merged = merge_corrections(state.held, state.queue)
    merged_by_id = {
        sid: [label for _, label in sent] for sid, sent in zip(held_ids, merged)
    }
    bootstrap_round(state)

    summary = {
        "held_before": held_before,
        "merged": merged_by_id,
        "accepted_before": accepted_before,
        "accepted_after": len(state.accepted),
        "queue_after": len(state.queue),
        "iteration": state.iteration,
    }
    Path(out_path).write_text(json.dumps(summary, indent=1), encoding="utf-8")
    print(
        f"consumed {len(merged_by_id)} reviewed sentences; "
        f"accepted {accepted_before} -> {len(state.accepted)}, iteration {state.iteration}"
    )


if __name__ == "__main__":
    if len(sys.argv) != 3:
        print(__doc__, file=sys.stderr)
        sys.exit(1)
    main(sys.argv[1], sys.argv[2])
